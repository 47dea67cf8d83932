"""The window of initial conditions that can reach a detector.

A detector at L > 0 is reachable only from starting points between two
phase-dependent bounds; both scale linearly in L.  There is a critical
squeeze phase where the window sits symmetrically around the detector;
below it the window leans below L, above it the reverse.
"""

import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from squeezed_arrival import (ArrivalSetup, OscillatorConfig, SqueezeParams,
                              critical_phase, initial_condition_interval)

cfg = OscillatorConfig(mass=1.0, angular_frequency=0.5, hbar=1.0)
L = 2.0
phis = np.linspace(1e-3, 2 * np.pi - 1e-3, 400)

fig, axes = plt.subplots(1, 2, figsize=(11, 4), sharey=True)
for ax, r in zip(axes, (0.5, 1.0)):
    lows, highs = [], []
    for phi in phis:
        interval = initial_condition_interval(
            ArrivalSetup(L, SqueezeParams(r, float(phi)), cfg))
        lows.append(interval.q0_min)
        highs.append(interval.q0_max)
    ax.plot(phis, lows, "b-", label="lowest admissible start")
    ax.plot(phis, highs, "b--", label="highest admissible start")
    ax.axhline(L, color="k", lw=0.8)
    phi_c = critical_phase(r)
    ax.axvline(phi_c, color="r", lw=0.8,
               label=f"critical phase = {phi_c:.3f}")
    ax.set_title(f"r = {r}, detector at L = {L}")
    ax.set_xlabel("phi")
    ax.legend(fontsize=8)
axes[0].set_ylabel("initial condition")

fig.tight_layout()
fig.savefig("arrival_window.png", dpi=150)
print("wrote arrival_window.png")
