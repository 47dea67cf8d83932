"""Ensembles of Bohmian trajectories guided by a squeezed state.

Initial positions are drawn from the state's own density (the thermal
equilibrium rule), then every particle follows the closed-form trajectory.
The ensemble traces out the same breathing pattern as the density: paths
never cross, never change sign, and all share the period pi/omega.  The
squeeze phase shifts where along the cycle the breathing starts.
"""

import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from squeezed_arrival import (OscillatorConfig, SqueezeParams,
                              sample_initial_conditions, state_from_matrix,
                              squeeze_matrix, trajectory)

cfg = OscillatorConfig(mass=1.0, angular_frequency=0.5, hbar=1.0)
r = 0.5
ts = np.linspace(0.0, 2 * np.pi / cfg.angular_frequency, 400)

fig, axes = plt.subplots(1, 2, figsize=(11, 4), sharey=True)
for ax, phi in zip(axes, (0.0, 2 * np.pi / 3)):
    params = SqueezeParams(r, phi)
    state0 = state_from_matrix(squeeze_matrix(params, cfg), cfg)
    starts = sample_initial_conditions(state0, 200, seed=7)
    for q0 in starts:
        ax.plot(ts, trajectory(float(q0), ts, params, cfg), lw=0.4, color="tab:blue",
                alpha=0.5)
    ax.set_title(f"phi = {phi:.3f}")
    ax.set_xlabel("t")
axes[0].set_ylabel("q(t)")

fig.suptitle(f"200 Bohmian trajectories, r = {r}")
fig.tight_layout()
fig.savefig("trajectories.png", dpi=150)
print("wrote trajectories.png")
