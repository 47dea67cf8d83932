"""Heat map of the evolving position density of a squeezed state.

The density of a vacuum squeezed state breathes at twice the oscillator
frequency: squeezing narrows it at some times and widens it at others.
Stronger squeezing makes the contrast sharper.  This script renders the
density on a (t, x) grid for two squeeze strengths at a 60 degree squeeze
phase.
"""

import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from squeezed_arrival import OscillatorConfig, SqueezeParams, density, evolved_state

cfg = OscillatorConfig(mass=1.0, angular_frequency=0.5, hbar=1.0)
phi = np.deg2rad(60.0)

fig, axes = plt.subplots(1, 2, figsize=(11, 4), sharey=True)
for ax, r in zip(axes, (0.5, 1.0)):
    ts = np.linspace(0.0, 2 * np.pi / cfg.angular_frequency, 160)
    xs = np.linspace(-5 * cfg.proper_length * np.exp(r),
                     5 * cfg.proper_length * np.exp(r), 240)
    grid = np.array([density(evolved_state(SqueezeParams(r, phi), t, cfg), xs)
                     for t in ts])
    mesh = ax.pcolormesh(ts, xs, grid.T, shading="auto", cmap="magma")
    ax.set_title(f"r = {r}, phi = 60 deg")
    ax.set_xlabel("t")
    fig.colorbar(mesh, ax=ax, label=r"$|\psi(x,t)|^2$")
axes[0].set_ylabel("x")

fig.tight_layout()
fig.savefig("density_heatmap.png", dpi=150)
print("wrote density_heatmap.png")
