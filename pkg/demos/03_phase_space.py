"""Phase-space portraits and the forbidden wedge.

Each trajectory draws a closed loop in the (q, qdot) plane, so positions and
velocities are both bounded.  No loop ever enters the wedge beyond the lines
qdot = +-2 omega sinh(2r) q; larger starting points trace larger loops but
respect the same bound.
"""

import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from squeezed_arrival import (OscillatorConfig, SqueezeParams, bohm_velocity,
                              forbidden_region_slopes, sample_initial_conditions,
                              state_from_matrix, squeeze_matrix, trajectory)

cfg = OscillatorConfig(mass=1.0, angular_frequency=0.5, hbar=1.0)
params = SqueezeParams(0.5, 2 * np.pi / 3)
ts = np.linspace(0.0, 2 * np.pi / cfg.angular_frequency, 600)

state0 = state_from_matrix(squeeze_matrix(params, cfg), cfg)
starts = sample_initial_conditions(state0, 200, seed=11)

fig, ax = plt.subplots(figsize=(6.5, 5))
q_biggest = 0.0
for q0 in starts:
    q = trajectory(float(q0), ts, params, cfg)
    ax.plot(q, bohm_velocity(q, ts, params, cfg), lw=0.4, alpha=0.5,
            color="tab:blue")
    q_biggest = max(q_biggest, float(np.max(np.abs(q))))

slope_plus, slope_minus = forbidden_region_slopes(params, cfg)
edge = np.array([-q_biggest, q_biggest])
ax.plot(edge, slope_plus * edge, "r--", lw=1.2, label="forbidden boundary")
ax.plot(edge, slope_minus * edge, "r--", lw=1.2)
ax.set_xlabel("q")
ax.set_ylabel("dq/dt")
ax.set_title(f"r = {params.r}, phi = {params.phi:.3f}")
ax.legend()

fig.tight_layout()
fig.savefig("phase_space.png", dpi=150)
print(f"forbidden slope = {slope_plus:.6f}")
print("wrote phase_space.png")
