"""Two predictions for windowed detector counts.

The delocalized prediction time-averages the density at the detector and is
blind to which initial conditions can physically get there.  The
trajectory-constrained prediction divides, at each instant, by the density
carried along the flow from the reachable window, and comes out markedly
different.  In principle a counting experiment distinguishes them.
"""

import numpy as np

from squeezed_arrival import OscillatorConfig, SqueezeParams, count_report

cfg = OscillatorConfig(mass=1.0, angular_frequency=0.5, hbar=1.0)
ell = cfg.proper_length
grid = [0.5 * ell, 1.0 * ell, 2.0 * ell]

for r in (0.5, 1.0):
    squeeze = SqueezeParams(r, 0.0)
    print(f"\nr = {r}, phi = 0, bin width = {0.01 * ell:.4f}, "
          f"window T = {(squeeze.phi + np.pi) / (2 * cfg.angular_frequency):.4f}")
    print(f"{'L':>8} {'standard':>14} {'trajectory':>14} {'ratio':>10}")
    for row in count_report(grid, squeeze, cfg):
        print(f"{row.detector_position:8.4f} {row.standard:14.6e} "
              f"{row.bohmian:14.6e} {row.ratio:10.4f}")
