"""Command-line front end emitting figure-ready CSV/JSON data.

Subcommands cover the position density, trajectory ensembles, phase-space
portraits, the arrival-time density and its Monte Carlo check, mean arrival
times, detection-count comparisons and the cross-validation suite.  Output
is deterministic for fixed flags and seed: 17-significant-digit numbers,
stable headers, parameters recorded as ``#`` comments, no timestamps.

Exit codes: 0 success, 1 validation failure, 2 bad arguments.
"""

import argparse
import contextlib
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import validation
from .arrival import (ArrivalSetup, SingularLimitError, mean_toa, toa_histogram_mc,
                      toa_pdf)
from .bohm_dynamics import forbidden_region_slopes, bohm_velocity, trajectory
from .detection import count_report
from .gaussian_states import (density, evolved_state, sample_initial_conditions,
                              state_from_matrix)
from .numerics import chi_square_gof
from .symplectic import OscillatorConfig, SqueezeParams, squeeze_matrix


def _fmt(value):
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _parse_float_list(text):
    values = [float(part) for part in text.split(",") if part.strip()]
    if not values:
        raise argparse.ArgumentTypeError("expected a comma-separated list of numbers")
    return values


def _parse_sweep(text):
    name, sep, rest = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError("sweep must look like var=start:stop:count or var=v1,v2,...")
    name = name.strip()
    if ":" in rest:
        pieces = rest.split(":")
        if len(pieces) != 3:
            raise argparse.ArgumentTypeError("range sweep must be var=start:stop:count")
        start, stop, count = float(pieces[0]), float(pieces[1]), int(pieces[2])
        if count < 1:
            raise argparse.ArgumentTypeError("sweep count must be positive")
        values = [float(v) for v in np.linspace(start, stop, count)]
    else:
        values = _parse_float_list(rest)
    return name, values


@dataclass
class RunDescriptor:
    """Validated bundle of one command invocation's parameters."""

    command: str
    r_values: list
    phi: float
    omega: float
    mass: float
    hbar: float
    L_values: list
    dL: float | None
    T: float | None
    q0_values: list | None
    n: int | None
    seed: int
    bins: int
    t_max: float | None
    sweep: tuple | None
    output: str | None
    format: str
    jacobian: bool = False
    perturb: float = 0.0
    extras: dict = field(default_factory=dict)

    @property
    def cfg(self):
        return OscillatorConfig(mass=self.mass, angular_frequency=self.omega,
                                hbar=self.hbar)

    def squeeze(self, r=None):
        return SqueezeParams(self.r_values[0] if r is None else r, self.phi)


def _descriptor(args):
    phi = args.phi * math.pi / 180.0 if args.degrees else args.phi
    sweep = args.sweep if hasattr(args, "sweep") else None
    return RunDescriptor(
        command=args.command,
        r_values=args.r,
        phi=phi,
        omega=args.omega,
        mass=args.mass,
        hbar=args.hbar,
        L_values=args.L,
        dL=args.dL,
        T=args.T,
        q0_values=args.q0,
        n=args.n,
        seed=args.seed,
        bins=args.bins,
        t_max=args.t_max,
        sweep=sweep,
        output=args.output,
        format=args.format,
        jacobian=getattr(args, "jacobian", False),
        perturb=getattr(args, "perturb", 0.0),
    )


def _out_stream(desc):
    if desc.output:
        return open(desc.output, "w", encoding="utf-8", newline="\n")
    return contextlib.nullcontext(sys.stdout)


def _emit_table(desc, comments, columns, rows, stream):
    if desc.format == "json":
        payload = {
            "comments": {k: _fmt(v) for k, v in comments.items()},
            "columns": list(columns),
            "rows": [[_fmt(v) for v in row] for row in rows],
        }
        json.dump(payload, stream, indent=2, sort_keys=True)
        stream.write("\n")
        return
    for key, value in comments.items():
        stream.write(f"# {key} = {_fmt(value)}\n")
    stream.write(",".join(columns) + "\n")
    for row in rows:
        stream.write(",".join(_fmt(v) for v in row) + "\n")


def _base_comments(desc):
    return {
        "command": desc.command,
        "r": ",".join(_fmt(v) for v in desc.r_values),
        "phi": desc.phi,
        "omega": desc.omega,
        "mass": desc.mass,
        "hbar": desc.hbar,
    }


def _single(name, values):
    if len(values) != 1:
        raise SystemExit(f"error: {name} expects exactly one value here")
    return values[0]


def cmd_density(desc):
    """Grid of |psi(x, t)|^2 over one evolution period and +-5 stretched widths."""
    cfg = desc.cfg
    squeeze = desc.squeeze()
    t_max = desc.t_max if desc.t_max is not None else 2.0 * math.pi / cfg.angular_frequency
    x_half = 5.0 * cfg.proper_length * math.exp(squeeze.r)
    t_grid = np.linspace(0.0, t_max, 101)
    x_grid = np.linspace(-x_half, x_half, 201)
    rows = []
    for t in t_grid:
        state = evolved_state(squeeze, float(t), cfg)
        values = density(state, x_grid)
        rows.extend((float(t), float(x), float(v)) for x, v in zip(x_grid, values))
    comments = _base_comments(desc)
    comments.update({"t_max": t_max, "x_half_width": x_half})
    with _out_stream(desc) as stream:
        _emit_table(desc, comments, ("t", "x", "density"), rows, stream)
    return 0


def _ensemble_q0(desc, cfg, squeeze):
    if desc.q0_values is not None:
        return np.asarray(desc.q0_values, dtype=float)
    n = desc.n if desc.n is not None else 200
    state0 = state_from_matrix(squeeze_matrix(squeeze, cfg), cfg)
    return sample_initial_conditions(state0, n, desc.seed)


def cmd_trajectories(desc):
    """Ensemble of closed-form trajectories from thermal or pinned starts."""
    cfg = desc.cfg
    squeeze = desc.squeeze()
    t_max = desc.t_max if desc.t_max is not None else 2.0 * math.pi / cfg.angular_frequency
    t_grid = np.linspace(0.0, t_max, 201)
    starts = _ensemble_q0(desc, cfg, squeeze)
    rows = []
    for i, q0 in enumerate(starts):
        q = trajectory(float(q0), t_grid, squeeze, cfg)
        rows.extend((i, float(t), float(qq)) for t, qq in zip(t_grid, q))
    comments = _base_comments(desc)
    comments.update({"n": len(starts), "seed": desc.seed, "t_max": t_max})
    with _out_stream(desc) as stream:
        _emit_table(desc, comments, ("trajectory_id", "t", "q"), rows, stream)
    return 0


def cmd_phase_space(desc):
    """Phase-space portrait plus the forbidden-region boundary lines.

    Boundary rows use ids -1 (positive slope) and -2 (negative slope) and
    carry the ensemble's largest position magnitude at each time, so the
    line segments span the populated region.
    """
    cfg = desc.cfg
    squeeze = desc.squeeze()
    t_max = desc.t_max if desc.t_max is not None else 2.0 * math.pi / cfg.angular_frequency
    t_grid = np.linspace(0.0, t_max, 201)
    starts = _ensemble_q0(desc, cfg, squeeze)
    slope_plus, slope_minus = forbidden_region_slopes(squeeze, cfg)
    rows = []
    positions = np.empty((len(starts), t_grid.size))
    for i, q0 in enumerate(starts):
        q = trajectory(float(q0), t_grid, squeeze, cfg)
        positions[i] = q
        qdot = bohm_velocity(q, t_grid, squeeze, cfg)
        rows.extend((i, float(t), float(qq), float(v))
                    for t, qq, v in zip(t_grid, q, qdot))
    q_ref = np.max(np.abs(positions), axis=0) if len(starts) else np.zeros_like(t_grid)
    for t, qr in zip(t_grid, q_ref):
        rows.append((-1, float(t), float(qr), float(slope_plus * qr)))
        rows.append((-2, float(t), float(qr), float(slope_minus * qr)))
    comments = _base_comments(desc)
    comments.update({"n": len(starts), "seed": desc.seed, "t_max": t_max,
                     "forbidden_slope": slope_plus})
    with _out_stream(desc) as stream:
        _emit_table(desc, comments, ("trajectory_id", "t", "q", "qdot"), rows, stream)
    return 0


def cmd_toa_pdf(desc):
    """Arrival-time density over its support, for each (r, L) pair requested."""
    cfg = desc.cfg
    rows = []
    comments = _base_comments(desc)
    for r in desc.r_values:
        for L in desc.L_values:
            setup = ArrivalSetup(L, desc.squeeze(r), cfg)
            dist = toa_pdf(setup)
            comments[f"Z[r={_fmt(float(r))},L={_fmt(float(L))}]"] = dist.normalization
            taus = np.linspace(dist.t_min, dist.t_max, 401)
            values = dist.pdf(taus)
            rows.extend(
                (float(r), float(L), float(tau),
                 float(cfg.angular_frequency * tau - desc.phi), float(p))
                for tau, p in zip(taus, values))
    with _out_stream(desc) as stream:
        _emit_table(desc, comments, ("r", "L", "tau", "omega_tau_minus_phi", "pdf"),
                    rows, stream)
    return 0


def cmd_toa_mc(desc):
    """Monte Carlo arrival-time histogram plus a JSON goodness-of-fit summary."""
    cfg = desc.cfg
    n = desc.n if desc.n is not None else 100_000
    setup = ArrivalSetup(_single("--L", desc.L_values), desc.squeeze(), cfg)
    hist = toa_histogram_mc(setup, n=n, seed=desc.seed, bins=desc.bins)
    dist = toa_pdf(setup)
    gof = chi_square_gof(hist.counts, hist.bin_edges, dist.pdf, alpha=0.001)
    rows = [(float(hist.bin_edges[i]), float(hist.bin_edges[i + 1]), int(hist.counts[i]))
            for i in range(len(hist.counts))]
    comments = _base_comments(desc)
    comments.update({"L": setup.detector_position, "n": n, "seed": desc.seed,
                     "bins": desc.bins, "Z": dist.normalization})
    summary = {
        "accepted_fraction": hist.acceptance_fraction,
        "expected_fraction": dist.normalization,
        "chi2": gof.statistic,
        "chi2_threshold": gof.threshold,
        "dof": gof.dof,
        "passed": gof.passed,
        "n_total": hist.n_total,
        "n_accepted": hist.n_accepted,
    }
    with _out_stream(desc) as stream:
        _emit_table(desc, comments, ("bin_left", "bin_right", "count"), rows, stream)
    summary_text = json.dumps(summary, indent=2, sort_keys=True) + "\n"
    if desc.output:
        with open(desc.output + ".summary.json", "w", encoding="utf-8") as fh:
            fh.write(summary_text)
    else:
        sys.stdout.write(summary_text)
    return 0


def cmd_mean_toa(desc):
    """Mean arrival time, normalized as 2*omega*<t> - phi, along a sweep.

    Sweep ``r=...`` walks the squeeze strength at each fixed detector
    position from ``--L``; sweep ``L=...`` (absolute) or ``L/l=...`` (units
    of the proper length) walks the detector position at each fixed ``--r``.
    """
    cfg = desc.cfg
    ell = cfg.proper_length
    if desc.sweep is None:
        raise SystemExit("error: mean-toa requires --sweep (r=..., L=... or L/l=...)")
    name, values = desc.sweep
    rows = []
    if name == "r":
        for L in desc.L_values:
            for r in values:
                setup = ArrivalSetup(L, desc.squeeze(r), cfg)
                mean = mean_toa(setup)
                rows.append((float(r), float(L / ell),
                             float(2.0 * cfg.angular_frequency * mean - desc.phi)))
    elif name in ("L", "L/l"):
        scale = ell if name == "L/l" else 1.0
        for r in desc.r_values:
            for value in values:
                L = value * scale
                setup = ArrivalSetup(L, desc.squeeze(r), cfg)
                mean = mean_toa(setup)
                rows.append((float(r), float(L / ell),
                             float(2.0 * cfg.angular_frequency * mean - desc.phi)))
    else:
        raise SystemExit(f"error: unknown sweep variable {name!r} (use r, L or L/l)")
    comments = _base_comments(desc)
    comments.update({"sweep": name, "L": ",".join(_fmt(float(v)) for v in desc.L_values)})
    with _out_stream(desc) as stream:
        _emit_table(desc, comments, ("r", "L_over_l", "value_2wT_minus_phi"),
                    rows, stream)
    return 0


def cmd_counts(desc):
    """Detection-count comparison table over the detector grid."""
    cfg = desc.cfg
    squeeze = desc.squeeze()
    if desc.T is None and squeeze.phi >= math.pi:
        raise SystemExit("error: the default window requires phi < pi; pass --T")
    report = count_report(desc.L_values, squeeze, cfg, bin_width=desc.dL,
                          duration=desc.T, jacobian_weighted=desc.jacobian)
    rows = [(row.detector_position, row.standard, row.bohmian, row.ratio)
            for row in report]
    comments = _base_comments(desc)
    comments.update({
        "dL": desc.dL if desc.dL is not None else 0.01 * cfg.proper_length,
        "T": desc.T if desc.T is not None
        else (squeeze.phi + math.pi) / (2.0 * cfg.angular_frequency),
        "jacobian_weighted": desc.jacobian,
    })
    with _out_stream(desc) as stream:
        _emit_table(desc, comments, ("L", "standard_count", "bohmian_count", "ratio"),
                    rows, stream)
    return 0


def cmd_validate(desc):
    """Cross-validation suite as a JSON report; nonzero exit on failure."""
    checks = validation.run_validation(seed=desc.seed if desc.seed else 20259,
                                       perturbation=desc.perturb)
    passed = all(c["passed"] for c in checks)
    report = {"passed": passed, "checks": checks}
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if desc.output:
        with open(desc.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if passed else 1


_COMMANDS = {
    "density": cmd_density,
    "trajectories": cmd_trajectories,
    "phase-space": cmd_phase_space,
    "toa-pdf": cmd_toa_pdf,
    "toa-mc": cmd_toa_mc,
    "mean-toa": cmd_mean_toa,
    "counts": cmd_counts,
    "validate": cmd_validate,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--r", type=_parse_float_list, default=[0.5],
                        help="squeeze strength(s), comma separated")
    common.add_argument("--phi", type=float, default=0.0,
                        help="squeeze phase (radians unless --degrees)")
    common.add_argument("--degrees", action="store_true",
                        help="interpret --phi in degrees")
    common.add_argument("--omega", type=float, default=0.5, help="oscillator frequency")
    common.add_argument("--mass", type=float, default=1.0, help="particle mass")
    common.add_argument("--hbar", type=float, default=1.0, help="reduced Planck constant")
    common.add_argument("--L", type=_parse_float_list, default=[1.0],
                        help="detector position(s), comma separated")
    common.add_argument("--dL", type=float, default=None, help="detector bin width")
    common.add_argument("--T", type=float, default=None, help="detection window length")
    common.add_argument("--q0", type=_parse_float_list, default=None,
                        help="pinned initial condition(s), comma separated")
    common.add_argument("--n", type=int, default=None, help="ensemble / sample size")
    common.add_argument("--seed", type=int, default=0, help="random seed")
    common.add_argument("--bins", type=int, default=32, help="histogram bins")
    common.add_argument("--t-max", dest="t_max", type=float, default=None,
                        help="time-grid upper end")
    common.add_argument("--sweep", type=_parse_sweep, default=None,
                        help="sweep spec: var=start:stop:count or var=v1,v2,...")
    common.add_argument("--output", type=str, default=None, help="output path")
    common.add_argument("--format", choices=("csv", "json"), default="csv")

    parser = argparse.ArgumentParser(
        prog="squeezed-arrival",
        description="Bohmian trajectories and arrival-time statistics of "
                    "vacuum squeezed states")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "density": "position density on a (t, x) grid",
        "trajectories": "ensemble of Bohmian trajectories",
        "phase-space": "trajectories in the (q, qdot) plane with boundary lines",
        "toa-pdf": "analytic arrival-time density",
        "toa-mc": "Monte Carlo arrival-time histogram and chi-square summary",
        "mean-toa": "mean arrival time along a parameter sweep",
        "counts": "standard vs trajectory-constrained detection counts",
        "validate": "run the cross-validation suite",
    }
    for name in _COMMANDS:
        p = sub.add_parser(name, parents=[common], help=helps[name])
        if name == "counts":
            p.add_argument("--jacobian", action="store_true",
                           help="weight the inner flow integral by the stretch factor")
        if name == "validate":
            p.add_argument("--perturb", type=float, default=0.0,
                           help="inject a trajectory bias (failure-path test hook)")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    desc = _descriptor(args)
    try:
        return _COMMANDS[desc.command](desc)
    except SingularLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(exc.code, file=sys.stderr)
            return 2
        raise


if __name__ == "__main__":
    sys.exit(main())
