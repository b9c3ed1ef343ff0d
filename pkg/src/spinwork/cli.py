"""Command line entry points: run, preset, sweep, check.

Exit codes: 0 success, 2 validation error (bad config, bad arguments),
1 runtime failure.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .config import ConfigError, load_config
from .csvio import write_csv, write_summary
from .plots import render_trajectory_png
from .presets import PRESETS, run_preset
from .protocols import ProtocolConfig, offset_equivalence_check, run, schedule_raising
from .sweep import parse_axis, sweep

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_VALIDATION = 2


def _cmd_run(args) -> int:
    cfg = load_config(args.config)
    os.makedirs(args.out, exist_ok=True)
    traj = run(cfg)
    stem = os.path.splitext(os.path.basename(args.config))[0]
    write_csv(traj, os.path.join(args.out, f"{stem}.csv"))
    render_trajectory_png(traj, os.path.join(args.out, f"{stem}.png"), title=stem)
    write_summary([(stem, s) for s in traj.iterations],
                  os.path.join(args.out, f"{stem}_summary.csv"))
    return EXIT_OK


def _cmd_preset(args) -> int:
    if args.figure not in PRESETS:
        raise ConfigError(
            f"unknown figure {args.figure!r}; expected one of {', '.join(PRESETS)}"
        )
    run_preset(args.figure, args.out)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    axes: dict[str, list] = {}
    for spec in args.axis or []:
        key, values = parse_axis(spec)
        if key in axes:
            raise ConfigError(f"duplicate sweep axis {key!r}")
        axes[key] = values
    sweep(cfg, axes, args.out)
    return EXIT_OK


def _cmd_check(_args) -> int:
    """Fast invariant self-test; prints one line per check."""
    from .operators import SpinSystem, angular_momentum, ls_coupling
    from .thermo import gibbs, thermalize_qubit
    from .linalg import DensityMatrix, Operator, kron, propagator

    failures = 0

    def report(name: str, ok: bool) -> None:
        nonlocal failures
        print(f"{'ok  ' if ok else 'FAIL'} {name}")
        failures += 0 if ok else 1

    sys5 = SpinSystem(5)
    lx, ly, lz = angular_momentum(sys5)
    comm = lx.mat @ ly.mat - ly.mat @ lx.mat - 1j * lz.mat
    report("su(2) commutator [Lx,Ly] = i Lz", np.max(np.abs(comm)) < 1e-12)
    l = sys5.l
    casimir = lx.mat @ lx.mat + ly.mat @ ly.mat + lz.mat @ lz.mat
    report("Casimir L^2 = l(l+1)",
           np.max(np.abs(casimir - l * (l + 1) * np.eye(sys5.dim))) < 1e-12)

    report("propagator at s=0 is the identity",
           np.max(np.abs(propagator(lz, 0.0).mat - np.eye(sys5.dim))) < 1e-14)

    g = gibbs(lz, 1.3)
    report("Gibbs state is unit trace", abs(np.trace(g.mat) - 1.0) < 1e-12)

    ldots, pip, pim = ls_coupling(SpinSystem(4))
    report("L.S projector idempotence",
           np.max(np.abs(pip.mat @ pip.mat - pip.mat)) < 1e-12)

    h = kron(lz, Operator(np.diag([1.0, -1.0]).astype(complex), (2,)))
    rho = DensityMatrix(Operator(np.eye(2 * sys5.dim) / (2 * sys5.dim),
                                 (sys5.dim, 2)))
    t1 = thermalize_qubit(rho, h, 1.0)
    t2 = thermalize_qubit(t1, h, 1.0)
    report("qubit thermalization idempotence",
           np.max(np.abs(t1.mat - t2.mat)) < 1e-12)

    sched = schedule_raising(2000, 1.0, 0.99)
    report("raising schedule n=2 at large l", sched.n == 2)

    rep = offset_equivalence_check(
        ProtocolConfig(kind="time_dependent", two_l=4, beta=1.0,
                       n_lowering_steps=40)
    )
    report("identity offset leaves states unchanged",
           rep.max_state_distance < 1e-10)
    report("identity offset leaves cycle work unchanged",
           rep.work_difference < 1e-6)

    if failures:
        print(f"{failures} check(s) failed")
        return EXIT_RUNTIME
    print("all checks passed")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinwork",
        description="Simulate work extraction from a qubit via a spin reference.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one config file")
    p_run.add_argument("--config", required=True)
    p_run.add_argument("--out", required=True)
    p_run.set_defaults(func=_cmd_run)

    p_preset = sub.add_parser("preset", help="run a built-in figure preset")
    p_preset.add_argument("--figure", required=True)
    p_preset.add_argument("--out", required=True)
    p_preset.set_defaults(func=_cmd_preset)

    p_sweep = sub.add_parser("sweep", help="run a parameter sweep")
    p_sweep.add_argument("--config", required=True)
    p_sweep.add_argument("--axis", action="append", metavar="param=v1,v2,...")
    p_sweep.add_argument("--out", required=True)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_check = sub.add_parser("check", help="run the invariant self-tests")
    p_check.set_defaults(func=_cmd_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_VALIDATION if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except Exception as exc:  # runtime failure, distinct from bad input
        print(f"runtime failure: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
