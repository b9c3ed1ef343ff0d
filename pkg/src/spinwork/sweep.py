"""Parallel Cartesian-product parameter sweeps.

Each sweep point is an independent single-threaded run; points execute
in a process pool capped by the QTS_THREADS environment variable. File
naming and the final summary depend only on the axes, never on
scheduling, so output is bytewise reproducible at any parallelism.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from itertools import product

from .config import _ALL_KEYS, _INT_KEYS, _STR_KEYS
from .csvio import write_csv, write_summary
from .plots import render_trajectory_png
from .protocols import ProtocolConfig, run

THREADS_ENV = "QTS_THREADS"


def parse_axis(spec: str) -> tuple[str, list]:
    """Parse a ``param=v1,v2,...`` axis argument."""
    key, sep, rest = spec.partition("=")
    key = key.strip()
    if not sep or not rest.strip():
        raise ValueError(f"axis {spec!r} is not of the form param=v1,v2,...")
    if key not in _ALL_KEYS:
        raise ValueError(f"unknown sweep parameter {key!r}")
    values = []
    for raw in rest.split(","):
        raw = raw.strip()
        if key in _STR_KEYS:
            values.append(raw)
        elif key in _INT_KEYS:
            values.append(int(raw))
        else:
            values.append(float(raw))
    return key, values


def expand_axes(base: ProtocolConfig, axes: dict[str, list]) -> list[tuple[str, ProtocolConfig]]:
    """All sweep points as (name, config), validated before any run starts."""
    for key in axes:
        if key not in _ALL_KEYS:
            raise ValueError(f"unknown sweep parameter {key!r}")
        if not axes[key]:
            raise ValueError(f"sweep axis {key!r} has no values")
    if not axes:
        point = replace(base)
        point.validate()
        return [("base", point)]
    keys = list(axes)
    points = []
    for combo in product(*(axes[k] for k in keys)):
        cfg = replace(base, **dict(zip(keys, combo)))
        cfg.validate()
        name = "__".join(f"{k}={v}" for k, v in zip(keys, combo))
        points.append((name, cfg))
    return points


def _worker_count() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        n = int(env)
        if n < 1:
            raise ValueError(f"{THREADS_ENV} must be >= 1, got {env}")
        return n
    return os.cpu_count() or 1


def _run_point(args):
    name, cfg, out, render_plots = args
    traj = run(cfg)
    write_csv(traj, os.path.join(out, f"{name}.csv"))
    if render_plots:
        render_trajectory_png(traj, os.path.join(out, f"{name}.png"), title=name)
    return name, traj.iterations


def sweep(base: ProtocolConfig, axes: dict[str, list], out: str,
          render_plots: bool = True) -> list[str]:
    """Run every sweep point into ``out``; returns the CSV paths written."""
    points = expand_axes(base, axes)
    os.makedirs(out, exist_ok=True)
    jobs = [(name, cfg, out, render_plots) for name, cfg in points]
    workers = min(_worker_count(), len(jobs))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = dict(pool.map(_run_point, jobs))
    else:
        results = dict(map(_run_point, jobs))
    summary_rows = []
    for name, _ in points:  # deterministic order, independent of scheduling
        summary_rows.extend((name, s) for s in results[name])
    write_summary(summary_rows, os.path.join(out, "summary.csv"))
    return [os.path.join(out, f"{name}.csv") for name, _ in points]
