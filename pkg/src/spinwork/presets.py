"""Built-in run presets, one per published figure of the study.

Each preset is a list of named curves; ``run_preset`` executes them,
writes one CSV and one PNG per curve, a per-iteration summary, and a
``presets.txt`` restating the exact parameters used.
"""

from __future__ import annotations

import os
from math import pi

from .config import render_config
from .csvio import write_csv, write_summary
from .plots import render_trajectory_png
from .protocols import ProtocolConfig, run

PRESETS: dict[str, tuple[tuple[str, ProtocolConfig], ...]] = {
    # Single ramped-coupling cycle at the smallest nontrivial reference.
    "fig3": (
        ("l1", ProtocolConfig(kind="time_dependent", two_l=2, beta=1.0)),
    ),
    # One ramped-coupling cycle across reference sizes.
    "fig4": tuple(
        (f"l{tl // 2}", ProtocolConfig(kind="time_dependent", two_l=tl, beta=1.0))
        for tl in (4, 20, 100)
    ),
    # Ten reuse cycles of the same reference.
    "fig5": tuple(
        (f"l{tl // 2}",
         ProtocolConfig(kind="time_dependent", two_l=tl, beta=1.0, iterations=10))
        for tl in (4, 20, 100)
    ),
    # Fixed-Hamiltonian transfer across reference sizes.
    "fig6": tuple(
        (f"l{tl // 2}",
         ProtocolConfig(kind="time_independent", two_l=tl, beta=1.0,
                        theta=pi / 4, dt=1e-5, sample_stride=200))
        for tl in (4, 20, 100)
    ),
    # Fixed-Hamiltonian transfer across mixing angles.
    "fig7": tuple(
        (name,
         ProtocolConfig(kind="time_independent", two_l=20, beta=1.0,
                        theta=theta, dt=1e-5, sample_stride=200))
        for name, theta in (
            ("theta_pi_8", pi / 8),
            ("theta_pi_4", pi / 4),
            ("theta_3pi_8", 3 * pi / 8),
        )
    ),
    # Single-mode bath lowering across mode frequencies.
    "fig8": tuple(
        (f"omega{w}",
         ProtocolConfig(kind="bosonic", two_l=150, beta=0.05, dt=1e-3,
                        omega=float(w), alpha=2.0, bath_dim=7))
        for w in (10, 30, 60)
    ),
    # Five reuse cycles of the fixed-Hamiltonian protocol.
    "fig9": (
        ("l10", ProtocolConfig(kind="time_independent", two_l=20, beta=1.0,
                               theta=pi / 4, dt=1e-4, iterations=5,
                               sample_stride=20)),
    ),
    # Entropy view of the same five reuse cycles.
    "fig10": (
        ("l10", ProtocolConfig(kind="time_independent", two_l=20, beta=1.0,
                               theta=pi / 4, dt=1e-4, iterations=5,
                               sample_stride=20)),
    ),
}


def preset_table_text() -> str:
    """Human-readable restatement of every preset's parameters."""
    chunks = []
    for fig in PRESETS:
        for name, cfg in PRESETS[fig]:
            chunks.append(f"[{fig}/{name}]\n{render_config(cfg)}")
    return "\n".join(chunks)


def run_preset(figure: str, out: str, render_plots: bool = True) -> list[str]:
    """Execute one figure preset into ``out``; returns the files written."""
    if figure not in PRESETS:
        raise ValueError(
            f"unknown figure {figure!r}; expected one of {', '.join(PRESETS)}"
        )
    os.makedirs(out, exist_ok=True)
    written = []
    summary_rows = []
    for name, cfg in PRESETS[figure]:
        traj = run(cfg)
        csv_path = os.path.join(out, f"{figure}_{name}.csv")
        write_csv(traj, csv_path)
        written.append(csv_path)
        if render_plots:
            png_path = os.path.join(out, f"{figure}_{name}.png")
            render_trajectory_png(traj, png_path, title=f"{figure} {name}")
            written.append(png_path)
        summary_rows.extend((name, s) for s in traj.iterations)
    summary_path = os.path.join(out, f"{figure}_summary.csv")
    write_summary(summary_rows, summary_path)
    written.append(summary_path)
    table_path = os.path.join(out, "presets.txt")
    with open(table_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(preset_table_text())
    written.append(table_path)
    return written
