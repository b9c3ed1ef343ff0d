"""Render trajectory figures to PNG files next to the CSV output."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .protocols import Trajectory


def render_trajectory_png(traj: Trajectory, out, title: str = "") -> None:
    """Four-panel overview: reference vector, qubit vector, energy, entropy."""
    t = traj.column("t")
    fig, axes = plt.subplots(2, 2, figsize=(10, 7), sharex=True)
    (ax_l, ax_s), (ax_e, ax_ent) = axes

    for name in ("lx", "ly", "lz"):
        ax_l.plot(t, traj.column(name), label=name.capitalize())
    ax_l.set_ylabel("reference angular momentum")
    ax_l.legend(loc="best", fontsize="small")

    for name in ("sx", "sy", "sz"):
        ax_s.plot(t, traj.column(name), label=name.capitalize())
    ax_s.set_ylabel("qubit Pauli expectations")
    ax_s.legend(loc="best", fontsize="small")

    ax_e.plot(t, traj.column("e_ref"), label="E_ref")
    w_joint = traj.column("w_joint_cum")
    if any(w_joint):
        ax_e.plot(t, w_joint, label="W_joint_cum")
        ax_e.plot(t, traj.column("w_qubit_cum"), label="W_qubit_cum")
    ax_e.set_ylabel("energy / work")
    ax_e.set_xlabel("t")
    ax_e.legend(loc="best", fontsize="small")

    ax_ent.plot(t, traj.column("s_ref"), label="S_ref")
    ax_ent.plot(t, traj.column("purity_ref"), label="purity")
    ax_ent.set_ylabel("reference entropy / purity")
    ax_ent.set_xlabel("t")
    ax_ent.legend(loc="best", fontsize="small")

    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(out, dpi=120)
    plt.close(fig)
