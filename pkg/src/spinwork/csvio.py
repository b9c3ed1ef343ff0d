"""Trajectory CSV emission and reader-side schema checks.

Floats are written with repr (shortest round-trip decimal) and files use
LF line endings regardless of platform, so identical runs are bytewise
identical.
"""

from __future__ import annotations

from .protocols import IterationSummary, Record, Trajectory

CSV_HEADER = "t,Lx,Ly,Lz,Sx,Sy,Sz,E_ref,S_ref,purity_ref,W_joint_cum,W_qubit_cum"
SUMMARY_HEADER = "run,iteration,W_joint,W_qubit,dS_ref,E_ref_end"

_COLUMNS = ("t", "lx", "ly", "lz", "sx", "sy", "sz",
            "e_ref", "s_ref", "purity_ref", "w_joint_cum", "w_qubit_cum")


class CsvSchemaError(ValueError):
    """A CSV file failed the reader-side schema check."""


def render_csv(traj: Trajectory) -> str:
    lines = [CSV_HEADER]
    for rec in traj.records:
        lines.append(",".join(repr(float(getattr(rec, c))) for c in _COLUMNS))
    return "\n".join(lines) + "\n"


def write_csv(traj: Trajectory, out) -> None:
    """Write a trajectory CSV (header-only when there are no records)."""
    try:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(render_csv(traj))
    except OSError as exc:
        raise OSError(f"failed to write {out}: {exc}") from exc


def read_csv(path) -> Trajectory:
    """Read a trajectory CSV back, enforcing the schema.

    Checks the exact header, the column count of every row, and that the
    time column is strictly increasing.
    """
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise CsvSchemaError(f"{path}: bad or missing header")
    traj = Trajectory()
    prev_t = None
    for i, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != len(_COLUMNS):
            raise CsvSchemaError(
                f"{path}: line {i} has {len(parts)} columns, expected {len(_COLUMNS)}"
            )
        try:
            vals = [float(p) for p in parts]
        except ValueError:
            raise CsvSchemaError(f"{path}: line {i} has a non-numeric field") from None
        if prev_t is not None and vals[0] <= prev_t:
            raise CsvSchemaError(f"{path}: time column not increasing at line {i}")
        prev_t = vals[0]
        traj.records.append(Record(*vals))
    return traj


def write_summary(rows: list[tuple[str, IterationSummary]], out) -> None:
    """Write per-iteration summaries for a set of named runs."""
    lines = [SUMMARY_HEADER]
    for name, s in rows:
        lines.append(",".join((
            name, str(s.iteration), repr(float(s.w_joint)), repr(float(s.w_qubit)),
            repr(float(s.ds_ref)), repr(float(s.e_ref_end)),
        )))
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
