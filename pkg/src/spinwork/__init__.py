"""Deterministic simulator of qubit work extraction via a spin reference.

Three engines share one record format: a ramped-coupling protocol with
an idealized thermalization channel, a fixed-Hamiltonian protocol, and a
fixed-Hamiltonian protocol coupled to a single boson mode. The CLI runs
configs, figure presets and parameter sweeps, writing CSV trajectories
with PNG renderings alongside.
"""

from .protocols import (
    ProtocolConfig,
    Record,
    Trajectory,
    find_resonance,
    offset_equivalence_check,
    run,
    run_bosonic,
    run_time_dependent,
    run_time_independent,
    schedule_raising,
    theta_bound,
)

__all__ = [
    "ProtocolConfig",
    "Record",
    "Trajectory",
    "find_resonance",
    "offset_equivalence_check",
    "run",
    "run_bosonic",
    "run_time_dependent",
    "run_time_independent",
    "schedule_raising",
    "theta_bound",
]

__version__ = "0.1.0"
