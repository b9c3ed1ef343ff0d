"""Protocol engines and their shared run configuration."""

from .bosonic import ResonanceReport, find_resonance, run_bosonic
from .records import (
    CONFIG_FIELDS,
    KINDS,
    IterationSummary,
    ProtocolConfig,
    Record,
    Trajectory,
)
from .schedule import NoValidTheta, RaisingSchedule, schedule_raising, theta_bound
from .time_dependent import (
    OffsetEquivalenceReport,
    offset_equivalence_check,
    run_time_dependent,
)
from .time_independent import ITERATION_MODES, run_time_independent

__all__ = [
    "CONFIG_FIELDS",
    "ITERATION_MODES",
    "KINDS",
    "IterationSummary",
    "NoValidTheta",
    "OffsetEquivalenceReport",
    "ProtocolConfig",
    "RaisingSchedule",
    "Record",
    "ResonanceReport",
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


def run(cfg: ProtocolConfig, validate_records: bool = True) -> Trajectory:
    """Dispatch a run to the engine named by ``cfg.kind``."""
    cfg.validate()
    if cfg.kind == "time_dependent":
        return run_time_dependent(cfg, validate_records=validate_records)
    if cfg.kind == "time_independent":
        return run_time_independent(cfg, validate_records=validate_records)
    return run_bosonic(cfg, validate_records=validate_records)
