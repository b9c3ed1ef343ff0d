"""Run configuration and trajectory records shared by the protocol engines."""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from math import pi

KINDS = ("time_dependent", "time_independent", "bosonic")

DEFAULT_BOSONIC_T_MAX = 2.5
MAX_BOSONIC_RECORDS = 4000


@dataclass(frozen=True)
class ProtocolConfig:
    """All run parameters for the three protocol engines.

    ``theta`` and ``dt`` are required for the time-independent engine;
    ``omega``, ``alpha``, ``bath_dim`` and ``dt`` for the bosonic one. The
    time-dependent engine derives its step from the raising schedule and
    ``n_lowering_steps``.
    """

    kind: str
    two_l: int
    beta: float
    theta: float | None = None
    dt: float | None = None
    n_lowering_steps: int = 200
    c_target: float = 0.99
    iterations: int = 1
    phi0: float | None = None
    omega: float | None = None
    alpha: float | None = None
    bath_dim: int | None = None
    t_max: float | None = None
    sample_stride: int = 1

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown protocol kind {self.kind!r}")
        if self.two_l < 0:
            raise ValueError(f"two_l must be nonnegative, got {self.two_l}")
        if self.beta <= 0:
            raise ValueError(f"beta must be positive, got {self.beta}")
        if self.iterations < 1:
            raise ValueError(f"iterations must be >= 1, got {self.iterations}")
        if self.sample_stride < 1:
            raise ValueError(f"sample_stride must be >= 1, got {self.sample_stride}")
        if self.theta is not None and not 0.0 <= self.theta <= pi / 2:
            raise ValueError(f"theta must lie in [0, pi/2], got {self.theta}")
        if self.dt is not None and self.dt <= 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if self.kind == "time_dependent":
            if not 0.0 < self.c_target < 1.0:
                raise ValueError(f"c_target must lie in (0, 1), got {self.c_target}")
            if self.n_lowering_steps < 1:
                raise ValueError(
                    f"n_lowering_steps must be >= 1, got {self.n_lowering_steps}"
                )
        if self.kind == "time_independent":
            if self.theta is None:
                raise ValueError("time_independent runs require theta")
            if self.dt is None:
                raise ValueError("time_independent runs require dt")
        if self.kind == "bosonic":
            missing = [k for k in ("omega", "alpha", "bath_dim", "dt")
                       if getattr(self, k) is None]
            if missing:
                raise ValueError(f"bosonic runs require {', '.join(missing)}")
            if self.omega <= 0:
                raise ValueError(f"omega must be positive, got {self.omega}")
            if self.bath_dim < 2:
                raise ValueError(f"bath_dim must be >= 2, got {self.bath_dim}")
            if self.t_max is not None and self.t_max <= 0:
                raise ValueError(f"t_max must be positive, got {self.t_max}")

    @property
    def effective_phi0(self) -> float:
        if self.phi0 is not None:
            return self.phi0
        return 0.0 if self.kind == "time_dependent" else 1.5 * pi

    @property
    def effective_theta(self) -> float:
        if self.theta is not None:
            return self.theta
        if self.kind == "bosonic":
            return pi / 4
        raise ValueError("theta not set")

    @property
    def effective_t_max(self) -> float:
        return self.t_max if self.t_max is not None else DEFAULT_BOSONIC_T_MAX


CONFIG_FIELDS = tuple(f.name for f in fields(ProtocolConfig))


@dataclass(frozen=True)
class Record:
    """One sampled point of a protocol run.

    ``sx``..``sz`` are qubit Pauli expectations; ``lx``..``lz`` are raw
    angular momentum expectations of the reference. ``e_ref`` is measured
    against the reference's reduced Hamiltonian of the active engine.
    """

    t: float
    lx: float
    ly: float
    lz: float
    sx: float
    sy: float
    sz: float
    e_ref: float
    s_ref: float
    purity_ref: float
    w_joint_cum: float
    w_qubit_cum: float


@dataclass(frozen=True)
class IterationSummary:
    iteration: int
    w_joint: float
    w_qubit: float
    ds_ref: float
    e_ref_end: float


@dataclass
class Trajectory:
    """Time-ordered records plus per-iteration summaries of one run."""

    records: list[Record] = field(default_factory=list)
    iterations: list[IterationSummary] = field(default_factory=list)

    def column(self, name: str) -> list[float]:
        return [getattr(r, name) for r in self.records]
