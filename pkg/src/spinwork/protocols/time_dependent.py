"""Work extraction with the externally ramped coupling f(t) L.S.

The raising window is scheduled so its closed-form unitary is the
identity; the lowering ramp f(t) = (T - t)/l runs in n discrete steps,
each a qubit thermalization followed by a joint evolution
dU = PiPlus + exp(-i f (l + 1/2) dt) PiMinus. Work is accounted as
-tr[sigma dH] against H(t) = f(t) L.S - E_minus(t) 1, which pins the
occupied qubit level at zero energy; raising is work-free by
construction. Consecutive iterations reuse the reference with a fresh
pure qubit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..linalg import DensityMatrix, Operator, ptrace, trace_product
from ..operators import SpinSystem, angular_momentum, initial_states, ls_coupling, qubit_paulis
from ..thermo import entropy_of, gibbs_populations, purity_of
from .records import IterationSummary, ProtocolConfig, Record, Trajectory
from .schedule import schedule_raising


class _Workspace:
    """Operators shared by the lowering loop, built once per run."""

    def __init__(self, two_l: int):
        self.sys = SpinSystem(two_l)
        lx, ly, lz = angular_momentum(self.sys)
        self.lmats = (lx.mat, ly.mat, lz.mat)
        sx, sy, sz = qubit_paulis()
        self.smats = (sx.mat, sy.mat, sz.mat)
        ldots, pip, pim = ls_coupling(self.sys)
        self.ldots = ldots.mat
        self.pi_plus = pip.mat
        self.pi_minus = pim.mat
        self.dims = (self.sys.dim, 2)
        self.eye_joint = np.eye(2 * self.sys.dim)
        self.eye2 = np.eye(2)


def _l_expectations(rho_ref: np.ndarray, ws: _Workspace) -> np.ndarray:
    return np.array([trace_product(rho_ref, m).real for m in ws.lmats])


def _thermal_qubit(h_s: np.ndarray, beta: float) -> np.ndarray:
    w, v = np.linalg.eigh(h_s)
    p = gibbs_populations(w, beta)
    return (v * p) @ v.conj().T


def _validate_state(mat: np.ndarray) -> None:
    if np.max(np.abs(mat - mat.conj().T)) > 1e-12:
        raise RuntimeError("recorded state lost Hermiticity")
    if abs(np.trace(mat).real - 1.0) > 1e-10:
        raise RuntimeError("recorded state lost unit trace")
    if np.linalg.eigvalsh(mat)[0] < -1e-10:
        raise RuntimeError("recorded state lost positivity")


def run_time_dependent(cfg: ProtocolConfig, validate_records: bool = True) -> Trajectory:
    """Run the ramped-coupling protocol for ``cfg.iterations`` iterations."""
    cfg.validate()
    if cfg.kind != "time_dependent":
        raise ValueError(f"expected a time_dependent config, got {cfg.kind!r}")
    ws = _Workspace(cfg.two_l)
    l = ws.sys.l
    sched = schedule_raising(cfg.two_l, cfg.beta, cfg.c_target)
    big_t = sched.capital_t
    n = cfg.n_lowering_steps
    dt = big_t / n

    rho0, chi0 = initial_states(ws.sys, m=l, phi=cfg.effective_phi0)
    rho_ref = rho0.mat
    chi0m = chi0.mat

    traj = Trajectory()
    w_joint_cum = 0.0
    w_qubit_cum = 0.0

    for it in range(cfg.iterations):
        sigma = np.kron(rho_ref, chi0m)
        s_ref_start = entropy_of(rho_ref)
        w_joint = 0.0
        w_qubit = 0.0
        h_prev = None
        hs_prev = None
        e_ref = 0.0
        t_base = it * (big_t + dt)

        for k in range(n + 1):
            f = (big_t - k * dt) / l
            rho_ref = ptrace(sigma, ws.dims, (0,))
            lvec = _l_expectations(rho_ref, ws)
            e_minus = -0.5 * f * float(np.linalg.norm(lvec))
            h_s = 0.5 * f * (
                lvec[0] * ws.smats[0] + lvec[1] * ws.smats[1] + lvec[2] * ws.smats[2]
            ) - e_minus * ws.eye2
            chi = _thermal_qubit(h_s, cfg.beta)
            sigma = np.kron(rho_ref, chi)
            h_full = f * ws.ldots - e_minus * ws.eye_joint
            if h_prev is not None:
                w_joint -= trace_product(sigma, h_full - h_prev).real
                w_qubit -= trace_product(chi, h_s - hs_prev).real
            h_prev, hs_prev = h_full, h_s

            if k % cfg.sample_stride == 0 or k == n:
                svec = [trace_product(chi, m).real for m in ws.smats]
                # Reduced reference Hamiltonian: f <S>.L - E_minus, S = sigma/2.
                h_ref = 0.5 * f * (
                    svec[0] * ws.lmats[0] + svec[1] * ws.lmats[1] + svec[2] * ws.lmats[2]
                ) - e_minus * np.eye(ws.sys.dim)
                e_ref = trace_product(rho_ref, h_ref).real
                if validate_records:
                    _validate_state(sigma)
                traj.records.append(Record(
                    t=t_base + k * dt,
                    lx=float(lvec[0]), ly=float(lvec[1]), lz=float(lvec[2]),
                    sx=svec[0], sy=svec[1], sz=svec[2],
                    e_ref=e_ref,
                    s_ref=entropy_of(rho_ref),
                    purity_ref=purity_of(rho_ref),
                    w_joint_cum=w_joint_cum + w_joint,
                    w_qubit_cum=w_qubit_cum + w_qubit,
                ))

            if k < n:
                phase = np.exp(-1j * f * (l + 0.5) * dt)
                du = ws.pi_plus + phase * ws.pi_minus
                sigma = du @ sigma @ du.conj().T

        rho_ref = ptrace(sigma, ws.dims, (0,))
        w_joint_cum += w_joint
        w_qubit_cum += w_qubit
        traj.iterations.append(IterationSummary(
            iteration=it + 1,
            w_joint=w_joint,
            w_qubit=w_qubit,
            ds_ref=entropy_of(rho_ref) - s_ref_start,
            e_ref_end=e_ref,
        ))

    return traj


@dataclass(frozen=True)
class OffsetEquivalenceReport:
    """Comparison of the lowering loop with and without the identity offset."""

    max_state_distance: float
    work_plain: float
    work_offset: float
    work_difference: float


def offset_equivalence_check(cfg: ProtocolConfig) -> OffsetEquivalenceReport:
    """Run the closed raise/lower cycle under f L.S and f L.S - E_minus 1.

    The two Hamiltonians differ by a multiple of the identity, so the state
    trajectories must agree entrywise and the cycle works must coincide.
    The offset-free branch evolves through the closed-form projector
    unitary, the offset branch through a fresh eigendecomposition per step,
    so the two paths are numerically independent.
    """
    cfg.validate()
    if cfg.kind != "time_dependent":
        raise ValueError(f"expected a time_dependent config, got {cfg.kind!r}")
    ws = _Workspace(cfg.two_l)
    l = ws.sys.l
    sched = schedule_raising(cfg.two_l, cfg.beta, cfg.c_target)
    big_t = sched.capital_t
    n = cfg.n_lowering_steps
    dt = big_t / n

    rho0, chi0 = initial_states(ws.sys, m=l, phi=cfg.effective_phi0)
    sigma_a = np.kron(rho0.mat, chi0.mat)
    sigma_b = sigma_a.copy()

    def h_plain(f):
        return f * ws.ldots

    def h_offset(f, sigma):
        rho_ref = ptrace(sigma, ws.dims, (0,))
        lvec = _l_expectations(rho_ref, ws)
        e_minus = -0.5 * f * float(np.linalg.norm(lvec))
        return f * ws.ldots - e_minus * ws.eye_joint

    f0 = big_t / l
    # Raising: the scheduled unitary is the identity, so only the
    # Hamiltonian jump 0 -> f0 contributes to the work tally.
    sum_a = trace_product(sigma_a, h_plain(f0)).real
    sum_b = trace_product(sigma_b, h_offset(f0, sigma_b)).real
    ha_prev = h_plain(f0)
    hb_prev = h_offset(f0, sigma_b)
    max_dist = 0.0

    for k in range(n + 1):
        f = (big_t - k * dt) / l
        # Branch A: no offset, closed-form step unitary.
        rho_a = ptrace(sigma_a, ws.dims, (0,))
        lvec_a = _l_expectations(rho_a, ws)
        hs_a = 0.5 * f * sum(c * m for c, m in zip(lvec_a, ws.smats))
        sigma_a = np.kron(rho_a, _thermal_qubit(hs_a, cfg.beta))
        ha = h_plain(f)
        sum_a += trace_product(sigma_a, ha - ha_prev).real
        ha_prev = ha
        # Branch B: identity offset, dense propagator per step.
        rho_b = ptrace(sigma_b, ws.dims, (0,))
        lvec_b = _l_expectations(rho_b, ws)
        e_minus = -0.5 * f * float(np.linalg.norm(lvec_b))
        hs_b = 0.5 * f * sum(c * m for c, m in zip(lvec_b, ws.smats)) - e_minus * ws.eye2
        sigma_b = np.kron(rho_b, _thermal_qubit(hs_b, cfg.beta))
        hb = f * ws.ldots - e_minus * ws.eye_joint
        sum_b += trace_product(sigma_b, hb - hb_prev).real
        hb_prev = hb

        max_dist = max(max_dist, float(np.max(np.abs(sigma_a - sigma_b))))

        if k < n:
            phase = np.exp(-1j * f * (l + 0.5) * dt)
            du_a = ws.pi_plus + phase * ws.pi_minus
            sigma_a = du_a @ sigma_a @ du_a.conj().T
            w, v = np.linalg.eigh(hb)
            du_b = (v * np.exp(-1j * dt * w)) @ v.conj().T
            sigma_b = du_b @ sigma_b @ du_b.conj().T

    return OffsetEquivalenceReport(
        max_state_distance=max_dist,
        work_plain=-sum_a,
        work_offset=-sum_b,
        work_difference=abs(sum_a - sum_b),
    )
