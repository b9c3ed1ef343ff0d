"""Gibbs states, reduced Hamiltonians, entropy and work accounting.

The idealized bath replaces the qubit state with the Gibbs state of the
qubit's reduced Hamiltonian; correlations with the reference are discarded
(the channel output is a product state by construction). The channel is
nonlinear in the joint state because the reduced Hamiltonian depends on
the reference's current expectation values.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import exp, log
from string import ascii_lowercase

import numpy as np

from .linalg import (
    DensityMatrix,
    Operator,
    eigh,
    expect,
    kron,
    partial_trace,
)

ENTROPY_CLAMP = 1e-15


@dataclass(frozen=True)
class ThermoReport:
    """Energy/entropy/work snapshot of a state against a Hamiltonian."""

    energy: float
    entropy: float
    free_energy: float
    work_joint: float
    work_qubit: float
    purity: float


def gibbs(h: Operator, beta: float) -> DensityMatrix:
    """Thermal state exp(-beta h)/Z via eigendecomposition. beta = 0 allowed."""
    if beta < 0:
        raise ValueError(f"beta must be nonnegative, got {beta}")
    w, u = eigh(h)
    p = np.exp(-beta * (w - w[0]))
    p /= p.sum()
    um = u.mat
    return DensityMatrix(Operator((um * p) @ um.conj().T, h.dims))


def gibbs_populations(energies: np.ndarray, beta: float) -> np.ndarray:
    """Boltzmann weights over a fixed spectrum, normalized."""
    p = np.exp(-beta * (energies - energies.min()))
    return p / p.sum()


def reduced_hamiltonian(h_joint: Operator, other_state: DensityMatrix, keep: int) -> Operator:
    """Mean-field contraction tr_other[(other_state x 1_keep) h_joint].

    ``other_state`` lives on the subsystems of ``h_joint`` other than
    ``keep``, in their original order.
    """
    dims = h_joint.dims
    n = len(dims)
    if keep < 0 or keep >= n:
        raise ValueError(f"keep index {keep} out of range for {n} subsystems")
    other_dims = tuple(d for i, d in enumerate(dims) if i != keep)
    if other_state.dims != other_dims:
        raise ValueError(
            f"other_state layout {other_state.dims} does not match traced factors {other_dims}"
        )
    # R_{ab} = sum_{i,i'} rho_{i i'} H_{(i' a),(i b)} with multi-indices i over
    # the traced factors; build the einsum subscripts positionally.
    letters = iter(ascii_lowercase)
    a, b = next(letters), next(letters)
    row = [a if i == keep else next(letters) for i in range(n)]  # i' slots
    col = [b if i == keep else next(letters) for i in range(n)]  # i slots
    rho_sub = "".join(col[i] for i in range(n) if i != keep) + "".join(
        row[i] for i in range(n) if i != keep
    )
    h_sub = "".join(row) + "".join(col)
    t = h_joint.mat.reshape(dims + dims)
    r = other_state.mat.reshape(other_dims + other_dims)
    out = np.einsum(f"{rho_sub},{h_sub}->{a}{b}", r, t)
    return Operator(out, (dims[keep],))


def thermalize_qubit(sigma: DensityMatrix, h_joint: Operator, beta: float) -> DensityMatrix:
    """Idealized instantaneous qubit thermalization channel.

    The qubit (last factor of the reference x qubit layout) is replaced by
    the Gibbs state of its reduced Hamiltonian; the reference marginal is
    kept and correlations are discarded.
    """
    if sigma.dims != h_joint.dims or len(sigma.dims) != 2 or sigma.dims[-1] != 2:
        raise ValueError(
            f"expected matching reference x qubit layouts, got {sigma.dims} and {h_joint.dims}"
        )
    rho_ref = partial_trace(sigma.op, keep=(0,))
    h_s = reduced_hamiltonian(h_joint, DensityMatrix(rho_ref), keep=1)
    chi = gibbs(h_s, beta)
    return DensityMatrix(kron(rho_ref, chi.op))


def entropy(rho: DensityMatrix) -> float:
    """Von Neumann entropy -sum(p log p), natural log, 0 log 0 = 0."""
    return entropy_of(rho.mat)


def entropy_of(mat: np.ndarray) -> float:
    w = np.linalg.eigvalsh(mat)
    w = w[w > ENTROPY_CLAMP]
    return float(-np.sum(w * np.log(w)))


def purity_of(mat: np.ndarray) -> float:
    return float(np.sum(np.abs(mat) ** 2))


def work_increment(sigma: DensityMatrix, h_prev: Operator, h_next: Operator) -> float:
    """tr[sigma (h_next - h_prev)], the signed energy change of the step.

    Engines accumulate extracted work as the negative of these increments,
    so work leaving the joint system is reported positive.
    """
    if h_prev.dim != h_next.dim or sigma.dim != h_prev.dim:
        raise ValueError("dimension mismatch in work increment")
    return expect(h_next - h_prev, sigma).real


def semiclassical_work(e_max: float, beta: float) -> float:
    """Isothermal quasi-static two-level lowering work from splitting e_max.

    (1/beta)[log 2 - log(1 + exp(-beta e_max))]; tends to kT log 2 as
    beta*e_max grows.
    """
    if e_max < 0:
        raise ValueError(f"e_max must be nonnegative, got {e_max}")
    if beta <= 0:
        raise ValueError(f"beta must be positive, got {beta}")
    return (log(2.0) - np.log1p(exp(-beta * e_max))) / beta


def report(rho: DensityMatrix, h: Operator, beta: float,
           work_joint: float = 0.0, work_qubit: float = 0.0) -> ThermoReport:
    e = expect(h, rho).real
    s = entropy(rho)
    return ThermoReport(
        energy=e,
        entropy=s,
        free_energy=e - s / beta,
        work_joint=work_joint,
        work_qubit=work_qubit,
        purity=purity_of(rho.mat),
    )
