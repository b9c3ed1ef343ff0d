"""Spin and boson operator factories.

Spin systems store 2l as an integer so half-integer l is exact. The basis
ordering is descending m: |l,l> is the first basis vector. The qubit
convention fixes |0> as the sigma_z = -1 state, so chi0 = (1 - sigma_z)/2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import DensityMatrix, Operator, kron, propagator

AXIS_ATOL = 1e-9


@dataclass(frozen=True)
class SpinSystem:
    """A spin-l system, l = two_l / 2."""

    two_l: int

    def __post_init__(self):
        if self.two_l < 0:
            raise ValueError(f"two_l must be nonnegative, got {self.two_l}")

    @property
    def l(self) -> float:
        return self.two_l / 2.0

    @property
    def dim(self) -> int:
        return self.two_l + 1


@dataclass(frozen=True)
class BosonMode:
    """A single boson mode truncated to its lowest ``dim`` Fock states."""

    dim: int
    omega: float

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError(f"boson truncation dimension must be >= 2, got {self.dim}")


def angular_momentum(sys: SpinSystem) -> tuple[Operator, Operator, Operator]:
    """Angular momentum components (Lx, Ly, Lz) in the descending-m basis."""
    l = sys.l
    d = sys.dim
    m = l - np.arange(d)
    lz = np.diag(m.astype(complex))
    # L+ |l,m> = sqrt(l(l+1) - m(m+1)) |l,m+1>; row index m+1 sits above m.
    lp = np.zeros((d, d), dtype=complex)
    for i in range(1, d):
        mm = m[i]
        lp[i - 1, i] = np.sqrt(l * (l + 1) - mm * (mm + 1))
    lm = lp.conj().T
    dims = (d,)
    lx = Operator((lp + lm) / 2.0, dims)
    ly = Operator((lp - lm) / 2.0j, dims)
    return lx, ly, Operator(lz, dims)


def qubit_paulis() -> tuple[Operator, Operator, Operator]:
    dims = (2,)
    sx = Operator(np.array([[0, 1], [1, 0]], dtype=complex), dims)
    sy = Operator(np.array([[0, -1j], [1j, 0]], dtype=complex), dims)
    sz = Operator(np.array([[1, 0], [0, -1]], dtype=complex), dims)
    return sx, sy, sz


def rotation(sys: SpinSystem, axis, angle: float) -> Operator:
    """Rotation exp(-i angle (axis . L)) for a unit 3-vector axis."""
    axis = np.asarray(axis, dtype=float)
    if axis.shape != (3,) or abs(np.linalg.norm(axis) - 1.0) > AXIS_ATOL:
        raise ValueError(f"rotation axis must be a unit 3-vector, got {axis}")
    lx, ly, lz = angular_momentum(sys)
    gen = Operator(axis[0] * lx.mat + axis[1] * ly.mat + axis[2] * lz.mat, lx.dims)
    return propagator(gen, angle)


def ls_coupling(ref: SpinSystem) -> tuple[Operator, Operator, Operator]:
    """L.S on the (2l+1) x 2 joint space with its j = l +/- 1/2 projectors.

    Returns (LdotS, PiPlus, PiMinus) where
    LdotS = (1/2)[l PiPlus - (l+1) PiMinus].
    """
    l = ref.l
    lx, ly, lz = angular_momentum(ref)
    sx, sy, sz = qubit_paulis()
    ldots = (
        kron(lx, 0.5 * sx) + kron(ly, 0.5 * sy) + kron(lz, 0.5 * sz)
    )
    dims = ldots.dims
    eye = np.eye(ldots.dim)
    # LdotS has the two eigenvalues l/2 and -(l+1)/2; shift-and-scale gives
    # the projector onto the upper (j = l + 1/2) eigenspace exactly.
    pi_plus = Operator((ldots.mat + (l + 1) / 2.0 * eye) / (l + 0.5), dims)
    pi_minus = Operator(eye - pi_plus.mat, dims)
    return ldots, pi_plus, pi_minus


def boson_ops(mode: BosonMode) -> tuple[Operator, Operator]:
    """Truncated lowering operator and number operator for a boson mode."""
    d = mode.dim
    a = np.zeros((d, d), dtype=complex)
    for n in range(1, d):
        a[n - 1, n] = np.sqrt(n)
    return Operator(a, (d,)), Operator(np.diag(np.arange(d, dtype=complex)), (d,))


def spin_state_index(sys: SpinSystem, m: float) -> int:
    """Basis index of |l,m> in the descending-m ordering."""
    two_m = round(2 * m)
    if abs(2 * m - two_m) > 1e-12 or abs(two_m) > sys.two_l or (two_m + sys.two_l) % 2:
        raise ValueError(f"invalid magnetic quantum number m={m} for two_l={sys.two_l}")
    return (sys.two_l - two_m) // 2


def initial_states(ref: SpinSystem, m: float, phi: float) -> tuple[DensityMatrix, DensityMatrix]:
    """Initial reference and qubit states.

    The reference is |l,m><l,m| rotated by ``phi`` around the y-axis; the
    qubit is |0><0| with <sigma_z> = -1. Both are pure.
    """
    idx = spin_state_index(ref, m)
    psi = np.zeros(ref.dim, dtype=complex)
    psi[idx] = 1.0
    ry = rotation(ref, (0.0, 1.0, 0.0), phi)
    psi = ry.mat @ psi
    rho0 = DensityMatrix(Operator(np.outer(psi, psi.conj()), (ref.dim,)))
    chi0 = DensityMatrix(Operator(np.diag([0.0, 1.0]).astype(complex), (2,)))
    return rho0, chi0
