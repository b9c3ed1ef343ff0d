"""Dense complex linear algebra on tensor-product Hilbert spaces.

Operators carry a subsystem layout (ordered factor dimensions) so that
Kronecker products and partial traces compose without bookkeeping at the
call site. All generators handled here are Hermitian; propagators are
built from the eigendecomposition, not a series expansion.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

import numpy as np

# Fixed tolerances; tests depend on these exact values.
HERMITIAN_ATOL = 1e-12
TRACE_ATOL = 1e-10
EIG_FLOOR = -1e-10
UNITARY_ATOL = 1e-10


def _as_dims(dims) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if len(dims) == 0:
        raise ValueError("subsystem layout must be nonempty")
    if any(d < 1 for d in dims):
        raise ValueError(f"subsystem dimensions must be >= 1, got {dims}")
    return dims


@dataclass(frozen=True)
class Operator:
    """A dense complex square matrix on a tensor-product space.

    ``dims`` lists the subsystem dimensions in tensor order; their product
    equals the matrix dimension. Instances are immutable and safe to share.
    """

    mat: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        mat = np.array(self.mat, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"operator matrix must be square, got shape {mat.shape}")
        dims = _as_dims(self.dims)
        if prod(dims) != mat.shape[0]:
            raise ValueError(
                f"layout {dims} has product {prod(dims)}, matrix dim is {mat.shape[0]}"
            )
        mat.setflags(write=False)
        object.__setattr__(self, "mat", mat)
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def dag(self) -> "Operator":
        return Operator(self.mat.conj().T, self.dims)

    def is_hermitian(self, atol: float = HERMITIAN_ATOL) -> bool:
        return bool(np.max(np.abs(self.mat - self.mat.conj().T)) <= atol)

    def __matmul__(self, other: "Operator") -> "Operator":
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return Operator(self.mat @ other.mat, self.dims)

    def __add__(self, other: "Operator") -> "Operator":
        return Operator(self.mat + other.mat, self.dims)

    def __sub__(self, other: "Operator") -> "Operator":
        return Operator(self.mat - other.mat, self.dims)

    def __mul__(self, scalar) -> "Operator":
        return Operator(self.mat * scalar, self.dims)

    __rmul__ = __mul__


@dataclass(frozen=True)
class DensityMatrix:
    """A Hermitian, unit-trace, positive-semidefinite Operator.

    Construction validates the invariants (Hermitian to 1e-12, trace one to
    1e-10, eigenvalues above -1e-10) and raises ValueError on violation.
    """

    op: Operator

    def __post_init__(self):
        m = self.op.mat
        herm = np.max(np.abs(m - m.conj().T))
        if herm > HERMITIAN_ATOL:
            raise ValueError(f"density matrix not Hermitian: max deviation {herm:.3e}")
        tr = np.trace(m)
        if abs(tr - 1.0) > TRACE_ATOL:
            raise ValueError(f"density matrix trace {tr} is not 1")
        lo = float(np.linalg.eigvalsh(m)[0])
        if lo < EIG_FLOOR:
            raise ValueError(f"density matrix has eigenvalue {lo:.3e} below floor")

    @property
    def mat(self) -> np.ndarray:
        return self.op.mat

    @property
    def dims(self) -> tuple[int, ...]:
        return self.op.dims

    @property
    def dim(self) -> int:
        return self.op.dim


def identity(dims) -> Operator:
    dims = _as_dims(dims)
    return Operator(np.eye(prod(dims)), dims)


def kron(a: Operator, b: Operator) -> Operator:
    """Kronecker product; layouts concatenate, a-index major."""
    return Operator(np.kron(a.mat, b.mat), a.dims + b.dims)


def ptrace(mat: np.ndarray, dims, keep) -> np.ndarray:
    """Partial trace of a raw matrix over all factors not in ``keep``."""
    dims = tuple(dims)
    n = len(dims)
    keep = tuple(sorted(set(int(k) for k in keep)))
    if any(k < 0 or k >= n for k in keep):
        raise ValueError(f"keep indices {keep} out of range for {n} subsystems")
    if len(keep) == 0 or len(keep) == n:
        raise ValueError("keep must be a nonempty proper subset of subsystems")
    t = mat.reshape(dims + dims)
    n_cur = n
    for i in sorted((j for j in range(n) if j not in keep), reverse=True):
        t = np.trace(t, axis1=i, axis2=i + n_cur)
        n_cur -= 1
    d = prod(dims[k] for k in keep)
    return np.ascontiguousarray(t.reshape(d, d))


def partial_trace(m: Operator, keep) -> Operator:
    """Trace out every subsystem not listed in ``keep`` (original order kept)."""
    if len(m.dims) < 2:
        raise ValueError("partial trace needs at least two subsystems")
    keep = tuple(sorted(set(int(k) for k in keep)))
    out = ptrace(m.mat, m.dims, keep)
    return Operator(out, tuple(m.dims[k] for k in keep))


def eigh(h: Operator) -> tuple[np.ndarray, Operator]:
    """Eigendecomposition of a Hermitian operator.

    Returns ascending real eigenvalues and the unitary of eigenvectors
    (columns), so that h = u diag(w) u^dagger.
    """
    if not h.is_hermitian():
        dev = np.max(np.abs(h.mat - h.mat.conj().T))
        raise ValueError(f"eigh requires a Hermitian operator (deviation {dev:.3e})")
    w, v = np.linalg.eigh(h.mat)
    return w, Operator(v, h.dims)


def propagator(h: Operator, s: float) -> Operator:
    """Unitary exp(-i s h) for Hermitian h, via eigendecomposition."""
    w, u = eigh(h)
    um = u.mat
    return Operator((um * np.exp(-1j * s * w)) @ um.conj().T, h.dims)


def expect(obs: Operator, state) -> complex:
    """tr(state . obs). ``state`` may be a DensityMatrix or Operator."""
    smat = state.mat if isinstance(state, (DensityMatrix, Operator)) else np.asarray(state)
    if smat.shape[0] != obs.dim:
        raise ValueError(f"dimension mismatch: state {smat.shape[0]}, obs {obs.dim}")
    return complex(np.sum(smat * obs.mat.T))


def trace_product(a: np.ndarray, b: np.ndarray) -> complex:
    """tr(a b) for raw matrices, without forming the product."""
    return complex(np.sum(a * b.T))
