import numpy as np
import pytest

from spinwork.linalg import (
    EIG_FLOOR,
    HERMITIAN_ATOL,
    TRACE_ATOL,
    UNITARY_ATOL,
    DensityMatrix,
    Operator,
    eigh,
    expect,
    identity,
    kron,
    partial_trace,
    propagator,
    ptrace,
    trace_product,
)

RNG = np.random.default_rng(7)


def random_hermitian(d: int) -> np.ndarray:
    m = RNG.normal(size=(d, d)) + 1j * RNG.normal(size=(d, d))
    return (m + m.conj().T) / 2


def random_density(dims) -> DensityMatrix:
    d = int(np.prod(dims))
    m = RNG.normal(size=(d, d)) + 1j * RNG.normal(size=(d, d))
    rho = m @ m.conj().T
    rho /= np.trace(rho)
    return DensityMatrix(Operator(rho, dims))


def test_tolerance_constants_are_pinned():
    assert HERMITIAN_ATOL == 1e-12
    assert TRACE_ATOL == 1e-10
    assert EIG_FLOOR == -1e-10
    assert UNITARY_ATOL == 1e-10


def test_operator_validates_layout():
    with pytest.raises(ValueError):
        Operator(np.eye(6), (2, 2))
    op = Operator(np.eye(6), (2, 3))
    assert op.dim == 6
    assert op.dims == (2, 3)


def test_operator_rejects_non_square():
    with pytest.raises(ValueError):
        Operator(np.ones((2, 3)), (2,))


def test_operator_matrix_is_write_protected():
    op = Operator(np.eye(2), (2,))
    with pytest.raises(ValueError):
        op.mat[0, 0] = 5.0


def test_density_matrix_accepts_valid_state():
    rho = random_density((3,))
    assert abs(np.trace(rho.mat) - 1.0) < TRACE_ATOL


def test_density_matrix_rejects_bad_trace():
    with pytest.raises(ValueError):
        DensityMatrix(Operator(np.eye(2), (2,)))


def test_density_matrix_rejects_non_hermitian():
    m = np.array([[0.5, 0.1], [0.3, 0.5]], dtype=complex)
    with pytest.raises(ValueError):
        DensityMatrix(Operator(m, (2,)))


def test_density_matrix_rejects_negative_eigenvalue():
    m = np.diag([1.5, -0.5]).astype(complex)
    with pytest.raises(ValueError):
        DensityMatrix(Operator(m, (2,)))


def test_kron_concatenates_layouts():
    a = Operator(np.diag([1.0, 2.0]), (2,))
    b = Operator(np.diag([3.0, 4.0, 5.0]), (3,))
    ab = kron(a, b)
    assert ab.dims == (2, 3)
    assert np.allclose(np.diag(ab.mat), [3, 4, 5, 6, 8, 10])


def test_ptrace_of_product_recovers_factors():
    rho_a = random_density((3,))
    rho_b = random_density((2,))
    joint = np.kron(rho_a.mat, rho_b.mat)
    assert np.allclose(ptrace(joint, (3, 2), (0,)), rho_a.mat, atol=1e-12)
    assert np.allclose(ptrace(joint, (3, 2), (1,)), rho_b.mat, atol=1e-12)


def test_ptrace_three_factor_oracle():
    # Independent oracle: permute axes and trace with explicit loops.
    dims = (2, 3, 2)
    rho = random_density(dims)
    t = rho.mat.reshape(dims + dims)
    manual = np.einsum("aibajb->ij", t)
    assert np.allclose(ptrace(rho.mat, dims, (1,)), manual, atol=1e-13)


def test_ptrace_rejects_bad_keep():
    with pytest.raises(ValueError):
        ptrace(np.eye(6), (2, 3), ())
    with pytest.raises(ValueError):
        ptrace(np.eye(6), (2, 3), (0, 1))
    with pytest.raises(ValueError):
        ptrace(np.eye(6), (2, 3), (5,))


def test_partial_trace_keeps_layout():
    rho = random_density((2, 3))
    out = partial_trace(rho.op, keep=(1,))
    assert out.dims == (3,)
    assert abs(np.trace(out.mat) - 1.0) < 1e-12


def test_eigh_reconstructs_operator():
    h = Operator(random_hermitian(5), (5,))
    w, u = eigh(h)
    assert np.all(np.diff(w) >= 0)
    rebuilt = (u.mat * w) @ u.mat.conj().T
    assert np.max(np.abs(rebuilt - h.mat)) < UNITARY_ATOL


def test_eigh_rejects_non_hermitian():
    with pytest.raises(ValueError):
        eigh(Operator(np.array([[0, 1], [0, 0]], dtype=complex), (2,)))


def test_propagator_at_zero_is_identity():
    h = Operator(random_hermitian(4), (4,))
    u = propagator(h, 0.0)
    assert np.max(np.abs(u.mat - np.eye(4))) < 1e-14


def test_propagator_is_unitary_and_composes():
    h = Operator(random_hermitian(4), (4,))
    u1 = propagator(h, 0.3)
    prod = u1.mat @ u1.mat.conj().T
    assert np.max(np.abs(prod - np.eye(4))) < UNITARY_ATOL
    u2 = propagator(h, 0.7)
    u3 = propagator(h, 1.0)
    assert np.max(np.abs(u1.mat @ u2.mat - u3.mat)) < 1e-12


def test_expect_matches_trace():
    rho = random_density((4,))
    h = Operator(random_hermitian(4), (4,))
    direct = np.trace(rho.mat @ h.mat)
    assert abs(expect(h, rho) - direct) < 1e-12


def test_trace_product_matches_full_product():
    a, b = random_hermitian(5), random_hermitian(5)
    assert abs(trace_product(a, b) - np.trace(a @ b)) < 1e-12


def test_identity_layout():
    eye = identity((2, 3))
    assert eye.dims == (2, 3)
    assert np.allclose(eye.mat, np.eye(6))
