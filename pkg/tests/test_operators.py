import numpy as np
import pytest

from math import cos, pi, sqrt

from spinwork.operators import (
    BosonMode,
    SpinSystem,
    angular_momentum,
    boson_ops,
    initial_states,
    ls_coupling,
    qubit_paulis,
    rotation,
    spin_state_index,
)


def test_spin_system_half_integer_is_exact():
    sys3 = SpinSystem(3)
    assert sys3.l == 1.5
    assert sys3.dim == 4
    with pytest.raises(ValueError):
        SpinSystem(-1)


def test_basis_ordering_is_descending_m():
    _, _, lz = angular_momentum(SpinSystem(4))
    assert np.allclose(np.diag(lz.mat), [2, 1, 0, -1, -2])


def test_ladder_matrix_elements():
    # L+ |l,m> = sqrt(l(l+1) - m(m+1)) |l,m+1>, checked element by element.
    sys = SpinSystem(3)
    lx, ly, _ = angular_momentum(sys)
    lp = lx.mat + 1j * ly.mat
    l = sys.l
    for i in range(1, sys.dim):
        m = l - i
        assert abs(lp[i - 1, i] - sqrt(l * (l + 1) - m * (m + 1))) < 1e-14


@pytest.mark.parametrize("two_l", [1, 2, 3, 5, 10, 40])
def test_su2_commutators_and_casimir(two_l):
    sys = SpinSystem(two_l)
    lx, ly, lz = angular_momentum(sys)
    mats = (lx.mat, ly.mat, lz.mat)
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        comm = mats[i] @ mats[j] - mats[j] @ mats[i]
        assert np.max(np.abs(comm - 1j * mats[k])) < 1e-12
    l = sys.l
    casimir = sum(m @ m for m in mats)
    assert np.max(np.abs(casimir - l * (l + 1) * np.eye(sys.dim))) < 1e-11


def test_pauli_algebra():
    sx, sy, sz = qubit_paulis()
    assert np.allclose(sx.mat @ sy.mat - sy.mat @ sx.mat, 2j * sz.mat)
    for s in (sx, sy, sz):
        assert np.allclose(s.mat @ s.mat, np.eye(2))


def test_rotation_requires_unit_axis():
    with pytest.raises(ValueError):
        rotation(SpinSystem(2), (0.0, 2.0, 0.0), 0.5)


def test_rotation_of_x_polarized_state_by_tilted_axis():
    # The -x polarized state, turned a quarter turn about
    # (0, cos(theta), -sin(theta)), acquires <L_z> = l cos(theta).
    theta = pi / 4
    sys = SpinSystem(2)
    rho0, _ = initial_states(sys, m=sys.l, phi=1.5 * pi)
    axis = (0.0, cos(theta), -np.sin(theta))
    u = rotation(sys, axis, 0.5 * pi)
    rho = u.mat @ rho0.mat @ u.mat.conj().T
    _, _, lz = angular_momentum(sys)
    got = np.trace(rho @ lz.mat).real
    assert abs(got - sys.l * cos(theta)) < 1e-12


def test_rotation_full_turn_is_identity_up_to_phase():
    sys = SpinSystem(2)  # integer l: 2 pi rotation is the identity exactly
    u = rotation(sys, (0.0, 0.0, 1.0), 2 * pi)
    assert np.max(np.abs(u.mat - np.eye(sys.dim))) < 1e-12


def test_ls_coupling_spectrum_l1():
    # Frozen oracle: eigenvalues of L.S at l=1 are -1 (x2) and 1/2 (x4).
    ldots, _, _ = ls_coupling(SpinSystem(2))
    w = np.linalg.eigvalsh(ldots.mat)
    assert np.allclose(w, [-1.0, -1.0, 0.5, 0.5, 0.5, 0.5], atol=1e-12)


@pytest.mark.parametrize("two_l", [1, 2, 5, 9])
def test_ls_projector_ranks_and_identity(two_l):
    _, pip, pim = ls_coupling(SpinSystem(two_l))
    assert np.max(np.abs(pip.mat @ pip.mat - pip.mat)) < 1e-12
    assert np.max(np.abs(pip.mat + pim.mat - np.eye(pip.dim))) < 1e-12
    assert round(np.trace(pip.mat).real) == two_l + 2
    assert round(np.trace(pim.mat).real) == two_l


def test_lz_sz_product_diagonal_l1():
    # Frozen oracle: diag(kron(Lz, sz)) at l=1 is (1, -1, 0, 0, -1, 1).
    _, _, lz = angular_momentum(SpinSystem(2))
    _, _, sz = qubit_paulis()
    assert np.allclose(np.diag(np.kron(lz.mat, sz.mat)), [1, -1, 0, 0, -1, 1])


def test_boson_commutator_truncation():
    # Frozen oracle: [a, a+] = 1 - D |D-1><D-1| on the truncated space.
    mode = BosonMode(7, 1.0)
    a, num = boson_ops(mode)
    ad = a.mat.conj().T
    comm = a.mat @ ad - ad @ a.mat
    expected = np.eye(7, dtype=complex)
    expected[6, 6] = 1.0 - 7.0
    assert np.max(np.abs(comm - expected)) < 1e-12
    assert np.allclose(ad @ a.mat, num.mat)


def test_boson_mode_rejects_tiny_truncation():
    with pytest.raises(ValueError):
        BosonMode(1, 1.0)


def test_spin_state_index():
    sys = SpinSystem(3)
    assert spin_state_index(sys, 1.5) == 0
    assert spin_state_index(sys, -1.5) == 3
    with pytest.raises(ValueError):
        spin_state_index(sys, 1.0)  # wrong parity for half-integer l
    with pytest.raises(ValueError):
        spin_state_index(sys, 2.5)


def test_initial_states_are_pure_and_oriented():
    sys = SpinSystem(4)
    rho0, chi0 = initial_states(sys, m=sys.l, phi=0.0)
    assert abs(np.trace(rho0.mat @ rho0.mat) - 1.0) < 1e-12
    _, _, lz = angular_momentum(sys)
    assert abs(np.trace(rho0.mat @ lz.mat).real - sys.l) < 1e-12
    assert np.allclose(chi0.mat, np.diag([0.0, 1.0]))
    # Rotating by 3 pi / 2 about y points the spin along -x.
    rho_x, _ = initial_states(sys, m=sys.l, phi=1.5 * pi)
    lx, _, _ = angular_momentum(sys)
    assert abs(np.trace(rho_x.mat @ lx.mat).real + sys.l) < 1e-12
