import random

import pytest

from matbispec.arith import ONE, X, Z, BiFraction, BiPoly, MatF, Q
from matbispec.nilpotent import (
    NilpotentData, NotInGamma, ThetaPoly, basis_E, build_b, gamma_membership_relations,
    gamma_membership_theoremgen, gamma_relations, mu_matrix, nilpotent_from_json,
    nilpotent_to_json, p_k, random_member, random_theta, schrodinger, shift_matrix,
    standard_data, theta_from_json, theta_to_json, verify_build_b, wave,
)
from matbispec.operators import OperatorZ, check_left_eigen, check_right_eigen
from matbispec.pierce import pierce_alpha
from matbispec.properties import P_FAMILY, run_suite

I2, e11, e12, e21 = MatF.identity(2), MatF.unit(2, 1, 1), MatF.unit(2, 1, 2), MatF.unit(2, 2, 1)


def inv(p, k=1):
    return BiFraction(BiPoly.const(1), p ** k)


def alpha1_n2():
    return ThetaPoly.monomial(I2, 1) + ThetaPoly.monomial(e21, 2)


def test_shift_matrix_powers():
    assert shift_matrix(2) == e12
    S = shift_matrix(3)
    assert S ** 2 == MatF.unit(3, 1, 3)
    assert (S ** 3).is_zero()


def test_nilpotency_degree_enforced():
    with pytest.raises(Exception):
        NilpotentData(3, shift_matrix(3), 2)
    NilpotentData(3, MatF.unit(3, 1, 3), 2)


def test_wave_n2():
    psi = wave(standard_data(2))
    want = I2 * BiFraction(Z) - I2 * inv(X) + e12 * inv(X, 2)
    assert psi.M == want


def test_wave_e13():
    nd = NilpotentData(3, MatF.unit(3, 1, 3), 2)
    I3 = MatF.identity(3)
    assert wave(nd).M == I3 * BiFraction(Z) - I3 * inv(X) + MatF.unit(3, 1, 3) * inv(X, 2)


def test_schrodinger_n2():
    L = schrodinger(standard_data(2))
    assert L.order == 2 and L.coeff(2) == I2 * -1
    assert L.coeff(1).is_zero()
    assert L.coeff(0) == I2 * inv(X, 2) * 2 - e12 * inv(X, 3) * 4


@pytest.mark.parametrize("N", [2, 3, 4, 5])
def test_schrodinger_eigenvalue(N):
    nd = standard_data(N)
    assert check_left_eigen(schrodinger(nd), wave(nd), MatF.identity(N) * -BiFraction(Z * Z))


def test_p_k_examples():
    nd = standard_data(2)
    for k in range(4):
        assert p_k(ThetaPoly.constant(I2), nd, k).is_zero()
    assert p_k(ThetaPoly.monomial(I2, 2), nd, 1) == I2 * 2
    assert p_k(alpha1_n2(), nd, 0) == e11 * 2


def test_gamma_examples():
    nd = standard_data(2)
    good, bad = alpha1_n2(), ThetaPoly.monomial(e21, 2)
    assert gamma_membership_relations(good, nd) and gamma_membership_theoremgen(good, nd)
    assert not gamma_membership_relations(bad, nd) and not gamma_membership_theoremgen(bad, nd)
    first, second = gamma_relations(good, nd)
    assert len(first) == len(second) == 2
    commuting = ThetaPoly.constant(I2 * 3 + e12 * 5)
    assert gamma_membership_relations(commuting, nd)
    assert gamma_membership_theoremgen(pierce_alpha(5, 3), standard_data(5))


def test_ideal_is_contained():
    rng = random.Random(4)
    for N in (2, 3):
        nd = standard_data(N)
        t = random_theta(N, 3, rng).shift(2 * N)
        assert gamma_membership_relations(t, nd) and gamma_membership_theoremgen(t, nd)


def test_basis_e_dimensions():
    b2 = basis_E(standard_data(2))
    assert len(b2) == 10
    assert all(gamma_membership_relations(t, standard_data(2)) for t in b2)
    assert all(t.degree <= 3 for t in b2)


def test_mu_examples():
    assert mu_matrix(2, 2) == [[0, 0, 1], [0, 0, 1], [0, 0, 0]]
    assert mu_matrix(3, 6)[3][4] == 3


def test_build_b_identity():
    B = build_b(ThetaPoly.constant(MatF.identity(3)), standard_data(3))
    assert B == OperatorZ.identity(3)


def test_build_b_n2_example():
    nd = standard_data(2)
    B = build_b(alpha1_n2(), nd)
    want = OperatorZ({2: e21, 1: I2 - e21 * inv(Z) * 2, 0: e11 * inv(Z) * -2})
    assert B == want
    assert check_right_eigen(wave(nd), B, alpha1_n2().to_matf())


def test_build_b_rejects_non_members():
    with pytest.raises(NotInGamma):
        build_b(ThetaPoly.monomial(e21, 2), standard_data(2))


def test_build_b_on_basis_e_n3():
    nd = standard_data(3)
    for t in basis_E(nd):
        assert verify_build_b(t, nd)


@pytest.mark.parametrize("name", P_FAMILY)
def test_p_family(name):
    res = run_suite(name, 40, 2024)
    assert res.passed, res.failures


def test_pk0_with_minus_sign_fails():
    """The minus sign in front of the x^r terms does not give an identity."""
    rng = random.Random(9)
    nd = standard_data(3)
    failures = 0
    for _ in range(30):
        th = random_theta(3, 7, rng, density=0.6)
        k = rng.randint(0, 3)
        aux = ThetaPoly.monomial(th.coeff(k + 1) * (k + 1), 1)
        for r in range(2, nd.D + 1):
            aux = aux - ThetaPoly.monomial(th.coeff(r + k), r)
        failures += p_k(th, nd, k) != p_k(aux, nd, 0)
    assert failures > 0


@pytest.mark.parametrize("name", ["formulation-equivalence", "gamma-closed", "build-b",
                                  "residual-formula", "ad-intertwining", "ad-condition"])
def test_membership_suites(name):
    res = run_suite(name, 15, 77)
    assert res.passed, res.failures


def test_json_roundtrips():
    rng = random.Random(2)
    nd = NilpotentData(3, MatF.unit(3, 1, 3), 2)
    back = nilpotent_from_json(nilpotent_to_json(nd))
    assert (back.n, back.D, back.S) == (nd.n, nd.D, nd.S)
    t = random_member(standard_data(3), rng)
    assert theta_from_json(theta_to_json(t)) == t
