import random

import pytest

from matbispec.arith import X, Z, BiFraction, BiPoly, MatF, const_matrix
from matbispec.calogero import (
    NotInGammaC, basis_E_c, build_l, calogero_fixture, calogero_l, calogero_wave, from_params,
    gamma_c_membership, gamma_c_params, product_head_closed, product_table, random_member_c,
)
from matbispec.nilpotent import ThetaPoly
from matbispec.operators import OperatorX, check_left_eigen, check_right_eigen
from matbispec.properties import run_suite


def zpoly(*coeffs):
    return ThetaPoly(2, tuple(const_matrix(c) for c in coeffs), "z")


def test_fixture_checks():
    psi, L, B, theta, F = calogero_fixture()
    assert check_left_eigen(L, psi, F)
    assert check_right_eigen(psi, B, theta)
    x = BiFraction(X)
    assert theta == MatF([[x, BiFraction(BiPoly({}))], [x * x * (x - 2), x]])


def test_wave_entry_22():
    psi = calogero_wave()
    want = BiFraction(X * X * Z - X * Z * 2 - X + 1, (X - 2) * X * Z)
    assert psi.M[1, 1] == want


def test_membership_examples():
    F = zpoly([[0, 0], [0, 0]], [[0, 0], [0, 0]], [[0, 0], [0, 1]])
    assert gamma_c_membership(F)
    assert gamma_c_params(F) == (0, 0, 0, 0, 2)
    assert gamma_c_membership(zpoly([[1, 0], [0, 1]]))
    assert not gamma_c_membership(zpoly([[0, 1], [0, 0]]))


def test_alpha_45():
    a = basis_E_c()
    half = BiFraction(BiPoly.const(1)) / 2
    assert a[3] == ThetaPoly.monomial(MatF.unit(2, 2, 1) * half, 2, "z")
    assert a[4] == ThetaPoly.monomial(MatF.unit(2, 2, 2) * half, 2, "z")
    assert (a[3] * a[3]).is_zero() and (a[3] * a[4]).is_zero()
    assert a[4] * a[4] == ThetaPoly.monomial(MatF.unit(2, 2, 2) * (half * half), 4, "z")


def test_product_table_matches_products():
    a = basis_E_c()
    table = product_table()
    assert len(table) == 25
    for (i, j), want in table.items():
        assert a[i - 1] * a[j - 1] == want, (i, j)


def test_build_l_examples():
    F = zpoly([[0, 0], [0, 0]], [[0, 0], [0, 0]], [[0, 0], [0, 1]])
    assert build_l(F) == calogero_l()
    assert build_l(zpoly([[1, 0], [0, 1]])) == OperatorX.identity(2)
    assert check_left_eigen(build_l(basis_E_c()[2]), calogero_wave(), basis_E_c()[2].to_matf())


def test_build_l_rejects():
    with pytest.raises(NotInGammaC):
        build_l(zpoly([[0, 1], [0, 0]]))
    with pytest.raises(Exception):
        build_l(random_member_c(random.Random(1), tail_degree=0))


def test_product_head_closed_form():
    rng = random.Random(6)
    for _ in range(20):
        p1 = tuple(rng.randint(-4, 4) for _ in range(5))
        p2 = tuple(rng.randint(-4, 4) for _ in range(5))
        P = from_params(*p1) * from_params(*p2)
        assert tuple(P.coeff(d) for d in range(3)) == tuple(product_head_closed(p1, p2))


@pytest.mark.parametrize("name", ["calogero-products", "calogero-build-l", "calogero-linearity"])
def test_calogero_suites(name):
    res = run_suite(name, 30, 31)
    assert res.passed, res.failures
