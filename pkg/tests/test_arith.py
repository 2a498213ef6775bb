import gmpy2
import pytest
from hypothesis import given, settings, strategies as st

from matbispec.arith import (
    ONE, ZERO, X, Z, ArithError, BiFraction, BiPoly, MatF, Q, coeff_x, commutator,
    const_matrix, frac_eq, frac_from_json, frac_to_json, mat_vec, matf_from_json,
    matf_to_json, nullspace, poly_from_json, poly_to_json, rank, rref,
)

small = st.integers(-4, 4)
monos = st.tuples(st.integers(0, 2), st.integers(0, 2))
polys = st.dictionaries(monos, small, max_size=4).map(BiPoly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())
fracs = st.builds(BiFraction, polys, nonzero_polys)


def fx(p):
    return BiFraction(p)


def test_cancellation_examples():
    assert frac_eq(BiFraction(X * X - 4, X - 2), BiFraction(X + 2))
    assert frac_eq(BiFraction(BiPoly({}), X - 2), ZERO)
    one = BiPoly.const(1)
    assert not frac_eq(BiFraction(one, X), BiFraction(one, Z))


def test_normal_form_has_monic_denominator():
    f = BiFraction(X * 3, X * X * 6 - 12)
    assert f.den.leading()[1] == 1
    assert f == BiFraction(X, X * X * 2 - 4)


def test_division_by_zero_raises():
    with pytest.raises((ArithError, ZeroDivisionError)):
        BiFraction(X, BiPoly({}))
    with pytest.raises((ArithError, ZeroDivisionError)):
        ZERO.inverse()


def test_second_derivative_of_pole():
    f = BiFraction(BiPoly.const(1), X - 2)
    assert f.diff_x().diff_x() == BiFraction(BiPoly.const(2), (X - 2) ** 3)


@settings(max_examples=60, deadline=None)
@given(fracs, fracs, fracs)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == ZERO
    if not a.is_zero():
        assert a * a.inverse() == ONE


@settings(max_examples=60, deadline=None)
@given(fracs, fracs)
def test_leibniz_rule(a, b):
    assert (a * b).diff_x() == a.diff_x() * b + a * b.diff_x()
    assert (a * b).diff_z() == a.diff_z() * b + a * b.diff_z()


@settings(max_examples=40, deadline=None)
@given(fracs)
def test_frac_json_roundtrip(a):
    assert frac_from_json(frac_to_json(a)) == a


@settings(max_examples=40, deadline=None)
@given(polys)
def test_poly_json_roundtrip(p):
    assert poly_from_json(poly_to_json(p)) == p


def test_coeff_x_examples():
    I, e21 = MatF.identity(2), MatF.unit(2, 2, 1)
    th = I * fx(X) + e21 * fx(X * X)
    assert coeff_x(th, 2) == e21
    assert coeff_x(th, 5) == MatF.zero(2)
    c = const_matrix([[1, 2], [3, 4]])
    assert coeff_x(c, 0) == c


def test_coeff_x_rejects_non_polynomials():
    with pytest.raises(ArithError):
        coeff_x(MatF.identity(1) * BiFraction(BiPoly.const(1), X), 0)


def test_nullspace_examples():
    assert nullspace([[1, 0], [0, 1]], 2) == []
    ns = nullspace([[1, 1]], 2)
    assert len(ns) == 1 and ns[0][0] == -ns[0][1] != 0
    assert len(nullspace([[0, 0, 0], [0, 0, 0]], 3)) == 3


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 5).flatmap(lambda k: st.lists(st.lists(small, min_size=k, max_size=k), min_size=1, max_size=5)))
def test_rank_nullity(A):
    k = len(A[0])
    basis = nullspace(A, k)
    assert rank(A, k) + len(basis) == k
    for v in basis:
        assert not any(mat_vec(A, v))


def test_rref_is_reduced():
    R, piv = rref([[2, 4, 1], [1, 2, 3]], 3)
    assert piv == [0, 2]
    assert R[0][0] == 1 and R[1][2] == 1 and R[0][2] == 0
    assert all(isinstance(x, type(gmpy2.mpq(1))) for row in R for x in row)


def test_matrix_ring_examples():
    e12, e21 = MatF.unit(2, 1, 2), MatF.unit(2, 2, 1)
    assert commutator(e21, e12) == MatF.unit(2, 2, 2) - MatF.unit(2, 1, 1)
    A = const_matrix([[1, 2], [3, Q(1, 2)]])
    assert commutator(MatF.identity(2), A).is_zero()
    assert e12 @ e21 == MatF.unit(2, 1, 1)
    assert A ** 2 == A @ A


def test_matf_json_roundtrip():
    m = MatF([[BiFraction(X, Z + 1), ZERO], [ONE, BiFraction(X * Z - 3)]])
    assert matf_from_json(matf_to_json(m)) == m
