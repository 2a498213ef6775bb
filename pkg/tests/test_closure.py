import random

import pytest

from matbispec.arith import ArithError, MatF
from matbispec.calogero import basis_E_c
from matbispec.closure import (
    SpanBasis, check_full_rank_one, contains, missing_monomials, span_close,
)
from matbispec.nilpotent import ThetaPoly, standard_data
from matbispec.pierce import generators
from matbispec.properties import run_suite


def mono(N, i, j, d, var="x"):
    return ThetaPoly.monomial(MatF.unit(N, i, j), d, var)


def test_matrix_units_close_to_full_algebra():
    gens = [mono(2, 1, 1, 0), mono(2, 1, 2, 0), mono(2, 2, 1, 0)]
    sb = span_close(gens, 0, with_identity=False)
    assert sb.dim == 4


@pytest.mark.parametrize("N,cap,lo,hi", [(2, 8, 4, 8), (3, 14, 6, 10)])
def test_generators_reach_the_ideal(N, cap, lo, hi):
    assert missing_monomials(span_close(generators(N), cap), range(lo, hi + 1)) == []


def test_contains_examples():
    sb = span_close(generators(2), 8)
    assert contains(sb, mono(2, 2, 1, 4))
    assert not contains(sb, mono(2, 1, 1, 1))
    assert contains(sb, ThetaPoly.zero(2))
    with pytest.raises(ArithError):
        contains(sb, mono(2, 1, 1, 9))


def test_no_truncation_of_high_products():
    # x*I squared lands at degree 2 > cap 1 and must not be added
    sb = span_close([ThetaPoly.monomial(MatF.identity(1), 1)], 1)
    assert sb.dim == 2


def test_full_rank_reports():
    assert check_full_rank_one(standard_data(2), 10).passed
    assert check_full_rank_one(standard_data(3), 16).passed
    rep = check_full_rank_one(standard_data(2), 10, [ThetaPoly.constant(MatF.identity(2))])
    assert not rep.passed and rep.missing


def test_calogero_head_closure():
    sb = span_close(basis_E_c(), 8)
    assert sb.var == "z"
    assert missing_monomials(sb, range(3, 6)) == []


def test_json_roundtrip():
    sb = span_close(generators(2), 6)
    assert SpanBasis.from_json(sb.to_json()) == sb


def test_elements_reinsert_to_same_span():
    sb = span_close(generators(3), 8)
    assert all(contains(sb, t) for t in sb.elements())


@pytest.mark.parametrize("name", ["closure-order-independent", "closure-monotone", "closure-in-gamma"])
def test_closure_suites(name):
    res = run_suite(name, 4, 99)
    assert res.passed, res.failures
