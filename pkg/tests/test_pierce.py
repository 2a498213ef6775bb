import pytest

from matbispec.arith import MatF
from matbispec.nilpotent import ThetaPoly
from matbispec.pierce import (
    alpha_coefficient, generators, p_l_alpha_closed, p_l_alpha_direct, pierce_alpha, verify_pierce,
)
from matbispec.properties import run_suite


def e(N, i, j, c=1):
    return MatF.unit(N, i, j, c)


def test_alpha_3_2():
    a = pierce_alpha(3, 2)
    want = ThetaPoly(3, (e(3, 2, 2), e(3, 2, 1) + e(3, 3, 2), e(3, 3, 1)))
    assert a == want
    assert a * a == a


def test_alpha_4_2_first_coefficient():
    # j = k - 1 contributes (-1)^k e_{k1}; nothing else lands at j = 1 for (N, k) = (4, 2)
    assert alpha_coefficient(4, 2, 1) == e(4, 2, 1)


def test_closed_form_examples():
    assert p_l_alpha_closed(5, 2, 0) == e(5, 2, 1, 2) - e(5, 3, 2)
    assert p_l_alpha_closed(3, 2, 1) == e(3, 3, 1, 2)


@pytest.mark.parametrize("N", range(3, 9))
def test_closed_form_matches_direct(N):
    for k in range(2, N):
        for l in range(0, N - 1):
            assert p_l_alpha_closed(N, k, l) == p_l_alpha_direct(N, k, l), (N, k, l)


@pytest.mark.parametrize("N", [2, 3, 6])
def test_verify_pierce(N):
    assert verify_pierce(N).passed


def test_perturbed_alpha_fails_idempotency():
    alphas = [pierce_alpha(4, k) for k in range(1, 4)]
    alphas[1] = alphas[1] + ThetaPoly.monomial(e(4, 1, 1), 1)
    rep = verify_pierce(4, alphas)
    assert not rep.passed
    assert not next(c for c in rep.checks if c.name == "idempotent[2]").passed
    assert rep.to_json()["checks"]


def test_generators_n2():
    I = MatF.identity(2)
    want = [ThetaPoly.constant(e(2, 1, 2)),
            ThetaPoly.monomial(I, 1) + ThetaPoly.monomial(e(2, 2, 1), 2),
            ThetaPoly.monomial(e(2, 1, 1), 2) + ThetaPoly.monomial(e(2, 2, 1), 3),
            ThetaPoly.monomial(e(2, 2, 2), 2) + ThetaPoly.monomial(e(2, 2, 1), 3)]
    assert generators(2) == want


@pytest.mark.parametrize("N", [2, 3, 4])
def test_generator_powers(N):
    g = generators(N)
    sign = -1 if N % 2 else 1
    power = ThetaPoly.constant(MatF.identity(N))
    for n in range(1, 6):
        power = power * g[1]
        # e_{N1}^2 = 0, so the cross term carries n (-1)^N
        want = ThetaPoly.monomial(MatF.identity(N), n) + ThetaPoly.monomial(e(N, N, 1, n * sign), n + N - 1)
        assert power == want, (N, n)
    for k in range(2, N):
        beta = g[N + k - 1]
        assert beta * beta == ThetaPoly.monomial(e(N, k, k), 2 * N)


@pytest.mark.parametrize("name", ["pierce-orthogonal-coefficients", "pierce-anticommutator",
                                  "pierce-closed-form", "pierce-first-family"])
def test_pierce_suites(name):
    res = run_suite(name, 25, 13)
    assert res.passed, res.failures
