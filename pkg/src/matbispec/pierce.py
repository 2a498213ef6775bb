"""Pierce idempotents and the generator family for the shift-matrix case.

With S = S_N and D = N, the algebra Gamma contains a complete set of
orthogonal idempotents alpha_1..alpha_{N-1} and is generated, up to the
ideal x^{2N} M_N(K[x]), by a small explicit family.
"""
from __future__ import annotations

from dataclasses import dataclass

from .arith import ArithError, MatF, matf_to_json
from .nilpotent import (
    ThetaPoly,
    gamma_membership_relations,
    p_k,
    shift_matrix,
    standard_data,
)


def _e(N: int, i: int, j: int, c=1) -> MatF:
    # out-of-range indices give the zero matrix
    return MatF.unit(N, i, j, c)


def _sgn(k: int) -> int:
    return -1 if k % 2 else 1


def alpha_coefficient(N: int, k: int, j: int) -> MatF:
    """x^j coefficient of alpha_k for 2 <= k <= N-1."""
    if j == 0:
        return _e(N, k, k)
    if not 1 <= j <= N - 1:
        return MatF.zero(N)
    acc = MatF.zero(N)
    if j == k - 1:
        acc = acc + _e(N, k, 1, _sgn(j + 1))
    if j == N - k:
        acc = acc + _e(N, N, k, _sgn(j + 1))
    if j == N - 1:
        acc = acc + _e(N, N, 1, _sgn(j))
    return acc


def pierce_alpha(N: int, k: int) -> ThetaPoly:
    """alpha_k; alpha_1 is the complement I - sum_{k>=2} alpha_k."""
    if N < 3:
        raise ArithError("Pierce idempotents need N >= 3")
    if not 1 <= k <= N - 1:
        raise ArithError(f"k must lie in 1..{N - 1}")
    if k == 1:
        out = ThetaPoly.constant(MatF.identity(N))
        for m in range(2, N):
            out = out - pierce_alpha(N, m)
        return out
    return ThetaPoly(N, tuple(alpha_coefficient(N, k, j) for j in range(N)))


def p_l_alpha_closed(N: int, k: int, l: int) -> MatF:
    """Closed-form value of P_l(alpha_k) for (S_N, N), by case tables."""
    if N < 3 or not 2 <= k <= N - 1 or not 0 <= l <= N - 2:
        raise ArithError("need N >= 3, 2 <= k <= N-1, 0 <= l <= N-2")
    e = lambda i, j, c=1: _e(N, i, j, c)  # noqa: E731
    s = _sgn
    twice = 2 * k
    if twice < N + 1:
        if l <= k - 3:
            return (e(k, k - l - 1) - e(k + l + 1, k)) * s(l)
        if l == k - 2:
            return e(k, 1, s(k) * k) + e(2 * k - 1, k, s(k + 1))
        if l <= N - k - 2:
            return (e(l + 2, 1) - e(k + l + 1, k)) * s(l)
        if l == N - k - 1:
            return e(N, k, (N - k - 1) * s(N - k - 1)) + e(N - k + 1, 1, s(N - k + 1))
        if l <= N - 3:
            return (e(N, N - l - 1) - e(l + 2, 1)) * s(l + 1)
        return e(N, 1, (N - 1) * s(N - 1))
    if twice == N + 1:
        h = (N + 1) // 2
        if l <= k - 3:
            return (e(h, (N - 1) // 2 - l) - e((N + 3) // 2 + l, h)) * s(l)
        if l == k - 2:
            # the e_{h,1} term carries the factor k, as in the two neighbouring tables
            return e(N, h, (N - 3) // 2 * s(h)) + e(h, 1, k * s(h))
        if l <= N - 3:
            return (e(N, N - l - 1) - e(l + 2, 1)) * s(l + 1)
        return e(N, 1, (N - 1) * s(N - 1))
    if l <= N - k - 2:
        return (e(k, k - l - 1) - e(k + l + 1, k)) * s(l)
    if l == N - k - 1:
        return e(N, k, (N - k - 1) * s(N - k + 1)) + e(k, 2 * k - N, s(N - k + 1))
    if l <= k - 3:
        return (e(k, k - l - 1) - e(N, N - l - 1)) * s(l)
    if l == k - 2:
        return e(k, 1, k * s(k)) + e(N, N - k + 1, s(k + 1))
    if l <= N - 3:
        return (e(N, N - l - 1) - e(l + 2, 1)) * s(l + 1)
    return e(N, 1, (N - 1) * s(N - 1))


def p_l_alpha_direct(N: int, k: int, l: int) -> MatF:
    return p_k(pierce_alpha(N, k), standard_data(N), l)


@dataclass
class Check:
    name: str
    passed: bool
    residual: MatF | None = None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "pass": self.passed,
            "residual": None if self.residual is None else matf_to_json(self.residual),
        }


@dataclass
class PierceReport:
    n: int
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {"n": self.n, "checks": [c.to_json() for c in self.checks]}


def _first_nonzero(t: ThetaPoly) -> MatF | None:
    for c in t.coeffs:
        if not c.is_zero():
            return c
    return None


def verify_pierce(N: int, alphas: list[ThetaPoly] | None = None) -> PierceReport:
    """Idempotency, orthogonality, completeness and Gamma-membership of alpha_1..alpha_{N-1}.

    ``alphas`` overrides the standard family (used to test perturbations).
    N = 2 has no idempotents beyond I and is reported as a single passing check.
    """
    if N == 2 and alphas is None:
        return PierceReport(2, [Check("trivial decomposition {I}", True)])
    if N < 2:
        raise ArithError("N must be at least 2")
    alphas = alphas if alphas is not None else [pierce_alpha(N, k) for k in range(1, N)]
    nd = standard_data(N)
    checks = []
    for k, a in enumerate(alphas, start=1):
        r = a * a - a
        checks.append(Check(f"idempotent[{k}]", r.is_zero(), _first_nonzero(r)))
    for k, a in enumerate(alphas, start=1):
        for m, b in enumerate(alphas, start=1):
            if k != m:
                r = a * b
                checks.append(Check(f"orthogonal[{k},{m}]", r.is_zero(), _first_nonzero(r)))
    total = ThetaPoly.zero(N)
    for a in alphas:
        total = total + a
    r = total - ThetaPoly.constant(MatF.identity(N))
    checks.append(Check("complete", r.is_zero(), _first_nonzero(r)))
    for k, a in enumerate(alphas, start=1):
        checks.append(Check(f"member[{k}]", gamma_membership_relations(a, nd)))
    return PierceReport(N, checks)


def generators(N: int) -> list[ThetaPoly]:
    """alpha_0..alpha_{N-1}, beta_1..beta_N generating Gamma modulo the x^{2N} ideal."""
    if N < 2:
        raise ArithError("generators need N >= 2")
    sg = _sgn(N)
    out = [ThetaPoly.constant(shift_matrix(N))]
    a1 = ThetaPoly.monomial(MatF.identity(N), 1) + ThetaPoly.monomial(_e(N, N, 1, sg), N)
    out.append(a1)
    for k in range(2, N):
        out.append(ThetaPoly.monomial(_e(N, 1, N), k))
    for k in range(1, N + 1):
        out.append(ThetaPoly.monomial(_e(N, k, k), N) + ThetaPoly.monomial(_e(N, N, 1, sg), 2 * N - 1))
    return out


__all__ = [
    "alpha_coefficient", "pierce_alpha", "p_l_alpha_closed", "p_l_alpha_direct",
    "verify_pierce", "PierceReport", "Check", "generators",
]
