"""Named, seeded invariant suites.

Each suite draws ``trials`` random instances from a ``random.Random`` and
returns a description of every failing instance; an empty list means the
invariant held on every trial.  The CLI ``properties`` command and the
acceptance tests both run suites from this registry.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from . import calogero as cal
from .arith import (
    ONE,
    ZERO,
    BiFraction,
    BiPoly,
    MatF,
    Q,
    X,
    Z,
    coeff_x,
    commutator,
    const_matrix,
    mat_vec,
    nullspace,
    rank,
)
from .closure import contains, span_close
from .nilpotent import (
    NilpotentData,
    ThetaPoly,
    basis_E,
    build_b,
    gamma_membership_relations,
    gamma_membership_theoremgen,
    p_k,
    predicted_residual,
    random_member,
    random_theta,
    residual_matrix,
    schrodinger,
    standard_data,
    wave,
)
from .operators import (
    OperatorX,
    OperatorZ,
    ad_power,
    ad_power_z,
    apply_x_matrix,
    apply_z_matrix,
    check_right_eigen,
    commutator_x,
    compose_x,
    compose_z,
    degad_coefficient,
)
from .pierce import alpha_coefficient, generators, p_l_alpha_closed, p_l_alpha_direct, pierce_alpha

Suite = Callable[[random.Random, int], list]
SUITES: dict[str, Suite] = {}


def suite(name: str):
    def deco(fn: Suite) -> Suite:
        SUITES[name] = fn
        return fn
    return deco


@dataclass
class SuiteResult:
    name: str
    trials: int
    failures: list

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"suite": self.name, "trials": self.trials, "failures": len(self.failures),
                "pass": self.passed, "examples": [str(f) for f in self.failures[:5]]}


def run_suite(name: str, trials: int, seed: int) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SuiteResult(name, trials, SUITES[name](random.Random(seed), trials))


# ---------------------------------------------------------------------------
# random inputs
# ---------------------------------------------------------------------------

def rand_poly(rng: random.Random, terms: int = 3, deg: int = 2, lo: int = -3, hi: int = 3) -> BiPoly:
    out = {}
    for _ in range(rng.randint(1, terms)):
        i = rng.randint(0, deg)
        j = rng.randint(0, deg - i)
        out[(i, j)] = rng.randint(lo, hi)
    return BiPoly(out)


def rand_frac(rng: random.Random, nonzero: bool = False) -> BiFraction:
    while True:
        num = rand_poly(rng)
        den = rand_poly(rng)
        if den.is_zero() or (nonzero and num.is_zero()):
            continue
        return BiFraction(num, den)


def rand_const(rng: random.Random, n: int, lo: int = -3, hi: int = 3, density: float = 0.6) -> MatF:
    return const_matrix([[rng.randint(lo, hi) if rng.random() < density else 0 for _ in range(n)]
                         for _ in range(n)])


def rand_xpoly_matrix(rng: random.Random, n: int, deg: int) -> MatF:
    return MatF([[BiFraction(BiPoly({(i, 0): rng.randint(-3, 3) for i in range(deg + 1)}))
                  for _ in range(n)] for _ in range(n)])


def rand_zcoeff_matrix(rng: random.Random, n: int) -> MatF:
    def entry():
        num = BiPoly({(0, j): rng.randint(-3, 3) for j in range(3)})
        return BiFraction(num, BiPoly.monomial(1, 0, rng.randint(0, 2)))
    return MatF([[entry() for _ in range(n)] for _ in range(n)])


def rand_xop(rng: random.Random, n: int, order: int, deg: int = 2) -> OperatorX:
    return OperatorX({i: rand_xpoly_matrix(rng, n, deg) for i in range(order + 1)}, n)


def rand_zop(rng: random.Random, n: int, order: int) -> OperatorZ:
    return OperatorZ({j: rand_zcoeff_matrix(rng, n) for j in range(order + 1)}, n)


def rand_wave_matrix(rng: random.Random, n: int) -> MatF:
    return MatF([[rand_frac(rng) for _ in range(n)] for _ in range(n)])


_NDS = None


def sample_data(rng: random.Random) -> NilpotentData:
    global _NDS
    if _NDS is None:
        _NDS = [standard_data(2), standard_data(3), standard_data(4),
                NilpotentData(3, MatF.unit(3, 1, 3), 2)]
    return rng.choice(_NDS)


_BASES: dict = {}


def cached_basis(nd: NilpotentData) -> list[ThetaPoly]:
    key = (nd.n, nd.D, tuple(str(v) for v in nd.S.entries()))
    if key not in _BASES:
        _BASES[key] = basis_E(nd)
    return _BASES[key]


def _c(t: ThetaPoly, j: int) -> MatF:
    return t.coeff(j)


def _const(m: MatF) -> ThetaPoly:
    return ThetaPoly.constant(m)


def _mono(m: MatF, d: int) -> ThetaPoly:
    return ThetaPoly.monomial(m, d)


# ---------------------------------------------------------------------------
# exact arithmetic
# ---------------------------------------------------------------------------

@suite("field-axioms")
def _field(rng, trials):
    fails = []
    for t in range(trials):
        a, b, c = rand_frac(rng), rand_frac(rng), rand_frac(rng)
        checks = {
            "add-assoc": (a + b) + c == a + (b + c),
            "mul-assoc": (a * b) * c == a * (b * c),
            "distrib": a * (b + c) == a * b + a * c,
            "add-inverse": a + (-a) == ZERO,
            "commute": a * b == b * a and a + b == b + a,
        }
        if not a.is_zero():
            checks["mul-inverse"] = a * a.inverse() == ONE
        bad = [k for k, v in checks.items() if not v]
        if bad:
            fails.append((t, bad, str(a), str(b), str(c)))
    return fails


@suite("derivations")
def _derivations(rng, trials):
    fails = []
    for t in range(trials):
        a, b = rand_frac(rng), rand_frac(rng)
        ok = ((a * b).diff_x() == a.diff_x() * b + a * b.diff_x()
              and (a * b).diff_z() == a.diff_z() * b + a * b.diff_z()
              and a.diff_x().diff_z() == a.diff_z().diff_x())
        if not ok:
            fails.append((t, str(a), str(b)))
    return fails


@suite("coeff-reconstruct")
def _coeffs(rng, trials):
    fails = []
    xf = BiFraction(X)
    for t in range(trials):
        n, deg = rng.randint(1, 4), rng.randint(0, 6)
        th = rand_xpoly_matrix(rng, n, deg)
        acc = MatF.zero(n)
        for j in range(deg + 1):
            acc = acc + coeff_x(th, j) * xf ** j
        if acc != th:
            fails.append(t)
    return fails


@suite("nullspace")
def _nullspace(rng, trials):
    fails = []
    for t in range(trials):
        m, k = rng.randint(1, 6), rng.randint(1, 7)
        A = [[rng.choice([0, 0, rng.randint(-4, 4), Q(rng.randint(-4, 4), rng.randint(1, 3))])
              for _ in range(k)] for _ in range(m)]
        basis = nullspace(A, k)
        ok = all(not any(mat_vec(A, v)) for v in basis) and rank(A, k) + len(basis) == k
        if not ok:
            fails.append((t, A))
    return fails


# ---------------------------------------------------------------------------
# operator calculus
# ---------------------------------------------------------------------------

@suite("compose-x")
def _compose_x(rng, trials):
    fails = []
    for t in range(trials):
        n = rng.randint(1, 3)
        L1, L2 = rand_xop(rng, n, rng.randint(0, 3)), rand_xop(rng, n, rng.randint(0, 3))
        M = rand_wave_matrix(rng, n)
        if apply_x_matrix(compose_x(L1, L2), M) != apply_x_matrix(L1, apply_x_matrix(L2, M)):
            fails.append(t)
    return fails


@suite("compose-z")
def _compose_z(rng, trials):
    fails = []
    for t in range(trials):
        n = rng.randint(1, 3)
        B1, B2 = rand_zop(rng, n, rng.randint(0, 3)), rand_zop(rng, n, rng.randint(0, 3))
        M = rand_wave_matrix(rng, n)
        if apply_z_matrix(M, compose_z(B1, B2)) != apply_z_matrix(apply_z_matrix(M, B1), B2):
            fails.append(t)
    return fails


@suite("degad")
def _degad(rng, trials):
    fails = []
    for t in range(trials):
        n = rng.randint(1, 3)
        L, T = rand_xop(rng, n, rng.randint(0, 3)), rand_xop(rng, n, rng.randint(0, 3))
        c = commutator_x(L, T)
        bad = [r for r in range(-1, L.order + T.order + 2) if degad_coefficient(L, T, r) != c.coeff(r)]
        if bad:
            fails.append((t, bad))
    return fails


def degad_closed_forms(L: OperatorX, T: OperatorX) -> list[tuple[str, MatF, MatF]]:
    """(name, closed form, commutator coefficient) for the leading coefficients of [L, T]."""
    l, m = L.order, T.order
    c = commutator_x(L, T)
    out = [("a_{m+l}", commutator(L.coeff(l), T.coeff(m)), c.coeff(m + l))]
    if m + l >= 1:
        top = (commutator(L.coeff(l - 1), T.coeff(m)) + commutator(L.coeff(l), T.coeff(m - 1))
               + (L.coeff(l) @ T.coeff(m).diff_x()) * l - (T.coeff(m) @ L.coeff(l).diff_x()) * m)
        out.append(("a_{m+l-1}", top, c.coeff(m + l - 1)))
    if m == 0 and l >= 1:
        low = commutator(L.coeff(l - 1), T.coeff(0)) + (L.coeff(l) @ T.coeff(0).diff_x()) * l
        out.append(("a_{l-1}", low, c.coeff(l - 1)))
    return out


@suite("degad-closed-forms")
def _degad_closed(rng, trials):
    fails = []
    for t in range(trials):
        n = rng.randint(1, 3)
        l = rng.randint(1, 3)
        m = rng.choice([0, 0, rng.randint(1, 3)])
        L, T = rand_xop(rng, n, l), rand_xop(rng, n, m)
        if rng.random() < 0.5:
            # normalized: scalar constant leading coefficient, no subleading term
            terms = dict(L.terms)
            terms[l] = MatF.scalar(n, rng.choice([-2, -1, 1, 3]))
            terms.pop(l - 1, None)
            L = OperatorX(terms, n)
        for name, closed, direct in degad_closed_forms(L, T):
            if closed != direct:
                fails.append((t, name))
    return fails


@suite("degad-order")
def _degad_order(rng, trials):
    fails = []
    for t in range(trials):
        n = rng.randint(1, 3)
        L, T = rand_xop(rng, n, rng.randint(1, 3)), rand_xop(rng, n, rng.randint(0, 3))
        if rng.random() < 0.5:
            terms = dict(T.terms)
            terms[T.order] = MatF.scalar(n, rng.randint(1, 3))
            T = OperatorX(terms, n)
        c = commutator_x(L, T)
        top = L.order + T.order
        lead = commutator(L.coeff(L.order), T.coeff(T.order))
        ok = c.order <= top - 1 if lead.is_zero() else c.order == top
        if not ok:
            fails.append(t)
    return fails


def _nilpotent_triple(rng):
    nd = standard_data(rng.choice([2, 3]))
    th = random_member(nd, rng, cached_basis(nd), tail_degree=2 * nd.D + 1)
    return nd, th


@suite("ad-intertwining")
def _ad_intertwining(rng, trials):
    """(ad L)^r(theta) psi = psi (ad F)^r(B) for the nilpotent triples, F = -z^2 I."""
    fails = []
    for t in range(trials):
        nd, th = _nilpotent_triple(rng)
        L, psi = schrodinger(nd), wave(nd)
        B = build_b(th, nd)
        F = OperatorZ.const(MatF.scalar(nd.n, -BiFraction(Z * Z)))
        T = OperatorX.const(th.to_matf())
        for r in (1, 2, 3):
            lhs = apply_x_matrix(ad_power(L, T, r), psi.M)
            rhs = apply_z_matrix(psi.M, ad_power_z(F, B, r))
            if lhs != rhs:
                fails.append((t, r))
    return fails


@suite("ad-condition")
def _adcond(rng, trials):
    fails = []
    for t in range(trials):
        nd = standard_data(rng.choice([2, 3]))
        th = random_member(nd, rng, cached_basis(nd), tail_degree=5)
        L = schrodinger(nd)
        if not ad_power(L, OperatorX.const(th.to_matf()), th.degree + 1).is_zero():
            fails.append((t, th.degree))
    return fails


@suite("leading-coefficient")
def _leading(rng, trials):
    """Coefficient of d^{k+1} in (ad L)^{k+1}(theta) is (2 L_2)^{k+1} theta^{(k+1)} for normalized L of order 2."""
    fails = []
    for t in range(trials):
        n = rng.randint(1, 3)
        c = rng.choice([-1, 1, 2])
        L = OperatorX({2: MatF.scalar(n, c), 0: rand_xpoly_matrix(rng, n, 2)}, n)
        th = rand_xpoly_matrix(rng, n, rng.randint(1, 4))
        k = rng.randint(0, 2)
        ad = ad_power(L, OperatorX.const(th), k + 1)
        d = th
        for _ in range(k + 1):
            d = d.diff_x()
        if ad.coeff(k + 1) != d * (2 * c) ** (k + 1):
            fails.append((t, k))
    return fails


# ---------------------------------------------------------------------------
# P_k identities
# ---------------------------------------------------------------------------

def _rand_pair(rng):
    nd = sample_data(rng)
    n = nd.n
    return nd, random_theta(n, rng.randint(0, 7), rng, density=0.6), random_theta(n, rng.randint(0, 7), rng, density=0.6)


@suite("pk0")
def _pk0(rng, trials):
    fails = []
    for t in range(trials):
        nd, th, _ = _rand_pair(rng)
        k = rng.randint(0, 4)
        aux = _mono(_c(th, k + 1) * (k + 1), 1)
        for r in range(2, nd.D + 1):
            aux = aux + _mono(_c(th, r + k), r)
        if p_k(th, nd, k) != p_k(aux, nd, 0):
            fails.append((t, k))
    return fails


@suite("product-p0")
def _prod_p0(rng, trials):
    fails = []
    for t in range(trials):
        nd, t1, t2 = _rand_pair(rng)
        rhs = MatF.zero(nd.n)
        for s in range(nd.D + 1):
            rhs = rhs + p_k(t1.shift(s), nd, 0) @ _c(t2, s) + _c(t1, s) @ p_k(t2.shift(s), nd, 0)
        pr = t1 * t2
        if p_k(pr, nd, 0) != rhs - _c(pr, 1):
            fails.append(t)
    return fails


@suite("product-pk")
def _prod_pk(rng, trials):
    fails = []
    for t in range(trials):
        nd, t1, t2 = _rand_pair(rng)
        k = rng.randint(0, 3)
        rhs = MatF.zero(nd.n)
        for s in range(k + nd.D + 1):
            rhs = rhs + p_k(t1.shift(s), nd, k) @ _c(t2, s) + _c(t1, s) @ p_k(t2.shift(s), nd, k)
        pr = t1 * t2
        if p_k(pr, nd, k) != rhs - _c(pr, k + 1) * (k + 1):
            fails.append((t, k))
    return fails


@suite("constant-factor")
def _const_factor(rng, trials):
    fails = []
    for t in range(trials):
        nd, _, t2 = _rand_pair(rng)
        c = rand_const(rng, nd.n)
        rhs = c @ p_k(t2, nd, 0)
        for s in range(2, nd.D + 1):
            rhs = rhs + p_k(_mono(c, s), nd, 0) @ _c(t2, s)
        if p_k(_const(c) * t2, nd, 0) != rhs:
            fails.append(t)
    return fails


@suite("zero1")
def _zero1(rng, trials):
    fails = []
    for t in range(trials):
        nd, t1, t2 = _rand_pair(rng)
        t1 = t1 - _const(_c(t1, 0))
        rhs = p_k(t1, nd, 0) @ _c(t2, 0) - _c(t1, 1) @ p_k(_mono(_c(t2, 0), 1), nd, 0)
        for s in range(1, nd.D + 1):
            rhs = rhs + p_k(t1.shift(s), nd, 0) @ _c(t2, s) + _c(t1, s) @ p_k(t2.shift(s), nd, 0)
        if p_k(t1 * t2, nd, 0) != rhs:
            fails.append(t)
    return fails


@suite("zero12")
def _zero12(rng, trials):
    fails = []
    for t in range(trials):
        nd, t1, t2 = _rand_pair(rng)
        t1 = t1 - _const(_c(t1, 0))
        t2 = t2 - _const(_c(t2, 0))
        rhs = MatF.zero(nd.n)
        for s in range(1, nd.D + 1):
            rhs = rhs + p_k(t1.shift(s), nd, 0) @ _c(t2, s) + _c(t1, s) @ p_k(t2.shift(s), nd, 0)
        if p_k(t1 * t2, nd, 0) != rhs:
            fails.append(t)
    return fails


def translation_rhs(th: ThetaPoly, nd: NilpotentData, k: int, t: int) -> MatF:
    """Right-hand side of the translation identity for P_k(x^t theta)."""
    if t <= k:
        return (p_k(_mono(_c(th, k + 1 - t), k + 1), nd, k) + p_k(th, nd, k - t)
                - _c(th, k - t + 1) * (k - t + 1))
    if t == k + 1:
        return p_k(_mono(_c(th, 0), k + 1), nd, k) + p_k((th - _const(_c(th, 0))).shift(1), nd, 0)
    return p_k(th.shift(t - k), nd, 0)


@suite("translation")
def _translation(rng, trials):
    fails = []
    for trial in range(trials):
        nd, th, _ = _rand_pair(rng)
        k = rng.randint(0, 4)
        # one shift from each branch per trial
        for t in (rng.randint(0, k), k + 1, rng.randint(k + 2, k + 5)):
            if p_k(th.shift(t), nd, k) != translation_rhs(th, nd, k, t):
                fails.append((trial, k, t))
    return fails


@suite("p0-from-pk")
def _p0_from_pk(rng, trials):
    fails = []
    for t in range(trials):
        nd, th, _ = _rand_pair(rng)
        k = rng.randint(1, 4)
        rhs = (p_k(_mono(_c(th, 1), k + 1), nd, k) * Q(-k, k + 1)
               + p_k((th - _const(_c(th, 0))).shift(k), nd, k))
        if p_k(th, nd, 0) != rhs:
            fails.append((t, k))
    return fails


P_FAMILY = ["pk0", "product-p0", "product-pk", "constant-factor", "zero1", "zero12",
            "translation", "p0-from-pk"]


# ---------------------------------------------------------------------------
# membership and the theta -> B construction
# ---------------------------------------------------------------------------

def equivalence_sample(rng: random.Random) -> tuple[NilpotentData, ThetaPoly]:
    nd = sample_data(rng)
    if rng.random() < 0.5:
        return nd, random_member(nd, rng, cached_basis(nd))
    return nd, random_theta(nd.n, rng.randint(0, 2 * nd.D + 2), rng, density=0.4)


@suite("formulation-equivalence")
def _equiv(rng, trials):
    fails = []
    for t in range(trials):
        nd, th = equivalence_sample(rng)
        a, b = gamma_membership_relations(th, nd), gamma_membership_theoremgen(th, nd)
        if a != b:
            fails.append((t, a, b))
    return fails


@suite("gamma-closed")
def _gamma_closed(rng, trials):
    fails = []
    for t in range(trials):
        nd = sample_data(rng)
        bas = cached_basis(nd)
        t1, t2 = random_member(nd, rng, bas), random_member(nd, rng, bas)
        if not gamma_membership_relations(t1 * t2, nd):
            fails.append(t)
    return fails


@suite("build-b")
def _build_b(rng, trials):
    fails = []
    for t in range(trials):
        nd = sample_data(rng)
        th = random_member(nd, rng, cached_basis(nd))
        if not check_right_eigen(wave(nd), build_b(th, nd), th.to_matf()):
            fails.append((t, nd.n, nd.D, th.degree))
    return fails


@suite("residual-formula")
def _residual(rng, trials):
    fails = []
    for t in range(trials):
        nd = sample_data(rng)
        th = random_theta(nd.n, rng.randint(0, 2 * nd.D - 1), rng, density=0.5)
        B = build_b(th, nd, force=True)
        if residual_matrix(th, nd, B) != predicted_residual(th, nd):
            fails.append(t)
    return fails


# ---------------------------------------------------------------------------
# Pierce idempotents
# ---------------------------------------------------------------------------

@suite("pierce-orthogonal-coefficients")
def _pierce_orth(rng, trials):
    fails = []
    for t in range(trials):
        N = rng.randint(4, 8)
        k = rng.randint(2, N - 2)
        l = rng.randint(k + 1, N - 1)
        for j in range(1, N):
            for r in range(1, N):
                if not (alpha_coefficient(N, k, j) @ alpha_coefficient(N, l, r)).is_zero():
                    fails.append((N, k, l, j, r))
    return fails


@suite("pierce-anticommutator")
def _pierce_anti(rng, trials):
    fails = []
    for t in range(trials):
        N = rng.randint(3, 8)
        k = rng.randint(2, N - 1)
        j = rng.randint(1, N - 1)
        e = MatF.unit(N, k, k)
        a = alpha_coefficient(N, k, j)
        s = 1 if j % 2 else -1
        want = MatF.zero(N)
        if k == j + 1:
            want = want + MatF.unit(N, k, 1, s)
        if k == N - j:
            want = want + MatF.unit(N, N, k, s)
        if e @ a + a @ e != want:
            fails.append((N, k, j))
    return fails


@suite("pierce-closed-form")
def _pierce_closed(rng, trials):
    fails = []
    for t in range(trials):
        N = rng.randint(3, 8)
        k = rng.randint(2, N - 1)
        l = rng.randint(0, N - 2)
        if p_l_alpha_closed(N, k, l) != p_l_alpha_direct(N, k, l):
            fails.append((N, k, l))
    return fails


@suite("pierce-first-family")
def _pierce_first(rng, trials):
    fails = []
    for t in range(trials):
        N = rng.randint(3, 7)
        k = rng.randint(1, N - 1)
        nd = standard_data(N)
        a = pierce_alpha(N, k)
        if p_k(a.shift(1), nd, 0) != p_k(_mono(_c(a, 0), 1), nd, 0):
            fails.append((N, k, 1))
        for r in range(2, N + 3):
            if not p_k(a.shift(r), nd, 0).is_zero():
                fails.append((N, k, r))
    return fails


# ---------------------------------------------------------------------------
# closure
# ---------------------------------------------------------------------------

@suite("closure-order-independent")
def _closure_order(rng, trials):
    fails = []
    for t in range(trials):
        N = rng.choice([2, 3])
        gens = generators(N)
        ref = span_close(gens, 3 * N)
        rng.shuffle(gens)
        if span_close(gens, 3 * N) != ref:
            fails.append(t)
    return fails


@suite("closure-monotone")
def _closure_mono(rng, trials):
    fails = []
    for t in range(trials):
        N = rng.choice([2, 3])
        c1 = rng.randint(2 * N - 1, 3 * N)
        c2 = rng.randint(c1, 4 * N)
        small, big = span_close(generators(N), c1), span_close(generators(N), c2)
        for el in small.elements():
            if not contains(big, el):
                fails.append((t, c1, c2))
                break
    return fails


@suite("closure-in-gamma")
def _closure_gamma(rng, trials):
    fails = []
    for t in range(trials):
        nd = standard_data(rng.choice([2, 3]))
        cap = 2 * nd.D + rng.randint(0, 2)
        sb = span_close(cached_basis(nd), cap)
        for el in sb.elements():
            if not gamma_membership_relations(el, nd):
                fails.append(t)
                break
    return fails


# ---------------------------------------------------------------------------
# spin Calogero example
# ---------------------------------------------------------------------------

@suite("calogero-products")
def _cal_products(rng, trials):
    fails = []
    for t in range(trials):
        p1 = tuple(rng.randint(-5, 5) for _ in range(5))
        p2 = tuple(rng.randint(-5, 5) for _ in range(5))
        F1 = cal.from_params(*p1, tail=cal.random_member_c(rng) if rng.random() < 0.3 else None)
        F2 = cal.from_params(*p2)
        P = F1 * F2
        heads = cal.product_head_closed(p1, p2)
        if not cal.gamma_c_membership(P) or any(P.coeff(d) != heads[d] for d in range(3)):
            fails.append((t, p1, p2))
    return fails


@suite("calogero-build-l")
def _cal_build_l(rng, trials):
    fails = []
    psi = cal.calogero_wave()
    for t in range(trials):
        F = cal.random_member_c(rng)
        if apply_x_matrix(cal.build_l(F), psi.M) != psi.M @ F.to_matf():
            fails.append((t, cal.gamma_c_params(F)))
    return fails


@suite("calogero-linearity")
def _cal_linear(rng, trials):
    fails = []
    for t in range(trials):
        F1, F2 = cal.random_member_c(rng), cal.random_member_c(rng)
        if cal.build_l(F1 + F2) != cal.build_l(F1) + cal.build_l(F2):
            fails.append(t)
    return fails


__all__ = ["SUITES", "P_FAMILY", "SuiteResult", "run_suite", "degad_closed_forms",
           "translation_rhs", "equivalence_sample", "sample_data", "cached_basis"]
