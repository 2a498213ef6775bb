"""Bispectral data built from a nilpotent matrix S of degree D.

The wave function e^{xz}(I z + sum_m (-1)^m S^{m-1} x^{-m}) is a common
eigenfunction of a matrix Schrodinger operator (eigenvalue -z^2) and of
right-acting operators B in z whose eigenvalues theta(x) form an algebra
Gamma of matrix polynomials.  This module evaluates the linear maps P_k,
the two equivalent membership tests for Gamma, the finite-dimensional head
of Gamma, and the explicit construction theta -> B.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .arith import (
    ArithError,
    BiFraction,
    DimensionMismatch,
    MatF,
    Q,
    X,
    Z,
    commutator,
    const_matrix,
    matf_from_json,
    matf_to_json,
    nullspace,
)
from .operators import OperatorX, OperatorZ, WaveFunction, apply_z_matrix, check_right_eigen


class NotInGamma(ArithError):
    """Raised when build_b is asked for a theta outside the eigenvalue algebra."""


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


# ---------------------------------------------------------------------------
# matrix polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ThetaPoly:
    """Matrix polynomial sum_j coeffs[j] * var^j with constant coefficients."""

    n: int
    coeffs: tuple
    var: str = "x"

    def __post_init__(self):
        if self.var not in ("x", "z"):
            raise ArithError("ThetaPoly variable must be 'x' or 'z'")
        cs = list(self.coeffs)
        for c in cs:
            if c.n != self.n:
                raise DimensionMismatch("coefficient size differs from n")
            if not c.is_constant():
                raise ArithError("ThetaPoly coefficients must be constant matrices")
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_coeffs(cls, coeffs: Sequence, var: str = "x") -> "ThetaPoly":
        mats = [c if isinstance(c, MatF) else const_matrix(c) for c in coeffs]
        if not mats:
            raise ArithError("need at least one coefficient to infer n")
        return cls(mats[0].n, tuple(mats), var)

    @classmethod
    def zero(cls, n: int, var: str = "x") -> "ThetaPoly":
        return cls(n, (), var)

    @classmethod
    def constant(cls, m: MatF, var: str = "x") -> "ThetaPoly":
        return cls(m.n, (m,), var)

    @classmethod
    def monomial(cls, m: MatF, d: int, var: str = "x") -> "ThetaPoly":
        return cls(m.n, tuple([MatF.zero(m.n)] * d + [m]), var)

    @classmethod
    def from_matf(cls, m: MatF, var: str = "x") -> "ThetaPoly":
        """Split a matrix whose entries are polynomials in ``var`` alone."""
        idx = 0 if var == "x" else 1
        deg = 0
        for v in m.entries():
            if not v.is_poly() or (v.num.depends_on_z() if var == "x" else v.num.depends_on_x()):
                raise ArithError(f"not a {var}-polynomial")
            deg = max(deg, v.num.deg_x() if var == "x" else v.num.deg_z())
        coeffs = []
        for d in range(deg + 1):
            e = (d, 0) if idx == 0 else (0, d)
            coeffs.append(MatF._mk(tuple(
                tuple(BiFraction.coerce(v.num.terms.get(e, Q(0))) for v in r) for r in m.rows
            )))
        return cls(m.n, tuple(coeffs), var)

    @property
    def degree(self) -> int:
        """Degree in the variable; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coeff(self, j: int) -> MatF:
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return MatF.zero(self.n)

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_matf(self) -> MatF:
        v = X if self.var == "x" else Z
        acc = MatF.zero(self.n)
        for j, c in enumerate(self.coeffs):
            if not c.is_zero():
                acc = acc + c * BiFraction(v ** j)
        return acc

    def _same(self, other: "ThetaPoly"):
        if self.n != other.n:
            raise DimensionMismatch(f"size {self.n} vs {other.n}")

    def __add__(self, other: "ThetaPoly") -> "ThetaPoly":
        self._same(other)
        k = max(len(self.coeffs), len(other.coeffs))
        return ThetaPoly(self.n, tuple(self.coeff(j) + other.coeff(j) for j in range(k)), self.var)

    def __neg__(self) -> "ThetaPoly":
        return ThetaPoly(self.n, tuple(-c for c in self.coeffs), self.var)

    def __sub__(self, other: "ThetaPoly") -> "ThetaPoly":
        return self + (-other)

    def scale(self, c) -> "ThetaPoly":
        return ThetaPoly(self.n, tuple(m * c for m in self.coeffs), self.var)

    def __mul__(self, other):
        if not isinstance(other, ThetaPoly):
            return self.scale(other)
        self._same(other)
        if self.is_zero() or other.is_zero():
            return ThetaPoly.zero(self.n, self.var)
        out = [MatF.zero(self.n) for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a @ b
        return ThetaPoly(self.n, tuple(out), self.var)

    def left_mul(self, c: MatF) -> "ThetaPoly":
        return ThetaPoly(self.n, tuple(c @ a for a in self.coeffs), self.var)

    def right_mul(self, c: MatF) -> "ThetaPoly":
        return ThetaPoly(self.n, tuple(a @ c for a in self.coeffs), self.var)

    def shift(self, k: int) -> "ThetaPoly":
        """Multiply by var^k."""
        if self.is_zero():
            return self
        return ThetaPoly(self.n, tuple([MatF.zero(self.n)] * k) + self.coeffs, self.var)

    def derivative(self) -> "ThetaPoly":
        return ThetaPoly(self.n, tuple(c * j for j, c in enumerate(self.coeffs) if j), self.var)

    def truncate(self, deg: int) -> "ThetaPoly":
        return ThetaPoly(self.n, self.coeffs[: deg + 1], self.var)

    def __eq__(self, other):
        if not isinstance(other, ThetaPoly):
            return NotImplemented
        if self.n != other.n:
            return False
        k = max(len(self.coeffs), len(other.coeffs))
        return all(self.coeff(j) == other.coeff(j) for j in range(k))

    __hash__ = None

    def __repr__(self):
        return f"ThetaPoly(n={self.n}, deg={self.degree}, var={self.var!r})"


def theta_to_json(t: ThetaPoly) -> dict:
    d = {"n": t.n, "coeffs": [matf_to_json(c) for c in t.coeffs]}
    if t.var != "x":
        d["var"] = t.var
    return d


def theta_from_json(d) -> ThetaPoly:
    try:
        n = int(d["n"])
        coeffs = tuple(matf_from_json(c) for c in d["coeffs"])
        var = d.get("var", "x")
    except (KeyError, TypeError, AttributeError) as exc:
        raise ArithError(f"bad ThetaPoly encoding: {exc}") from exc
    return ThetaPoly(n, coeffs, var)


# ---------------------------------------------------------------------------
# nilpotent data
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class NilpotentData:
    n: int
    S: MatF
    D: int
    _powers: tuple = field(default=(), repr=False)

    def __post_init__(self):
        if self.S.n != self.n:
            raise DimensionMismatch("S has the wrong size")
        if not self.S.is_constant():
            raise ArithError("S must be a constant matrix")
        if self.D < 2:
            raise ArithError("nilpotency degree must be at least 2")
        pows = [MatF.identity(self.n)]
        for _ in range(self.D):
            pows.append(pows[-1] @ self.S)
        if not pows[self.D].is_zero() or pows[self.D - 1].is_zero():
            raise ArithError(f"S is not nilpotent of degree exactly {self.D}")
        object.__setattr__(self, "_powers", tuple(pows[: self.D]))

    def spow(self, k: int) -> MatF:
        """S^k, zero for k >= D."""
        if k < 0:
            raise ArithError("negative power of S")
        return self._powers[k] if k < self.D else MatF.zero(self.n)


def shift_matrix(N: int) -> MatF:
    """Upper shift matrix sum_{s=1}^{N-1} e_{s,s+1}."""
    if N < 2:
        raise ArithError("shift matrix needs N >= 2")
    rows = [[1 if j == i + 1 else 0 for j in range(N)] for i in range(N)]
    return const_matrix(rows)


def standard_data(N: int, D: int | None = None) -> NilpotentData:
    """(S_N, D) with D defaulting to N."""
    return NilpotentData(N, shift_matrix(N), N if D is None else D)


def nilpotent_to_json(nd: NilpotentData) -> dict:
    return {"n": nd.n, "S": matf_to_json(nd.S), "D": nd.D}


def nilpotent_from_json(d) -> NilpotentData:
    try:
        return NilpotentData(int(d["n"]), matf_from_json(d["S"]), int(d["D"]))
    except (KeyError, TypeError) as exc:
        raise ArithError(f"bad NilpotentData encoding: {exc}") from exc


def wave(nd: NilpotentData) -> WaveFunction:
    xf = BiFraction(X)
    M = MatF.identity(nd.n) * BiFraction(Z)
    for m in range(1, nd.D + 1):
        M = M + nd.spow(m - 1) * (_sign(m) / xf ** m)
    return WaveFunction(M)


def schrodinger(nd: NilpotentData) -> OperatorX:
    xf = BiFraction(X)
    a0 = MatF.zero(nd.n)
    for m in range(1, nd.D + 1):
        a0 = a0 + nd.spow(m - 1) * (2 * _sign(m + 1) * m / xf ** (m + 1))
    return OperatorX({2: MatF.scalar(nd.n, -1), 0: a0}, nd.n)


# ---------------------------------------------------------------------------
# the P_k maps and membership
# ---------------------------------------------------------------------------

def _check_theta(theta: ThetaPoly, nd: NilpotentData):
    if theta.n != nd.n:
        raise DimensionMismatch(f"theta size {theta.n} vs S size {nd.n}")
    if theta.var != "x":
        raise ArithError("theta must be a polynomial in x")


def p_k(theta: ThetaPoly, nd: NilpotentData, k: int) -> MatF:
    """(k+1) a_{k+1} - sum_{j=k+2}^{k+D} (-1)^{k-j} [a_j, S^{j-k-1}], a_j the x^j coefficient."""
    _check_theta(theta, nd)
    if k < 0:
        raise ArithError("k must be non-negative")
    acc = theta.coeff(k + 1) * (k + 1)
    for j in range(k + 2, min(k + nd.D, theta.degree) + 1):
        a = theta.coeffs[j]
        if a.is_zero():
            continue
        br = commutator(a, nd.spow(j - k - 1))
        acc = acc - br * _sign(k - j)
    return acc


def gamma_relations(theta: ThetaPoly, nd: NilpotentData) -> tuple[list[MatF], list[MatF]]:
    """Residuals of the two relation families, q = 0..D-1; zero iff theta is in Gamma."""
    _check_theta(theta, nd)
    D = nd.D
    P = [p_k(theta, nd, j) for j in range(D)]
    first, second = [], []
    for q in range(D):
        f = MatF.zero(nd.n)
        s = MatF.zero(nd.n)
        for j in range(q + 1):
            a = theta.coeff(j)
            if not a.is_zero():
                f = f + commutator(nd.spow(D - q + j - 1), a) * _sign(q - j - D)
            if not P[j].is_zero():
                s = s + (nd.spow(j + D - q - 1) @ P[j]) * _sign(q - j - D + 1)
        first.append(f)
        second.append(s)
    return first, second


def gamma_membership_relations(theta: ThetaPoly, nd: NilpotentData) -> bool:
    first, second = gamma_relations(theta, nd)
    return all(m.is_zero() for m in first + second)


def theoremgen_conditions(theta: ThetaPoly, nd: NilpotentData) -> list[tuple[str, MatF]]:
    """Named residuals of the generator-theorem form of membership.

    P_0(x theta) - P_0(theta(0) x), P_0(x^j theta) for 2 <= j <= D, and
    sum_{k=0}^{q} (-1)^k S^{k+D-q-1} P_k(theta) for 0 <= q <= D-1.
    """
    _check_theta(theta, nd)
    D = nd.D
    out = []
    a0x = ThetaPoly.monomial(theta.coeff(0), 1)
    out.append(("P0(x*theta)-P0(theta(0)*x)", p_k(theta.shift(1), nd, 0) - p_k(a0x, nd, 0)))
    for j in range(2, D + 1):
        out.append((f"P0(x^{j}*theta)", p_k(theta.shift(j), nd, 0)))
    P = [p_k(theta, nd, k) for k in range(D)]
    for q in range(D):
        acc = MatF.zero(nd.n)
        for k in range(q + 1):
            acc = acc + (nd.spow(k + D - q - 1) @ P[k]) * _sign(k)
        out.append((f"sum_S_P[q={q}]", acc))
    return out


def gamma_membership_theoremgen(theta: ThetaPoly, nd: NilpotentData) -> bool:
    return all(m.is_zero() for _, m in theoremgen_conditions(theta, nd))


gamma_membership = gamma_membership_relations


# ---------------------------------------------------------------------------
# the finite head of Gamma
# ---------------------------------------------------------------------------

def ambient_index(n: int, d: int, i: int, j: int) -> int:
    """Position of e_{ij} x^d (0-based i, j) in the (degree, row, col) ordering."""
    return d * n * n + i * n + j


def theta_to_vector(theta: ThetaPoly, cap: int) -> list:
    """Coefficient vector of theta over e_{ij} x^d, d <= cap."""
    if theta.degree > cap:
        raise ArithError(f"degree {theta.degree} exceeds cap {cap}")
    n = theta.n
    vec = [Q(0)] * (n * n * (cap + 1))
    for d, c in enumerate(theta.coeffs):
        for i in range(n):
            for j in range(n):
                v = c.rows[i][j]
                if not v.is_zero():
                    vec[ambient_index(n, d, i, j)] = v.constant_value()
    return vec


def vector_to_theta(vec: Sequence, n: int, var: str = "x") -> ThetaPoly:
    nn = n * n
    if len(vec) % nn:
        raise DimensionMismatch("vector length is not a multiple of n^2")
    coeffs = []
    for d in range(len(vec) // nn):
        block = vec[d * nn:(d + 1) * nn]
        coeffs.append(const_matrix([block[i * n:(i + 1) * n] for i in range(n)]))
    return ThetaPoly(n, tuple(coeffs), var)


def _flat(m: MatF) -> list:
    return [v.constant_value() for v in m.entries()]


def relation_matrix(nd: NilpotentData, deg: int) -> list[list]:
    """Matrix of the linear map theta -> (all relation residuals) on polynomials of degree <= deg."""
    n = nd.n
    cols = []
    for d in range(deg + 1):
        for i in range(n):
            for j in range(n):
                t = ThetaPoly.monomial(MatF.unit(n, i + 1, j + 1), d)
                first, second = gamma_relations(t, nd)
                col = []
                for m in first + second:
                    col.extend(_flat(m))
                cols.append(col)
    return [list(r) for r in zip(*cols)]


def basis_E(nd: NilpotentData) -> list[ThetaPoly]:
    """Reduced echelon basis of Gamma intersected with polynomials of degree < 2D."""
    deg = 2 * nd.D - 1
    A = relation_matrix(nd, deg)
    return [vector_to_theta(v, nd.n) for v in nullspace(A, nd.n * nd.n * (deg + 1))]


def random_member(nd: NilpotentData, rng: random.Random, basis: list[ThetaPoly] | None = None,
                  tail_degree: int | None = None, lo: int = -5, hi: int = 5) -> ThetaPoly:
    """Random element of Gamma: an integer combination of basis_E plus an x^{2D} tail.

    ``tail_degree`` bounds the total degree (default 2D + 3); below 2D no tail is added.
    """
    basis = basis_E(nd) if basis is None else basis
    top = 2 * nd.D + 3 if tail_degree is None else tail_degree
    out = ThetaPoly.zero(nd.n)
    for b in basis:
        c = rng.randint(lo, hi)
        if c:
            out = out + b.scale(c)
    n = nd.n
    tail = []
    for d in range(2 * nd.D, rng.randint(2 * nd.D - 1, max(top, 2 * nd.D - 1)) + 1):
        tail.append(const_matrix([[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)]))
    if tail:
        out = out + ThetaPoly(n, tuple(tail), "x").shift(2 * nd.D)
    return out


def random_theta(n: int, deg: int, rng: random.Random, lo: int = -5, hi: int = 5,
                 density: float = 1.0) -> ThetaPoly:
    coeffs = []
    for _ in range(deg + 1):
        coeffs.append(const_matrix([
            [rng.randint(lo, hi) if rng.random() < density else 0 for _ in range(n)]
            for _ in range(n)
        ]))
    return ThetaPoly(n, tuple(coeffs))


# ---------------------------------------------------------------------------
# theta -> B
# ---------------------------------------------------------------------------

def mu_matrix(D: int, M: int) -> list[list]:
    """(M+1)x(M+1) matrix: (-1)^{r-j} for r+2 <= j <= min(r+D, M), r on the superdiagonal."""
    if D < 2 or M < 0:
        raise ArithError("mu_matrix needs D >= 2 and M >= 0")
    mu = [[Q(0)] * (M + 1) for _ in range(M + 1)]
    for r in range(M + 1):
        if r + 1 <= M:
            mu[r][r + 1] = Q(r)
        for j in range(r + 2, min(r + D, M) + 1):
            mu[r][j] = Q(_sign(r - j))
    return mu


def _matmul_q(A, B):
    k = len(B)
    m = len(B[0]) if B else 0
    return [[sum((A[i][t] * B[t][j] for t in range(k) if A[i][t] and B[t][j]), Q(0))
             for j in range(m)] for i in range(len(A))]


def build_b(theta: ThetaPoly, nd: NilpotentData, force: bool = False) -> OperatorZ:
    """Right operator B in z with psi B = theta psi for theta in Gamma.

    The d_z^j coefficient is
    a_j + sum_{l=1}^{M-j} (-1)^l z^{-l} sum_{r=j+l-1}^{M} (mu^{l-1})_{jr} S^{r-j-l+1} P_r(theta).
    """
    _check_theta(theta, nd)
    if not force and not gamma_membership_relations(theta, nd):
        raise NotInGamma("theta is not in the eigenvalue algebra (use force to override)")
    n = nd.n
    M = max(theta.degree, 0)
    if theta.is_zero():
        return OperatorZ.zero(n)
    mu = mu_matrix(nd.D, M)
    P = [p_k(theta, nd, r) for r in range(M + 1)]
    zf = BiFraction(Z)
    terms: dict[int, MatF] = {}
    mu_pow = [[Q(1) if i == j else Q(0) for j in range(M + 1)] for i in range(M + 1)]
    # mu_pows[l-1] for l = 1..M
    mu_pows = []
    for _ in range(M):
        mu_pows.append(mu_pow)
        mu_pow = _matmul_q(mu_pow, mu)
    for j in range(M + 1):
        coeff = theta.coeff(j)
        for l in range(1, M - j + 1):
            inner = MatF.zero(n)
            mp = mu_pows[l - 1]
            for r in range(j + l - 1, M + 1):
                c = mp[j][r]
                if c and not P[r].is_zero():
                    e = r - j - l + 1
                    if e < nd.D:
                        inner = inner + (nd.spow(e) @ P[r]) * BiFraction.coerce(c)
            if not inner.is_zero():
                coeff = coeff + inner * (_sign(l) / zf ** l)
        terms[j] = coeff
    return OperatorZ(terms, n)


def verify_build_b(theta: ThetaPoly, nd: NilpotentData) -> bool:
    return check_right_eigen(wave(nd), build_b(theta, nd), theta.to_matf())


def residual_matrix(theta: ThetaPoly, nd: NilpotentData, B: OperatorZ) -> MatF:
    """e^{-xz}(psi B - theta psi)."""
    psi = wave(nd)
    return apply_z_matrix(psi.M, B) - theta.to_matf() @ psi.M


def predicted_residual(theta: ThetaPoly, nd: NilpotentData) -> MatF:
    """x^{-D} sum_q (first_q + z^{-1} second_q) x^q from the relation residuals."""
    first, second = gamma_relations(theta, nd)
    xf, zf = BiFraction(X), BiFraction(Z)
    acc = MatF.zero(nd.n)
    for q in range(nd.D):
        acc = acc + (first[q] + second[q] * (1 / zf)) * (xf ** q)
    return acc * (1 / xf ** nd.D)


__all__ = [
    "ThetaPoly", "NilpotentData", "NotInGamma", "shift_matrix", "standard_data",
    "wave", "schrodinger", "p_k", "gamma_relations", "gamma_membership",
    "gamma_membership_relations", "gamma_membership_theoremgen",
    "theoremgen_conditions", "basis_E", "mu_matrix", "build_b", "random_member",
    "random_theta", "theta_to_vector", "vector_to_theta", "ambient_index",
    "theta_to_json", "theta_from_json", "nilpotent_to_json", "nilpotent_from_json",
    "relation_matrix", "verify_build_b", "residual_matrix", "predicted_residual",
]
