"""Degree-capped span closure of a generated subalgebra of M_N(K[x]).

Elements are coefficient vectors over the monomial basis e_{ij} x^d ordered
by (d, i, j).  The closure is the smallest subspace V containing the
generators (and optionally I) such that g*v and v*g lie in V whenever
v is in V, g is a generator and the exact product has degree <= cap.
Products of higher degree are never truncated.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .arith import ArithError, MatF, Q, rational, rational_to_json, rational_from_json
from .nilpotent import NilpotentData, ThetaPoly, basis_E, vector_to_theta

Vec = dict  # column index -> nonzero mpq


def _theta_vec(t: ThetaPoly, n: int) -> Vec:
    out = {}
    nn = n * n
    for d, c in enumerate(t.coeffs):
        for i in range(n):
            for j in range(n):
                v = c.rows[i][j]
                if not v.is_zero():
                    out[d * nn + i * n + j] = v.constant_value()
    return out


def _axpy(v: Vec, c, w: Vec) -> None:
    """v -= c * w in place."""
    for k, a in w.items():
        r = v.get(k, 0) - c * a
        if r:
            v[k] = r
        else:
            v.pop(k, None)


@dataclass
class SpanBasis:
    """Fully reduced row-echelon basis with unit pivots; pivot = lowest column."""

    cap: int
    n: int
    var: str = "x"
    _rows: dict = field(default_factory=dict)  # pivot col -> row

    @property
    def dim_ambient(self) -> int:
        return self.n * self.n * (self.cap + 1)

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def rows(self) -> list[list]:
        """Dense rows in increasing pivot order."""
        out = []
        for p in self.pivots:
            r = self._rows[p]
            out.append([r.get(k, Q(0)) for k in range(self.dim_ambient)])
        return out

    def reduce(self, v: Vec) -> Vec:
        v = dict(v)
        for p in sorted(k for k in v if k in self._rows):
            c = v.get(p)
            if c:
                _axpy(v, c, self._rows[p])
        return v

    def insert(self, v: Vec) -> Vec | None:
        """Add v to the span; returns the new reduced row or None if already contained."""
        if any(k >= self.dim_ambient for k in v):
            raise ArithError("vector exceeds the degree cap")
        v = self.reduce(v)
        if not v:
            return None
        p = min(v)
        inv = 1 / v[p]
        v = {k: a * inv for k, a in v.items()}
        for row in self._rows.values():
            c = row.get(p)
            if c:
                _axpy(row, c, v)
        self._rows[p] = v
        return v

    def contains_vector(self, v: Vec) -> bool:
        if any(k >= self.dim_ambient for k in v):
            raise ArithError("degree overflow")
        return not self.reduce(v)

    def elements(self) -> list[ThetaPoly]:
        return [vector_to_theta(r, self.n, self.var) for r in self.rows()]

    def to_json(self) -> dict:
        return {"cap": self.cap, "n": self.n,
                "rows": [[rational_to_json(a) for a in r] for r in self.rows()]}

    @classmethod
    def from_json(cls, d) -> "SpanBasis":
        try:
            sb = cls(int(d["cap"]), int(d["n"]))
            for r in d["rows"]:
                sb.insert({k: q for k, q in enumerate(map(rational_from_json, r)) if q})
        except (KeyError, TypeError) as exc:
            raise ArithError(f"bad SpanBasis encoding: {exc}") from exc
        return sb

    def __eq__(self, other):
        if not isinstance(other, SpanBasis):
            return NotImplemented
        return (self.cap, self.n) == (other.cap, other.n) and self._rows == other._rows


class _ProductMap:
    """Sparse linear map v -> g*v (or v*g) on the ambient basis, with kernel tracking.

    Images are split into the part of degree <= cap and the overflow.  An
    echelon structure on the overflow (pivot = highest column) finds every
    combination of processed vectors whose product stays within the cap.
    """

    def __init__(self, g: ThetaPoly, n: int, cap: int, left: bool):
        self.n, self.cap, self.left = n, cap, left
        self.limit = n * n * (cap + 1)
        self.g = [(e, [[c.rows[i][j].constant_value() for j in range(n)] for i in range(n)])
                  for e, c in enumerate(g.coeffs) if not c.is_zero()]
        self.rows: dict = {}  # high pivot -> (vec)

    def image(self, v: Vec) -> Vec:
        n, nn = self.n, self.n * self.n
        out: Vec = {}
        for idx, a in v.items():
            d, rem = divmod(idx, nn)
            i, j = divmod(rem, n)
            for e, G in self.g:
                base = (d + e) * nn
                if self.left:
                    # G e_ij = sum_k G[k][i] e_kj
                    for k in range(n):
                        c = G[k][i]
                        if c:
                            t = base + k * n + j
                            r = out.get(t, 0) + a * c
                            if r:
                                out[t] = r
                            else:
                                out.pop(t, None)
                else:
                    # e_ij G = sum_k G[j][k] e_ik
                    Gj = G[j]
                    for k in range(n):
                        c = Gj[k]
                        if c:
                            t = base + i * n + k
                            r = out.get(t, 0) + a * c
                            if r:
                                out[t] = r
                            else:
                                out.pop(t, None)
        return out

    def feed(self, v: Vec) -> Vec | None:
        """Process a new vector of V; return a product combination of degree <= cap, if any."""
        w = self.image(v)
        while w:
            p = max(w)
            if p < self.limit:
                return w
            row = self.rows.get(p)
            if row is None:
                self.rows[p] = w
                return None
            _axpy(w, w[p] / row[p], row)
        return None


def span_close(gens: Sequence[ThetaPoly], cap: int, with_identity: bool = True) -> SpanBasis:
    """Smallest cap-bounded subspace containing gens and closed under generator products."""
    gens = list(gens)
    if not gens:
        raise ArithError("need at least one generator")
    n = gens[0].n
    var = gens[0].var
    top = max(g.degree for g in gens)
    if cap < top:
        raise ArithError(f"cap {cap} below generator degree {top}")
    basis = SpanBasis(cap, n, var)
    maps = []
    for g in gens:
        if g.n != n:
            raise ArithError("generators of different sizes")
        if not g.is_zero():
            maps.append(_ProductMap(g, n, cap, True))
            maps.append(_ProductMap(g, n, cap, False))
    work: list[Vec] = []
    seeds = list(gens)
    if with_identity:
        seeds.insert(0, ThetaPoly.constant(MatF.identity(n), var))
    for g in seeds:
        v = _theta_vec(g, n)
        if basis.insert(v) is not None:
            work.append(v)
    while work:
        v = work.pop()
        for m in maps:
            w = m.feed(v)
            if w is not None and basis.insert(w) is not None:
                work.append(w)
    return basis


def contains(basis: SpanBasis, theta: ThetaPoly) -> bool:
    if theta.n != basis.n:
        raise ArithError("size mismatch")
    if theta.degree > basis.cap:
        raise ArithError(f"degree overflow: {theta.degree} > cap {basis.cap}")
    return basis.contains_vector(_theta_vec(theta, basis.n))


def missing_monomials(basis: SpanBasis, degrees) -> list[tuple[int, int, int]]:
    """(i, j, d) (1-based i, j) for which e_ij x^d is not in the span."""
    n = basis.n
    out = []
    for d in degrees:
        for i in range(n):
            for j in range(n):
                if not basis.contains_vector({d * n * n + i * n + j: Q(1)}):
                    out.append((i + 1, j + 1, d))
    return out


@dataclass
class FullRankReport:
    n: int
    D: int
    cap: int
    lo: int
    hi: int
    dim_E: int
    dim_closure: int
    missing: list

    @property
    def passed(self) -> bool:
        return not self.missing and self.hi >= self.lo

    def to_json(self) -> dict:
        return {"n": self.n, "D": self.D, "cap": self.cap, "certified_range": [self.lo, self.hi],
                "dim_E": self.dim_E, "dim_closure": self.dim_closure,
                "missing": [list(m) for m in self.missing], "pass": self.passed}


def check_full_rank_one(nd: NilpotentData, cap: int,
                        generators: Sequence[ThetaPoly] | None = None) -> FullRankReport:
    """Closure of the finite head E reaches every e_ij x^d with 2D <= d <= cap - 2D."""
    if cap < 2 * nd.D:
        raise ArithError("cap must be at least 2D")
    gens = list(generators) if generators is not None else basis_E(nd)
    sb = span_close(gens, cap, with_identity=True)
    lo, hi = 2 * nd.D, cap - 2 * nd.D
    return FullRankReport(nd.n, nd.D, cap, lo, hi, len(gens), sb.dim,
                          missing_monomials(sb, range(lo, hi + 1)))


__all__ = ["SpanBasis", "span_close", "contains", "missing_monomials",
           "check_full_rank_one", "FullRankReport"]
