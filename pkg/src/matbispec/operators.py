"""Matrix differential operators acting on wave functions e^{xz} M(x, z).

Operators in x act on the left, operators in z act on the right.  The
exponential prefactor is implicit: differentiating e^{xz} M in x gives
e^{xz} (z M + M_x), and in z gives e^{xz} (x M + M_z), so every computation
stays inside matrices of rational functions.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .arith import (
    ArithError,
    BiFraction,
    DimensionMismatch,
    MatF,
    X,
    Z,
    binomial,
    commutator,
    matf_from_json,
    matf_to_json,
)


class VariableDependenceError(ArithError):
    """A coefficient depends on a variable it must not depend on."""


_XF = BiFraction(X)
_ZF = BiFraction(Z)


@dataclass(frozen=True, eq=False)
class WaveFunction:
    """psi(x, z) = exp(x*z) * M(x, z)."""

    M: MatF

    def __post_init__(self):
        if self.M.is_zero():
            raise ArithError("wave function matrix must be nonzero")

    @property
    def n(self) -> int:
        return self.M.n

    def __eq__(self, other):
        if not isinstance(other, WaveFunction):
            return NotImplemented
        return self.M == other.M

    __hash__ = None


def _clean_terms(terms: Mapping[int, MatF], n: int | None) -> tuple[dict[int, MatF], int]:
    out = {}
    for order, c in terms.items():
        if order < 0:
            raise ArithError("negative operator order")
        if n is None:
            n = c.n
        elif c.n != n:
            raise DimensionMismatch("operator coefficients of different sizes")
        if not c.is_zero():
            out[int(order)] = c
    if n is None:
        raise ArithError("operator size unknown (no coefficients and no n)")
    return dict(sorted(out.items())), n


class _Operator:
    var = ""
    __slots__ = ("terms", "n")

    def __init__(self, terms: Mapping[int, MatF], n: int | None = None, check: bool = True):
        self.terms, self.n = _clean_terms(terms, n)
        if check:
            for c in self.terms.values():
                bad = c.depends_on_z() if self.var == "x" else c.depends_on_x()
                if bad:
                    other = "z" if self.var == "x" else "x"
                    raise VariableDependenceError(
                        f"{type(self).__name__} coefficient depends on {other}"
                    )

    @classmethod
    def const(cls, m: MatF):
        return cls({0: m}, m.n)

    @classmethod
    def identity(cls, n: int):
        return cls({0: MatF.identity(n)}, n)

    @classmethod
    def zero(cls, n: int):
        return cls({}, n)

    @property
    def order(self) -> int:
        """Highest order with a nonzero coefficient; -1 for the zero operator."""
        return max(self.terms, default=-1)

    def coeff(self, i: int) -> MatF:
        c = self.terms.get(i)
        return c if c is not None else MatF.zero(self.n)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        if other.n != self.n:
            raise DimensionMismatch("operator sizes differ")
        out = dict(self.terms)
        for i, c in other.terms.items():
            out[i] = out[i] + c if i in out else c
        return type(self)(out, self.n, check=False)

    def __neg__(self):
        return type(self)({i: -c for i, c in self.terms.items()}, self.n, check=False)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "_Operator":
        return type(self)({i: m * c for i, m in self.terms.items()}, self.n, check=False)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        if self.n != other.n:
            return False
        orders = set(self.terms) | set(other.terms)
        return all(self.coeff(i) == other.coeff(i) for i in orders)

    __hash__ = None

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, orders={list(self.terms)})"


class OperatorX(_Operator):
    """L = sum_i a_i(x) d_x^i, acting on the left."""

    var = "x"
    __slots__ = ()


class OperatorZ(_Operator):
    """psi B = sum_j (d_z^j psi) b_j(z), acting on the right."""

    var = "z"
    __slots__ = ()


def _check_size(n1: int, n2: int):
    if n1 != n2:
        raise DimensionMismatch(f"size {n1} vs {n2}")


def apply_x(L: OperatorX, psi: WaveFunction) -> WaveFunction:
    _check_size(L.n, psi.n)
    return WaveFunction(apply_x_matrix(L, psi.M))


def apply_z(psi: WaveFunction, B: OperatorZ) -> WaveFunction:
    _check_size(B.n, psi.n)
    return WaveFunction(apply_z_matrix(psi.M, B))


def apply_x_matrix(L: OperatorX, M: MatF) -> MatF:
    """Action on e^{xz} M without the nonzero requirement."""
    cur, acc = M, MatF.zero(M.n)
    for i in range(L.order + 1):
        if i:
            cur = cur * _ZF + cur.diff_x()
        a = L.terms.get(i)
        if a is not None:
            acc = acc + a @ cur
    return acc


def apply_z_matrix(M: MatF, B: OperatorZ) -> MatF:
    cur, acc = M, MatF.zero(M.n)
    for j in range(B.order + 1):
        if j:
            cur = cur * _XF + cur.diff_z()
        b = B.terms.get(j)
        if b is not None:
            acc = acc + cur @ b
    return acc


def _derivatives(c: MatF, upto: int, var: int) -> list[MatF]:
    out = [c]
    for _ in range(upto):
        out.append(out[-1].diff_x() if var == 0 else out[-1].diff_z())
    return out


def compose_x(L1: OperatorX, L2: OperatorX) -> OperatorX:
    """L1 L2 by the generalized Leibniz rule d^i c = sum_t C(i,t) c^{(t)} d^{i-t}."""
    _check_size(L1.n, L2.n)
    out: dict[int, MatF] = {}
    top = L1.order
    ders = {k: _derivatives(c, max(top, 0), 0) for k, c in L2.terms.items()}
    for i, a in L1.terms.items():
        for k in L2.terms:
            for t in range(i + 1):
                ct = ders[k][t]
                if ct.is_zero():
                    continue
                term = (a @ ct) * binomial(i, t)
                o = i - t + k
                out[o] = out[o] + term if o in out else term
    return OperatorX(out, L1.n, check=False)


def compose_z(B1: OperatorZ, B2: OperatorZ) -> OperatorZ:
    """Product with (psi B1) B2 = psi compose_z(B1, B2)."""
    _check_size(B1.n, B2.n)
    out: dict[int, MatF] = {}
    top = B2.order
    ders = {j: _derivatives(b, max(top, 0), 1) for j, b in B1.terms.items()}
    for k, b2 in B2.terms.items():
        for j in B1.terms:
            for t in range(k + 1):
                bt = ders[j][t]
                if bt.is_zero():
                    continue
                term = (bt @ b2) * binomial(k, t)
                o = j + k - t
                out[o] = out[o] + term if o in out else term
    return OperatorZ(out, B1.n, check=False)


def commutator_x(L1: OperatorX, L2: OperatorX) -> OperatorX:
    return compose_x(L1, L2) - compose_x(L2, L1)


def ad_z(F: OperatorZ, B: OperatorZ) -> OperatorZ:
    """(ad F)(B) for right operators: psi (ad F)(B) = (psi F) B - (psi B) F."""
    return compose_z(F, B) - compose_z(B, F)


def ad_power(L: OperatorX, theta: OperatorX, r: int) -> OperatorX:
    """(ad L)^r (theta)."""
    if r < 0:
        raise ArithError("ad power must be non-negative")
    out = theta
    for _ in range(r):
        out = commutator_x(L, out)
    return out


def ad_power_z(F: OperatorZ, B: OperatorZ, r: int) -> OperatorZ:
    out = B
    for _ in range(r):
        out = ad_z(F, out)
    return out


def degad_coefficient(L: OperatorX, theta: OperatorX, r: int) -> MatF:
    """Coefficient of d_x^r in [L, theta] from the closed double sum.

    With L = sum L_j d^j (order l) and theta = sum th_j d^j (order m)::

        a_r = sum_{k+s=r} ( sum_{j=k}^{l} C(j,k) L_j th_s^{(j-k)}
                            - sum_{j=s}^{m} C(j,s) th_j L_k^{(j-s)} )
    """
    _check_size(L.n, theta.n)
    n = L.n
    l, m = L.order, theta.order
    acc = MatF.zero(n)
    if l < 0 or m < 0 or r < 0 or r > l + m:
        return acc
    for k in range(0, min(r, l) + 1):
        s = r - k
        if s > m:
            continue
        ths = _derivatives(theta.coeff(s), l, 0)
        for j in range(k, l + 1):
            Lj = L.terms.get(j)
            if Lj is not None:
                acc = acc + (Lj @ ths[j - k]) * binomial(j, k)
        Lks = _derivatives(L.coeff(k), m, 0)
        for j in range(s, m + 1):
            tj = theta.terms.get(j)
            if tj is not None:
                acc = acc - (tj @ Lks[j - s]) * binomial(j, s)
    return acc


def check_left_eigen(L: OperatorX, psi: WaveFunction, F: MatF) -> bool:
    """True iff L psi = psi F exactly."""
    if F.depends_on_x():
        raise VariableDependenceError("eigenvalue F must depend on z only")
    _check_size(L.n, F.n)
    return apply_x_matrix(L, psi.M) == psi.M @ F


def check_right_eigen(psi: WaveFunction, B: OperatorZ, theta: MatF) -> bool:
    """True iff psi B = theta psi exactly."""
    if theta.depends_on_z():
        raise VariableDependenceError("eigenvalue theta must depend on x only")
    _check_size(B.n, theta.n)
    return apply_z_matrix(psi.M, B) == theta @ psi.M


# -- JSON -------------------------------------------------------------------

def operator_to_json(op: _Operator) -> dict:
    return {
        "var": op.var,
        "n": op.n,
        "terms": [{"order": i, "coeff": matf_to_json(c)} for i, c in op.terms.items()],
    }


def operator_from_json(d) -> _Operator:
    try:
        var = d["var"]
        terms = {int(t["order"]): matf_from_json(t["coeff"]) for t in d["terms"]}
    except (KeyError, TypeError) as exc:
        raise ArithError(f"bad operator encoding: {exc}") from exc
    cls = {"x": OperatorX, "z": OperatorZ}.get(var)
    if cls is None:
        raise ArithError(f"operator var must be 'x' or 'z', got {var!r}")
    return cls(terms, d.get("n"))


def wave_to_json(psi: WaveFunction) -> dict:
    return {"n": psi.n, "prefactor": "exp(x*z)", "matrix": matf_to_json(psi.M)}


def wave_from_json(d) -> WaveFunction:
    try:
        if d.get("prefactor", "exp(x*z)") != "exp(x*z)":
            raise ArithError("only the exp(x*z) prefactor is supported")
        return WaveFunction(matf_from_json(d["matrix"]))
    except (KeyError, AttributeError, TypeError) as exc:
        raise ArithError(f"bad wave function encoding: {exc}") from exc


__all__ = [
    "WaveFunction", "OperatorX", "OperatorZ", "VariableDependenceError",
    "apply_x", "apply_z", "compose_x", "compose_z", "commutator_x", "ad_z",
    "ad_power", "ad_power_z", "degad_coefficient", "check_left_eigen",
    "check_right_eigen", "operator_to_json", "operator_from_json",
    "wave_to_json", "wave_from_json", "commutator", "apply_x_matrix", "apply_z_matrix",
]
