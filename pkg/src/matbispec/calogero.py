"""A 2x2 bispectral triple with matrix eigenvalues on both sides.

psi = e^{xz} M(x, z) is fixed.  A second-order operator in x has psi as
eigenfunction with eigenvalue diag(0, z^2), and a third-order operator in z
has psi as eigenfunction with eigenvalue theta(x) = [[x, 0], [x^2(x-2), x]].
The admissible z-side eigenvalues of degree <= 2 form a five-parameter
family; for each of them the x-operator is given in closed form.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .arith import ArithError, BiFraction, BiPoly, MatF, Q, X, Z, const_matrix
from .nilpotent import ThetaPoly
from .operators import OperatorX, OperatorZ, WaveFunction

_x = BiFraction(X)
_z = BiFraction(Z)
_XM2 = X - 2  # the only non-monomial denominator factor in this example


class NotInGammaC(ArithError):
    pass


def _xpoly(coeffs) -> BiPoly:
    """Polynomial in x from ascending coefficients."""
    return BiPoly({(i, 0): c for i, c in enumerate(coeffs)})


def _over(num: BiPoly, xpow: int, xm2pow: int) -> BiFraction:
    """num / (x^xpow (x-2)^xm2pow)."""
    return BiFraction.from_factors(num, (xpow, 0), [(_XM2, xm2pow)] if xm2pow else [])


# ---------------------------------------------------------------------------
# fixed data
# ---------------------------------------------------------------------------

def calogero_wave() -> WaveFunction:
    pre = 1 / ((_x - 2) * _x * _z)
    m11 = (_x ** 3 * _z ** 2 - 2 * _x ** 2 * _z ** 2 - 2 * _x ** 2 * _z + 3 * _x * _z + 2 * _x - 2) / (_x * _z)
    m12 = 1 / _x
    m21 = (_x * _z - 2) / _z
    m22 = _x ** 2 * _z - 2 * _x * _z - _x + 1
    return WaveFunction(MatF([[m11 * pre, m12 * pre], [m21 * pre, m22 * pre]]))


def calogero_l() -> OperatorX:
    xm2 = _x - 2
    c2 = const_matrix([[0, 0], [0, 1]])
    c1 = MatF([[0, 1 / (xm2 * _x ** 2)], [-1 / xm2, 0]])
    c0 = MatF([
        [-1 / (_x ** 2 * xm2 ** 2), (_x - 1) / (_x ** 3 * xm2 ** 2)],
        [(2 * _x - 1) / (_x * xm2 ** 2), -(2 * _x ** 2 - 4 * _x + 3) / (_x ** 2 * xm2 ** 2)],
    ])
    return OperatorX({0: c0, 1: c1, 2: c2})


def calogero_b() -> OperatorZ:
    return OperatorZ({
        3: const_matrix([[0, 0], [1, 0]]),
        2: MatF([[0, 0], [-(2 * _z + 1) / _z, 0]]),
        1: MatF([[1, 0], [2 * (_z - 1) / _z ** 2, 1]]),
        0: MatF([[-1 / _z, 0], [6 / _z ** 3, 1 / _z]]),
    })


def calogero_theta() -> MatF:
    return MatF([[_x, 0], [_x ** 2 * (_x - 2), _x]])


def calogero_f() -> MatF:
    return MatF([[0, 0], [0, _z ** 2]])


def calogero_fixture() -> tuple[WaveFunction, OperatorX, OperatorZ, MatF, MatF]:
    """(psi, L, B, theta, F)."""
    return calogero_wave(), calogero_l(), calogero_b(), calogero_theta(), calogero_f()


# ---------------------------------------------------------------------------
# the admissible eigenvalues F(z)
# ---------------------------------------------------------------------------

def as_zpoly(F) -> ThetaPoly:
    if isinstance(F, ThetaPoly):
        if F.var != "z":
            raise ArithError("F must be a polynomial in z")
        if F.n != 2:
            raise ArithError("F must be 2x2")
        return F
    if isinstance(F, MatF):
        if F.n != 2:
            raise ArithError("F must be 2x2")
        return ThetaPoly.from_matf(F, "z")
    raise TypeError("F must be a ThetaPoly or MatF")


def _entries(F: ThetaPoly, d: int) -> tuple:
    c = F.coeff(d)
    return tuple(c.rows[i][j].constant_value() for i in range(2) for j in range(2))


def gamma_c_residuals(F) -> list:
    """The seven linear constraints on the z^0, z^1, z^2 coefficients (all zero iff admissible)."""
    F = as_zpoly(F)
    f0_11, f0_12, f0_21, f0_22 = _entries(F, 0)
    f1_11, f1_12, f1_21, f1_22 = _entries(F, 1)
    f2_11, f2_12, _, _ = _entries(F, 2)
    return [
        f0_12,
        f0_21 - (f0_22 - f0_11),
        f1_12 - f1_11,
        f1_22 + f1_11,
        f1_21 - (f0_11 - f0_22 - f1_11),
        2 * f2_11 - (f0_11 - f0_22 - f1_11),
        2 * f2_12 - (f1_11 + f0_11 - f0_22),
    ]


def gamma_c_membership(F) -> bool:
    return all(r == 0 for r in gamma_c_residuals(F))


def gamma_c_params(F) -> tuple:
    """(a, b, c, d, e) with F = a*al1 + b*al2 + c*al3 + d*al4 + e*al5 + z^3 p."""
    F = as_zpoly(F)
    if not gamma_c_membership(F):
        raise NotInGammaC("F is not an admissible eigenvalue")
    f0 = _entries(F, 0)
    f1 = _entries(F, 1)
    f2 = _entries(F, 2)
    return (f0[0], f0[3], f1[0], 2 * f2[2], 2 * f2[3])


def from_params(a, b, c, d, e, tail: ThetaPoly | None = None) -> ThetaPoly:
    half = Q(1, 2)
    F0 = const_matrix([[a, 0], [b - a, b]])
    F1 = const_matrix([[c, c], [a - b - c, -c]])
    F2 = const_matrix([[(a - b - c) * half, (c + a - b) * half], [d * half, e * half]])
    out = ThetaPoly(2, (F0, F1, F2), "z")
    if tail is not None:
        out = out + tail.shift(3)
    return out


def basis_E_c() -> list[ThetaPoly]:
    """alpha_1..alpha_5 spanning the admissible eigenvalues modulo z^3."""
    return [from_params(*(1 if i == k else 0 for i in range(5))) for k in range(5)]


def random_member_c(rng: random.Random, lo: int = -5, hi: int = 5, tail_degree: int = -1) -> ThetaPoly:
    params = [rng.randint(lo, hi) for _ in range(5)]
    tail = None
    if tail_degree >= 0:
        tail = ThetaPoly(2, tuple(
            const_matrix([[rng.randint(lo, hi) for _ in range(2)] for _ in range(2)])
            for _ in range(tail_degree + 1)), "z")
    return from_params(*params, tail=tail)


# ---------------------------------------------------------------------------
# F -> L
# ---------------------------------------------------------------------------

def build_l(F) -> OperatorX:
    """Second-order operator L with L psi = psi F, for admissible F of degree <= 2."""
    F = as_zpoly(F)
    if F.degree > 2:
        raise ArithError("build_l is only available for F of degree <= 2")
    if not gamma_c_membership(F):
        raise NotInGammaC("F is not an admissible eigenvalue")
    s0_11, s0_12, s0_21, s0_22 = _entries(F, 0)
    s1_11, s1_12, s1_21, s1_22 = _entries(F, 1)
    s2_11, s2_12, s2_21, s2_22 = _entries(F, 2)

    a11 = _over(_xpoly([
        -3 * s2_21,
        -s2_22 + 2 * s2_21 - 11 * s2_11 - 2 * s1_21,
        -3 * s2_12 + 12 * s2_11 + s1_21,
        3 * s2_12 - 4 * s2_11 + 2 * s1_12 + 4 * s0_11,
        -s1_12 - 4 * s0_11,
        s0_11,
    ]), 3, 2)
    a21 = _over(_xpoly([
        -9 * s2_21,
        -s2_22 + 11 * s2_21 + s2_11 + 4 * s1_21,
        2 * s2_22 - 4 * s2_21 - s2_12 + 2 * s1_22 - 4 * s1_21 - 2 * s1_11 + 4 * s0_21,
        -s1_22 + s1_21 + s1_11 - 4 * s0_21,
        s0_21,
    ]), 2, 2)
    a12 = _over(_xpoly([
        -s2_21,
        -s2_22 - 7 * s2_11,
        s2_22 - s2_12 + 5 * s2_11 - 2 * s1_22 + 2 * s1_11,
        s2_12 + s1_22 - 4 * s1_12 - s1_11,
        -s2_12 + 4 * s1_12 + 4 * s0_12,
        -s1_12 - 4 * s0_12,
        s0_12,
    ]), 4, 2)
    a22 = _over(_xpoly([
        -5 * s2_21,
        -3 * s2_22 + 4 * s2_21 - s2_11 + 2 * s1_21,
        4 * s2_22 + 3 * s2_12 - s1_21,
        -2 * s2_22 - s2_12 - 2 * s1_12 + 4 * s0_22,
        s1_12 - 4 * s0_22,
        s0_22,
    ]), 3, 2)
    b11 = _over(_xpoly([s2_21, 0, -s2_12 - 2 * s1_11, s1_11]), 2, 1)
    b12 = _over(_xpoly([s2_22 - s2_11, 2 * s2_12, -s2_12 - 2 * s1_12, s1_12]), 2, 1)
    b21 = _over(_xpoly([-2 * s2_21, -s2_22 + s2_21 + s2_11 - 2 * s1_21, s1_21]), 1, 1)
    b22 = _over(_xpoly([-s2_21, 0, s2_12 - 2 * s1_22, s1_22]), 2, 1)
    return OperatorX({
        0: MatF([[a11, a12], [a21, a22]]),
        1: MatF([[b11, b12], [b21, b22]]),
        2: const_matrix([[s2_11, s2_12], [s2_21, s2_22]]),
    }, 2)


# ---------------------------------------------------------------------------
# reference data for the admissible family (used as independent oracles)
# ---------------------------------------------------------------------------

def product_head_closed(p1: tuple, p2: tuple) -> tuple[MatF, MatF, MatF]:
    """z^0, z^1, z^2 coefficients of F1 F2 in terms of the parameters of each factor."""
    a1, b1, c1, d1, e1 = p1
    a2, b2, c2, d2, e2 = p2
    half = Q(1, 2)
    u = a1 * c2 + b2 * c1
    H0 = const_matrix([[a1 * a2, 0], [b1 * b2 - a1 * a2, b1 * b2]])
    H1 = const_matrix([[u, u], [a1 * a2 - b1 * b2 - u, -u]])
    h21 = (b2 * e1 - a2 * e1 + b1 * d2 + a2 * d1 - 3 * b1 * c2 + 3 * a1 * c2 + 2 * b2 * c1
           - 2 * a2 * c1 - b1 * b2 + a1 * b2 + a2 * b1 - a1 * a2)
    h22 = b1 * e2 + b2 * e1 - b1 * c2 + a1 * c2 - b1 * b2 + a1 * b2 + a2 * b1 - a1 * a2
    H2 = const_matrix([
        [(a1 * a2 - b1 * b2 - u) * half, (u + a1 * a2 - b1 * b2) * half],
        [h21 * half, h22 * half],
    ])
    return H0, H1, H2


def _zp(*coeffs_by_entry) -> ThetaPoly:
    """Build a 2x2 z-polynomial from {(i, j): [c0, c1, ...]} given as one dict."""
    (entries,) = coeffs_by_entry
    deg = max(len(v) for v in entries.values()) - 1
    coeffs = []
    for d in range(deg + 1):
        rows = [[0, 0], [0, 0]]
        for (i, j), cs in entries.items():
            if d < len(cs):
                rows[i - 1][j - 1] = cs[d]
        coeffs.append(const_matrix(rows))
    return ThetaPoly(2, tuple(coeffs), "z")


def _q(a, b=1):
    return Q(a, b)


def product_table() -> dict[tuple[int, int], ThetaPoly]:
    """All 25 products alpha_i alpha_j from the reference table.

    Sixteen products among alpha_1, alpha_3, alpha_4, alpha_5 are listed
    explicitly; those involving alpha_2 follow from alpha_2 = I - alpha_1.
    """
    h, q = _q(1, 2), _q(1, 4)
    t = {
        (1, 1): {(1, 1): [1, 0, h, h, q], (1, 2): [0, 0, h, 0, q],
                 (2, 1): [-1, 1, -h, h], (2, 2): [0, 0, -h, h]},
        (1, 3): {(1, 1): [0, 1, -h, 0, -q], (1, 2): [0, 1, h, 0, q],
                 (2, 1): [0, -1, _q(3, 2), -h], (2, 2): [0, -1, h, h]},
        (1, 4): {(1, 1): [0, 0, 0, 0, q]},
        (1, 5): {(1, 2): [0, 0, 0, 0, q]},
        (3, 1): {(1, 1): [0, 0, 0, 1, -q], (1, 2): [0, 0, 0, h, -q],
                 (2, 1): [0, 0, -1, -h], (2, 2): [0, 0, 0, -h]},
        (3, 3): {(1, 1): [0, 0, 0, _q(-3, 2), q], (1, 2): [0, 0, 0, -h, -q],
                 (2, 1): [0, 0, 0, h], (2, 2): [0, 0, 0, -h]},
        (3, 4): {(1, 1): [0, 0, 0, h, q], (2, 1): [0, 0, 0, -h]},
        (3, 5): {(1, 2): [0, 0, 0, h, q], (2, 2): [0, 0, 0, -h]},
        (4, 1): {(2, 1): [0, 0, h, 0, q], (2, 2): [0, 0, 0, 0, q]},
        (4, 3): {(2, 1): [0, 0, 0, h, -q], (2, 2): [0, 0, 0, h, q]},
        (4, 4): {(1, 1): [0]},
        (4, 5): {(1, 1): [0]},
        (5, 1): {(2, 1): [0, 0, -h, h]},
        (5, 3): {(2, 1): [0, 0, 0, -h], (2, 2): [0, 0, 0, -h]},
        (5, 4): {(2, 1): [0, 0, 0, 0, q]},
        (5, 5): {(2, 2): [0, 0, 0, 0, q]},
    }
    out = {k: _zp(v) for k, v in t.items()}
    al = {i + 1: a for i, a in enumerate(basis_E_c())}
    one = ThetaPoly.constant(MatF.identity(2), "z")
    # alpha_2 = I - alpha_1
    for j in (1, 3, 4, 5):
        out[(2, j)] = al[j] - out[(1, j)]
        out[(j, 2)] = al[j] - out[(j, 1)]
    out[(2, 2)] = one - al[1] - al[1] + out[(1, 1)]
    return dict(sorted(out.items()))


__all__ = [
    "calogero_fixture", "calogero_wave", "calogero_l", "calogero_b", "calogero_theta",
    "calogero_f", "gamma_c_membership", "gamma_c_residuals", "gamma_c_params",
    "from_params", "basis_E_c", "random_member_c", "build_l", "product_head_closed",
    "product_table", "as_zpoly", "NotInGammaC",
]
