"""Exact scalar, polynomial, fraction and matrix kernel.

Everything lives over Q.  ``BiPoly`` is a sparse polynomial in the two
commuting symbols x and z, ``BiFraction`` a quotient of two of them and
``MatF`` a square matrix of fractions.  Denominators are kept in a
partially factored form (monomial times powers of "atoms") so that sums and
derivatives stay small without a multivariate gcd; equality never relies
on that form and is decided by cross-multiplication.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

import gmpy2

Q = gmpy2.mpq
_MPQ = type(Q(0))


class ArithError(ValueError):
    """Invalid input to an exact-arithmetic operation."""


class DimensionMismatch(ArithError):
    pass


class NotXPolynomial(ArithError):
    def __init__(self, msg: str = "not an x-polynomial"):
        super().__init__(msg)


def rational(value) -> gmpy2.mpq:
    """Coerce an int, Fraction, mpq or ``"p/q"`` string to an exact rational."""
    if isinstance(value, _MPQ):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction, str)) or type(value).__name__ == "mpz":
        return Q(value)
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def _grlex(e: tuple[int, int]) -> tuple[int, int]:
    return (e[0] + e[1], e[0])


# ---------------------------------------------------------------------------
# BiPoly
# ---------------------------------------------------------------------------

class BiPoly:
    """Polynomial in x and z with rational coefficients.

    ``terms`` maps ``(xexp, zexp)`` to a nonzero coefficient.  Instances are
    treated as immutable.
    """

    __slots__ = ("terms", "_hash", "_key")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for e, c in dict(terms).items():
                c = rational(c)
                if c:
                    i, j = e
                    if i < 0 or j < 0:
                        raise ArithError("negative exponent in BiPoly")
                    clean[(int(i), int(j))] = c
        self.terms = clean
        self._hash = None
        self._key = None

    @classmethod
    def _mk(cls, terms: dict) -> "BiPoly":
        p = object.__new__(cls)
        p.terms = terms
        p._hash = None
        p._key = None
        return p

    @classmethod
    def const(cls, c) -> "BiPoly":
        c = rational(c)
        return cls._mk({(0, 0): c} if c else {})

    @classmethod
    def monomial(cls, c, i: int = 0, j: int = 0) -> "BiPoly":
        c = rational(c)
        return cls._mk({(i, j): c} if c else {})

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0, 0) in self.terms)

    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms.get((0, 0)) == 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def depends_on_x(self) -> bool:
        return any(i for i, _ in self.terms)

    def depends_on_z(self) -> bool:
        return any(j for _, j in self.terms)

    # -- structure --------------------------------------------------------
    def constant_term(self):
        return self.terms.get((0, 0), Q(0))

    def coeff(self, i: int, j: int = 0):
        return self.terms.get((i, j), Q(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((i + j for i, j in self.terms), default=-1)

    def deg_x(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    def deg_z(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def leading(self) -> tuple[tuple[int, int], gmpy2.mpq]:
        e = max(self.terms, key=_grlex)
        return e, self.terms[e]

    def min_exps(self) -> tuple[int, int]:
        return (min(i for i, _ in self.terms), min(j for _, j in self.terms))

    def shift(self, di: int, dj: int) -> "BiPoly":
        """Multiply by x^di z^dj (negative shifts must stay within the support)."""
        if not di and not dj:
            return self
        return BiPoly._mk({(i + di, j + dj): c for (i, j), c in self.terms.items()})

    def scale(self, c) -> "BiPoly":
        c = rational(c)
        if not c:
            return ZERO_POLY
        if c == 1:
            return self
        return BiPoly._mk({e: v * c for e, v in self.terms.items()})

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, BiPoly):
            other = BiPoly.const(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return BiPoly._mk(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly._mk({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, BiPoly):
            other = BiPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return BiPoly.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            return self.scale(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return ZERO_POLY
        if len(b) == 1:
            ((bi, bj), bc), = b.items()
            return BiPoly._mk({(i + bi, j + bj): c * bc for (i, j), c in a.items()})
        if len(a) == 1:
            ((ai, aj), ac), = a.items()
            return BiPoly._mk({(i + ai, j + aj): ac * c for (i, j), c in b.items()})
        out: dict = {}
        for (i1, j1), c1 in a.items():
            for (i2, j2), c2 in b.items():
                e = (i1 + i2, j1 + j2)
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return BiPoly._mk({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ArithError("negative power of a polynomial")
        out, base = ONE_POLY, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def diff(self, var: int) -> "BiPoly":
        """Partial derivative; ``var`` is 0 for x and 1 for z."""
        out = {}
        for e, c in self.terms.items():
            k = e[var]
            if k:
                ne = (e[0] - 1, e[1]) if var == 0 else (e[0], e[1] - 1)
                out[ne] = c * k
        return BiPoly._mk(out)

    def diff_x(self) -> "BiPoly":
        return self.diff(0)

    def diff_z(self) -> "BiPoly":
        return self.diff(1)

    def div_exact(self, g: "BiPoly") -> "BiPoly | None":
        """Return ``self / g`` if g divides self in Q[x, z], else None.

        A single divisor is its own Groebner basis, so the division algorithm
        with any monomial order decides divisibility.
        """
        if not g.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.terms:
            return ZERO_POLY
        (gi, gj), gc = g.leading()
        if len(g.terms) == 1:
            out = {}
            for (i, j), c in self.terms.items():
                if i < gi or j < gj:
                    return None
                out[(i - gi, j - gj)] = c / gc
            return BiPoly._mk(out)
        p = dict(self.terms)
        quot = {}
        while p:
            e = max(p, key=_grlex)
            if e[0] < gi or e[1] < gj:
                return None
            c = p[e] / gc
            me = (e[0] - gi, e[1] - gj)
            quot[me] = c
            for (i, j), v in g.terms.items():
                t = (i + me[0], j + me[1])
                w = p.get(t, 0) - c * v
                if w:
                    p[t] = w
                else:
                    p.pop(t, None)
        return BiPoly._mk(quot)

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, _MPQ)):
            return self.terms == BiPoly.const(other).terms
        return NotImplemented

    def sort_key(self) -> tuple:
        if self._key is None:
            self._key = tuple(sorted(((_grlex(e), e, c) for e, c in self.terms.items()), reverse=True))
        return self._key

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        return f"BiPoly({format_poly(self)})"

    def __str__(self):
        return format_poly(self)


ZERO_POLY = BiPoly._mk({})
ONE_POLY = BiPoly._mk({(0, 0): Q(1)})
X = BiPoly._mk({(1, 0): Q(1)})
Z = BiPoly._mk({(0, 1): Q(1)})


def format_poly(p: BiPoly) -> str:
    if not p.terms:
        return "0"
    parts = []
    for e in sorted(p.terms, key=_grlex, reverse=True):
        c = p.terms[e]
        mono = "*".join(
            f"{v}^{k}" if k > 1 else v for v, k in (("x", e[0]), ("z", e[1])) if k
        )
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# BiFraction
# ---------------------------------------------------------------------------

def _as_atom(r: BiPoly) -> tuple[gmpy2.mpq, BiPoly]:
    """Split a monomial-free, non-constant polynomial into (lc, monic atom)."""
    _, lc = r.leading()
    return lc, r.scale(1 / lc)


class BiFraction:
    """Rational function ``num / den`` in x and z.

    The denominator is stored as ``x^a z^b * prod(atom_k ** e_k)`` with monic
    atoms that carry no monomial factor, so the denominator is always monic
    in grlex order.  Atoms are not assumed irreducible or coprime; they only
    let sums and derivatives reuse common factors.
    """

    __slots__ = ("num", "mono", "atoms", "_den")

    def __init__(self, num=0, den=None):
        if not isinstance(num, BiPoly):
            num = BiPoly.const(num)
        if den is None:
            f = BiFraction._norm(num, (0, 0), {})
        else:
            if not isinstance(den, BiPoly):
                den = BiPoly.const(den)
            if den.is_zero():
                raise ZeroDivisionError("BiFraction with zero denominator")
            mx, mz = den.min_exps()
            rest = den.shift(-mx, -mz)
            if rest.is_constant():
                f = BiFraction._norm(num.scale(1 / rest.constant_term()), (mx, mz), {})
            else:
                lc, atom = _as_atom(rest)
                f = BiFraction._norm(num.scale(1 / lc), (mx, mz), {atom: 1})
        self.num, self.mono, self.atoms, self._den = f.num, f.mono, f.atoms, f._den

    @classmethod
    def _raw(cls, num: BiPoly, mono=(0, 0), atoms=None) -> "BiFraction":
        f = object.__new__(cls)
        f.num = num
        f.mono = mono
        f.atoms = atoms if atoms is not None else {}
        f._den = None
        return f

    @classmethod
    def _norm(cls, num: BiPoly, mono, atoms: dict) -> "BiFraction":
        if not num.terms:
            return ZERO
        a, b = mono
        if a or b:
            nx, nz = num.min_exps()
            sx, sz = min(nx, a), min(nz, b)
            if sx or sz:
                num = num.shift(-sx, -sz)
                a, b = a - sx, b - sz
        if atoms:
            kept = {}
            for p, e in atoms.items():
                while e:
                    q = num.div_exact(p)
                    if q is None:
                        break
                    num, e = q, e - 1
                if e:
                    kept[p] = e
            atoms = kept
        return cls._raw(num, (a, b), atoms)

    @classmethod
    def from_factors(cls, num, mono=(0, 0), factors: Iterable[tuple[BiPoly, int]] = ()) -> "BiFraction":
        """Build ``num / (x^a z^b * prod(f ** e))`` keeping each f as its own atom."""
        if not isinstance(num, BiPoly):
            num = BiPoly.const(num)
        a, b = mono
        atoms: dict = {}
        for f, e in factors:
            mx, mz = f.min_exps()
            rest = f.shift(-mx, -mz)
            a, b = a + e * mx, b + e * mz
            if rest.is_constant():
                num = num.scale(1 / rest.constant_term() ** e)
                continue
            lc, atom = _as_atom(rest)
            num = num.scale(1 / lc ** e)
            atoms[atom] = atoms.get(atom, 0) + e
        return cls._norm(num, (a, b), atoms)

    # -- views ------------------------------------------------------------
    def is_poly(self) -> bool:
        return not self.atoms and self.mono == (0, 0)

    @property
    def den(self) -> BiPoly:
        if self._den is None:
            d = BiPoly.monomial(1, *self.mono)
            for p, e in self.atoms.items():
                d = d * p ** e
            self._den = d
        return self._den

    def is_zero(self) -> bool:
        return not self.num.terms

    def is_constant(self) -> bool:
        return self.is_poly() and self.num.is_constant()

    def constant_value(self):
        if not self.is_constant():
            raise ArithError("not a constant")
        return self.num.constant_term()

    def depends_on_x(self) -> bool:
        return self.num.depends_on_x() or self.mono[0] > 0 or any(p.depends_on_x() for p in self.atoms)

    def depends_on_z(self) -> bool:
        return self.num.depends_on_z() or self.mono[1] > 0 or any(p.depends_on_z() for p in self.atoms)

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def coerce(v) -> "BiFraction":
        if isinstance(v, BiFraction):
            return v
        if isinstance(v, BiPoly):
            return BiFraction._raw(v)
        return BiFraction._raw(BiPoly.const(v))

    def _common(self, other: "BiFraction"):
        """Common denominator data and the two cofactors."""
        a1, b1 = self.mono
        a2, b2 = other.mono
        mono = (max(a1, a2), max(b1, b2))
        atoms = dict(self.atoms)
        for p, e in other.atoms.items():
            if atoms.get(p, 0) < e:
                atoms[p] = e
        c1 = BiPoly.monomial(1, mono[0] - a1, mono[1] - b1)
        c2 = BiPoly.monomial(1, mono[0] - a2, mono[1] - b2)
        for p, e in atoms.items():
            d1 = e - self.atoms.get(p, 0)
            d2 = e - other.atoms.get(p, 0)
            if d1:
                c1 = c1 * p ** d1
            if d2:
                c2 = c2 * p ** d2
        return mono, atoms, c1, c2

    def __add__(self, other):
        other = BiFraction.coerce(other)
        if not other.num.terms:
            return self
        if not self.num.terms:
            return other
        if self.is_poly() and other.is_poly():
            return BiFraction._raw(self.num + other.num)
        if self.mono == other.mono and self.atoms == other.atoms:
            return BiFraction._norm(self.num + other.num, self.mono, dict(self.atoms))
        mono, atoms, c1, c2 = self._common(other)
        return BiFraction._norm(self.num * c1 + other.num * c2, mono, atoms)

    __radd__ = __add__

    def __neg__(self):
        return BiFraction._raw(-self.num, self.mono, self.atoms)

    def __sub__(self, other):
        return self + (-BiFraction.coerce(other))

    def __rsub__(self, other):
        return BiFraction.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, MatF):
            return NotImplemented
        other = BiFraction.coerce(other)
        if not self.num.terms or not other.num.terms:
            return ZERO
        if self.is_poly() and other.is_poly():
            return BiFraction._raw(self.num * other.num)
        atoms = dict(self.atoms)
        for p, e in other.atoms.items():
            atoms[p] = atoms.get(p, 0) + e
        mono = (self.mono[0] + other.mono[0], self.mono[1] + other.mono[1])
        return BiFraction._norm(self.num * other.num, mono, atoms)

    __rmul__ = __mul__

    def inverse(self) -> "BiFraction":
        if not self.num.terms:
            raise ZeroDivisionError("inverse of zero BiFraction")
        return BiFraction.from_factors(
            BiPoly.monomial(1, *self.mono) * _expand(self.atoms), (0, 0), [(self.num, 1)]
        )

    def __truediv__(self, other):
        return self * BiFraction.coerce(other).inverse()

    def __rtruediv__(self, other):
        return BiFraction.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def diff(self, var: int) -> "BiFraction":
        """Partial derivative (var 0 = x, 1 = z) by the quotient rule on the factored denominator."""
        if self.is_poly():
            return BiFraction._raw(self.num.diff(var))
        n = self.num
        av = self.mono[var]
        v = (1, 0) if var == 0 else (0, 1)
        if not av:
            v = (0, 0)
        radical = list(self.atoms)
        rad = _expand({p: 1 for p in radical})
        num = n.diff(var).shift(*v) * rad
        if av:
            num = num - (n * rad).scale(av)
        for k, p in enumerate(radical):
            dp = p.diff(var)
            if dp.terms:
                others = _expand({q: 1 for i, q in enumerate(radical) if i != k})
                num = num - (n * dp * others).shift(*v).scale(self.atoms[p])
        atoms = {p: e + 1 for p, e in self.atoms.items()}
        mono = (self.mono[0] + v[0], self.mono[1] + v[1])
        return BiFraction._norm(num, mono, atoms)

    def diff_x(self) -> "BiFraction":
        return self.diff(0)

    def diff_z(self) -> "BiFraction":
        return self.diff(1)

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (BiFraction, BiPoly, int, Fraction, _MPQ)):
            return frac_eq(self, BiFraction.coerce(other))
        return NotImplemented

    __hash__ = None  # equality is semantic (cross-multiplication)

    def __repr__(self):
        return f"BiFraction({self})"

    def __str__(self):
        if self.is_poly():
            return format_poly(self.num)
        return f"({format_poly(self.num)})/({format_poly(self.den)})"


def _expand(atoms: dict) -> BiPoly:
    out = ONE_POLY
    for p, e in atoms.items():
        out = out * p ** e
    return out


ZERO = BiFraction._raw(ZERO_POLY)
ONE = BiFraction._raw(ONE_POLY)


def frac(num, den=None) -> BiFraction:
    return BiFraction(num, den)


def frac_eq(a: BiFraction, b: BiFraction) -> bool:
    """True iff a.num * b.den - b.num * a.den is the zero polynomial."""
    a, b = BiFraction.coerce(a), BiFraction.coerce(b)
    if a.is_poly() and b.is_poly():
        return a.num == b.num
    _, _, c1, c2 = a._common(b)
    return (a.num * c1 - b.num * c2).is_zero()


# ---------------------------------------------------------------------------
# MatF
# ---------------------------------------------------------------------------

class MatF:
    """Square matrix of BiFraction entries."""

    __slots__ = ("n", "rows")

    def __init__(self, rows: Sequence[Sequence]):
        n = len(rows)
        if n < 1 or any(len(r) != n for r in rows):
            raise DimensionMismatch("MatF needs a nonempty square array")
        self.n = n
        self.rows = tuple(tuple(BiFraction.coerce(v) for v in r) for r in rows)

    @classmethod
    def _mk(cls, rows) -> "MatF":
        m = object.__new__(cls)
        m.rows = rows
        m.n = len(rows)
        return m

    @classmethod
    def zero(cls, n: int) -> "MatF":
        return cls._mk(tuple(tuple(ZERO for _ in range(n)) for _ in range(n)))

    @classmethod
    def identity(cls, n: int) -> "MatF":
        return cls.scalar(n, ONE)

    @classmethod
    def scalar(cls, n: int, c) -> "MatF":
        c = BiFraction.coerce(c)
        return cls._mk(tuple(tuple(c if i == j else ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def unit(cls, n: int, i: int, j: int, c=1) -> "MatF":
        """Matrix unit c*e_ij with 1-based indices; zero when (i, j) is out of range."""
        rows = [[ZERO] * n for _ in range(n)]
        if 1 <= i <= n and 1 <= j <= n:
            rows[i - 1][j - 1] = BiFraction.coerce(c)
        return cls._mk(tuple(tuple(r) for r in rows))

    # -- access -----------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def entries(self):
        for r in self.rows:
            yield from r

    def map(self, f) -> "MatF":
        return MatF._mk(tuple(tuple(f(v) for v in r) for r in self.rows))

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.entries())

    def is_constant(self) -> bool:
        return all(v.is_constant() for v in self.entries())

    def depends_on_x(self) -> bool:
        return any(v.depends_on_x() for v in self.entries())

    def depends_on_z(self) -> bool:
        return any(v.depends_on_z() for v in self.entries())

    def _check(self, other: "MatF"):
        if self.n != other.n:
            raise DimensionMismatch(f"size {self.n} vs {other.n}")

    # -- ring operations --------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, MatF):
            return NotImplemented
        self._check(other)
        return MatF._mk(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other):
        if not isinstance(other, MatF):
            return NotImplemented
        self._check(other)
        return MatF._mk(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __neg__(self):
        return self.map(lambda v: -v)

    def __matmul__(self, other):
        if not isinstance(other, MatF):
            return NotImplemented
        self._check(other)
        n = self.n
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = ZERO
                for a, b in zip(r, c):
                    if a.num.terms and b.num.terms:
                        acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return MatF._mk(tuple(out))

    def __mul__(self, other):
        if isinstance(other, MatF):
            return self @ other
        c = BiFraction.coerce(other)
        return self.map(lambda v: v * c)

    def __rmul__(self, other):
        c = BiFraction.coerce(other)
        return self.map(lambda v: c * v)

    def __pow__(self, k: int):
        if k < 0:
            raise ArithError("negative matrix power")
        out, base = MatF.identity(self.n), self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def diff_x(self) -> "MatF":
        return self.map(lambda v: v.diff(0))

    def diff_z(self) -> "MatF":
        return self.map(lambda v: v.diff(1))

    def __eq__(self, other):
        if not isinstance(other, MatF):
            return NotImplemented
        return self.n == other.n and all(a == b for a, b in zip(self.entries(), other.entries()))

    __hash__ = None

    def __repr__(self):
        return "MatF(" + repr([[str(v) for v in r] for r in self.rows]) + ")"


def commutator(a: MatF, b: MatF) -> MatF:
    """[a, b] = ab - ba."""
    return a @ b - b @ a


def const_matrix(rows: Sequence[Sequence]) -> MatF:
    return MatF([[BiFraction.coerce(rational(v)) for v in r] for r in rows])


def coeff_x(theta: MatF, j: int) -> MatF:
    """Constant matrix of x^j coefficients of an x-polynomial matrix."""
    if j < 0:
        raise ArithError("negative coefficient index")
    rows = []
    for r in theta.rows:
        row = []
        for v in r:
            if not v.is_poly() or v.num.depends_on_z():
                raise NotXPolynomial()
            row.append(BiFraction._raw(BiPoly.const(v.num.coeff(j, 0))))
        rows.append(tuple(row))
    return MatF._mk(tuple(rows))


# ---------------------------------------------------------------------------
# exact linear algebra
# ---------------------------------------------------------------------------

def _integer_rows(A) -> list[list[int]]:
    out = []
    for row in A:
        row = [rational(v) for v in row]
        den = 1
        for v in row:
            den = gmpy2.lcm(den, v.denominator)
        out.append([int(v * den) for v in row])
    return out


def rref(A: Sequence[Sequence], ncols: int | None = None) -> tuple[list[list], list[int]]:
    """Reduced row-echelon form over Q and its pivot columns.

    Forward elimination is fraction-free (Bareiss) on an integer copy of A;
    only the final back-substitution introduces fractions, to get unit pivots.
    """
    M = _integer_rows(A)
    m = len(M)
    k = ncols if ncols is not None else (len(M[0]) if M else 0)
    if any(len(r) != k for r in M):
        raise DimensionMismatch("ragged matrix")
    M = [[gmpy2.mpz(v) for v in r] for r in M]
    prev = gmpy2.mpz(1)
    pivots: list[int] = []
    r = 0
    for c in range(k):
        if r == m:
            break
        p = next((i for i in range(r, m) if M[i][c]), None)
        if p is None:
            continue
        if p != r:
            M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        for i in range(r + 1, m):
            lead = M[i][c]
            Mi, Mr = M[i], M[r]
            for j in range(c + 1, k):
                Mi[j] = (piv * Mi[j] - lead * Mr[j]) // prev
            Mi[c] = gmpy2.mpz(0)
        # untouched rows above keep their scale; rows below are now scaled by piv/prev
        prev = piv
        pivots.append(c)
        r += 1
    R = [[Q(v) for v in M[i]] for i in range(r)]
    for i in range(r - 1, -1, -1):
        c = pivots[i]
        inv = 1 / R[i][c]
        R[i] = [v * inv for v in R[i]]
        for h in range(i):
            f = R[h][c]
            if f:
                R[h] = [a - f * b for a, b in zip(R[h], R[i])]
    return R, pivots


def rank(A: Sequence[Sequence], ncols: int | None = None) -> int:
    return len(rref(A, ncols)[1])


def nullspace(A: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    """Reduced echelon basis of {v : A v = 0}.

    ``ncols`` is required when A has no rows.
    """
    k = ncols if ncols is not None else (len(A[0]) if len(A) else None)
    if k is None:
        raise ArithError("nullspace of an empty matrix needs ncols")
    R, pivots = rref(A, k) if len(A) else ([], [])
    free = [c for c in range(k) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Q(0)] * k
        v[f] = Q(1)
        for row, c in zip(R, pivots):
            v[c] = -row[f]
        basis.append(v)
    if not basis:
        return []
    B, _ = rref(basis, k)
    return B


def mat_vec(A: Sequence[Sequence], v: Sequence) -> list:
    return [sum((rational(a) * rational(b) for a, b in zip(row, v)), Q(0)) for row in A]


# ---------------------------------------------------------------------------
# JSON encodings
# ---------------------------------------------------------------------------

def rational_to_json(q) -> str:
    q = rational(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def rational_from_json(s) -> gmpy2.mpq:
    if isinstance(s, bool):
        raise ArithError("boolean is not a rational")
    if isinstance(s, int):
        return Q(s)
    if not isinstance(s, str):
        raise ArithError(f"bad rational encoding: {s!r}")
    try:
        return Q(s.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ArithError(f"bad rational encoding: {s!r}") from exc


def poly_to_json(p: BiPoly) -> dict:
    return {"terms": [
        {"c": rational_to_json(p.terms[e]), "x": e[0], "z": e[1]}
        for e in sorted(p.terms, key=_grlex, reverse=True)
    ]}


def poly_from_json(d) -> BiPoly:
    try:
        terms = {}
        for t in d["terms"]:
            e = (int(t.get("x", 0)), int(t.get("z", 0)))
            terms[e] = terms.get(e, Q(0)) + rational_from_json(t["c"])
        return BiPoly(terms)
    except (KeyError, TypeError) as exc:
        raise ArithError(f"bad BiPoly encoding: {d!r}") from exc


def frac_to_json(f: BiFraction) -> dict:
    return {"num": poly_to_json(f.num), "den": poly_to_json(f.den)}


def frac_from_json(d) -> BiFraction:
    if isinstance(d, (str, int)):
        return BiFraction.coerce(rational_from_json(d))
    try:
        return BiFraction(poly_from_json(d["num"]), poly_from_json(d.get("den", {"terms": [{"c": "1"}]})))
    except (KeyError, TypeError) as exc:
        raise ArithError(f"bad BiFraction encoding: {d!r}") from exc


def matf_to_json(m: MatF) -> dict:
    return {"n": m.n, "rows": [[frac_to_json(v) for v in r] for r in m.rows]}


def matf_from_json(d) -> MatF:
    try:
        rows = [[frac_from_json(v) for v in r] for r in d["rows"]]
        n = int(d.get("n", len(rows)))
    except (KeyError, TypeError) as exc:
        raise ArithError(f"bad MatF encoding: {d!r}") from exc
    m = MatF(rows)
    if m.n != n:
        raise DimensionMismatch(f"declared n={n} but got {m.n} rows")
    return m


def binomial(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0
