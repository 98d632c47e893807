"""Exact univariate polynomial and rational-function arithmetic.

Coefficients are arbitrary-precision rationals (``fractions.Fraction``), so
every operation in this module is exact and deterministic.  All values are
canonical: polynomials carry no trailing zero coefficients, rational
functions are gcd-reduced with a monic denominator.  Structural equality
therefore coincides with value equality, which is what lets the operator
identity checks elsewhere reduce to ``==``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


def _frac(value: Scalar) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected int or Fraction, got {type(value).__name__}")


class Poly:
    """Dense polynomial over the rationals, coefficients lowest degree first.

    The zero polynomial is canonically the empty coefficient tuple; any
    nonzero polynomial has a nonzero leading coefficient.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly":
        return cls(())

    @classmethod
    def one(cls) -> "Poly":
        return cls((1,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: Scalar) -> "Poly":
        return cls((c,))

    @classmethod
    def monomial(cls, power: int, coeff: Scalar = 1) -> "Poly":
        return cls((0,) * power + (coeff,))

    # -- structure ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def lead(self) -> Fraction:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    # -- ring operations ----------------------------------------------

    def __add__(self, other) -> "Poly":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other) -> "Poly":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return _as_poly(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly(c * other for c in self.coeffs)
        if not isinstance(other, Poly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return Poly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        """Euclidean division; exact over the rational coefficient field."""
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if other.degree() == 0:
            inv = 1 / other.coeffs[0]
            return Poly(c * inv for c in self.coeffs), Poly.zero()
        d = other.degree()
        lead = other.lead()
        r = list(self.coeffs)
        q = [Fraction(0)] * max(len(r) - d, 1)
        while len(r) > d:
            c = r[-1] / lead
            shift = len(r) - 1 - d
            q[shift] = c
            if c != 0:
                for i in range(d):
                    r[shift + i] -= c * other.coeffs[i]
            r.pop()
            while r and r[-1] == 0 and len(r) > d:
                r.pop()
        return Poly(q), Poly(r)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        """Division that must leave no remainder (raises otherwise)."""
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ArithmeticError("inexact polynomial division")
        return q

    # -- calculus and evaluation ---------------------------------------

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def __call__(self, x):
        """Horner evaluation; works for Fraction and float arguments alike."""
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- normal forms ---------------------------------------------------

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        lc = self.lead()
        return self if lc == 1 else self * (1 / lc)

    def primitive_scaled(self) -> "Poly":
        """Scale by a positive rational so coefficients are coprime integers.

        Positive scaling preserves signs everywhere, which is all the Sturm
        machinery needs; it keeps coefficient growth in the remainder
        sequences under control.
        """
        if self.is_zero:
            return self
        den_lcm = 1
        for c in self.coeffs:
            den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
        ints = [c.numerator * (den_lcm // c.denominator) for c in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        return Poly(Fraction(v, g) for v in ints)

    # -- comparison / display -------------------------------------------

    def __eq__(self, other) -> bool:
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("Poly", self.coeffs))

    def __repr__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                term = str(c)
            else:
                var = "x" if i == 1 else f"x^{i}"
                if c == 1:
                    term = var
                elif c == -1:
                    term = f"-{var}"
                else:
                    term = f"{c}*{var}"
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return out


def _as_poly(value) -> "Poly":
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction)):
        return Poly((value,))
    return NotImplemented


def _int_primitive(p: Poly) -> list[int]:
    """Coprime integer coefficients of a positive rational multiple of p."""
    den_lcm = 1
    for c in p.coeffs:
        den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
    ints = [c.numerator * (den_lcm // c.denominator) for c in p.coeffs]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    return [v // g for v in ints] if g > 1 else ints


def _int_pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of integer coefficient lists (b nonzero).

    Each step replaces r by lead(b)*r - top(r)*x^shift*b, so the loop stays
    in integer arithmetic; the accumulated lead(b) powers wash out in the
    primitive reduction done by the caller.
    """
    d = len(b) - 1
    lead = b[-1]
    r = list(a)
    while len(r) > d:
        if r[-1] == 0:
            r.pop()
            continue
        top = r[-1]
        if lead != 1:
            r = [c * lead for c in r]
        shift = len(r) - 1 - d
        for i in range(d):
            r[shift + i] -= top * b[i]
        r.pop()
    while r and r[-1] == 0:
        r.pop()
    return r


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor, computed by a primitive integer
    pseudo-remainder sequence (no rational arithmetic in the loop)."""
    if a.is_zero:
        return b.monic()
    if b.is_zero:
        return a.monic()
    x = _int_primitive(a)
    y = _int_primitive(b)
    while y:
        r = _int_pseudo_rem(x, y)
        g = 0
        for v in r:
            g = math.gcd(g, v)
        if g > 1:
            r = [v // g for v in r]
        x, y = y, r
    lead = x[-1]
    return Poly(Fraction(c, lead) for c in x)


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero or b.is_zero:
        return Poly.zero()
    return (a * b).exact_div(poly_gcd(a, b)).monic()


@lru_cache(maxsize=None)
def hermite_he(n: int) -> Poly:
    """Probabilists' Hermite polynomial He_n.

    Three-term recurrence He_{n+1} = x*He_n - n*He_{n-1} with He_0 = 1,
    He_1 = x.  These are orthogonal against exp(-x^2/2), which matches the
    x^2/4 - 1/2 oscillator used throughout this package.
    """
    if n < 0:
        raise ValueError("Hermite index must be nonnegative")
    if n == 0:
        return Poly.one()
    if n == 1:
        return Poly.x()
    prev, cur = Poly.one(), Poly.x()
    for k in range(1, n):
        prev, cur = cur, Poly.x() * cur - k * prev
    return cur


# ---------------------------------------------------------------------------
# Sturm sequences and real-root counting
# ---------------------------------------------------------------------------

def _sturm_chain(p: Poly) -> list[Poly]:
    # Square-free reduction first so the classical sign-variation count
    # applies verbatim; primitive scaling keeps the integers small.
    g = poly_gcd(p, p.derivative())
    if g.degree() > 0:
        p = p.exact_div(g)
    p = p.primitive_scaled()
    chain = [p]
    if p.degree() > 0:
        chain.append(p.derivative().primitive_scaled())
        while chain[-1].degree() > 0:
            rem = chain[-2] % chain[-1]
            if rem.is_zero:
                break
            chain.append((-rem).primitive_scaled())
    return chain


def _variations(signs: Iterable[int]) -> int:
    nonzero = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(nonzero, nonzero[1:]) if a * b < 0)


def _sign_at(p: Poly, x: Fraction) -> int:
    v = p(x)
    return (v > 0) - (v < 0)


def _sign_at_inf(p: Poly, positive: bool) -> int:
    if p.is_zero:
        return 0
    s = 1 if p.lead() > 0 else -1
    if not positive and p.degree() % 2 == 1:
        s = -s
    return s


def sturm_real_root_count(
    p: Poly,
    lo: Scalar | None = None,
    hi: Scalar | None = None,
) -> int:
    """Count distinct real roots of ``p``, exactly.

    With no bounds the count is over the whole real line.  With bounds the
    count is over the closed interval [lo, hi].  Multiple roots are counted
    once (the chain is built from the square-free part).
    """
    if p.is_zero:
        raise ValueError("root count of the zero polynomial is undefined")
    if p.degree() == 0:
        return 0
    chain = _sturm_chain(p)
    if lo is None and hi is None:
        v_lo = _variations(_sign_at_inf(q, positive=False) for q in chain)
        v_hi = _variations(_sign_at_inf(q, positive=True) for q in chain)
        return v_lo - v_hi
    if lo is None or hi is None:
        raise ValueError("interval count needs both endpoints")
    a, b = Fraction(lo), Fraction(hi)
    if a > b:
        raise ValueError("empty interval")
    v_a = _variations(_sign_at(q, a) for q in chain)
    v_b = _variations(_sign_at(q, b) for q in chain)
    # V(a) - V(b) counts roots in (a, b]; the left endpoint is patched in.
    count = v_a - v_b
    if chain[0](a) == 0:
        count += 1
    return count


# ---------------------------------------------------------------------------
# Reduced rational functions
# ---------------------------------------------------------------------------

class RatFun:
    """Rational function in canonical form: reduced, monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _coerce_poly(num)
        den = Poly.one() if den is None else _coerce_poly(den)
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            num, den = Poly.zero(), Poly.one()
        else:
            g = poly_gcd(num, den)
            if g.degree() > 0:
                num, den = num.exact_div(g), den.exact_div(g)
            lc = den.lead()
            if lc != 1:
                num, den = num * (1 / lc), den * (1 / lc)
        self.num: Poly = num
        self.den: Poly = den

    # -- constructors ---------------------------------------------------

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> "RatFun":
        """Skip canonicalisation; caller guarantees reduced, monic den."""
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def zero(cls) -> "RatFun":
        return cls(Poly.zero())

    @classmethod
    def one(cls) -> "RatFun":
        return cls(Poly.one())

    @classmethod
    def x(cls) -> "RatFun":
        return cls(Poly.x())

    @classmethod
    def constant(cls, c: Scalar) -> "RatFun":
        return cls(Poly.constant(c))

    # -- structure --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_constant(self) -> bool:
        return self.num.degree() <= 0 and self.den.degree() == 0

    def as_fraction(self) -> Fraction:
        if not self.is_constant:
            raise ValueError(f"{self!r} is not constant")
        return self.num[0]

    # -- field operations ---------------------------------------------------

    def __add__(self, other) -> "RatFun":
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        # Knuth-style rational addition: cancel the denominator gcd first so
        # the remaining reduction is against a small polynomial only.
        g = poly_gcd(self.den, other.den)
        if g.degree() == 0:
            return RatFun._raw(
                self.num * other.den + other.num * self.den, self.den * other.den
            )
        left = self.den.exact_div(g)
        right = other.den.exact_div(g)
        num = self.num * right + other.num * left
        if num.is_zero:
            return RatFun._raw(Poly.zero(), Poly.one())
        g2 = poly_gcd(num, g)
        if g2.degree() > 0:
            num = num.exact_div(g2)
            g = g.exact_div(g2)
        return RatFun._raw(num, left * right * g)

    __radd__ = __add__

    def __neg__(self) -> "RatFun":
        return RatFun._raw(-self.num, self.den)

    def __sub__(self, other) -> "RatFun":
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RatFun":
        return _as_ratfun(other) - self

    @staticmethod
    def _mul_reduced(a_num: Poly, a_den: Poly, b_num: Poly, b_den: Poly) -> "RatFun":
        # Cross-cancellation keeps both gcd calls on already-reduced pairs,
        # after which the product is reduced by construction.
        if a_num.is_zero or b_num.is_zero:
            return RatFun._raw(Poly.zero(), Poly.one())
        g1 = poly_gcd(a_num, b_den)
        if g1.degree() > 0:
            a_num = a_num.exact_div(g1)
            b_den = b_den.exact_div(g1)
        g2 = poly_gcd(b_num, a_den)
        if g2.degree() > 0:
            b_num = b_num.exact_div(g2)
            a_den = a_den.exact_div(g2)
        num = a_num * b_num
        den = a_den * b_den
        lc = den.lead()
        if lc != 1:
            num = num * (1 / lc)
            den = den * (1 / lc)
        return RatFun._raw(num, den)

    def __mul__(self, other) -> "RatFun":
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFun._mul_reduced(self.num, self.den, other.num, other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFun":
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFun._mul_reduced(self.num, self.den, other.den, other.num)

    def __rtruediv__(self, other) -> "RatFun":
        return _as_ratfun(other) / self

    def derivative(self) -> "RatFun":
        if self.den.degree() == 0:
            return RatFun._raw(self.num.derivative(), self.den)
        # Cancel the repeated part of the denominator before reducing.
        den_prime = self.den.derivative()
        g = poly_gcd(self.den, den_prime)
        den_red = self.den.exact_div(g)
        num = self.num.derivative() * den_red - self.num * den_prime.exact_div(g)
        return RatFun(num, self.den * den_red)

    def __call__(self, x):
        return self.num(x) / self.den(x)

    # -- comparison / display --------------------------------------------

    def __eq__(self, other) -> bool:
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash(("RatFun", self.num.coeffs, self.den.coeffs))

    def __repr__(self) -> str:
        if self.den == Poly.one():
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


def _coerce_poly(value) -> Poly:
    p = _as_poly(value)
    if p is NotImplemented:
        raise TypeError(f"cannot build a polynomial from {type(value).__name__}")
    return p


def _as_ratfun(value):
    if isinstance(value, RatFun):
        return value
    if isinstance(value, (Poly, int, Fraction)):
        return RatFun(value)
    return NotImplemented


def as_ratfun(value) -> RatFun:
    r = _as_ratfun(value)
    if r is NotImplemented:
        raise TypeError(f"cannot build a rational function from {type(value).__name__}")
    return r


# ---------------------------------------------------------------------------
# Exact determinants
# ---------------------------------------------------------------------------

def poly_det_bareiss(rows: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant of a square polynomial matrix, fraction-free (Bareiss).

    Every division performed by the algorithm is exact, which bounds entry
    growth compared to plain elimination over the rational-function field.
    """
    n = len(rows)
    m = [list(row) for row in rows]
    for row in m:
        if len(row) != n:
            raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Poly.one()
    sign = 1
    prev = Poly.one()
    for k in range(n - 1):
        if m[k][k].is_zero:
            for i in range(k + 1, n):
                if not m[i][k].is_zero:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Poly.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]).exact_div(prev)
            m[i][k] = Poly.zero()
        prev = m[k][k]
    return m[n - 1][n - 1] if sign == 1 else -m[n - 1][n - 1]


def det_cofactor(rows: Sequence[Sequence[RatFun]]) -> RatFun:
    """Cofactor-expansion determinant over the rational-function field.

    Exponential cost; kept as the independent cross-check path for the
    fraction-free route and as the direct route for tiny matrices.
    """
    n = len(rows)
    if n == 0:
        return RatFun.one()
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = RatFun.zero()
    rest = rows[1:]
    for j in range(n):
        entry = rows[0][j]
        if entry.is_zero:
            continue
        minor = [[row[c] for c in range(n) if c != j] for row in rest]
        term = entry * det_cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def ratfun_det(rows: Sequence[Sequence[RatFun]]) -> RatFun:
    """Exact determinant of a square RatFun matrix.

    Rows are cleared to polynomials (tracking the scaling) and the core
    determinant runs fraction-free; 1x1 and 2x2 cases go direct.
    """
    n = len(rows)
    if n <= 2:
        return det_cofactor(rows)
    poly_rows: list[list[Poly]] = []
    scale = Poly.one()
    for row in rows:
        if len(row) != n:
            raise ValueError("determinant of a non-square matrix")
        common = Poly.one()
        for entry in row:
            common = poly_lcm(common, entry.den)
        poly_rows.append([entry.num * common.exact_div(entry.den) for entry in row])
        scale = scale * common
    return RatFun(poly_det_bareiss(poly_rows), scale)


# ---------------------------------------------------------------------------
# Symbolic norm constants
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NormValue:
    """Exact squared-norm constant q * (2*pi)^(m/2) with q a positive rational.

    Irrational pieces never enter the symbolic layer; square roots are taken
    only when a float is finally requested.
    """

    q: Fraction
    m: int

    def __post_init__(self):
        if self.q <= 0:
            raise ValueError("squared norm must be positive")

    def scaled(self, factor: Scalar) -> "NormValue":
        return NormValue(self.q * _frac(factor), self.m)

    def to_float(self) -> float:
        return float(self.q) * (2.0 * math.pi) ** (self.m / 2.0)
