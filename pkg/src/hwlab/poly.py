"""Exact univariate polynomials and rational functions over Q.

Coefficients are stored in ascending degree as :class:`fractions.Fraction`.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

Scalar = Fraction
ScalarLike = Union[int, Fraction, str, float]

NEG_INF = float("-inf")
"""Degree of the zero polynomial."""

MAX_FLOAT_DENOMINATOR = 10**12


def to_scalar(value: ScalarLike) -> Fraction:
    """Convert ``value`` to an exact rational.

    Strings accept ``"p/q"`` and decimal notation. Floats are snapped to
    their shortest round-trip decimal (``0.1 -> 1/10``) and then to the
    nearest rational with denominator at most ``MAX_FLOAT_DENOMINATOR``.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite value {value!r}")
        return Fraction(repr(value)).limit_denominator(MAX_FLOAT_DENOMINATOR)
    raise TypeError(f"cannot convert {type(value).__name__} to a rational scalar")


def scalars(values: Iterable[ScalarLike]) -> tuple[Fraction, ...]:
    return tuple(to_scalar(v) for v in values)


def format_scalar(q: Fraction) -> str:
    """Render as ``"p/q"`` (or ``"p"`` for integers)."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class Poly:
    """Immutable polynomial with exact rational coefficients (ascending)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[ScalarLike] = ()):
        c = [to_scalar(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)

    # constructors
    @classmethod
    def const(cls, value: ScalarLike) -> "Poly":
        return cls((value,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def from_roots(cls, roots: Iterable[ScalarLike]) -> "Poly":
        """Monic polynomial prod (X - r)."""
        p = cls((1,))
        for r in roots:
            p = p * cls((-to_scalar(r), 1))
        return p

    @classmethod
    def linear(cls, shift: ScalarLike) -> "Poly":
        """X + shift."""
        return cls((shift, 1))

    # basic structure
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly([{', '.join(format_scalar(c) for c in self.coeffs)}])"

    # arithmetic
    @staticmethod
    def _coerce(other) -> "Poly":
        return other if isinstance(other, Poly) else Poly.const(other)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            s = to_scalar(other)
            return Poly(c * s for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return Poly()
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
            raise ValueError("negative power")
        result, base = Poly((1,)), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(other.coeffs) - 1
        lead = other.lead
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            q = rem[k] / lead
            quot[k - dq] = q
            if q:
                for i, b in enumerate(other.coeffs):
                    rem[k - dq + i] -= q * b
        return Poly(quot), Poly(rem[:dq])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self * (1 / self.lead)

    def derivative(self) -> "Poly":
        return Poly(k * c for k, c in enumerate(self.coeffs) if k)

    def __call__(self, x):
        """Horner evaluation; exact for rationals, float-like otherwise."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_float(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def compose(self, other: "Poly") -> "Poly":
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def reversed(self, n: int | None = None) -> "Poly":
        """Coefficients of ``X**n * self(1/X)``; ``n`` defaults to the degree."""
        if n is None:
            n = len(self.coeffs) - 1
        c = list(self.coeffs) + [Fraction(0)] * max(0, n + 1 - len(self.coeffs))
        if any(c[n + 1:]):
            raise ValueError("degree exceeds n")
        return Poly(reversed(c[: n + 1]))


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd (zero if both are zero)."""
    while not q.is_zero():
        p, q = q, p % q
    return p.monic()


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: ``f = lead * prod g_i**i`` with monic, square-free,
    pairwise coprime ``g_i``. Constant factors are omitted."""
    if f.degree < 1:
        return []
    out = []
    fp = f.derivative()
    a = poly_gcd(f, fp)
    b = f // a
    c = fp // a
    d = c - b.derivative()
    i = 1
    while b.degree >= 1:
        a = poly_gcd(b, d)
        b = b // a
        c = d // a
        d = c - b.derivative()
        if a.degree >= 1:
            out.append((a, i))
        i += 1
    return out


class RationalFunction:
    """Exact ratio P/Q of polynomials.

    Stored as given; :meth:`reduced` cancels the gcd and makes Q monic.
    Equality is cross-multiplication, so unreduced forms compare correctly.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num, self.den = num, den

    def reduced(self) -> "RationalFunction":
        num, den = self.num, self.den
        g = poly_gcd(num, den)
        if g.degree >= 1:
            num, den = num // g, den // g
        lead = den.lead
        return RationalFunction(num * (1 / lead), den * (1 / lead))

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        r = self.reduced()
        return hash((r.num, r.den))

    def __call__(self, s):
        return self.num(s) / self.den(s)

    def __repr__(self) -> str:
        return f"RationalFunction({self.num!r}, {self.den!r})"


def poly_from_terms(terms: dict[int, ScalarLike] | Sequence[tuple[int, ScalarLike]]) -> Poly:
    """Build a polynomial from ``{degree: coefficient}`` pairs."""
    items = terms.items() if isinstance(terms, dict) else terms
    items = list(items)
    if not items:
        return Poly()
    deg = max(k for k, _ in items)
    c = [Fraction(0)] * (deg + 1)
    for k, v in items:
        if k < 0:
            raise ValueError("negative exponent")
        c[k] += to_scalar(v)
    return Poly(c)
