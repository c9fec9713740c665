"""Hypoexponential densities as one-sided exponential-polynomial mixtures.

A density with Laplace transform ``prod_j (1 + alpha_j s)^-1`` is stored as a
:class:`RateMixture`, ``x -> sum_j c_j(x) exp(-a_j x)`` on ``x >= 0`` where
``a_j = 1 / alpha_j`` and each ``c_j`` is an exact polynomial.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, lgamma, log
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import ArityError, ConvergenceError, DomainError, PositivityError
from .poly import Poly, RationalFunction, ScalarLike, format_scalar, scalars
from .symfunc import complete_homogeneous_all


@dataclass(frozen=True)
class AlphaTuple:
    """Positive parameters alpha_1 >= ... >= alpha_m, m >= 2 (repeats allowed)."""

    alpha: tuple[Fraction, ...]

    def __init__(self, alpha: Iterable[ScalarLike]):
        vals = scalars(alpha)
        if len(vals) < 2:
            raise ArityError(f"need m >= 2 parameters, got {len(vals)}")
        if any(v <= 0 for v in vals):
            raise PositivityError(f"parameters must be positive: {[format_scalar(v) for v in vals]}")
        object.__setattr__(self, "alpha", tuple(sorted(vals, reverse=True)))

    @property
    def m(self) -> int:
        return len(self.alpha)

    @property
    def rates(self) -> tuple[Fraction, ...]:
        """Reciprocals a_j = 1/alpha_j, ascending."""
        return tuple(1 / v for v in self.alpha)

    def multiplicities(self) -> list[tuple[Fraction, int]]:
        """(rate, multiplicity) pairs with rates strictly increasing."""
        return sorted(Counter(self.rates).items())

    def is_distinct(self) -> bool:
        return len(set(self.alpha)) == self.m

    def __iter__(self):
        return iter(self.alpha)

    def __len__(self) -> int:
        return self.m

    def __str__(self) -> str:
        return ",".join(format_scalar(v) for v in self.alpha)


AlphaLike = Union[AlphaTuple, Sequence[ScalarLike]]


def as_alpha(alpha: AlphaLike) -> AlphaTuple:
    return alpha if isinstance(alpha, AlphaTuple) else AlphaTuple(alpha)


@dataclass(frozen=True)
class RateMixture:
    """x -> sum_j c_j(x) exp(-a_j x) for x >= 0, and 0 for x < 0."""

    terms: tuple[tuple[Fraction, Poly], ...]

    def __init__(self, terms: Iterable[tuple[ScalarLike, Poly | ScalarLike]]):
        merged: dict[Fraction, Poly] = {}
        for rate, coeff in terms:
            rate = scalars([rate])[0]
            if rate <= 0:
                raise PositivityError(f"rates must be positive, got {rate}")
            if not isinstance(coeff, Poly):
                coeff = Poly.const(coeff)
            merged[rate] = merged.get(rate, Poly()) + coeff
        object.__setattr__(
            self, "terms", tuple((r, c) for r, c in sorted(merged.items()) if not c.is_zero())
        )

    @property
    def rates(self) -> tuple[Fraction, ...]:
        return tuple(r for r, _ in self.terms)

    @property
    def coeffs(self) -> tuple[Poly, ...]:
        return tuple(c for _, c in self.terms)

    def __add__(self, other: "RateMixture") -> "RateMixture":
        return RateMixture(self.terms + other.terms)

    def scale(self, factor: ScalarLike) -> "RateMixture":
        return RateMixture((r, c * factor) for r, c in self.terms)

    def __mul__(self, other):
        if not isinstance(other, RateMixture):
            return self.scale(other)
        return RateMixture(
            (r1 + r2, c1 * c2) for r1, c1 in self.terms for r2, c2 in other.terms
        )

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RateMixture":
        if n < 1:
            raise DomainError("only positive powers are mixtures")
        result, base = None, self
        while n:
            if n & 1:
                result = base if result is None else result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def value_at_zero(self) -> Fraction:
        return sum((c[0] for c in self.coeffs), Fraction(0))

    def integral(self) -> Fraction:
        """Exact integral over [0, inf): sum_l gamma_l l! / a^(l+1)."""
        total = Fraction(0)
        for a, c in self.terms:
            for l, g in enumerate(c.coeffs):
                total += g * factorial(l) / a ** (l + 1)
        return total

    def __call__(self, x):
        return evaluate(self, x)

    def is_scalar_multiple_of(self, other: "RateMixture") -> Fraction | None:
        """Return t with self == t * other (t may be any nonzero rational), else None."""
        if self.rates != other.rates or not self.terms:
            return None
        a0 = self.terms[0][1]
        b0 = other.terms[0][1]
        t = a0.lead / b0.lead
        if all(c1 == c2 * t for (_, c1), (_, c2) in zip(self.terms, other.terms)):
            return t
        return None

    def describe(self) -> str:
        parts = []
        for r, c in self.terms:
            coeffs = ";".join(format_scalar(v) for v in c.coeffs)
            parts.append(f"{format_scalar(r)}:[{coeffs}]")
        return " ".join(parts)


# ---------------------------------------------------------------- construction

def _distinct_coefficients(rates: Sequence[Fraction]) -> list[Fraction]:
    out = []
    for j, aj in enumerate(rates):
        c = aj
        for k, ak in enumerate(rates):
            if k != j:
                c *= ak / (ak - aj)
        out.append(c)
    return out


def _series_inverse_power(d: Fraction, n: int, order: int) -> list[Fraction]:
    """Taylor coefficients of (u + d)^-n in u up to u^(order-1)."""
    base = d ** (-n)
    return [base * (-1) ** i * comb(n + i - 1, i) / d**i for i in range(order)]


def _series_mul(p: list[Fraction], q: list[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(0)] * order
    for i, a in enumerate(p[:order]):
        if a:
            for j, b in enumerate(q[: order - i]):
                out[i + j] += a * b
    return out


def _repeated_coefficients(mult: Sequence[tuple[Fraction, int]]) -> list[Poly]:
    """Partial-fraction coefficients for prod a^n / (s + a)^n.

    Near s = -a_j write u = s + a_j; the regular factor
    g_j(u) = K prod_{k != j} (u + a_k - a_j)^(-n_k) is expanded to order
    n_j - 1, and u^(-l) inverts to x^(l-1) e^(-a_j x) / (l-1)!.
    """
    K = Fraction(1)
    for a, n in mult:
        K *= a**n
    polys = []
    for j, (aj, nj) in enumerate(mult):
        series = [K] + [Fraction(0)] * (nj - 1)
        for k, (ak, nk) in enumerate(mult):
            if k != j:
                series = _series_mul(series, _series_inverse_power(ak - aj, nk, nj), nj)
        # coefficient of u^-l is series[nj - l]
        polys.append(Poly(series[nj - l] / factorial(l - 1) for l in range(1, nj + 1)))
    return polys


def build_density(alpha: AlphaLike) -> RateMixture:
    """Exact mixture form of the density with transform prod (1 + alpha_j s)^-1."""
    alpha = as_alpha(alpha)
    mult = alpha.multiplicities()
    if all(n == 1 for _, n in mult):
        rates = [a for a, _ in mult]
        return RateMixture(zip(rates, _distinct_coefficients(rates)))
    return RateMixture((a, c) for (a, _), c in zip(mult, _repeated_coefficients(mult)))


def hw_transform(alpha: AlphaLike) -> RationalFunction:
    """1 / prod (1 + alpha_j s) as an exact rational function."""
    alpha = as_alpha(alpha)
    den = Poly.const(1)
    for v in alpha:
        den = den * Poly((1, v))
    return RationalFunction(Poly.const(1), den)


# ---------------------------------------------------------------- evaluation

def _eval_point(mix: RateMixture, x: float) -> float:
    if x < 0:
        return 0.0
    parts = []
    for a, c in mix.terms:
        e = math.exp(-float(a) * x)
        if e == 0.0:
            continue
        parts.append(c.eval_float(x) * e)
    return math.fsum(parts)


def evaluate(mix: RateMixture, x):
    """Float evaluation with compensated summation over the terms.

    Accepts a scalar or an array; terms that underflow are dropped.
    """
    if np.ndim(x) == 0:
        return _eval_point(mix, float(x))
    arr = np.asarray(x, dtype=float)
    return np.array([_eval_point(mix, float(v)) for v in arr.ravel()]).reshape(arr.shape)


def density(alpha: AlphaLike, x):
    return evaluate(build_density(alpha), x)


# ---------------------------------------------------------------- Maclaurin data

def maclaurin_coeffs(alpha: AlphaLike, n_max: int) -> list[Fraction]:
    """[Lambda^(n)(0+) for n = 0..n_max]."""
    alpha = as_alpha(alpha)
    m, a = alpha.m, alpha.rates
    prod = Fraction(1)
    for v in a:
        prod *= v
    out = [Fraction(0)] * (min(n_max, m - 2) + 1)
    if n_max >= m - 1:
        h = complete_homogeneous_all(n_max - m + 1, a)
        for l, hl in enumerate(h):
            out.append(prod * hl if l % 2 == 0 else -prod * hl)
    return out[: n_max + 1]


def maclaurin_coeff(alpha: AlphaLike, n: int) -> Fraction:
    if n < 0:
        raise DomainError("derivative order must be nonnegative")
    return maclaurin_coeffs(alpha, n)[n]


def eval_by_series(alpha: AlphaLike, x: float, tol: float = 1e-12, max_terms: int = 20000) -> float:
    """Sum the Maclaurin series at ``x`` in exact arithmetic.

    Stops once the tail is provably below ``tol``; the tail is dominated
    using h_l(a) <= C(l+m-1, m-1) max(a)^l.
    """
    alpha = as_alpha(alpha)
    if x < 0:
        raise DomainError("series form is only valid for x >= 0")
    if tol <= 0:
        raise DomainError("tol must be positive")
    if x == 0:
        return 0.0
    m, a = alpha.m, alpha.rates
    amax = max(a)
    prod = Fraction(1)
    for v in a:
        prod *= v
    log_prod, log_a, log_x = log(prod), log(amax), log(x)
    X = Fraction(x)

    def log_bound(n: int) -> float:
        l = n - m + 1
        return log_prod + log(comb(l + m - 1, m - 1)) + l * log_a + n * log_x - lgamma(n + 1)

    def ratio(n: int) -> float:
        l = n - m + 1
        return (l + m) / (l + 1) * float(amax) * x / (n + 1)

    # h_l is extended in chunks; the e/h recurrence is cheap once e is known
    h = complete_homogeneous_all(64, a)
    total = Fraction(0)
    power = X ** (m - 1) / factorial(m - 1)
    n = m - 1
    while True:
        l = n - m + 1
        if l >= len(h):
            h = complete_homogeneous_all(2 * len(h), a)
        term = prod * h[l] * power
        total += term if l % 2 == 0 else -term
        nxt = n + 1
        r = ratio(nxt)
        if r < 1 and log_bound(nxt) - log(1 - r) < log(tol):
            break
        if nxt - m + 1 > max_terms:
            raise ConvergenceError(f"series did not converge within {max_terms} terms at x={x}")
        power = power * X / nxt
        n = nxt
    return float(total)


# ---------------------------------------------------------------- transforms

def laplace_transform(mix: RateMixture) -> RationalFunction:
    """P/Q with Q = prod (s + a_j)^(deg c_j + 1); not reduced."""
    den = Poly.const(1)
    factors = []
    for a, c in mix.terms:
        f = Poly.linear(a) ** (c.degree + 1)
        factors.append(f)
        den = den * f
    num = Poly()
    for idx, (a, c) in enumerate(mix.terms):
        d = c.degree
        others = Poly.const(1)
        for k, f in enumerate(factors):
            if k != idx:
                others = others * f
        local = Poly()
        # x^l e^{-as} -> l! / (s + a)^(l + 1)
        for l, g in enumerate(c.coeffs):
            if g:
                local = local + Poly.linear(a) ** (d - l) * (g * factorial(l))
        num = num + local * others
    return RationalFunction(num, den)


__all__ = [
    "AlphaTuple",
    "RateMixture",
    "as_alpha",
    "build_density",
    "density",
    "eval_by_series",
    "evaluate",
    "hw_transform",
    "laplace_transform",
    "maclaurin_coeff",
    "maclaurin_coeffs",
]
