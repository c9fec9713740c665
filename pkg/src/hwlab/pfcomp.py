"""Polya-frequency tests for polynomial post-compositions p(Lambda_alpha).

p(Lambda) is again a one-sided exponential mixture. By Schoenberg's
characterisation it is a Polya frequency function exactly when its Laplace
transform, in lowest terms, is a positive constant over
prod (s + rho_i)^mu_i, i.e. a positive multiple of a hypoexponential
density. Everything here is exact over Q.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Sequence

from .density import AlphaLike, RateMixture, as_alpha, build_density, laplace_transform
from .errors import CollisionError, DistinctnessError, DomainError, SizeError
from .poly import Poly, RationalFunction, format_scalar

DEFAULT_POINT_CAP = 10**6


@dataclass(frozen=True)
class LatticeSimplex:
    """Nonnegative integer m-tuples whose coordinate sum lies in K."""

    m: int
    K: tuple[int, ...]
    points: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def simplex_size(m: int, K: Iterable[int]) -> int:
    return sum(comb(k + m - 1, m - 1) for k in set(K))


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first, *rest)


def simplex_points(m: int, K: Iterable[int], cap: int = DEFAULT_POINT_CAP) -> LatticeSimplex:
    """All j in Z^m_{>=0} with |j| in K, in lexicographic order."""
    K = tuple(sorted(set(int(k) for k in K)))
    if m < 2:
        raise DomainError("m must be at least 2")
    if not K or K[0] < 1:
        raise DomainError("K must be a nonempty set of positive integers")
    size = simplex_size(m, K)
    if size > cap:
        raise SizeError(f"{size} lattice points exceed the cap of {cap}")
    pts = sorted(pt for k in K for pt in _compositions(k, m))
    return LatticeSimplex(m, K, tuple(pts))


def multinomial(j: Sequence[int]) -> int:
    out = factorial(sum(j))
    for v in j:
        out //= factorial(v)
    return out


def _dot(j: Sequence[int], a: Sequence[Fraction]) -> Fraction:
    return sum((ji * ai for ji, ai in zip(j, a)), Fraction(0))


def _support(p: Poly) -> dict[int, Fraction]:
    return {k: c for k, c in enumerate(p.coeffs) if c != 0}


def numerator_evaluations(alpha: AlphaLike, p: Poly, cap: int = DEFAULT_POINT_CAP) -> dict[tuple[int, ...], Fraction]:
    """k -> r_|k| C(|k|, k) c^k prod_{j != k} (j - k).a over the lattice simplex.

    These are the values of the transform numerator at its candidate roots
    -k.a; p(Lambda) is a Polya frequency function iff they are all equal
    (and positive). Requires distinct rates and pairwise distinct j.a.
    """
    alpha = as_alpha(alpha)
    if not alpha.is_distinct():
        raise DistinctnessError("numerator test needs distinct parameters")
    if p.is_zero() or p[0] != 0:
        raise DomainError("p must be nonzero with p(0) = 0")
    r = _support(p)
    mix = build_density(alpha)
    a, c = mix.rates, [q[0] for q in mix.coeffs]
    pts = simplex_points(alpha.m, r.keys(), cap).points
    forms = [_dot(j, a) for j in pts]
    if len(set(forms)) != len(forms):
        seen: dict[Fraction, tuple[int, ...]] = {}
        for j, f in zip(pts, forms):
            if f in seen:
                raise CollisionError(f"lattice points {seen[f]} and {j} share the rate {format_scalar(f)}")
            seen[f] = j
    out = {}
    for idx, k in enumerate(pts):
        val = r[sum(k)] * multinomial(k)
        for ci, ki in zip(c, k):
            val *= ci**ki
        fk = forms[idx]
        for jdx, fj in enumerate(forms):
            if jdx != idx:
                val *= fj - fk
        out[k] = val
    return out


def power_rate_mixture(alpha: AlphaLike, n: int) -> RateMixture:
    """Lambda_alpha^n as an exact mixture, equal rates merged."""
    if n < 1:
        raise DomainError("n must be a positive integer")
    return build_density(alpha) ** n


def compose(p: Poly, mix: RateMixture) -> RateMixture:
    """p(mix) for p with p(0) = 0."""
    if p[0] != 0:
        raise DomainError("p(0) must vanish for p(Lambda) to be a mixture")
    out = RateMixture(())
    power = None
    for k in range(1, int(p.degree) + 1):
        power = mix if power is None else power * mix
        if p[k]:
            out = out + power.scale(p[k])
    return out


@dataclass(frozen=True)
class PFVerdict:
    is_pf: bool
    is_density: bool
    witness_kind: str
    witness_data: dict = field(default_factory=dict)
    reason: str = ""
    mixture: RateMixture | None = None
    transform: RationalFunction | None = None

    def report(self) -> dict[str, str]:
        data = ";".join(f"{k}={_fmt(v)}" for k, v in self.witness_data.items())
        return {
            "is_pf": "true" if self.is_pf else "false",
            "is_density": "true" if self.is_density else "false",
            "witness_kind": self.witness_kind,
            "witness_data": data,
            "reason": self.reason,
        }


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return format_scalar(v)
    if isinstance(v, (tuple, list)):
        return "(" + ",".join(_fmt(x) for x in v) + ")"
    if isinstance(v, RateMixture):
        return v.describe()
    if isinstance(v, Poly):
        return "[" + ",".join(format_scalar(x) for x in v.coeffs) + "]"
    return str(v)


def _linear_multiplicity(den: Poly, rho: Fraction) -> int:
    lin = Poly.linear(rho)
    k = 0
    while den.degree >= 1:
        q, rem = den.divmod(lin)
        if not rem.is_zero():
            break
        den, k = q, k + 1
    return k


def _lattice_witness(alpha, p: Poly) -> dict | None:
    try:
        ev = numerator_evaluations(alpha, p)
    except (CollisionError, DistinctnessError, SizeError):
        return None
    items = list(ev.items())
    k0, v0 = items[0]
    for k, v in items[1:]:
        if v != v0:
            return {"point_1": k0, "value_1": v0, "point_2": k, "value_2": v}
    return None


def pf_post_composition(alpha: AlphaLike, p: Poly) -> PFVerdict:
    """Decide whether p(Lambda_alpha) is a Polya frequency function, and whether it is a density."""
    alpha = as_alpha(alpha)
    if p.is_zero():
        return PFVerdict(False, False, "zero_polynomial", reason="p is identically zero")
    if p[0] != 0:
        return PFVerdict(
            False, False, "constant_term", {"p(0)": p[0]},
            reason="p(Lambda) equals p(0) != 0 on (-inf, 0), so is not integrable",
        )
    mix = compose(p, build_density(alpha))
    T = laplace_transform(mix).reduced()
    if not T.num.is_constant():
        witness = _lattice_witness(alpha, p)
        if witness is not None:
            return PFVerdict(
                False, False, "lattice_pair", witness,
                reason="transform numerator is not constant", mixture=mix, transform=T,
            )
        return PFVerdict(
            False, False, "numerator", {"numerator": T.num},
            reason="transform numerator is not constant", mixture=mix, transform=T,
        )
    C = T.num[0]
    if C <= 0:
        return PFVerdict(
            False, False, "negative", {"constant": C},
            reason="p(Lambda) is a negative multiple of a density", mixture=mix, transform=T,
        )
    beta: list[Fraction] = []
    den = T.den
    for rho in mix.rates:
        beta.extend([1 / rho] * _linear_multiplicity(den, rho))
    beta.sort(reverse=True)
    scale = mix.integral()
    data = {"beta": tuple(beta), "scale": scale, "mixture": mix}
    return PFVerdict(True, scale == 1, "hw_density", data, reason="", mixture=mix, transform=T)


def is_arithmetic_progression(values: Sequence[Fraction]) -> bool:
    v = sorted(values)
    return all(v[i + 1] - v[i] == v[1] - v[0] for i in range(len(v) - 1))


def unit_integral_sum(alpha: AlphaLike, p: Poly) -> Fraction:
    """sum_k r_|k| C(|k|, k) c^k / (k.a) for distinct rates (the integral of p(Lambda))."""
    alpha = as_alpha(alpha)
    if not alpha.is_distinct():
        raise DistinctnessError("closed-form integral needs distinct parameters")
    r = _support(p)
    if 0 in r:
        raise DomainError("p(0) must vanish")
    mix = build_density(alpha)
    a, c = mix.rates, [q[0] for q in mix.coeffs]
    total = Fraction(0)
    for k in simplex_points(alpha.m, r.keys()).points:
        term = r[sum(k)] * multinomial(k)
        for ci, ki in zip(c, k):
            term *= ci**ki
        total += term / _dot(k, a)
    return total


__all__ = [
    "LatticeSimplex",
    "PFVerdict",
    "compose",
    "is_arithmetic_progression",
    "multinomial",
    "numerator_evaluations",
    "pf_post_composition",
    "power_rate_mixture",
    "simplex_points",
    "simplex_size",
    "unit_integral_sum",
]
