"""Moments, cumulants, moment determinants and recovery of alpha.

The moment recovery pipeline: normalised moments h_p = mu_p / p! feed the
Toeplitz determinants det D_l = e_l(alpha); the polynomial
F(t) = 1 + sum e_l t^l = prod (1 + alpha_j t) is then checked with exact
Sturm counting to have all m roots in (-inf, 0), and alpha_j = -1/t_j.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Sequence

from .density import AlphaLike, AlphaTuple, as_alpha
from .errors import DomainError, InsufficientDataError
from .linalg import bareiss_det_int, det
from .poly import Poly, ScalarLike, format_scalar, scalars
from .roots import RootReport, real_roots
from .symfunc import complete_homogeneous_all, power_sum


@dataclass(frozen=True)
class MomentSeq:
    """(mu_0, ..., mu_p) with mu_0 = 1."""

    moments: tuple[Fraction, ...]

    def __init__(self, moments: Sequence[ScalarLike]):
        mu = scalars(moments)
        if not mu:
            raise InsufficientDataError("empty moment sequence")
        if mu[0] != 1:
            raise DomainError(f"mu_0 must be 1, got {format_scalar(mu[0])}")
        object.__setattr__(self, "moments", mu)

    def __len__(self):
        return len(self.moments)

    def __getitem__(self, p):
        return self.moments[p]

    def normalized(self) -> list[Fraction]:
        """h_p = mu_p / p!."""
        return [mu / factorial(p) for p, mu in enumerate(self.moments)]


@dataclass(frozen=True)
class CumulantSeq:
    """(nu_1, ..., nu_k); index 0 of ``cumulants`` holds nu_1."""

    cumulants: tuple[Fraction, ...]

    def __init__(self, cumulants: Sequence[ScalarLike]):
        object.__setattr__(self, "cumulants", scalars(cumulants))

    def __len__(self):
        return len(self.cumulants)

    def nu(self, k: int) -> Fraction:
        return self.cumulants[k - 1]

    def power_sums(self) -> list[Fraction]:
        """gamma_k = k nu_k for k = 1..len."""
        return [k * v for k, v in enumerate(self.cumulants, start=1)]


def moments(alpha: AlphaLike, p_max: int) -> MomentSeq:
    """mu_p = p! h_p(alpha) for p = 0..p_max."""
    alpha = as_alpha(alpha)
    if p_max < 0:
        raise DomainError("p_max must be nonnegative")
    h = complete_homogeneous_all(p_max, alpha.alpha)
    return MomentSeq([factorial(p) * hp for p, hp in enumerate(h)])


def cumulants(alpha: AlphaLike, k_max: int) -> CumulantSeq:
    """nu_k = (1/k) sum_j alpha_j^k for k = 1..k_max."""
    alpha = as_alpha(alpha)
    if k_max < 1:
        raise DomainError("k_max must be positive")
    return CumulantSeq([power_sum(k, alpha.alpha) / k for k in range(1, k_max + 1)])


def toeplitz_D(h: Sequence[Fraction], l: int) -> list[list[Fraction]]:
    """l x l matrix with h_{1+j-k} at (j, k) (h_0 = 1 on the superdiagonal, 0 above)."""
    def hh(i: int) -> Fraction:
        return h[i] if i >= 0 else Fraction(0)

    return [[hh(1 + j - k) for k in range(l)] for j in range(l)]


def elementary_from_complete(h: Sequence[Fraction], m: int) -> list[Fraction]:
    """(e_1, ..., e_m) as det D_l built from (h_0, h_1, ..., h_m)."""
    if len(h) < m + 1:
        raise InsufficientDataError(f"need h_0..h_{m}, got {len(h)} values")
    return [det(toeplitz_D(h, l)) for l in range(1, m + 1)]


def moments_to_elementary(mu: MomentSeq | Sequence[ScalarLike], m: int | None = None) -> list[Fraction]:
    """(e_1(alpha), ..., e_m(alpha)) from mu_0..mu_m; ``m`` defaults to len(mu) - 1."""
    mu = mu if isinstance(mu, MomentSeq) else MomentSeq(mu)
    if m is None:
        m = len(mu) - 1
    if m < 1:
        raise InsufficientDataError("need at least mu_0 and mu_1")
    return elementary_from_complete(mu.normalized(), m)


# ---------------------------------------------------------------- recovery

@dataclass(frozen=True)
class RecoveryResult:
    feasible: bool
    alpha: tuple[Fraction | float, ...] | None
    elementary: tuple[Fraction, ...]
    F: Poly
    certificate: dict = field(default_factory=dict)
    roots: RootReport | None = None

    def alpha_tuple(self) -> AlphaTuple:
        if not self.feasible or not all(isinstance(v, Fraction) for v in self.alpha):
            raise DomainError("recovered alpha is not an exact rational tuple")
        return AlphaTuple(self.alpha)

    def report(self) -> dict[str, str]:
        def fmt(v):
            return format_scalar(v) if isinstance(v, Fraction) else repr(v)

        return {
            "feasible": "true" if self.feasible else "false",
            "alpha": ",".join(fmt(v) for v in self.alpha) if self.alpha else "",
            "F_coefficients": ",".join(format_scalar(c) for c in self.F.coeffs),
            "sturm_certificate": ";".join(f"{k}={v}" for k, v in self.certificate.items()),
        }


def _recover_from_elementary(e: Sequence[Fraction], m: int, tol: float) -> RecoveryResult:
    F = Poly([Fraction(1), *e])
    cert = {"degree": int(F.degree), "m": m}
    if F.degree != m:
        # e_m = 0 would force a zero parameter
        cert["reason"] = "leading coefficient e_m vanishes"
        return RecoveryResult(False, None, tuple(e), F, cert)
    rep = real_roots(F, lo=None, hi=Fraction(0), tol=tol)
    cert.update(
        distinct_real_roots=rep.distinct_total,
        distinct_negative_roots=rep.distinct_in_interval,
        negative_roots_with_multiplicity=sum(rep.multiplicities),
    )
    if not rep.all_in_interval:
        cert["reason"] = "roots outside (-inf, 0)"
        return RecoveryResult(False, None, tuple(e), F, cert, rep)
    alpha = []
    for t, mult in zip(rep.roots, rep.multiplicities):
        v = -1 / t
        alpha.extend([v] * mult)
    alpha.sort(key=float, reverse=True)
    return RecoveryResult(True, tuple(alpha), tuple(e), F, cert, rep)


def recover_alpha(mu: MomentSeq | Sequence[ScalarLike], m: int, tol: float = 1e-12) -> RecoveryResult:
    """Recover alpha (as a multiset, sorted descending) from mu_0..mu_m.

    Infeasibility (complex roots, nonnegative roots, or e_m = 0) is reported
    in the result rather than raised.
    """
    mu = mu if isinstance(mu, MomentSeq) else MomentSeq(mu)
    if m < 2:
        raise DomainError("m must be at least 2")
    if len(mu) < m + 1:
        raise InsufficientDataError(f"need mu_0..mu_{m}, got {len(mu)} moments")
    return _recover_from_elementary(moments_to_elementary(mu, m), m, tol)


def recover_alpha_from_maclaurin(coeffs: Sequence[ScalarLike], m: int, tol: float = 1e-12) -> RecoveryResult:
    """Recover alpha from Lambda^(n)(0+) for n = m-1..2m-1.

    The ratios Lambda^(n) / Lambda^(m-1) = (-1)^(n-m+1) h_(n-m+1)(a) give the
    complete homogeneous values of the rates a = 1/alpha; the moment
    pipeline then yields a, which is inverted entrywise.
    """
    c = scalars(coeffs)
    if m < 2:
        raise DomainError("m must be at least 2")
    if len(c) < m + 1:
        raise InsufficientDataError(f"need {m + 1} coefficients, got {len(c)}")
    if c[0] == 0:
        raise DomainError("first coefficient Lambda^(m-1)(0+) must be nonzero")
    h = [(-1) ** l * v / c[0] for l, v in enumerate(c[: m + 1])]
    res = _recover_from_elementary(elementary_from_complete(h, m), m, tol)
    if not res.feasible:
        return res
    alpha = sorted((1 / v for v in res.alpha), key=float, reverse=True)
    return RecoveryResult(True, tuple(alpha), res.elementary, res.F, res.certificate, res.roots)


# ---------------------------------------------------------------- determinants

def hankel_determinants(mu: MomentSeq | Sequence[ScalarLike], n_max: int, shifted: bool = False) -> list[Fraction]:
    """det(mu_{j+k}) (or det(mu_{j+k+1})) for orders n = 0..n_max."""
    mu = mu if isinstance(mu, MomentSeq) else MomentSeq(mu)
    off = 1 if shifted else 0
    need = 2 * n_max + off + 1
    if len(mu) < need:
        raise InsufficientDataError(f"order {n_max} needs {need} moments, got {len(mu)}")
    return [
        det([[mu[j + k + off] for k in range(n + 1)] for j in range(n + 1)])
        for n in range(n_max + 1)
    ]


@dataclass(frozen=True)
class PFSequenceResult:
    ok: bool
    checked: int
    witness: tuple[tuple[int, ...], tuple[int, ...], Fraction] | None = None

    def __bool__(self) -> bool:
        return self.ok


def normalized_sequence(mu: MomentSeq | Sequence[ScalarLike], m: int | None = None) -> list[Fraction]:
    """(b_0 = 1, det D_1, ..., det D_m); all other b_n are zero."""
    return [Fraction(1), *moments_to_elementary(mu, m)]


def toeplitz_minor_check(b: Sequence[ScalarLike], max_order: int, window: int = 6) -> PFSequenceResult:
    """Check det(b_{p_j - q_k}) >= 0 for increasing index tuples in [-window, window].

    ``b`` lists b_0, b_1, ...; b_n = 0 for n < 0 or beyond the list. Only
    minors up to ``max_order`` are examined, so a pass is a finite sample
    of total nonnegativity, not a certificate.
    """
    b = scalars(b)
    lcm = 1
    for v in b:
        lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
    bi = [int(v * lcm) for v in b]

    def entry(n: int) -> int:
        return bi[n] if 0 <= n < len(bi) else 0

    idx = range(-window, window + 1)
    checked = 0
    cache: dict[tuple, int] = {}
    for order in range(1, max_order + 1):
        for q in combinations(idx, order):
            for p in combinations(idx, order):
                key = tuple(pj - q[0] for pj in p) + tuple(qk - q[0] for qk in q)
                d = cache.get(key)
                if d is None:
                    d = bareiss_det_int([[entry(pj - qk) for qk in q] for pj in p])
                    cache[key] = d
                checked += 1
                if d < 0:
                    return PFSequenceResult(False, checked, (p, q, Fraction(d, lcm**order)))
    return PFSequenceResult(True, checked)


def pf_sequence_check(
    mu: MomentSeq | Sequence[ScalarLike], max_order: int = 3, window: int = 6, m: int | None = None
) -> PFSequenceResult:
    return toeplitz_minor_check(normalized_sequence(mu, m), max_order, window)


__all__ = [
    "CumulantSeq",
    "MomentSeq",
    "PFSequenceResult",
    "RecoveryResult",
    "cumulants",
    "elementary_from_complete",
    "hankel_determinants",
    "moments",
    "moments_to_elementary",
    "normalized_sequence",
    "pf_sequence_check",
    "recover_alpha",
    "recover_alpha_from_maclaurin",
    "toeplitz_D",
    "toeplitz_minor_check",
]
