"""Exact real-root counting and isolation with Sturm sequences."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .poly import Poly, squarefree_decomposition


def sturm_sequence(f: Poly) -> list[Poly]:
    seq = [f, f.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    return seq[:-1]


def _variations(signs) -> int:
    nz = [s for s in signs if s != 0]
    return sum(1 for x, y in zip(nz, nz[1:]) if x != y)


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def sign_variations_at(seq: list[Poly], x: Fraction) -> int:
    return _variations([_sign(p(x)) for p in seq])


def sign_variations_at_inf(seq: list[Poly], positive: bool) -> int:
    signs = []
    for p in seq:
        s = _sign(p.lead)
        if not positive and p.degree % 2 == 1:
            s = -s
        signs.append(s)
    return _variations(signs)


def count_roots(seq: list[Poly], lo: Fraction | None, hi: Fraction | None) -> int:
    """Distinct real roots in (lo, hi]; ``None`` means an infinite endpoint."""
    vlo = sign_variations_at_inf(seq, False) if lo is None else sign_variations_at(seq, lo)
    vhi = sign_variations_at_inf(seq, True) if hi is None else sign_variations_at(seq, hi)
    return vlo - vhi


def cauchy_bound(f: Poly) -> Fraction:
    lead = abs(f.lead)
    return 1 + max((abs(c) / lead for c in f.coeffs[:-1]), default=Fraction(0))


def isolate_real_roots(f: Poly, lo: Fraction, hi: Fraction) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (l, h] each holding exactly one root of square-free ``f`` in (lo, hi].

    ``lo`` and ``hi`` should not be roots; split points are moved off roots.
    """
    seq = sturm_sequence(f)
    out = []
    stack = [(lo, hi, count_roots(seq, lo, hi))]
    while stack:
        l, h, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append((l, h))
            continue
        mid = (l + h) / 2
        while f(mid) == 0:
            mid = (l + mid) / 2
        stack.append((mid, h, count_roots(seq, mid, h)))
        stack.append((l, mid, count_roots(seq, l, mid)))
    return sorted(out)


def refine_root(f: Poly, lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Bisect (lo, hi] holding one simple root of ``f`` until hi - lo <= width.

    Returns a degenerate interval when an endpoint hits the root exactly.
    """
    if f(hi) == 0:
        return hi, hi
    s_hi = _sign(f(hi))
    while hi - lo > width:
        mid = (lo + hi) / 2
        v = f(mid)
        if v == 0:
            return mid, mid
        if _sign(v) == s_hi:
            hi = mid
        else:
            lo = mid
    return lo, hi


def snap_rational(f: Poly, lo: Fraction, hi: Fraction) -> Fraction | None:
    """Try to name the root in [lo, hi] exactly as a small rational.

    Any rational p/q with |root - mid| < 1/(2 q^2) is a convergent of the
    midpoint, so ``limit_denominator`` finds it when q is small enough;
    the candidate is accepted only if it is an exact root.
    """
    if lo == hi:
        return lo
    mid = (lo + hi) / 2
    bound = int((1 / (hi - lo)) ** 0.5) or 1
    cand = mid.limit_denominator(bound)
    if lo <= cand <= hi and f(cand) == 0:
        return cand
    return None


@dataclass(frozen=True)
class RootReport:
    """Real roots of a polynomial inside an interval, with multiplicities."""

    roots: tuple[Fraction | float, ...]
    intervals: tuple[tuple[Fraction, Fraction], ...]
    multiplicities: tuple[int, ...]
    exact: tuple[bool, ...]
    distinct_in_interval: int
    distinct_total: int
    degree: int

    @property
    def all_in_interval(self) -> bool:
        return sum(self.multiplicities) == self.degree


def real_roots(
    f: Poly,
    lo: Fraction | None = None,
    hi: Fraction | None = None,
    tol: float = 1e-12,
    snap_width: Fraction = Fraction(1, 2**120),
) -> RootReport:
    """Certified roots of ``f`` in (lo, hi] via square-free decomposition.

    Counting is exact; each root is refined by bisection to ``tol`` and then
    (cheaply, since arithmetic is exact) to ``snap_width`` for rational
    recognition. Roots that are not recognised are returned as floats.
    """
    B = cauchy_bound(f)
    lo_ = -B if lo is None else max(lo, -B)
    hi_ = B if hi is None else min(hi, B)
    roots, intervals, mults, exact = [], [], [], []
    n_in = n_total = 0
    for g, mult in squarefree_decomposition(f):
        seq = sturm_sequence(g)
        n_total += count_roots(seq, None, None)
        if lo_ >= hi_:
            continue
        for l, h in isolate_real_roots(g, lo_, hi_):
            n_in += 1
            l, h = refine_root(g, l, h, Fraction(tol))
            intervals.append((l, h))
            fine = refine_root(g, l, h, snap_width)
            q = snap_rational(g, *fine)
            roots.append(q if q is not None else float((fine[0] + fine[1]) / 2))
            exact.append(q is not None)
            mults.append(mult)
    order = sorted(range(len(roots)), key=lambda i: float(roots[i]))
    return RootReport(
        roots=tuple(roots[i] for i in order),
        intervals=tuple(intervals[i] for i in order),
        multiplicities=tuple(mults[i] for i in order),
        exact=tuple(exact[i] for i in order),
        distinct_in_interval=n_in,
        distinct_total=n_total,
        degree=int(f.degree) if not f.is_zero() else 0,
    )
