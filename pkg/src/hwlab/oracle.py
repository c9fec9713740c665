"""Independent numerical ground truth for the exact pipelines.

None of these routines use the closed-form partial fractions except where
noted (the Toeplitz-minor sampler and the finite-difference stencil take a
mixture as input by design).
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import mpmath
import numpy as np
from scipy import integrate, signal, special

from .density import AlphaLike, RateMixture, as_alpha, build_density, evaluate
from .errors import DomainError, ToleranceError

FM_MAX_T = 1e6
FM_DEFAULT_TOL = 1e-8
# m = 2 decays only like 1/t, so the envelope bound forces a looser default
FM_DEFAULT_TOL_M2 = 1e-4


def _alpha_floats(alpha: AlphaLike) -> np.ndarray:
    return np.array([float(a) for a in as_alpha(alpha).alpha])


# ---------------------------------------------------------------- Fourier-Mellin

def _fm_cutoff(alpha: np.ndarray, tol: float) -> float:
    """T with (1/pi) int_T^inf |G(t)| dt <= tol, from |G(t)| <= 1 / (prod(alpha) t^m)."""
    m = len(alpha)
    log_prod = float(np.sum(np.log(alpha)))
    # T^(1-m) / ((m-1) prod(alpha) pi) = tol
    return math.exp(-(math.log(tol) + math.log(m - 1) + log_prod + math.log(math.pi)) / (m - 1))


def fourier_mellin(alpha: AlphaLike, x: float, tol: float | None = None, max_t: float = FM_MAX_T) -> float:
    """Invert the two-sided Laplace transform along the imaginary axis.

    Lambda(x) = (1/pi) int_0^inf [Re G(t) cos(tx) - Im G(t) sin(tx)] dt with
    G(t) = prod (1 + i alpha_j t)^-1. The range is truncated at T where the
    envelope bound drops below tol/2 and the rest is integrated with QAWO
    on dyadic pieces.
    """
    a = _alpha_floats(alpha)
    m = len(a)
    if tol is None:
        tol = FM_DEFAULT_TOL_M2 if m == 2 else FM_DEFAULT_TOL
    if tol <= 0:
        raise DomainError("tol must be positive")
    T = _fm_cutoff(a, tol / 2)
    if T > max_t:
        raise ToleranceError(f"truncation at t={T:.3g} exceeds max_t={max_t:.3g}; loosen tol")
    x = float(x)

    def G(t: float) -> complex:
        return 1.0 / complex(np.prod(1.0 + 1j * a * t))

    def re(t):
        return G(t).real

    def im(t):
        return G(t).imag

    edges = [0.0, min(1.0, T)]
    while edges[-1] < T:
        edges.append(min(2 * edges[-1], T))
    pieces = len(edges) - 1
    total, err_sum = [], 0.0
    for lo, hi in zip(edges, edges[1:]):
        c, ec = integrate.quad(re, lo, hi, weight="cos", wvar=x, epsabs=tol / (4 * pieces), limit=400)
        s, es = integrate.quad(im, lo, hi, weight="sin", wvar=x, epsabs=tol / (4 * pieces), limit=400)
        total += [c, -s]
        err_sum += ec + es
    if err_sum / math.pi > tol / 2:
        raise ToleranceError(f"quadrature error estimate {err_sum / math.pi:.3g} exceeds tol/2")
    return math.fsum(total) / math.pi


# ---------------------------------------------------------------- convolution

@dataclass(frozen=True)
class GridFunction:
    x: np.ndarray
    values: np.ndarray
    h: float

    def __post_init__(self):
        if not self.h > 0:
            raise DomainError("grid step must be positive")
        if not np.all(np.isfinite(self.values)):
            raise DomainError("grid values must be finite")

    def max_deviation(self, f: Callable[[np.ndarray], np.ndarray]) -> float:
        return float(np.max(np.abs(self.values - f(self.x))))


def _trapezoid_conv(f: np.ndarray, g: np.ndarray, h: float) -> np.ndarray:
    n = len(f)
    full = signal.fftconvolve(f, g)[:n]
    return h * (full - 0.5 * (f[0] * g + g[0] * f))


def _convolve_on_grid(a: np.ndarray, h: float, n: int) -> np.ndarray:
    x = h * np.arange(n)
    out = None
    for aj in a:
        phi = np.exp(-x / aj) / aj  # right limit 1/alpha at the origin
        out = phi if out is None else _trapezoid_conv(out, phi, h)
    return out


def grid_convolution(alpha: AlphaLike, h: float, x_max: float, richardson: bool = False) -> GridFunction:
    """Iterated trapezoid convolution of the exponential factors on [0, x_max].

    Plain error is O(h^2). With ``richardson`` the grid is also run at h/2
    and combined as (4 f_{h/2} - f_h) / 3 on the coarse points.
    """
    if not h > 0:
        raise DomainError("h must be positive")
    if not x_max > 0:
        raise DomainError("x_max must be positive")
    a = _alpha_floats(alpha)
    n = int(round(x_max / h)) + 1
    coarse = _convolve_on_grid(a, h, n)
    if richardson:
        fine = _convolve_on_grid(a, h / 2, 2 * n - 1)[::2]
        coarse = (4 * fine - coarse) / 3
    return GridFunction(h * np.arange(n), coarse, h)


# ---------------------------------------------------------------- moments

def _moment_tail_bound(a: np.ndarray, p: int, T: float) -> float:
    """Upper bound on int_T^inf x^p Lambda(x) dx.

    The sum is stochastically below max(alpha) * Gamma(m, 1) and x^p 1{x > T}
    is nondecreasing, so the gamma tail moment bounds it.
    """
    m, amax = len(a), float(np.max(a))
    log_full = p * math.log(amax) + math.lgamma(m + p) - math.lgamma(m)
    return math.exp(log_full) * float(special.gammaincc(m + p, T / amax))


def quadrature_moment(alpha: AlphaLike, p: int, tol: float = 1e-10) -> float:
    """int_0^inf x^p Lambda(x) dx by adaptive quadrature with a certified tail cut."""
    if p < 0:
        raise DomainError("p must be nonnegative")
    a = _alpha_floats(alpha)
    mix = build_density(alpha)
    # Jensen: mu_p >= mu_1^p, a scale-free floor for the relative target
    floor = float(np.sum(a)) ** p
    T = float(np.max(a)) * (len(a) + p)
    while _moment_tail_bound(a, p, T) > tol * floor / 4:
        T *= 1.5
    edges = np.linspace(0.0, T, 33)
    parts, err = [], 0.0
    for lo, hi in zip(edges, edges[1:]):
        v, e = integrate.quad(
            lambda t: t**p * evaluate(mix, t), lo, hi, epsabs=0.0, epsrel=tol / 8, limit=200
        )
        parts.append(v)
        err += e
    val = math.fsum(parts)
    if err > tol * abs(val) / 2:
        raise ToleranceError(f"quadrature error {err:.3g} exceeds the relative target")
    return val


# ---------------------------------------------------------------- sampling

def rng(seed: int) -> np.random.Generator:
    """Philox4x64 counter-based generator keyed by a 64-bit seed."""
    return np.random.Generator(np.random.Philox(int(seed) & (2**64 - 1)))


def sample(alpha: AlphaLike, n: int, seed: int) -> np.ndarray:
    """n draws of sum alpha_j X_j, X_j unit exponentials by inverse CDF -ln(1 - U)."""
    if n < 1:
        raise DomainError("n must be positive")
    a = _alpha_floats(alpha)
    u = rng(seed).random((n, len(a)))
    return -np.log1p(-u) @ a


def sample_moment_check(draws: np.ndarray, p: int) -> tuple[float, float]:
    """Sample mean of x^p and its standard error."""
    xp = draws.astype(float) ** p
    return float(np.mean(xp)), float(np.std(xp, ddof=1) / math.sqrt(len(xp)))


# ---------------------------------------------------------------- total nonnegativity

@dataclass(frozen=True)
class MinorSample:
    x: tuple[float, ...]
    y: tuple[float, ...]
    det: float
    scale: float
    certified_det: float | None = None

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.x, self.x[1:])) or any(b <= a for a, b in zip(self.y, self.y[1:])):
            raise DomainError("minor points must be strictly increasing")

    @property
    def certified_negative(self) -> bool:
        return self.certified_det is not None and self.certified_det < 0


def _as_mixture(target) -> RateMixture:
    return target if isinstance(target, RateMixture) else build_density(target)


def _mp_mixture(mix: RateMixture):
    """Evaluator of ``mix`` in the current mpmath precision (right limit at 0)."""
    terms = [(mpmath.mpf(r.numerator) / r.denominator, [mpmath.mpf(c.numerator) / c.denominator for c in poly.coeffs])
             for r, poly in zip(mix.rates, mix.coeffs)]

    def f(t):
        if t < 0:
            return mpmath.mpf(0)
        return mpmath.fsum(mpmath.polyval(cs[::-1], t) * mpmath.exp(-r * t) for r, cs in terms)

    return f


def minor_det_mp(mix: RateMixture, x: Sequence[float], y: Sequence[float], dps: int = 60) -> float:
    """det(f(x_j - y_k)) with the float points taken exactly and entries at ``dps`` digits."""
    with mpmath.workdps(dps):
        f = _mp_mixture(mix)
        M = mpmath.matrix([[f(mpmath.mpf(xj) - mpmath.mpf(yk)) for yk in y] for xj in x])
        return float(mpmath.det(M))


def tnn_minor_sample(
    target,
    order: int,
    trials: int,
    seed: int,
    box: tuple[float, float] = (0.0, 3.0),
    y_box: tuple[float, float] | None = None,
    certify_dps: int | None = None,
    threads: int = 1,
) -> list[MinorSample]:
    """Random minors det(f(x_j - y_k)) of the Toeplitz kernel of ``target``.

    ``target`` is an alpha tuple or any RateMixture. The x-points are sorted
    uniform draws from ``box`` and the y-points from ``y_box`` (default: the
    same box). Trial i uses its own Philox stream (seed, i), so results do
    not depend on evaluation order. With ``certify_dps`` each determinant
    is also recomputed in mpmath, which resolves signs of minors far below
    double-precision rounding. Results are identical for any ``threads``.
    """
    if not 1 <= order <= 6:
        raise DomainError("order must be between 1 and 6")
    mix = _as_mixture(target)
    y_box = box if y_box is None else y_box

    def one(i: int) -> MinorSample | None:
        g = np.random.Generator(np.random.Philox(key=[int(seed) & (2**64 - 1), i]))
        x = np.sort(g.uniform(*box, order))
        y = np.sort(g.uniform(*y_box, order))
        if np.any(np.diff(x) <= 0) or np.any(np.diff(y) <= 0):
            return None
        M = evaluate(mix, (x[:, None] - y[None, :]).ravel()).reshape(order, order)
        scale = float(np.max(np.abs(M)))
        cert = minor_det_mp(mix, x.tolist(), y.tolist(), certify_dps) if certify_dps else None
        return MinorSample(tuple(x.tolist()), tuple(y.tolist()), float(np.linalg.det(M)), scale, cert)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one, range(trials)))
    else:
        results = [one(i) for i in range(trials)]
    return [r for r in results if r is not None]


def minor_floor(s: MinorSample, rel: float = 1e-8, absolute: float = 1e-10) -> float:
    """Most negative float determinant still attributable to rounding."""
    return -max(absolute, rel * s.scale ** len(s.x))


# ---------------------------------------------------------------- derivatives

def finite_difference_derivative(mix: RateMixture, x: float, order: int, h: float = 1e-4, dps: int = 80) -> float:
    """Forward difference h^-n sum_k (-1)^(n-k) C(n,k) f(x + k h); error O(h).

    The stencil is one-sided so it reads right limits at x = 0. Values are
    computed in mpmath at ``dps`` digits, which removes the cancellation of
    high-order differences.
    """
    if not 0 <= order <= 6:
        raise DomainError("order must be between 0 and 6")
    if not h > 0:
        raise DomainError("h must be positive")
    with mpmath.workdps(dps):
        f = _mp_mixture(mix)
        X, H = mpmath.mpf(x), mpmath.mpf(h)
        acc = mpmath.fsum((-1) ** (order - k) * mpmath.binomial(order, k) * f(X + k * H) for k in range(order + 1))
        return float(acc / H**order)


__all__ = [
    "GridFunction",
    "MinorSample",
    "finite_difference_derivative",
    "fourier_mellin",
    "grid_convolution",
    "minor_det_mp",
    "minor_floor",
    "quadrature_moment",
    "rng",
    "sample",
    "sample_moment_check",
    "tnn_minor_sample",
]
