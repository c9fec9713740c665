"""Denominator reconstruction from cumulants (Kronecker rank + Pade).

With gamma_k = k nu_k = sum_j alpha_j^k, the series
sum_k gamma_k z^-k equals sum_j alpha_j / (z - alpha_j) = Q(z) / P(z) with
P(z) = prod over distinct alpha values of (z - alpha). Repeated parameters
only change the masses in the numerator, so P has degree equal to the
number of distinct values and multiplicities are not recoverable here.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InsufficientDataError, SingularSystemError
from .linalg import det, solve
from .moments import CumulantSeq
from .poly import Poly, ScalarLike, scalars


@dataclass(frozen=True)
class PadePair:
    P: Poly
    Q: Poly

    def denominator_reversed(self) -> Poly:
        """s^m P(1/s); equals F(-s) for the moment polynomial F."""
        return self.P.reversed(int(self.P.degree))


def _hankel(gamma: Sequence[Fraction], r: int, n: int) -> Fraction:
    """det(gamma_{r+j+k})_{j,k=0..n}; ``gamma[0]`` is gamma_1."""
    return det([[gamma[r + j + k - 1] for k in range(n + 1)] for j in range(n + 1)])


def kronecker_rank(power_sums: Sequence[ScalarLike]) -> int:
    """Smallest n whose (n+1)x(n+1) Hankel determinants of gamma vanish for every available shift r >= 1.

    ``power_sums`` is (gamma_1, gamma_2, ...). Raises InsufficientDataError
    when the sequence is all zero or too short to exhibit a vanishing
    determinant.
    """
    g = scalars(power_sums)
    if not g or all(v == 0 for v in g):
        raise InsufficientDataError("power-sum sequence is empty or identically zero")
    N = len(g)
    n = 1
    while 2 * n + 1 <= N:
        if all(_hankel(g, r, n) == 0 for r in range(1, N - 2 * n + 1)):
            return n
        n += 1
    raise InsufficientDataError(
        f"no vanishing Hankel determinant up to order {n - 1}; supply more than {N} power sums"
    )


def pade_denominator(nu: CumulantSeq | Sequence[ScalarLike], m: int) -> PadePair:
    """Monic P (degree m) and Q (degree < m) with P(z) sum_k gamma_k z^-k = Q(z) + O(z^-(m+1)).

    The m matching conditions are the Hankel system
    sum_i p_i gamma_{i+l} = 0 (l = 1..m, p_m = 1), which uses gamma_1..gamma_2m.
    """
    nu = nu if isinstance(nu, CumulantSeq) else CumulantSeq(nu)
    if m < 1:
        raise InsufficientDataError("m must be positive")
    if len(nu) < 2 * m:
        raise InsufficientDataError(f"need {2 * m} cumulants, got {len(nu)}")
    g = nu.power_sums()

    def gamma(k: int) -> Fraction:
        return g[k - 1]

    A = [[gamma(i + l) for i in range(m)] for l in range(1, m + 1)]
    b = [-gamma(m + l) for l in range(1, m + 1)]
    try:
        p = solve(A, b)
    except SingularSystemError as exc:
        raise SingularSystemError(
            f"Hankel system of order {m} is singular; fewer than {m} distinct parameters"
        ) from exc
    P = Poly([*p, Fraction(1)])
    # polynomial part of P(z) * sum_k gamma_k z^-k: coefficient of z^d is sum_i p_i gamma_{i-d}
    Q = Poly(sum((P[i] * gamma(i - d) for i in range(d + 1, m + 1)), Fraction(0)) for d in range(m))
    return PadePair(P, Q)


def k_prime_series(nu: CumulantSeq | Sequence[ScalarLike]) -> list[Fraction]:
    """Coefficients of K'(s) = sum_k k nu_k s^(k-1)."""
    nu = nu if isinstance(nu, CumulantSeq) else CumulantSeq(nu)
    return nu.power_sums()


__all__ = ["PadePair", "k_prime_series", "kronecker_rank", "pade_denominator"]
