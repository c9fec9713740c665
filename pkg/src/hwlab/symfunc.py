"""Symmetric functions, Schur polynomials and Vandermonde-type matrices.

All routines are exact over Q unless the name says ``float``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import ArityError, DistinctnessError, DomainError
from .linalg import Matrix, det, matmul, transpose
from .poly import Poly, ScalarLike, scalars


def _check_tuple(a: Sequence[ScalarLike], min_len: int = 1) -> tuple[Fraction, ...]:
    a = scalars(a)
    if len(a) < min_len:
        raise ArityError(f"need at least {min_len} entries, got {len(a)}")
    return a


def exponent_tuple(lam: Sequence[int]) -> tuple[int, ...]:
    """Validate a nondecreasing tuple of nonnegative integers."""
    lam = tuple(int(v) for v in lam)
    if not lam:
        raise ArityError("empty exponent tuple")
    if any(v < 0 for v in lam):
        raise DomainError(f"negative exponent in {lam}")
    if any(x > y for x, y in zip(lam, lam[1:])):
        raise DomainError(f"exponents must be nondecreasing: {lam}")
    return lam


def elementary_all(a: Sequence[ScalarLike]) -> list[Fraction]:
    """[e_0(a), ..., e_m(a)], i.e. the coefficients of prod (1 + a_j t)."""
    a = scalars(a)
    e = [Fraction(1)] + [Fraction(0)] * len(a)
    for k, v in enumerate(a, start=1):
        for l in range(k, 0, -1):
            e[l] += v * e[l - 1]
    return e


def elementary(l: int, a: Sequence[ScalarLike]) -> Fraction:
    if l < 0:
        raise DomainError("l must be nonnegative")
    a = _check_tuple(a)
    if l > len(a):
        return Fraction(0)
    return elementary_all(a)[l]


def complete_homogeneous_all(L: int, a: Sequence[ScalarLike]) -> list[Fraction]:
    """[h_0(a), ..., h_L(a)] via sum_{i} (-1)^i e_i h_{l-i} = 0."""
    a = _check_tuple(a)
    e = elementary_all(a)
    m = len(a)
    h = [Fraction(1)]
    for l in range(1, L + 1):
        acc = Fraction(0)
        for i in range(1, min(l, m) + 1):
            term = e[i] * h[l - i]
            acc += term if i % 2 else -term
        h.append(acc)
    return h


def complete_homogeneous(l: int, a: Sequence[ScalarLike]) -> Fraction:
    if l < 0:
        return Fraction(0)
    return complete_homogeneous_all(l, a)[l]


def elementary_float(l: int, a: Sequence[float]) -> float:
    e = [1.0] + [0.0] * len(a)
    for k, v in enumerate(a, start=1):
        for j in range(k, 0, -1):
            e[j] += v * e[j - 1]
    return e[l] if 0 <= l <= len(a) else 0.0


def complete_homogeneous_float(l: int, a: Sequence[float]) -> float:
    """Float h_l by adding one variable at a time.

    h_l(a_1..a_k) = h_l(a_1..a_{k-1}) + a_k h_{l-1}(a_1..a_k); for
    nonnegative input every term is nonnegative, so there is no cancellation
    (unlike the e/h recurrence).
    """
    if l < 0:
        return 0.0
    h = [1.0] + [0.0] * l
    for v in a:
        v = float(v)
        for j in range(1, l + 1):
            h[j] += v * h[j - 1]
    return h[l]


def vandermonde_det(a: Sequence[ScalarLike]) -> Fraction:
    a = _check_tuple(a)
    out = Fraction(1)
    for j in range(len(a)):
        for k in range(j + 1, len(a)):
            out *= a[k] - a[j]
    return out


def is_distinct(a: Sequence[Fraction]) -> bool:
    return len(set(a)) == len(a)


def schur_bialternant(lam: Sequence[int], a: Sequence[ScalarLike]) -> Fraction:
    """det(a_j ** lam_k) / V(a) for pairwise distinct ``a``."""
    lam = exponent_tuple(lam)
    a = _check_tuple(a, 2)
    if len(lam) != len(a):
        raise ArityError("exponent tuple and variables differ in length")
    if not is_distinct(a):
        raise DistinctnessError("bialternant needs distinct variables; use schur_jacobi_trudi")
    if len(set(lam)) != len(lam):
        return Fraction(0)
    return det([[aj**lk for lk in lam] for aj in a]) / vandermonde_det(a)


def schur_jacobi_trudi(lam: Sequence[int], a: Sequence[ScalarLike]) -> Fraction:
    """det(h_{lam_j - k + 1}(a)) for j, k = 1..m, with h_l = 0 for l < 0."""
    lam = exponent_tuple(lam)
    a = _check_tuple(a)
    if len(lam) != len(a):
        raise ArityError("exponent tuple and variables differ in length")
    m = len(a)
    h = complete_homogeneous_all(max(lam) + 1, a)

    def hh(l: int) -> Fraction:
        return h[l] if l >= 0 else Fraction(0)

    # 0-based: row j, column k -> h_{lam_j - k}
    return det([[hh(lam[j] - k) for k in range(m)] for j in range(m)])


def schur(lam: Sequence[int], a: Sequence[ScalarLike]) -> Fraction:
    """Bialternant when ``a`` is distinct, Jacobi-Trudi otherwise."""
    a = scalars(a)
    if len(a) >= 2 and is_distinct(a):
        return schur_bialternant(lam, a)
    return schur_jacobi_trudi(lam, a)


def hat(a: Sequence[Fraction], j: int) -> tuple[Fraction, ...]:
    """``a`` with its j-th (0-based) entry removed."""
    return tuple(a[:j]) + tuple(a[j + 1:])


def elementary_matrix(a: Sequence[ScalarLike]) -> Matrix:
    """E(a): entry (l, j) = e_l(a with entry j removed), l = 0..m-1."""
    a = _check_tuple(a, 2)
    m = len(a)
    cols = [elementary_all(hat(a, j)) for j in range(m)]
    return [[cols[j][l] for j in range(m)] for l in range(m)]


def elementary_matrix_inverse(a: Sequence[ScalarLike]) -> Matrix:
    """Closed-form inverse of :func:`elementary_matrix`.

    Builds (-1)^(m-1) V(a)^-1 D W D_V D with D = diag(1, -1, 1, ...),
    W the descending-power Vandermonde matrix (row i holds a_j^(m-1-i))
    and D_V = diag(V(a without a_j)). That product is the transpose of
    the inverse, so it is transposed before returning.
    """
    a = _check_tuple(a, 2)
    if not is_distinct(a):
        raise DistinctnessError("E(a) is singular when entries repeat")
    m = len(a)
    scale = Fraction((-1) ** (m - 1)) / vandermonde_det(a)
    dv = [vandermonde_det(hat(a, j)) for j in range(m)]
    sign = [(-1) ** i for i in range(m)]
    prod = [
        [scale * sign[i] * a[j] ** (m - 1 - i) * dv[j] * sign[j] for j in range(m)]
        for i in range(m)
    ]
    return transpose(prod)


def vdm_identity_sides(a: Sequence[ScalarLike], l: int) -> tuple[Poly, Poly]:
    """Both sides of V(a) X^l = sum_j (-1)^(j+l-1) a_j^l V(a^_j) prod_{k != j} (X + a_k).

    ``j`` is 1-based in the sign, as written above.
    """
    a = _check_tuple(a, 2)
    m = len(a)
    if not 0 <= l <= m - 1:
        raise DomainError(f"l must lie in 0..{m - 1}")
    lhs = Poly.const(vandermonde_det(a)) * (Poly.x() ** l)
    rhs = Poly()
    for j in range(m):
        rest = hat(a, j)
        prod = Poly.const(1)
        for v in rest:
            prod = prod * Poly.linear(v)
        coeff = (-1) ** (j + 1 + l - 1) * a[j] ** l * vandermonde_det(rest)
        rhs = rhs + prod * coeff
    return lhs, rhs


vdm_identity_check = vdm_identity_sides


def power_sum(k: int, a: Sequence[ScalarLike]) -> Fraction:
    return sum((v**k for v in scalars(a)), Fraction(0))


__all__ = [
    "complete_homogeneous",
    "complete_homogeneous_all",
    "complete_homogeneous_float",
    "elementary",
    "elementary_all",
    "elementary_float",
    "elementary_matrix",
    "elementary_matrix_inverse",
    "exponent_tuple",
    "matmul",
    "power_sum",
    "schur",
    "schur_bialternant",
    "schur_jacobi_trudi",
    "vandermonde_det",
    "vdm_identity_check",
    "vdm_identity_sides",
]
