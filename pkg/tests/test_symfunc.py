from fractions import Fraction as F
from itertools import combinations, combinations_with_replacement
from math import prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hwlab.errors import ArityError, DistinctnessError, DomainError
from hwlab.linalg import det, identity, matmul
from hwlab.poly import Poly
from hwlab.symfunc import (
    complete_homogeneous,
    complete_homogeneous_all,
    complete_homogeneous_float,
    elementary,
    elementary_float,
    elementary_matrix,
    elementary_matrix_inverse,
    power_sum,
    schur,
    schur_bialternant,
    schur_jacobi_trudi,
    vandermonde_det,
    vdm_identity_check,
)

from conftest import rand_alpha


def brute_h(l, a):
    return sum((prod(c, start=F(1)) for c in combinations_with_replacement(a, l)), F(0))


def brute_e(l, a):
    return sum((prod(c, start=F(1)) for c in combinations(a, l)), F(0))


small = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=9), min_size=1, max_size=5)


def test_elementary_examples():
    assert elementary(0, (5, 7)) == 1
    assert elementary(2, (1, 2, 3)) == 11
    assert elementary(3, (1, 2)) == 0


def test_complete_examples():
    assert complete_homogeneous(0, (9, 4, 4)) == 1
    assert complete_homogeneous(2, (1, 2)) == 7
    assert complete_homogeneous(5, (1, 2, 3)) == brute_h(5, (1, 2, 3))


@settings(max_examples=80, deadline=None)
@given(small, st.integers(0, 6))
def test_against_enumeration(a, l):
    a = [F(v) for v in a]
    assert elementary(l, a) == brute_e(l, a)
    assert complete_homogeneous(l, a) == brute_h(l, a)


def test_generating_function():
    # sum h_l z^l = prod (1 - a_j z)^-1 truncated; checked as prod (1 - a_j z) * H(z) = 1 mod z^(L+1)
    a = (F(1, 2), F(3), F(2, 7), F(3))
    L = 10
    H = Poly(complete_homogeneous_all(L, a))
    E = Poly.const(1)
    for v in a:
        E = E * Poly([1, -v])
    assert (E * H).coeffs[: L + 1] == tuple([F(1)] + [F(0)] * L)


def test_float_mirrors():
    a = (0.5, 1.5, 2.0)
    assert elementary_float(2, a) == pytest.approx(float(elementary(2, (F(1, 2), F(3, 2), 2))))
    assert complete_homogeneous_float(6, a) == pytest.approx(float(brute_h(6, (F(1, 2), F(3, 2), 2))))


def test_ratio_limit():
    a = (1.0, 0.7, 0.5, 0.9)
    r = complete_homogeneous_float(501, a) / complete_homogeneous_float(500, a)
    assert abs(r - max(a)) < 0.01 * max(a)


def test_schur_examples():
    assert schur_bialternant((0, 2), (1, 2)) == 3
    assert schur_jacobi_trudi((0, 2), (1, 2)) == 3
    assert schur_bialternant((1, 1), (1, 2)) == 0
    assert schur_jacobi_trudi((1, 1), (1, 2)) == 0
    assert schur_bialternant((0, 1, 2), (F(1, 3), 5, 7)) == 1


def test_schur_errors():
    with pytest.raises(DistinctnessError):
        schur_bialternant((0, 1), (2, 2))
    with pytest.raises(ArityError):
        schur_jacobi_trudi((0, 1, 2), (1, 2))
    with pytest.raises(DomainError):
        schur_jacobi_trudi((2, 1), (1, 2))


def test_schur_dispatch_repeated():
    # repeated variables go through Jacobi-Trudi; (0, 2) on (c, c) is h_1 = 2c
    assert schur((0, 2), (3, 3)) == 6


def test_h_and_e_as_schur(rng):
    for _ in range(30):
        m = rng.randint(2, 4)
        a = rand_alpha(rng, m, distinct=True)
        for l in range(9):
            lam = tuple(range(m - 1)) + (m - 1 + l,)
            assert schur_jacobi_trudi(lam, a) == complete_homogeneous(l, a)
        for l in range(m + 1):
            lam = tuple(v for v in range(m + 1) if v != l)
            assert schur(lam, a) == elementary(m - l, a)


def test_vandermonde():
    assert vandermonde_det((1, 2, 3)) == 2
    assert vandermonde_det((4, 4)) == 0
    assert vandermonde_det((1, 2)) == 1


def test_elementary_matrix_examples():
    E = elementary_matrix((1, 2))
    assert E == [[1, 1], [2, 1]]
    assert det(E) == -1
    assert elementary_matrix_inverse((1, 2)) == [[-1, 1], [2, -1]]
    assert elementary_matrix((1, 2, 3))[0] == [1, 1, 1]


def test_elementary_matrix_identities(rng):
    for _ in range(20):
        m = rng.randint(2, 6)
        a = rand_alpha(rng, m, distinct=True)
        E = elementary_matrix(a)
        assert det(E) == (-1) ** (m * (m - 1) // 2) * vandermonde_det(a)
        if m <= 5:
            inv = elementary_matrix_inverse(a)
            assert matmul(E, inv) == identity(m)
            assert matmul(inv, E) == identity(m)


def test_inverse_rejects_repeats():
    with pytest.raises(DistinctnessError):
        elementary_matrix_inverse((1, 1, 2))


def test_vdm_identity(rng):
    lhs, rhs = vdm_identity_check((1, 2), 0)
    assert lhs == rhs == Poly.const(1)
    lhs, rhs = vdm_identity_check((1, 3, 3), 1)
    assert lhs.is_zero() and rhs.is_zero()
    for _ in range(10):
        a = rand_alpha(rng, 4, distinct=True)
        for l in range(4):
            lhs, rhs = vdm_identity_check(a, l)
            assert lhs == rhs
    with pytest.raises(DomainError):
        vdm_identity_check((1, 2), 2)


def test_power_sum():
    assert power_sum(3, (1, 2)) == 9
