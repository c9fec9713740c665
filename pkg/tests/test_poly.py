from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hwlab.poly import Poly, RationalFunction, format_scalar, poly_gcd, squarefree_decomposition, to_scalar

coeffs = st.lists(st.fractions(min_value=-50, max_value=50, max_denominator=20), max_size=6)


def test_scalar_parsing():
    assert to_scalar("3/4") == F(3, 4)
    assert to_scalar("0.5") == F(1, 2)
    assert to_scalar(0.1) == F(1, 10)
    assert to_scalar(7) == 7
    assert format_scalar(F(-3, 6)) == "-1/2"
    assert format_scalar(F(4)) == "4"


def test_degree_and_zero():
    assert Poly([0, 0]).is_zero()
    assert Poly([1, 2, 0]).degree == 1
    assert Poly([]).degree == float("-inf")


def test_division_roundtrip():
    p = Poly([1, -3, 0, 2])
    q = Poly([1, 1])
    quo, rem = p.divmod(q)
    assert quo * q + rem == p
    assert rem.degree < q.degree


@settings(max_examples=60, deadline=None)
@given(coeffs, coeffs)
def test_ring_laws(a, b):
    p, q = Poly(a), Poly(b)
    assert p * q == q * p
    assert (p + q) - q == p
    x = F(3, 7)
    assert (p * q)(x) == p(x) * q(x)


def test_gcd_and_squarefree():
    f = Poly.from_roots([1, 1, 2, 3, 3, 3])
    g = Poly.from_roots([1, 3, 5])
    assert poly_gcd(f, g) == Poly.from_roots([1, 3])
    parts = squarefree_decomposition(f)
    prod = Poly.const(1)
    for factor, mult in parts:
        prod = prod * factor**mult
    assert prod.monic() == f.monic()
    assert {m for _, m in parts} == {1, 2, 3}


def test_reversed_and_compose():
    p = Poly([2, -3, 1])
    assert p.reversed(2) == Poly([1, -3, 2])
    assert p.compose(Poly([0, -1])) == Poly([2, 3, 1])


def test_rational_function_reduction():
    r = RationalFunction(Poly.from_roots([1, 2]), Poly.from_roots([1, 2, 3]))
    red = r.reduced()
    assert red.num.is_constant() and red.den == Poly.from_roots([3])
    assert r == red


def test_division_by_zero_poly():
    with pytest.raises(ZeroDivisionError):
        Poly([1, 2]).divmod(Poly([]))
