from fractions import Fraction as F
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hwlab.errors import SingularSystemError
from hwlab.linalg import bareiss_det_int, det, matmul, solve


def leibniz(M):
    n = len(M)
    total = F(0)
    for p in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        term = F((-1) ** inv)
        for i in range(n):
            term *= M[i][p[i]]
        total += term
    return total


entries = st.fractions(min_value=-6, max_value=6, max_denominator=7)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_matches_leibniz(M):
    assert det(M) == leibniz(M)


def test_bareiss_needs_pivoting():
    assert bareiss_det_int([[0, 1], [1, 0]]) == -1
    assert bareiss_det_int([[0, 0], [1, 2]]) == 0
    assert det([]) == 1


def test_solve():
    A = [[F(2), F(1)], [F(1), F(3)]]
    x = solve(A, [F(3), F(5)])
    assert matmul(A, [[v] for v in x]) == [[3], [5]]
    with pytest.raises(SingularSystemError):
        solve([[F(1), F(2)], [F(2), F(4)]], [F(1), F(1)])
