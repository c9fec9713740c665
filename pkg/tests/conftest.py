import random
from fractions import Fraction

import pytest

ACCEPTANCE_LINES: list[str] = []


def rand_rational(rng: random.Random, lo: Fraction, hi: Fraction, max_den: int = 12) -> Fraction:
    while True:
        d = rng.randint(1, max_den)
        n = rng.randint(int(lo * d), int(hi * d) + 1)
        q = Fraction(n, d)
        if lo < q <= hi:
            return q


def rand_alpha(rng, m, lo=Fraction(0), hi=Fraction(10), distinct=False, repeat_prob=0.0, max_den=12):
    out: list[Fraction] = []
    while len(out) < m:
        if out and rng.random() < repeat_prob:
            out.append(rng.choice(out))
            continue
        v = rand_rational(rng, lo, hi, max_den)
        if distinct and v in out:
            continue
        out.append(v)
    return tuple(out)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
