import itertools
from fractions import Fraction

import pytest


def brute_universe(n_max, sum_max, n_min=1):
    """Every tuple with n in [n_min, n_max] and entry sum <= sum_max, by brute force."""
    out = []
    for n in range(n_min, n_max + 1):
        for t in itertools.product(range(sum_max + 1), repeat=n):
            if sum(t) <= sum_max:
                out.append(t)
    return out


def lcf_by_definition(t):
    """F_L straight from the double-sum definition, as a Fraction."""
    n = len(t)
    prefix = [0]
    for y in t:
        prefix.append(prefix[-1] + y)
    num = sum(3 ** (n - i) * 2 ** prefix[i - 1] for i in range(1, n + 1))
    return Fraction(num, 2 ** prefix[n] - 3**n)


def naive_satisfying(t):
    v = lcf_by_definition(t)
    return v.denominator == 1 and v > 0


@pytest.fixture(scope="session")
def universe():
    return brute_universe(4, 10)


@pytest.fixture(scope="session")
def universe6():
    return brute_universe(6, 12)


@pytest.fixture(scope="session")
def satisfying_universe(universe):
    return [t for t in universe if naive_satisfying(t)]


@pytest.fixture(scope="session")
def satisfying_universe6(universe6):
    return [t for t in universe6 if naive_satisfying(t)]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
