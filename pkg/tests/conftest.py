import itertools
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def rationals(max_den=12):
    """Hypothesis strategy for rationals in [0, 1]."""
    return st.integers(1, max_den).flatmap(lambda d: st.integers(0, d).map(lambda n: Fraction(n, d)))


def param_vectors(max_n=6, max_den=12):
    return st.lists(rationals(max_den), min_size=0, max_size=max_n)


def brute_stpc(p):
    """Independent oracle: enumerate every sign/zero pattern."""
    out = {}
    for pattern in itertools.product((-1, 0, 1), repeat=len(p)):
        prob = Fraction(1)
        for a, s in zip(p, pattern):
            prob *= (1 - a) if s == 0 else a / 2
        if prob:
            k = sum(pattern)
            out[k] = out.get(k, 0) + prob
    return out


def brute_berc(p):
    out = {}
    for pattern in itertools.product((0, 1), repeat=len(p)):
        prob = Fraction(1)
        for a, s in zip(p, pattern):
            prob *= a if s else 1 - a
        if prob:
            out[sum(pattern)] = out.get(sum(pattern), 0) + prob
    return out


@pytest.fixture
def rng():
    import random

    return random.Random(20240611)
