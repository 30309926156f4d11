import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from gaugecocycles import catalogue
from gaugecocycles.loop_bundle import LoopAlgebra

settings.register_profile(
    "default", max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

small_fractions = st.fractions(min_value=-4, max_value=4, max_denominator=3)


def vectors(n: int):
    return st.lists(small_fractions, min_size=n, max_size=n).map(tuple)


def matrices(n: int, m: int | None = None):
    return st.lists(st.lists(small_fractions, min_size=m or n, max_size=m or n), min_size=n, max_size=n)


_LOOPS: dict = {}


def loops(name: str, twist: str = "identity") -> LoopAlgebra:
    """Shared loop algebras; the cached V-data makes repeated tests cheap."""
    key = (name, twist)
    if key not in _LOOPS:
        data = catalogue.load(name)
        _LOOPS[key] = LoopAlgebra(data.algebra, data.twist(twist))
    return _LOOPS[key]


def seeds():
    return st.integers(min_value=0, max_value=2**32 - 1)


def rand_element(space, seed, max_freq=2):
    return space.random_element(random.Random(seed), max_freq)


@pytest.fixture
def su2():
    return catalogue.load("su2").algebra


@pytest.fixture
def sl2r():
    return catalogue.load("sl2r").algebra


@pytest.fixture
def so4():
    return catalogue.load("so4")


@pytest.fixture
def sl2c():
    return catalogue.load("sl2c")


F = Fraction
