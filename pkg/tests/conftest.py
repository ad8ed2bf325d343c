import numpy as np
import pytest

from banachlab.algebra import linf_sum, random_element
from banachlab.builders import (
    l1_group_algebra,
    l1_semigroup_four,
    lower_triangular_l1,
    pointwise_l1,
    scalar_algebra,
    truncated_l1_naturals,
    weighted_z2,
)


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-size batches and the complete gallery")


@pytest.fixture
def rng():
    return np.random.default_rng(0x5EED)


@pytest.fixture(scope="session")
def z2():
    return l1_group_algebra(2)


@pytest.fixture(scope="session")
def z3():
    return l1_group_algebra(3)


@pytest.fixture(scope="session")
def l1_4():
    return l1_semigroup_four()


@pytest.fixture(scope="session")
def weighted():
    return weighted_z2()


@pytest.fixture(scope="session")
def pointwise3():
    return pointwise_l1(3)


@pytest.fixture(scope="session")
def lower():
    return lower_triangular_l1()


@pytest.fixture(scope="session")
def truncated():
    return truncated_l1_naturals(8)


@pytest.fixture(scope="session")
def lift_setting():
    """C (+)inf l1(Z_2) with the ideal C (+) 0"""
    return linf_sum(scalar_algebra(), l1_group_algebra(2))


@pytest.fixture(scope="session")
def three_scalars():
    """C (+)inf C (+)inf C with the ideal C (+) 0 (+) 0"""
    inner, _ = linf_sum(scalar_algebra(), scalar_algebra())
    return linf_sum(scalar_algebra(), inner)


def in_half_f(algebra, rng, count, scale=0.9):
    """(1 + y) / 2 with ||y|| <= scale: elements of (1/2) F_A"""
    one = algebra.one()
    return [0.5 * (one + random_element(algebra, rng, scale=scale * rng.random())) for _ in range(count)]


@pytest.fixture
def half_f_samples():
    return in_half_f
