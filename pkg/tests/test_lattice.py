import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from thetanulls.errors import ThetaPrecisionError
from thetanulls.theta.lattice import (
    RADIUS_QUANTUM,
    ellipsoid_points,
    minimal_radius,
    quantize_radius,
    radius_for,
    shortest_vector_length,
    tail_bound,
)


def _upper_factor(g: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    b = rng.normal(size=(g, g))
    imag = np.eye(g) + 0.25 * b @ b.T / max(np.linalg.norm(b @ b.T, 2), 1e-12)
    return np.linalg.cholesky(np.pi * imag).T


def _brute_force(T, center, radius):
    inverse = np.linalg.inv(T)
    reach = radius * np.linalg.norm(inverse, axis=1)
    ranges = [range(math.floor(-c - r) - 1, math.ceil(-c + r) + 2) for c, r in zip(center, reach)]
    found = set()
    for k in itertools.product(*ranges):
        if np.linalg.norm(T @ (np.array(k) + center)) <= radius:
            found.add(k)
    return found


@given(
    st.integers(min_value=1, max_value=3),
    st.integers(min_value=0, max_value=10 ** 6),
    st.floats(min_value=0.1, max_value=4.0),
    st.lists(st.floats(min_value=-0.5, max_value=0.5), min_size=3, max_size=3),
)
def test_ellipsoid_points_match_brute_force(g, seed, radius, center):
    T = _upper_factor(g, seed)
    center = np.array(center[:g])
    points = ellipsoid_points(T, center, radius, budget=10 ** 6)
    assert {tuple(int(v) for v in p) for p in points} == _brute_force(T, center, radius)
    assert len({tuple(p) for p in points}) == len(points)


def test_enumeration_is_deterministic():
    T = _upper_factor(3, 11)
    first = ellipsoid_points(T, np.zeros(3), 3.5, budget=10 ** 6)
    second = ellipsoid_points(T, np.zeros(3), 3.5, budget=10 ** 6)
    np.testing.assert_array_equal(first, second)


def test_budget_is_enforced():
    T = np.sqrt(np.pi) * np.eye(2)
    with pytest.raises(ThetaPrecisionError) as excinfo:
        ellipsoid_points(T, np.zeros(2), 20.0, budget=50)
    assert excinfo.value.best_bound == math.inf


def test_shortest_vector_length():
    assert shortest_vector_length(np.sqrt(np.pi) * np.eye(3)) == pytest.approx(np.sqrt(np.pi))
    skew = np.array([[1.0, 0.9], [0.0, 0.5]])
    assert shortest_vector_length(skew) == pytest.approx(math.hypot(0.1, 0.5))


def test_tail_bound_shape():
    g, rho = 2, math.sqrt(math.pi)
    low = minimal_radius(g, rho)
    assert tail_bound(g, rho, low - 1e-3) == math.inf
    values = [tail_bound(g, rho, low + step) for step in (0.0, 0.5, 1.0, 2.0, 4.0)]
    assert all(a > b for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("g", [1, 2, 4])
@pytest.mark.parametrize("target", [1e-6, 1e-9, 1e-13])
def test_radius_for_meets_target(g, target):
    rho = math.sqrt(math.pi)
    radius = radius_for(g, rho, target)
    assert tail_bound(g, rho, radius) <= target
    if radius > minimal_radius(g, rho) + 1e-3:
        assert tail_bound(g, rho, radius - 1e-3) > target


@given(st.floats(min_value=0.01, max_value=50.0))
def test_quantize_radius(radius):
    q = quantize_radius(radius)
    assert q >= radius
    assert q - radius < RADIUS_QUANTUM
    assert (q / RADIUS_QUANTUM) == pytest.approx(round(q / RADIUS_QUANTUM))
