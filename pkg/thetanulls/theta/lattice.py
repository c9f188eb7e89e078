"""
Lattice-point enumeration in ellipsoids and the Gaussian tail bound that
decides how large the ellipsoid has to be.

T is an upper-triangular g x g matrix with T^T T = pi * Im(tau). The theta sum
runs over k in Z^g with ||T (k + c)|| <= R; the omitted terms have total
modulus at most

    (g/2) (2/rho)^g Gamma(g/2, (R - rho/2)^2),     R >= (sqrt(g) + rho)/2,

uniformly in the shift c, where rho is the length of the shortest nonzero
vector of the lattice T Z^g and Gamma(s, x) is the upper incomplete gamma
function.
"""
import math

import numpy as np
from scipy.optimize import brentq
from scipy.special import gamma, gammaincc

from ..errors import ThetaPrecisionError

RADIUS_QUANTUM = 0.25


def ellipsoid_points(T: np.ndarray, center: np.ndarray, radius: float, budget: int) -> np.ndarray:
    """Integer points k with ||T (k + center)|| <= radius (Fincke-Pohst).

    Coordinates are fixed from the last one down, one vectorized level at a
    time. The returned (N, g) array is in a deterministic order.
    """
    g = T.shape[0]
    center = np.asarray(center, dtype=float)
    r2 = radius * radius
    points = np.zeros((1, 0), dtype=np.int64)
    used = np.zeros(1)
    for i in range(g - 1, -1, -1):
        tail = points + center[i + 1:]
        s = tail @ T[i, i + 1:]
        half = np.sqrt(np.maximum(r2 - used, 0.0)) / T[i, i]
        mid = -center[i] - s / T[i, i]
        lo = np.ceil(mid - half).astype(np.int64)
        hi = np.floor(mid + half).astype(np.int64)
        counts = np.maximum(hi - lo + 1, 0)
        total = int(counts.sum())
        if total > budget:
            raise ThetaPrecisionError(
                f"ellipsoid of radius {radius:.4g} holds more than {budget} lattice points",
                best_bound=float("inf"),
            )
        parent = np.repeat(np.arange(len(points)), counts)
        offsets = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
        k_i = lo[parent] + offsets
        used = used[parent] + (T[i, i] * (k_i + center[i]) + s[parent]) ** 2
        points = np.column_stack([k_i, points[parent]])
    return points[used <= r2]


def shortest_vector_length(T: np.ndarray) -> float:
    """Length of the shortest nonzero vector of the lattice spanned by the columns of T."""
    g = T.shape[0]
    radius = float(np.min(np.linalg.norm(T, axis=0))) * (1 + 1e-9)
    candidates = ellipsoid_points(T, np.zeros(g), radius, budget=10 ** 6)
    nonzero = candidates[np.any(candidates != 0, axis=1)]
    return float(np.min(np.linalg.norm(nonzero @ T.T, axis=1)))


def minimal_radius(g: int, rho: float) -> float:
    return (math.sqrt(g) + rho) / 2


def tail_bound(g: int, rho: float, radius: float) -> float:
    if radius < minimal_radius(g, rho):
        return float("inf")
    s = g / 2
    return float(s * (2 / rho) ** g * gamma(s) * gammaincc(s, (radius - rho / 2) ** 2))


def radius_for(g: int, rho: float, target: float) -> float:
    """Smallest radius (up to the root finder's tolerance) with tail_bound <= target."""
    low = minimal_radius(g, rho)
    if tail_bound(g, rho, low) <= target:
        return low
    high = low + 1.0
    while tail_bound(g, rho, high) > target:
        high = low + 2 * (high - low)
    radius = brentq(lambda r: tail_bound(g, rho, r) - target, low, high, xtol=1e-10)
    while tail_bound(g, rho, radius) > target:
        radius += 1e-6
    return radius


def quantize_radius(radius: float) -> float:
    """Round up to a multiple of RADIUS_QUANTUM so nearby requests share one enumeration."""
    return math.ceil(radius / RADIUS_QUANTUM) * RADIUS_QUANTUM


def expected_point_count(T: np.ndarray, radius: float) -> float:
    g = T.shape[0]
    unit_ball = math.pi ** (g / 2) / math.gamma(g / 2 + 1)
    return unit_ball * radius ** g / abs(float(np.prod(np.diag(T))))


def radius_within_budget(T: np.ndarray, budget: int) -> float:
    g = T.shape[0]
    unit_ball = math.pi ** (g / 2) / math.gamma(g / 2 + 1)
    return (budget * abs(float(np.prod(np.diag(T)))) / unit_ball) ** (1 / g)
