import threading
from typing import Dict, Optional, Tuple

import numpy as np
from loguru import logger

from .. import env
from ..errors import InvalidPeriodMatrixError
from .lattice import ellipsoid_points, expected_point_count, shortest_vector_length

SYMMETRY_TOLERANCE = 1e-12
MAX_CONDITION_NUMBER = 1e8


class RiemannMatrix:
    """
    A g x g complex symmetric matrix tau with positive-definite imaginary part.

    It stands for the ppav C^g / (Z^g + tau Z^g) with Θ the zero divisor of
    the Riemann theta function. Construction symmetrizes tau and precomputes
    what every theta evaluation needs: (Im tau)^-1, the upper Cholesky factor
    T of pi * Im tau and the shortest vector length of T Z^g.

    Attributes:
        tau: The (read-only) symmetrized matrix.
        Y_inv: Inverse of Im tau.
        T: Upper-triangular factor, T^T T = pi * Im tau.
        rho: Shortest nonzero vector length of the lattice T Z^g.
    """

    def __init__(self, tau):
        tau = np.array(tau, dtype=complex)
        if tau.ndim == 0:
            tau = tau.reshape(1, 1)
        if tau.ndim != 2 or tau.shape[0] != tau.shape[1] or tau.shape[0] == 0:
            raise InvalidPeriodMatrixError(f"period matrix must be square and non-empty, got shape {tau.shape}")
        if not np.all(np.isfinite(tau)):
            raise InvalidPeriodMatrixError("period matrix has non-finite entries")

        size = float(np.max(np.abs(tau)))
        asymmetry = float(np.max(np.abs(tau - tau.T)))
        if asymmetry > SYMMETRY_TOLERANCE * size:
            raise InvalidPeriodMatrixError(f"period matrix is not symmetric (max |tau - tau^T| = {asymmetry:.3g})")
        tau = (tau + tau.T) / 2

        imag = tau.imag
        try:
            lower = np.linalg.cholesky(np.pi * imag)
        except np.linalg.LinAlgError:
            raise InvalidPeriodMatrixError("imaginary part of the period matrix is not positive definite") from None
        condition = float(np.linalg.cond(imag))
        if condition > MAX_CONDITION_NUMBER:
            raise InvalidPeriodMatrixError(f"imaginary part is ill-conditioned (condition number {condition:.3g})")

        tau.setflags(write=False)
        self.tau = tau
        self.Y_inv = np.linalg.inv(imag)
        self.T = lower.T
        self.rho = shortest_vector_length(self.T)
        # any shift c in [-1/2, 1/2]^g moves a point by at most this much
        self.shift_slack = 0.5 * float(np.sum(np.linalg.norm(self.T, axis=0)))

        self._points: Dict[float, np.ndarray] = {}
        self._lock = threading.Lock()
        self._doubled: Optional["RiemannMatrix"] = None

    @property
    def g(self) -> int:
        return self.tau.shape[0]

    @property
    def real(self) -> np.ndarray:
        return self.tau.real

    @property
    def imag(self) -> np.ndarray:
        return self.tau.imag

    def doubled(self) -> "RiemannMatrix":
        """2 tau, the period matrix of the second-order theta functions."""
        if self._doubled is None:
            self._doubled = RiemannMatrix(2 * self.tau)
        return self._doubled

    def enumeration_radius(self, radius: float) -> float:
        return (radius + self.shift_slack) * (1 + 1e-9)

    def lattice_points(self, radius: float, budget: Optional[int] = None) -> np.ndarray:
        """Points k with ||T k|| <= radius + shift_slack, cached per radius.

        This set contains {k : ||T (k + c)|| <= radius} for every reduced
        shift c, so one enumeration serves all evaluation points.
        """
        with self._lock:
            cached = self._points.get(radius)
        if cached is not None:
            return cached
        budget = budget or env.LATTICE_BUDGET
        outer = self.enumeration_radius(radius)
        points = ellipsoid_points(self.T, np.zeros(self.g), outer, budget)
        points.setflags(write=False)
        logger.debug(f"g={self.g}: enumerated {len(points)} lattice points for radius {radius}")
        with self._lock:
            self._points.setdefault(radius, points)
            return self._points[radius]

    def expected_points(self, radius: float) -> float:
        return expected_point_count(self.T, self.enumeration_radius(radius))

    def to_lists(self) -> Tuple[list, list]:
        return self.tau.real.tolist(), self.tau.imag.tolist()

    def __eq__(self, other) -> bool:
        return isinstance(other, RiemannMatrix) and np.array_equal(self.tau, other.tau)

    def __hash__(self) -> int:
        return hash(self.tau.tobytes())

    def __repr__(self) -> str:
        return f"RiemannMatrix(g={self.g}, tau={self.tau.tolist()})"
