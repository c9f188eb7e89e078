"""
Certified evaluation of Riemann theta functions with half-integer characteristics

    theta[a,b](z, tau) = sum_k exp(pi i (k + a/2)^T tau (k + a/2) + 2 pi i (k + a/2)^T (z + b/2)).

Every value comes with an absolute error bound covering both the truncated
tail and floating-point rounding. The evaluation:

1. moves the characteristic into the argument,
   theta[a,b](z) = exp(pi i a'^T tau a' + 2 pi i a'^T (z + b')) theta(z + tau a' + b'),
   with a' = a/2, b' = b/2;
2. reduces the argument w modulo Z^g + tau Z^g, collecting the automorphy factor;
3. splits off exp(pi y^T (Im tau)^-1 y) so the remaining terms have modulus
   exp(-||T (k + c)||^2) with c in [-1/2, 1/2]^g;
4. sums over an ellipsoid whose radius comes from the uniform tail bound.

With normalized=True the value is multiplied by exp(-pi y^T (Im tau)^-1 y),
y = Im z. That is the modulus of theta in the canonical hermitian metric and
is periodic on A, so vanishing decisions can compare values across the torus.
"""
from typing import List, Optional, Sequence

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field

from .. import env
from ..characteristics import Characteristic
from ..errors import ThetaPrecisionError
from ..parallel import fan_out
from .lattice import quantize_radius, radius_for, radius_within_budget, tail_bound
from .matrix import RiemannMatrix

UNIT_ROUNDOFF = np.finfo(float).eps / 2


class ThetaResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: complex
    error_bound: float = Field(ge=0)


class AutomorphyDefect(BaseModel):
    """Defect of a functional equation and the bound it must respect."""
    model_config = ConfigDict(frozen=True)

    defect: float = Field(ge=0)
    error_bound: float = Field(ge=0)

    @property
    def within_bound(self) -> bool:
        return self.defect <= self.error_bound


def _as_point(z, g: int) -> np.ndarray:
    z = np.asarray(z, dtype=complex).reshape(-1)
    if z.shape != (g,):
        raise ValueError(f"point has dimension {z.shape[0]}, period matrix has genus {g}")
    return z


def _check_request(tau: RiemannMatrix, c: Characteristic, eps: float) -> None:
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    if c.g != tau.g:
        raise ValueError(f"characteristic has genus {c.g}, period matrix has genus {tau.g}")


def _evaluate(z: np.ndarray, tau: RiemannMatrix, c: Characteristic, eps: float, normalized: bool) -> ThetaResult:
    g = tau.g
    t = tau.tau
    alpha, beta = c.half_vectors()

    w = z + t @ alpha + beta
    log_factor = 1j * np.pi * (alpha @ t @ alpha) + 2j * np.pi * (alpha @ (z + beta))

    shift = np.rint(tau.Y_inv @ w.imag)
    w = w - t @ shift
    log_factor += -1j * np.pi * (shift @ t @ shift) - 2j * np.pi * (shift @ w)
    w = w - np.rint(w.real)

    center = tau.Y_inv @ w.imag
    log_factor += np.pi * (w.imag @ center)
    if normalized:
        log_factor -= np.pi * (z.imag @ tau.Y_inv @ z.imag)

    scale = float(np.exp(log_factor.real))
    if not np.isfinite(scale) or scale == 0.0:
        raise ThetaPrecisionError(f"theta prefactor out of floating range (log scale {log_factor.real:.4g})", float("inf"))

    radius = quantize_radius(radius_for(g, tau.rho, eps / (2 * scale)))
    budget = env.LATTICE_BUDGET
    if tau.expected_points(radius) > budget:
        best_radius = radius_within_budget(tau.T, budget) / (1 + 1e-9) - tau.shift_slack
        best = scale * tail_bound(g, tau.rho, best_radius) if best_radius > 0 else float("inf")
        raise ThetaPrecisionError(
            f"eps={eps:.3g} needs radius {radius} which exceeds the lattice-point budget {budget}", best
        )

    points = tau.lattice_points(radius, budget)
    shifted = points + center
    quad = np.sum((shifted @ tau.T.T) ** 2, axis=1)
    phase = np.pi * np.einsum("ij,jk,ik->i", points, tau.real, points) + 2 * np.pi * (points @ w.real)
    mags = np.exp(-quad)
    partial = complex(np.sum(mags * np.cos(phase)), np.sum(mags * np.sin(phase)))
    value = complex(np.exp(log_factor) * partial)

    u = UNIT_ROUNDOFF
    rounding = u * float(np.sum(mags * ((g + 4) * (quad + np.abs(phase)) + 4)))
    rounding += u * (2 * np.log2(len(points) + 1) + 4) * float(np.sum(mags))
    error = scale * (tail_bound(g, tau.rho, radius) + rounding) + abs(value) * u * (abs(log_factor) + 4)
    if error > eps:
        raise ThetaPrecisionError(f"rounding error {error:.3g} exceeds eps={eps:.3g}", error)
    return ThetaResult(value=value, error_bound=error)


def theta(z, tau: RiemannMatrix, c: Optional[Characteristic] = None, eps: float = 1e-9, normalized: bool = False) -> ThetaResult:
    """Evaluate theta[c](z, tau) with |value - exact| <= error_bound <= eps.

    Args:
        z: Point of C^g.
        tau: The period matrix.
        c: Characteristic; the zero characteristic when omitted.
        eps: Requested absolute error.
        normalized: Return the value times exp(-pi y^T (Im tau)^-1 y), y = Im z.

    Raises:
        ThetaPrecisionError: eps cannot be reached within the lattice-point budget.
    """
    c = c or Characteristic.zero(tau.g)
    _check_request(tau, c, eps)
    return _evaluate(_as_point(z, tau.g), tau, c, eps, normalized)


def theta_batch(
    points: Sequence,
    tau: RiemannMatrix,
    chars: Sequence[Characteristic],
    eps: float = 1e-9,
    normalized: bool = False,
    threads: Optional[int] = None,
) -> List[List[ThetaResult]]:
    """theta() over every (point, characteristic) pair; rows follow points.

    Each entry is bitwise identical to the corresponding theta() call. The
    lattice enumeration is shared through the period matrix's cache.
    """
    for c in chars:
        _check_request(tau, c, eps)
    zs = [_as_point(z, tau.g) for z in points]
    if not zs or not chars:
        return [[] for _ in zs]
    jobs = [(z, c) for z in zs for c in chars]
    flat = fan_out(lambda job: _evaluate(job[0], tau, job[1], eps, normalized), jobs, threads)
    width = len(chars)
    return [flat[i * width:(i + 1) * width] for i in range(len(zs))]


def quasiperiodicity_check(z, tau: RiemannMatrix, k, eps: float = 1e-9) -> AutomorphyDefect:
    """Compare theta(z + tau k) with exp(-pi i k^T tau k - 2 pi i k^T z) theta(z)."""
    z = _as_point(z, tau.g)
    k = np.asarray(k, dtype=np.int64).reshape(-1)
    shifted = theta(z + tau.tau @ k, tau, eps=eps)
    base = theta(z, tau, eps=eps)
    exponent = -1j * np.pi * (k @ tau.tau @ k) - 2j * np.pi * (k @ z)
    factor = np.exp(exponent)
    predicted = factor * base.value
    defect = abs(shifted.value - predicted)
    bound = (
        shifted.error_bound
        + abs(factor) * base.error_bound
        + abs(predicted) * UNIT_ROUNDOFF * (abs(exponent) + 4)
        + abs(shifted.value) * UNIT_ROUNDOFF
    )
    logger.debug(f"quasi-periodicity k={k.tolist()}: defect {defect:.3g}, bound {bound:.3g}")
    return AutomorphyDefect(defect=float(defect), error_bound=float(bound))


def quasiperiodicity_defect(z, tau: RiemannMatrix, k, eps: float = 1e-9) -> float:
    return quasiperiodicity_check(z, tau, k, eps).defect


def periodicity_defect(z, tau: RiemannMatrix, m, eps: float = 1e-9) -> AutomorphyDefect:
    """theta(z + m) = theta(z) for integer m."""
    z = _as_point(z, tau.g)
    m = np.asarray(m, dtype=np.int64).reshape(-1)
    shifted = theta(z + m, tau, eps=eps)
    base = theta(z, tau, eps=eps)
    defect = abs(shifted.value - base.value)
    return AutomorphyDefect(defect=float(defect), error_bound=shifted.error_bound + base.error_bound)
