"""
Sampled matrices of the multiplication maps

    M(x, y): H0(t_x^* L²) ⊗ H0(t_y^* L²) → H0(t_x^* L² ⊗ t_y^* L²)

and of its symmetric square at x = y = 0. Columns are sample points of the
fundamental parallelotope; a product of sections is determined by its values,
so the rank of the sampled matrix is the rank of the map once there are
enough samples.
"""
from typing import Optional

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict

from ..characteristics import quadric_count
from ..errors import GenusRangeError, SampleBudgetError
from ..theta import RiemannMatrix
from .basis import SectionBasis
from .rank import RankReport, normalize_rows, numerical_rank, require_reliable

MAX_GENUS = 4
MAX_SAMPLES = 8192
SAMPLE_EPS_FACTOR = 1e-4


def default_samples(g: int) -> int:
    return 2 * 4 ** g + 16


def sampling_eps(eps: float, rel_tol: float) -> float:
    """Factor accuracy used for matrix assembly: far below the rank cut."""
    return min(eps, rel_tol * SAMPLE_EPS_FACTOR)


def sample_points(tau: RiemannMatrix, n_samples: int, seed: int) -> np.ndarray:
    """n_samples points s + τ t, s and t uniform on [0,1)^g."""
    rng = np.random.default_rng(seed)
    s = rng.random((n_samples, tau.g))
    t = rng.random((n_samples, tau.g))
    return s + t @ tau.tau.T


def _check_sampling(g: int, n_samples: int, rows: int) -> None:
    if g > MAX_GENUS:
        raise GenusRangeError(f"multiplication maps are supported for g <= {MAX_GENUS}, got {g}")
    if n_samples < 2 * rows:
        raise SampleBudgetError(f"need at least {2 * rows} samples for {rows} rows, got {n_samples}")
    if n_samples > MAX_SAMPLES:
        raise SampleBudgetError(f"{n_samples} samples exceed the budget of {MAX_SAMPLES}")


def product_evaluation_matrix(
    tau: RiemannMatrix,
    x,
    y,
    n_samples: Optional[int] = None,
    seed: int = 0,
    eps: float = 1e-9,
    threads: Optional[int] = None,
) -> np.ndarray:
    """(4^g x n_samples) matrix; row σ 2^g + σ' holds f_σ(z_j + x) f_σ'(z_j + y).

    Raises:
        GenusRangeError: g > 4.
        SampleBudgetError: n_samples < 2·4^g or above MAX_SAMPLES.
    """
    g = tau.g
    n_samples = n_samples or default_samples(g)
    _check_sampling(g, n_samples, 4 ** g)
    z = sample_points(tau, n_samples, seed)
    fx = SectionBasis(tau, x).evaluate(z, eps, threads)
    fy = SectionBasis(tau, y).evaluate(z, eps, threads)
    return np.einsum("js,jt->stj", fx, fy).reshape(4 ** g, n_samples)


def symmetric_product_matrix(
    tau: RiemannMatrix, n_samples: Optional[int] = None, seed: int = 0, eps: float = 1e-9,
    threads: Optional[int] = None,
) -> np.ndarray:
    """Rows f_σ f_σ' for σ <= σ', the image of Sym² H0(L²) → H0(L⁴)."""
    g = tau.g
    n_samples = n_samples or default_samples(g)
    rows = 2 ** (g - 1) * (2 ** g + 1)
    _check_sampling(g, n_samples, rows)
    f = SectionBasis(tau).evaluate(sample_points(tau, n_samples, seed), eps, threads)
    upper_s, upper_t = np.triu_indices(2 ** g)
    return (f[:, upper_s] * f[:, upper_t]).T


class SymKernelReport(BaseModel):
    """Kernel of Sym² H0(L²) → H0(L⁴): the quadrics through the image of A under |2Θ|."""
    model_config = ConfigDict(frozen=True)

    g: int
    kernel_dim: int
    closed_form: int
    matches_closed_form: bool
    rank: RankReport


def sym_kernel_report(
    tau: RiemannMatrix,
    eps: float = 1e-9,
    rel_tol: float = 1e-8,
    n_samples: Optional[int] = None,
    seed: int = 0,
    threads: Optional[int] = None,
) -> SymKernelReport:
    g = tau.g
    M = symmetric_product_matrix(tau, n_samples, seed, sampling_eps(eps, rel_tol), threads)
    rank = require_reliable(numerical_rank(normalize_rows(M), rel_tol).model_copy(update={"label": "Sym M(0,0)"}))
    kernel = M.shape[0] - rank.numerical_rank
    closed = quadric_count(g)
    logger.info(f"g={g}: Sym² kernel dimension {kernel} (product closed form {closed})")
    return SymKernelReport(g=g, kernel_dim=kernel, closed_form=closed, matches_closed_form=kernel == closed, rank=rank)


def sym_kernel_dim(
    tau: RiemannMatrix,
    eps: float = 1e-9,
    rel_tol: float = 1e-8,
    n_samples: Optional[int] = None,
    seed: int = 0,
    threads: Optional[int] = None,
) -> int:
    """2^(g-1)(2^g+1) - rank of the sampled symmetric products; 2^(g-1)(2^g+1) - 3^g on products."""
    return sym_kernel_report(tau, eps, rel_tol, n_samples, seed, threads).kernel_dim
