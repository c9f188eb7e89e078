"""
Kempf's rank count for M(x, y): the rank equals the number of 2-torsion points
η with y - x + η off the theta divisor. verify_kempf puts the sampled rank and
the count side by side.
"""
from typing import List, Optional

import numpy as np
from loguru import logger

from ..characteristics import Characteristic
from ..errors import AmbiguousVanishingError, PreconditionError
from ..ppav.torsion import VanishVerdict, classify, torsion_points
from ..theta import RiemannMatrix, theta_batch
from .maps import default_samples, product_evaluation_matrix, sampling_eps
from .rank import RankReport, normalize_rows, numerical_rank, require_reliable


def kempf_verdicts(
    tau: RiemannMatrix, w, eps: float = 1e-9, vanish_tol: float = 1e-6, threads: Optional[int] = None
) -> List[VanishVerdict]:
    """Vanishing verdicts for θ(w + z_η) over the 4^g half-periods z_η.

    Values are normalized by the largest of the 4^g translates.
    """
    if not 0 < eps <= vanish_tol / 10:
        raise PreconditionError(f"eps={eps:g} must be positive and at most vanish_tol/10 = {vanish_tol / 10:g}")
    g = tau.g
    w = np.asarray(w, dtype=complex).reshape(-1)
    halves = torsion_points(g, 2)
    rows = theta_batch([w + eta.z(tau) for eta in halves], tau, [Characteristic.zero(g)],
                       eps=eps, normalized=True, threads=threads)
    values = [row[0] for row in rows]
    scale = max(abs(r.value) for r in values)
    if scale == 0.0:
        raise AmbiguousVanishingError("theta vanishes at every translate of A[2]")
    return [classify(abs(r.value) / scale, r.error_bound / scale, vanish_tol, eta) for eta, r in zip(halves, values)]


def kempf_predicted_rank(
    tau: RiemannMatrix, x, y, eps: float = 1e-9, vanish_tol: float = 1e-6, threads: Optional[int] = None
) -> int:
    """#{η ∈ A[2] : y - x + η ∉ Θ}.

    Raises:
        AmbiguousVanishingError: Some translate falls in the ambiguity band.
    """
    w = np.asarray(y, dtype=complex) - np.asarray(x, dtype=complex)
    verdicts = kempf_verdicts(tau, w, eps, vanish_tol, threads)
    ambiguous = [v for v in verdicts if v.verdict == "ambiguous"]
    if ambiguous:
        raise AmbiguousVanishingError(
            f"{len(ambiguous)} translates of y - x are neither clearly on nor clearly off Θ", verdicts
        )
    return sum(v.verdict == "nonvanishing" for v in verdicts)


def verify_kempf(
    tau: RiemannMatrix,
    x,
    y,
    eps: float = 1e-9,
    vanish_tol: float = 1e-6,
    rel_tol: float = 1e-8,
    n_samples: Optional[int] = None,
    seed: int = 0,
    threads: Optional[int] = None,
    label: str = "",
) -> RankReport:
    """Sampled rank of M(x, y) next to Kempf's count.

    The rank is also checked against the lower bound 3^g; a violation is
    flagged in the report and logged, not raised.

    Raises:
        AmbiguousVanishingError: Kempf's count is not decidable at vanish_tol.
        UnreliableRankError: The singular-value gap at the cut is below 10^3.
    """
    g = tau.g
    n_samples = n_samples or default_samples(g)
    kempf = kempf_predicted_rank(tau, x, y, eps, vanish_tol, threads)
    M = product_evaluation_matrix(tau, x, y, n_samples, seed, sampling_eps(eps, rel_tol), threads)
    report = numerical_rank(normalize_rows(M), rel_tol).with_kempf(kempf, lower_bound=3 ** g, label=label)
    require_reliable(report)
    logger.info(
        f"g={g} {label or 'M(x,y)'}: rank {report.numerical_rank}, Kempf {kempf}, gap {report.gap_ratio:.3g}"
    )
    if not report.lower_bound_ok:
        logger.warning(f"rank {report.numerical_rank} below the lower bound {3 ** g} ({label})")
    if not report.agrees:
        logger.warning(f"rank {report.numerical_rank} disagrees with Kempf's count {kempf} ({label})")
    return report
