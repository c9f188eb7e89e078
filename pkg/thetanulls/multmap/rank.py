"""
Numerical rank of sampled evaluation matrices.
"""
import math
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from ..errors import UnreliableRankError

RELIABLE_GAP = 1e3


class RankReport(BaseModel):
    """
    Numerical rank of a multiplication map together with its cross-checks.

    Attributes:
        numerical_rank: #{i : σ_i >= rel_tol σ_1}.
        singular_values: Descending singular values of the row-normalized matrix.
        gap_ratio: σ_r / σ_(r+1) at the cut; infinite at full rank or rank 0.
        full_rank: min of the matrix shape.
        kempf_count: #{η ∈ A[2] : y - x + η ∉ Θ}, when computed.
        agrees: numerical_rank == kempf_count, when kempf_count is known.
        lower_bound: Lower bound the rank is checked against (3^g, or 11 in the genus-2 scan).
        label: Free text identifying the configuration.
    """
    model_config = ConfigDict(frozen=True, ser_json_inf_nan="constants")

    numerical_rank: int = Field(ge=0)
    singular_values: List[float]
    rel_tol: float
    gap_ratio: float
    full_rank: int = Field(ge=0)
    kempf_count: Optional[int] = None
    agrees: Optional[bool] = None
    lower_bound: Optional[int] = None
    lower_bound_ok: Optional[bool] = None
    label: str = ""

    @model_validator(mode="after")
    def _consistent(self) -> "RankReport":
        sv = self.singular_values
        if any(s < 0 for s in sv) or any(a < b for a, b in zip(sv, sv[1:])):
            raise ValueError("singular values must be non-negative and descending")
        if self.agrees is not None and self.kempf_count is not None:
            if self.agrees != (self.numerical_rank == self.kempf_count):
                raise ValueError("agrees must equal (numerical_rank == kempf_count)")
        return self

    @computed_field
    @property
    def reliable(self) -> bool:
        return self.gap_ratio >= RELIABLE_GAP or self.numerical_rank == self.full_rank

    def with_kempf(self, kempf_count: int, lower_bound: Optional[int] = None, label: str = "") -> "RankReport":
        update = dict(kempf_count=kempf_count, agrees=self.numerical_rank == kempf_count, label=label or self.label)
        if lower_bound is not None:
            update.update(lower_bound=lower_bound, lower_bound_ok=self.numerical_rank >= lower_bound)
        return self.model_validate({**self.model_dump(exclude={"reliable"}), **update})


def normalize_rows(M: np.ndarray) -> np.ndarray:
    """Scale every row to unit maximum modulus; zero rows stay zero."""
    M = np.asarray(M)
    peaks = np.max(np.abs(M), axis=1, keepdims=True) if M.size else np.ones((M.shape[0], 1))
    return M / np.where(peaks > 0, peaks, 1.0)


def numerical_rank(M: np.ndarray, rel_tol: float = 1e-8) -> RankReport:
    """Rank by relative singular-value threshold, with the gap at the cut."""
    if not 0 < rel_tol < 1:
        raise ValueError(f"rel_tol must lie in (0, 1), got {rel_tol}")
    M = np.asarray(M)
    full = min(M.shape) if M.ndim == 2 else 0
    if M.size == 0:
        sv = np.zeros(0)
    else:
        try:
            sv = np.linalg.svd(M, compute_uv=False)
        except np.linalg.LinAlgError as e:
            raise ArithmeticError(f"singular value decomposition failed: {e}") from None
    rank = int(np.sum(sv >= rel_tol * sv[0])) if sv.size and sv[0] > 0 else 0
    if rank == 0 or rank == full or sv[rank] == 0:
        gap = math.inf
    else:
        gap = float(sv[rank - 1] / sv[rank])
    return RankReport(
        numerical_rank=rank,
        singular_values=[float(s) for s in sv],
        rel_tol=rel_tol,
        gap_ratio=gap,
        full_rank=full,
    )


def require_reliable(report: RankReport) -> RankReport:
    """Pass a report through, or raise when its cut sits in a small spectral gap."""
    if not report.reliable:
        raise UnreliableRankError(
            f"rank cut at {report.numerical_rank} has gap ratio {report.gap_ratio:.3g} < {RELIABLE_GAP:g}"
            + (f" ({report.label})" if report.label else ""),
            report,
        )
    return report
