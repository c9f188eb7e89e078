from typing import List, Optional

from pydantic import BaseModel, ConfigDict, computed_field

from ..characteristics import (
    conjectural_torsion_bound,
    corollary_bound,
    hyperelliptic_enumerated_count,
    hyperelliptic_parity_profile,
    hyperelliptic_theta2,
    quadric_count,
    theta2_bound,
)
from ..characteristics.characteristic import check_genus
from ..characteristics.hyperelliptic import MAX_CLOSED_FORM_GENUS, MAX_ENUMERATION_GENUS
from ..multmap import RankReport


class RankScanResult(BaseModel):
    """A batch of rank reports from one of the scans; skipped counts trials dropped as ambiguous."""
    model_config = ConfigDict(frozen=True, ser_json_inf_nan="constants")

    reports: List[RankReport]
    skipped: int = 0

    @computed_field
    @property
    def min_rank(self) -> Optional[int]:
        return min((r.numerical_rank for r in self.reports), default=None)

    @computed_field
    @property
    def all_agree(self) -> bool:
        return all(r.agrees for r in self.reports)

    @computed_field
    @property
    def lower_bounds_ok(self) -> bool:
        return all(r.lower_bound_ok is not False for r in self.reports)


class HyperellipticSummary(BaseModel):
    """Θ(2) of a hyperelliptic Jacobian: closed form, and subset-class enumeration for g <= 10."""
    model_config = ConfigDict(frozen=True)

    g: int
    closed_form: int
    enumerated: Optional[int] = None
    even_classes: Optional[int] = None
    odd_classes: Optional[int] = None

    @computed_field
    @property
    def equal(self) -> Optional[bool]:
        return None if self.enumerated is None else self.enumerated == self.closed_form

    @classmethod
    def for_genus(cls, g: int) -> "HyperellipticSummary":
        """Closed form for g <= 20, cross-checked by class enumeration for g <= 10."""
        check_genus(g, MAX_CLOSED_FORM_GENUS)
        if g > MAX_ENUMERATION_GENUS:
            return cls(g=g, closed_form=hyperelliptic_theta2(g))
        even, odd = hyperelliptic_parity_profile(g)
        return cls(
            g=g,
            closed_form=hyperelliptic_theta2(g),
            enumerated=hyperelliptic_enumerated_count(g),
            even_classes=even,
            odd_classes=odd,
        )


class BoundRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    g: int
    theta2_bound: int
    hyperelliptic: int
    quadrics: int
    m: int
    corollary_bound: int
    conjectured_bound: int


def bound_table(g_range: List[int], m_range: List[int]) -> List[BoundRow]:
    """Rows (g, m) for g and m over inclusive ranges; an empty range gives no rows."""
    g_lo, g_hi = g_range
    m_lo, m_hi = m_range
    return [
        BoundRow(
            g=g,
            theta2_bound=theta2_bound(g),
            hyperelliptic=hyperelliptic_theta2(g),
            quadrics=quadric_count(g),
            m=m,
            corollary_bound=corollary_bound(g, m),
            conjectured_bound=conjectural_torsion_bound(g, 2 * m),
        )
        for g in range(max(g_lo, 1), g_hi + 1)
        for m in range(max(m_lo, 1), m_hi + 1)
    ]
