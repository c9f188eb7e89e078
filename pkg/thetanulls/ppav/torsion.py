"""
Torsion points of A = C^g / (Z^g + tau Z^g) and their vanishing verdicts.
"""
from itertools import product
from typing import List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..characteristics import Characteristic
from ..errors import SampleBudgetError
from ..theta import RiemannMatrix

MAX_TORSION_POINTS = 10 ** 7
AMBIGUITY_FACTOR = 10

Verdict = Literal["vanishes", "nonvanishing", "ambiguous"]


class TorsionPoint(BaseModel):
    """The point (m + tau k)/order of A[order], with 0 <= m_i, k_i < order."""
    model_config = ConfigDict(frozen=True)

    m: Tuple[int, ...]
    k: Tuple[int, ...]
    order: int = Field(ge=1)

    @model_validator(mode="after")
    def _reduced(self) -> "TorsionPoint":
        if len(self.m) != len(self.k) or not self.m:
            raise ValueError("m and k must be non-empty and of equal length")
        if any(not 0 <= v < self.order for v in self.m + self.k):
            raise ValueError(f"coordinates must lie in [0, {self.order})")
        return self

    @property
    def g(self) -> int:
        return len(self.m)

    def z(self, tau: RiemannMatrix) -> np.ndarray:
        return (np.array(self.m, dtype=float) + tau.tau @ np.array(self.k, dtype=float)) / self.order

    def to_characteristic(self) -> Characteristic:
        """(m + tau k)/2 is the point where theta[k, m](0) is read off."""
        if self.order != 2:
            raise ValueError(f"only 2-torsion points carry a characteristic, this one has order {self.order}")
        return Characteristic.from_bits(self.k, self.m)

    @classmethod
    def from_characteristic(cls, c: Characteristic) -> "TorsionPoint":
        return cls(m=c.b, k=c.a, order=2)

    def __str__(self) -> str:
        m = ",".join(map(str, self.m))
        k = ",".join(map(str, self.k))
        return f"({m})+tau({k})/{self.order}"


def torsion_points(g: int, n: int) -> List[TorsionPoint]:
    """All n^(2g) points of A[n], ordered lexicographically by (k, m)."""
    if n < 1 or g < 1:
        raise ValueError(f"need g >= 1 and n >= 1, got g={g}, n={n}")
    if n ** (2 * g) > MAX_TORSION_POINTS:
        raise SampleBudgetError(f"A[{n}] has {n ** (2 * g)} points in genus {g}, more than {MAX_TORSION_POINTS}")
    coords = list(product(range(n), repeat=g))
    return [TorsionPoint(m=m, k=k, order=n) for k in coords for m in coords]


class VanishVerdict(BaseModel):
    """
    Vanishing decision for one point.

    theta_abs and error_bound are normalized by the largest value in the
    family the point was compared against.
    """
    model_config = ConfigDict(frozen=True)

    point: Optional[TorsionPoint] = None
    theta_abs: float = Field(ge=0)
    error_bound: float = Field(ge=0)
    verdict: Verdict


def classify(theta_abs: float, error_bound: float, vanish_tol: float, point: Optional[TorsionPoint] = None) -> VanishVerdict:
    """vanishes below vanish_tol, nonvanishing above 10*vanish_tol, ambiguous in between.

    A value below vanish_tol only vanishes if its error bound is under vanish_tol/10.
    """
    if theta_abs < vanish_tol:
        verdict = "vanishes" if error_bound < vanish_tol / AMBIGUITY_FACTOR else "ambiguous"
    elif theta_abs > AMBIGUITY_FACTOR * vanish_tol:
        verdict = "nonvanishing"
    else:
        verdict = "ambiguous"
    return VanishVerdict(point=point, theta_abs=theta_abs, error_bound=error_bound, verdict=verdict)
