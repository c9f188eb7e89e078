"""
Closed-form counts and bounds, and the CountReport carrying Θ(n).
"""
from math import comb
from typing import Literal

from pydantic import BaseModel, ConfigDict, model_validator


def odd_count(g: int) -> int:
    """Number of odd characteristics, 2^(g-1)(2^g - 1)."""
    return 2 ** (g - 1) * (2 ** g - 1)


def even_count(g: int) -> int:
    return 2 ** (g - 1) * (2 ** g + 1)


def theta2_bound(g: int) -> int:
    """Sharp bound Θ(2) <= 4^g - 3^g, attained exactly by products of elliptic curves."""
    return 4 ** g - 3 ** g


def corollary_bound(g: int, m: int) -> int:
    """Θ(2m) <= m^(2g) (4^g - 3^g)."""
    return m ** (2 * g) * theta2_bound(g)


def conjectural_torsion_bound(g: int, n: int) -> int:
    """The expected sharp bound n^(2g) - (n^2 - 1)^g for Θ(n). Reported, never enforced."""
    return n ** (2 * g) - (n * n - 1) ** g


def quadric_count(g: int) -> int:
    """Quadrics cutting out the image of a product of elliptic curves under |2Θ|."""
    return even_count(g) - 3 ** g


def hyperelliptic_theta2(g: int) -> int:
    """Θ(2) = 4^g - C(2g+1, g) for a hyperelliptic Jacobian with symmetric Θ."""
    return 4 ** g - comb(2 * g + 1, g)


class CountReport(BaseModel):
    """Θ(n) together with the bound it is checked against.

    Attributes:
        odd_count: Odd 2-torsion points (always on a symmetric Θ); 0 for odd n.
        even_vanishing: theta_n - odd_count.
        bound_kind: "theorem" for n = 2, "corollary" for even n > 2,
            "conjectural" for odd n.
    """
    model_config = ConfigDict(frozen=True)

    g: int
    n: int
    odd_count: int
    even_vanishing: int
    theta_n: int
    bound: int
    achieves_bound: bool
    bound_kind: Literal["theorem", "corollary", "conjectural"] = "theorem"

    @model_validator(mode="after")
    def _consistent(self) -> "CountReport":
        if self.theta_n != self.odd_count + self.even_vanishing:
            raise ValueError(
                f"theta_n={self.theta_n} differs from odd_count + even_vanishing "
                f"= {self.odd_count} + {self.even_vanishing}"
            )
        if self.achieves_bound != (self.theta_n == self.bound):
            raise ValueError("achieves_bound must equal (theta_n == bound)")
        return self
