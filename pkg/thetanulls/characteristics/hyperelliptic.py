"""
Branch-point calculus for hyperelliptic Jacobians.

For a genus-g hyperelliptic curve with branch points 1..2g+2, the 2-torsion
points are the even-cardinality subsets S of the branch points taken modulo
complement. With U = {1, 3, ..., 2g+1}, the point attached to S lies off the
symmetric theta divisor exactly when |S ∘ U| = g + 1 (∘ is symmetric difference).

The characteristic table pinned in branch_point_characteristic is one
convention among several in the literature; it is only trusted through the
aggregate counts it reproduces.
"""
import itertools
from typing import List, Tuple

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .bits import popcount
from .characteristic import Characteristic, check_genus
from .counts import CountReport, hyperelliptic_theta2, odd_count, theta2_bound

MAX_CLOSED_FORM_GENUS = 20
MAX_ENUMERATION_GENUS = 10


def _u_mask(g: int) -> int:
    # elements 1, 3, ..., 2g+1 sit at bits 0, 2, ..., 2g
    return sum(1 << (2 * i) for i in range(g + 1))


def _to_mask(members) -> int:
    return sum(1 << (k - 1) for k in members)


def _from_mask(mask: int, n_points: int) -> Tuple[int, ...]:
    return tuple(k + 1 for k in range(n_points) if (mask >> k) & 1)


class BranchSubsetClass(BaseModel):
    """An even subset of the branch points modulo complement.

    Attributes:
        g: The genus; branch points are 1..2g+2.
        members: The lexicographically smaller of {T, complement of T}, sorted.
    """
    model_config = ConfigDict(frozen=True)

    g: int = Field(ge=1)
    members: Tuple[int, ...]

    @model_validator(mode="after")
    def _canonical(self) -> "BranchSubsetClass":
        n_points = 2 * self.g + 2
        if len(self.members) % 2:
            raise ValueError(f"branch subset {self.members} has odd cardinality")
        if any(not 1 <= k <= n_points for k in self.members) or len(set(self.members)) != len(self.members):
            raise ValueError(f"branch subset {self.members} is not a subset of 1..{n_points}")
        if self.members != _canonical(self.members, n_points):
            raise ValueError(f"branch subset {self.members} is not the canonical representative")
        return self

    @classmethod
    def from_subset(cls, g: int, subset) -> "BranchSubsetClass":
        return cls(g=g, members=_canonical(subset, 2 * g + 2))

    @property
    def n_points(self) -> int:
        return 2 * self.g + 2

    def complement(self) -> Tuple[int, ...]:
        return tuple(k for k in range(1, self.n_points + 1) if k not in self.members)

    def shifted(self) -> Tuple[int, ...]:
        """S ∘ U, the subset measured against the vanishing criterion."""
        return _from_mask(_to_mask(self.members) ^ _u_mask(self.g), self.n_points)

    @property
    def is_nonvanishing(self) -> bool:
        return len(self.shifted()) == self.g + 1

    def characteristic(self) -> Characteristic:
        total = Characteristic.zero(self.g)
        for k in self.members:
            total = total + branch_point_characteristic(self.g, k)
        return total


def _canonical(subset, n_points: int) -> Tuple[int, ...]:
    members = tuple(sorted(set(subset)))
    complement = tuple(k for k in range(1, n_points + 1) if k not in members)
    return min(members, complement)


def branch_point_characteristic(g: int, k: int) -> Characteristic:
    """Characteristic attached to branch point k (Mumford-style table).

    eta_{2i-1} = [e_i; 1..1 0..0] with i-1 ones, eta_{2i} = [e_i; 1..1 0..0]
    with i ones, eta_{2g+1} = [0; 1..1], eta_{2g+2} = 0.
    """
    if not 1 <= k <= 2 * g + 2:
        raise ValueError(f"branch point {k} out of range 1..{2 * g + 2}")
    if k == 2 * g + 2:
        return Characteristic.zero(g)
    if k == 2 * g + 1:
        return Characteristic.from_bits([0] * g, [1] * g)
    i = (k + 1) // 2
    ones = i - 1 if k % 2 else i
    a = [1 if j == i - 1 else 0 for j in range(g)]
    b = [1 if j < ones else 0 for j in range(g)]
    return Characteristic.from_bits(a, b)


def _class_masks(g: int) -> np.ndarray:
    """Bit masks of the canonical representatives of all 4^g classes.

    Canonical representatives are the empty set plus every even subset that
    contains point 1 and is not the whole set.
    """
    n_rest = 2 * g + 1
    rest = np.arange(1 << n_rest, dtype=np.int64)
    # point 1 is bit 0; the remaining points fill bits 1..2g+1
    with_one = (rest << 1) | 1
    keep = (popcount(rest) % 2 == 1) & (rest != (1 << n_rest) - 1)
    return np.concatenate([np.zeros(1, dtype=np.int64), with_one[keep]])


def iter_branch_classes(g: int):
    """Yield every BranchSubsetClass of genus g, by cardinality then lexicographically."""
    check_genus(g, MAX_ENUMERATION_GENUS)
    n_points = 2 * g + 2
    yield BranchSubsetClass(g=g, members=())
    for size in range(2, n_points, 2):
        for rest in itertools.combinations(range(2, n_points + 1), size - 1):
            members = (1,) + rest
            yield BranchSubsetClass(g=g, members=members)


def hyperelliptic_nonvanishing_classes(g: int) -> List[BranchSubsetClass]:
    """The C(2g+1, g) classes whose 2-torsion point lies off Θ."""
    check_genus(g, MAX_ENUMERATION_GENUS)
    masks = _class_masks(g)
    hits = masks[popcount(masks ^ _u_mask(g)) == g + 1]
    classes = [BranchSubsetClass(g=g, members=_from_mask(int(m), 2 * g + 2)) for m in hits]
    return sorted(classes, key=lambda c: c.members)


def hyperelliptic_parity_profile(g: int) -> Tuple[int, int]:
    """(even, odd) class counts by |S ∘ U| mod 4, which fixes the parity of the point."""
    check_genus(g, MAX_ENUMERATION_GENUS)
    masks = _class_masks(g)
    sizes = popcount(masks ^ _u_mask(g))
    even = int(np.count_nonzero((sizes - (g + 1)) % 4 == 0))
    return even, len(masks) - even


def hyperelliptic_enumerated_count(g: int) -> int:
    """Θ(2) by enumerating the subset classes: all classes minus the non-vanishing ones."""
    check_genus(g, MAX_ENUMERATION_GENUS)
    masks = _class_masks(g)
    nonvanishing = int(np.count_nonzero(popcount(masks ^ _u_mask(g)) == g + 1))
    return len(masks) - nonvanishing


def hyperelliptic_theta2_count(g: int) -> CountReport:
    check_genus(g, MAX_CLOSED_FORM_GENUS)
    theta_n = hyperelliptic_theta2(g)
    if g <= MAX_ENUMERATION_GENUS:
        enumerated = hyperelliptic_enumerated_count(g)
        if enumerated != theta_n:
            raise RuntimeError(
                f"hyperelliptic count mismatch at g={g}: closed form {theta_n}, enumeration {enumerated}"
            )
        logger.debug(f"hyperelliptic g={g}: closed form and enumeration agree on {theta_n}")
    bound = theta2_bound(g)
    return CountReport(
        g=g,
        n=2,
        odd_count=odd_count(g),
        even_vanishing=theta_n - odd_count(g),
        theta_n=theta_n,
        bound=bound,
        achieves_bound=theta_n == bound,
    )
