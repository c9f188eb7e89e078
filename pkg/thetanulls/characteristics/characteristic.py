"""
Half-integer theta characteristics [a/2; b/2], a, b in {0,1}^g.

The 4^g characteristics of genus g are in bijection with A[2]. A characteristic
is stored as two packed bit masks; a_1 is the most significant bit, so the
integer (a_mask << g) | b_mask is its position in lexicographic (a, b) order.
"""
import itertools
from collections.abc import Sequence
from enum import Enum
from functools import reduce
from typing import Iterable, List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..errors import GenusRangeError
from .bits import pack_bits, popcount, unpack_bits

MAX_ENUMERATION_GENUS = 12


class Parity(str, Enum):
    EVEN = "even"
    ODD = "odd"


class Characteristic(BaseModel):
    """A theta characteristic [a/2; b/2] of genus g.

    Attributes:
        g: The genus.
        a_mask: The a-vector packed into an int, a_1 most significant.
        b_mask: The b-vector packed the same way.
    """
    model_config = ConfigDict(frozen=True)

    g: int = Field(ge=1)
    a_mask: int = Field(ge=0)
    b_mask: int = Field(ge=0)

    @model_validator(mode="after")
    def _masks_fit_genus(self) -> "Characteristic":
        limit = 1 << self.g
        if self.a_mask >= limit or self.b_mask >= limit:
            raise ValueError(f"bit masks ({self.a_mask}, {self.b_mask}) do not fit genus {self.g}")
        return self

    @classmethod
    def from_bits(cls, a: Iterable[int], b: Iterable[int]) -> "Characteristic":
        a, b = tuple(a), tuple(b)
        if len(a) != len(b) or not a:
            raise ValueError(f"a and b must have the same positive length, got {len(a)} and {len(b)}")
        return cls(g=len(a), a_mask=pack_bits(a), b_mask=pack_bits(b))

    @classmethod
    def zero(cls, g: int) -> "Characteristic":
        return cls(g=g, a_mask=0, b_mask=0)

    @classmethod
    def from_index(cls, g: int, index: int) -> "Characteristic":
        if not 0 <= index < 4 ** g:
            raise IndexError(f"characteristic index {index} out of range for genus {g}")
        return cls(g=g, a_mask=index >> g, b_mask=index & ((1 << g) - 1))

    @property
    def a(self) -> Tuple[int, ...]:
        return unpack_bits(self.a_mask, self.g)

    @property
    def b(self) -> Tuple[int, ...]:
        return unpack_bits(self.b_mask, self.g)

    @property
    def index(self) -> int:
        return (self.a_mask << self.g) | self.b_mask

    @property
    def is_odd(self) -> bool:
        return parity(self) is Parity.ODD

    def half_vectors(self) -> Tuple[np.ndarray, np.ndarray]:
        """Return (a/2, b/2) as float arrays."""
        return np.array(self.a, dtype=float) / 2.0, np.array(self.b, dtype=float) / 2.0

    def __add__(self, other: "Characteristic") -> "Characteristic":
        """Sum in A[2] (componentwise mod 2)."""
        if self.g != other.g:
            raise ValueError(f"cannot add characteristics of genus {self.g} and {other.g}")
        return Characteristic(g=self.g, a_mask=self.a_mask ^ other.a_mask, b_mask=self.b_mask ^ other.b_mask)

    def __str__(self) -> str:
        bits = lambda v: "".join(str(x) for x in v)
        return f"[{bits(self.a)};{bits(self.b)}]"


def parity(c: Characteristic) -> Parity:
    """Even iff a.b = 0 mod 2."""
    return Parity.ODD if (c.a_mask & c.b_mask).bit_count() % 2 else Parity.EVEN


def check_genus(g: int, upper: int, what: str = "genus") -> None:
    if not isinstance(g, (int, np.integer)) or not 1 <= g <= upper:
        raise GenusRangeError(f"{what} must be an integer in [1, {upper}], got {g!r}")


class CharacteristicSequence(Sequence):
    """All 4^g characteristics of genus g in lexicographic order, built on access.

    At g = 12 there are about 1.7e7 of them, so nothing is materialized.
    """

    def __init__(self, g: int):
        self.g = g

    def __len__(self) -> int:
        return 4 ** self.g

    def __getitem__(self, index):
        if isinstance(index, slice):
            return [self[i] for i in range(*index.indices(len(self)))]
        if index < 0:
            index += len(self)
        return Characteristic.from_index(self.g, index)

    def __repr__(self) -> str:
        return f"CharacteristicSequence(g={self.g}, len={len(self)})"


def enumerate_characteristics(g: int) -> CharacteristicSequence:
    check_genus(g, MAX_ENUMERATION_GENUS)
    return CharacteristicSequence(g)


def even_characteristics(g: int) -> List[Characteristic]:
    return [c for c in enumerate_characteristics(g) if not c.is_odd]


def parity_counts(g: int) -> Tuple[int, int]:
    """Count (even, odd) characteristics of genus g without building them."""
    check_genus(g, MAX_ENUMERATION_GENUS)
    index = np.arange(4 ** g, dtype=np.int64)
    odd = popcount((index >> g) & (index & ((1 << g) - 1))) % 2
    n_odd = int(odd.sum())
    return 4 ** g - n_odd, n_odd


def product_characteristic(c1: Characteristic, c2: Characteristic) -> Characteristic:
    """Characteristic of a product ppav: concatenate the a- and b-vectors."""
    return Characteristic(
        g=c1.g + c2.g,
        a_mask=(c1.a_mask << c2.g) | c2.a_mask,
        b_mask=(c1.b_mask << c2.g) | c2.b_mask,
    )


def product_of(chars: Iterable[Characteristic]) -> Characteristic:
    return reduce(product_characteristic, chars)


def product_vanishing_characteristics(g: int) -> List[Characteristic]:
    """g-fold products of genus-1 characteristics with at least one odd factor.

    These are exactly the vanishing thetanulls of a product of g elliptic
    curves; there are 4^g - 3^g of them.
    """
    check_genus(g, 8)
    factors = list(enumerate_characteristics(1))
    chosen = [
        product_of(combo)
        for combo in itertools.product(factors, repeat=g)
        if any(c.is_odd for c in combo)
    ]
    return sorted(chosen, key=lambda c: c.index)
