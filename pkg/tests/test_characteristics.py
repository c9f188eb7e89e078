import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from thetanulls.characteristics import (
    Characteristic,
    CountReport,
    Parity,
    conjectural_torsion_bound,
    corollary_bound,
    enumerate_characteristics,
    even_characteristics,
    hyperelliptic_theta2,
    odd_count,
    parity,
    parity_counts,
    product_characteristic,
    product_of,
    product_vanishing_characteristics,
    quadric_count,
    theta2_bound,
)
from thetanulls.characteristics.bits import pack_bits, popcount, unpack_bits
from thetanulls.errors import GenusRangeError


@st.composite
def characteristics(draw, max_genus=5):
    g = draw(st.integers(min_value=1, max_value=max_genus))
    index = draw(st.integers(min_value=0, max_value=4 ** g - 1))
    return Characteristic.from_index(g, index)


def test_parity_examples():
    assert parity(Characteristic.from_bits([0, 0], [0, 0])) is Parity.EVEN
    assert parity(Characteristic.from_bits([1], [1])) is Parity.ODD
    assert Characteristic.from_bits([1, 1], [1, 0]).is_odd


@pytest.mark.parametrize("g", [1, 3])
def test_parity_is_dot_product_mod_two(g):
    for c in enumerate_characteristics(g):
        odd = sum(x * y for x, y in zip(c.a, c.b)) % 2
        assert parity(c) is (Parity.ODD if odd else Parity.EVEN)


@pytest.mark.parametrize("g, even, odd", [(1, 3, 1), (2, 10, 6), (3, 36, 28), (4, 136, 120)])
def test_parity_counts_match_brute_force(g, even, odd):
    chars = list(enumerate_characteristics(g))
    assert len(chars) == 4 ** g
    assert sum(c.is_odd for c in chars) == odd
    assert parity_counts(g) == (even, odd)
    assert len(even_characteristics(g)) == even


@pytest.mark.parametrize("g", range(1, 11))
def test_parity_counts_closed_form(g):
    even, odd = parity_counts(g)
    assert odd == odd_count(g) == 2 ** (g - 1) * (2 ** g - 1)
    assert even == 2 ** (g - 1) * (2 ** g + 1)
    assert even + odd == 4 ** g


def test_enumeration_order_is_lexicographic():
    chars = list(enumerate_characteristics(2))
    assert chars[0].a == (0, 0) and chars[0].b == (0, 0)
    assert [(c.a, c.b) for c in chars] == sorted((c.a, c.b) for c in chars)
    assert len(set(chars)) == 16


def test_enumeration_genus_range():
    with pytest.raises(GenusRangeError):
        enumerate_characteristics(13)
    with pytest.raises(GenusRangeError):
        enumerate_characteristics(0)


def test_large_enumeration_is_lazy():
    chars = enumerate_characteristics(12)
    assert len(chars) == 4 ** 12
    assert chars[-1].a == (1,) * 12 and chars[-1].b == (1,) * 12


@given(characteristics())
def test_index_round_trip(c):
    assert Characteristic.from_index(c.g, c.index) == c
    assert Characteristic.from_bits(c.a, c.b) == c


@given(characteristics(max_genus=4), characteristics(max_genus=4))
def test_product_parity_is_additive(c1, c2):
    product = product_characteristic(c1, c2)
    assert product.g == c1.g + c2.g
    assert product.a == c1.a + c2.a and product.b == c1.b + c2.b
    assert product.is_odd == (c1.is_odd != c2.is_odd)


@given(characteristics(max_genus=3), characteristics(max_genus=3), characteristics(max_genus=3))
def test_product_is_associative(c1, c2, c3):
    left = product_characteristic(product_characteristic(c1, c2), c3)
    right = product_characteristic(c1, product_characteristic(c2, c3))
    assert left == right == product_of([c1, c2, c3])


def test_odd_times_odd_is_even():
    odd = Characteristic.from_bits([1], [1])
    assert not product_characteristic(odd, odd).is_odd


@pytest.mark.parametrize("g, expected", [(1, 1), (2, 7), (3, 37), (4, 175)])
def test_product_vanishing_characteristics(g, expected):
    chars = product_vanishing_characteristics(g)
    assert len(chars) == expected == theta2_bound(g)
    assert len(set(chars)) == expected
    odd = {c for c in enumerate_characteristics(g) if c.is_odd}
    assert odd <= set(chars)


@given(characteristics(), st.data())
def test_addition_is_xor(c, data):
    other = Characteristic.from_index(c.g, data.draw(st.integers(0, 4 ** c.g - 1)))
    total = c + other
    assert total.a == tuple(x ^ y for x, y in zip(c.a, other.a))
    assert total + other == c
    assert c + c == Characteristic.zero(c.g)


def test_masks_must_fit_genus():
    with pytest.raises(ValueError):
        Characteristic(g=1, a_mask=2, b_mask=0)
    with pytest.raises(ValueError):
        Characteristic.from_bits([1, 0], [1])
    with pytest.raises(ValueError):
        Characteristic.from_bits([2], [0])


def test_str_and_half_vectors():
    c = Characteristic.from_bits([1, 0], [0, 1])
    assert str(c) == "[10;01]"
    a, b = c.half_vectors()
    np.testing.assert_array_equal(a, [0.5, 0.0])
    np.testing.assert_array_equal(b, [0.0, 0.5])


@given(st.lists(st.integers(min_value=0, max_value=2 ** 62), min_size=1, max_size=20))
def test_popcount(values):
    expected = [bin(v).count("1") for v in values]
    assert popcount(np.array(values, dtype=np.int64)).tolist() == expected


@given(st.lists(st.integers(0, 1), min_size=1, max_size=12))
def test_pack_unpack(bits):
    assert unpack_bits(pack_bits(bits), len(bits)) == tuple(bits)


def test_bound_helpers():
    assert [theta2_bound(g) for g in range(1, 6)] == [1, 7, 37, 175, 781]
    assert corollary_bound(2, 2) == 112
    assert corollary_bound(1, 2) == 4
    assert [quadric_count(g) for g in (1, 2, 3)] == [0, 1, 9]
    assert [hyperelliptic_theta2(g) for g in (1, 2, 3, 4)] == [1, 6, 29, 130]
    assert conjectural_torsion_bound(1, 3) == 1
    assert conjectural_torsion_bound(2, 2) == theta2_bound(2)


def test_count_report_consistency():
    report = CountReport(g=2, n=2, odd_count=6, even_vanishing=1, theta_n=7, bound=7, achieves_bound=True)
    assert report.bound_kind == "theorem"
    with pytest.raises(ValueError):
        CountReport(g=2, n=2, odd_count=6, even_vanishing=1, theta_n=6, bound=7, achieves_bound=False)
    with pytest.raises(ValueError):
        CountReport(g=2, n=2, odd_count=6, even_vanishing=0, theta_n=6, bound=7, achieves_bound=True)


def test_every_pair_of_genus_one_characteristics():
    for c1, c2 in itertools.product(enumerate_characteristics(1), repeat=2):
        assert parity(product_characteristic(c1, c2)) is (Parity.ODD if c1.is_odd != c2.is_odd else Parity.EVEN)
