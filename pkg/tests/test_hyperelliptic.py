from math import comb

import pytest

from thetanulls.characteristics import (
    BranchSubsetClass,
    Characteristic,
    branch_point_characteristic,
    hyperelliptic_enumerated_count,
    hyperelliptic_nonvanishing_classes,
    hyperelliptic_parity_profile,
    hyperelliptic_theta2_count,
    iter_branch_classes,
)
from thetanulls.errors import GenusRangeError


@pytest.mark.parametrize("g, expected", [(1, 1), (2, 6), (3, 29), (4, 130)])
def test_theta2_count(g, expected):
    report = hyperelliptic_theta2_count(g)
    assert report.theta_n == expected
    assert report.odd_count == 2 ** (g - 1) * (2 ** g - 1)
    assert report.even_vanishing == expected - report.odd_count


def test_genus_two_has_no_vanishing_even_thetanull():
    assert hyperelliptic_theta2_count(2).even_vanishing == 0


@pytest.mark.parametrize("g", range(1, 21))
def test_closed_form_range(g):
    assert hyperelliptic_theta2_count(g).theta_n == 4 ** g - comb(2 * g + 1, g)


def test_genus_out_of_range():
    with pytest.raises(GenusRangeError):
        hyperelliptic_theta2_count(21)
    with pytest.raises(GenusRangeError):
        hyperelliptic_nonvanishing_classes(11)


@pytest.mark.parametrize("g, expected", [(1, 3), (2, 10), (3, 35)])
def test_nonvanishing_classes(g, expected):
    classes = hyperelliptic_nonvanishing_classes(g)
    assert len(classes) == expected == comb(2 * g + 1, g)
    assert all(c.is_nonvanishing for c in classes)
    assert all(len(c.shifted()) == g + 1 for c in classes)


@pytest.mark.parametrize("g", range(1, 11))
def test_enumeration_matches_closed_form(g):
    assert hyperelliptic_enumerated_count(g) == 4 ** g - comb(2 * g + 1, g)
    even, odd = hyperelliptic_parity_profile(g)
    assert (even, odd) == (2 ** (g - 1) * (2 ** g + 1), 2 ** (g - 1) * (2 ** g - 1))


@pytest.mark.parametrize("g", range(1, 6))
def test_count_plus_nonvanishing_is_everything(g):
    assert hyperelliptic_theta2_count(g).theta_n + len(hyperelliptic_nonvanishing_classes(g)) == 4 ** g


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_class_enumeration(g):
    classes = list(iter_branch_classes(g))
    assert len(classes) == len(set(classes)) == 4 ** g
    sizes = [len(c.members) for c in classes]
    assert sizes == sorted(sizes)


@pytest.mark.parametrize("g", [1, 2, 3])
def test_characteristics_of_classes(g):
    classes = list(iter_branch_classes(g))
    chars = [c.characteristic() for c in classes]
    assert len(set(chars)) == 4 ** g
    for cls, char in zip(classes, chars):
        distance = len(cls.shifted()) - g - 1
        assert char.is_odd == (distance % 4 != 0)


@pytest.mark.parametrize("g", [1, 2, 3])
def test_all_branch_points_sum_to_zero(g):
    total = branch_point_characteristic(g, 1)
    for k in range(2, 2 * g + 3):
        total = total + branch_point_characteristic(g, k)
    assert total.a_mask == 0 and total.b_mask == 0


def test_branch_point_table_genus_two():
    assert str(branch_point_characteristic(2, 1)) == "[10;00]"
    assert str(branch_point_characteristic(2, 2)) == "[10;10]"
    assert str(branch_point_characteristic(2, 3)) == "[01;10]"
    assert str(branch_point_characteristic(2, 4)) == "[01;11]"
    assert str(branch_point_characteristic(2, 5)) == "[00;11]"
    assert str(branch_point_characteristic(2, 6)) == "[00;00]"
    with pytest.raises(ValueError):
        branch_point_characteristic(2, 7)


def test_canonical_representative():
    cls = BranchSubsetClass.from_subset(2, [3, 4, 5, 6])
    assert cls.members == (1, 2)
    assert cls.complement() == (3, 4, 5, 6)
    with pytest.raises(ValueError):
        BranchSubsetClass(g=2, members=(3, 4, 5, 6))
    with pytest.raises(ValueError):
        BranchSubsetClass(g=2, members=(1, 2, 3))
    with pytest.raises(ValueError):
        BranchSubsetClass(g=1, members=(1, 5))


def test_complement_has_same_characteristic():
    cls = BranchSubsetClass.from_subset(3, [1, 4])
    total = Characteristic.zero(3)
    for k in cls.complement():
        total = total + branch_point_characteristic(3, k)
    assert total == cls.characteristic()
