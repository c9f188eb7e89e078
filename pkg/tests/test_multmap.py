import math

import numpy as np
import pytest

from thetanulls.errors import GenusRangeError, PreconditionError, SampleBudgetError, UnreliableRankError
from thetanulls.multmap import (
    RankReport,
    SectionBasis,
    default_samples,
    g2_irreducible_rank_scan,
    generic_surjectivity_scan,
    kempf_agreement_sweep,
    kempf_predicted_rank,
    normalize_rows,
    numerical_rank,
    product_evaluation_matrix,
    require_reliable,
    second_order_characteristics,
    sym_kernel_dim,
    sym_kernel_report,
    symmetric_product_matrix,
    torsion_kernel_sum,
    verify_kempf,
)
from thetanulls.multmap.scans import random_point, sub_seed
from thetanulls.ppav import product_ppav, theta_n_count, torsion_points


def test_second_order_characteristics():
    chars = second_order_characteristics(2)
    assert [str(c) for c in chars] == ["[00;00]", "[01;00]", "[10;00]", "[11;00]"]
    assert all(not c.is_odd for c in chars)


def test_basis_functions_are_even(generic_g2):
    basis = SectionBasis(generic_g2)
    assert len(basis) == 4
    defect = basis.parity_defect([0.1 + 0.2j, -0.3 + 0.1j], eps=1e-10)
    assert defect.defect <= defect.error_bound + 1e-12


def test_basis_rejects_wrong_shift(generic_g2):
    with pytest.raises(ValueError):
        SectionBasis(generic_g2, [0.0])


def test_basis_translate(generic_g2):
    x = np.array([0.2 + 0.1j, 0.4 - 0.3j])
    z = np.array([[0.1 + 0.05j, 0.3 + 0.2j]])
    shifted = SectionBasis(generic_g2, x).evaluate(z, eps=1e-10)
    direct = SectionBasis(generic_g2).evaluate(z + x, eps=1e-10)
    np.testing.assert_allclose(shifted, direct, atol=1e-12)


def test_matrix_shapes(generic_g2):
    assert default_samples(2) == 48
    M = product_evaluation_matrix(generic_g2, np.zeros(2), np.zeros(2), n_samples=40)
    assert M.shape == (16, 40)
    S = symmetric_product_matrix(generic_g2, n_samples=30)
    assert S.shape == (10, 30)


def test_sampling_limits(generic_g2):
    with pytest.raises(SampleBudgetError):
        product_evaluation_matrix(generic_g2, np.zeros(2), np.zeros(2), n_samples=20)
    with pytest.raises(SampleBudgetError):
        product_evaluation_matrix(generic_g2, np.zeros(2), np.zeros(2), n_samples=9000)
    with pytest.raises(GenusRangeError):
        product_evaluation_matrix(product_ppav([1j] * 5), np.zeros(5), np.zeros(5))


def test_swapping_translations_permutes_rows(generic_g2, rng):
    x, y = random_point(generic_g2, rng), random_point(generic_g2, rng)
    forward = product_evaluation_matrix(generic_g2, x, y, seed=3)
    backward = product_evaluation_matrix(generic_g2, y, x, seed=3)
    perm = [(r % 4) * 4 + r // 4 for r in range(16)]
    np.testing.assert_array_equal(backward, forward[perm])


def test_numerical_rank_edge_cases():
    zero = numerical_rank(np.zeros((4, 6)))
    assert zero.numerical_rank == 0
    assert zero.gap_ratio == math.inf
    assert zero.reliable
    identity = numerical_rank(np.hstack([np.eye(4), np.eye(4)]))
    assert identity.numerical_rank == identity.full_rank == 4
    assert identity.reliable
    with pytest.raises(ValueError):
        numerical_rank(np.eye(3), rel_tol=0.0)
    with pytest.raises(ValueError):
        numerical_rank(np.eye(3), rel_tol=1.0)


@pytest.mark.parametrize("r", [1, 3, 5])
def test_numerical_rank_of_low_rank_matrix(rng, r):
    M = rng.normal(size=(6, r)) @ rng.normal(size=(r, 10))
    report = numerical_rank(M)
    assert report.numerical_rank == r
    assert report.reliable
    assert report.full_rank == 6


def test_normalize_rows():
    M = np.array([[2.0, -4.0], [0.0, 0.0], [1j, 0.5]])
    N = normalize_rows(M)
    np.testing.assert_allclose(np.max(np.abs(N), axis=1), [1.0, 0.0, 1.0])
    np.testing.assert_allclose(N[0], [0.5, -1.0])


def test_rank_report_validation():
    with pytest.raises(ValueError):
        RankReport(numerical_rank=1, singular_values=[1.0, 2.0], rel_tol=1e-8, gap_ratio=1.0, full_rank=2)
    with pytest.raises(ValueError):
        RankReport(numerical_rank=1, singular_values=[1.0], rel_tol=1e-8, gap_ratio=math.inf, full_rank=1,
                   kempf_count=2, agrees=True)
    shaky = RankReport(numerical_rank=2, singular_values=[1.0, 0.5, 0.05, 0.0], rel_tol=0.1, gap_ratio=10.0,
                       full_rank=4)
    assert not shaky.reliable
    with pytest.raises(UnreliableRankError):
        require_reliable(shaky)
    checked = shaky.with_kempf(3, lower_bound=2, label="shaky")
    assert (checked.agrees, checked.lower_bound_ok, checked.label) == (False, True, "shaky")
    assert '"gap_ratio":Infinity' in numerical_rank(np.eye(2)).model_dump_json()


def test_kempf_rank_of_product(product_g2):
    report = verify_kempf(product_g2, np.zeros(2), np.zeros(2))
    assert report.numerical_rank == report.kempf_count == 9
    assert report.agrees and report.reliable and report.lower_bound_ok


def test_kempf_rank_of_elliptic_curve(tau_i):
    report = verify_kempf(tau_i, np.zeros(1), np.zeros(1))
    assert report.numerical_rank == 3
    assert report.agrees


def test_kempf_rank_of_generic_matrix(generic_g2, rng):
    assert verify_kempf(generic_g2, np.zeros(2), np.zeros(2)).numerical_rank == 10
    report = verify_kempf(generic_g2, np.zeros(2), random_point(generic_g2, rng))
    assert report.numerical_rank == report.kempf_count == 16


def test_kempf_count_depends_on_difference_only(generic_g2, rng):
    x = random_point(generic_g2, rng)
    assert kempf_predicted_rank(generic_g2, x, x) == kempf_predicted_rank(generic_g2, np.zeros(2), np.zeros(2)) == 10
    eta = torsion_points(2, 2)[5].z(generic_g2)
    assert kempf_predicted_rank(generic_g2, x, x + eta) == 10


@pytest.mark.parametrize("fixture, expected", [("tau_i", 0), ("product_g2", 1), ("product_g3", 9)])
def test_quadrics_through_products(request, fixture, expected):
    report = sym_kernel_report(request.getfixturevalue(fixture))
    assert report.kernel_dim == report.closed_form == expected
    assert report.matches_closed_form


def test_generic_kummer_has_no_quadric(generic_g2):
    assert sym_kernel_dim(generic_g2) == 0


def test_irreducible_genus_two_scan(generic_g2):
    reports = g2_irreducible_rank_scan(generic_g2, trials=2, divisor_trials=1, seed=4)
    assert len(reports) == 19
    assert all(r.numerical_rank == 10 and r.lower_bound == 10 for r in reports[:16])
    assert all(r.numerical_rank >= 11 and r.lower_bound == 11 for r in reports[16:])
    assert all(r.agrees for r in reports)
    assert reports[16].numerical_rank == 16
    assert reports[-1].kempf_count < 16


def test_irreducible_scan_preconditions(product_g2, product_g3):
    with pytest.raises(PreconditionError):
        g2_irreducible_rank_scan(product_g2, trials=1)
    with pytest.raises(GenusRangeError):
        g2_irreducible_rank_scan(product_g3, trials=1)


def test_surjectivity_scan(generic_g2):
    report = generic_surjectivity_scan(generic_g2, trials=4, seed=2)
    assert report.full_rank_count == 4
    assert report.fraction == 1.0
    assert report.passed
    assert report.min_rank == 16
    assert report.exceptions == []


@pytest.mark.parametrize("g", [1, 2])
def test_agreement_sweep(g):
    reports = kempf_agreement_sweep(g, trials=4, seed=1)
    assert len(reports) == 4
    assert all(r.agrees and r.lower_bound_ok for r in reports)
    with pytest.raises(GenusRangeError):
        kempf_agreement_sweep(5, trials=1)


def test_torsion_kernel_sum_of_elliptic_curve(tau_i):
    report = torsion_kernel_sum(tau_i, 4)
    assert [r.label for r in report.cosets] == ["y=(0)+tau(0)/4", "y=(1)+tau(0)/4", "y=(0)+tau(1)/4", "y=(1)+tau(1)/4"]
    assert report.theta_n == report.kempf_theta_n == theta_n_count(tau_i, 4).theta_n == 1
    assert report.all_agree


def test_torsion_kernel_sum_at_two_is_theta2(product_g2):
    report = torsion_kernel_sum(product_g2, 2)
    assert len(report.cosets) == 1
    assert report.theta_n == 7


@pytest.mark.parametrize("n", [1, 3])
def test_torsion_kernel_sum_needs_even_order(tau_i, n):
    with pytest.raises(PreconditionError):
        torsion_kernel_sum(tau_i, n)


def test_sub_seeds_are_stable():
    assert sub_seed(0, 3, 1) == sub_seed(0, 3, 1)
    assert sub_seed(0, 3, 1) != sub_seed(0, 3, 2)
