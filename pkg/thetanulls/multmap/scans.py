"""
Randomized sweeps over multiplication maps: the genus-2 irreducible scan,
generic surjectivity, Kempf agreement across random configurations, and
Θ(n) read off the kernels of M(0, y) over A[n]/A[2].
"""
from typing import List, Optional

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, computed_field

from ..errors import AmbiguousVanishingError, GenusRangeError, NumericalVerdictError, PreconditionError
from ..ppav import product_ppav, random_ppav, theta2_count, theta_divisor_point, torsion_points
from ..theta import RiemannMatrix
from .kempf import verify_kempf
from .rank import RankReport

LEMMA_RANK = 11
SURJECTIVE_FRACTION = 0.95

_TAG_X, _TAG_DIVISOR, _TAG_SAMPLES, _TAG_SWEEP, _TAG_Y, _TAG_COSET = range(1, 7)


def sub_seed(seed: int, *tags: int) -> int:
    return int(np.random.SeedSequence([seed, *tags]).generate_state(1)[0])


def random_point(tau: RiemannMatrix, rng: np.random.Generator) -> np.ndarray:
    """s + τ t with s, t uniform on [0,1)^g."""
    return rng.random(tau.g) + tau.tau @ rng.random(tau.g)


def g2_irreducible_rank_scan(
    tau: RiemannMatrix,
    trials: int = 20,
    seed: int = 0,
    divisor_trials: int = 2,
    eps: float = 1e-9,
    vanish_tol: float = 1e-6,
    rel_tol: float = 1e-8,
    n_samples: Optional[int] = None,
    threads: Optional[int] = None,
) -> List[RankReport]:
    """Ranks of M(0, x) on an irreducible genus-2 ppav.

    Covers all 16 points x of A[2] (rank exactly 10), `trials` random x
    (rank at least 11, generically 16) and `divisor_trials` points x on Θ
    off A[2] (rank at least 11 though Kempf's count drops below 16).

    Raises:
        GenusRangeError: tau is not of genus 2.
        PreconditionError: tau has a vanishing even thetanull (Θ(2) != 6).
    """
    if tau.g != 2:
        raise GenusRangeError(f"the irreducible rank scan is a genus-2 statement, got g={tau.g}")
    count = theta2_count(tau, eps, vanish_tol, threads)
    if count.theta_n != 6:
        raise PreconditionError(f"Θ(2) = {count.theta_n}; the period matrix is a product, not irreducible")

    origin = np.zeros(2)
    reports = []
    for i, eta in enumerate(torsion_points(2, 2)):
        report = verify_kempf(tau, origin, eta.z(tau), eps, vanish_tol, rel_tol, n_samples,
                              sub_seed(seed, _TAG_SAMPLES, i), threads, label=f"x={eta}")
        reports.append(report.with_kempf(report.kempf_count, lower_bound=10))

    rng = np.random.default_rng([seed, _TAG_X])
    candidates = [(f"random x #{i}", random_point(tau, rng)) for i in range(trials)]
    candidates += [
        (f"x on Θ #{i}", theta_divisor_point(tau, sub_seed(seed, _TAG_DIVISOR, i)))
        for i in range(divisor_trials)
    ]
    for i, (label, x) in enumerate(candidates):
        report = verify_kempf(tau, origin, x, eps, vanish_tol, rel_tol, n_samples,
                              sub_seed(seed, _TAG_SAMPLES, 16 + i), threads, label=label)
        reports.append(report.with_kempf(report.kempf_count, lower_bound=LEMMA_RANK))

    for report in reports:
        if not report.lower_bound_ok:
            logger.warning(f"{report.label}: rank {report.numerical_rank} below {report.lower_bound}")
    return reports


class SurjectivityException(BaseModel):
    """A random y for which M(x, y) was not seen to be surjective."""
    model_config = ConfigDict(frozen=True)

    label: str
    numerical_rank: Optional[int] = None
    kempf_count: Optional[int] = None
    certified: bool
    reason: str


class SurjectivityReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    g: int
    trials: int
    full_rank_count: int
    min_rank: Optional[int] = None
    exceptions: List[SurjectivityException] = []

    @computed_field
    @property
    def fraction(self) -> float:
        return self.full_rank_count / self.trials if self.trials else 1.0

    @computed_field
    @property
    def passed(self) -> bool:
        return self.fraction >= SURJECTIVE_FRACTION and all(e.certified for e in self.exceptions)


def generic_surjectivity_scan(
    tau: RiemannMatrix,
    x=None,
    trials: int = 100,
    seed: int = 0,
    eps: float = 1e-9,
    vanish_tol: float = 1e-6,
    rel_tol: float = 1e-8,
    n_samples: Optional[int] = None,
    threads: Optional[int] = None,
) -> SurjectivityReport:
    """Rank of M(x, y) for fresh random y at fixed x.

    Every y that misses rank 4^g must be certified to lie on some Θ + η,
    that is, Kempf's count at y - x is below 4^g.
    """
    g = tau.g
    x = np.zeros(g) if x is None else np.asarray(x, dtype=complex)
    full = 4 ** g
    rng = np.random.default_rng([seed, _TAG_Y])
    full_count, ranks, exceptions = 0, [], []
    for i in range(trials):
        y = random_point(tau, rng)
        label = f"y #{i}"
        try:
            report = verify_kempf(tau, x, y, eps, vanish_tol, rel_tol, n_samples,
                                  sub_seed(seed, _TAG_SAMPLES, i), threads, label=label)
        except NumericalVerdictError as e:
            logger.warning(f"{label}: {e}")
            exceptions.append(SurjectivityException(label=label, certified=False, reason=type(e).__name__))
            continue
        ranks.append(report.numerical_rank)
        if report.numerical_rank == full:
            full_count += 1
            continue
        certified = report.kempf_count < full
        exceptions.append(SurjectivityException(
            label=label,
            numerical_rank=report.numerical_rank,
            kempf_count=report.kempf_count,
            certified=certified,
            reason="y - x lies on a translate Θ + η" if certified else "rank drop with y - x off every Θ + η",
        ))
    result = SurjectivityReport(
        g=g, trials=trials, full_rank_count=full_count, min_rank=min(ranks) if ranks else None, exceptions=exceptions
    )
    logger.info(f"g={g}: {full_count}/{trials} random y give a surjective M(x, y)")
    return result


def kempf_agreement_sweep(
    g: int,
    trials: int = 50,
    seed: int = 0,
    eps: float = 1e-9,
    vanish_tol: float = 1e-6,
    rel_tol: float = 1e-8,
    n_samples: Optional[int] = None,
    threads: Optional[int] = None,
) -> List[RankReport]:
    """verify_kempf over random (τ, x, y).

    Every third τ is a product of elliptic curves, the rest are generic. y
    cycles through y = x, y = x + η for a random half-period η, and random y.
    Trials with an ambiguous vanishing verdict are logged and skipped.
    """
    if not 1 <= g <= 4:
        raise GenusRangeError(f"the agreement sweep supports 1 <= g <= 4, got {g}")
    reports = []
    halves = torsion_points(g, 2)
    for i in range(trials):
        rng = np.random.default_rng([seed, _TAG_SWEEP, i])
        if i % 3 == 0:
            moduli = [complex(rng.uniform(-0.5, 0.5), rng.uniform(0.8, 2.0)) for _ in range(g)]
            tau, kind = product_ppav(moduli), "product"
        else:
            tau, kind = random_ppav(g, int(rng.integers(2 ** 31))), "generic"
        x = random_point(tau, rng)
        mode = i % 4
        if mode == 0:
            y, how = x, "y=x"
        elif mode == 1:
            y, how = x + halves[int(rng.integers(len(halves)))].z(tau), "y=x+η"
        else:
            y, how = random_point(tau, rng), "random y"
        label = f"trial {i}: {kind} τ, {how}"
        try:
            reports.append(verify_kempf(tau, x, y, eps, vanish_tol, rel_tol, n_samples,
                                        sub_seed(seed, _TAG_SAMPLES, i), threads, label=label))
        except AmbiguousVanishingError as e:
            logger.warning(f"{label}: skipped, {e}")
    if len(reports) < trials:
        logger.info(f"g={g}: {trials - len(reports)} of {trials} trials skipped as ambiguous")
    return reports


class TorsionKernelReport(BaseModel):
    """
    Θ(n) as a sum of kernel dimensions of M(0, y), y over A[n]/A[2].

    Attributes:
        theta_n: Σ (4^g - numerical rank) over the coset representatives.
        kempf_theta_n: The same sum taken over Kempf's counts.
        cosets: One rank report per representative y, labelled by y.
    """
    model_config = ConfigDict(frozen=True, ser_json_inf_nan="constants")

    g: int
    n: int
    theta_n: int
    kempf_theta_n: int
    cosets: List[RankReport]

    @computed_field
    @property
    def all_agree(self) -> bool:
        return all(r.agrees for r in self.cosets)


def torsion_kernel_sum(
    tau: RiemannMatrix,
    n: int,
    eps: float = 1e-9,
    vanish_tol: float = 1e-6,
    rel_tol: float = 1e-8,
    n_samples: Optional[int] = None,
    seed: int = 0,
    threads: Optional[int] = None,
) -> TorsionKernelReport:
    """Θ(n) for even n from the multiplication maps M(0, y).

    The representatives of A[n]/A[2] are (m + τk)/n with 0 <= m_i, k_i < n/2,
    and dim ker M(0, y) counts the points of y + A[2] on Θ.

    Raises:
        PreconditionError: n is odd or below 2.
        SampleBudgetError: A[n] is too large to enumerate.
        AmbiguousVanishingError, UnreliableRankError: from verify_kempf.
    """
    if n < 2 or n % 2:
        raise PreconditionError(f"A[2] is a subgroup of A[n] only for even n, got n={n}")
    g, full, half = tau.g, 4 ** tau.g, n // 2
    representatives = [p for p in torsion_points(g, n) if max(p.m + p.k) < half]
    origin = np.zeros(g)
    cosets = [
        verify_kempf(tau, origin, y.z(tau), eps, vanish_tol, rel_tol, n_samples,
                     sub_seed(seed, _TAG_COSET, i), threads, label=f"y={y}")
        for i, y in enumerate(representatives)
    ]
    report = TorsionKernelReport(
        g=g,
        n=n,
        theta_n=sum(full - r.numerical_rank for r in cosets),
        kempf_theta_n=sum(full - r.kempf_count for r in cosets),
        cosets=cosets,
    )
    logger.info(f"g={g}: Θ({n}) = {report.theta_n} from {len(cosets)} cosets of A[2] in A[{n}]")
    return report
