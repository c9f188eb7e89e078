"""
Execution of a RunConfig: builds the period matrix, dispatches to the
library, and wraps the outcome in a ReportDocument with an exit code.
"""
from typing import List, NamedTuple, Optional

from loguru import logger

from ..errors import GenusRangeError, PreconditionError
from ..multmap import (
    g2_irreducible_rank_scan,
    generic_surjectivity_scan,
    kempf_agreement_sweep,
    sym_kernel_report,
    torsion_kernel_sum,
    verify_kempf,
)
from ..ppav import PeriodMatrixFile, dump_period_matrix, theta2_count, theta_n_count
from ..theta import RiemannMatrix
from .config import RunConfig, parse_point
from .render import ReportDocument
from .results import BoundRow, HyperellipticSummary, RankScanResult, bound_table

EXIT_OK = 0
EXIT_NUMERICAL = 2

_NEEDS_MATRIX = {"count", "rank", "quadrics", "export"}


class RunOutcome(NamedTuple):
    document: ReportDocument
    exit_code: int
    columns: Optional[List[str]] = None


def execute(config: RunConfig, tau: Optional[RiemannMatrix] = None) -> RunOutcome:
    """Run config; tau, when given, replaces config.source (replay of a stored matrix)."""
    command = config.command
    needs_matrix = command in _NEEDS_MATRIX and not (command == "rank" and config.mode == "sweep")
    if needs_matrix and tau is None:
        if config.source is None:
            raise PreconditionError(f"{command} needs a period matrix (--product, --random, --file or --e8)")
        tau = config.source.build()
    if not needs_matrix:
        tau = None
    logger.debug(f"running {command} with {config.model_dump(exclude_none=True)}")

    if command == "count":
        outcome = _count(config, tau)
    elif command == "rank":
        outcome = _rank(config, tau)
    elif command == "hyperelliptic":
        outcome = _hyperelliptic(config)
    elif command == "bound-table":
        rows = bound_table(config.g_range or [1, 5], config.m_range or [1, 1])
        outcome = rows, EXIT_OK, config, list(BoundRow.model_fields)
    elif command == "quadrics":
        config = config.model_copy(update={"n_samples": config.resolved_samples(tau.g)})
        report = sym_kernel_report(tau, config.eps, config.rel_tol, config.n_samples, config.seed)
        outcome = report, EXIT_OK, config, None
    elif command == "export":
        outcome = PeriodMatrixFile.from_matrix(tau), EXIT_OK, config, None
    else:
        raise ValueError(f"unknown command {command!r}")

    result, code, config, columns = outcome
    period_matrix = PeriodMatrixFile.from_matrix(tau) if tau is not None else None
    document = ReportDocument(command=command, config=config, period_matrix=period_matrix, result=result)
    return RunOutcome(document, code, columns)


def export_to(tau: RiemannMatrix, path: str) -> None:
    dump_period_matrix(tau, path)
    logger.info(f"period matrix written to {path}")


def _count(config: RunConfig, tau: RiemannMatrix):
    if config.order == 2:
        report = theta2_count(tau, config.eps, config.vanish_tol)
    else:
        report = theta_n_count(tau, config.order, config.eps, config.vanish_tol)
    return report, EXIT_OK, config, None


def _rank(config: RunConfig, tau: Optional[RiemannMatrix]):
    tolerances = dict(eps=config.eps, vanish_tol=config.vanish_tol, rel_tol=config.rel_tol)
    if config.mode == "sweep":
        if config.genus is None:
            raise PreconditionError("rank --sweep needs a genus (-g)")
        config = config.model_copy(update={"n_samples": config.resolved_samples(config.genus)})
        reports = kempf_agreement_sweep(config.genus, config.trials, config.seed,
                                        n_samples=config.n_samples, **tolerances)
        result = RankScanResult(reports=reports, skipped=config.trials - len(reports))
        return result, _scan_exit(result), config, None

    config = config.model_copy(update={"n_samples": config.resolved_samples(tau.g)})
    if config.mode == "scan-lemma-g2":
        reports = g2_irreducible_rank_scan(tau, config.trials, config.seed, config.divisor_trials,
                                           n_samples=config.n_samples, **tolerances)
        result = RankScanResult(reports=reports)
        return result, _scan_exit(result), config, None

    if config.mode == "torsion-kernels":
        report = torsion_kernel_sum(tau, config.order, n_samples=config.n_samples, seed=config.seed, **tolerances)
        return report, EXIT_OK if report.all_agree else EXIT_NUMERICAL, config, None

    x = parse_point(config.x, tau, config.seed, tag=0)
    if config.mode == "surjectivity-scan":
        report = generic_surjectivity_scan(tau, x, config.trials, config.seed,
                                           n_samples=config.n_samples, **tolerances)
        return report, EXIT_OK if report.passed else EXIT_NUMERICAL, config, None

    y = parse_point(config.y, tau, config.seed, tag=1)
    report = verify_kempf(tau, x, y, n_samples=config.n_samples, seed=config.seed,
                          label=f"x={config.x}, y={config.y}", **tolerances)
    return report, EXIT_OK if report.agrees and report.reliable else EXIT_NUMERICAL, config, None


def _scan_exit(result: RankScanResult) -> int:
    return EXIT_OK if result.all_agree and result.lower_bounds_ok else EXIT_NUMERICAL


def _hyperelliptic(config: RunConfig):
    if config.genus is None:
        raise GenusRangeError("hyperelliptic needs a genus (-g)")
    summary = HyperellipticSummary.for_genus(config.genus)
    if summary.equal is False:
        logger.error(f"g={summary.g}: closed form {summary.closed_form} but enumeration gives {summary.enumerated}")
    return summary, EXIT_OK if summary.equal is not False else EXIT_NUMERICAL, config, None
