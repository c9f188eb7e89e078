import json
import sys
from typing import Optional

import click
from loguru import logger

from . import env
from .errors import NumericalVerdictError, ReplayMismatchError, ThetanullsError
from .parallel import set_default_threads
from .reports import PeriodMatrixSource, RunConfig, execute, export_to, load_document, render

EXIT_USAGE = 1
EXIT_NUMERICAL = 2

LOG_FORMAT = "<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | {message}"


class ThetanullsGroup(click.Group):
    """Maps failures to exit codes: 1 for bad input, 2 for numbers that cannot be trusted."""

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            code = super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
        except click.ClickException as e:
            e.show()
            sys.exit(EXIT_USAGE)
        except click.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(EXIT_USAGE)
        except (NumericalVerdictError, ArithmeticError, RuntimeError) as e:
            click.echo(f"Error: {e}", err=True)
            sys.exit(EXIT_NUMERICAL)
        except (ValueError, ThetanullsError) as e:
            click.echo(f"Error: {e}", err=True)
            sys.exit(EXIT_USAGE)
        sys.exit(code or 0)


def configure_logging(verbose: bool) -> None:
    logger.remove()
    logger.add(sys.stderr, level="DEBUG" if verbose else env.LOG_LEVEL, format=LOG_FORMAT)


def source_options(fn):
    fn = click.option("--e8", is_flag=True, help="The genus-4 E8 ppav (needs THETANULLS_E8_PERIOD_MATRIX).")(fn)
    fn = click.option("--file", "path", type=click.Path(dir_okay=False), help="Period-matrix JSON file.")(fn)
    fn = click.option("--random", "random_genus", type=click.IntRange(1, 4),
                      help="Genus of a random period matrix, seeded by --seed.")(fn)
    fn = click.option("--product", help="Comma-separated elliptic moduli, e.g. i,2i or 0.5+1.2i,3i/2.")(fn)
    return fn


def tolerance_options(fn):
    fn = click.option("--format", "fmt", type=click.Choice(["human", "csv", "json"]), default="human",
                      show_default=True)(fn)
    fn = click.option("--n-samples", type=click.IntRange(min=1), default=None,
                      help="Sample points per rank matrix [default: 2*4^g + 16].")(fn)
    fn = click.option("--seed", type=int, default=0, show_default=True)(fn)
    fn = click.option("--rel-tol", type=float, default=1e-8, show_default=True)(fn)
    fn = click.option("--vanish-tol", type=float, default=1e-6, show_default=True)(fn)
    fn = click.option("--eps", type=float, default=1e-9, show_default=True)(fn)
    return fn


def make_source(product: Optional[str], random_genus: Optional[int], path: Optional[str], e8: bool,
                seed: int) -> PeriodMatrixSource:
    chosen = [name for name, given in (("--product", product), ("--random", random_genus),
                                       ("--file", path), ("--e8", e8)) if given]
    if len(chosen) != 1:
        raise click.UsageError("give exactly one of --product, --random, --file, --e8")
    if product:
        return PeriodMatrixSource(kind="product", moduli=[m.strip() for m in product.split(",")])
    if random_genus:
        return PeriodMatrixSource(kind="random", genus=random_genus, seed=seed)
    if path:
        return PeriodMatrixSource(kind="file", path=path)
    return PeriodMatrixSource(kind="e8")


def emit(config: RunConfig, tau=None, output: Optional[str] = None) -> int:
    outcome = execute(config, tau)
    if output:
        export_to(outcome.document.period_matrix.to_matrix(), output)
    click.echo(render(outcome.document, outcome.document.config.format, outcome.columns), nl=False)
    return outcome.exit_code


@click.group(cls=ThetanullsGroup)
@click.option("--threads", type=click.IntRange(min=1), default=None,
              help="Worker threads for theta evaluation [default: THETANULLS_THREADS].")
@click.option("-v", "--verbose", is_flag=True, help="Log at DEBUG level on stderr.")
@click.version_option(package_name="thetanulls")
def cli(threads, verbose):
    """Torsion points on theta divisors and multiplication maps of theta functions."""
    configure_logging(verbose)
    if threads:
        set_default_threads(threads)


@cli.command()
@source_options
@tolerance_options
@click.option("--order", type=click.IntRange(min=1), default=2, show_default=True,
              help="Count A[n] ∩ Θ for this n.")
def count(product, random_genus, path, e8, eps, vanish_tol, rel_tol, seed, n_samples, fmt, order):
    """Θ(2) from the thetanulls, or Θ(n) by direct enumeration of A[n]."""
    config = RunConfig(command="count", source=make_source(product, random_genus, path, e8, seed), eps=eps,
                       vanish_tol=vanish_tol, rel_tol=rel_tol, seed=seed, n_samples=n_samples, order=order,
                       format=fmt)
    return emit(config)


@cli.command()
@source_options
@tolerance_options
@click.option("--x", "x", default="0", show_default=True, help="0 | random | (m)+tau(k)/n | s1,..;t1,..")
@click.option("--y", "y", default="0", show_default=True, help="Same grammar as --x.")
@click.option("--scan-lemma-g2", is_flag=True, help="Genus-2 scan of M(0, x) over A[2], random x and x on Θ.")
@click.option("--surjectivity-scan", is_flag=True, help="Rank of M(x, y) over --trials random y.")
@click.option("--sweep", is_flag=True, help="Kempf agreement over --trials random (τ, x, y) of genus -g.")
@click.option("--torsion-kernels", is_flag=True,
              help="Θ(n) as the sum of dim ker M(0, y) over A[n]/A[2], n = --order.")
@click.option("--order", type=click.IntRange(min=2), default=4, show_default=True,
              help="Even n for --torsion-kernels.")
@click.option("-g", "--genus", type=click.IntRange(1, 4), default=None, help="Genus for --sweep.")
@click.option("--trials", type=click.IntRange(min=0), default=20, show_default=True)
@click.option("--divisor-trials", type=click.IntRange(min=0), default=2, show_default=True)
def rank(product, random_genus, path, e8, eps, vanish_tol, rel_tol, seed, n_samples, fmt, x, y,
         scan_lemma_g2, surjectivity_scan, sweep, torsion_kernels, order, genus, trials, divisor_trials):
    """Numerical rank of M(x, y) checked against Kempf's count."""
    modes = [m for m, on in (("scan-lemma-g2", scan_lemma_g2), ("surjectivity-scan", surjectivity_scan),
                             ("sweep", sweep), ("torsion-kernels", torsion_kernels)) if on]
    if len(modes) > 1:
        raise click.UsageError(" and ".join(f"--{m}" for m in modes) + " are mutually exclusive")
    mode = modes[0] if modes else "single"
    source = None if mode == "sweep" else make_source(product, random_genus, path, e8, seed)
    config = RunConfig(command="rank", source=source, eps=eps, vanish_tol=vanish_tol, rel_tol=rel_tol,
                       seed=seed, n_samples=n_samples, x=x, y=y, mode=mode, genus=genus, trials=trials,
                       divisor_trials=divisor_trials, order=order if torsion_kernels else 2, format=fmt)
    return emit(config)


@cli.command()
@click.option("-g", "--genus", type=click.IntRange(1, 20), required=True)
@click.option("--format", "fmt", type=click.Choice(["human", "csv", "json"]), default="human")
def hyperelliptic(genus, fmt):
    """Θ(2) of a hyperelliptic Jacobian: 4^g - C(2g+1, g), cross-checked by enumeration for g <= 10."""
    return emit(RunConfig(command="hyperelliptic", genus=genus, format=fmt))


@cli.command("bound-table")
@click.option("--g-range", nargs=2, type=int, default=(1, 5), show_default=True, help="Inclusive genus range.")
@click.option("--m-range", nargs=2, type=int, default=(1, 1), show_default=True,
              help="Inclusive m range for Θ(2m).")
@click.option("--format", "fmt", type=click.Choice(["human", "csv", "json"]), default="human")
def bound_table_command(g_range, m_range, fmt):
    """Bounds 4^g - 3^g, hyperelliptic counts, quadric counts and m^(2g)(4^g - 3^g)."""
    return emit(RunConfig(command="bound-table", g_range=list(g_range), m_range=list(m_range), format=fmt))


@cli.command()
@source_options
@tolerance_options
def quadrics(product, random_genus, path, e8, eps, vanish_tol, rel_tol, seed, n_samples, fmt):
    """Dimension of the space of quadrics through A in |2Θ|, from Sym² of the sampled sections."""
    config = RunConfig(command="quadrics", source=make_source(product, random_genus, path, e8, seed), eps=eps,
                       vanish_tol=vanish_tol, rel_tol=rel_tol, seed=seed, n_samples=n_samples, format=fmt)
    return emit(config)


@cli.command()
@source_options
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None, help="Write the matrix here.")
@click.option("--format", "fmt", type=click.Choice(["human", "csv", "json"]), default="json")
def export(product, random_genus, path, e8, seed, output, fmt):
    """Write the period matrix of a source in the period-matrix file format."""
    config = RunConfig(command="export", source=make_source(product, random_genus, path, e8, seed), seed=seed,
                       format=fmt)
    return emit(config, output=output)


@cli.command()
@click.argument("report", type=click.Path(exists=True, dir_okay=False))
@click.option("--format", "fmt", type=click.Choice(["human", "csv", "json"]), default=None,
              help="Output format [default: the stored one].")
def replay(report, fmt):
    """Re-run the configuration stored in a json report and check that the result is reproduced."""
    stored = load_document(report)
    config = stored.config.model_copy(update={"format": fmt}) if fmt else stored.config
    tau = stored.period_matrix.to_matrix() if stored.period_matrix else None
    outcome = execute(config, tau)
    click.echo(render(outcome.document, config.format, outcome.columns), nl=False)
    if json.loads(outcome.document.model_dump_json())["result"] != json.loads(stored.model_dump_json())["result"]:
        raise ReplayMismatchError(f"replaying {report} did not reproduce the stored result")
    logger.info(f"{report}: result reproduced")
    return outcome.exit_code


def main():
    cli()


if __name__ == "__main__":
    main()
