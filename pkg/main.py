# --- Python Standard and Third-Party Libraries ---
import logging
import sys

import click

# --- Project Modules ---
from config import config
from core import report, runner
from core.errors import InputValidationError, ShadowError

logger = logging.getLogger("main")


# --- Logging Setup ---

def configure_logging(verbosity):
    """WARNING by default, INFO with -v and DEBUG with -vv; always on stderr."""
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format=config.LOG_FORMAT, stream=sys.stderr, force=True)


# --- Shared Options ---

def common_options(command):
    command = click.option("-v", "--verbose", count=True, help="-v for progress, -vv for debug detail.")(command)
    command = click.option("--output", "output_path", type=click.Path(dir_okay=False),
                           help="Write the report to this file instead of stdout.")(command)
    command = click.option("--format", "output_format", type=click.Choice(config.OUTPUT_FORMATS),
                           default=config.DEFAULT_OUTPUT_FORMAT, show_default=True)(command)
    return command


def parse_weight(text):
    if text is None:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise InputValidationError(f"weight must be comma-separated integers, got {text!r}")


# --- Run Loop ---

def execute(subcommand, verbose, **options):
    """
    Builds the RunConfig, runs the controller and emits the report. Library
    errors exit with their own code; failing certificates exit with 4.
    """
    configure_logging(verbose)
    try:
        weight = parse_weight(options.pop("weight", None))
        run_config = runner.RunConfig(subcommand, weight=weight, **options)
        result = runner.run(run_config)
    except ShadowError as e:
        logger.error("%s failed: %s", subcommand, e)
        click.echo(f"error ({type(e).__name__}): {e}", err=True)
        sys.exit(e.exit_code)
    report.emit(result, run_config.output_format, run_config.output_path, title=f"{config.TITLE}: {subcommand}")
    failures = report.failed_certificates(result)
    if failures:
        click.echo(f"certificate failures: {'; '.join(failures)}", err=True)
        sys.exit(config.EXIT_CERTIFICATE_FAILURE)
    sys.exit(config.EXIT_OK)


# --- Commands ---

@click.group(help=f"{config.TITLE}: exact computations of pi0 THR, dihedral nerves and projective-space cubes.")
def cli():
    pass


@cli.command(help="pi0 THR of a commutative ring given by a ring spec file.")
@click.argument("ring_spec", type=click.Path(dir_okay=False))
@common_options
def pi0thr(ring_spec, verbose, output_format, output_path):
    execute("pi0thr", verbose, inputs=(ring_spec,), output_format=output_format, output_path=output_path)


@cli.command(help="Base change of pi0 THR along the ring map in a hom spec file.")
@click.argument("hom_spec", type=click.Path(dir_okay=False))
@common_options
def basechange(hom_spec, verbose, output_format, output_path):
    execute("basechange", verbose, inputs=(hom_spec,), output_format=output_format, output_path=output_path)


@cli.command(help="A weight piece of the dihedral nerve of the monoid in a monoid spec file.")
@click.argument("monoid_spec", type=click.Path(dir_okay=False))
@click.option("--weight", help="Comma-separated weight, e.g. 2 or 1,0. Defaults to zero.")
@click.option("--q-max", type=int, default=config.DEFAULT_Q_MAX, show_default=True, help="Truncation degree.")
@click.option("--window", type=int, help="First bound for windowed fixed-point components.")
@click.option("--homology", is_flag=True, help="Homology of the normalized chains.")
@click.option("--fixed-pi0", is_flag=True, help="Components of the fixed points after subdivision.")
@click.option("--validate", is_flag=True, help="Check every crossed-simplicial identity.")
@click.option("--substitute", is_flag=True, help="Use the logged finite models for Z-directions.")
@common_options
def nerve(monoid_spec, weight, q_max, window, homology, fixed_pi0, validate, substitute, verbose, output_format,
          output_path):
    execute("nerve", verbose, inputs=(monoid_spec,), weight=weight, q_max=q_max, window=window, homology=homology,
            fixed_pi0=fixed_pi0, validate=validate, substitute=substitute, output_format=output_format,
            output_path=output_path)


@cli.command(help="Cube assembly for P^1, P^sigma or P^n with n = 2, 3, 4.")
@click.argument("space", type=click.Choice(config.PROJECTIVE_CHOICES))
@click.option("--window", type=int, help="Weight window (defaults depend on the space).")
@common_options
def projective(space, window, verbose, output_format, output_path):
    execute("projective", verbose, space=space, window=window, output_format=output_format, output_path=output_path)


@cli.command(help="Run the acceptance suite.")
@common_options
def selftest(verbose, output_format, output_path):
    execute("selftest", verbose, output_format=output_format, output_path=output_path)


if __name__ == "__main__":
    cli()
