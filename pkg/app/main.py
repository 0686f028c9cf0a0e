"""
Command-line entry point: intersection cohomology of M_0(r) and the local
data behind it.
"""

import logging

import typer
from pydantic import ValidationError

from app import __version__
from app.config import LOG_LEVELS, Settings
from app.routes.common import EXIT_USAGE
from app.routes.compute import cmd_ip, cmd_smooth
from app.routes.local import cmd_fiber, cmd_lhilb, cmd_stalk, cmd_strata
from app.routes.table import cmd_table
from app.routes.verify import cmd_verify

logger = logging.getLogger(__name__)

cli = typer.Typer(
    add_completion=False,
    no_args_is_help=True,
    help="Exact intersection Poincare and Hodge polynomials of moduli spaces of bundles on curves.",
)


@cli.callback()
def configure(
    log_level: str = typer.Option("WARNING", "--log-level", help=f"One of {', '.join(LOG_LEVELS)}; logs go to stderr"),
):
    try:
        settings = Settings(log_level=log_level)
    except ValidationError:
        typer.echo(f"Error: log level must be one of {', '.join(LOG_LEVELS)}", err=True)
        raise typer.Exit(code=EXIT_USAGE)
    logging.basicConfig(level=settings.log_level, format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger().setLevel(settings.log_level)
    logger.debug(f"moduli-ih {__version__} starting")


cli.command(name="ip")(cmd_ip)
cli.command(name="smooth")(cmd_smooth)
cli.command(name="fiber")(cmd_fiber)
cli.command(name="stalk")(cmd_stalk)
cli.command(name="lhilb")(cmd_lhilb)
cli.command(name="strata")(cmd_strata)
cli.command(name="verify")(cmd_verify)
cli.command(name="table")(cmd_table)


def main():
    cli()


if __name__ == "__main__":
    main()
