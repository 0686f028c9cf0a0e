"""
verify command: the whole invariant suite, JSON report on stdout and a
one-line summary on stderr.
"""

import logging
from pathlib import Path
from typing import Optional

import typer

from app.routes.common import (
    EXIT_FAILURE,
    CacheDirOption,
    SmoothTableOption,
    cache_for,
    emit,
    parse_genus_range,
    require_rank,
    service_errors,
    user_table,
)
from app.services.formatters import render_report
from app.services.verification import VerificationSuite

logger = logging.getLogger(__name__)


def cmd_verify(
    genus: str = typer.Option("2..3", "--genus", help="Genus or range such as 2..4"),
    max_rank: int = typer.Option(3, "--max-rank", help="Largest rank to check"),
    cache_dir: Optional[Path] = CacheDirOption,
    smooth_table: Optional[Path] = SmoothTableOption,
):
    """Run every cross-check; exit 0 iff all pass."""
    with service_errors():
        genera = parse_genus_range(genus)
        require_rank(max_rank)
        suite = VerificationSuite(cache_for(cache_dir), user_table(smooth_table))
        report = suite.run(genera, max_rank)
    emit(render_report(report))
    typer.echo(report.summary(), err=True)
    if not report.passed:
        for check in report.failures():
            typer.echo(f"FAILED {check.name} genus {check.genus} [{check.subject}] {check.detail or ''}", err=True)
        raise typer.Exit(code=EXIT_FAILURE)
