"""
Local commands: fibers, IC stalks of the normal slices, local-system
Hilbert functions and the list of strata.

Fiber and stalk polynomials are reported in the cohomological variable,
i.e. f(rho; t^2) and g(rho; t^2).
"""

import logging
from pathlib import Path
from typing import List, Optional, Tuple

import typer

from app.models.errors import UsageError
from app.models.laurent import LaurentPoly
from app.models.tables import CacheKind
from app.routes.common import (
    EXIT_FAILURE,
    CacheDirOption,
    FormatOption,
    GenusOption,
    cache_for,
    emit,
    parse_partition,
    require_rank,
    service_errors,
)
from app.services import graph_kernel
from app.services.combinat import check_genus, strata_table
from app.services.formatters import OutputFormat, ResultTable, render, render_strata
from app.services.local_data import FIBER_METHODS, L_METHODS, context_for

logger = logging.getLogger(__name__)

RhoOption = typer.Option(..., "--rho", help="Partition as comma-separated parts, e.g. 2,1,1")


def _emit_rows(genus: int, kind: str, rows: List[Tuple[str, LaurentPoly]], fmt: OutputFormat) -> None:
    """Print the rows; several rows are alternative methods that must agree."""
    extra = {}
    if len(rows) > 1:
        extra["agree"] = len({poly for _, poly in rows}) == 1
    emit(render(ResultTable(genus, kind, rows, extra), fmt))
    if extra and not extra["agree"]:
        logger.error(f"❌ methods disagree for {kind}, genus {genus}")
        typer.echo("Error: methods disagree", err=True)
        raise typer.Exit(code=EXIT_FAILURE)


def _methods(method: str, known: Tuple[str, ...]) -> Tuple[str, ...]:
    if method == "all":
        return known
    if method not in known:
        raise UsageError(f"unknown method {method!r}; choose from {', '.join(known + ('all',))}")
    return (method,)


def cmd_fiber(
    genus: int = GenusOption,
    rho: str = RhoOption,
    method: str = typer.Option("recursion", "--method", help="recursion, graphs, identity or all"),
    fmt: OutputFormat = FormatOption,
    cache_dir: Optional[Path] = CacheDirOption,
):
    """Poincare polynomial f(rho; t^2) of the fiber over a stratum."""
    with service_errors():
        check_genus(genus)
        partition = parse_partition(rho)
        ctx = context_for(genus)
        cache = cache_for(cache_dir)
        rows = []
        for name in _methods(method, FIBER_METHODS):
            if name == "recursion":
                poly = cache.fetch(genus, CacheKind.FIBER, partition.text(), lambda: ctx.f_recursive(partition).adams(2))
            else:
                poly = ctx.fiber(partition, name).adams(2)
            rows.append((f"{partition.text()} {name}", poly))
    _emit_rows(genus, "fiber", rows, fmt)


def cmd_stalk(
    genus: int = GenusOption,
    rho: str = RhoOption,
    root: Optional[int] = typer.Option(None, "--root", help="Root vertex 1..k of the graph"),
    method: Optional[str] = typer.Option(None, "--method", help="all: every root, with an agreement verdict"),
    fmt: OutputFormat = FormatOption,
    cache_dir: Optional[Path] = CacheDirOption,
):
    """IC stalk polynomial g(rho; t^2) of the normal slice."""
    with service_errors():
        check_genus(genus)
        partition = parse_partition(rho)
        if method is not None and method != "all":
            raise UsageError(f"stalk only accepts --method all, got {method!r}")
        if method == "all" and root is not None:
            raise UsageError("--root and --method all are exclusive")
        roots = list(range(1, partition.k + 1)) if method == "all" else [root]
        rows = []
        for r in roots:
            if r is None:
                poly = cache_for(cache_dir).fetch(
                    genus,
                    CacheKind.STALK,
                    partition.text(),
                    lambda: graph_kernel.g_via_graphs(partition, genus).adams(2),
                )
                rows.append((partition.text(), poly))
            else:
                if not 1 <= r <= partition.k:
                    raise UsageError(f"root must be between 1 and {partition.k}, got {r}")
                rows.append((f"{partition.text()} root {r}", graph_kernel.g_via_graphs(partition, genus, r).adams(2)))
    _emit_rows(genus, "stalk", rows, fmt)


def cmd_lhilb(
    genus: int = GenusOption,
    rho: str = RhoOption,
    method: str = typer.Option("closed", "--method", help="closed, subtraction or all"),
    fmt: OutputFormat = FormatOption,
    cache_dir: Optional[Path] = CacheDirOption,
):
    """Hilbert function of the local system L_rho."""
    with service_errors():
        check_genus(genus)
        partition = parse_partition(rho)
        ctx = context_for(genus)
        rows = []
        for name in _methods(method, L_METHODS):
            if name == "subtraction":
                poly = cache_for(cache_dir).fetch(
                    genus, CacheKind.L_HILB, partition.text(), lambda: ctx.hilb_L_subtraction(partition)
                )
            else:
                poly = ctx.hilb_L_closed(partition)
            rows.append((f"{partition.text()} {name}", poly))
    _emit_rows(genus, "L-hilb", rows, fmt)


def cmd_strata(
    genus: int = GenusOption,
    rank: int = typer.Option(..., "--rank", help="Rank r >= 1"),
    fmt: OutputFormat = FormatOption,
):
    """Strata of M_0(r) with their dimensions."""
    with service_errors():
        require_rank(rank)
        strata = strata_table(rank, genus)
    emit(render_strata(genus, rank, strata, fmt))
