"""
ip and smooth commands: global quantities of M_0(r) and M_1(r).
"""

import logging
from pathlib import Path
from typing import Optional

import typer

from app.models.tables import CacheKind
from app.routes.common import (
    CacheDirOption,
    FormatOption,
    GenusOption,
    SmoothTableOption,
    cache_for,
    disabled_cache,
    emit,
    require_rank,
    service_errors,
    user_table,
)
from app.services.combinat import check_genus
from app.services.formatters import OutputFormat, ResultTable, render
from app.services.moduli_engine import ModuliEngine
from app.services.smooth_moduli import build_smooth_table, parabolic_poincare

logger = logging.getLogger(__name__)


def cmd_ip(
    genus: int = GenusOption,
    rank: int = typer.Option(..., "--rank", help="Rank r >= 1"),
    hodge: bool = typer.Option(False, "--hodge", help="Intersection Hodge numbers instead of Betti numbers"),
    fmt: OutputFormat = FormatOption,
    cache_dir: Optional[Path] = CacheDirOption,
    smooth_table: Optional[Path] = SmoothTableOption,
):
    """Intersection Poincare polynomial of M_0(r), or its Hodge refinement."""
    with service_errors():
        check_genus(genus)
        require_rank(rank)
        user = user_table(smooth_table, genus)
        # a user table changes the answer, so it never shares the cache
        cache = disabled_cache() if user is not None else cache_for(cache_dir)

        def compute():
            smooth = build_smooth_table(genus, rank, hodge=hodge, user=user, cache=cache)
            engine = ModuliEngine(genus, smooth)
            return engine.ih_hodge_m0(rank) if hodge else engine.ip_m0(rank)

        kind = CacheKind.IP_HODGE if hodge else CacheKind.IP
        poly = cache.fetch(genus, kind, str(rank), compute)
        logger.info(f"✅ {kind.value} for genus {genus}, rank {rank}")
        emit(render(ResultTable(genus, kind.value, [(str(rank), poly)]), fmt))


def cmd_smooth(
    genus: int = GenusOption,
    rank: int = typer.Option(..., "--rank", help="Rank r >= 1"),
    hodge: bool = typer.Option(False, "--hodge", help="Signed Hodge polynomial of M_1(r)"),
    parabolic: bool = typer.Option(False, "--parabolic", help="Poincare polynomial of the parabolic space instead"),
    fmt: OutputFormat = FormatOption,
    cache_dir: Optional[Path] = CacheDirOption,
):
    """Poincare (or Hodge) polynomial of the smooth space M_1(r)."""
    with service_errors():
        check_genus(genus)
        require_rank(rank)
        if hodge and parabolic:
            raise typer.BadParameter("--hodge and --parabolic are exclusive")
        if parabolic:
            table = ResultTable(genus, "parabolic", [(str(rank), parabolic_poincare(rank, genus))])
        else:
            smooth = build_smooth_table(genus, rank, hodge=hodge, cache=cache_for(cache_dir))
            poly = smooth.hodge_for(rank) if hodge else smooth.betti_for(rank)
            table = ResultTable(genus, "smooth-hodge" if hodge else "smooth-betti", [(str(rank), poly)])
        emit(render(table, fmt))
