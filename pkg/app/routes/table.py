"""
table command: batch tables, one file per (genus, kind).
"""

import logging
from pathlib import Path
from typing import Optional

import typer

from app.models.tables import CacheKind
from app.routes.common import CacheDirOption, FormatOption, cache_for, parse_genus_range, require_rank, service_errors
from app.services.formatters import OutputFormat, ResultTable, render
from app.services.moduli_engine import ModuliEngine
from app.services.smooth_moduli import build_smooth_table

logger = logging.getLogger(__name__)

EXTENSIONS = {
    OutputFormat.JSON: "json",
    OutputFormat.CSV: "csv",
    OutputFormat.LATEX: "tex",
    OutputFormat.TEXT: "txt",
}


def cmd_table(
    genus: str = typer.Option(..., "--genus", help="Genus or range such as 2..4"),
    max_rank: int = typer.Option(..., "--max-rank", help="Largest rank to tabulate"),
    out_dir: Path = typer.Option(..., "--out-dir", help="Directory for the table files"),
    hodge: bool = typer.Option(False, "--hodge", help="Also tabulate intersection Hodge numbers"),
    fmt: OutputFormat = FormatOption,
    cache_dir: Optional[Path] = CacheDirOption,
):
    """Write smooth and IP tables for every genus in the range."""
    with service_errors():
        genera = parse_genus_range(genus)
        require_rank(max_rank)
        cache = cache_for(cache_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        for g in genera:
            smooth = build_smooth_table(g, max_rank, hodge=hodge, cache=cache)
            engine = ModuliEngine(g, smooth)
            ranks = range(1, max_rank + 1)
            tables = [
                ResultTable(g, CacheKind.SMOOTH_BETTI.value, [(str(r), smooth.betti_for(r)) for r in ranks]),
                ResultTable(
                    g,
                    CacheKind.IP.value,
                    [(str(r), cache.fetch(g, CacheKind.IP, str(r), lambda r=r: engine.ip_m0(r))) for r in ranks],
                ),
            ]
            if hodge:
                tables.append(
                    ResultTable(
                        g,
                        CacheKind.IP_HODGE.value,
                        [
                            (str(r), cache.fetch(g, CacheKind.IP_HODGE, str(r), lambda r=r: engine.ih_hodge_m0(r)))
                            for r in ranks
                        ],
                    )
                )
            for table in tables:
                path = out_dir / f"{table.kind}_g{g}.{EXTENSIONS[fmt]}"
                path.write_text(render(table, fmt), encoding="utf-8")
                logger.info(f"✅ wrote {path}")
                typer.echo(str(path), err=True)
