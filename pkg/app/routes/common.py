"""
Shared pieces of the command handlers: option types, error translation
and output.
"""

import logging
from contextlib import contextmanager
from pathlib import Path
from typing import List, Optional

import typer

from app.config import Settings, load_settings
from app.models.combinatorics import Partition
from app.models.errors import ComputationError, IngestionError, UsageError
from app.models.tables import SmoothTable
from app.services.cache_store import CacheStore
from app.services.formatters import OutputFormat
from app.services.smooth_moduli import load_smooth_table

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

GenusOption = typer.Option(..., "--genus", help="Genus g >= 2 of the curve")
FormatOption = typer.Option(OutputFormat.TEXT, "--format", help="json, csv, latex or text")
CacheDirOption = typer.Option(None, "--cache-dir", help="Cache directory (default: $MODULI_CACHE_DIR, else no cache)")
SmoothTableOption = typer.Option(None, "--smooth-table", help="JSON table of P_t(M_1(r)) overriding the builtin values")


@contextmanager
def service_errors():
    """Translate service exceptions into exit codes."""
    try:
        yield
    except UsageError as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(code=EXIT_USAGE)
    except (ComputationError, IngestionError) as e:
        logger.error(f"❌ {e}")
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(code=EXIT_FAILURE)
    except OSError as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(code=EXIT_FAILURE)


def settings_for(cache_dir: Optional[Path]) -> Settings:
    return load_settings(cache_dir)


def cache_for(cache_dir: Optional[Path]) -> CacheStore:
    return CacheStore(settings_for(cache_dir))


def disabled_cache() -> CacheStore:
    """A store that ignores --cache-dir and MODULI_CACHE_DIR alike."""
    return CacheStore(Settings(cache_dir=None))


def user_table(path: Optional[Path], genus: Optional[int] = None) -> Optional[SmoothTable]:
    if path is None:
        return None
    table = load_smooth_table(path)
    if genus is not None and table.genus != genus:
        raise UsageError(f"smooth table {path} is for genus {table.genus}, not {genus}")
    return table


def parse_partition(text: str) -> Partition:
    return Partition.parse(text)


def parse_genus_range(text: str) -> List[int]:
    """"2..4" gives [2, 3, 4]; a single number gives itself."""
    pieces = text.split("..")
    try:
        if len(pieces) == 1:
            low = high = int(pieces[0])
        elif len(pieces) == 2:
            low, high = int(pieces[0]), int(pieces[1])
        else:
            raise ValueError
    except ValueError:
        raise UsageError(f"genus range {text!r} must look like 2 or 2..4")
    if low < 2 or high < low:
        raise UsageError(f"genus range {text!r} needs 2 <= low <= high (genus g >= 2)")
    return list(range(low, high + 1))


def require_rank(rank: int) -> None:
    if rank < 1:
        raise UsageError(f"rank must be >= 1, got {rank}")


def emit(text: str) -> None:
    typer.echo(text, nl=False)
