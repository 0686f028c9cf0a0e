"""
Error types shared by the services and the command-line routes.
"""

from typing import Optional


class ModuliError(Exception):
    """Base class for every error raised by the package."""


class UsageError(ModuliError, ValueError):
    """A precondition on the inputs was violated (exit status 2 on the CLI)."""


class ComputationError(ModuliError, RuntimeError):
    """
    A computed quantity failed a check that holds for the true answer.

    These signal a bug or a bad input table; the rank (or partition) and the
    name of the failing check travel with the exception.
    """

    def __init__(self, message: str, rank: Optional[object] = None, check: Optional[str] = None):
        self.rank = rank
        self.check = check
        prefix = []
        if rank is not None:
            prefix.append(f"rank {rank}")
        if check:
            prefix.append(check)
        super().__init__(f"[{', '.join(prefix)}] {message}" if prefix else message)


class IngestionError(ModuliError, ValueError):
    """A user-supplied smooth table was rejected."""

    def __init__(self, message: str, rank: Optional[int] = None, check: Optional[str] = None):
        self.rank = rank
        self.check = check
        where = f"rank {rank}: " if rank is not None else ""
        label = f"{check}: " if check else ""
        super().__init__(f"{where}{label}{message}")
