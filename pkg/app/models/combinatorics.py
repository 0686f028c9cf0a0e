"""
Index objects for strata and for the subtraction algorithm.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Tuple

from app.models.errors import UsageError


@dataclass(frozen=True, order=True)
class Partition:
    """Weakly decreasing tuple of positive parts; rho = [r_1, ..., r_k]."""

    parts: Tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if any((not isinstance(p, int)) or p < 1 for p in parts):
            raise UsageError(f"partition parts must be positive integers, got {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise UsageError(f"partition parts must be weakly decreasing, got {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, parts: Iterable[int]) -> "Partition":
        """Sort arbitrary positive parts into canonical decreasing order."""
        return cls(tuple(sorted(parts, reverse=True)))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """CLI syntax: comma-separated parts such as "2,1,1"."""
        pieces = [p.strip() for p in text.split(",") if p.strip()]
        if not pieces:
            raise UsageError(f"empty partition text {text!r}")
        try:
            values = [int(p) for p in pieces]
        except ValueError:
            raise UsageError(f"partition text {text!r} must be comma-separated integers")
        if any(v < 1 for v in values):
            raise UsageError(f"partition text {text!r} has a non-positive part")
        return cls.of(values)

    @property
    def r(self) -> int:
        return sum(self.parts)

    @property
    def k(self) -> int:
        return len(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i: int) -> int:
        return self.parts[i]

    def text(self) -> str:
        return ",".join(str(p) for p in self.parts)

    def __str__(self) -> str:
        return "[" + ",".join(str(p) for p in self.parts) + "]"


@dataclass(frozen=True)
class MultiPartition:
    """
    Sequence of (rank, multiplicity) pairs.

    Ranks are weakly decreasing and equal ranks carry weakly decreasing
    multiplicities; the weighted sum of ranks is r.
    """

    pairs: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple((int(a), int(m)) for a, m in self.pairs)
        if not pairs or any(a < 1 or m < 1 for a, m in pairs):
            raise UsageError(f"multipartition pairs must be positive, got {pairs}")
        for (a, m), (b, n) in zip(pairs, pairs[1:]):
            if a < b or (a == b and m < n):
                raise UsageError(f"multipartition pairs out of canonical order: {pairs}")
        object.__setattr__(self, "pairs", pairs)

    @property
    def r(self) -> int:
        return sum(a * m for a, m in self.pairs)

    def induced_partition(self) -> Partition:
        """Repeat each rank by its multiplicity."""
        return Partition.of(a for a, m in self.pairs for _ in range(m))

    def is_abelian(self) -> bool:
        return all(m == 1 for _, m in self.pairs)

    def __str__(self) -> str:
        return "[" + ",".join(f"({a},{m})" for a, m in self.pairs) + "]"


@dataclass(frozen=True)
class SetDecomposition:
    """Disjoint nonempty blocks covering {1, ..., k}, sorted by minimum element."""

    blocks: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(sorted(b)) for b in self.blocks)
        if any(not b for b in blocks):
            raise UsageError("set decomposition blocks must be nonempty")
        blocks = tuple(sorted(blocks, key=lambda b: b[0]))
        seen = [i for b in blocks for i in b]
        if sorted(seen) != list(range(1, len(seen) + 1)):
            raise UsageError(f"blocks {blocks} do not decompose {{1..{len(seen)}}}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def k(self) -> int:
        return sum(len(b) for b in self.blocks)

    def is_finest(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def __str__(self) -> str:
        return "{" + ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + "}"


@dataclass(frozen=True)
class Stratum:
    """One stratum of M_0(r): its multipartition, induced partition and dimension."""

    multipartition: MultiPartition
    partition: Partition
    abelian: bool
    dimension: int
