"""
Tables of smooth-space inputs, cache entries and verification reports.

The pydantic models describe what goes to and comes from disk; SmoothTable
is the in-memory form the engine consumes.
"""

import hashlib
import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, field_validator

from app.models.errors import UsageError
from app.models.laurent import Arity, LaurentPoly

SCHEMA_VERSION = 1


class EntryKind(str, Enum):
    """Kind of polynomial stored in a smooth-table file."""
    BETTI = "betti"
    HODGE = "hodge"


class Provenance(str, Enum):
    """Where a smooth-table entry came from."""
    BUILTIN_HN = "builtin-HN"
    USER_FILE = "user-file"


class CacheKind(str, Enum):
    """Quantities the disk cache can hold."""
    IP = "ip"
    IP_HODGE = "ip-hodge"
    SMOOTH_BETTI = "smooth-betti"
    SMOOTH_HODGE = "smooth-hodge"
    FIBER = "fiber"
    STALK = "stalk"
    L_HILB = "L-hilb"


@dataclass
class SmoothTable:
    """
    P_t(M_1(r)) and optionally the signed Hodge polynomial h_{u,v}(M_1(r)) per rank.

    Betti entries are in the natural variable t; Hodge entries carry the
    sign (-1)^(p+q) so that u = v = t gives P_{-t}.
    """

    genus: int
    betti: Dict[int, LaurentPoly] = field(default_factory=dict)
    hodge: Dict[int, LaurentPoly] = field(default_factory=dict)
    provenance: Dict[str, Provenance] = field(default_factory=dict)

    @property
    def max_rank(self) -> int:
        """Largest r such that every rank 1..r has a Betti entry."""
        r = 0
        while r + 1 in self.betti:
            r += 1
        return r

    def betti_for(self, r: int) -> LaurentPoly:
        if r not in self.betti:
            raise UsageError(f"smooth table for genus {self.genus} has no Betti entry for rank {r}")
        return self.betti[r]

    def hodge_for(self, r: int) -> LaurentPoly:
        if r not in self.hodge:
            raise UsageError(f"smooth table for genus {self.genus} has no Hodge entry for rank {r}")
        return self.hodge[r]

    def put(self, kind: EntryKind, r: int, poly: LaurentPoly, source: Provenance) -> None:
        target = self.betti if kind is EntryKind.BETTI else self.hodge
        target[r] = poly
        self.provenance[f"{kind.value}:{r}"] = source


class SmoothTableEntry(BaseModel):
    rank: int = Field(..., ge=1, description="Rank r of M_1(r)")
    kind: EntryKind = Field(..., description="betti (univariate) or hodge (bivariate, signed)")
    poly: List[List[Any]] = Field(..., description="Canonical polynomial JSON: [[exponent, \"coeff\"], ...]")


class SmoothTableFile(BaseModel):
    """On-disk smooth table."""

    schema_version: int = Field(..., description="Must equal the current schema version")
    genus: int = Field(..., ge=2, description="Genus of the curve")
    entries: List[SmoothTableEntry] = Field(default_factory=list)

    @field_validator("schema_version")
    @classmethod
    def validate_schema_version(cls, v):
        if v != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {v}, expected {SCHEMA_VERSION}")
        return v


def canonical_json(data: Any) -> str:
    """Compact, key-sorted JSON used for hashing and byte-stable output."""
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def poly_hash(poly: LaurentPoly) -> str:
    return hashlib.sha256(canonical_json(poly.to_json()).encode("utf-8")).hexdigest()


class CacheEntry(BaseModel):
    """One cached polynomial with enough metadata to reject stale or damaged files."""

    schema_version: int = Field(SCHEMA_VERSION, description="Cache layout version")
    genus: int = Field(..., ge=2)
    key: str = Field(..., min_length=1, description="Rank as text, or partition text such as 2,1,1")
    kind: CacheKind
    poly: List[List[Any]] = Field(..., description="Canonical polynomial JSON")
    tool_version: str
    content_hash: str = Field(..., description="sha256 of the canonical polynomial JSON")

    @classmethod
    def build(cls, genus: int, key: str, kind: CacheKind, poly: LaurentPoly, tool_version: str) -> "CacheEntry":
        return cls(
            genus=genus,
            key=key,
            kind=kind,
            poly=poly.to_json(),
            tool_version=tool_version,
            content_hash=poly_hash(poly),
        )

    def arity(self) -> Arity:
        return Arity.BIVARIATE if self.kind in (CacheKind.IP_HODGE, CacheKind.SMOOTH_HODGE) else Arity.UNIVARIATE

    def polynomial(self) -> LaurentPoly:
        return LaurentPoly.from_json(self.poly, self.arity())

    def hash_matches(self) -> bool:
        return hashlib.sha256(canonical_json(self.poly).encode("utf-8")).hexdigest() == self.content_hash


class CheckResult(BaseModel):
    """Outcome of one verification check."""

    name: str = Field(..., description="Short check name, e.g. palindromicity")
    genus: int
    subject: str = Field(..., description="Rank or partition the check ran on")
    passed: bool
    detail: Optional[str] = None


class VerificationReport(BaseModel):
    checks: List[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, genus: int, subject: Any, passed: bool, detail: Optional[str] = None) -> bool:
        self.checks.append(CheckResult(name=name, genus=genus, subject=str(subject), passed=passed, detail=detail))
        return passed

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def failed_subjects(self, name: Optional[str] = None) -> List[str]:
        return [c.subject for c in self.failures() if name is None or c.name == name]

    def merge(self, other: "VerificationReport") -> None:
        self.checks.extend(other.checks)

    def summary(self) -> str:
        total = len(self.checks)
        failed = len(self.failures())
        return f"{total - failed}/{total} checks passed"
