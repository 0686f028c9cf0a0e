"""
File-based JSON cache of computed polynomials.

One document per entry, named by the sha256 of its key tuple. Writes go
to a temporary file first and are renamed into place.
"""

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Callable, Optional

from pydantic import ValidationError

from app.config import Settings
from app.models.laurent import LaurentPoly
from app.models.tables import CacheEntry, CacheKind, canonical_json

logger = logging.getLogger(__name__)


class CacheStore:
    """Cache rooted at settings.cache_dir; every operation is a no-op without one."""

    def __init__(self, settings: Settings):
        self.settings = settings
        self.cache_dir = settings.cache_dir
        if self.cache_dir is not None:
            self.cache_dir.mkdir(parents=True, exist_ok=True)

    @property
    def enabled(self) -> bool:
        return self.cache_dir is not None

    def _make_key(self, genus: int, kind: CacheKind, key: str) -> str:
        raw = canonical_json([self.settings.schema_version, genus, kind.value, key])
        return hashlib.sha256(raw.encode("utf-8")).hexdigest()

    def path_for(self, genus: int, kind: CacheKind, key: str) -> Path:
        return self.cache_dir / f"{self._make_key(genus, kind, key)}.json"

    def get(self, genus: int, kind: CacheKind, key: str) -> Optional[LaurentPoly]:
        if not self.enabled:
            return None
        path = self.path_for(genus, kind, key)
        if not path.exists():
            return None
        try:
            entry = CacheEntry.model_validate(json.loads(path.read_text(encoding="utf-8")))
        except (json.JSONDecodeError, ValidationError) as e:
            logger.warning(f"discarding unreadable cache entry {path.name}: {e}")
            return None
        if (entry.schema_version, entry.genus, entry.kind, entry.key) != (
            self.settings.schema_version,
            genus,
            kind,
            key,
        ):
            logger.warning(f"discarding cache entry {path.name}: key mismatch")
            return None
        if not entry.hash_matches():
            logger.warning(f"cache entry {path.name} failed its content hash; recomputing")
            return None
        logger.debug(f"cache hit {kind.value} genus {genus} key {key}")
        return entry.polynomial()

    def put(self, genus: int, kind: CacheKind, key: str, poly: LaurentPoly) -> None:
        if not self.enabled:
            return
        entry = CacheEntry.build(genus, key, kind, poly, self.settings.tool_version)
        final_path = self.path_for(genus, kind, key)
        fd, tmp_path = tempfile.mkstemp(dir=self.cache_dir, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as f:
                f.write(canonical_json(entry.model_dump(mode="json")))
            os.replace(tmp_path, final_path)
        except OSError:
            if os.path.exists(tmp_path):
                os.unlink(tmp_path)
            raise

    def fetch(self, genus: int, kind: CacheKind, key: str, compute: Callable[[], LaurentPoly]) -> LaurentPoly:
        """Cached value, or compute and store it."""
        cached = self.get(genus, kind, key)
        if cached is not None:
            return cached
        value = compute()
        self.put(genus, kind, key, value)
        return value
