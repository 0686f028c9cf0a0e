#!/usr/bin/env python3
"""
Cache and settings tests
Cache directory resolution, entry integrity and recomputation
"""

import json
import logging
import sys

import pytest
from pydantic import ValidationError

sys.path.append('.')

from app.config import CACHE_DIR_ENV, Settings, load_settings, resolve_cache_dir
from app.models.laurent import Arity, LaurentPoly
from app.models.tables import CacheEntry, CacheKind, poly_hash
from app.services.cache_store import CacheStore

POLY = LaurentPoly.from_coefficients([1, 4, 6, 4, 1])


@pytest.fixture
def store(tmp_path):
    return CacheStore(Settings(cache_dir=tmp_path / "cache"))


def test_cache_dir_precedence(tmp_path, monkeypatch):
    monkeypatch.delenv(CACHE_DIR_ENV, raising=False)
    assert resolve_cache_dir(None) is None
    monkeypatch.setenv(CACHE_DIR_ENV, str(tmp_path / "env"))
    assert resolve_cache_dir(None) == tmp_path / "env"
    assert resolve_cache_dir(tmp_path / "flag") == tmp_path / "flag"
    assert load_settings().cache_dir == tmp_path / "env"


def test_log_level_validation():
    assert Settings(log_level="debug").log_level == "DEBUG"
    with pytest.raises(ValidationError):
        Settings(log_level="LOUD")


def test_disabled_cache_is_a_no_op(monkeypatch):
    monkeypatch.delenv(CACHE_DIR_ENV, raising=False)
    disabled = CacheStore(load_settings())
    assert not disabled.enabled
    disabled.put(2, CacheKind.IP, "1", POLY)
    assert disabled.get(2, CacheKind.IP, "1") is None
    assert disabled.fetch(2, CacheKind.IP, "1", lambda: POLY) == POLY


def test_put_then_get(store):
    store.put(2, CacheKind.IP, "1", POLY)
    assert store.get(2, CacheKind.IP, "1") == POLY
    assert store.get(3, CacheKind.IP, "1") is None
    assert store.get(2, CacheKind.SMOOTH_BETTI, "1") is None
    assert not list(store.cache_dir.glob("*.tmp"))


def test_bivariate_entries_keep_their_arity(store):
    hodge = LaurentPoly.monomial((1, 1)) + 1
    store.put(2, CacheKind.IP_HODGE, "1", hodge)
    cached = store.get(2, CacheKind.IP_HODGE, "1")
    assert cached == hodge
    assert cached.arity is Arity.BIVARIATE


def test_fetch_computes_once(store):
    calls = []

    def compute():
        calls.append(1)
        return POLY

    assert store.fetch(2, CacheKind.FIBER, "1,1", compute) == POLY
    assert store.fetch(2, CacheKind.FIBER, "1,1", compute) == POLY
    assert len(calls) == 1


def test_hash_mismatch_is_discarded(store, caplog):
    store.put(2, CacheKind.IP, "2", POLY)
    path = store.path_for(2, CacheKind.IP, "2")
    entry = json.loads(path.read_text(encoding="utf-8"))
    entry["poly"] = [[0, "1"]]
    path.write_text(json.dumps(entry), encoding="utf-8")
    with caplog.at_level(logging.WARNING):
        assert store.get(2, CacheKind.IP, "2") is None
    assert "content hash" in caplog.text


def test_unreadable_and_misplaced_entries(store):
    store.put(2, CacheKind.IP, "3", POLY)
    path = store.path_for(2, CacheKind.IP, "3")
    path.write_text("{truncated", encoding="utf-8")
    assert store.get(2, CacheKind.IP, "3") is None

    # an intact entry stored under another key's file name
    other = CacheEntry.build(2, "4", CacheKind.IP, POLY, "1.0.0")
    path.write_text(json.dumps(other.model_dump(mode="json")), encoding="utf-8")
    assert store.get(2, CacheKind.IP, "3") is None


def test_entry_hash():
    entry = CacheEntry.build(2, "1", CacheKind.IP, POLY, "1.0.0")
    assert entry.content_hash == poly_hash(POLY)
    assert entry.hash_matches()
    assert entry.polynomial() == POLY
