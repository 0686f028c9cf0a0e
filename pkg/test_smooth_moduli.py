#!/usr/bin/env python3
"""
Smooth moduli tests
Harder-Narasimhan recursion, rank-2 closed form and user smooth tables
"""

import json
import logging
import sys

import pytest

sys.path.append('.')

from app.models.errors import IngestionError, UsageError
from app.models.laurent import Arity, LaurentPoly
from app.models.tables import SCHEMA_VERSION, EntryKind, Provenance
from app.services.combinat import moduli_dim
from app.services.exactpoly import p_series
from app.services.smooth_moduli import (
    HarderNarasimhanRecursion,
    build_smooth_table,
    hn_hodge_m1,
    hn_poincare_m1,
    load_smooth_table,
    parabolic_poincare,
    rank2_oracle,
    validate_betti,
    validate_hodge,
)

ONE = LaurentPoly.one()
t = LaurentPoly.t
JACOBIAN_G2 = (ONE + t(1)) ** 4


def write_table(path, genus, entries, schema_version=SCHEMA_VERSION):
    document = {
        "schema_version": schema_version,
        "genus": genus,
        "entries": [{"rank": r, "kind": kind, "poly": poly.to_json()} for r, kind, poly in entries],
    }
    path.write_text(json.dumps(document), encoding="utf-8")
    return path


@pytest.mark.parametrize("g", [2, 3, 4, 5])
def test_rank_one_is_the_jacobian(g):
    assert hn_poincare_m1(1, g) == (ONE + t(1)) ** (2 * g)


@pytest.mark.parametrize("g", [2, 3, 4, 5])
def test_rank_two_matches_closed_form(g):
    assert hn_poincare_m1(2, g) == rank2_oracle(g)


def test_rank_two_genus_two_value():
    expected = JACOBIAN_G2 * LaurentPoly.from_coefficients([1, 0, 1, 4, 1, 0, 1])
    assert hn_poincare_m1(2, 2) == expected
    assert rank2_oracle(2) == expected


@pytest.mark.parametrize("g", [2, 3])
@pytest.mark.parametrize("r", [1, 2, 3])
def test_betti_structure(r, g):
    poly = hn_poincare_m1(r, g)
    validate_betti(r, poly, g)
    assert poly.degree() == 2 * moduli_dim(r, g)


def test_euler_characteristic_vanishes():
    """M_1(r) carries a free action of the torsion points, so P_{-1} is zero"""
    for r in (1, 2, 3):
        assert hn_poincare_m1(r, 2).evaluate(-1) == 0


def test_hodge_rank_one():
    u = LaurentPoly.monomial((1, 0))
    v = LaurentPoly.monomial((0, 1))
    one = LaurentPoly.one(Arity.BIVARIATE)
    for g in (2, 3):
        assert hn_hodge_m1(1, g) == (one - u) ** g * (one - v) ** g


@pytest.mark.parametrize("r", [1, 2, 3])
def test_hodge_structure(r):
    g = 2
    hodge = hn_hodge_m1(r, g)
    validate_hodge(r, hodge, g, hn_poincare_m1(r, g))
    assert hodge.specialize_diagonal() == hn_poincare_m1(r, g).flip_sign()


def test_truncation_guard():
    recursion = HarderNarasimhanRecursion(2, 4)
    with pytest.raises(UsageError):
        recursion.coprime_moduli(2)
    with pytest.raises(UsageError):
        hn_poincare_m1(0, 2)
    with pytest.raises(UsageError):
        hn_poincare_m1(2, 1)


def test_parabolic():
    assert parabolic_poincare(2, 2) == hn_poincare_m1(2, 2) * (ONE + t(2))
    assert parabolic_poincare(3, 3) == hn_poincare_m1(3, 3) * p_series(3).adams(2)


def test_load_valid_table(tmp_path):
    path = write_table(tmp_path / "smooth.json", 2, [(1, "betti", JACOBIAN_G2)])
    table = load_smooth_table(path)
    assert table.genus == 2
    assert table.betti_for(1) == JACOBIAN_G2
    assert table.provenance["betti:1"] is Provenance.USER_FILE
    assert table.max_rank == 1
    with pytest.raises(UsageError):
        table.betti_for(2)


def test_load_hodge_entry(tmp_path):
    entries = [(1, "betti", JACOBIAN_G2), (1, "hodge", hn_hodge_m1(1, 2))]
    table = load_smooth_table(write_table(tmp_path / "smooth.json", 2, entries))
    assert table.hodge_for(1).arity is Arity.BIVARIATE


@pytest.mark.parametrize(
    "poly,check",
    [
        (ONE + t(1), "degree"),
        (LaurentPoly.from_coefficients([2, 4, 6, 4, 2]), "constant term"),
        (LaurentPoly.from_coefficients([1, 4, -6, 4, 1]), "nonnegativity"),
        (LaurentPoly.from_coefficients([1, 1, 0, 0, 1]), "palindromicity"),
    ],
)
def test_load_rejects_bad_entries(tmp_path, poly, check):
    path = write_table(tmp_path / "smooth.json", 2, [(1, "betti", poly)])
    with pytest.raises(IngestionError) as info:
        load_smooth_table(path)
    assert info.value.check == check
    assert info.value.rank == 1


def test_load_rejects_bad_documents(tmp_path):
    with pytest.raises(IngestionError):
        load_smooth_table(tmp_path / "missing.json")
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(IngestionError):
        load_smooth_table(broken)
    old = write_table(tmp_path / "old.json", 2, [], schema_version=SCHEMA_VERSION + 1)
    with pytest.raises(IngestionError):
        load_smooth_table(old)
    low_genus = write_table(tmp_path / "low.json", 1, [])
    with pytest.raises(IngestionError):
        load_smooth_table(low_genus)
    twice = write_table(tmp_path / "twice.json", 2, [(1, "betti", JACOBIAN_G2), (1, "betti", JACOBIAN_G2)])
    with pytest.raises(IngestionError) as info:
        load_smooth_table(twice)
    assert info.value.check == "schema"


def test_hodge_entry_must_match_betti(tmp_path):
    u = LaurentPoly.monomial((1, 0))
    v = LaurentPoly.monomial((0, 1))
    one = LaurentPoly.one(Arity.BIVARIATE)
    # symmetric and palindromic but with the wrong diagonal
    wrong = (one + u * v) ** 2
    path = write_table(tmp_path / "smooth.json", 2, [(1, "betti", JACOBIAN_G2), (1, "hodge", wrong)])
    with pytest.raises(IngestionError) as info:
        load_smooth_table(path)
    assert info.value.check == "diagonal"


def test_build_prefers_user_entries(tmp_path, caplog):
    user = load_smooth_table(write_table(tmp_path / "smooth.json", 2, [(1, "betti", JACOBIAN_G2)]))
    with caplog.at_level(logging.WARNING):
        table = build_smooth_table(2, 2, user=user)
    assert "user table" in caplog.text
    assert table.provenance["betti:1"] is Provenance.USER_FILE
    assert table.provenance["betti:2"] is Provenance.BUILTIN_HN
    assert table.betti_for(2) == rank2_oracle(2)
    with pytest.raises(UsageError):
        build_smooth_table(3, 2, user=user)


def test_build_with_hodge():
    table = build_smooth_table(2, 2, hodge=True)
    assert set(table.hodge) == {1, 2}
    assert table.provenance[f"{EntryKind.HODGE.value}:2"] is Provenance.BUILTIN_HN
