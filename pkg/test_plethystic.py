#!/usr/bin/env python3
"""
Plethystic layer tests
Exp/Log on truncated q-series and the free graded-commutative algebra oracle
"""

import itertools
import json
import math
import sys
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

sys.path.append('.')

from app.models.errors import UsageError
from app.models.laurent import Arity, LaurentPoly
from app.models.qseries import BigradedDims, QSeries
from app.services.plethystic import graded_invariant_oracle, pleth_exp, pleth_log, series_mul

t = LaurentPoly.t
ONE = LaurentPoly.one()
R_MAX = 6

small_polys = st.dictionaries(
    st.integers(min_value=-2, max_value=4),
    st.integers(min_value=-3, max_value=3),
    max_size=3,
).map(LaurentPoly)

series_without_constant = st.lists(small_polys, min_size=R_MAX, max_size=R_MAX).map(
    lambda coeffs: QSeries(R_MAX, [LaurentPoly.zero()] + coeffs)
)

dimension_tables = st.dictionaries(
    st.tuples(st.integers(min_value=0, max_value=3), st.integers(min_value=1, max_value=4)),
    st.integers(min_value=0, max_value=2),
    max_size=4,
).filter(lambda d: sum(d.values()) <= 6)


def test_exp_of_single_monomials():
    """Exp[q] = 1/(1-q), Exp[-q] = 1-q, Exp[tq] = sum of t^n q^n"""
    q = QSeries.from_terms(3, {1: ONE})
    assert pleth_exp(q) == QSeries(3, [ONE, ONE, ONE, ONE])
    assert pleth_exp(-q) == QSeries(3, [ONE, -ONE])
    tq = QSeries.from_terms(3, {1: t(1)})
    assert pleth_exp(tq) == QSeries(3, [ONE, t(1), t(2), t(3)])


def test_exp_complete_homogeneous():
    """Exp[(t + 1/t) q] has the complete homogeneous polynomials as coefficients"""
    a = QSeries.from_terms(2, {1: t(1) + t(-1)})
    expected = QSeries(2, [ONE, t(1) + t(-1), t(2) + ONE + t(-2)])
    assert pleth_exp(a) == expected


def test_preconditions():
    with pytest.raises(UsageError):
        pleth_exp(QSeries.one(3))
    with pytest.raises(UsageError):
        pleth_log(QSeries(3, [ONE * 2]))
    with pytest.raises(UsageError):
        series_mul(QSeries.one(3), QSeries.one(4))


def test_bivariate_roundtrip():
    u = LaurentPoly.monomial((1, 0))
    v = LaurentPoly.monomial((0, 1))
    a = QSeries.from_terms(3, {1: u - v, 2: u * v}, Arity.BIVARIATE)
    assert pleth_log(pleth_exp(a)) == a


@settings(max_examples=100, deadline=None)
@given(series_without_constant)
def test_log_inverts_exp(a):
    assert pleth_log(pleth_exp(a)) == a


@settings(max_examples=100, deadline=None)
@given(series_without_constant, series_without_constant)
def test_exp_is_a_homomorphism(a, b):
    assert pleth_exp(a + b) == series_mul(pleth_exp(a), pleth_exp(b))


@settings(max_examples=100, deadline=None)
@given(dimension_tables)
def test_free_algebra_oracle(dims):
    """Exp of the signed Hilbert series counts the free graded-commutative algebra"""
    table = BigradedDims(dims=dims)
    assert graded_invariant_oracle(table, 4) == pleth_exp(table.signed_hilbert_series(4))


def test_free_algebra_oracle_every_small_table():
    """Every table on t-degrees 0, 1 and q-degrees 1..4 with total dimension <= 6"""
    cells = [(t_deg, q_deg) for t_deg in (0, 1) for q_deg in range(1, 5)]
    checked = 0
    for total in range(7):
        for chosen in itertools.combinations_with_replacement(cells, total):
            table = BigradedDims(dims=dict(Counter(chosen)))
            assert graded_invariant_oracle(table, 4) == pleth_exp(table.signed_hilbert_series(4)), chosen
            checked += 1
    assert checked == math.comb(14, 6)


def test_oracle_exterior_generator():
    """One odd generator in (t, q) degree (1, 1): Lambda gives 1 + tq, signed 1 - tq"""
    table = BigradedDims(dims={(1, 1): 1})
    assert graded_invariant_oracle(table, 2) == QSeries(2, [ONE, -t(1)])


def test_dimension_table_validation():
    with pytest.raises(ValueError):
        BigradedDims(dims={(1, 0): 1})
    with pytest.raises(ValueError):
        BigradedDims(dims={(1, 1): -1})


def test_series_json_roundtrip():
    u = LaurentPoly.monomial((1, 0))
    v = LaurentPoly.monomial((0, 1))
    univariate = QSeries(3, [ONE, t(1) - t(-1), LaurentPoly.zero(), t(2) * 5])
    bivariate = QSeries.from_terms(2, {2: u * v - v}, Arity.BIVARIATE)
    for series in (univariate, bivariate):
        restored = QSeries.from_json(json.loads(json.dumps(series.to_json())))
        assert restored == series
        assert restored.arity is series.arity
    assert univariate.to_json()["coeffs"][2] == []
    with pytest.raises(UsageError):
        QSeries.from_json({"coeffs": []})
