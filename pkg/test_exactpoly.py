#!/usr/bin/env python3
"""
Exact polynomial layer tests
Laurent polynomial arithmetic, geometric sums, Gauss binomials and the
Cauchy binomial identity
"""

import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

sys.path.append('.')

from app.models.errors import ComputationError, UsageError
from app.models.laurent import Arity, LaurentPoly
from app.services.exactpoly import (
    cauchy_binomial_holds,
    gauss_binomial,
    p_series,
    projective_hodge,
    projective_poincare,
)

t = LaurentPoly.t
ONE = LaurentPoly.one()

laurent_polys = st.dictionaries(
    st.integers(min_value=-4, max_value=6),
    st.integers(min_value=-6, max_value=6),
    max_size=5,
).map(LaurentPoly)


def test_p_series():
    """p(n; t) is the geometric sum"""
    assert p_series(1) == ONE
    assert p_series(3) == ONE + t(1) + t(2)
    assert projective_poincare(2) == ONE + t(2)
    with pytest.raises(UsageError):
        p_series(0)


def test_projective_hodge():
    h = projective_hodge(3)
    assert h.arity is Arity.BIVARIATE
    assert h.specialize_diagonal() == projective_poincare(3)


def test_gauss_binomial_values():
    """Gauss binomials on a few hand-checked cases"""
    assert gauss_binomial(4, 2) == LaurentPoly.from_coefficients([1, 1, 2, 1, 1])
    assert gauss_binomial(5, 0) == ONE
    assert gauss_binomial(2, 3).is_zero()
    assert gauss_binomial(6, 2).evaluate(1) == 15
    with pytest.raises(UsageError):
        gauss_binomial(-1, 0)


@pytest.mark.parametrize("m", range(1, 9))
def test_cauchy_binomial(m):
    assert cauchy_binomial_holds(m)


def test_exact_division():
    """Exact quotients succeed, inexact ones raise"""
    product = (ONE + t(1)) * (ONE - t(3))
    assert product.exact_div(ONE + t(1)) == ONE - t(3)
    assert t(-2).exact_div(t(-5)) == t(3)
    with pytest.raises(ComputationError):
        (ONE + t(2)).exact_div(ONE + t(1))
    with pytest.raises(ComputationError):
        (ONE + t(1)).exact_div(LaurentPoly.constant(2))


def test_bivariate_division():
    u = LaurentPoly.monomial((1, 0))
    v = LaurentPoly.monomial((0, 1))
    one = LaurentPoly.one(Arity.BIVARIATE)
    assert ((one - u) * (one - v)).exact_div(one - u) == one - v
    assert (u * v).swap_variables() == u * v
    assert (u - v).flip_sign() == v - u


def test_arity_mismatch():
    with pytest.raises(UsageError):
        ONE + LaurentPoly.one(Arity.BIVARIATE)


def test_substitutions():
    assert (LaurentPoly.from_coefficients([3, 2])).taylor_shift(-1) == ONE + t(1) * 2
    assert (ONE + t(1)).adams(2) == ONE + t(2)
    assert (ONE + t(1) + t(2)).flip_sign() == ONE - t(1) + t(2)
    assert (ONE + t(2)).shift(-1) == t(-1) + t(1)
    with pytest.raises(UsageError):
        t(1).adams(0)


def test_palindromic():
    assert (ONE + t(1) * 2 + t(2)).is_palindromic(1)
    assert not (ONE + t(1) * 2).is_palindromic(1)
    assert (t(-1) + t(1)).is_palindromic(0)


def test_json_and_format():
    """Canonical JSON uses decimal strings; text and LaTeX forms are stable"""
    poly = ONE + t(2) * 2
    assert poly.to_json() == [[0, "1"], [2, "2"]]
    assert LaurentPoly.from_json(poly.to_json()) == poly
    assert poly.format() == "1 + 2*t^2"
    assert poly.format(latex=True) == "1 + 2t^{2}"
    assert (t(1) * -1).format() == "-t"
    big = LaurentPoly.constant(10 ** 30)
    assert big.to_json() == [[0, str(10 ** 30)]]
    with pytest.raises(UsageError):
        LaurentPoly.from_json([[0, "x"]])


def test_empty_json_needs_arity():
    with pytest.raises(UsageError):
        LaurentPoly.from_json([])
    zero = LaurentPoly.from_json([], Arity.BIVARIATE)
    assert zero.is_zero()
    assert zero.arity is Arity.BIVARIATE
    assert LaurentPoly.from_json([], "univariate").arity is Arity.UNIVARIATE


def test_non_integer_coefficients_rejected():
    with pytest.raises(UsageError):
        LaurentPoly({0: 1.5})


@settings(max_examples=100, deadline=None)
@given(laurent_polys, laurent_polys, laurent_polys)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a - a).is_zero()
    assert (a * b).flip_sign() == a.flip_sign() * b.flip_sign()


@settings(max_examples=100, deadline=None)
@given(laurent_polys, laurent_polys)
def test_division_inverts_multiplication(a, b):
    if b.is_zero():
        return
    assert (a * b).exact_div(b) == a


def test_small_products():
    assert (ONE + t(1)) * (ONE - t(1)) == ONE - t(2)
    assert (t(-1) + 1) * t(1) == ONE + t(1)
    assert (ONE - t(1)) ** 4 == LaurentPoly.from_coefficients([1, -4, 6, -4, 1])


@pytest.mark.parametrize("m,n", [(4, 2), (5, 2), (6, 3), (7, 1)])
def test_gauss_binomial_symmetry(m, n):
    poly = gauss_binomial(m, n)
    assert poly.is_palindromic(Fraction(n * (m - n), 2))
    assert poly == gauss_binomial(m, m - n)


@settings(max_examples=50, deadline=None)
@given(laurent_polys)
def test_adams_composes(a):
    assert a.adams(2).adams(3) == a.adams(6)
    assert p_series(5).evaluate(1) == 5
