"""
Closed-form polynomials used throughout: geometric sums p(n; t), Gauss
binomials, projective-space Poincare polynomials, and the Cauchy binomial
identity.
"""

import logging
from functools import lru_cache
from typing import List

from app.models.errors import UsageError
from app.models.laurent import Arity, LaurentPoly
from app.models.qseries import QSeries
from app.services.plethystic import series_mul

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def p_series(n: int) -> LaurentPoly:
    """p(n; t) = (t^n - 1)/(t - 1) = 1 + t + ... + t^(n-1)."""
    if not isinstance(n, int) or n < 1:
        raise UsageError(f"p(n; t) needs n >= 1, got {n!r}")
    return LaurentPoly.from_coefficients([1] * n)


def projective_poincare(n: int) -> LaurentPoly:
    """P_t(P^(n-1)) = p(n; t^2)."""
    return p_series(n).adams(2)


def projective_hodge(n: int) -> LaurentPoly:
    """h_{u,v}(P^(n-1)) = sum of (uv)^j for j < n."""
    if n < 1:
        raise UsageError(f"projective space needs n >= 1, got {n}")
    return LaurentPoly({(j, j): 1 for j in range(n)}, Arity.BIVARIATE)


@lru_cache(maxsize=None)
def gauss_binomial(m: int, n: int) -> LaurentPoly:
    """
    Gauss binomial [m choose n]_t as a polynomial.

    Computed from the product of (1 - t^(m-i)) / (1 - t^(i+1)) with exact
    division at every step; n > m gives the zero polynomial.
    """
    if m < 0 or n < 0:
        raise UsageError(f"gauss_binomial needs m, n >= 0, got ({m}, {n})")
    if n > m:
        return LaurentPoly.zero()
    n = min(n, m - n)
    one = LaurentPoly.one()
    result = one
    for i in range(n):
        result = (result * (one - LaurentPoly.t(m - i))).exact_div(one - LaurentPoly.t(i + 1))
    return result


def cauchy_product(m: int) -> QSeries:
    """The product of (1 + t^k z) for k = 0..m-1, as a series in z (stored in q)."""
    if m < 1:
        raise UsageError(f"cauchy_product needs m >= 1, got {m}")
    result = QSeries.one(m)
    for k in range(m):
        factor = QSeries(m, [LaurentPoly.one(), LaurentPoly.t(k)])
        result = series_mul(result, factor)
    return result


def cauchy_sum(m: int) -> QSeries:
    """Sum over n of t^(n(n-1)/2) [m choose n]_t z^n."""
    coeffs: List[LaurentPoly] = [
        gauss_binomial(m, n).shift(n * (n - 1) // 2) for n in range(m + 1)
    ]
    return QSeries(m, coeffs)


def cauchy_binomial_holds(m: int) -> bool:
    """Check the Cauchy binomial theorem and its z = -1 specialization for one m."""
    product = cauchy_product(m)
    expanded = cauchy_sum(m)
    if product != expanded:
        logger.error(f"Cauchy binomial identity fails for m={m}")
        return False
    alternating = LaurentPoly.zero()
    for n in range(1, m + 1):
        term = expanded[n]
        alternating = alternating + (term if n % 2 else -term)
    ok = alternating == LaurentPoly.one()
    if not ok:
        logger.error(f"z = -1 specialization of the Cauchy identity fails for m={m}")
    return ok
