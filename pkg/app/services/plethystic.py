"""
Plethystic exponential and logarithm on truncated q-series, and the
brute-force graded-invariant oracle for free graded-commutative algebras.

Exp is evaluated literally as the product of (1 - m)^(-a_m) over the
monomials m = x^j q^r of the input, each factor expanded by the generalized
binomial series and truncated in q. All arithmetic stays in the integers.
"""

import logging
from math import comb
from typing import Dict, List, Tuple

from app.models.errors import UsageError
from app.models.laurent import Arity, Exponent, LaurentPoly, exponent_add, exponent_scale
from app.models.qseries import BigradedDims, QSeries

logger = logging.getLogger(__name__)

_Terms = Dict[Exponent, int]


def series_mul(a: QSeries, b: QSeries) -> QSeries:
    """Cauchy product truncated at r_max."""
    if a.r_max != b.r_max:
        raise UsageError(f"truncation mismatch: {a.r_max} vs {b.r_max}")
    if a.arity is not b.arity:
        raise UsageError("arity mismatch between series")
    r_max = a.r_max
    out = [LaurentPoly.zero(a.arity)] * (r_max + 1)
    for i, ca in enumerate(a.coeffs):
        if ca.is_zero():
            continue
        for j in range(r_max + 1 - i):
            cb = b[j]
            if not cb.is_zero():
                out[i + j] = out[i + j] + ca * cb
    return QSeries(r_max, out, a.arity)


def _factor_weight(a: int, n: int) -> int:
    """Coefficient of m^n in (1 - m)^(-a)."""
    if a > 0:
        return comb(a + n - 1, n)
    return (-1) ** n * comb(-a, n)


def _apply_factor(coeffs: List[_Terms], r: int, exp: Exponent, a: int) -> List[_Terms]:
    """Multiply a dense list of coefficient dicts by (1 - x^exp q^r)^(-a), truncated."""
    r_max = len(coeffs) - 1
    weights: List[Tuple[int, Exponent, int]] = []
    for n in range(1, r_max // r + 1):
        w = _factor_weight(a, n)
        if w:
            weights.append((n * r, exponent_scale(exp, n), w))
    if not weights:
        return coeffs
    out = [dict(c) for c in coeffs]
    for s in range(r, r_max + 1):
        target = out[s]
        for shift_q, shift_x, w in weights:
            if shift_q > s:
                break
            for e, c in coeffs[s - shift_q].items():
                key = exponent_add(e, shift_x)
                v = target.get(key, 0) + c * w
                if v:
                    target[key] = v
                else:
                    target.pop(key, None)
    return out


def _exp_into(coeffs: List[_Terms], series_terms: Dict[int, LaurentPoly]) -> List[_Terms]:
    for r in sorted(series_terms):
        for exp, a in series_terms[r].sorted_terms():
            coeffs = _apply_factor(coeffs, r, exp, a)
    return coeffs


def _unit(r_max: int, arity: Arity) -> List[_Terms]:
    origin: Exponent = 0 if arity is Arity.UNIVARIATE else (0, 0)
    return [{origin: 1}] + [{} for _ in range(r_max)]


def _wrap(coeffs: List[_Terms], r_max: int, arity: Arity) -> QSeries:
    return QSeries(r_max, [LaurentPoly._wrap(c, arity) for c in coeffs], arity)


def pleth_exp(a: QSeries) -> QSeries:
    """Exp[a] = prod over monomials x^j q^r of (1 - x^j q^r)^(-a_{r,j})."""
    if not a[0].is_zero():
        raise UsageError("plethystic exponential needs a series without constant term")
    terms = {r: a[r] for r in range(1, a.r_max + 1) if not a[r].is_zero()}
    coeffs = _exp_into(_unit(a.r_max, a.arity), terms)
    return _wrap(coeffs, a.r_max, a.arity)


def pleth_log(f: QSeries) -> QSeries:
    """
    Inverse of pleth_exp, solved one q-degree at a time.

    A_r = f_r - [q^r] Exp(sum_{s<r} A_s q^s); the running product is updated
    with the factor Exp(A_r q^r) once A_r is known.
    """
    if f[0] != LaurentPoly.one(f.arity):
        raise UsageError("plethystic logarithm needs constant term 1")
    r_max = f.r_max
    running = _unit(r_max, f.arity)
    solved: List[LaurentPoly] = [LaurentPoly.zero(f.arity)]
    for r in range(1, r_max + 1):
        current = LaurentPoly._wrap(dict(running[r]), f.arity)
        a_r = f[r] - current
        solved.append(a_r)
        if not a_r.is_zero():
            running = _exp_into(running, {r: a_r})
        logger.debug(f"pleth_log solved q^{r}: {len(a_r.terms)} terms")
    return QSeries(r_max, solved, f.arity)


def graded_invariant_oracle(dims: BigradedDims, r_max: int) -> QSeries:
    """
    Hilbert series of Sym(even) (x) Lambda(odd) by explicit basis enumeration.

    Parity is taken in the t-degree. The resulting Hilb_{t,q} is returned after
    the sign substitution t -> -t, so that it is directly comparable with
    pleth_exp(dims.signed_hilbert_series(r_max)).
    """
    if r_max < 1:
        raise UsageError(f"r_max must be positive, got {r_max}")
    gens = dims.generators()
    counts: List[Dict[int, int]] = [dict() for _ in range(r_max + 1)]

    def walk(index: int, t_deg: int, q_deg: int) -> None:
        if index == len(gens):
            counts[q_deg][t_deg] = counts[q_deg].get(t_deg, 0) + 1
            return
        g_t, g_q = gens[index]
        max_power = 1 if g_t % 2 else (r_max - q_deg) // g_q
        for power in range(max_power + 1):
            if q_deg + power * g_q > r_max:
                break
            walk(index + 1, t_deg + power * g_t, q_deg + power * g_q)

    walk(0, 0, 0)
    return QSeries(r_max, [LaurentPoly(c).flip_sign() for c in counts])
