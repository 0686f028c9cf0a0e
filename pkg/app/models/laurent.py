"""
Exact Laurent polynomials with arbitrary-precision integer coefficients.

One variable (t) or two variables (u, v). Every Poincare, Hodge and Hilbert
polynomial in the package is a LaurentPoly; the type is immutable and all
arithmetic stays in the integers.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from math import comb
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from app.models.errors import ComputationError, UsageError

Exponent = Union[int, Tuple[int, int]]


class Arity(str, Enum):
    """Number of formal variables."""
    UNIVARIATE = "univariate"
    BIVARIATE = "bivariate"


def _coords(exp: Exponent) -> Tuple[int, ...]:
    return (exp,) if isinstance(exp, int) else exp


def exponent_add(a: Exponent, b: Exponent) -> Exponent:
    if isinstance(a, int):
        return a + b
    return (a[0] + b[0], a[1] + b[1])


def exponent_sub(a: Exponent, b: Exponent) -> Exponent:
    if isinstance(a, int):
        return a - b
    return (a[0] - b[0], a[1] - b[1])


def exponent_scale(a: Exponent, n: int) -> Exponent:
    if isinstance(a, int):
        return a * n
    return (a[0] * n, a[1] * n)


def total_degree(exp: Exponent) -> int:
    """Cohomological degree of a monomial: t^e -> e, u^p v^q -> p + q."""
    return exp if isinstance(exp, int) else exp[0] + exp[1]


def _validate_exponent(exp, arity: Arity) -> Exponent:
    if arity is Arity.UNIVARIATE:
        if isinstance(exp, bool) or not isinstance(exp, int):
            raise UsageError(f"univariate exponent must be an integer, got {exp!r}")
        return exp
    if (
        not isinstance(exp, (tuple, list))
        or len(exp) != 2
        or not all(isinstance(x, int) and not isinstance(x, bool) for x in exp)
    ):
        raise UsageError(f"bivariate exponent must be a pair of integers, got {exp!r}")
    return (exp[0], exp[1])


class LaurentPoly:
    """
    Sparse exact Laurent polynomial.

    ``terms`` maps an exponent (an int, or a pair for the bivariate case) to a
    nonzero Python int. Zero coefficients are never stored.
    """

    __slots__ = ("_terms", "_arity", "_hash")

    def __init__(
        self,
        terms: Optional[Mapping[Exponent, int]] = None,
        arity: Union[Arity, str] = Arity.UNIVARIATE,
    ):
        arity = Arity(arity)
        clean: Dict[Exponent, int] = {}
        for exp, coeff in (terms or {}).items():
            if isinstance(coeff, bool) or not isinstance(coeff, int):
                raise UsageError(f"coefficients must be integers, got {coeff!r}")
            if coeff:
                clean[_validate_exponent(exp, arity)] = coeff
        self._terms = clean
        self._arity = arity
        self._hash = None

    @classmethod
    def _wrap(cls, terms: Dict[Exponent, int], arity: Arity) -> "LaurentPoly":
        # trusted constructor: terms already validated and free of zeros
        obj = object.__new__(cls)
        obj._terms = terms
        obj._arity = arity
        obj._hash = None
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, arity: Union[Arity, str] = Arity.UNIVARIATE) -> "LaurentPoly":
        return cls._wrap({}, Arity(arity))

    @classmethod
    def one(cls, arity: Union[Arity, str] = Arity.UNIVARIATE) -> "LaurentPoly":
        return cls.constant(1, arity)

    @classmethod
    def constant(cls, value: int, arity: Union[Arity, str] = Arity.UNIVARIATE) -> "LaurentPoly":
        arity = Arity(arity)
        origin: Exponent = 0 if arity is Arity.UNIVARIATE else (0, 0)
        return cls({origin: value}, arity)

    @classmethod
    def monomial(cls, exponent: Exponent, coeff: int = 1) -> "LaurentPoly":
        arity = Arity.UNIVARIATE if isinstance(exponent, int) else Arity.BIVARIATE
        return cls({exponent: coeff}, arity)

    @classmethod
    def t(cls, power: int = 1) -> "LaurentPoly":
        return cls.monomial(power)

    @classmethod
    def from_coefficients(cls, coeffs: Sequence[int], start: int = 0) -> "LaurentPoly":
        """Dense univariate constructor: coeffs[i] is the coefficient of t^(start+i)."""
        return cls({start + i: c for i, c in enumerate(coeffs)})

    # -- accessors --------------------------------------------------------

    @property
    def arity(self) -> Arity:
        return self._arity

    @property
    def terms(self) -> Mapping[Exponent, int]:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def coefficient(self, exponent: Exponent) -> int:
        return self._terms.get(exponent, 0)

    def degree(self) -> Optional[int]:
        """Largest total degree, or None for the zero polynomial."""
        if not self._terms:
            return None
        return max(total_degree(e) for e in self._terms)

    def valuation(self) -> Optional[int]:
        """Smallest total degree, or None for the zero polynomial."""
        if not self._terms:
            return None
        return min(total_degree(e) for e in self._terms)

    def sorted_terms(self) -> List[Tuple[Exponent, int]]:
        return sorted(self._terms.items())

    def coefficients(self) -> List[int]:
        """Dense coefficient list from t^0 up to the degree (univariate, no negative exponents)."""
        self._require_univariate("coefficients")
        if not self._terms:
            return []
        if self.valuation() < 0:
            raise UsageError("dense coefficient list needs nonnegative exponents")
        return [self._terms.get(e, 0) for e in range(self.degree() + 1)]

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self._terms.values())

    # -- ring operations --------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other._arity is not self._arity:
                raise UsageError(
                    f"arity mismatch: {self._arity.value} vs {other._arity.value}"
                )
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return LaurentPoly.constant(other, self._arity)
        raise UsageError(f"cannot combine LaurentPoly with {type(other).__name__}")

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._wrap(out, self._arity)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._wrap({e: -c for e, c in self._terms.items()}, self._arity)

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int) and not isinstance(other, bool):
            if other == 0:
                return LaurentPoly.zero(self._arity)
            return LaurentPoly._wrap({e: c * other for e, c in self._terms.items()}, self._arity)
        other = self._coerce(other)
        return self.mul_truncated(other, None)

    __rmul__ = __mul__

    def mul_truncated(self, other: "LaurentPoly", max_degree: Optional[int]) -> "LaurentPoly":
        """Product keeping only terms of total degree <= max_degree (all terms if None)."""
        other = self._coerce(other)
        out: Dict[Exponent, int] = {}
        left = self._terms.items()
        right = list(other._terms.items())
        for ea, ca in left:
            da = total_degree(ea)
            for eb, cb in right:
                if max_degree is not None and da + total_degree(eb) > max_degree:
                    continue
                key = exponent_add(ea, eb)
                out[key] = out.get(key, 0) + ca * cb
        return LaurentPoly._wrap({e: c for e, c in out.items() if c}, self._arity)

    def __pow__(self, n: int) -> "LaurentPoly":
        if not isinstance(n, int):
            raise UsageError("exponent must be an integer")
        if n < 0:
            if not self.is_monomial():
                raise UsageError("negative powers are only defined for monomials")
            (e, c), = self._terms.items()
            if c not in (1, -1):
                raise UsageError("negative power of a monomial with non-unit coefficient")
            return LaurentPoly._wrap({exponent_scale(e, n): c ** (-n)}, self._arity)
        result = LaurentPoly.one(self._arity)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._arity is other._arity and self._terms == other._terms
        if isinstance(other, int) and not isinstance(other, bool):
            return self == LaurentPoly.constant(other, self._arity)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._arity, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- substitutions ----------------------------------------------------

    def adams(self, n: int) -> "LaurentPoly":
        """Substitute t -> t^n (u -> u^n, v -> v^n): every exponent times n."""
        if n < 1:
            raise UsageError(f"adams operation needs n >= 1, got {n}")
        return LaurentPoly._wrap({exponent_scale(e, n): c for e, c in self._terms.items()}, self._arity)

    def flip_sign(self) -> "LaurentPoly":
        """Substitute t -> -t (u, v -> -u, -v): negate odd total degrees."""
        return LaurentPoly._wrap(
            {e: (-c if total_degree(e) % 2 else c) for e, c in self._terms.items()},
            self._arity,
        )

    def shift(self, exponent: Exponent) -> "LaurentPoly":
        """Multiply by the monomial with the given exponent."""
        exponent = _validate_exponent(exponent, self._arity)
        return LaurentPoly._wrap({exponent_add(e, exponent): c for e, c in self._terms.items()}, self._arity)

    def truncate(self, max_degree: int) -> "LaurentPoly":
        return LaurentPoly._wrap(
            {e: c for e, c in self._terms.items() if total_degree(e) <= max_degree},
            self._arity,
        )

    def specialize_diagonal(self) -> "LaurentPoly":
        """Set u = v = t; u^p v^q maps to t^(p+q)."""
        if self._arity is not Arity.BIVARIATE:
            raise UsageError("diagonal specialization needs a bivariate polynomial")
        out: Dict[int, int] = {}
        for (p, q), c in self._terms.items():
            out[p + q] = out.get(p + q, 0) + c
        return LaurentPoly._wrap({e: c for e, c in out.items() if c}, Arity.UNIVARIATE)

    def swap_variables(self) -> "LaurentPoly":
        """Exchange u and v."""
        if self._arity is not Arity.BIVARIATE:
            raise UsageError("variable swap needs a bivariate polynomial")
        return LaurentPoly._wrap({(q, p): c for (p, q), c in self._terms.items()}, self._arity)

    def taylor_shift(self, a: int) -> "LaurentPoly":
        """Return p(t + a) for a univariate polynomial with no negative exponents."""
        self._require_univariate("taylor_shift")
        if self._terms and self.valuation() < 0:
            raise UsageError("taylor_shift is only defined for polynomials")
        out: Dict[int, int] = {}
        for e, c in self._terms.items():
            for k in range(e + 1):
                out[k] = out.get(k, 0) + c * comb(e, k) * a ** (e - k)
        return LaurentPoly._wrap({e: c for e, c in out.items() if c}, self._arity)

    def evaluate(self, x: int) -> Union[int, Fraction]:
        self._require_univariate("evaluate")
        total = Fraction(0)
        for e, c in self._terms.items():
            total += c * Fraction(x) ** e
        return int(total) if total.denominator == 1 else total

    # -- division ---------------------------------------------------------

    def exact_div(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """
        Exact quotient self / divisor.

        Raises ComputationError when the remainder is nonzero; quotient
        exponents are confined to the box allowed by the Newton polytopes.
        """
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise UsageError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly.zero(self._arity)
        n_coords = 1 if self._arity is Arity.UNIVARIATE else 2
        lower = []
        upper = []
        for i in range(n_coords):
            fi = [_coords(e)[i] for e in self._terms]
            hi = [_coords(e)[i] for e in divisor._terms]
            lower.append(min(fi) - min(hi))
            upper.append(max(fi) - max(hi))

        lead = max(divisor._terms)
        lead_coeff = divisor._terms[lead]
        remainder = dict(self._terms)
        quotient: Dict[Exponent, int] = {}
        while remainder:
            top = max(remainder)
            q_exp = exponent_sub(top, lead)
            coords = _coords(q_exp)
            if any(coords[i] < lower[i] or coords[i] > upper[i] for i in range(n_coords)):
                raise ComputationError(f"{self} is not divisible by {divisor}", check="exact division")
            q_coeff, rem = divmod(remainder[top], lead_coeff)
            if rem:
                raise ComputationError(
                    f"coefficient {remainder[top]} not divisible by {lead_coeff}",
                    check="exact division",
                )
            quotient[q_exp] = q_coeff
            for e, c in divisor._terms.items():
                key = exponent_add(e, q_exp)
                v = remainder.get(key, 0) - q_coeff * c
                if v:
                    remainder[key] = v
                else:
                    remainder.pop(key, None)
        return LaurentPoly._wrap(quotient, self._arity)

    # -- symmetry ---------------------------------------------------------

    def is_palindromic(self, center: Union[int, Fraction]) -> bool:
        """True iff coeff(center - j) == coeff(center + j) for all j (univariate)."""
        self._require_univariate("is_palindromic")
        span = 2 * Fraction(center)
        if span.denominator != 1:
            return self.is_zero()
        span = int(span)
        return all(self._terms.get(span - e, 0) == c for e, c in self._terms.items())

    # -- serialization ----------------------------------------------------

    def to_json(self) -> List[list]:
        """Canonical form: [[exponent, "coeff"], ...] sorted by exponent."""
        out = []
        for e, c in self.sorted_terms():
            key = e if isinstance(e, int) else [e[0], e[1]]
            out.append([key, str(c)])
        return out

    @classmethod
    def from_json(cls, data: Iterable, arity: Optional[Union[Arity, str]] = None) -> "LaurentPoly":
        """
        Inverse of to_json. Arity is read off the first exponent when not given;
        an empty term list carries no exponent, so it needs an explicit arity.
        """
        entries = list(data)
        if arity is None:
            if not entries:
                raise UsageError("an empty term list needs an explicit arity")
            arity = Arity.BIVARIATE if entries and isinstance(entries[0][0], list) else Arity.UNIVARIATE
        arity = Arity(arity)
        terms: Dict[Exponent, int] = {}
        for entry in entries:
            if not isinstance(entry, (list, tuple)) or len(entry) != 2:
                raise UsageError(f"malformed polynomial term {entry!r}")
            raw_exp, raw_coeff = entry
            exp = _validate_exponent(tuple(raw_exp) if isinstance(raw_exp, list) else raw_exp, arity)
            if exp in terms:
                raise UsageError(f"duplicate exponent {raw_exp!r}")
            try:
                coeff = int(str(raw_coeff))
            except ValueError:
                raise UsageError(f"coefficient {raw_coeff!r} is not a decimal integer")
            terms[exp] = coeff
        return cls(terms, arity)

    # -- display ----------------------------------------------------------

    def _monomial_text(self, exp: Exponent, latex: bool) -> str:
        def power(name: str, k: int) -> str:
            if k == 0:
                return ""
            if k == 1:
                return name
            return f"{name}^{{{k}}}" if latex else f"{name}^{k}"

        if isinstance(exp, int):
            parts = [power("t", exp)]
        else:
            parts = [power("u", exp[0]), power("v", exp[1])]
        return ("" if latex else "*").join(p for p in parts if p)

    def format(self, latex: bool = False) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            mono = self._monomial_text(e, latex)
            magnitude = abs(c)
            if not mono:
                body = str(magnitude)
            elif magnitude == 1:
                body = mono
            else:
                body = f"{magnitude}{mono}" if latex else f"{magnitude}*{mono}"
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.format()!r}, {self._arity.value})"

    def _require_univariate(self, what: str) -> None:
        if self._arity is not Arity.UNIVARIATE:
            raise UsageError(f"{what} needs a univariate polynomial")
