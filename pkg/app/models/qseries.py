"""
Truncated power series in q with LaurentPoly coefficients, and bigraded
dimension tables.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, Field, field_validator

from app.models.errors import UsageError
from app.models.laurent import Arity, LaurentPoly


class QSeries:
    """
    Sum of coeffs[r] * q^r for r = 0..r_max, exact modulo q^(r_max + 1).

    The truncation order is part of the value; series of different orders
    never combine silently.
    """

    __slots__ = ("_r_max", "_coeffs", "_arity")

    def __init__(
        self,
        r_max: int,
        coeffs: Optional[Sequence[LaurentPoly]] = None,
        arity: Union[Arity, str] = Arity.UNIVARIATE,
    ):
        if not isinstance(r_max, int) or r_max < 1:
            raise UsageError(f"truncation order must be a positive integer, got {r_max!r}")
        coeffs = list(coeffs or [])
        if coeffs:
            arity = coeffs[0].arity
        arity = Arity(arity)
        if len(coeffs) > r_max + 1:
            if any(not c.is_zero() for c in coeffs[r_max + 1:]):
                raise UsageError("coefficients beyond the truncation order")
            coeffs = coeffs[: r_max + 1]
        for c in coeffs:
            if not isinstance(c, LaurentPoly) or c.arity is not arity:
                raise UsageError("QSeries coefficients must be LaurentPoly of one arity")
        coeffs += [LaurentPoly.zero(arity)] * (r_max + 1 - len(coeffs))
        self._r_max = r_max
        self._coeffs = tuple(coeffs)
        self._arity = arity

    @classmethod
    def one(cls, r_max: int, arity: Union[Arity, str] = Arity.UNIVARIATE) -> "QSeries":
        return cls(r_max, [LaurentPoly.one(arity)], arity)

    @classmethod
    def from_terms(
        cls,
        r_max: int,
        terms: Mapping[int, LaurentPoly],
        arity: Union[Arity, str] = Arity.UNIVARIATE,
    ) -> "QSeries":
        """Build from a sparse {q-degree: coefficient} map; degrees above r_max are dropped."""
        arity = Arity(arity)
        coeffs = [LaurentPoly.zero(arity)] * (r_max + 1)
        for r, c in terms.items():
            if r < 0:
                raise UsageError("negative q-degree")
            if r <= r_max:
                coeffs[r] = c
        return cls(r_max, coeffs, arity)

    @property
    def r_max(self) -> int:
        return self._r_max

    @property
    def arity(self) -> Arity:
        return self._arity

    @property
    def coeffs(self) -> Tuple[LaurentPoly, ...]:
        return self._coeffs

    def __getitem__(self, r: int) -> LaurentPoly:
        return self._coeffs[r]

    def _check(self, other: "QSeries") -> None:
        if not isinstance(other, QSeries):
            raise UsageError(f"cannot combine QSeries with {type(other).__name__}")
        if other._r_max != self._r_max:
            raise UsageError(f"truncation mismatch: {self._r_max} vs {other._r_max}")
        if other._arity is not self._arity:
            raise UsageError("arity mismatch between series")

    def __add__(self, other: "QSeries") -> "QSeries":
        self._check(other)
        return QSeries(self._r_max, [a + b for a, b in zip(self._coeffs, other._coeffs)], self._arity)

    def __sub__(self, other: "QSeries") -> "QSeries":
        self._check(other)
        return QSeries(self._r_max, [a - b for a, b in zip(self._coeffs, other._coeffs)], self._arity)

    def __neg__(self) -> "QSeries":
        return QSeries(self._r_max, [-a for a in self._coeffs], self._arity)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return (
            self._r_max == other._r_max
            and self._arity is other._arity
            and self._coeffs == other._coeffs
        )

    def __hash__(self) -> int:
        return hash((self._r_max, self._coeffs))

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*q^{r}" for r, c in enumerate(self._coeffs) if not c.is_zero())
        return f"QSeries(r_max={self._r_max}: {body or '0'})"

    def to_json(self) -> Dict[str, object]:
        return {"r_max": self._r_max, "coeffs": [c.to_json() for c in self._coeffs]}

    @classmethod
    def from_json(cls, data: Mapping[str, object], arity: Optional[Union[Arity, str]] = None) -> "QSeries":
        try:
            r_max = data["r_max"]
            raw = data["coeffs"]
        except KeyError as e:
            raise UsageError(f"QSeries JSON is missing {e}")
        if arity is None:
            arity = Arity.UNIVARIATE
            for entry in raw:
                if entry:
                    arity = Arity.BIVARIATE if isinstance(entry[0][0], list) else Arity.UNIVARIATE
                    break
        return cls(r_max, [LaurentPoly.from_json(c, arity) for c in raw], arity)


class BigradedDims(BaseModel):
    """
    Finitely supported table of dimensions indexed by (t-degree, q-degree).

    The q-degree must be positive; the t-degree parity decides whether a
    generator is symmetric (even) or exterior (odd).
    """

    dims: Dict[Tuple[int, int], int] = Field(
        default_factory=dict,
        description="(t-degree, q-degree) -> dimension",
    )

    @field_validator("dims")
    @classmethod
    def validate_dims(cls, v):
        for (t_deg, q_deg), dim in v.items():
            if q_deg < 1:
                raise ValueError(f"q-degree must be positive, got {q_deg}")
            if dim < 0:
                raise ValueError(f"dimension must be nonnegative, got {dim} at {(t_deg, q_deg)}")
        return {k: d for k, d in v.items() if d}

    def total_dimension(self) -> int:
        return sum(self.dims.values())

    def signed_hilbert_series(self, r_max: int) -> QSeries:
        """Hilb_{-t,q}: sum of dim * (-t)^i q^j."""
        terms: Dict[int, Dict[int, int]] = {}
        for (t_deg, q_deg), dim in self.dims.items():
            bucket = terms.setdefault(q_deg, {})
            sign = -1 if t_deg % 2 else 1
            bucket[t_deg] = bucket.get(t_deg, 0) + sign * dim
        return QSeries.from_terms(r_max, {q: LaurentPoly(t) for q, t in terms.items()})

    def generators(self) -> List[Tuple[int, int]]:
        """One (t-degree, q-degree) pair per basis vector, in sorted order."""
        out: List[Tuple[int, int]] = []
        for key in sorted(self.dims):
            out.extend([key] * self.dims[key])
        return out
