"""
Smooth-space inputs: Poincare and Hodge polynomials of M_1(r) from the
Harder-Narasimhan recursion, the rank-2 closed form, the parabolic space,
and loading of user-supplied tables.
"""

import json
import logging
import time
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Dict, Optional, Tuple, Union

from pydantic import ValidationError

from app.models.errors import ComputationError, IngestionError, UsageError
from app.models.laurent import Arity, LaurentPoly, total_degree
from app.models.tables import CacheKind, EntryKind, Provenance, SmoothTable, SmoothTableFile
from app.services.cache_store import CacheStore
from app.services.combinat import check_genus, moduli_dim
from app.services.exactpoly import p_series

logger = logging.getLogger(__name__)

Slope = Optional[Fraction]


class HarderNarasimhanRecursion:
    """
    Stack series of semistable bundles for one genus, truncated at max_degree.

    The series of all bundles of rank n is degree independent; the semistable
    part is what remains after removing every Harder-Narasimhan stratum, each
    contributing a product of lower-rank semistable series shifted by twice
    its codimension. Series are memoized on (rank, degree mod rank) since
    twisting by a line bundle preserves everything.

    With ``hodge=True`` the same recursion runs on signed Hodge series:
    t^2 becomes uv and the odd classes contribute (1 - u^k v^(k-1))^g (1 - u^(k-1) v^k)^g.
    """

    def __init__(self, g: int, max_degree: int, hodge: bool = False):
        check_genus(g)
        self.g = g
        self.max_degree = max_degree
        self.hodge = hodge
        self.arity = Arity.BIVARIATE if hodge else Arity.UNIVARIATE
        self._all_bundles: Dict[int, LaurentPoly] = {}
        self._semistable: Dict[Tuple[int, int], LaurentPoly] = {}
        self._strata: Dict[Tuple[int, int, Slope], LaurentPoly] = {}

    def _weight(self, c: int) -> LaurentPoly:
        """The monomial of cohomological degree 2c: t^(2c) or (uv)^c."""
        if self.hodge:
            return LaurentPoly.monomial((c, c))
        return LaurentPoly.t(2 * c)

    def _mul(self, a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
        return a.mul_truncated(b, self.max_degree)

    def _odd_factor(self, k: int) -> LaurentPoly:
        one = LaurentPoly.one(self.arity)
        if self.hodge:
            left = one - LaurentPoly.monomial((k, k - 1))
            right = one - LaurentPoly.monomial((k - 1, k))
            return (left ** self.g * right ** self.g).truncate(self.max_degree)
        return ((one + LaurentPoly.t(2 * k - 1)) ** (2 * self.g)).truncate(self.max_degree)

    def _geometric(self, k: int) -> LaurentPoly:
        """1 / (1 - w^k) for the weight w of degree 2, truncated."""
        terms = {}
        j = 0
        while 2 * k * j <= self.max_degree:
            exp = (k * j, k * j) if self.hodge else 2 * k * j
            terms[exp] = 1
            j += 1
        return LaurentPoly(terms, self.arity)

    def all_bundles(self, n: int) -> LaurentPoly:
        """Series of the stack of all rank-n bundles of a fixed degree."""
        if n not in self._all_bundles:
            result = LaurentPoly.one(self.arity)
            for k in range(1, n + 1):
                result = self._mul(result, self._odd_factor(k))
            for k in range(1, n):
                inverse = self._geometric(k)
                result = self._mul(self._mul(result, inverse), inverse)
            result = self._mul(result, self._geometric(n))
            self._all_bundles[n] = result
        return self._all_bundles[n]

    def semistable(self, n: int, d: int) -> LaurentPoly:
        key = (n, d % n)
        if key not in self._semistable:
            value = self.all_bundles(n) - self._unstable(n, d, None)
            self._semistable[key] = value
            logger.debug(f"HN semistable series rank {n}, degree {d % n} mod {n}: {len(value.terms)} terms")
        return self._semistable[key]

    def strata(self, n: int, d: int, upper: Slope) -> LaurentPoly:
        """Every HN type of (n, d), one block included, with first slope below upper."""
        shift = d // n
        key = (n, d - n * shift, None if upper is None else upper - shift)
        if key not in self._strata:
            result = self._unstable(n, d, upper)
            if upper is None or Fraction(d, n) < upper:
                result = result + self.semistable(n, d)
            self._strata[key] = result
        return self._strata[key]

    def _unstable(self, n: int, d: int, upper: Slope) -> LaurentPoly:
        """HN types with at least two blocks and first slope below upper."""
        g = self.g
        total = LaurentPoly.zero(self.arity)
        for n1 in range(1, n):
            d1 = (n1 * d) // n + 1
            while True:
                slope = Fraction(d1, n1)
                if upper is not None and slope >= upper:
                    break
                codim = d1 * n - n1 * d + n1 * (n - n1) * (g - 1)
                if 2 * codim > self.max_degree:
                    break
                head = self._mul(self._weight(codim), self.semistable(n1, d1))
                total = total + self._mul(head, self.strata(n - n1, d - d1, slope))
                d1 += 1
        return total

    def coprime_moduli(self, r: int) -> LaurentPoly:
        """
        Polynomial of M_1(r): (1 - w) times the semistable series of degree 1.

        Everything above twice the dimension must cancel.
        """
        top = 2 * moduli_dim(r, self.g)
        if self.max_degree < top + 2:
            raise UsageError(f"truncation {self.max_degree} too small for rank {r}")
        one = LaurentPoly.one(self.arity)
        series = self._mul(one - self._weight(1), self.semistable(r, 1))
        residue = LaurentPoly._wrap(
            {e: c for e, c in series.terms.items() if total_degree(e) > top},
            self.arity,
        )
        if not residue.is_zero():
            logger.error(f"❌ HN series for rank {r}, genus {self.g} is not a polynomial")
            raise ComputationError(
                f"non-polynomial remainder {residue} above degree {top}",
                rank=r,
                check="HN polynomiality",
            )
        return series.truncate(top)


def _truncation(r: int, g: int) -> int:
    return 2 * moduli_dim(r, g) + 2


@lru_cache(maxsize=None)
def hn_poincare_m1(r: int, g: int) -> LaurentPoly:
    """P_t(M_1(r)) from the HN recursion."""
    check_genus(g)
    if not isinstance(r, int) or r < 1:
        raise UsageError(f"rank must be a positive integer, got {r!r}")
    start = time.perf_counter()
    result = HarderNarasimhanRecursion(g, _truncation(r, g)).coprime_moduli(r)
    logger.info(f"P_t(M_1({r})) for genus {g} in {time.perf_counter() - start:.3f}s")
    return result


@lru_cache(maxsize=None)
def hn_hodge_m1(r: int, g: int) -> LaurentPoly:
    """
    Signed Hodge polynomial sum of (-1)^(p+q) h^(p,q) u^p v^q of M_1(r).

    Its diagonal u = v = t must equal P_{-t}(M_1(r)).
    """
    check_genus(g)
    if not isinstance(r, int) or r < 1:
        raise UsageError(f"rank must be a positive integer, got {r!r}")
    start = time.perf_counter()
    result = HarderNarasimhanRecursion(g, _truncation(r, g), hodge=True).coprime_moduli(r)
    if result.specialize_diagonal() != hn_poincare_m1(r, g).flip_sign():
        raise ComputationError(
            "diagonal of the Hodge polynomial differs from the signed Poincare polynomial",
            rank=r,
            check="diagonal specialization",
        )
    logger.info(f"h_uv(M_1({r})) for genus {g} in {time.perf_counter() - start:.3f}s")
    return result


def rank2_oracle(g: int) -> LaurentPoly:
    """
    Closed form for P_t(M_1(2)): the Jacobian factor (1 + t)^(2g) times
    ((1 + t^3)^(2g) - t^(2g) (1 + t)^(2g)) / ((1 - t^2)(1 - t^4)).
    """
    check_genus(g)
    t = LaurentPoly.t
    one = LaurentPoly.one()
    jacobian = (one + t(1)) ** (2 * g)
    numerator = (one + t(3)) ** (2 * g) - t(2 * g) * jacobian
    denominator = (one - t(2)) * (one - t(4))
    return jacobian * numerator.exact_div(denominator)


def parabolic_poincare(r: int, g: int) -> LaurentPoly:
    """P_t of the parabolic space: a P^(r-1)-bundle over M_1(r)."""
    return hn_poincare_m1(r, g) * p_series(r).adams(2)


# -- validation and ingestion -----------------------------------------------


def validate_betti(r: int, poly: LaurentPoly, g: int) -> None:
    """Constant term 1, nonnegative, degree 2 dim, palindromic about dim."""
    dim = moduli_dim(r, g)
    if poly.arity is not Arity.UNIVARIATE:
        raise IngestionError("Betti entry must be univariate", rank=r, check="arity")
    if poly.coefficient(0) != 1:
        raise IngestionError(f"constant term is {poly.coefficient(0)}, expected 1", rank=r, check="constant term")
    if not poly.is_nonnegative():
        raise IngestionError("negative coefficient", rank=r, check="nonnegativity")
    if poly.valuation() != 0 or poly.degree() != 2 * dim:
        raise IngestionError(f"degree {poly.degree()}, expected {2 * dim}", rank=r, check="degree")
    if not poly.is_palindromic(dim):
        raise IngestionError(f"not palindromic about {dim}", rank=r, check="palindromicity")


def validate_hodge(r: int, poly: LaurentPoly, g: int, betti: Optional[LaurentPoly] = None) -> None:
    """Signed Hodge entry: the Betti checks on h^(p,q) plus Hodge symmetry and the diagonal."""
    dim = moduli_dim(r, g)
    if poly.arity is not Arity.BIVARIATE:
        raise IngestionError("Hodge entry must be bivariate", rank=r, check="arity")
    unsigned = poly.flip_sign()
    if unsigned.coefficient((0, 0)) != 1:
        raise IngestionError("h^(0,0) must be 1", rank=r, check="constant term")
    if not unsigned.is_nonnegative():
        raise IngestionError("negative Hodge number after sign removal", rank=r, check="nonnegativity")
    if any(p < 0 or q < 0 for p, q in poly.terms) or poly.degree() != 2 * dim:
        raise IngestionError(f"total degree {poly.degree()}, expected {2 * dim}", rank=r, check="degree")
    if poly.swap_variables() != poly:
        raise IngestionError("h^(p,q) != h^(q,p)", rank=r, check="hodge symmetry")
    if any(poly.coefficient((dim - p, dim - q)) != c for (p, q), c in poly.terms.items()):
        raise IngestionError(f"not symmetric about ({dim}, {dim})", rank=r, check="palindromicity")
    if betti is not None and poly.specialize_diagonal() != betti.flip_sign():
        raise IngestionError("u = v = t does not give P_{-t}", rank=r, check="diagonal")


def load_smooth_table(path: Union[str, Path]) -> SmoothTable:
    """Parse and re-validate a user smooth table."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise IngestionError(f"smooth table {path} does not exist", check="schema")
    except json.JSONDecodeError as e:
        raise IngestionError(f"{path} is not valid JSON: {e}", check="schema")
    try:
        document = SmoothTableFile.model_validate(raw)
    except ValidationError as e:
        raise IngestionError(f"{path}: {e.errors()[0]['msg']}", check="schema")

    g = document.genus
    table = SmoothTable(genus=g)
    seen = set()
    for entry in document.entries:
        if (entry.kind, entry.rank) in seen:
            raise IngestionError(f"duplicate {entry.kind.value} entry", rank=entry.rank, check="schema")
        seen.add((entry.kind, entry.rank))
        arity = Arity.UNIVARIATE if entry.kind is EntryKind.BETTI else Arity.BIVARIATE
        try:
            poly = LaurentPoly.from_json(entry.poly, arity)
        except UsageError as e:
            raise IngestionError(str(e), rank=entry.rank, check="schema")
        table.put(entry.kind, entry.rank, poly, Provenance.USER_FILE)

    for r, poly in table.betti.items():
        validate_betti(r, poly, g)
    for r, poly in table.hodge.items():
        validate_hodge(r, poly, g, table.betti.get(r))
    logger.info(f"✅ Loaded smooth table {path}: genus {g}, {len(document.entries)} entries")
    return table


def build_smooth_table(
    g: int,
    max_rank: int,
    hodge: bool = False,
    user: Optional[SmoothTable] = None,
    cache: Optional[CacheStore] = None,
) -> SmoothTable:
    """Builtin HN values for ranks 1..max_rank, user entries taking precedence."""

    def builtin(kind: CacheKind, r: int, compute) -> LaurentPoly:
        if cache is None:
            return compute(r, g)
        return cache.fetch(g, kind, str(r), lambda: compute(r, g))

    check_genus(g)
    if user is not None and user.genus != g:
        raise UsageError(f"smooth table is for genus {user.genus}, not {g}")
    table = SmoothTable(genus=g)
    for r in range(1, max_rank + 1):
        if user is not None and r in user.betti:
            logger.warning(f"rank {r} Betti entry taken from the user table instead of the HN recursion")
            table.put(EntryKind.BETTI, r, user.betti[r], Provenance.USER_FILE)
        else:
            table.put(EntryKind.BETTI, r, builtin(CacheKind.SMOOTH_BETTI, r, hn_poincare_m1), Provenance.BUILTIN_HN)
        if not hodge:
            continue
        if user is not None and r in user.hodge:
            logger.warning(f"rank {r} Hodge entry taken from the user table instead of the HN recursion")
            table.put(EntryKind.HODGE, r, user.hodge[r], Provenance.USER_FILE)
        else:
            table.put(EntryKind.HODGE, r, builtin(CacheKind.SMOOTH_HODGE, r, hn_hodge_m1), Provenance.BUILTIN_HN)
    return table
