"""
Local data at a stratum: fiber polynomials f(rho; t), normal-slice
polynomials g(rho; t), tower polynomials and the Hilbert functions of the
local systems L_rho.
"""

import logging
from functools import lru_cache
from itertools import combinations, permutations
from typing import Dict, List, Sequence, Tuple

from app.models.combinatorics import Partition
from app.models.errors import ComputationError, UsageError
from app.models.laurent import LaurentPoly
from app.services import graph_kernel
from app.services.combinat import check_genus, compose, d_rho, set_decompositions
from app.services.exactpoly import p_series

logger = logging.getLogger(__name__)

FIBER_METHODS = ("recursion", "graphs", "identity")
L_METHODS = ("closed", "subtraction")


class LocalContext:
    """
    Memoized local computations for one genus.

    Keys are (quantity, partition); values are written once and never
    changed, so sharing a context between callers is safe.
    """

    def __init__(self, g: int, genpoly_method: str = "auto"):
        check_genus(g)
        self.g = g
        self.genpoly_method = genpoly_method
        self._memo: Dict[Tuple[str, Partition], LaurentPoly] = {}

    def _cached(self, kind: str, rho: Partition, compute) -> LaurentPoly:
        key = (kind, rho)
        value = self._memo.get(key)
        if value is None:
            value = compute()
            self._memo[key] = value
        return value

    # -- fibers -----------------------------------------------------------

    def f_recursive(self, rho: Partition) -> LaurentPoly:
        """Inclusion-exclusion over the nonempty index sets J of the parts."""
        if rho.k == 0:
            return LaurentPoly.one()
        return self._cached("f", rho, lambda: self._f_recursive(rho))

    def _f_recursive(self, rho: Partition) -> LaurentPoly:
        g = self.g
        indices = range(rho.k)
        total = LaurentPoly.zero()
        for size in range(1, rho.k + 1):
            sign = 1 if size % 2 else -1
            for chosen in combinations(indices, size):
                rest = Partition.of(rho[i] for i in indices if i not in chosen)
                term = self.f_recursive(rest)
                for j in chosen:
                    term = term * p_series(rho[j] * rest.r * (g - 1) + rho[j])
                total = total + term * sign
        return total

    def f_via_graphs(self, rho: Partition) -> LaurentPoly:
        return self._cached("f-graphs", rho, lambda: graph_kernel.f_via_graphs(rho, self.g, self.genpoly_method))

    def g_via_graphs(self, rho: Partition) -> LaurentPoly:
        return self._cached("g", rho, lambda: graph_kernel.g_via_graphs(rho, self.g, method=self.genpoly_method))

    def f_via_identity(self, rho: Partition) -> LaurentPoly:
        """Sum over set decompositions lam of t^d(lam o rho) times prod of g(rho|lam_i) p(r_lam_i)."""
        return self._cached("f-identity", rho, lambda: self._f_via_identity(rho))

    def _f_via_identity(self, rho: Partition) -> LaurentPoly:
        total = LaurentPoly.zero()
        for lam in set_decompositions(rho.k):
            mu, restricted = compose(lam, rho)
            term = LaurentPoly.t(d_rho(mu, self.g))
            for part in restricted:
                term = term * self.g_via_graphs(part) * p_series(part.r)
            total = total + term
        return total

    def fiber(self, rho: Partition, method: str = "recursion") -> LaurentPoly:
        if method not in FIBER_METHODS:
            raise UsageError(f"unknown fiber method {method!r}; choose from {', '.join(FIBER_METHODS)}")
        if method == "recursion":
            return self.f_recursive(rho)
        if method == "graphs":
            return self.f_via_graphs(rho)
        return self.f_via_identity(rho)

    def f_cross_identity(self, rho: Partition) -> bool:
        lhs = self.f_recursive(rho)
        rhs = self.f_via_identity(rho)
        if lhs != rhs:
            logger.error(f"❌ fiber identity fails for {rho}, g={self.g}: {lhs} != {rhs}")
            return False
        return True

    # -- local systems ----------------------------------------------------

    def hilb_L_closed(self, rho: Partition) -> LaurentPoly:
        """t^(2 d(rho)) times the product of p(r_i; t^2)."""
        result = LaurentPoly.t(2 * d_rho(rho, self.g))
        for part in rho:
            result = result * p_series(part).adams(2)
        return result

    def hilb_L_subtraction(self, rho: Partition) -> LaurentPoly:
        """
        Peel the contributions of coarser strata off the fiber.

        Hilb(L_rho) = f(rho; t^2) minus, over every decomposition lam other
        than the finest, Hilb(L_{lam o rho}) times the product of g(rho|lam_j; t^2).
        """
        return self._cached("L", rho, lambda: self._hilb_L_subtraction(rho))

    def _hilb_L_subtraction(self, rho: Partition) -> LaurentPoly:
        result = self.f_recursive(rho).adams(2)
        for lam in set_decompositions(rho.k):
            if lam.is_finest():
                continue
            mu, restricted = compose(lam, rho)
            term = self.hilb_L_subtraction(mu)
            for part in restricted:
                term = term * self.g_via_graphs(part).adams(2)
            result = result - term
        if not result.is_nonnegative():
            raise ComputationError(
                f"local system Hilbert function {result} has a negative coefficient",
                rank=str(rho),
                check="L subtraction",
            )
        return result

    def hilb_L(self, rho: Partition, method: str = "closed") -> LaurentPoly:
        if method not in L_METHODS:
            raise UsageError(f"unknown L method {method!r}; choose from {', '.join(L_METHODS)}")
        return self.hilb_L_closed(rho) if method == "closed" else self.hilb_L_subtraction(rho)

    def hilb_L_center(self, rho: Partition) -> int:
        """Palindromy center 2 d(rho) + sum of (r_i - 1)."""
        return 2 * d_rho(rho, self.g) + sum(part - 1 for part in rho)

    # -- towers -----------------------------------------------------------

    def tower_poincare(self, ranks: Sequence[int]) -> LaurentPoly:
        return tower_poincare(ranks, self.g)

    def fiber_tower_bound(self, rho: Partition) -> LaurentPoly:
        """Sum of tower polynomials over every ordering of the indexed parts."""
        total = LaurentPoly.zero()
        for order in permutations(range(rho.k)):
            total = total + self.tower_poincare([rho[i] for i in order])
        return total

    def fiber_within_towers(self, rho: Partition) -> bool:
        """f(rho; t^2) is coefficientwise at most the tower bound."""
        return (self.fiber_tower_bound(rho) - self.f_recursive(rho).adams(2)).is_nonnegative()


def tower_poincare(ranks: Sequence[int], g: int) -> LaurentPoly:
    """
    Product over i of (t^(2 r_i (r_1 + ... + r_(i-1)) (g - 1) + 2 r_i) - 1) / (t^2 - 1).

    Each factor is the Poincare polynomial of one projective-bundle step.
    """
    check_genus(g)
    if any(not isinstance(r, int) or r < 1 for r in ranks):
        raise UsageError(f"tower ranks must be positive integers, got {list(ranks)}")
    denominator = LaurentPoly.t(2) - 1
    result = LaurentPoly.one()
    below = 0
    for r in ranks:
        top = 2 * r * below * (g - 1) + 2 * r
        result = result * (LaurentPoly.t(top) - 1).exact_div(denominator)
        below += r
    return result


@lru_cache(maxsize=None)
def context_for(g: int, genpoly_method: str = "auto") -> LocalContext:
    """Shared context per genus."""
    return LocalContext(g, genpoly_method)


def f_recursive(rho: Partition, g: int) -> LaurentPoly:
    return context_for(g).f_recursive(rho)


def hilb_L_closed(rho: Partition, g: int) -> LaurentPoly:
    return context_for(g).hilb_L_closed(rho)


def hilb_L_subtraction(rho: Partition, g: int) -> LaurentPoly:
    return context_for(g).hilb_L_subtraction(rho)


def f_cross_identity(rho: Partition, g: int) -> bool:
    return context_for(g).f_cross_identity(rho)


def all_fiber_methods(rho: Partition, g: int) -> List[Tuple[str, LaurentPoly]]:
    ctx = context_for(g)
    return [(method, ctx.fiber(rho, method)) for method in FIBER_METHODS]
