"""
Graph model of the fibers and normal slices.

F_rho has vertices 0..k with r_i arcs from i to 0 and r_i r_j (g - 1) arcs
from i to j; F°_rho drops vertex 0. The generating polynomial counts rooted
acyclic spanning subgraphs by number of arcs, parallel arcs chosen as
subsets, so an arc class of multiplicity m contributes (1 + t)^m - 1.
"""

import logging
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Set

from app.models.combinatorics import Partition
from app.models.errors import ComputationError, UsageError
from app.models.graph import Arc, WeightedDigraph
from app.models.laurent import LaurentPoly
from app.services.combinat import check_genus

logger = logging.getLogger(__name__)

# supports are enumerated directly up to this many arc classes, above it the
# source-peeling recursion takes over
ENUMERATION_LIMIT = 12

METHODS = ("auto", "enumerate", "dp", "naive")

_ONE_PLUS_T = LaurentPoly.from_coefficients([1, 1])


@lru_cache(maxsize=None)
def _arc_weight(m: int) -> LaurentPoly:
    """(1 + t)^m - 1."""
    return _ONE_PLUS_T ** m - 1


def build_F_rho(rho: Partition, g: int) -> WeightedDigraph:
    check_genus(g)
    k = rho.k
    mult: Dict[Arc, int] = {}
    for i in range(1, k + 1):
        mult[(i, 0)] = rho[i - 1]
        for j in range(1, k + 1):
            if i != j:
                mult[(i, j)] = rho[i - 1] * rho[j - 1] * (g - 1)
    return WeightedDigraph(tuple(range(k + 1)), mult, root=0)


def build_F_circ(rho: Partition, g: int) -> WeightedDigraph:
    full = build_F_rho(rho, g)
    mult = {(i, j): m for (i, j), m in full.mult.items() if i and j}
    return WeightedDigraph(tuple(range(1, rho.k + 1)), mult)


def _reaches(adjacency: Dict[int, Set[int]], start: int, target: int) -> bool:
    stack = [start]
    seen = {start}
    while stack:
        v = stack.pop()
        if v == target:
            return True
        for w in adjacency[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return False


def _is_rooted(adjacency: Dict[int, Set[int]], root: int) -> bool:
    """Every vertex reaches root (walk the reversed arcs from root)."""
    reverse: Dict[int, Set[int]] = {v: set() for v in adjacency}
    for v, outs in adjacency.items():
        for w in outs:
            reverse[w].add(v)
    stack = [root]
    seen = {root}
    while stack:
        v = stack.pop()
        for w in reverse[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(adjacency)


def _enumerate_supports(G: WeightedDigraph, root: int) -> LaurentPoly:
    arcs = [a for a in G.arc_classes() if a[0] != root]
    adjacency: Dict[int, Set[int]] = {v: set() for v in G.vertices}
    total = LaurentPoly.zero()

    def walk(index: int, weight: LaurentPoly) -> None:
        nonlocal total
        if index == len(arcs):
            if _is_rooted(adjacency, root):
                total = total + weight
            return
        walk(index + 1, weight)
        i, j = arcs[index]
        if _reaches(adjacency, j, i):
            return
        adjacency[i].add(j)
        walk(index + 1, weight * _arc_weight(G.mult[(i, j)]))
        adjacency[i].discard(j)

    walk(0, LaurentPoly.one())
    return total


def dag_rooted_genpoly(G: WeightedDigraph, root: int) -> LaurentPoly:
    """
    Inclusion-exclusion over the set T of sources removed first.

    D(S) = sum over nonempty T in S minus root of (-1)^(|T|+1) D(S - T) times
    the product over x in T of ((1 + t)^(arcs from x into S - T) - 1).
    """
    G.require_vertex(root)
    index = {v: n for n, v in enumerate(G.vertices)}
    full = (1 << len(G.vertices)) - 1
    root_bit = 1 << index[root]
    out_mult = [[0] * len(G.vertices) for _ in G.vertices]
    for (i, j), m in G.mult.items():
        out_mult[index[i]][index[j]] = m

    memo: Dict[int, LaurentPoly] = {root_bit: LaurentPoly.one()}

    def members(mask: int) -> List[int]:
        return [n for n in range(len(G.vertices)) if mask >> n & 1]

    def count(mask: int) -> LaurentPoly:
        if mask in memo:
            return memo[mask]
        free = members(mask & ~root_bit)
        total = LaurentPoly.zero()
        for size in range(1, len(free) + 1):
            sign = 1 if size % 2 else -1
            for chosen in combinations(free, size):
                rest = mask
                for x in chosen:
                    rest &= ~(1 << x)
                inner = count(rest)
                if inner.is_zero():
                    continue
                targets = members(rest)
                term = inner
                for x in chosen:
                    term = term * _arc_weight(sum(out_mult[x][y] for y in targets))
                    if term.is_zero():
                        break
                total = total + term * sign
        memo[mask] = total
        return total

    return count(full)


def naive_rooted_genpoly(G: WeightedDigraph, root: int) -> LaurentPoly:
    """Brute force over every subset of individual arcs; test oracle for small graphs."""
    G.require_vertex(root)
    arcs = list(G.expanded_arcs())
    if len(arcs) > 20:
        raise UsageError(f"naive enumeration refused for {len(arcs)} arcs")
    counts: Dict[int, int] = {}
    for mask in range(1 << len(arcs)):
        adjacency: Dict[int, Set[int]] = {v: set() for v in G.vertices}
        acyclic = True
        for n, (i, j) in enumerate(arcs):
            if mask >> n & 1:
                if j not in adjacency[i] and _reaches(adjacency, j, i):
                    acyclic = False
                    break
                adjacency[i].add(j)
        if acyclic and _is_rooted(adjacency, root):
            size = bin(mask).count("1")
            counts[size] = counts.get(size, 0) + 1
    return LaurentPoly(counts)


def acyc_rooted_genpoly(G: WeightedDigraph, root: Optional[int] = None, method: str = "auto") -> LaurentPoly:
    """
    Sum over rooted acyclic spanning subgraphs H of t^(arcs in H).

    Zero when some vertex cannot reach root along positive arcs.
    """
    if root is None:
        root = G.root
    if root is None:
        raise UsageError("no root given and the graph designates none")
    G.require_vertex(root)
    if method not in METHODS:
        raise UsageError(f"unknown genpoly method {method!r}; choose from {', '.join(METHODS)}")
    if method == "auto":
        method = "enumerate" if len(G.arc_classes()) <= ENUMERATION_LIMIT else "dp"
    if method == "naive":
        return naive_rooted_genpoly(G, root)
    result = _enumerate_supports(G, root) if method == "enumerate" else dag_rooted_genpoly(G, root)
    logger.debug(f"genpoly over {G.n_vertices} vertices rooted at {root} via {method}: {result}")
    return result


def _normalized(G: WeightedDigraph, root: int, min_arcs: int, method: str, label: str) -> LaurentPoly:
    raw = acyc_rooted_genpoly(G, root, method)
    try:
        shifted = raw.exact_div(LaurentPoly.t(min_arcs))
    except ComputationError:
        raise ComputationError(f"genpoly {raw} has a term below t^{min_arcs}", rank=label, check="graph normalization")
    return shifted.taylor_shift(-1)


def f_via_graphs(rho: Partition, g: int, method: str = "auto") -> LaurentPoly:
    """Fiber polynomial f(rho; t) from the rooted acyclic subgraphs of F_rho."""
    G = build_F_rho(rho, g)
    return _normalized(G, 0, rho.k, method, str(rho))


def g_via_graphs(rho: Partition, g: int, root: Optional[int] = None, method: str = "auto") -> LaurentPoly:
    """Normal-slice polynomial g(rho; t) from F°_rho; any root gives the same answer."""
    check_genus(g)
    if rho.k == 1:
        return LaurentPoly.one()
    G = build_F_circ(rho, g)
    if root is None:
        root = 1
    return _normalized(G, root, rho.k - 1, method, str(rho))
