"""
Partitions, multipartitions and set decompositions; composition of a
decomposition with a partition; automorphism counts; stratum dimensions.

Enumeration orders are fixed so that every table derived from them is
byte-stable:
  - partitions: decreasing lexicographic ([2] before [1,1]);
  - multipartitions: by induced partition in the order above, then for each
    distinct rank the multiplicity pattern from finest to coarsest, so the
    abelian stratum of an induced partition comes first;
  - set decompositions: restricted growth strings in lexicographic order,
    blocks sorted by minimum element.
"""

import logging
from collections import Counter
from functools import lru_cache
from itertools import product
from math import factorial, prod
from typing import Dict, List, Sequence, Tuple

from app.models.combinatorics import MultiPartition, Partition, SetDecomposition, Stratum
from app.models.errors import UsageError
from app.models.laurent import LaurentPoly

logger = logging.getLogger(__name__)


def check_genus(g: int) -> None:
    if not isinstance(g, int) or g < 2:
        raise UsageError(f"genus g >= 2 is required, got {g!r}")


@lru_cache(maxsize=None)
def _partitions(r: int, largest: int) -> Tuple[Tuple[int, ...], ...]:
    if r == 0:
        return ((),)
    out: List[Tuple[int, ...]] = []
    for first in range(min(r, largest), 0, -1):
        for rest in _partitions(r - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions_of(r: int) -> List[Partition]:
    """All partitions of r in decreasing lexicographic order."""
    if not isinstance(r, int) or r < 1:
        raise UsageError(f"partitions_of needs r >= 1, got {r!r}")
    return [Partition(p) for p in _partitions(r, r)]


def multipartitions_of(r: int) -> List[MultiPartition]:
    """All multipartitions of r (see the module docstring for the order)."""
    out: List[MultiPartition] = []
    for rho in partitions_of(r):
        counts = Counter(rho.parts)
        ranks = sorted(counts, reverse=True)
        choices = [list(reversed(partitions_of(counts[a]))) for a in ranks]
        for pattern in product(*choices):
            pairs = tuple((a, m) for a, mults in zip(ranks, pattern) for m in mults.parts)
            out.append(MultiPartition(pairs))
    return out


def set_decompositions(k: int) -> List[SetDecomposition]:
    """All Bell(k) decompositions of {1, ..., k}."""
    if not isinstance(k, int) or k < 1:
        raise UsageError(f"set_decompositions needs k >= 1, got {k!r}")
    out: List[SetDecomposition] = []

    def grow(labels: List[int], n_blocks: int) -> None:
        if len(labels) == k:
            blocks: List[List[int]] = [[] for _ in range(n_blocks)]
            for element, label in enumerate(labels, start=1):
                blocks[label].append(element)
            out.append(SetDecomposition(tuple(tuple(b) for b in blocks)))
            return
        for label in range(n_blocks + 1):
            labels.append(label)
            grow(labels, max(n_blocks, label + 1))
            labels.pop()

    grow([0], 1)
    return out


def compose(lam: SetDecomposition, rho: Partition) -> Tuple[Partition, Tuple[Partition, ...]]:
    """
    mu = lam o rho and the restricted partitions rho|lam_j.

    The restricted partitions follow the block order of lam; mu is sorted.
    """
    if lam.k != rho.k:
        raise UsageError(f"decomposition of {{1..{lam.k}}} cannot compose with {rho}")
    restricted = tuple(Partition.of(rho[i - 1] for i in block) for block in lam.blocks)
    mu = Partition.of(part.r for part in restricted)
    return mu, restricted


def aut_order(rho: Partition) -> int:
    """Product of factorials of the part multiplicities."""
    return prod(factorial(m) for m in Counter(rho.parts).values())


def d_rho(rho: Partition, g: int) -> int:
    """d(rho) = sum over i<j of r_i r_j (g - 1)."""
    check_genus(g)
    r = rho.r
    return (r * r - sum(p * p for p in rho.parts)) // 2 * (g - 1)


def stratum_dim(mp: MultiPartition, g: int) -> int:
    """One term rank^2 (g - 1) + 1 per (rank, multiplicity) pair."""
    check_genus(g)
    return sum(a * a * (g - 1) + 1 for a, _ in mp.pairs)


def moduli_dim(r: int, g: int) -> int:
    """Complex dimension (g - 1) r^2 + 1 of M_0(r) and M_1(r)."""
    check_genus(g)
    return (g - 1) * r * r + 1


def strata_table(r: int, g: int) -> List[Stratum]:
    """Every stratum of M_0(r) in multipartition order."""
    check_genus(g)
    return [
        Stratum(
            multipartition=mp,
            partition=mp.induced_partition(),
            abelian=mp.is_abelian(),
            dimension=stratum_dim(mp, g),
        )
        for mp in multipartitions_of(r)
    ]


def monomial_quotient_hilbert(generators: Sequence[Sequence[int]], n_vars: int) -> LaurentPoly:
    """
    Hilbert function of Q[x_1..x_n] / (monomial ideal), each x_i of degree 1.

    The ideal must contain a pure power of every variable so the quotient is
    finite-dimensional; standard monomials are enumerated directly.
    """
    gens = [tuple(g) for g in generators]
    if any(len(g) != n_vars for g in gens):
        raise UsageError("generator exponent vectors must have length n_vars")
    bounds: List[int] = []
    for i in range(n_vars):
        pure = [g[i] for g in gens if all(g[j] == 0 for j in range(n_vars) if j != i) and g[i] > 0]
        if not pure:
            raise UsageError(f"ideal contains no pure power of x_{i + 1}; quotient is infinite")
        bounds.append(min(pure))
    counts: Dict[int, int] = {}
    for exps in product(*(range(b) for b in bounds)):
        if any(all(e >= g_i for e, g_i in zip(exps, g)) for g in gens):
            continue
        degree = sum(exps)
        counts[degree] = counts.get(degree, 0) + 1
    return LaurentPoly(counts)
