#!/usr/bin/env python3
"""
Combinatorics tests
Partitions, multipartitions, set decompositions and stratum data
"""

import sys

import pytest

sys.path.append('.')

from app.models.combinatorics import MultiPartition, Partition, SetDecomposition
from app.models.errors import UsageError
from app.models.laurent import LaurentPoly
from app.services.combinat import (
    aut_order,
    check_genus,
    compose,
    d_rho,
    monomial_quotient_hilbert,
    moduli_dim,
    multipartitions_of,
    partitions_of,
    set_decompositions,
    strata_table,
    stratum_dim,
)
from app.services.exactpoly import p_series


def test_partitions_order():
    assert [p.parts for p in partitions_of(4)] == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert [len(partitions_of(r)) for r in range(1, 8)] == [1, 2, 3, 5, 7, 11, 15]
    with pytest.raises(UsageError):
        partitions_of(0)


def test_multipartitions():
    """Rank 2: the abelian stratum of [1,1] comes before the non-abelian one"""
    assert [m.pairs for m in multipartitions_of(2)] == [((2, 1),), ((1, 1), (1, 1)), ((1, 2),)]
    assert all(m.r == 4 for m in multipartitions_of(4))
    # one multipartition per way to split each part multiplicity
    assert len(multipartitions_of(3)) == 5


def test_multipartition_validation():
    with pytest.raises(UsageError):
        MultiPartition(((1, 1), (2, 1)))
    with pytest.raises(UsageError):
        MultiPartition(((1, 1), (1, 2)))
    assert MultiPartition(((1, 2),)).induced_partition() == Partition((1, 1))


def test_set_decompositions():
    blocks = [d.blocks for d in set_decompositions(3)]
    assert blocks == [
        ((1, 2, 3),),
        ((1, 2), (3,)),
        ((1, 3), (2,)),
        ((1,), (2, 3)),
        ((1,), (2,), (3,)),
    ]
    assert [len(set_decompositions(k)) for k in range(1, 9)] == [1, 2, 5, 15, 52, 203, 877, 4140]
    assert set_decompositions(3)[-1].is_finest()


def test_compose():
    lam = SetDecomposition(((1, 2), (3,)))
    mu, restricted = compose(lam, Partition((2, 1, 1)))
    assert mu == Partition((3, 1))
    assert restricted == (Partition((2, 1)), Partition((1,)))
    with pytest.raises(UsageError):
        compose(lam, Partition((1, 1)))


def test_aut_and_dimensions():
    assert aut_order(Partition((2, 1, 1))) == 2
    assert aut_order(Partition((1, 1, 1))) == 6
    assert d_rho(Partition((1, 1)), 2) == 1
    assert d_rho(Partition((2, 1)), 2) == 2
    assert d_rho(Partition((1, 1, 1)), 3) == 6
    assert d_rho(Partition((4,)), 5) == 0
    assert stratum_dim(MultiPartition(((1, 1), (1, 1))), 2) == 4
    assert stratum_dim(MultiPartition(((2, 1),)), 2) == moduli_dim(2, 2) == 5


def test_genus_check():
    check_genus(2)
    with pytest.raises(UsageError, match="genus g >= 2"):
        check_genus(1)


def test_partition_parsing():
    assert Partition.parse("1,2") == Partition((2, 1))
    assert Partition.parse(" 2, 1 ,1").text() == "2,1,1"
    for bad in ("", "a", "0,1", "-1"):
        with pytest.raises(UsageError):
            Partition.parse(bad)


def test_strata_table():
    strata = strata_table(2, 2)
    assert len(strata) == 3
    assert strata[0].abelian and strata[0].dimension == 5
    assert strata[1].partition == Partition((1, 1)) and strata[1].abelian
    assert not strata[2].abelian and strata[2].dimension == 2


@pytest.mark.parametrize("g", [2, 3, 4, 5])
def test_rank_two_fiber_ring(g):
    """Q[x1, x2]/(x1 x2, x1^g, x2^g) has Hilbert function 2 p(g) - 1"""
    hilb = monomial_quotient_hilbert([(1, 1), (g, 0), (0, g)], 2)
    assert hilb == p_series(g) * 2 - 1
    assert monomial_quotient_hilbert([(g - 1,)], 1) == p_series(g - 1)


def test_monomial_quotient_needs_pure_powers():
    with pytest.raises(UsageError):
        monomial_quotient_hilbert([(1, 1)], 2)
    assert monomial_quotient_hilbert([(1, 0), (0, 1)], 2) == LaurentPoly.one()


@pytest.mark.parametrize("r", [1, 2, 3, 4, 5])
def test_compose_with_extreme_decompositions(r):
    for rho in partitions_of(r):
        decompositions = set_decompositions(rho.k)
        coarsest, finest = decompositions[0], decompositions[-1]
        assert len(coarsest) == 1 and finest.is_finest()
        assert compose(coarsest, rho)[0] == Partition((r,))
        mu, restricted = compose(finest, rho)
        assert mu == rho
        assert restricted == tuple(Partition((part,)) for part in rho)


@pytest.mark.parametrize("r", [1, 2, 3, 4, 5, 6])
def test_induced_partitions_cover_every_partition(r):
    induced = {m.induced_partition() for m in multipartitions_of(r)}
    assert induced == set(partitions_of(r))
