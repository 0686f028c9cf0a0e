#!/usr/bin/env python3
"""
Graph kernel tests
Rooted acyclic subgraph polynomials and the fiber/normal-slice graphs
"""

import math
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

sys.path.append('.')

from app.models.combinatorics import Partition
from app.models.errors import UsageError
from app.models.graph import WeightedDigraph
from app.models.laurent import LaurentPoly
from app.services.combinat import d_rho, partitions_of
from app.services.exactpoly import p_series
from app.services.graph_kernel import (
    acyc_rooted_genpoly,
    build_F_circ,
    build_F_rho,
    dag_rooted_genpoly,
    f_via_graphs,
    g_via_graphs,
    naive_rooted_genpoly,
)
from app.services.local_data import LocalContext

ONE = LaurentPoly.one()
t = LaurentPoly.t

small_graphs = st.dictionaries(
    st.tuples(st.integers(min_value=0, max_value=3), st.integers(min_value=0, max_value=3)).filter(
        lambda arc: arc[0] != arc[1]
    ),
    st.integers(min_value=0, max_value=2),
    max_size=6,
).map(lambda mult: WeightedDigraph((0, 1, 2, 3), mult, root=0))


def test_graph_validation():
    with pytest.raises(UsageError):
        WeightedDigraph((0, 1), {(1, 1): 1})
    with pytest.raises(UsageError):
        WeightedDigraph((0, 1), {(1, 2): 1})
    with pytest.raises(UsageError):
        WeightedDigraph((0, 1), {(1, 0): -1})
    with pytest.raises(UsageError):
        WeightedDigraph((0, 1), {}, root=5)
    graph = WeightedDigraph((0, 1), {(1, 0): 2, (0, 1): 0})
    assert graph.arc_classes() == [(1, 0)]
    assert list(graph.expanded_arcs()) == [(1, 0), (1, 0)]


def test_F_rho_shape():
    graph = build_F_rho(Partition((2, 1)), 3)
    assert graph.vertices == (0, 1, 2)
    assert graph.multiplicity(1, 0) == 2
    assert graph.multiplicity(2, 0) == 1
    assert graph.multiplicity(1, 2) == graph.multiplicity(2, 1) == 4
    assert graph.multiplicity(0, 1) == 0
    circ = build_F_circ(Partition((2, 1)), 3)
    assert circ.vertices == (1, 2)
    assert circ.total_multiplicity() == 8


def test_two_part_genpoly():
    """F_[1,1] at g = 2 has three spanning trees and two three-arc subgraphs"""
    graph = build_F_rho(Partition((1, 1)), 2)
    expected = t(2) * 3 + t(3) * 2
    for method in ("enumerate", "dp", "naive"):
        assert acyc_rooted_genpoly(graph, method=method) == expected
    assert f_via_graphs(Partition((1, 1)), 2) == ONE + t(1) * 2


def test_unreachable_vertex_gives_zero():
    graph = WeightedDigraph((0, 1, 2), {(1, 0): 1}, root=0)
    assert acyc_rooted_genpoly(graph, method="enumerate").is_zero()
    assert dag_rooted_genpoly(graph, 0).is_zero()
    assert acyc_rooted_genpoly(WeightedDigraph((0,), {}, root=0)) == ONE


def test_method_and_root_errors():
    graph = WeightedDigraph((0, 1), {(1, 0): 1})
    with pytest.raises(UsageError):
        acyc_rooted_genpoly(graph)
    with pytest.raises(UsageError):
        acyc_rooted_genpoly(graph, root=0, method="magic")
    with pytest.raises(UsageError):
        dag_rooted_genpoly(graph, 7)
    heavy = WeightedDigraph((0, 1), {(1, 0): 21})
    with pytest.raises(UsageError):
        naive_rooted_genpoly(heavy, 0)


@settings(max_examples=60, deadline=None)
@given(small_graphs)
def test_methods_agree(graph):
    """Support enumeration, source peeling and brute force count the same subgraphs"""
    naive = acyc_rooted_genpoly(graph, method="naive")
    assert acyc_rooted_genpoly(graph, method="enumerate") == naive
    assert acyc_rooted_genpoly(graph, method="dp") == naive


@pytest.mark.parametrize("g", [2, 3, 4])
def test_normal_slice_two_parts(g):
    assert g_via_graphs(Partition((1, 1)), g) == p_series(g - 1)
    assert g_via_graphs(Partition((3,)), g) == ONE


@pytest.mark.parametrize("g", [2, 3, 4])
@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_normal_slice_root_independence(r, g):
    for rho in partitions_of(r):
        if rho.k < 2:
            continue
        reference = g_via_graphs(rho, g)
        for root in range(2, rho.k + 1):
            assert g_via_graphs(rho, g, root=root) == reference


@pytest.mark.parametrize(
    "parts,g",
    [((1, 1), 3), ((2, 1), 2), ((1, 1, 1), 2), ((2, 1, 1), 2), ((1, 1, 1, 1), 2)],
)
def test_graph_fibers_match_recursion(parts, g):
    rho = Partition(parts)
    expected = LocalContext(g).f_recursive(rho)
    assert f_via_graphs(rho, g) == expected
    assert f_via_graphs(rho, g, method="dp") == expected


def test_three_equal_parts_fiber():
    assert f_via_graphs(Partition((1, 1, 1)), 2) == LaurentPoly.from_coefficients([1, 3, 6, 6])


@pytest.mark.parametrize("parts,g", [((1, 1), 2), ((2, 1), 3), ((1, 1, 1), 2)])
def test_fiber_at_one_counts_spanning_trees(parts, g):
    """f(rho; 1) is the number of rooted spanning trees of F_rho"""
    rho = Partition(parts)
    trees = acyc_rooted_genpoly(build_F_rho(rho, g)).coefficient(rho.k)
    assert f_via_graphs(rho, g).evaluate(1) == trees


@pytest.mark.parametrize("g", [2, 3, 4])
@pytest.mark.parametrize("r", [1, 2, 3, 4, 5])
def test_fiber_degree_and_leading_coefficient(r, g):
    for rho in partitions_of(r):
        fiber = f_via_graphs(rho, g)
        top = d_rho(rho, g) + r - rho.k
        assert fiber.degree() == top
        assert fiber.coefficient(top) == math.factorial(rho.k)
        assert fiber.coefficient(0) == 1


@pytest.mark.parametrize("g", [2, 3, 4])
@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_normal_slice_degree_and_constant_term(r, g):
    for rho in partitions_of(r):
        stalk = g_via_graphs(rho, g)
        assert stalk.coefficient(0) >= 1
        if rho.k >= 2:
            assert stalk.degree() == d_rho(rho, g) - rho.k + 1
