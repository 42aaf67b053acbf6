"""Generator determinism, class membership, and the exhaustive enumerator
against the networkx graph atlas."""

from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from cliquearr import (
    GenConfig,
    SearchBudgetExceeded,
    build_arrangement,
    enumerate_graphs,
    find_bad_2_cycle,
    find_induced_pattern,
    is_chordal,
    is_ptolemaic,
    random_chordal,
    random_leaf_power,
    random_ptolemaic,
    random_strongly_chordal,
    serialize_graph,
    simple_elimination_order,
    verify_leaf_root,
)
from cliquearr.gen import _canonical_key


def test_config_validation():
    GenConfig(5, 1)
    with pytest.raises(ValueError):
        GenConfig(-1, 1)
    with pytest.raises(ValueError):
        GenConfig(5, 1, density=1.5)
    with pytest.raises(ValueError):
        GenConfig(5, 1, variant="nope")
    with pytest.raises(ValueError):
        GenConfig(5, 1, variant="planted")
    with pytest.raises(ValueError):
        GenConfig(5, 1, variant="planted", pattern=9)
    with pytest.raises(ValueError):
        GenConfig(5, 1, variant="leaf_power")


def test_determinism():
    for maker, cfg in [
        (random_chordal, GenConfig(10, 77, 0.6)),
        (random_strongly_chordal, GenConfig(10, 77, 0.6)),
    ]:
        assert serialize_graph(maker(cfg)) == serialize_graph(maker(cfg))
    a = random_leaf_power(8, 4, 3)
    b = random_leaf_power(8, 4, 3)
    assert serialize_graph(a[0]) == serialize_graph(b[0])
    assert a[1] == b[1]
    assert serialize_graph(random_ptolemaic(9, 5)) == serialize_graph(
        random_ptolemaic(9, 5)
    )


def test_seed_changes_output():
    outs = {serialize_graph(random_chordal(GenConfig(9, s, 0.5))) for s in range(12)}
    assert len(outs) > 1


def test_chordal_corners():
    assert random_chordal(GenConfig(1, 0)).n == 1
    full = random_chordal(GenConfig(6, 3, density=1.0))
    assert full.m == 15


@given(st.integers(min_value=1, max_value=12), st.integers(min_value=0, max_value=500))
@settings(max_examples=80, deadline=None)
def test_chordal_is_chordal(n, seed):
    assert is_chordal(random_chordal(GenConfig(n, seed, 0.5)))


@given(st.integers(min_value=1, max_value=12), st.integers(min_value=0, max_value=500))
@settings(max_examples=50, deadline=None)
def test_strongly_chordal_passes_recognizer(n, seed):
    g = random_strongly_chordal(GenConfig(n, seed, 0.5))
    assert simple_elimination_order(g) is not None


@given(st.integers(min_value=1, max_value=7), st.integers(min_value=0, max_value=200))
@settings(max_examples=30, deadline=None)
def test_planted_contains_its_pattern(pattern, seed):
    base = 12 if pattern < 4 else 14
    g = random_strongly_chordal(
        GenConfig(base, seed, variant="planted", pattern=pattern)
    )
    assert simple_elimination_order(g) is not None
    assert find_induced_pattern(g, pattern=pattern) is not None


def test_planted_too_small_rejected():
    with pytest.raises(ValueError):
        random_strongly_chordal(GenConfig(5, 0, variant="planted", pattern=7))


def test_rejection_budget_surfaces():
    with pytest.raises(SearchBudgetExceeded):
        random_strongly_chordal(GenConfig(14, 0, variant="planted", pattern=1), budget=0)


@given(st.integers(min_value=1, max_value=10), st.integers(min_value=2, max_value=6),
       st.integers(min_value=0, max_value=500))
@settings(max_examples=60, deadline=None)
def test_leaf_power_verifies_and_is_obstruction_free(n, k, seed):
    g, m = random_leaf_power(n, k, seed)
    assert verify_leaf_root(g, m) is None
    assert simple_elimination_order(g) is not None
    assert find_bad_2_cycle(build_arrangement(g)) is None


def test_leaf_power_argument_errors():
    with pytest.raises(ValueError):
        random_leaf_power(0, 3, 1)
    with pytest.raises(ValueError):
        random_leaf_power(3, 1, 1)


@given(st.integers(min_value=1, max_value=10), st.integers(min_value=0, max_value=300))
@settings(max_examples=40, deadline=None)
def test_ptolemaic_passes_recognizer_and_forest_shape(n, seed):
    g = random_ptolemaic(n, seed)
    assert is_ptolemaic(g)
    # ignoring arc direction, the containment diagram has no cycle: the
    # number of arcs equals nodes minus connected components
    a = build_arrangement(g)
    parent = list(range(len(a)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in a.arcs:
        ri, rj = find(i), find(j)
        assert ri != rj, "undirected cycle in the containment diagram"
        parent[ri] = rj
    components = sum(1 for x in range(len(a)) if find(x) == x)
    assert len(a.arcs) == len(a) - components


def test_class_hierarchy_spot_check():
    for seed in range(8):
        g = random_ptolemaic(9, seed)
        assert is_ptolemaic(g)
        assert simple_elimination_order(g) is not None
        assert is_chordal(g)
        assert find_bad_2_cycle(build_arrangement(g)) is None


# --- exhaustive enumeration, checked against the networkx atlas ---


def test_enumeration_counts_match_atlas():
    from networkx.generators.atlas import graph_atlas_g

    atlas = graph_atlas_g()[1:]  # drop the 0-vertex entry
    for n in range(1, 8):
        want_all = sum(1 for h in atlas if h.number_of_nodes() == n)
        want_connected = sum(
            1
            for h in atlas
            if h.number_of_nodes() == n and nx.is_connected(h)
        )
        assert len(enumerate_graphs(n)) == want_all
        assert len(enumerate_graphs(n, connected=True)) == want_connected


def test_enumeration_frozen_counts():
    assert [len(enumerate_graphs(n)) for n in range(1, 7)] == [1, 2, 4, 11, 34, 156]
    assert [len(enumerate_graphs(n, connected=True)) for n in range(1, 7)] == [
        1, 1, 2, 6, 21, 112,
    ]


def test_enumeration_has_no_isomorphic_pair():
    for n in range(1, 6):
        gs = enumerate_graphs(n)
        keys = {_canonical_key(g) for g in gs}
        assert len(keys) == len(gs)


@given(st.integers(min_value=1, max_value=7), st.randoms(use_true_random=False))
@settings(max_examples=60, deadline=None)
def test_canonical_key_is_relabeling_invariant(n, rnd):
    from cliquearr import Graph

    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = [e for e in pairs if rnd.random() < 0.4]
    g = Graph(n, edges)
    perm = list(range(n))
    rnd.shuffle(perm)
    h = Graph(n, [(perm[u], perm[v]) for u, v in edges])
    assert _canonical_key(g) == _canonical_key(h)
