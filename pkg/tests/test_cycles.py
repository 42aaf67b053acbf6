"""Bad cycle detection, cross-checked against raw-definition brute force."""

from __future__ import annotations

import json

import pytest
from hypothesis import given, settings, strategies as st

from cliquearr import (
    Bad2CycleWitness,
    BadKCycleWitness,
    Graph,
    SearchBudgetExceeded,
    bad_2_cycle_problems,
    bad_k_cycle_problems,
    build_arrangement,
    find_bad_2_cycle,
    find_bad_k_cycle,
    has_bad_cycle_k_ge_3,
    is_chordal,
    simple_elimination_order,
)
from oracles import brute_bad_2_cycle_exists, brute_bad_k_cycle_exists


@st.composite
def chordal_graphs(draw, max_n=9):
    n = draw(st.integers(min_value=1, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), max_size=len(pairs))) if pairs else []
    g = Graph(n, edges)
    for v in range(n):
        later = [u for u in range(v + 1, n) if g.has_edge(u, v)]
        for i, a in enumerate(later):
            for b in later[i + 1 :]:
                if not g.has_edge(a, b):
                    g.add_edge(a, b)
    assert is_chordal(g)
    return g


def test_three_sun_has_bad_3_cycle(sun3):
    a = build_arrangement(sun3)
    w = find_bad_k_cycle(a, 3)
    assert w is not None and w.k == 3
    assert bad_k_cycle_problems(a, w) == []
    assert has_bad_cycle_k_ge_3(sun3)
    # the raw definition agrees
    assert brute_bad_k_cycle_exists(sun3, 3)


def test_bad_cycle_absent_in_fixtures(fixture_graphs):
    for g in fixture_graphs.values():
        assert not has_bad_cycle_k_ge_3(g)


def test_has_bad_cycle_rejects_non_chordal(c4):
    with pytest.raises(ValueError):
        has_bad_cycle_k_ge_3(c4)


@given(chordal_graphs(max_n=8))
@settings(max_examples=150, deadline=None)
def test_bad_cycle_iff_not_strongly_chordal(g):
    assert has_bad_cycle_k_ge_3(g) == (simple_elimination_order(g) is None)


@given(chordal_graphs(max_n=7))
@settings(max_examples=60, deadline=None)
def test_explicit_search_matches_brute_force_per_k(g):
    a = build_arrangement(g)
    for k in range(3, min(len(a.sink_ids), 4) + 1):
        w = find_bad_k_cycle(a, k)
        assert (w is not None) == brute_bad_k_cycle_exists(g, k)
        if w is not None:
            assert bad_k_cycle_problems(a, w) == []


def test_k_cycle_witness_round_trip(sun3):
    a = build_arrangement(sun3)
    w = find_bad_k_cycle(a, 3)
    data = json.loads(json.dumps(w.to_jsonable(a)))
    back = BadKCycleWitness.from_jsonable(data)
    assert back.k == w.k
    assert back.starters == w.starters
    assert back.terminals == w.terminals


def test_k_cycle_rejects_small_k(sun3):
    a = build_arrangement(sun3)
    with pytest.raises(ValueError):
        find_bad_k_cycle(a, 2)


def test_k_cycle_budget(fixture_arrangements):
    with pytest.raises(SearchBudgetExceeded):
        find_bad_k_cycle(fixture_arrangements[7], 3, budget=2)


def test_extremal_witness_on_first_and_seventh(fixture_arrangements):
    for pid in (1, 7):
        a = fixture_arrangements[pid]
        w = find_bad_2_cycle(a)
        assert w is not None and w.extremal
        assert [sorted(a.nodes[s]) for s in w.starters] == [[0], [1]]
        assert [sorted(a.nodes[t]) for t in w.terminals] == [
            [0, 1, 2, 4],
            [0, 1, 3, 5],
        ]
        assert sorted(a.nodes[w.middle]) == [0, 1]
        assert w.paths == (((0, 3, 11), (0, 4, 12)), ((1, 5, 11), (1, 6, 12)))
        assert bad_2_cycle_problems(a, w) == []


def test_bad_2_cycle_in_every_fixture(fixture_arrangements):
    for pid, a in fixture_arrangements.items():
        w = find_bad_2_cycle(a)
        assert w is not None, pid
        assert bad_2_cycle_problems(a, w) == [], pid


@given(chordal_graphs(max_n=8))
@settings(max_examples=100, deadline=None)
def test_finder_matches_brute_force(g):
    a = build_arrangement(g)
    w = find_bad_2_cycle(a)
    assert (w is not None) == brute_bad_2_cycle_exists(g)
    if w is not None:
        assert bad_2_cycle_problems(a, w) == []


def test_no_bad_2_cycle_in_small_graphs():
    # nothing below the ten-vertex fixtures can carry one
    for g in (
        Graph(1),
        Graph(4, [(0, 1), (1, 2), (2, 3)]),
        Graph(5, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 4)]),
    ):
        assert find_bad_2_cycle(build_arrangement(g)) is None


def test_2_cycle_witness_round_trip(fixture_arrangements):
    a = fixture_arrangements[1]
    w = find_bad_2_cycle(a)
    data = json.loads(json.dumps(w.to_jsonable(a)))
    assert data["S0"] == [0] and data["S1"] == [1]
    assert data["T0"] == [0, 1, 2, 4] and data["T1"] == [0, 1, 3, 5]
    back = Bad2CycleWitness.from_jsonable(data)
    assert back.starters == w.starters
    assert back.terminals == w.terminals
    assert back.paths == w.paths
    assert bad_2_cycle_problems(a, back) == []


def test_problems_flag_corrupted_witness(fixture_arrangements):
    a = fixture_arrangements[1]
    w = find_bad_2_cycle(a)
    twisted = Bad2CycleWitness(
        (w.starters[0], w.starters[0]), w.terminals, w.middle, w.paths
    )
    assert "starters must differ" in bad_2_cycle_problems(a, twisted)
    rerouted = Bad2CycleWitness(
        w.starters,
        w.terminals,
        w.middle,
        (((0, 2, 11), w.paths[0][1]), w.paths[1]),
    )
    assert any(
        "sandwiched" in p for p in bad_2_cycle_problems(a, rerouted)
    )
