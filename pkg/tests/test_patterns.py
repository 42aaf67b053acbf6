from __future__ import annotations

import json
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from cliquearr import (
    Graph,
    NonLeafPowerCertificate,
    PatternMatch,
    SearchBudgetExceeded,
    SeparationWitness,
    certificate_problems,
    edge_pair_separation,
    find_induced_pattern,
    find_sun,
    is_chordal,
    is_strongly_chordal,
    iter_induced_patterns,
    non_leaf_power_certificate,
    pattern_graph,
    pattern_match_problems,
    pattern_roles,
    separation_problems,
)
from oracles import has_induced_copy


EXPECTED_SIZES = {
    1: (10, 19),
    2: (10, 20),
    3: (10, 20),
    4: (11, 25),
    5: (12, 30),
    6: (12, 30),
    7: (12, 31),
}


def test_fixture_sizes(fixture_graphs):
    for pid, g in fixture_graphs.items():
        assert (g.n, g.m) == EXPECTED_SIZES[pid], pid


def test_roles_index_vertices():
    for pid in range(1, 8):
        roles = pattern_roles(pid)
        assert roles[:2] == ("x0", "x1")
        assert len(roles) == pattern_graph(pid).n
        assert len(set(roles)) == len(roles)


def test_unknown_pattern_rejected():
    with pytest.raises(ValueError):
        pattern_roles(0)
    with pytest.raises(ValueError):
        pattern_graph(8)


def test_fixtures_strongly_chordal_and_sun_free(fixture_graphs):
    for pid, g in fixture_graphs.items():
        assert is_chordal(g), pid
        assert is_strongly_chordal(g), pid
        assert find_sun(g, g.n) is None, pid


def test_seventh_fixture_core_clique(fixture_graphs):
    # the first six role vertices form a clique only in the last fixture
    for pid, g in fixture_graphs.items():
        assert g.is_clique(range(6)) == (pid == 7)


def test_each_fixture_matches_itself(fixture_graphs):
    for pid, g in fixture_graphs.items():
        m = find_induced_pattern(g)
        assert m is not None and m.pattern == pid
        assert pattern_match_problems(g, m) == []
        roles = pattern_roles(pid)
        assert [m.roles[r] for r in roles] == list(range(g.n))


def test_no_fixture_inside_another(fixture_graphs):
    # matcher and networkx agree on every ordered fixture pair
    for pid, host in fixture_graphs.items():
        for qid, pat in fixture_graphs.items():
            ours = find_induced_pattern(host, pattern=qid) is not None
            assert ours == has_induced_copy(host, pat), (pid, qid)
            assert ours == (pid == qid), (pid, qid)


def test_matcher_finds_nothing_small(p3, k3, bull, sun3):
    for g in (p3, k3, bull, sun3):
        assert find_induced_pattern(g) is None


@st.composite
def padded_fixture(draw):
    pid = draw(st.integers(min_value=1, max_value=7))
    base = pattern_graph(pid)
    extra = draw(st.integers(min_value=0, max_value=2))
    g = Graph(base.n + extra, list(base.edges()))
    # each padding vertex becomes simplicial inside one base clique
    for t in range(extra):
        host = draw(st.sampled_from(sorted(
            [tuple(sorted(c)) for c in _cliques_of(base)]
        )))
        size = draw(st.integers(min_value=1, max_value=len(host)))
        for v in host[:size]:
            g.add_edge(base.n + t, v)
    return pid, g


def _cliques_of(g):
    from cliquearr import maximal_cliques

    return maximal_cliques(g)


@given(padded_fixture())
@settings(max_examples=60, deadline=None)
def test_matcher_on_padded_fixtures(args):
    pid, g = args
    m = find_induced_pattern(g, pattern=pid)
    assert m is not None
    assert pattern_match_problems(g, m) == []


def test_iter_yields_distinct_verified_matches(fixture_graphs):
    g = fixture_graphs[1]
    seen = set()
    for m in iter_induced_patterns(g):
        key = (m.pattern, tuple(sorted(m.roles.items())))
        assert key not in seen
        seen.add(key)
        assert pattern_match_problems(g, m) == []
    assert len(seen) >= 1


def test_match_jsonable_round_trip(fixture_graphs):
    m = find_induced_pattern(fixture_graphs[3])
    back = PatternMatch.from_jsonable(json.loads(json.dumps(m.to_jsonable())))
    assert back == m


def test_match_problems_flag_bad_roles(fixture_graphs):
    g = fixture_graphs[1]
    m = find_induced_pattern(g)
    wrong = PatternMatch(1, dict(m.roles, x0=m.roles["x1"]))
    assert pattern_match_problems(g, wrong) != []


# separation witnesses, frozen examples covering all three conditions


def test_separation_condition_one(fixture_graphs):
    g = fixture_graphs[1]
    w = edge_pair_separation(g, (2, 6), (3, 7))
    assert w.condition == 1 and w.vertices == ()
    assert separation_problems(g, (2, 6), (3, 7), w) == []


def test_separation_condition_two(fixture_graphs):
    g = fixture_graphs[7]
    w = edge_pair_separation(g, (0, 2), (1, 8))
    assert w.condition == 2 and w.vertices == (6,)
    assert separation_problems(g, (0, 2), (1, 8), w) == []


def test_separation_condition_three(fixture_graphs):
    g = fixture_graphs[7]
    w = edge_pair_separation(g, (0, 2), (1, 5))
    assert w.condition == 3 and w.vertices == (6, 9)
    assert separation_problems(g, (0, 2), (1, 5), w) == []


def test_separation_none_inside_clique():
    k4 = Graph(4, [(a, b) for a in range(4) for b in range(a + 1, 4)])
    assert edge_pair_separation(k4, (0, 1), (2, 3)) is None


def test_separation_rejects_sharing_edges(k3):
    with pytest.raises(ValueError):
        edge_pair_separation(k3, (0, 1), (1, 2))
    with pytest.raises(ValueError):
        edge_pair_separation(k3, (0, 0), (1, 2))


def test_separation_witness_round_trip(fixture_graphs):
    g = fixture_graphs[7]
    w = edge_pair_separation(g, (0, 2), (1, 5))
    back = SeparationWitness.from_jsonable(json.loads(json.dumps(w.to_jsonable())))
    assert back.condition == w.condition and back.vertices == w.vertices


def test_certificates_on_all_fixtures(fixture_graphs):
    for pid, g in fixture_graphs.items():
        cert = non_leaf_power_certificate(g)
        assert cert is not None, pid
        assert len(cert.witnesses) == 5, pid
        assert certificate_problems(g, cert) == [], pid


def test_certificate_absent_on_small_leaf_powers(p3, k3, bull):
    for g in (p3, k3, bull):
        assert non_leaf_power_certificate(g) is None


def test_certificate_budget(fixture_graphs):
    with pytest.raises(SearchBudgetExceeded):
        non_leaf_power_certificate(fixture_graphs[7], budget=1)


def test_certificate_problems_flag_tampering(fixture_graphs):
    g = fixture_graphs[1]
    cert = non_leaf_power_certificate(g)
    swapped = NonLeafPowerCertificate(
        dict(cert.roles, y00=cert.roles["y01"], y01=cert.roles["y00"]),
        cert.witnesses,
    )
    assert certificate_problems(g, swapped) != []
