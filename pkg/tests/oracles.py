"""Brute-force reference implementations the real modules are tested against.

Everything here recomputes results from first principles over frozensets and
networkx primitives, deliberately sharing no code with the package beyond
the Graph container itself. Slow on purpose; only run at desk scale.
"""

from __future__ import annotations

import itertools
from collections import deque

import networkx as nx

from cliquearr import Graph


def nxgraph(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def closure_nodes(g: Graph) -> list[frozenset[int]]:
    """All nonempty intersections of maximal-clique subsets, via the
    pairwise fixpoint, sorted by (size, sorted vertices)."""
    nodes = {frozenset(c) for c in nx.find_cliques(nxgraph(g))}
    while True:
        fresh = {
            a & b for a, b in itertools.combinations(nodes, 2) if a & b
        } - nodes
        if not fresh:
            break
        nodes |= fresh
    return sorted(nodes, key=lambda s: (len(s), sorted(s)))


def cover_arcs(order: list[frozenset[int]]) -> set[tuple[int, int]]:
    arcs = set()
    for i, x in enumerate(order):
        ups = [j for j, y in enumerate(order) if x < y]
        for j in ups:
            if not any(order[c] < order[j] for c in ups if c != j):
                arcs.add((i, j))
    return arcs


def _path_avoiding(
    adj: dict[int, list[int]], banned: set[int], src: int, dst: int
) -> bool:
    if src in banned or dst in banned:
        return False
    seen = {src}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        if x == dst:
            return True
        for y in adj[x]:
            if y not in seen and y not in banned:
                seen.add(y)
                queue.append(y)
    return False


def brute_bad_2_cycle_exists(g: Graph) -> bool:
    """Directly quantify over all node 4-tuples of the closure order."""
    order = closure_nodes(g)
    index = {s: i for i, s in enumerate(order)}
    adj: dict[int, list[int]] = {i: [] for i in range(len(order))}
    for i, j in cover_arcs(order):
        adj[i].append(j)
    for t0, t1 in itertools.combinations(range(len(order)), 2):
        middle = order[t0] & order[t1]
        if not middle:
            continue
        for s0, s1 in itertools.combinations(range(len(order)), 2):
            union = order[s0] | order[s1]
            if not union <= middle:
                continue
            banned = {
                index[x] for x in order if union <= x and x <= middle
            }
            if all(
                _path_avoiding(adj, banned, s, t)
                for s in (s0, s1)
                for t in (t0, t1)
            ):
                return True
    return False


def brute_bad_k_cycle_exists(g: Graph, k: int) -> bool:
    """Ordered terminal k-tuples checked against the raw definition:
    a starter for slot i lies inside terminals i-1 and i only."""
    order = closure_nodes(g)
    m = len(order)
    for terminals in itertools.permutations(range(m), k):
        starters = []
        for i in range(k):
            want = order[terminals[i]] & order[terminals[i - 1]]
            others = [
                order[terminals[j]] for j in range(k) if j not in (i, (i - 1) % k)
            ]
            found = None
            for s in order:
                if s <= want and not any(s <= o for o in others):
                    found = s
                    break
            if found is None:
                break
            starters.append(found)
        if len(starters) == k:
            return True
    return False


def has_induced_copy(g: Graph, pattern: Graph) -> bool:
    gm = nx.algorithms.isomorphism.GraphMatcher(nxgraph(g), nxgraph(pattern))
    return gm.subgraph_is_isomorphic()
