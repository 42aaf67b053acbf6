"""Clique arrangements: every intersection of maximal cliques, ordered by
inclusion, with the covering and embedding operations built on top."""

from __future__ import annotations

from typing import Iterable, Iterator

from .chordal import is_chordal, maximal_cliques, simple_elimination_order
from .errors import InvariantViolation
from .graphs import Graph, VertexSet, bits, induced_subgraph, mask_of


def _node_key(mask: int) -> tuple[int, tuple[int, ...]]:
    return (mask.bit_count(), tuple(bits(mask)))


class CliqueArrangement:
    """Directed acyclic order diagram of all maximal-clique intersections.

    Nodes are the nonempty intersections of nonempty sets of maximal
    cliques, identified by index into ``nodes`` (sorted by cardinality,
    then lexicographically by vertex tuple, so ids are deterministic).
    Arcs are the inclusion covers; a node reaches another along arcs
    exactly when it is a subset. Sinks, the nodes with no outgoing arc,
    are exactly the maximal cliques.

    ``chordal`` and ``strongly_chordal`` describe the underlying graph.
    The structure is still well defined when ``chordal`` is false, but
    the higher-level operations built on top refuse such inputs.

    Immutable after construction; every query is pure.
    """

    __slots__ = (
        "n_vertices",
        "node_masks",
        "nodes",
        "arcs",
        "sink_ids",
        "chordal",
        "strongly_chordal",
        "_id_of",
        "_reach_rows",
        "_sink_mask",
    )

    def __init__(
        self,
        n_vertices: int,
        node_masks: Iterable[int],
        chordal: bool,
        strongly_chordal: bool,
    ):
        self.n_vertices = n_vertices
        self.node_masks = tuple(node_masks)
        self.nodes = tuple(frozenset(bits(m)) for m in self.node_masks)
        self.chordal = chordal
        self.strongly_chordal = strongly_chordal
        self._id_of = {m: i for i, m in enumerate(self.node_masks)}
        if len(self._id_of) != len(self.node_masks):
            raise ValueError("duplicate arrangement nodes")
        if any(m == 0 for m in self.node_masks):
            raise ValueError("empty arrangement node")
        k = len(self.node_masks)
        rows = []
        for mi in self.node_masks:
            row = 0
            for j, mj in enumerate(self.node_masks):
                if mi & ~mj == 0:
                    row |= 1 << j
            rows.append(row)
        self._reach_rows = rows
        self._sink_mask = 0
        for i in range(k):
            if rows[i] == 1 << i:
                self._sink_mask |= 1 << i
        self.sink_ids = tuple(bits(self._sink_mask))
        arcs = []
        for i in range(k):
            above = rows[i] & ~(1 << i)
            for j in bits(above):
                # j covers i unless something sits strictly between.
                if not any(c != j and rows[c] >> j & 1 for c in bits(above)):
                    arcs.append((i, j))
        self.arcs = tuple(arcs)

    def __len__(self) -> int:
        return len(self.node_masks)

    def __repr__(self) -> str:
        return (
            f"CliqueArrangement(nodes={len(self.node_masks)}, "
            f"arcs={len(self.arcs)}, sinks={len(self.sink_ids)})"
        )

    def node(self, i: int) -> VertexSet:
        return self.nodes[i]

    def node_id(self, vertices: Iterable[int] | int) -> int:
        """Index of the node with this vertex set; KeyError if absent."""
        m = vertices if isinstance(vertices, int) else mask_of(vertices)
        try:
            return self._id_of[m]
        except KeyError:
            raise KeyError(f"no arrangement node {sorted(bits(m))}") from None

    def has_node(self, vertices: Iterable[int] | int) -> bool:
        m = vertices if isinstance(vertices, int) else mask_of(vertices)
        return m in self._id_of

    def reaches(self, x: int, y: int) -> bool:
        """True iff a directed arc path runs from ``x`` to ``y``
        (equivalently, node ``x`` is a subset of node ``y``)."""
        return bool(self._reach_rows[x] >> y & 1)

    def is_sink(self, i: int) -> bool:
        return bool(self._sink_mask >> i & 1)

    def sinks_above(self, i: int) -> list[int]:
        """Ids of the sinks reachable from node ``i``, ascending."""
        return list(bits(self._reach_rows[i] & self._sink_mask))

    def out_neighbors(self, i: int) -> list[int]:
        return [j for (s, j) in self.arcs if s == i]

    def in_neighbors(self, j: int) -> list[int]:
        return [i for (i, t) in self.arcs if t == j]

    def to_jsonable(self) -> dict:
        return {
            "n_vertices": self.n_vertices,
            "nodes": [sorted(s) for s in self.nodes],
            "arcs": [list(a) for a in self.arcs],
            "sinks": list(self.sink_ids),
            "chordal": self.chordal,
            "strongly_chordal": self.strongly_chordal,
        }


def _bron_kerbosch_cliques(g: Graph) -> list[VertexSet]:
    """All maximal cliques of an arbitrary graph (pivoting search)."""
    found: list[int] = []

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            found.append(r)
            return
        u = max(bits(p | x), key=lambda v: (g.adj[v] & p).bit_count())
        for v in bits(p & ~g.adj[u]):
            expand(r | 1 << v, p & g.adj[v], x & g.adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    if g.n:
        expand(0, g.vertex_mask(), 0)
    sets = [frozenset(bits(m)) for m in found]
    return sorted(sets, key=lambda s: (len(s), sorted(s)))


def _check_supplied_cliques(g: Graph, cliques: list[VertexSet]) -> None:
    seen = set()
    for c in cliques:
        m = mask_of(c)
        if m == 0:
            raise ValueError("empty clique supplied")
        if m in seen:
            raise ValueError(f"duplicate clique {sorted(c)}")
        seen.add(m)
        if any(not (0 <= v < g.n) for v in c):
            raise ValueError(f"clique {sorted(c)} out of range")
        if not g.is_clique(m):
            raise ValueError(f"{sorted(c)} is not a clique")
        for v in range(g.n):
            if not m >> v & 1 and m & ~g.adj[v] == 0:
                raise ValueError(f"{sorted(c)} is not maximal ({v} extends it)")


def build_arrangement(
    g: Graph, cliques: Iterable[VertexSet] | None = None
) -> CliqueArrangement:
    """Arrangement of ``g``: fixpoint closure of the maximal cliques under
    pairwise intersection, then inclusion-cover reduction.

    ``cliques`` may supply the maximal cliques (each is validated to be one;
    that the list is complete stays the caller's responsibility). When
    omitted they are computed, with a pivot search as the fallback for
    non-chordal inputs.

    >>> arr = build_arrangement(Graph(3, [(0, 1), (1, 2)]))
    >>> sorted(map(sorted, arr.nodes)), len(arr.arcs)
    ([[0, 1], [1], [1, 2]], 2)
    """
    chordal_cert = is_chordal(g)
    chordal = bool(chordal_cert)
    if cliques is None:
        if chordal:
            clique_sets = maximal_cliques(g, chordal_cert)
        else:
            clique_sets = _bron_kerbosch_cliques(g)
    else:
        clique_sets = [frozenset(c) for c in cliques]
        _check_supplied_cliques(g, clique_sets)
    strongly = chordal and simple_elimination_order(g) is not None
    nodes = {mask_of(c) for c in clique_sets}
    work = list(nodes)
    while work:
        a = work.pop()
        for b in list(nodes):
            c = a & b
            if c and c not in nodes:
                nodes.add(c)
                work.append(c)
    ordered = sorted(nodes, key=_node_key)
    arr = CliqueArrangement(g.n, ordered, chordal, strongly)
    assert set(arr.sink_ids) == {arr.node_id(c) for c in clique_sets}
    return arr


def reaches(a: CliqueArrangement, x: int, y: int) -> bool:
    """Module-level alias of :meth:`CliqueArrangement.reaches`."""
    return a.reaches(x, y)


def witness_nonadjacent_vertex(
    g: Graph, c1: Iterable[int], c2: Iterable[int]
) -> int:
    """A vertex of c1 \\ c2 with no neighbor in c2 \\ c1 (smallest such).

    For distinct maximal cliques of a chordal graph one always exists;
    scanning ascending makes the answer deterministic.
    """
    m1 = mask_of(c1)
    m2 = mask_of(c2)
    if m1 == m2:
        raise ValueError("cliques must be distinct")
    only2 = m2 & ~m1
    for x in bits(m1 & ~m2):
        if g.adj[x] & only2 == 0:
            return x
    raise InvariantViolation(
        "separating-vertex",
        f"no vertex of {sorted(bits(m1 & ~m2))} avoids {sorted(bits(only2))}",
    )


def two_clique_cover(a: CliqueArrangement, node_ids: Iterable[int]) -> tuple[int, int]:
    """Two sinks whose intersection equals the intersection of the given
    nodes' vertex sets.

    The sinks (possibly one sink twice) are drawn from those reachable from
    the given nodes, scanning pairs ascending. Guaranteed to exist when the
    underlying graph is strongly chordal; a miss raises InvariantViolation.
    Empty collections and collections with empty intersection are rejected.
    """
    ids = sorted(set(node_ids))
    if not ids:
        raise ValueError("empty node collection")
    if any(not (0 <= i < len(a)) for i in ids):
        raise ValueError("node id out of range")
    target = a.node_masks[ids[0]]
    eligible = 0
    for i in ids:
        target &= a.node_masks[i]
        eligible |= a._reach_rows[i] & a._sink_mask
    if target == 0:
        raise ValueError("collection has empty intersection")
    sinks = list(bits(eligible))
    for pos, s1 in enumerate(sinks):
        for s2 in sinks[pos:]:
            if a.node_masks[s1] & a.node_masks[s2] == target:
                return (s1, s2)
    raise InvariantViolation(
        "two-clique-cover",
        f"no sink pair meets in {sorted(bits(target))}",
    )


def sink_pair_for_intersection(
    a: CliqueArrangement, x: int, y: int, z: int
) -> tuple[int, int]:
    """Sinks c1 above y and c2 above z with node(c1) ∩ node(c2) = node(x).

    Requires three distinct nodes with node(x) = node(y) ∩ node(z); exists
    whenever the underlying graph is strongly chordal. Scans ascending,
    c1 outer.
    """
    for i in (x, y, z):
        if not (0 <= i < len(a)):
            raise ValueError("node id out of range")
    if len({x, y, z}) != 3:
        raise ValueError("nodes must be distinct")
    mx = a.node_masks[x]
    if a.node_masks[y] & a.node_masks[z] != mx:
        raise ValueError("first node must be the intersection of the other two")
    for c1 in a.sinks_above(y):
        for c2 in a.sinks_above(z):
            if a.node_masks[c1] & a.node_masks[c2] == mx:
                return (c1, c2)
    raise InvariantViolation(
        "sink-pair-refinement",
        f"no sink pair above nodes {y}, {z} meets in node {x}",
    )


class EmbeddingMap:
    """Arrangement-to-arrangement image of an induced subgraph.

    ``vertices[i]`` is the host vertex behind subgraph vertex ``i``;
    ``node_map[p]`` is the host node id of subgraph node ``p``. The map is
    injective and preserves reachability in both directions, and every
    image meets the subgraph's vertex set in exactly its source node.
    """

    __slots__ = ("vertices", "node_map", "sub", "host")

    def __init__(
        self,
        vertices: tuple[int, ...],
        node_map: tuple[int, ...],
        sub: CliqueArrangement,
        host: CliqueArrangement,
    ):
        self.vertices = tuple(vertices)
        self.node_map = tuple(node_map)
        self.sub = sub
        self.host = host

    def image(self, p: int) -> int:
        return self.node_map[p]

    def __repr__(self) -> str:
        return f"EmbeddingMap(vertices={self.vertices!r}, node_map={self.node_map!r})"

    def to_jsonable(self) -> dict:
        return {"vertices": list(self.vertices), "node_map": list(self.node_map)}


def _lift_mask(sub_mask: int, vertices: tuple[int, ...]) -> int:
    out = 0
    for i in bits(sub_mask):
        out |= 1 << vertices[i]
    return out


def embed_arrangement(
    g: Graph, sub: Iterable[int], host: CliqueArrangement | None = None
) -> EmbeddingMap:
    """Map the arrangement of G[sub] injectively into the arrangement of g.

    Each sink (a maximal clique of the subgraph) goes to the smallest-id
    host sink containing it; every other node goes to the intersection of
    its reachable sinks' images. Requires a chordal host graph. The result
    is checked before being returned.
    """
    vs = tuple(sorted(set(sub)))
    if host is None:
        host = build_arrangement(g)
    if not host.chordal:
        raise ValueError("host graph must be chordal")
    h = induced_subgraph(g, vs)
    sub_arr = build_arrangement(h)
    node_map: list[int] = [-1] * len(sub_arr)
    for s in sub_arr.sink_ids:
        lifted = _lift_mask(sub_arr.node_masks[s], vs)
        for t in host.sink_ids:
            if lifted & ~host.node_masks[t] == 0:
                node_map[s] = t
                break
        if node_map[s] < 0:
            raise InvariantViolation(
                "embedding-sink-image", f"no host clique contains {sorted(bits(lifted))}"
            )
    for p in range(len(sub_arr)):
        if node_map[p] >= 0:
            continue
        acc = None
        for s in sub_arr.sinks_above(p):
            m = host.node_masks[node_map[s]]
            acc = m if acc is None else acc & m
        assert acc is not None
        if not host.has_node(acc):
            raise InvariantViolation(
                "embedding-node-image",
                f"sink-image intersection {sorted(bits(acc))} is not a host node",
            )
        node_map[p] = host.node_id(acc)
    em = EmbeddingMap(vs, tuple(node_map), sub_arr, host)
    problems = embedding_problems(em)
    if problems:
        raise InvariantViolation("embedding-check", "; ".join(problems))
    return em


def embedding_problems(em: EmbeddingMap) -> list[str]:
    """Empty list iff ``em`` has all the promised embedding properties."""
    out = []
    sub, host = em.sub, em.host
    if len(em.node_map) != len(sub):
        return ["node_map length mismatch"]
    if any(not (0 <= t < len(host)) for t in em.node_map):
        return ["host node id out of range"]
    if len(set(em.node_map)) != len(em.node_map):
        out.append("not injective")
    vmask = mask_of(em.vertices)
    for p in range(len(sub)):
        lifted = _lift_mask(sub.node_masks[p], em.vertices)
        if host.node_masks[em.node_map[p]] & vmask != lifted:
            out.append(f"image of node {p} meets the subgraph beyond its source")
    for p in range(len(sub)):
        for q in range(len(sub)):
            if sub.reaches(p, q) != host.reaches(em.node_map[p], em.node_map[q]):
                out.append(f"reachability disagrees on ({p}, {q})")
    return out


def arrangement_problems(g: Graph, a: CliqueArrangement) -> list[str]:
    """Empty list iff ``a`` is exactly the arrangement of ``g``.

    Recomputes the maximal cliques and re-derives every structural
    invariant from scratch, so it is slow; meant for tests and spot checks.
    """
    out = []
    chordal = bool(is_chordal(g))
    if a.chordal != chordal:
        out.append("chordal flag wrong")
    strongly = chordal and simple_elimination_order(g) is not None
    if a.strongly_chordal != strongly:
        out.append("strongly_chordal flag wrong")
    if a.n_vertices != g.n:
        out.append("vertex count mismatch")
    masks = a.node_masks
    k = len(masks)
    if len(set(masks)) != k:
        out.append("duplicate nodes")
    vm = g.vertex_mask()
    if any(m == 0 or m & ~vm for m in masks):
        out.append("node out of vertex range")
    cliques = maximal_cliques(g) if chordal else _bron_kerbosch_cliques(g)
    want_sinks = {mask_of(c) for c in cliques}
    have_sinks = {masks[i] for i in a.sink_ids}
    if want_sinks != have_sinks:
        out.append("sinks are not the maximal cliques")
    node_set = set(masks)
    for i in range(k):
        for j in range(i + 1, k):
            inter = masks[i] & masks[j]
            if inter and inter not in node_set:
                out.append(f"missing intersection of nodes {i} and {j}")
    for i in range(k):
        acc = None
        for s in a.sink_ids:
            if masks[i] & ~masks[s] == 0:
                acc = masks[s] if acc is None else acc & masks[s]
        if acc != masks[i]:
            out.append(f"node {i} is not the meet of its sinks")
    for i in range(k):
        targets = [j for (s, j) in a.arcs if s == i]
        if targets:
            acc = masks[targets[0]]
            for j in targets[1:]:
                acc &= masks[j]
            if acc != masks[i]:
                out.append(f"node {i} is not the meet of its covers")
    want_arcs = set()
    for i in range(k):
        ups = [j for j in range(k) if j != i and masks[i] & ~masks[j] == 0]
        for j in ups:
            if not any(
                c != j and masks[c] & ~masks[j] == 0 for c in ups
            ):
                want_arcs.add((i, j))
    if set(a.arcs) != want_arcs:
        out.append("arcs are not the inclusion covers")
    for i in range(k):
        for j in range(k):
            if a.reaches(i, j) != (masks[i] & ~masks[j] == 0):
                out.append(f"reach table wrong at ({i}, {j})")
    return out


def arrangement_dot(
    a: CliqueArrangement,
    highlight: Iterable[int] = (),
    doubled: Iterable[int] = (),
) -> str:
    """Graphviz rendering: record nodes, cover arcs, double-framed sinks.

    ``highlight`` node ids get a bold outline, ``doubled`` ids a second
    frame - the conventions for a witness's terminals and starters.
    """
    hi = set(highlight)
    dbl = set(doubled)
    lines = ["digraph arrangement {", "  rankdir=BT;", "  node [shape=record];"]
    for i in range(len(a)):
        label = " | ".join(str(v) for v in sorted(a.nodes[i]))
        attrs = [f'label="{label}"']
        if a.is_sink(i) or i in dbl:
            attrs.append("peripheries=2")
        if i in hi:
            attrs.append("style=bold")
        lines.append(f"  n{i} [{', '.join(attrs)}];")
    for i, j in a.arcs:
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
