"""Weighted tree models whose leaf distances realize a graph, plus a
bounded exhaustive search for them.

A model is a tree with positive integer edge weights, a threshold k, and a
bijection from some of its degree-at-most-one nodes onto the graph's
vertices. It realizes the graph when two vertices are adjacent exactly if
their leaves lie at weighted distance at most k. Degree-2 chains can always
be contracted into a single weighted edge, so the search space below only
contains trees whose unmapped nodes branch (degree 3 or more), or a single
central node; that restriction loses no realizable graph for any fixed k.
"""

from __future__ import annotations

from collections import deque

from .chordal import simple_elimination_order
from .errors import InvariantViolation, SearchBudgetExceeded
from .graphs import Graph, GraphFormatError, bits

_DEFAULT_SEARCH_BUDGET = 10_000_000


class LeafRootModel:
    """Edge-weighted tree plus the leaf-to-vertex bijection and threshold.

    ``edges`` holds (p, q, weight) with p < q; ``leaf_map`` sends a tree
    node to the graph vertex it represents. Structural soundness (tree
    shape, weights, degree of mapped nodes) is checked by verify_leaf_root,
    not on construction.
    """

    __slots__ = ("t", "k", "edges", "leaf_map")

    def __init__(
        self,
        t: int,
        k: int,
        edges: "tuple[tuple[int, int, int], ...] | list[tuple[int, int, int]]",
        leaf_map: dict[int, int],
    ):
        self.t = t
        self.k = k
        self.edges = tuple(
            (min(p, q), max(p, q), w) for p, q, w in edges
        )
        self.leaf_map = dict(leaf_map)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LeafRootModel):
            return NotImplemented
        return (
            self.t == other.t
            and self.k == other.k
            and sorted(self.edges) == sorted(other.edges)
            and self.leaf_map == other.leaf_map
        )

    def __repr__(self) -> str:
        return (
            f"LeafRootModel(t={self.t}, k={self.k}, "
            f"edges={len(self.edges)}, leaves={len(self.leaf_map)})"
        )

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Per-node list of (neighbor, weight)."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.t)]
        for p, q, w in self.edges:
            adj[p].append((q, w))
            adj[q].append((p, w))
        return adj


class LeafRootViolation:
    """One vertex pair whose tree distance contradicts the graph.

    ``adjacent`` pairs must sit at distance <= k; non-adjacent pairs above
    k. ``distance`` is the offending weighted leaf distance.
    """

    __slots__ = ("u", "v", "distance", "adjacent", "k")

    def __init__(self, u: int, v: int, distance: int, adjacent: bool, k: int):
        self.u = u
        self.v = v
        self.distance = distance
        self.adjacent = adjacent
        self.k = k

    @property
    def required(self) -> str:
        return f"<= {self.k}" if self.adjacent else f"> {self.k}"

    def __repr__(self) -> str:
        kind = "edge" if self.adjacent else "non-edge"
        return (
            f"LeafRootViolation({kind} ({self.u}, {self.v}) at distance "
            f"{self.distance}, required {self.required})"
        )

    def to_jsonable(self) -> dict:
        return {
            "u": self.u,
            "v": self.v,
            "distance": self.distance,
            "adjacent": self.adjacent,
            "required": self.required,
        }


def _model_structure_errors(g: Graph, m: LeafRootModel) -> str | None:
    if m.t < 1:
        return "model must have at least one tree node"
    if m.k < 2:
        return "threshold must be at least 2"
    deg = [0] * m.t
    seen = set()
    for p, q, w in m.edges:
        if not (0 <= p < m.t and 0 <= q < m.t):
            return "edge endpoint out of range"
        if p == q:
            return "self-loop in tree"
        if (p, q) in seen:
            return "duplicate tree edge"
        seen.add((p, q))
        if w < 1:
            return "edge weight below 1"
        deg[p] += 1
        deg[q] += 1
    if len(m.edges) != m.t - 1:
        return "edge count does not match a tree"
    # connectivity: t-1 edges and connected <=> tree (acyclic follows)
    if m.t > 1:
        adj = m.adjacency()
        reached = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y, _ in adj[x]:
                if y not in reached:
                    reached.add(y)
                    stack.append(y)
        if len(reached) != m.t:
            return "tree is not connected"
    if sorted(m.leaf_map.values()) != list(range(g.n)):
        return "leaf map is not a bijection onto the graph vertices"
    for node in m.leaf_map:
        if not (0 <= node < m.t):
            return "mapped node out of range"
        if deg[node] > 1:
            return "mapped node has tree degree above 1"
    return None


def _leaf_distances(m: LeafRootModel) -> dict[int, dict[int, int]]:
    adj = m.adjacency()
    out: dict[int, dict[int, int]] = {}
    for leaf in m.leaf_map:
        dist = {leaf: 0}
        queue = deque([leaf])
        while queue:
            x = queue.popleft()
            for y, w in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + w
                    queue.append(y)
        out[leaf] = dist
    return out


def verify_leaf_root(g: Graph, m: LeafRootModel) -> LeafRootViolation | None:
    """None when the model realizes the graph; otherwise the violation with
    the smallest vertex pair (u, v), u < v. Malformed models raise
    ValueError.
    """
    err = _model_structure_errors(g, m)
    if err is not None:
        raise ValueError(err)
    vertex_leaf = {v: node for node, v in m.leaf_map.items()}
    dists = _leaf_distances(m)
    for u in range(g.n):
        du = dists[vertex_leaf[u]]
        for v in range(u + 1, g.n):
            d = du[vertex_leaf[v]]
            adjacent = g.has_edge(u, v)
            if adjacent != (d <= m.k):
                return LeafRootViolation(u, v, d, adjacent, m.k)
    return None


def expand_model(m: LeafRootModel) -> LeafRootModel:
    """Equivalent model with every weight 1, subdividing heavier edges.

    Original node ids survive unchanged; subdivision nodes take fresh ids
    from ``m.t`` upward, so the leaf map carries over as is.
    """
    edges: list[tuple[int, int, int]] = []
    fresh = m.t
    for p, q, w in m.edges:
        if w == 1:
            edges.append((p, q, 1))
            continue
        prev = p
        for _ in range(w - 1):
            edges.append((prev, fresh, 1))
            prev = fresh
            fresh += 1
        edges.append((prev, q, 1))
    return LeafRootModel(fresh, m.k, edges, m.leaf_map)


def parse_model(text: str) -> LeafRootModel:
    """Parse the model format: header ``t k``, then edge lines ``p q w``,
    then mapping lines ``node vertex``. Blank lines and ``#`` comments are
    skipped anywhere; a 2-field line after the header starts the mapping.
    """
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int, int]] = []
    leaf_map: dict[int, int] = {}
    mapping_started = False
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            values = [int(p) for p in parts]
        except ValueError:
            raise GraphFormatError(lineno, "fields must be integers") from None
        if header is None:
            if len(values) != 2:
                raise GraphFormatError(lineno, "expected header 't k'")
            header = (values[0], values[1])
            continue
        if len(values) == 3 and not mapping_started:
            edges.append((values[0], values[1], values[2]))
        elif len(values) == 2:
            mapping_started = True
            node, vertex = values
            if node in leaf_map:
                raise GraphFormatError(lineno, f"node {node} mapped twice")
            leaf_map[node] = vertex
        else:
            raise GraphFormatError(
                lineno, "expected edge 'p q w' or mapping 'node vertex'"
            )
    if header is None:
        raise GraphFormatError(last_line + 1, "missing header 't k'")
    return LeafRootModel(header[0], header[1], edges, leaf_map)


def serialize_model(m: LeafRootModel) -> str:
    lines = [f"{m.t} {m.k}"]
    lines.extend(f"{p} {q} {w}" for p, q, w in sorted(m.edges))
    lines.extend(f"{node} {m.leaf_map[node]}" for node in sorted(m.leaf_map))
    return "\n".join(lines) + "\n"


def model_dot(m: LeafRootModel) -> str:
    """Undirected DOT drawing; mapped nodes appear as boxes with their
    graph vertex, edges carry their weight."""
    lines = ["graph leafroot {"]
    for node in range(m.t):
        if node in m.leaf_map:
            lines.append(
                f'  n{node} [shape=box, label="{node} = v{m.leaf_map[node]}"];'
            )
        else:
            lines.append(f'  n{node} [shape=circle, label="{node}"];')
    for p, q, w in sorted(m.edges):
        lines.append(f'  n{p} -- n{q} [label="{w}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


class LeafRootSearch:
    """Search outcome: ``status`` is one of found, exhausted, refused,
    budget_exceeded; ``model`` is set only when found. Truthy iff found.
    An exhausted search is not a non-membership proof - it only covers the
    given bounds.
    """

    __slots__ = ("status", "model")

    def __init__(self, status: str, model: LeafRootModel | None = None):
        self.status = status
        self.model = model

    def __bool__(self) -> bool:
        return self.status == "found"

    def __repr__(self) -> str:
        if self.model is not None:
            return f"LeafRootSearch({self.status!r}, k={self.model.k})"
        return f"LeafRootSearch({self.status!r})"


def _skeletons(size: int) -> list[list[tuple[int, int]]]:
    """All unlabeled trees on ``size`` nodes, one representative each, as
    edge lists over 0..size-1, in a deterministic order."""
    if size == 1:
        return [[]]

    def canon(edges: list[tuple[int, int]]) -> str:
        adj: list[list[int]] = [[] for _ in range(size)]
        for p, q in edges:
            adj[p].append(q)
            adj[q].append(p)

        def rooted(x: int, parent: int) -> str:
            subs = sorted(rooted(y, x) for y in adj[x] if y != parent)
            return "(" + "".join(subs) + ")"

        # centroid(s): remove leaves layer by layer
        deg = [len(adj[x]) for x in range(size)]
        layer = [x for x in range(size) if deg[x] <= 1]
        remaining = size
        while remaining > 2:
            nxt = []
            for x in layer:
                deg[x] = 0
                for y in adj[x]:
                    if deg[y] > 1:
                        deg[y] -= 1
                        if deg[y] == 1:
                            nxt.append(y)
            remaining -= len(layer)
            layer = nxt
        return min(rooted(c, -1) for c in layer)

    out: list[list[tuple[int, int]]] = []
    seen: set[str] = set()
    # parent sequences cover every labeled tree shape up to isomorphism
    def rec(parents: list[int]) -> None:
        node = len(parents) + 1
        if node == size:
            edges = [(p, c + 1) for c, p in enumerate(parents)]
            key = canon(edges)
            if key not in seen:
                seen.add(key)
                out.append(edges)
            return
        for p in range(node):
            parents.append(p)
            rec(parents)
            parents.pop()

    rec([])
    return out


def _labeled_canon(
    size: int, edges: list[tuple[int, int]], labels: dict[int, int]
) -> str:
    """Canonical string of a tree whose mapped nodes carry labels."""
    adj: list[list[int]] = [[] for _ in range(size)]
    for p, q in edges:
        adj[p].append(q)
        adj[q].append(p)

    def rooted(x: int, parent: int) -> str:
        head = f"L{labels[x]}" if x in labels else ""
        subs = sorted(rooted(y, x) for y in adj[x] if y != parent)
        return "(" + head + "".join(subs) + ")"

    deg = [len(adj[x]) for x in range(size)]
    layer = [x for x in range(size) if deg[x] <= 1]
    remaining = size
    while remaining > 2:
        nxt = []
        for x in layer:
            deg[x] = 0
            for y in adj[x]:
                if deg[y] > 1:
                    deg[y] -= 1
                    if deg[y] == 1:
                        nxt.append(y)
        remaining -= len(layer)
        layer = nxt
    return min(rooted(c, -1) for c in layer)


class _Budget:
    __slots__ = ("left",)

    def __init__(self, limit: int):
        self.left = limit

    def spend(self, amount: int = 1) -> None:
        self.left -= amount
        if self.left < 0:
            raise SearchBudgetExceeded("leaf root search", 0)


def _search_component(
    g: Graph,
    comp: list[int],
    k: int,
    max_internal: int,
    max_weight: int,
    budget: _Budget,
) -> tuple[int, list[tuple[int, int, int]], dict[int, int]] | None:
    """A component tree (size, weighted edges, leaf map) at threshold k, or
    None. Single-vertex components become a bare mapped node; two-vertex
    ones a mapped-internal-mapped path."""
    if len(comp) == 1:
        return (1, [], {0: comp[0]})
    if len(comp) == 2:
        return (3, [(0, 2, 1), (1, 2, 1)], {0: comp[0], 1: comp[1]})
    leaves = sorted(comp)
    nleaf = len(leaves)
    cap = min(k, max_weight)
    seen_shapes: set[str] = set()
    for internal in range(1, min(max_internal, nleaf - 2 if nleaf > 3 else 1) + 1):
        for skeleton in _skeletons(internal):
            skel_deg = [0] * internal
            for p, q in skeleton:
                skel_deg[p] += 1
                skel_deg[q] += 1
            # attach each leaf (in vertex order) to an internal node
            attach = [0] * nleaf

            def try_weights(assign: list[int]) -> list[tuple[int, int, int]] | None:
                size = internal + nleaf
                edges = list(skeleton)
                labels: dict[int, int] = {}
                for li, node in enumerate(assign):
                    edges.append((node, internal + li))
                    labels[internal + li] = leaves[li]
                shape = _labeled_canon(size, edges, labels)
                if shape in seen_shapes:
                    return None
                seen_shapes.add(shape)
                budget.spend()
                # root at internal 0; orient and order children leaf-first
                adj: list[list[int]] = [[] for _ in range(size)]
                for p, q in edges:
                    adj[p].append(q)
                    adj[q].append(p)
                for x in range(size):
                    adj[x].sort(key=lambda y: (y < internal, y))
                parent = [-1] * size
                order: list[int] = []
                stack = [0]
                seen_nodes = {0}
                while stack:
                    x = stack.pop()
                    order.append(x)
                    for y in reversed(adj[x]):
                        if y not in seen_nodes:
                            seen_nodes.add(y)
                            parent[y] = x
                            stack.append(y)
                # ancestors for lca lookups
                anc: list[list[int]] = [[] for _ in range(size)]
                for x in order:
                    anc[x] = (anc[parent[x]] + [parent[x]]) if parent[x] >= 0 else []
                anc_set = [set(a) | {x} for x, a in zip(range(size), anc)]
                lca: dict[tuple[int, int], int] = {}
                for i1 in range(nleaf):
                    for i2 in range(i1):
                        x, y = internal + i1, internal + i2
                        common = x if x in anc_set[y] else -1
                        for a in reversed(anc[x]):
                            if a in anc_set[y]:
                                common = a
                                break
                        lca[(x, y)] = common
                depth = [0] * size
                placed: list[int] = []
                edge_seq = [x for x in order if parent[x] >= 0]

                def weights_dfs(pos: int) -> bool:
                    if pos == len(edge_seq):
                        return True
                    x = edge_seq[pos]
                    for w in range(1, cap + 1):
                        budget.spend()
                        depth[x] = depth[parent[x]] + w
                        if x >= internal:
                            ok = True
                            for y in placed:
                                key = (x, y) if (x, y) in lca else (y, x)
                                d = depth[x] + depth[y] - 2 * depth[lca[key]]
                                u1 = labels[x]
                                u2 = labels[y]
                                if g.has_edge(u1, u2) != (d <= k):
                                    ok = False
                                    break
                            if not ok:
                                continue
                            placed.append(x)
                            if weights_dfs(pos + 1):
                                return True
                            placed.pop()
                        else:
                            if weights_dfs(pos + 1):
                                return True
                    return False

                if not weights_dfs(0):
                    return None
                weighted = []
                for x in edge_seq:
                    weighted.append(
                        (parent[x], x, depth[x] - depth[parent[x]])
                    )
                return weighted

            def assign_leaves(li: int) -> list[tuple[int, int, int]] | None:
                if li == nleaf:
                    if internal > 1:
                        for node in range(internal):
                            if skel_deg[node] + attach.count(node) < 3:
                                return None
                    return try_weights(attach[:nleaf])
                remaining = nleaf - li
                if internal > 1:
                    deficit = 0
                    for node in range(internal):
                        need = 3 - skel_deg[node] - attach[:li].count(node)
                        if need > 0:
                            deficit += need
                    if deficit > remaining:
                        return None
                for node in range(internal):
                    attach[li] = node
                    got = assign_leaves(li + 1)
                    if got is not None:
                        return got
                return None

            found = assign_leaves(0)
            if found is not None:
                size = internal + nleaf
                leaf_map = {internal + li: leaves[li] for li in range(nleaf)}
                return (size, found, leaf_map)
    return None


def search_leaf_root(
    g: Graph,
    max_internal: int | None = None,
    max_weight: int | None = None,
    max_k: int | None = None,
    budget: int | None = None,
) -> LeafRootSearch:
    """Bounded exhaustive search for a realizing model.

    Thresholds k = 2..max_k are tried in order; per threshold, each
    connected component gets an independent tree search over branching
    skeletons (at most ``max_internal`` unmapped nodes per component),
    labeled leaf attachments, and edge weights up to min(k, max_weight).
    Components join through a fresh hub node with weight-k edges, which
    keeps all cross-component distances above k; the hub does not count
    against ``max_internal``. Graphs that fail strong-chordality are
    refused before any enumeration, and the final model is re-verified
    (InvariantViolation on mismatch). ``exhausted`` means only that the
    bounds are used up.

    Defaults: max_internal = n-2 (at least 1), max_k = 2n, max_weight =
    max_k, budget 10**7 elementary steps.
    """
    if g.n == 0:
        raise ValueError("graph has no vertices")
    if max_internal is None:
        max_internal = max(1, g.n - 2)
    if max_k is None:
        max_k = 2 * g.n
    if max_weight is None:
        max_weight = max_k
    if budget is None:
        budget = _DEFAULT_SEARCH_BUDGET
    if max_internal < 1 or max_weight < 1 or max_k < 2:
        raise ValueError("bounds must allow at least one tree")
    if simple_elimination_order(g) is None:
        return LeafRootSearch("refused")
    comps = [sorted(c) for c in g.connected_components()]
    comps.sort()
    tracker = _Budget(budget)
    try:
        for k in range(2, max_k + 1):
            parts = []
            for comp in comps:
                got = _search_component(g, comp, k, max_internal, max_weight, tracker)
                if got is None:
                    break
                parts.append(got)
            if len(parts) != len(comps):
                continue
            model = _assemble(parts, k)
            violation = verify_leaf_root(g, model)
            if violation is not None:
                raise InvariantViolation("leaf-root-verification", repr(violation))
            return LeafRootSearch("found", model)
    except SearchBudgetExceeded:
        return LeafRootSearch("budget_exceeded")
    return LeafRootSearch("exhausted")


def _assemble(
    parts: list[tuple[int, list[tuple[int, int, int]], dict[int, int]]], k: int
) -> LeafRootModel:
    edges: list[tuple[int, int, int]] = []
    leaf_map: dict[int, int] = {}
    offsets = []
    total = 0
    for size, part_edges, part_map in parts:
        offsets.append(total)
        for p, q, w in part_edges:
            edges.append((p + total, q + total, w))
        for node, vertex in part_map.items():
            leaf_map[node + total] = vertex
        total += size
    if len(parts) > 1:
        hub = total
        total += 1
        for (size, part_edges, part_map), off in zip(parts, offsets):
            if size == 1:
                edges.append((off, hub, k))
            else:
                # attach at an unmapped node: node ids below the leaf block
                anchor = off + min(
                    x for x in range(size) if x + off not in leaf_map
                )
                edges.append((anchor, hub, k))
    return LeafRootModel(total, k, edges, leaf_map)
