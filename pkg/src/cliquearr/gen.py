"""Seeded graph generators for test campaigns, plus exhaustive
isomorphism-free enumeration at desk scale.

Every generator draws from a private stream keyed by (seed, label) through
blake2b, so equal configurations produce identical graphs on any platform
and under any parallel schedule.
"""

from __future__ import annotations

import hashlib
import itertools
import random

from .chordal import is_chordal, is_ptolemaic, simple_elimination_order
from .errors import SearchBudgetExceeded
from .graphs import Graph, bits
from .leafroot import LeafRootModel, verify_leaf_root
from .patterns import PATTERN_IDS, pattern_graph

_DEFAULT_REJECTION_BUDGET = 200

_VARIANTS = ("chordal", "strongly_chordal", "ptolemaic", "leaf_power", "planted")


def _stream(seed: int, label: str) -> random.Random:
    digest = hashlib.blake2b(f"{seed}:{label}".encode(), digest_size=8).digest()
    return random.Random(int.from_bytes(digest, "big"))


class GenConfig:
    """Generator request: size, seed, density knob, and variant.

    ``k`` applies to the leaf_power variant, ``pattern`` to planted.
    """

    __slots__ = ("n", "seed", "density", "variant", "k", "pattern")

    def __init__(
        self,
        n: int,
        seed: int,
        density: float = 0.5,
        variant: str = "chordal",
        k: int | None = None,
        pattern: int | None = None,
    ):
        if n < 0:
            raise ValueError("n must be non-negative")
        if not 0.0 <= density <= 1.0:
            raise ValueError("density must lie in [0, 1]")
        if variant not in _VARIANTS:
            raise ValueError(f"unknown variant {variant!r}")
        if variant == "planted" and pattern not in PATTERN_IDS:
            raise ValueError("planted variant needs a pattern id 1..7")
        if variant == "leaf_power" and (k is None or k < 2):
            raise ValueError("leaf_power variant needs k >= 2")
        self.n = n
        self.seed = seed
        self.density = density
        self.variant = variant
        self.k = k
        self.pattern = pattern

    def __repr__(self) -> str:
        return (
            f"GenConfig(n={self.n}, seed={self.seed}, density={self.density}, "
            f"variant={self.variant!r}, k={self.k}, pattern={self.pattern})"
        )


def _random_tree(n: int, rng: random.Random) -> list[list[int]]:
    """Adjacency lists of a random tree grown by sequential attachment."""
    adj: list[list[int]] = [[] for _ in range(n)]
    for t in range(1, n):
        p = rng.randrange(t)
        adj[t].append(p)
        adj[p].append(t)
    return adj


def _grow_subtree(
    tree: list[list[int]], start: int, size: int, rng: random.Random
) -> set[int]:
    sub = {start}
    frontier = [start]
    while len(sub) < size and frontier:
        x = frontier.pop(rng.randrange(len(frontier)))
        for y in tree[x]:
            if y not in sub:
                sub.add(y)
                frontier.append(y)
                if len(sub) >= size:
                    break
    return sub


def _subtree_chordal(n: int, density: float, rng: random.Random) -> Graph:
    if n == 0:
        return Graph(0)
    tree = _random_tree(n, rng)
    subs = []
    for _ in range(n):
        # per-vertex target in (density^2/2, density^2]: the square spreads
        # edge counts across the knob's middle (mid-size subtrees of a tree
        # intersect too eagerly for a linear map), the randomized factor
        # avoids the pigeonhole trap where equal sizes above n/2 force a
        # complete graph at every seed, and density 1.0 still pins t above
        # one half so the complete graph stays guaranteed there
        t = density * density * (1.0 - rng.random() / 2.0)
        size = 1 + round(t * (n - 1))
        subs.append(_grow_subtree(tree, rng.randrange(n), size, rng))
    g = Graph(n)
    for u in range(n):
        for v in range(u + 1, n):
            if subs[u] & subs[v]:
                g.add_edge(u, v)
    return g


def random_chordal(cfg: GenConfig) -> Graph:
    """Random chordal graph via the subtree-intersection model: one random
    subtree of a random host tree per vertex, edges on intersection. The
    density knob scales the subtree sizes (singletons at 0.0, whole-tree
    overlap and hence a complete graph at 1.0).
    """
    rng = _stream(cfg.seed, f"chordal:{cfg.n}:{cfg.density!r}")
    g = _subtree_chordal(cfg.n, cfg.density, rng)
    assert is_chordal(g)
    return g


def _pad_simplicial(g: Graph, total: int, rng: random.Random) -> Graph:
    """Grow to ``total`` vertices by repeatedly attaching a fresh vertex to
    a random nonempty subset of a random maximal clique (keeps chordality
    and never touches existing adjacency)."""
    from .chordal import maximal_cliques

    out = Graph(total)
    for u, v in g.edges():
        out.add_edge(u, v)
    for t in range(g.n, total):
        current = Graph(t)
        for u, v in out.edges():
            if u < t and v < t:
                current.add_edge(u, v)
        cliques = maximal_cliques(current)
        clique = sorted(cliques[rng.randrange(len(cliques))])
        count = rng.randint(1, len(clique))
        for v in rng.sample(clique, count):
            out.add_edge(t, v)
    return out


def _random_interval(n: int, density: float, rng: random.Random) -> Graph:
    span = max(2, round(2 * n * (1.05 - density)))
    intervals = []
    for _ in range(n):
        a = rng.randrange(span)
        b = a + rng.randrange(1, n + 1)
        intervals.append((a, b))
    g = Graph(n)
    for u in range(n):
        for v in range(u + 1, n):
            a1, b1 = intervals[u]
            a2, b2 = intervals[v]
            if a1 <= b2 and a2 <= b1:
                g.add_edge(u, v)
    return g


def random_strongly_chordal(cfg: GenConfig, budget: int | None = None) -> Graph:
    """Random strongly chordal graph.

    Plain variants rejection-filter the subtree model, falling back to
    interval graphs (a strongly chordal subclass) when rejection keeps
    missing. With variant="planted", the output contains
    pattern_graph(cfg.pattern) induced on vertices 0..size-1, padded to n
    by simplicial attachment and re-filtered. Raises SearchBudgetExceeded
    when no attempt within ``budget`` (default 200) passes the recognizer.
    """
    if budget is None:
        budget = _DEFAULT_REJECTION_BUDGET
    if cfg.variant == "planted":
        base = pattern_graph(cfg.pattern)
        if cfg.n < base.n:
            raise ValueError(
                f"n={cfg.n} is below the planted fixture size {base.n}"
            )
        for attempt in range(budget):
            rng = _stream(cfg.seed, f"planted:{cfg.pattern}:{cfg.n}:{attempt}")
            g = _pad_simplicial(base, cfg.n, rng)
            if simple_elimination_order(g) is not None:
                return g
        raise SearchBudgetExceeded("planted strongly chordal sampling", budget)
    half = max(1, budget // 2)
    for attempt in range(budget):
        rng = _stream(cfg.seed, f"sc:{cfg.n}:{cfg.density!r}:{attempt}")
        if attempt < half:
            g = _subtree_chordal(cfg.n, cfg.density, rng)
        else:
            g = _random_interval(cfg.n, cfg.density, rng)
        if simple_elimination_order(g) is not None:
            return g
    raise SearchBudgetExceeded("strongly chordal sampling", budget)


def random_leaf_power(n: int, k: int, seed: int) -> tuple[Graph, LeafRootModel]:
    """Random leaf power with its realizing model.

    A random internal skeleton gets one pendant leaf per node, then the
    remaining leaves at random nodes; weights are uniform in 1..max(1,k-1).
    The graph connects vertices at leaf distance <= k, so the returned
    model verifies by construction (asserted).
    """
    if n < 1:
        raise ValueError("need at least one vertex")
    if k < 2:
        raise ValueError("k must be at least 2")
    rng = _stream(seed, f"leafpower:{n}:{k}")
    internal = 1 if n == 1 else rng.randint(1, n - 1)
    skeleton = _random_tree(internal, rng)
    edges: list[tuple[int, int, int]] = []
    wmax = max(1, k - 1)
    for p in range(internal):
        for q in skeleton[p]:
            if q > p:
                edges.append((p, q, rng.randint(1, wmax)))
    hosts = list(range(internal))
    hosts += [rng.randrange(internal) for _ in range(n - internal)]
    leaf_map = {}
    for v in range(n):
        leaf = internal + v
        edges.append((hosts[v], leaf, rng.randint(1, wmax)))
        leaf_map[leaf] = v
    model = LeafRootModel(internal + n, k, edges, leaf_map)
    dist_from: dict[int, dict[int, int]] = {}
    adj = model.adjacency()
    for leaf in leaf_map:
        dist = {leaf: 0}
        stack = [leaf]
        while stack:
            x = stack.pop()
            for y, w in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + w
                    stack.append(y)
        dist_from[leaf] = dist
    g = Graph(n)
    for u in range(n):
        for v in range(u + 1, n):
            if dist_from[internal + u][internal + v] <= k:
                g.add_edge(u, v)
    assert verify_leaf_root(g, model) is None
    return g, model


def _random_block_graph(n: int, rng: random.Random) -> Graph:
    """Cliques glued along a tree at shared cut vertices."""
    g = Graph(n)
    if n <= 1:
        return g
    placed = [0]
    rest = list(range(1, n))
    while rest:
        block = min(len(rest), rng.randint(1, 3))
        members = [rest.pop(0) for _ in range(block)]
        cut = placed[rng.randrange(len(placed))]
        clique = [cut] + members
        for u, v in itertools.combinations(clique, 2):
            g.add_edge(u, v)
        placed.extend(members)
    return g


def random_ptolemaic(n: int, seed: int, budget: int | None = None) -> Graph:
    """Random graph passing the gem-free chordal recognizer, by rejection
    over the subtree model with a block-graph fallback."""
    if budget is None:
        budget = _DEFAULT_REJECTION_BUDGET
    half = max(1, budget // 2)
    for attempt in range(budget):
        rng = _stream(seed, f"ptolemaic:{n}:{attempt}")
        if attempt < half:
            g = _subtree_chordal(n, 0.3, rng)
        else:
            g = _random_block_graph(n, rng)
        if is_ptolemaic(g):
            return g
    raise SearchBudgetExceeded("ptolemaic sampling", budget)


def _canonical_key(g: Graph) -> tuple:
    """Complete isomorphism invariant: the minimum upper-triangle bit
    matrix over permutations compatible with iterated degree refinement."""
    n = g.n
    colors = [0] * n
    for _ in range(max(1, n)):
        sig = [
            (colors[v], tuple(sorted(colors[u] for u in bits(g.adj[v]))))
            for v in range(n)
        ]
        ranking = {s: i for i, s in enumerate(sorted(set(sig)))}
        refined = [ranking[s] for s in sig]
        if refined == colors:
            break
        colors = refined
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(colors[v], []).append(v)
    ordered_groups = [groups[c] for c in sorted(groups)]
    best: tuple | None = None
    for parts in itertools.product(
        *(itertools.permutations(grp) for grp in ordered_groups)
    ):
        perm = [v for part in parts for v in part]
        pos = [0] * n
        for i, v in enumerate(perm):
            pos[v] = i
        key = []
        for i in range(n):
            row = 0
            for j in range(i + 1, n):
                if g.has_edge(perm[i], perm[j]):
                    row |= 1 << (j - i - 1)
            key.append(row)
        tkey = tuple(key)
        if best is None or tkey < best:
            best = tkey
    return (n, best)


def enumerate_graphs(n: int, connected: bool = False) -> list[Graph]:
    """Every graph on ``n`` vertices up to isomorphism, by incremental
    vertex augmentation with canonical-form deduplication. Deterministic
    order (ascending canonical key). Intended for n <= 7.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return []
    level: dict[tuple, Graph] = {_canonical_key(Graph(1)): Graph(1)}
    for m in range(2, n + 1):
        nxt: dict[tuple, Graph] = {}
        for g in level.values():
            for nbmask in range(1 << (m - 1)):
                h = Graph(m)
                for u, v in g.edges():
                    h.add_edge(u, v)
                for v in bits(nbmask):
                    h.add_edge(m - 1, v)
                key = _canonical_key(h)
                if key not in nxt:
                    nxt[key] = h
        level = nxt
    items = sorted(level.items())
    out = [g for _, g in items]
    if connected:
        out = [g for g in out if len(g.connected_components()) == 1]
    return out
