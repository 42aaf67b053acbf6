"""Chordality, strong chordality, sun detection, and related certificates."""

from __future__ import annotations

from itertools import combinations

from .errors import SearchBudgetExceeded
from .graphs import Graph, bits, mask_of

_DEFAULT_SUN_BUDGET = 10_000_000


class EliminationOrder:
    """Truthy recognition certificate: a vertex elimination order.

    ``kind`` is "perfect" (every eliminated vertex has a clique among its
    not-yet-eliminated neighbors) or "simple" (closed neighborhoods of the
    remaining closed neighborhood form an inclusion chain at each step).
    """

    __slots__ = ("order", "kind")

    def __init__(self, order: tuple[int, ...], kind: str):
        self.order = tuple(order)
        self.kind = kind

    def __bool__(self) -> bool:
        return True

    def __repr__(self) -> str:
        return f"EliminationOrder(kind={self.kind!r}, order={self.order!r})"

    def to_jsonable(self) -> dict:
        return {"kind": self.kind, "order": list(self.order)}


class HoleWitness:
    """Falsy certificate: an induced chordless cycle on >= 4 vertices."""

    __slots__ = ("cycle",)

    def __init__(self, cycle: tuple[int, ...]):
        self.cycle = tuple(cycle)

    def __bool__(self) -> bool:
        return False

    def __repr__(self) -> str:
        return f"HoleWitness({self.cycle!r})"

    def to_jsonable(self) -> dict:
        return {"cycle": list(self.cycle)}

    @classmethod
    def from_jsonable(cls, data: dict) -> "HoleWitness":
        return cls(tuple(data["cycle"]))


class SunWitness:
    """Falsy certificate: an induced complete k-sun.

    ``hub`` is a clique x_0..x_{k-1}, ``rim`` an independent set
    y_0..y_{k-1}, and the only hub-rim edges are x_i ~ y_i and
    x_i ~ y_{i+1 mod k}.
    """

    __slots__ = ("k", "hub", "rim")

    def __init__(self, k: int, hub: tuple[int, ...], rim: tuple[int, ...]):
        self.k = k
        self.hub = tuple(hub)
        self.rim = tuple(rim)

    def __bool__(self) -> bool:
        return False

    def __repr__(self) -> str:
        return f"SunWitness(k={self.k}, hub={self.hub!r}, rim={self.rim!r})"

    def to_jsonable(self) -> dict:
        return {"k": self.k, "hub": list(self.hub), "rim": list(self.rim)}

    @classmethod
    def from_jsonable(cls, data: dict) -> "SunWitness":
        return cls(int(data["k"]), tuple(data["hub"]), tuple(data["rim"]))


def lex_bfs(g: Graph) -> list[int]:
    """Lexicographic BFS order; ties broken toward the smallest vertex id."""
    n = g.n
    labels: list[list[int]] = [[] for _ in range(n)]
    placed = [False] * n
    order: list[int] = []
    for step in range(n):
        best = -1
        for v in range(n):
            if placed[v]:
                continue
            if best < 0 or labels[v] > labels[best]:
                best = v
        placed[best] = True
        order.append(best)
        stamp = n - step
        for u in bits(g.adj[best]):
            if not placed[u]:
                labels[u].append(stamp)
    return order


def _peo_violation(g: Graph, order: list[int]) -> tuple[int, int, int] | None:
    """Return (v, x, y) with x, y in N(v), x not ~ y, if the reversed order
    is not a perfect elimination order; None if it is."""
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    # Eliminate in reverse LexBFS order: at v, the neighbors earlier in the
    # LexBFS order must form a clique; it suffices to compare against the
    # latest such neighbor.
    for v in order:
        earlier = [u for u in bits(g.adj[v]) if pos[u] < pos[v]]
        if not earlier:
            continue
        x = max(earlier, key=lambda u: pos[u])
        for y in earlier:
            if y != x and not g.has_edge(x, y):
                return (v, x, y)
    return None


def _hole_through(g: Graph, v: int, x: int, y: int) -> tuple[int, ...] | None:
    """Shortest x..y path avoiding N[v] \\ {x, y}, closed into a cycle at v.

    The path is shortest in the induced subgraph, hence chordless, and its
    interior avoids N(v); the resulting cycle is induced and has length >= 4.
    """
    banned = (g.adj[v] | 1 << v) & ~(1 << x) & ~(1 << y)
    prev = {x: -1}
    queue = [x]
    while queue:
        nxt = []
        for a in queue:
            for b in bits(g.adj[a] & ~banned):
                if b not in prev:
                    prev[b] = a
                    if b == y:
                        path = [y]
                        while path[-1] != x:
                            path.append(prev[path[-1]])
                        path.reverse()
                        return (v, *path)
                    nxt.append(b)
        queue = nxt
    return None


def _canonical_cycle(cycle: tuple[int, ...]) -> tuple[int, ...]:
    """Rotate/reflect so the cycle starts at its minimum vertex and moves
    toward the smaller neighbor."""
    k = len(cycle)
    i = cycle.index(min(cycle))
    left = cycle[(i - 1) % k]
    right = cycle[(i + 1) % k]
    out = []
    step = 1 if right < left else -1
    for d in range(k):
        out.append(cycle[(i + step * d) % k])
    return tuple(out)


def is_chordal(g: Graph):
    """Perfect elimination order if chordal, else a hole witness.

    >>> bool(is_chordal(Graph(4, [(0, 1), (1, 2), (2, 3)])))
    True
    >>> bool(is_chordal(Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])))
    False
    """
    order = lex_bfs(g)
    bad = _peo_violation(g, order)
    if bad is None:
        return EliminationOrder(tuple(reversed(order)), "perfect")
    cyc = _hole_through(g, *bad)
    if cyc is None:
        # The LexBFS triple should always extend to a hole; fall back to a
        # full scan, which succeeds on every non-chordal graph.
        for v in range(g.n):
            for x, y in combinations(list(bits(g.adj[v])), 2):
                if g.has_edge(x, y):
                    continue
                cyc = _hole_through(g, v, x, y)
                if cyc is not None:
                    break
            if cyc is not None:
                break
    assert cyc is not None
    return HoleWitness(_canonical_cycle(cyc))


def hole_problems(g: Graph, w: HoleWitness) -> list[str]:
    """Empty list iff ``w.cycle`` is an induced chordless cycle of length >= 4."""
    cyc = w.cycle
    out = []
    if len(cyc) < 4:
        out.append(f"cycle too short: {len(cyc)}")
    if len(set(cyc)) != len(cyc):
        out.append("repeated vertices")
    k = len(cyc)
    for i in range(k):
        for j in range(i + 1, k):
            adjacent = g.has_edge(cyc[i], cyc[j])
            consecutive = (j - i == 1) or (i == 0 and j == k - 1)
            if consecutive and not adjacent:
                out.append(f"missing cycle edge ({cyc[i]}, {cyc[j]})")
            if not consecutive and adjacent:
                out.append(f"chord ({cyc[i]}, {cyc[j]})")
    return out


def maximal_cliques(g: Graph, peo: EliminationOrder | None = None) -> list[frozenset[int]]:
    """Maximal cliques of a chordal graph, sorted by (size, vertex tuple).

    Candidates are the closed right-neighborhoods along a perfect
    elimination order; non-maximal candidates are filtered out.
    """
    if peo is None:
        peo = is_chordal(g)
        if not peo:
            raise ValueError("graph is not chordal")
    pos = [0] * g.n
    for i, v in enumerate(peo.order):
        pos[v] = i
    masks = set()
    for v in range(g.n):
        m = 1 << v
        for u in bits(g.adj[v]):
            if pos[u] > pos[v]:
                m |= 1 << u
        masks.add(m)
    keep = []
    for m in masks:
        if not any(m != o and m & ~o == 0 for o in masks):
            keep.append(m)
    sets = [frozenset(bits(m)) for m in keep]
    return sorted(sets, key=lambda s: (len(s), sorted(s)))


def _closed_adj(g: Graph) -> list[int]:
    return [g.adj[v] | (1 << v) for v in range(g.n)]


def _find_simple_vertex(closed: list[int], alive: int) -> int:
    """Smallest live v whose live closed neighborhoods {N[u]: u in N[v]}
    form an inclusion chain; -1 if none."""
    for v in bits(alive):
        hood = [closed[u] & alive for u in bits(closed[v] & alive)]
        hood.sort(key=lambda m: (m.bit_count(), m))
        ok = True
        for a, b in zip(hood, hood[1:]):
            if a & ~b:
                ok = False
                break
        if ok:
            return v
    return -1


def simple_elimination_order(g: Graph) -> EliminationOrder | None:
    """Greedy simple-vertex elimination; None when it gets stuck.

    Succeeds on exactly the strongly chordal graphs, so this is the cheap
    yes/no test; it produces no witness for the negative answer.
    """
    closed = _closed_adj(g)
    alive = g.vertex_mask()
    order = []
    while alive:
        v = _find_simple_vertex(closed, alive)
        if v < 0:
            return None
        order.append(v)
        alive &= ~(1 << v)
    return EliminationOrder(tuple(order), "simple")


def is_strongly_chordal(g: Graph):
    """Simple elimination order if strongly chordal, else a falsy witness.

    Non-chordal graphs yield their HoleWitness; chordal graphs with no
    simple elimination order yield a SunWitness (one always exists then).
    """
    chordal = is_chordal(g)
    if not chordal:
        return chordal
    order = simple_elimination_order(g)
    if order is None:
        sun = find_sun(g, max_vertices=g.n)
        if sun is None:
            raise AssertionError("no simple vertex but also no sun")
        return sun
    return order


def find_sun(g: Graph, max_vertices: int, budget: int | None = None) -> SunWitness | None:
    """Search induced complete k-suns on 2k <= max_vertices vertices, k >= 3.

    Deterministic: k ascending, candidate vertex subsets in ascending
    lexicographic order. Raises SearchBudgetExceeded after examining
    ``budget`` subsets (default 10**7). Requires a chordal input.
    """
    if not is_chordal(g):
        raise ValueError("graph is not chordal")
    if budget is None:
        budget = _DEFAULT_SUN_BUDGET
    examined = 0
    verts = range(g.n)
    k = 3
    while 2 * k <= min(max_vertices, g.n):
        for subset in combinations(verts, 2 * k):
            examined += 1
            if examined > budget:
                raise SearchBudgetExceeded("sun subset scan", budget)
            w = _sun_on(g, subset, k)
            if w is not None:
                return w
        k += 1
    return None


def _sun_on(g: Graph, subset: tuple[int, ...], k: int) -> SunWitness | None:
    smask = mask_of(subset)
    rim = []
    hub = []
    for v in subset:
        d = (g.adj[v] & smask).bit_count()
        if d == 2:
            rim.append(v)
        else:
            hub.append(v)
    if len(rim) != k or len(hub) != k:
        return None
    hubmask = mask_of(hub)
    if not g.is_clique(hubmask):
        return None
    for a in rim:
        if g.adj[a] & smask & ~hubmask:
            return None  # rim vertex touching rim
    # Each hub vertex must see exactly two rim vertices, and the incidence
    # must close into a single alternating cycle.
    for h in hub:
        if (g.adj[h] & smask & ~hubmask).bit_count() != 2:
            return None
    start = hub[0]
    cycle_hubs = [start]
    cycle_rims = []
    cur = start
    prev_rim = -1
    for _ in range(k):
        options = [r for r in bits(g.adj[cur] & smask & ~hubmask) if r != prev_rim]
        if not options:
            return None
        r = min(options)
        nxts = [h for h in bits(g.adj[r] & hubmask) if h != cur]
        if len(nxts) != 1:
            return None
        cycle_rims.append(r)
        prev_rim = r
        cur = nxts[0]
        if cur == start:
            break
        cycle_hubs.append(cur)
    if len(cycle_hubs) != k or len(cycle_rims) != k:
        return None  # incidence split into shorter cycles
    # Orient: with hubs h_0..h_{k-1} and rims r_i between h_i and h_{i+1},
    # setting y_j = r_{j-1} gives x_i ~ y_i and x_i ~ y_{i+1}.
    ys = [cycle_rims[-1]] + cycle_rims[:-1]
    w = SunWitness(k, tuple(cycle_hubs), tuple(ys))
    assert not sun_problems(g, w)
    return w


def sun_problems(g: Graph, w: SunWitness) -> list[str]:
    """Empty list iff ``w`` is an induced complete k-sun of ``g``."""
    out = []
    k = w.k
    if k < 3:
        out.append("k must be >= 3")
        return out
    if len(w.hub) != k or len(w.rim) != k:
        out.append("hub/rim size mismatch")
        return out
    allv = w.hub + w.rim
    if len(set(allv)) != 2 * k:
        out.append("vertices not distinct")
        return out
    for i in range(k):
        for j in range(i + 1, k):
            if not g.has_edge(w.hub[i], w.hub[j]):
                out.append(f"hub pair ({w.hub[i]}, {w.hub[j]}) not adjacent")
            if g.has_edge(w.rim[i], w.rim[j]):
                out.append(f"rim pair ({w.rim[i]}, {w.rim[j]}) adjacent")
    for i in range(k):
        for j in range(k):
            want = j == i or j == (i + 1) % k
            have = g.has_edge(w.hub[i], w.rim[j])
            if want != have:
                out.append(f"hub {w.hub[i]} / rim {w.rim[j]}: expected {want}")
    return out


def is_ptolemaic(g: Graph) -> bool:
    """Chordal and gem-free (no vertex dominating an induced 4-vertex path)."""
    if not is_chordal(g):
        return False
    for v in range(g.n):
        neigh = list(bits(g.adj[v]))
        for four in combinations(neigh, 4):
            degs = []
            for a in four:
                degs.append(sum(1 for b in four if b != a and g.has_edge(a, b)))
            if sorted(degs) == [1, 1, 2, 2]:
                # 3 edges with the degree profile of a path: an induced P4.
                return False
    return True
