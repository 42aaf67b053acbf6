"""Undirected graphs on vertices 0..n-1, stored as adjacency bitmasks."""

from __future__ import annotations

from typing import Iterable, Iterator

VertexSet = frozenset[int]


class GraphFormatError(ValueError):
    """Malformed graph or model text; carries the offending 1-based line."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Simple undirected graph.

    ``adj[v]`` is the neighborhood of ``v`` as a bitmask. Instances are
    built once (``add_edge`` during construction) and treated as immutable
    afterwards.

    >>> g = Graph(3, [(0, 1), (1, 2)])
    >>> g.has_edge(0, 1), g.has_edge(0, 2), g.m
    (True, False, 2)
    """

    __slots__ = ("n", "adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self.n = n
        self.adj = [0] * n
        for u, v in edges:
            self.add_edge(u, v)

    def add_edge(self, u: int, v: int) -> None:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
        if u == v:
            raise ValueError(f"self-loop at {u}")
        self.adj[u] |= 1 << v
        self.adj[v] |= 1 << u

    @property
    def m(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> Iterator[int]:
        return bits(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            rest = self.adj[u] >> (u + 1) << (u + 1)
            for v in bits(rest):
                yield (u, v)

    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def is_clique(self, vertices: Iterable[int] | int) -> bool:
        m = vertices if isinstance(vertices, int) else mask_of(vertices)
        for v in bits(m):
            if m & ~(self.adj[v] | (1 << v)):
                return False
        return True

    def connected_components(self) -> list[list[int]]:
        seen = 0
        out = []
        for start in range(self.n):
            if seen >> start & 1:
                continue
            comp = 1 << start
            frontier = 1 << start
            while frontier:
                nxt = 0
                for v in bits(frontier):
                    nxt |= self.adj[v]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            out.append(list(bits(comp)))
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):  # pragma: no cover - not used as dict keys in anger
        return hash((self.n, tuple(self.adj)))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def parse_graph(text: str) -> Graph:
    """Parse the plain edge-list format.

    First significant line: ``n m``. Then exactly ``m`` lines ``u v`` with
    0-based endpoints. Lines starting with ``#`` (and blank lines) are
    skipped anywhere. Errors report the 1-based source line.
    """
    header: tuple[int, int] | None = None
    g: Graph | None = None
    expected = 0
    count = 0
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise GraphFormatError(lineno, "expected header 'n m'")
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphFormatError(lineno, "header values must be integers") from None
            if n < 0 or m < 0:
                raise GraphFormatError(lineno, "header values must be non-negative")
            header = (n, m)
            g = Graph(n)
            expected = m
            continue
        if count >= expected:
            raise GraphFormatError(lineno, "unexpected data after last edge")
        if len(parts) != 2:
            raise GraphFormatError(lineno, "expected edge 'u v'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(lineno, "edge endpoints must be integers") from None
        assert g is not None
        if not (0 <= u < g.n and 0 <= v < g.n):
            raise GraphFormatError(lineno, f"vertex index out of range (n={g.n})")
        if u == v:
            raise GraphFormatError(lineno, f"self-loop at {u}")
        if g.has_edge(u, v):
            raise GraphFormatError(lineno, f"duplicate edge ({u}, {v})")
        g.add_edge(u, v)
        count += 1
    if header is None:
        raise GraphFormatError(last_line + 1, "missing header 'n m'")
    if count < expected:
        raise GraphFormatError(last_line + 1, f"expected {expected} edges, found {count}")
    return g  # type: ignore[return-value]


def serialize_graph(g: Graph) -> str:
    """Canonical text form: header plus edges sorted with u < v."""
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph induced on ``vertices``, renumbered by their sorted order.

    New vertex ``i`` corresponds to ``sorted(vertices)[i]``.
    """
    vs = sorted(vertices)
    if not vs:
        raise ValueError("empty vertex collection")
    if len(set(vs)) != len(vs):
        raise ValueError("duplicate vertices")
    if not (0 <= vs[0] and vs[-1] < g.n):
        raise ValueError("vertex out of range")
    index = {v: i for i, v in enumerate(vs)}
    sub = Graph(len(vs))
    for i, v in enumerate(vs):
        for w in bits(g.adj[v]):
            j = index.get(w)
            if j is not None and j > i:
                sub.add_edge(i, j)
    return sub


def neighborhood(g: Graph, v: int, closed: bool = False) -> VertexSet:
    m = g.adj[v] | (1 << v if closed else 0)
    return frozenset(bits(m))
