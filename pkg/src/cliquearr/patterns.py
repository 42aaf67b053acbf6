"""The seven fixture graphs, induced-copy matching, and leaf-root obstruction
certificates built from pairwise path-separation conditions."""

from __future__ import annotations

from .errors import SearchBudgetExceeded
from .graphs import Graph, bits

_DEFAULT_CERT_BUDGET = 10_000_000

# Every fixture shares a 10-vertex core: two 4-cliques {x0,x1,y00,y10} and
# {x0,x1,y01,y11} glued along the edge x0-x1, plus a pendant triangle
# z_ij - x_i - y_ij on each y. Fixtures 2..7 add cross chords between the
# two cliques' y-vertices; fixtures 4..7 add one or two extra apex vertices
# z_i adjacent to exactly {x0, x1, y0i, y1i}.
_BASE_ROLES = ("x0", "x1", "y00", "y01", "y10", "y11", "z00", "z01", "z10", "z11")

_EXTRA_ROLES: dict[int, tuple[str, ...]] = {
    1: (),
    2: (),
    3: (),
    4: ("z1",),
    5: ("z0", "z1"),
    6: ("z0", "z1"),
    7: ("z0", "z1"),
}

_CHORDS: dict[int, tuple[tuple[str, str], ...]] = {
    1: (),
    2: (("y00", "y01"),),
    3: (("y00", "y11"),),
    4: (("y00", "y01"), ("y00", "y11")),
    5: (("y00", "y01"), ("y00", "y11"), ("y10", "y11")),
    6: (("y00", "y01"), ("y00", "y11"), ("y01", "y10")),
    7: (("y00", "y01"), ("y00", "y11"), ("y01", "y10"), ("y10", "y11")),
}

PATTERN_IDS = (1, 2, 3, 4, 5, 6, 7)


def pattern_roles(pattern: int) -> tuple[str, ...]:
    """Role names of fixture ``pattern``; the index of a role is its vertex
    id in ``pattern_graph(pattern)``."""
    if pattern not in _EXTRA_ROLES:
        raise ValueError(f"unknown pattern {pattern}")
    return _BASE_ROLES + _EXTRA_ROLES[pattern]


def _role_edges(pattern: int) -> list[tuple[str, str]]:
    edges: list[tuple[str, str]] = []
    for four in (("x0", "x1", "y00", "y10"), ("x0", "x1", "y01", "y11")):
        for i in range(4):
            for j in range(i + 1, 4):
                if (four[i], four[j]) not in edges:
                    edges.append((four[i], four[j]))
    for i in "01":
        for j in "01":
            edges.append((f"z{i}{j}", f"x{i}"))
            edges.append((f"z{i}{j}", f"y{i}{j}"))
    edges.extend(_CHORDS[pattern])
    for role in _EXTRA_ROLES[pattern]:
        i = role[1]
        for other in ("x0", "x1", f"y0{i}", f"y1{i}"):
            edges.append((role, other))
    return edges


def pattern_graph(pattern: int) -> Graph:
    """Fixture graph ``pattern`` on its canonical vertex numbering.

    >>> pattern_graph(1).m, pattern_graph(7).m
    (19, 31)
    """
    roles = pattern_roles(pattern)
    index = {r: i for i, r in enumerate(roles)}
    g = Graph(len(roles))
    for a, b in _role_edges(pattern):
        g.add_edge(index[a], index[b])
    return g


class PatternMatch:
    """An induced copy of a fixture: role name -> host vertex."""

    __slots__ = ("pattern", "roles")

    def __init__(self, pattern: int, roles: dict[str, int]):
        self.pattern = pattern
        self.roles = dict(roles)

    def __repr__(self) -> str:
        return f"PatternMatch(pattern={self.pattern}, roles={self.roles!r})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PatternMatch)
            and self.pattern == other.pattern
            and self.roles == other.roles
        )

    def to_jsonable(self) -> dict:
        return {"pattern": self.pattern, "roles": dict(self.roles)}

    @classmethod
    def from_jsonable(cls, data: dict) -> "PatternMatch":
        return cls(int(data["pattern"]), {k: int(v) for k, v in data["roles"].items()})


def pattern_match_problems(g: Graph, match: PatternMatch) -> list[str]:
    """Empty list iff ``match`` maps its fixture onto an induced copy in ``g``."""
    out = []
    roles = pattern_roles(match.pattern)
    if set(match.roles) != set(roles):
        return [f"role set mismatch for pattern {match.pattern}"]
    verts = [match.roles[r] for r in roles]
    if len(set(verts)) != len(verts):
        return ["role vertices not distinct"]
    if any(not (0 <= v < g.n) for v in verts):
        return ["role vertex out of range"]
    pg = pattern_graph(match.pattern)
    for i in range(len(roles)):
        for j in range(i + 1, len(roles)):
            want = pg.has_edge(i, j)
            have = g.has_edge(verts[i], verts[j])
            if want != have:
                out.append(
                    f"{roles[i]}={verts[i]} / {roles[j]}={verts[j]}: expected "
                    f"{'edge' if want else 'non-edge'}"
                )
    return out


def _iter_role_maps(g: Graph, pattern: int):
    pg = pattern_graph(pattern)
    roles = pattern_roles(pattern)
    pn = pg.n
    if g.n < pn:
        return
    assign = [-1] * pn
    used = [False] * g.n

    def rec(idx: int):
        if idx == pn:
            yield {roles[i]: assign[i] for i in range(pn)}
            return
        for cand in range(g.n):
            if used[cand]:
                continue
            ok = True
            for j in range(idx):
                if g.has_edge(cand, assign[j]) != pg.has_edge(idx, j):
                    ok = False
                    break
            if ok:
                assign[idx] = cand
                used[cand] = True
                yield from rec(idx + 1)
                used[cand] = False

    yield from rec(0)


def iter_induced_patterns(g: Graph, pattern: int | None = None):
    """Yield every induced fixture copy, patterns ascending, role
    assignments in ascending candidate order."""
    pids = PATTERN_IDS if pattern is None else (pattern,)
    for pid in pids:
        for roles in _iter_role_maps(g, pid):
            yield PatternMatch(pid, roles)


def find_induced_pattern(g: Graph, pattern: int | None = None) -> PatternMatch | None:
    """First induced fixture copy in deterministic order, or None."""
    for match in iter_induced_patterns(g, pattern):
        return match
    return None


class SeparationWitness:
    """Why two given edges must map to disjoint paths in any leaf root.

    ``condition`` is 1, 2, or 3; ``vertices`` carries the center vertex for
    condition 2 and the ordered center pair for condition 3.
    """

    __slots__ = ("condition", "vertices")

    def __init__(self, condition: int, vertices: tuple[int, ...] = ()):
        self.condition = condition
        self.vertices = tuple(vertices)

    def __repr__(self) -> str:
        return f"SeparationWitness(condition={self.condition}, vertices={self.vertices!r})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SeparationWitness)
            and self.condition == other.condition
            and self.vertices == other.vertices
        )

    def to_jsonable(self) -> dict:
        return {"condition": self.condition, "vertices": list(self.vertices)}

    @classmethod
    def from_jsonable(cls, data: dict) -> "SeparationWitness":
        return cls(int(data["condition"]), tuple(data["vertices"]))


def _check_separation_edges(g: Graph, e1: tuple[int, int], e2: tuple[int, int]) -> None:
    x1, y1 = e1
    x2, y2 = e2
    if len({x1, y1, x2, y2}) != 4:
        raise ValueError("edge pair must cover four distinct vertices")
    if not g.has_edge(x1, y1):
        raise ValueError(f"({x1}, {y1}) is not an edge")
    if not g.has_edge(x2, y2):
        raise ValueError(f"({x2}, {y2}) is not an edge")


def edge_pair_separation(
    g: Graph, e1: tuple[int, int], e2: tuple[int, int]
) -> SeparationWitness | None:
    """Witness that e1's and e2's endpoint paths are disjoint in any leaf root.

    Conditions, tried in order:

    1. at most one of the four cross pairs between e1 and e2 is an edge;
    2. some vertex a sees both endpoints of e1 and neither endpoint of e2
       (not even a itself equal to one), while each endpoint of e1 sees at
       most one endpoint of e2;
    3. some ordered vertex pair (a, b) has e1's endpoints in N(a) \\ N[b]
       and e2's endpoints in N(b) \\ N[a].

    Vertex scans ascend, so the returned witness is deterministic. The pair
    is ordered: conditions 2 and 3 are not symmetric in (e1, e2).
    """
    _check_separation_edges(g, e1, e2)
    x1, y1 = e1
    x2, y2 = e2
    cross = sum(
        1 for a in (x1, y1) for b in (x2, y2) if g.has_edge(a, b)
    )
    if cross <= 1:
        return SeparationWitness(1)
    cap1 = sum(1 for b in (x2, y2) if g.has_edge(x1, b)) <= 1
    cap2 = sum(1 for b in (x2, y2) if g.has_edge(y1, b)) <= 1
    if cap1 and cap2:
        for a in range(g.n):
            if (
                g.has_edge(a, x1)
                and g.has_edge(a, y1)
                and a not in (x2, y2)
                and not g.has_edge(a, x2)
                and not g.has_edge(a, y2)
            ):
                return SeparationWitness(2, (a,))
    for a in range(g.n):
        if not (g.has_edge(a, x1) and g.has_edge(a, y1)):
            continue
        if a in (x2, y2) or g.has_edge(a, x2) or g.has_edge(a, y2):
            continue
        for b in range(g.n):
            if b == a or b in (x1, y1) or g.has_edge(b, x1) or g.has_edge(b, y1):
                continue
            if g.has_edge(b, x2) and g.has_edge(b, y2):
                return SeparationWitness(3, (a, b))
    return None


def separation_problems(
    g: Graph, e1: tuple[int, int], e2: tuple[int, int], w: SeparationWitness
) -> list[str]:
    """Empty list iff ``w`` re-validates for the ordered pair (e1, e2)."""
    try:
        _check_separation_edges(g, e1, e2)
    except ValueError as exc:
        return [str(exc)]
    x1, y1 = e1
    x2, y2 = e2
    out = []
    if w.condition == 1:
        cross = sum(1 for a in (x1, y1) for b in (x2, y2) if g.has_edge(a, b))
        if cross > 1:
            out.append(f"{cross} cross edges")
    elif w.condition == 2:
        if len(w.vertices) != 1:
            return ["condition 2 needs one center vertex"]
        (a,) = w.vertices
        if sum(1 for b in (x2, y2) if g.has_edge(x1, b)) > 1:
            out.append("first endpoint sees both far endpoints")
        if sum(1 for b in (x2, y2) if g.has_edge(y1, b)) > 1:
            out.append("second endpoint sees both far endpoints")
        if not (g.has_edge(a, x1) and g.has_edge(a, y1)):
            out.append("center not adjacent to both near endpoints")
        if a in (x2, y2) or g.has_edge(a, x2) or g.has_edge(a, y2):
            out.append("center touches the far edge")
    elif w.condition == 3:
        if len(w.vertices) != 2:
            return ["condition 3 needs an ordered vertex pair"]
        a, b = w.vertices
        if a == b:
            out.append("centers must differ")
        if not (g.has_edge(a, x1) and g.has_edge(a, y1)):
            out.append("first center misses a near endpoint")
        if a in (x2, y2) or g.has_edge(a, x2) or g.has_edge(a, y2):
            out.append("first center touches the far edge")
        if not (g.has_edge(b, x2) and g.has_edge(b, y2)):
            out.append("second center misses a far endpoint")
        if b in (x1, y1) or g.has_edge(b, x1) or g.has_edge(b, y1):
            out.append("second center touches the near edge")
    else:
        out.append(f"unknown condition {w.condition}")
    return out


class NonLeafPowerCertificate:
    """Six vertices whose double-square cycle cannot be realized by any
    leaf root: five edge pairs, each with a separation witness."""

    __slots__ = ("roles", "witnesses")

    def __init__(
        self,
        roles: dict[str, int],
        witnesses: tuple[tuple[tuple[int, int], tuple[int, int], SeparationWitness], ...],
    ):
        self.roles = dict(roles)
        self.witnesses = tuple(witnesses)

    def __repr__(self) -> str:
        return f"NonLeafPowerCertificate(roles={self.roles!r})"

    def to_jsonable(self) -> dict:
        return {
            "roles": dict(self.roles),
            "witnesses": [
                {"first": list(e1), "second": list(e2), "separation": w.to_jsonable()}
                for e1, e2, w in self.witnesses
            ],
        }

    @classmethod
    def from_jsonable(cls, data: dict) -> "NonLeafPowerCertificate":
        wits = tuple(
            (
                (int(e["first"][0]), int(e["first"][1])),
                (int(e["second"][0]), int(e["second"][1])),
                SeparationWitness.from_jsonable(e["separation"]),
            )
            for e in data["witnesses"]
        )
        return cls({k: int(v) for k, v in data["roles"].items()}, wits)


_CYCLE_ROLE_EDGES = (
    ("x0", "y00"),
    ("y00", "y10"),
    ("y10", "x1"),
    ("x1", "y11"),
    ("y11", "y01"),
    ("y01", "x0"),
)

_PAIR_ROLES = (
    (("x0", "y00"), ("x1", "y10")),
    (("x0", "y00"), ("x1", "y11")),
    (("x0", "y01"), ("x1", "y10")),
    (("x0", "y01"), ("x1", "y11")),
    (("y00", "y10"), ("y01", "y11")),
)


def non_leaf_power_certificate(
    g: Graph, budget: int | None = None
) -> NonLeafPowerCertificate | None:
    """Search for a six-vertex obstruction to being a leaf power.

    Enumerates role tuples (x0, x1, y00, y01, y10, y11) carrying the cycle
    x0-y00-y10-x1-y11-y01-x0 (the cycle need not be induced), then demands a
    separation witness for each of the five critical edge pairs, trying each
    pair in its listed order and then reversed. Sound for every input graph:
    a certificate implies no leaf root of any distance threshold exists.
    """
    if budget is None:
        budget = _DEFAULT_CERT_BUDGET
    tried = 0
    n = g.n
    for x0 in range(n):
        for y00 in bits(g.adj[x0]):
            for y01 in bits(g.adj[x0]):
                if y01 == y00:
                    continue
                for x1 in range(n):
                    if x1 in (x0, y00, y01):
                        continue
                    for y10 in bits(g.adj[x1] & g.adj[y00]):
                        if y10 in (x0, x1, y00, y01):
                            continue
                        for y11 in bits(g.adj[x1] & g.adj[y01]):
                            if y11 in (x0, x1, y00, y01, y10):
                                continue
                            tried += 1
                            if tried > budget:
                                raise SearchBudgetExceeded(
                                    "six-vertex obstruction scan", budget
                                )
                            roles = {
                                "x0": x0,
                                "x1": x1,
                                "y00": y00,
                                "y01": y01,
                                "y10": y10,
                                "y11": y11,
                            }
                            cert = _try_certificate(g, roles)
                            if cert is not None:
                                return cert
    return None


def _try_certificate(g: Graph, roles: dict[str, int]) -> NonLeafPowerCertificate | None:
    found = []
    for (a1, b1), (a2, b2) in _PAIR_ROLES:
        e1 = (roles[a1], roles[b1])
        e2 = (roles[a2], roles[b2])
        w = edge_pair_separation(g, e1, e2)
        if w is not None:
            found.append((e1, e2, w))
            continue
        w = edge_pair_separation(g, e2, e1)
        if w is not None:
            found.append((e2, e1, w))
            continue
        return None
    return NonLeafPowerCertificate(roles, tuple(found))


def certificate_problems(g: Graph, cert: NonLeafPowerCertificate) -> list[str]:
    """Empty list iff the certificate re-validates against ``g``."""
    out = []
    need = ("x0", "x1", "y00", "y01", "y10", "y11")
    if set(cert.roles) != set(need):
        return ["role set mismatch"]
    verts = [cert.roles[r] for r in need]
    if len(set(verts)) != 6:
        out.append("role vertices not distinct")
    for a, b in _CYCLE_ROLE_EDGES:
        if not g.has_edge(cert.roles[a], cert.roles[b]):
            out.append(f"cycle edge {a}-{b} missing")
    if len(cert.witnesses) != 5:
        out.append(f"expected 5 separation witnesses, got {len(cert.witnesses)}")
        return out
    for idx, ((ra, rb), (rc, rd)) in enumerate(_PAIR_ROLES):
        want = {
            frozenset((cert.roles[ra], cert.roles[rb])),
            frozenset((cert.roles[rc], cert.roles[rd])),
        }
        e1, e2, w = cert.witnesses[idx]
        have = {frozenset(e1), frozenset(e2)}
        if want != have:
            out.append(f"witness {idx} covers the wrong edge pair")
            continue
        out.extend(f"witness {idx}: {p}" for p in separation_problems(g, e1, e2, w))
    return out
