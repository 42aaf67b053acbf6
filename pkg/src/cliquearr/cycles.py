"""Cycle defects in clique arrangements, and the constructive extraction of
a forbidden fixture from a two-terminal defect."""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable

from .arrangement import CliqueArrangement, sink_pair_for_intersection
from .chordal import is_chordal, simple_elimination_order
from .errors import InvariantViolation, SearchBudgetExceeded
from .graphs import Graph, bits
from .patterns import PatternMatch, pattern_match_problems

_DEFAULT_TUPLE_BUDGET = 10_000_000


def _low(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


class BadKCycleWitness:
    """k starter nodes and k terminal nodes where starter i reaches terminal
    j exactly when j is i or i-1 (cyclically)."""

    __slots__ = ("k", "starters", "terminals")

    def __init__(self, k: int, starters: tuple[int, ...], terminals: tuple[int, ...]):
        self.k = k
        self.starters = tuple(starters)
        self.terminals = tuple(terminals)

    def __repr__(self) -> str:
        return (
            f"BadKCycleWitness(k={self.k}, starters={self.starters!r}, "
            f"terminals={self.terminals!r})"
        )

    def to_jsonable(self, a: CliqueArrangement) -> dict:
        return {
            "k": self.k,
            "starter_ids": list(self.starters),
            "terminal_ids": list(self.terminals),
            "starters": [sorted(a.nodes[s]) for s in self.starters],
            "terminals": [sorted(a.nodes[t]) for t in self.terminals],
        }

    @classmethod
    def from_jsonable(cls, data: dict) -> "BadKCycleWitness":
        return cls(int(data["k"]), tuple(data["starter_ids"]), tuple(data["terminal_ids"]))


def bad_k_cycle_problems(a: CliqueArrangement, w: BadKCycleWitness) -> list[str]:
    """Empty list iff ``w`` satisfies the bad k-cycle reach pattern in ``a``."""
    out = []
    k = w.k
    if k < 3:
        out.append("k must be at least 3")
    if len(w.starters) != k or len(w.terminals) != k:
        out.append("starter/terminal count mismatch")
        return out
    ids = list(w.starters) + list(w.terminals)
    if any(not (0 <= x < len(a)) for x in ids):
        return ["node id out of range"]
    if len(set(w.starters)) != k:
        out.append("starters not distinct")
    if len(set(w.terminals)) != k:
        out.append("terminals not distinct")
    for i in range(k):
        for j in range(k):
            want = j == i or j == (i - 1) % k
            have = a.reaches(w.starters[i], w.terminals[j])
            if want != have:
                out.append(
                    f"starter {i} {'misses' if want else 'reaches'} terminal {j}"
                )
    return out


def find_bad_k_cycle(
    a: CliqueArrangement, k: int, budget: int | None = None
) -> BadKCycleWitness | None:
    """Exhaustive search for a bad k-cycle at one fixed k >= 3.

    Terminal tuples are explored depth-first in ascending node-id order,
    canonicalized up to rotation and reflection; partial tuples are pruned
    by pairwise incomparability and nonempty adjacent overlap. For each
    complete tuple, the starter at position i is the smallest node inside
    terminals i and i-1 but inside no other terminal of the tuple. Raises
    SearchBudgetExceeded after ``budget`` extension attempts (default 10**7).
    """
    if k < 3:
        raise ValueError("k must be at least 3")
    if not a.chordal:
        raise ValueError("arrangement does not come from a chordal graph")
    if budget is None:
        budget = _DEFAULT_TUPLE_BUDGET
    n = len(a)
    if n < k:
        return None
    masks = a.node_masks
    chosen: list[int] = []
    steps = 0

    def incomparable(x: int, y: int) -> bool:
        return bool(masks[x] & ~masks[y]) and bool(masks[y] & ~masks[x])

    def starters_for(terms: list[int]) -> list[int] | None:
        picks = []
        for i in range(k):
            cap = masks[terms[i]] & masks[terms[i - 1]]
            best = -1
            for y in range(n):
                if masks[y] & ~cap:
                    continue
                if any(
                    masks[y] & ~masks[terms[j]] == 0
                    for j in range(k)
                    if j not in (i, (i - 1) % k)
                ):
                    continue
                best = y
                break
            if best < 0:
                return None
            picks.append(best)
        return picks

    def dfs() -> BadKCycleWitness | None:
        nonlocal steps
        pos = len(chosen)
        if pos == k:
            if masks[chosen[-1]] & masks[chosen[0]] == 0:
                return None
            picks = starters_for(chosen)
            if picks is None:
                return None
            w = BadKCycleWitness(k, tuple(picks), tuple(chosen))
            assert not bad_k_cycle_problems(a, w)
            return w
        for x in range(n):
            steps += 1
            if steps > budget:
                raise SearchBudgetExceeded("terminal tuple scan", budget)
            if chosen:
                if x <= chosen[0] or x in chosen:
                    continue
                if pos == k - 1 and x <= chosen[1]:
                    continue
                if not incomparable(x, chosen[-1]) or masks[x] & masks[chosen[-1]] == 0:
                    continue
                if any(not incomparable(x, c) for c in chosen[:-1]):
                    continue
            chosen.append(x)
            got = dfs()
            chosen.pop()
            if got is not None:
                return got
        return None

    return dfs()


def has_bad_cycle_k_ge_3(g: Graph) -> bool:
    """Whether some bad k-cycle (k >= 3) exists in the arrangement of ``g``.

    Uses the recognition shortcut: true exactly when the chordal input is
    not strongly chordal; no explicit witness is computed.
    """
    if not is_chordal(g):
        raise ValueError("graph is not chordal")
    return simple_elimination_order(g) is None


class Bad2CycleWitness:
    """Two starters and two terminals with, for each starter/terminal pair,
    an arc path avoiding every node sandwiched between the starters' union
    and the terminals' intersection.

    ``middle`` is the node holding that intersection. ``paths[i][j]`` walks
    from starter i to terminal j. ``extremal`` records that the witness came
    from the canonical search (terminal sizes minimal, then starter sizes
    maximal), which the fixture extraction requires.
    """

    __slots__ = ("starters", "terminals", "middle", "paths", "extremal")

    def __init__(
        self,
        starters: tuple[int, int],
        terminals: tuple[int, int],
        middle: int,
        paths: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...],
        extremal: bool = False,
    ):
        self.starters = tuple(starters)
        self.terminals = tuple(terminals)
        self.middle = middle
        self.paths = tuple((tuple(p[0]), tuple(p[1])) for p in paths)
        self.extremal = extremal

    def __repr__(self) -> str:
        return (
            f"Bad2CycleWitness(starters={self.starters!r}, "
            f"terminals={self.terminals!r}, middle={self.middle}, "
            f"extremal={self.extremal})"
        )

    def to_jsonable(self, a: CliqueArrangement) -> dict:
        vertex_lists = {
            "S0": sorted(a.nodes[self.starters[0]]),
            "S1": sorted(a.nodes[self.starters[1]]),
            "T0": sorted(a.nodes[self.terminals[0]]),
            "T1": sorted(a.nodes[self.terminals[1]]),
            "T": sorted(a.nodes[self.middle]),
        }
        return {
            **vertex_lists,
            "starter_ids": list(self.starters),
            "terminal_ids": list(self.terminals),
            "middle_id": self.middle,
            "paths": {
                f"B{i}{j}": list(self.paths[i][j]) for i in (0, 1) for j in (0, 1)
            },
            "extremal": self.extremal,
        }

    @classmethod
    def from_jsonable(cls, data: dict) -> "Bad2CycleWitness":
        paths = tuple(
            (tuple(data["paths"][f"B{i}0"]), tuple(data["paths"][f"B{i}1"]))
            for i in (0, 1)
        )
        return cls(
            tuple(data["starter_ids"]),
            tuple(data["terminal_ids"]),
            int(data["middle_id"]),
            paths,
            bool(data.get("extremal", False)),
        )


def bad_2_cycle_problems(a: CliqueArrangement, w: Bad2CycleWitness) -> list[str]:
    """Empty list iff ``w`` is a bad 2-cycle of ``a`` (extremality aside)."""
    ids = list(w.starters) + list(w.terminals) + [w.middle]
    for p in w.paths:
        ids.extend(p[0])
        ids.extend(p[1])
    if any(not (0 <= x < len(a)) for x in ids):
        return ["node id out of range"]
    out = []
    s0, s1 = w.starters
    t0, t1 = w.terminals
    if s0 == s1:
        out.append("starters must differ")
    if t0 == t1:
        out.append("terminals must differ")
    masks = a.node_masks
    union = masks[s0] | masks[s1]
    tmask = masks[t0] & masks[t1]
    if masks[w.middle] != tmask:
        out.append("middle node is not the terminals' intersection")
    if union & ~tmask:
        out.append("starters do not fit inside both terminals")
    arc_set = set(a.arcs)
    for i in (0, 1):
        for j in (0, 1):
            path = w.paths[i][j]
            src = w.starters[i]
            dst = (t0, t1)[j]
            if not path or path[0] != src or path[-1] != dst:
                out.append(f"path B{i}{j} does not run starter {i} -> terminal {j}")
                continue
            if len(set(path)) != len(path):
                out.append(f"path B{i}{j} repeats a node")
            for u, v in zip(path, path[1:]):
                if (u, v) not in arc_set:
                    out.append(f"path B{i}{j} uses a non-arc ({u}, {v})")
            for x in path:
                if union & ~masks[x] == 0 and masks[x] & ~tmask == 0:
                    out.append(f"path B{i}{j} passes through sandwiched node {x}")
    return out


def _arc_adjacency(a: CliqueArrangement) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(len(a))]
    for i, j in a.arcs:
        adj[i].append(j)
    return adj


def _bfs_path(
    adj: list[list[int]], banned: int, src: int, dst: int
) -> tuple[int, ...] | None:
    if banned >> src & 1 or banned >> dst & 1:
        return None
    if src == dst:
        return (src,)
    prev = {src: -1}
    queue = [src]
    while queue:
        nxt = []
        for x in queue:
            for y in adj[x]:
                if y in prev or banned >> y & 1:
                    continue
                prev[y] = x
                if y == dst:
                    path = [dst]
                    while path[-1] != src:
                        path.append(prev[path[-1]])
                    path.reverse()
                    return tuple(path)
                nxt.append(y)
        queue = nxt
    return None


def _test_bad_2(
    a: CliqueArrangement, adj: list[list[int]], t0: int, t1: int, s0: int, s1: int
) -> Bad2CycleWitness | None:
    masks = a.node_masks
    union = masks[s0] | masks[s1]
    tmask = masks[t0] & masks[t1]
    banned = 0
    for x in range(len(a)):
        if union & ~masks[x] == 0 and masks[x] & ~tmask == 0:
            banned |= 1 << x
    rows = []
    for s in (s0, s1):
        row = []
        for t in (t0, t1):
            p = _bfs_path(adj, banned, s, t)
            if p is None:
                return None
            row.append(p)
        rows.append(tuple(row))
    w = Bad2CycleWitness(
        (s0, s1), (t0, t1), a.node_id(tmask), tuple(rows), extremal=True
    )
    assert not bad_2_cycle_problems(a, w)
    return w


def find_bad_2_cycle(a: CliqueArrangement) -> Bad2CycleWitness | None:
    """The extremal bad 2-cycle of the arrangement, or None.

    Candidate terminal pairs are visited by ascending size sum; within one
    sum, starter pairs by descending size sum; remaining ties by node id.
    The first hit therefore minimizes the terminal sizes and, given that,
    maximizes the starter sizes - the shape the extraction step builds on.
    """
    if not a.chordal:
        raise ValueError("arrangement does not come from a chordal graph")
    n = len(a)
    if n == 0:
        return None
    masks = a.node_masks
    card = [m.bit_count() for m in masks]
    adj = _arc_adjacency(a)
    tpairs: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for t0 in range(n):
        for t1 in range(t0 + 1, n):
            inter = masks[t0] & masks[t1]
            # Comparable terminals make one endpoint sandwiched; skip early.
            if inter == 0 or inter == masks[t0] or inter == masks[t1]:
                continue
            tpairs[card[t0] + card[t1]].append((t0, t1))
    for tsum in sorted(tpairs):
        by_ssum: dict[int, list[tuple[int, int, int, int]]] = defaultdict(list)
        for t0, t1 in tpairs[tsum]:
            tmask = masks[t0] & masks[t1]
            subs = [x for x in range(n) if masks[x] & ~tmask == 0]
            for pos, s0 in enumerate(subs):
                for s1 in subs[pos + 1 :]:
                    if masks[s0] & ~masks[s1] == 0 or masks[s1] & ~masks[s0] == 0:
                        continue
                    by_ssum[card[s0] + card[s1]].append((t0, t1, s0, s1))
        for ssum in sorted(by_ssum, reverse=True):
            for t0, t1, s0, s1 in by_ssum[ssum]:
                w = _test_bad_2(a, adj, t0, t1, s0, s1)
                if w is not None:
                    return w
    return None


class ObstructionState:
    """Working data of the fixture extraction, kept for inspection.

    Index conventions: ``p[i][j]``/``q[i][j]`` belong to starter i and
    terminal j; ``u[i]`` is starter i's private vertex; ``w[i][j]`` the
    peripheral vertex of corner (i, j); ``wk[k]``/``tprime[k]`` the column
    vertex and its grown terminal clique for column k (node id -1 when the
    case never needed them); ``v[i][j]`` the chord vertices (-1 when a case
    leaves a cell unused). The normalization steps may swap starter roles
    or terminal roles wholesale; all fields reflect the final orientation.
    """

    __slots__ = (
        "s_nodes",
        "t_nodes",
        "s_masks",
        "t_masks",
        "middle",
        "middle_id",
        "q",
        "p",
        "u",
        "w",
        "wk",
        "tprime",
        "v",
        "case",
        "match",
    )

    def __init__(self, a: CliqueArrangement, w: Bad2CycleWitness):
        self.s_nodes = list(w.starters)
        self.t_nodes = list(w.terminals)
        self.s_masks = [a.node_masks[x] for x in self.s_nodes]
        self.t_masks = [a.node_masks[x] for x in self.t_nodes]
        self.middle_id = w.middle
        self.middle = a.node_masks[w.middle]
        self.q = [[-1, -1], [-1, -1]]
        self.p = [[0, 0], [0, 0]]
        self.u = [-1, -1]
        self.w = [[-1, -1], [-1, -1]]
        self.wk = [-1, -1]
        self.tprime = [-1, -1]
        self.v = [[-1, -1], [-1, -1]]
        self.case = ""
        self.match: PatternMatch | None = None

    def p_reduced(self, i: int, j: int) -> int:
        return self.p[i][j] & ~self.middle

    def row_union_mask(self, i: int) -> int:
        return self.p[i][0] | self.p[i][1]

    def diagonal_mask(self, j: int) -> int:
        return self.p[0][j] | self.p[1][1 - j]

    def to_jsonable(self, a: CliqueArrangement) -> dict:
        return {
            "case": self.case,
            "S": [sorted(bits(m)) for m in self.s_masks],
            "T": [sorted(bits(m)) for m in self.t_masks],
            "middle": sorted(bits(self.middle)),
            "P": [[sorted(bits(c)) for c in row] for row in self.p],
            "Q": [[sorted(a.nodes[c]) for c in row] for row in self.q],
            "u": list(self.u),
            "w": [list(row) for row in self.w],
            "column_vertices": list(self.wk),
            "chord_vertices": [list(row) for row in self.v],
            "match": self.match.to_jsonable() if self.match else None,
        }


def _flip_starters(st: ObstructionState) -> None:
    st.s_nodes.reverse()
    st.s_masks.reverse()
    st.u.reverse()
    st.p.reverse()
    st.q.reverse()
    st.w.reverse()
    st.v.reverse()


def _flip_terminals(st: ObstructionState) -> None:
    st.t_nodes.reverse()
    st.t_masks.reverse()
    for grid in (st.p, st.q, st.w, st.v):
        grid[0].reverse()
        grid[1].reverse()
    st.wk.reverse()
    st.tprime.reverse()


def _census(g: Graph, st: ObstructionState) -> tuple[bool, bool, bool, bool]:
    return (
        g.is_clique(st.row_union_mask(0)),
        g.is_clique(st.row_union_mask(1)),
        g.is_clique(st.diagonal_mask(0)),
        g.is_clique(st.diagonal_mask(1)),
    )


def _pick_terminal_cliques(g: Graph, a: CliqueArrangement, st: ObstructionState) -> None:
    for i in (0, 1):
        for j in (0, 1):
            found = False
            for s in a.sink_ids:
                sm = a.node_masks[s]
                if st.s_masks[1 - i] & ~sm == 0:
                    continue
                pm = sm & st.t_masks[j]
                if st.s_masks[i] & ~pm:
                    continue
                if pm & ~st.middle == 0:
                    continue
                st.q[i][j] = s
                st.p[i][j] = pm
                found = True
                break
            if not found:
                raise InvariantViolation(
                    "path-node-selection", f"no admissible clique for corner ({i}, {j})"
                )
    if len({st.q[0][0], st.q[0][1], st.q[1][0], st.q[1][1]}) != 4:
        raise InvariantViolation(
            "path-clique-distinctness", "corner cliques collide"
        )


def _check_meets(a: CliqueArrangement, st: ObstructionState) -> None:
    for i in (0, 1):
        if st.p[i][0] & st.p[i][1] != st.s_masks[i]:
            raise InvariantViolation(
                "starter-meet", f"row {i} does not meet in its starter"
            )
    for j in (0, 1):
        for j2 in (0, 1):
            if st.p[0][j] & st.p[1][j2] & ~st.middle:
                raise InvariantViolation(
                    "cross-meet", f"path nodes ({j}, {j2}) meet outside the middle"
                )
            qa = a.node_masks[st.q[0][j]]
            qb = a.node_masks[st.q[1][j2]]
            if qa & qb & ~st.middle:
                raise InvariantViolation(
                    "cross-meet", f"corner cliques ({j}, {j2}) meet outside the middle"
                )


def _pick_private_starters(a: CliqueArrangement, st: ObstructionState) -> None:
    for i in (0, 1):
        pool = (
            st.s_masks[i]
            & ~a.node_masks[st.q[1 - i][0]]
            & ~a.node_masks[st.q[1 - i][1]]
        )
        if pool == 0:
            raise InvariantViolation(
                "private-starter-vertex", f"starter {i} has no private vertex"
            )
        st.u[i] = _low(pool)


def _pick_peripherals(g: Graph, a: CliqueArrangement, st: ObstructionState) -> None:
    cand: list[list[list[int]]] = [[[], []], [[], []]]
    for i in (0, 1):
        for j in (0, 1):
            pool = a.node_masks[st.q[i][j]] & ~st.p[i][j]
            avoid = (
                st.p_reduced(i, 1 - j)
                | st.p_reduced(1 - i, j)
                | st.p_reduced(1 - i, 1 - j)
            )
            other_u = st.u[1 - i]
            lst = []
            for c in bits(pool):
                if c == other_u or g.has_edge(c, other_u):
                    continue
                if avoid >> c & 1 or g.adj[c] & avoid:
                    continue
                lst.append(c)
            if not lst:
                raise InvariantViolation(
                    "peripheral-vertex-selection", f"corner ({i}, {j}) has no candidate"
                )
            cand[i][j] = lst
    for w00 in cand[0][0]:
        for w01 in cand[0][1]:
            if w01 == w00 or g.has_edge(w00, w01):
                continue
            for w10 in cand[1][0]:
                if w10 in (w00, w01) or g.has_edge(w10, w00) or g.has_edge(w10, w01):
                    continue
                for w11 in cand[1][1]:
                    if w11 in (w00, w01, w10):
                        continue
                    if (
                        g.has_edge(w11, w00)
                        or g.has_edge(w11, w01)
                        or g.has_edge(w11, w10)
                    ):
                        continue
                    st.w = [[w00, w01], [w10, w11]]
                    return
    raise InvariantViolation(
        "peripheral-vertex-selection", "no mutually independent quadruple"
    )


def _column_vertex_problems(
    g: Graph, a: CliqueArrangement, st: ObstructionState, k: int, c: int
) -> list[str]:
    out = []
    tp = a.node_masks[st.tprime[k]]
    if not tp >> c & 1:
        out.append("not inside the grown terminal clique")
    if (st.p[0][k] | st.p[1][k] | st.t_masks[1 - k]) >> c & 1:
        out.append("inside a path node or the far terminal")
    if g.adj[c] & (st.t_masks[1 - k] & ~st.middle):
        out.append("adjacent to the far terminal's private part")
    for i in (0, 1):
        far = st.w[i][1 - k]
        if c == far or g.has_edge(c, far):
            out.append(f"touches the far peripheral vertex ({i}, {1 - k})")
    near_hits = 0
    for i in (0, 1):
        near = st.w[i][k]
        if c == near:
            out.append(f"collides with the near peripheral vertex ({i}, {k})")
        elif g.has_edge(c, near):
            near_hits += 1
    if near_hits > 1:
        out.append("adjacent to both near peripheral vertices")
    other = st.wk[1 - k]
    if other >= 0 and (c == other or g.has_edge(c, other)):
        out.append("touches the other column vertex")
    return out


def _pick_column_vertex(g: Graph, a: CliqueArrangement, st: ObstructionState, k: int) -> None:
    if st.tprime[0] < 0:
        c0, c1 = sink_pair_for_intersection(
            a, st.middle_id, st.t_nodes[0], st.t_nodes[1]
        )
        st.tprime = [c0, c1]
    mine = a.node_masks[st.tprime[k]]
    other = a.node_masks[st.tprime[1 - k]]
    pick = -1
    for c in bits(mine & ~other):
        if g.adj[c] & (other & ~mine) == 0:
            pick = c
            break
    if pick < 0:
        raise InvariantViolation(
            "column-vertex-selection",
            f"no vertex of column {k} avoids the opposite grown clique",
        )
    problems = _column_vertex_problems(g, a, st, k, pick)
    if problems:
        raise InvariantViolation(
            "column-vertex-selection", f"column {k}: " + "; ".join(problems)
        )
    st.wk[k] = pick


def _column_adjacency(g: Graph, st: ObstructionState, k: int) -> int | None:
    """Which near peripheral vertex (by row) the column-k vertex touches."""
    for i in (0, 1):
        if g.has_edge(st.wk[k], st.w[i][k]):
            return i
    return None


def _nonadjacent_between(g: Graph, amask: int, bmask: int) -> tuple[int, int] | None:
    for x in bits(amask):
        free = bmask & ~g.adj[x] & ~(1 << x)
        if free:
            return (x, _low(free))
    return None


def _emit(
    st: ObstructionState,
    pattern: int,
    y00: int,
    y01: int,
    y10: int,
    y11: int,
    z0: int | None = None,
    z1: int | None = None,
) -> None:
    roles = {
        "x0": st.u[0],
        "x1": st.u[1],
        "y00": y00,
        "y01": y01,
        "y10": y10,
        "y11": y11,
        "z00": st.w[0][0],
        "z01": st.w[0][1],
        "z10": st.w[1][0],
        "z11": st.w[1][1],
    }
    if z0 is not None:
        roles["z0"] = z0
    if z1 is not None:
        roles["z1"] = z1
    st.match = PatternMatch(pattern, roles)


def _case_one(g: Graph, a: CliqueArrangement, st: ObstructionState) -> None:
    v0, v1, d0, d1 = _census(g, st)
    if v1:
        _flip_starters(st)
    elif d1:
        _flip_terminals(st)
    v0, v1, d0, d1 = _census(g, st)
    if d0:
        st.case = "1b"
        top = _nonadjacent_between(g, st.p_reduced(0, 0), st.p_reduced(0, 1))
        bottom = _nonadjacent_between(g, st.p_reduced(1, 0), st.p_reduced(1, 1))
        if top is None or bottom is None:
            raise InvariantViolation(
                "chord-vertex-selection", "an incomplete row has no witness pair"
            )
        v00, v01 = top
        v10, v11 = bottom
        st.v = [[v00, v01], [v10, v11]]
        main = g.has_edge(v00, v11)
        anti = g.has_edge(v01, v10)
        if main and anti:
            raise InvariantViolation(
                "clique-census", "both diagonals present forces a chordless 4-cycle"
            )
        if anti:
            _flip_terminals(st)
            (v00, v01), (v10, v11) = st.v
            main = True
        _emit(st, 3 if main else 1, v00, v01, v10, v11)
    else:
        st.case = "1a"
        major = _nonadjacent_between(g, st.p_reduced(0, 0), st.p_reduced(1, 1))
        minor = _nonadjacent_between(g, st.p_reduced(0, 1), st.p_reduced(1, 0))
        if major is None or minor is None:
            raise InvariantViolation(
                "chord-vertex-selection", "an incomplete diagonal has no witness pair"
            )
        v00, v11 = major
        v01, v10 = minor
        st.v = [[v00, v01], [v10, v11]]
        top = g.has_edge(v00, v01)
        bottom = g.has_edge(v10, v11)
        if top and bottom:
            raise InvariantViolation(
                "clique-census", "both rows bridged forces a chordless 4-cycle"
            )
        if bottom:
            _flip_starters(st)
            (v00, v01), (v10, v11) = st.v
            top = True
        _emit(st, 2 if top else 1, v00, v01, v10, v11)


def _case_two(g: Graph, a: CliqueArrangement, st: ObstructionState) -> None:
    st.case = "2"
    v0, v1, d0, d1 = _census(g, st)
    if (v0 and v1) or (d0 and d1):
        raise InvariantViolation(
            "clique-census", "parallel complete unions force a chordless 4-cycle"
        )
    if v0 and d1:
        _flip_terminals(st)
    elif v1 and d0:
        _flip_starters(st)
        _flip_terminals(st)
    elif v1 and d1:
        _flip_starters(st)
    v0, v1, d0, d1 = _census(g, st)
    if not (v0 and d0):
        raise InvariantViolation("clique-census", "normalization failed")
    r01 = st.p_reduced(0, 1)
    r10 = st.p_reduced(1, 0)
    r11 = st.p_reduced(1, 1)
    chosen = None
    for c in bits(r10):
        free01 = r01 & ~g.adj[c] & ~(1 << c)
        free11 = r11 & ~g.adj[c] & ~(1 << c)
        if free01 and free11:
            chosen = (c, _low(free01), _low(free11))
            break
    if chosen is None:
        raise InvariantViolation(
            "chord-vertex-selection",
            "no shared witness vertex against both incomplete unions",
        )
    v10, v01, v11 = chosen
    v00 = _low(st.p_reduced(0, 0))
    st.v = [[v00, v01], [v10, v11]]
    if a.is_sink(st.t_nodes[1]):
        raise InvariantViolation(
            "terminal-not-sink", "second terminal is already a maximal clique"
        )
    _pick_column_vertex(g, a, st, 1)
    w1 = st.wk[1]
    near = _column_adjacency(g, st, 1)
    if near == 0:
        _emit(st, 3, v00, w1, v10, v11)
    elif near == 1:
        _emit(st, 2, v00, v01, v10, w1)
    else:
        _emit(st, 4, v00, v01, v10, v11, z1=w1)


def _case_three(g: Graph, a: CliqueArrangement, st: ObstructionState) -> None:
    for i in (0, 1):
        for j in (0, 1):
            st.v[i][j] = _low(st.p_reduced(i, j))
    for k in (0, 1):
        if a.is_sink(st.t_nodes[k]):
            raise InvariantViolation(
                "terminal-not-sink", f"terminal {k} is already a maximal clique"
            )
    _pick_column_vertex(g, a, st, 0)
    _pick_column_vertex(g, a, st, 1)
    adj0 = _column_adjacency(g, st, 0)
    adj1 = _column_adjacency(g, st, 1)
    if adj0 is None and adj1 is None:
        st.case = "3-free"
        (v00, v01), (v10, v11) = st.v
        if not g.has_edge(v01, v10):
            _emit(st, 5, v00, v01, v10, v11, z0=st.wk[0], z1=st.wk[1])
        elif not g.has_edge(v10, v11):
            _emit(st, 6, v00, v01, v10, v11, z0=st.wk[0], z1=st.wk[1])
        elif not g.has_edge(v00, v01):
            _flip_starters(st)
            (v00, v01), (v10, v11) = st.v
            _emit(st, 6, v00, v01, v10, v11, z0=st.wk[0], z1=st.wk[1])
        elif not g.has_edge(v00, v11):
            _flip_terminals(st)
            (v00, v01), (v10, v11) = st.v
            _emit(st, 5, v00, v01, v10, v11, z0=st.wk[0], z1=st.wk[1])
        else:
            _emit(st, 7, v00, v01, v10, v11, z0=st.wk[0], z1=st.wk[1])
        return
    st.case = "3-adj"
    if adj0 is None:
        _flip_terminals(st)
    adj0 = _column_adjacency(g, st, 0)
    if adj0 == 0:
        _flip_starters(st)
        adj0 = _column_adjacency(g, st, 0)
    if adj0 != 1:
        raise InvariantViolation(
            "clique-census", "column adjacency did not normalize to the lower row"
        )
    adj1 = _column_adjacency(g, st, 1)
    (v00, v01), (v10, v11) = st.v
    w0, w1 = st.wk
    if adj1 is None:
        top = g.has_edge(v00, v01)
        diag = g.has_edge(v00, v11)
        if top and not diag:
            _emit(st, 2, v00, v01, w0, v11)
        elif diag and not top:
            _emit(st, 3, v00, v01, w0, v11)
        elif top and diag:
            _emit(st, 4, v00, v01, w0, v11, z1=w1)
        else:
            raise InvariantViolation(
                "clique-census", "two chords missing in a three-clique census"
            )
    elif adj1 == 1:
        if not g.has_edge(v00, v01):
            _emit(st, 1, v00, v01, w0, w1)
        else:
            _emit(st, 2, v00, v01, w0, w1)
    else:
        if not g.has_edge(v00, v11):
            _emit(st, 1, v00, w1, w0, v11)
        else:
            _emit(st, 3, v00, w1, w0, v11)


def extract_obstruction_state(
    g: Graph, a: CliqueArrangement, w: Bad2CycleWitness
) -> ObstructionState:
    """Run the full extraction and return its working state (match included).

    Requires a strongly chordal ``g``, its arrangement, and the extremal
    witness as produced by find_bad_2_cycle. Every constructed object is
    checked against its guarantees; a failed check raises
    InvariantViolation naming the stage, since existence is a theorem, not
    an input condition.
    """
    if a.n_vertices != g.n:
        raise ValueError("arrangement does not match the graph")
    if not a.strongly_chordal:
        raise ValueError("extraction requires a strongly chordal graph")
    problems = bad_2_cycle_problems(a, w)
    if problems:
        raise ValueError(f"invalid witness: {problems[0]}")
    if not w.extremal:
        raise ValueError("extraction requires the extremal witness")
    st = ObstructionState(a, w)
    _pick_terminal_cliques(g, a, st)
    _check_meets(a, st)
    _pick_private_starters(a, st)
    _pick_peripherals(g, a, st)
    cliques = sum(_census(g, st))
    if cliques <= 1:
        _case_one(g, a, st)
    elif cliques == 2:
        _case_two(g, a, st)
    else:
        _case_three(g, a, st)
    assert st.match is not None
    bad = pattern_match_problems(g, st.match)
    if bad:
        raise InvariantViolation("pattern-verification", "; ".join(bad))
    return st


def extract_obstruction(
    g: Graph, a: CliqueArrangement, w: Bad2CycleWitness
) -> PatternMatch:
    """Constructively turn the extremal bad 2-cycle into an induced fixture
    copy (one of the seven patterns)."""
    return extract_obstruction_state(g, a, w).match


def obstruction_state_problems(
    g: Graph, a: CliqueArrangement, st: ObstructionState
) -> list[str]:
    """Empty list iff every recorded selection still satisfies its stage's
    guarantees. Meant for tests; extraction asserts these along the way."""
    out = []
    for i in (0, 1):
        if a.node_masks[st.s_nodes[i]] != st.s_masks[i]:
            out.append(f"starter {i} mask desynced")
        if a.node_masks[st.t_nodes[i]] != st.t_masks[i]:
            out.append(f"terminal {i} mask desynced")
    if st.middle != st.t_masks[0] & st.t_masks[1]:
        out.append("middle is not the terminal intersection")
    if a.node_masks[st.middle_id] != st.middle:
        out.append("middle id desynced")
    sinks = set(a.sink_ids)
    for i in (0, 1):
        for j in (0, 1):
            qm = a.node_masks[st.q[i][j]]
            pm = st.p[i][j]
            if st.q[i][j] not in sinks:
                out.append(f"corner ({i}, {j}) clique is not a sink")
            if pm != qm & st.t_masks[j]:
                out.append(f"path node ({i}, {j}) is not clique-meet-terminal")
            if st.s_masks[i] & ~pm:
                out.append(f"starter {i} not inside path node ({i}, {j})")
            if st.s_masks[1 - i] & ~pm == 0:
                out.append(f"other starter inside path node ({i}, {j})")
            if st.s_masks[1 - i] & ~qm == 0:
                out.append(f"other starter inside corner clique ({i}, {j})")
            if pm & ~st.middle == 0:
                out.append(f"path node ({i}, {j}) sandwiched in the middle")
    if len({st.q[0][0], st.q[0][1], st.q[1][0], st.q[1][1]}) != 4:
        out.append("corner cliques collide")
    for i in (0, 1):
        if st.p[i][0] & st.p[i][1] != st.s_masks[i]:
            out.append(f"row {i} does not meet in its starter")
    for j in (0, 1):
        for j2 in (0, 1):
            if st.p[0][j] & st.p[1][j2] & ~st.middle:
                out.append(f"path nodes ({j}, {j2}) cross outside the middle")
            if (
                a.node_masks[st.q[0][j]]
                & a.node_masks[st.q[1][j2]]
                & ~st.middle
            ):
                out.append(f"corner cliques ({j}, {j2}) cross outside the middle")
    for i in (0, 1):
        if not st.s_masks[i] >> st.u[i] & 1:
            out.append(f"private vertex {i} outside its starter")
        for j in (0, 1):
            if a.node_masks[st.q[1 - i][j]] >> st.u[i] & 1:
                out.append(f"private vertex {i} inside opposite corner clique")
    ws = [st.w[0][0], st.w[0][1], st.w[1][0], st.w[1][1]]
    if len(set(ws)) != 4:
        out.append("peripheral vertices collide")
    for x in range(4):
        for y in range(x + 1, 4):
            if g.has_edge(ws[x], ws[y]):
                out.append("peripheral vertices adjacent")
    for i in (0, 1):
        for j in (0, 1):
            c = st.w[i][j]
            if not (a.node_masks[st.q[i][j]] & ~st.p[i][j]) >> c & 1:
                out.append(f"peripheral ({i}, {j}) outside its private clique part")
            if c == st.u[1 - i] or g.has_edge(c, st.u[1 - i]):
                out.append(f"peripheral ({i}, {j}) touches the opposite private vertex")
            avoid = (
                st.p_reduced(i, 1 - j)
                | st.p_reduced(1 - i, j)
                | st.p_reduced(1 - i, 1 - j)
            )
            if avoid >> c & 1 or g.adj[c] & avoid:
                out.append(f"peripheral ({i}, {j}) touches another path node's private part")
    for k in (0, 1):
        if st.wk[k] >= 0:
            out.extend(
                f"column {k}: {p}"
                for p in _column_vertex_problems(g, a, st, k, st.wk[k])
            )
    for i in (0, 1):
        for j in (0, 1):
            c = st.v[i][j]
            if c >= 0 and not st.p_reduced(i, j) >> c & 1:
                out.append(f"chord vertex ({i}, {j}) outside its private path part")
    return out
