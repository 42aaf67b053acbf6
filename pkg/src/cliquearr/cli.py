"""Command-line front end: classification, DOT export, validation campaigns,
leaf-root tooling, and corpus generation.

Exit codes: 0 success / property holds, 1 counterexample found, 2 input
error, 3 internal invariant violation. The CAK_BUDGET environment variable
caps every search budget used by the commands.
"""

from __future__ import annotations

import hashlib
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import click

from .arrangement import (
    arrangement_dot,
    arrangement_problems,
    build_arrangement,
    embed_arrangement,
    sink_pair_for_intersection,
    two_clique_cover,
    witness_nonadjacent_vertex,
)
from .chordal import is_chordal, is_ptolemaic, simple_elimination_order
from .cycles import (
    Bad2CycleWitness,
    bad_2_cycle_problems,
    extract_obstruction,
    find_bad_2_cycle,
    find_bad_k_cycle,
)
from .errors import InvariantViolation, SearchBudgetExceeded
from .gen import (
    GenConfig,
    _stream,
    random_chordal,
    random_leaf_power,
    random_ptolemaic,
    random_strongly_chordal,
)
from .graphs import Graph, GraphFormatError, parse_graph, serialize_graph
from .leafroot import (
    model_dot,
    parse_model,
    search_leaf_root,
    serialize_model,
    verify_leaf_root,
)
from .patterns import (
    find_induced_pattern,
    non_leaf_power_certificate,
    pattern_graph,
)

_CAMPAIGNS = ("kcycles", "obstructions", "structure", "leafpowers")


def _budget(default: int) -> int:
    raw = os.environ.get("CAK_BUDGET")
    if not raw:
        return default
    try:
        cap = int(raw)
    except ValueError:
        raise click.UsageError("CAK_BUDGET must be an integer")
    if cap < 1:
        raise click.UsageError("CAK_BUDGET must be positive")
    return min(default, cap)


def _load_graph(path: str) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    try:
        return parse_graph(text)
    except GraphFormatError as exc:
        click.echo(f"error: {path}: {exc}", err=True)
        sys.exit(2)


def _bug_artifact(payload: dict) -> str:
    blob = json.dumps(payload, indent=2, sort_keys=True)
    tag = hashlib.blake2b(blob.encode(), digest_size=4).hexdigest()
    name = f"cak-bug-{tag}.json"
    Path(name).write_text(blob + "\n")
    return name


class Verdict:
    """Classification result for one graph; obstruction analysis applies
    only to strongly chordal inputs, leaf-root search only to n <= 7."""

    __slots__ = (
        "chordal",
        "strongly_chordal",
        "ptolemaic",
        "bad2cycle",
        "pattern",
        "certificate",
        "certificate_status",
        "leafroot",
    )

    def __init__(self) -> None:
        self.chordal = False
        self.strongly_chordal = False
        self.ptolemaic = False
        self.bad2cycle = None
        self.pattern = None
        self.certificate = None
        self.certificate_status = "skipped"
        self.leafroot = None


def classify_graph(g: Graph) -> Verdict:
    """Run the full classification pipeline; shared by the CLI and tests.

    A disagreement between the witness search and the induced-fixture
    matcher raises InvariantViolation("obstruction-consistency"), as does a
    leaf-root model coexisting with a non-leaf-power certificate.
    """
    v = Verdict()
    v.chordal = bool(is_chordal(g))
    if not v.chordal:
        return v
    v.strongly_chordal = simple_elimination_order(g) is not None
    v.ptolemaic = is_ptolemaic(g)
    a = build_arrangement(g)
    if v.strongly_chordal:
        w = find_bad_2_cycle(a)
        pm = find_induced_pattern(g)
        if (w is None) != (pm is None):
            payload = {
                "note": "obstruction detectors disagree",
                "graph": serialize_graph(g),
                "bad_2_cycle": w.to_jsonable(a) if w else None,
                "pattern": pm.to_jsonable() if pm else None,
            }
            name = _bug_artifact(payload)
            raise InvariantViolation(
                "obstruction-consistency", f"detectors disagree; details in {name}"
            )
        v.bad2cycle = w
        if w is not None:
            v.pattern = extract_obstruction(g, a, w)
    try:
        v.certificate = non_leaf_power_certificate(g, budget=_budget(10_000_000))
        v.certificate_status = "complete"
    except SearchBudgetExceeded:
        v.certificate_status = "budget_exceeded"
    if g.n <= 7:
        v.leafroot = search_leaf_root(g, budget=_budget(10_000_000))
        if v.leafroot and v.certificate is not None:
            raise InvariantViolation(
                "classification-consistency",
                "leaf root model found alongside a non-leaf-power certificate",
            )
    return v


def _verdict_json(v: Verdict, a) -> dict:
    return {
        "chordal": v.chordal,
        "strongly_chordal": v.strongly_chordal,
        "ptolemaic": v.ptolemaic,
        "bad_2_cycle": v.bad2cycle.to_jsonable(a) if v.bad2cycle else None,
        "pattern": v.pattern.to_jsonable() if v.pattern else None,
        "certificate": v.certificate.to_jsonable() if v.certificate else None,
        "certificate_status": v.certificate_status,
        "leaf_root": (
            {
                "status": v.leafroot.status,
                "model": (
                    serialize_model(v.leafroot.model) if v.leafroot.model else None
                ),
            }
            if v.leafroot is not None
            else None
        ),
    }


def _verdict_text(v: Verdict) -> list[str]:
    lines = [
        f"chordal: {'yes' if v.chordal else 'no'}",
    ]
    if not v.chordal:
        lines.append("remaining analyses skipped (graph is not chordal)")
        return lines
    lines.append(f"strongly chordal: {'yes' if v.strongly_chordal else 'no'}")
    lines.append(f"ptolemaic: {'yes' if v.ptolemaic else 'no'}")
    if v.strongly_chordal:
        if v.bad2cycle is not None:
            lines.append(
                "bad 2-cycle: present "
                f"(starters {list(v.bad2cycle.starters)}, "
                f"terminals {list(v.bad2cycle.terminals)})"
            )
            lines.append(
                f"pattern: G{v.pattern.pattern} on vertices "
                f"{sorted(v.pattern.roles.values())}"
            )
        else:
            lines.append("bad 2-cycle: none")
            lines.append("pattern: none")
    else:
        lines.append("bad 2-cycle: skipped (not strongly chordal)")
    if v.certificate_status == "budget_exceeded":
        lines.append("certificate: search budget exceeded")
    elif v.certificate is not None:
        lines.append(
            f"certificate: present ({len(v.certificate.witnesses)} separation witnesses)"
        )
    else:
        lines.append("certificate: none")
    if v.leafroot is None:
        lines.append("leaf root: skipped (n > 7)")
    elif v.leafroot:
        lines.append(f"leaf root: found (k={v.leafroot.model.k})")
    else:
        lines.append(f"leaf root: {v.leafroot.status}")
    return lines


@click.group()
def main() -> None:
    """Clique arrangement toolkit."""


@main.command()
@click.argument("path", type=click.Path())
@click.option("--json", "as_json", is_flag=True, help="Emit the verdict as JSON.")
def classify(path: str, as_json: bool) -> None:
    """Classify the graph in PATH and report obstruction evidence."""
    g = _load_graph(path)
    try:
        v = classify_graph(g)
    except InvariantViolation as exc:
        click.echo(f"invariant violation [{exc.stage}]: {exc.detail}", err=True)
        sys.exit(3)
    a = build_arrangement(g) if v.chordal else None
    if as_json:
        click.echo(json.dumps(_verdict_json(v, a), indent=2))
    else:
        for line in _verdict_text(v):
            click.echo(line)


@main.command()
@click.argument("path", type=click.Path())
@click.option("--dot", "dot_out", required=True, type=click.Path(), help="DOT output file.")
@click.option(
    "--highlight",
    "witness_path",
    type=click.Path(),
    default=None,
    help="Witness JSON; its starters get doubled frames, terminals bold ones.",
)
def arrangement(path: str, dot_out: str, witness_path: str | None) -> None:
    """Render the clique arrangement of the graph in PATH as DOT."""
    g = _load_graph(path)
    a = build_arrangement(g)
    bold: tuple[int, ...] = ()
    doubled: tuple[int, ...] = ()
    if witness_path is not None:
        try:
            data = json.loads(Path(witness_path).read_text())
            w = Bad2CycleWitness.from_jsonable(data)
        except (OSError, ValueError, KeyError, TypeError) as exc:
            click.echo(f"error: {witness_path}: {exc}", err=True)
            sys.exit(2)
        problems = bad_2_cycle_problems(a, w)
        if problems:
            click.echo(f"error: invalid witness: {problems[0]}", err=True)
            sys.exit(2)
        doubled = w.starters
        bold = w.terminals
    Path(dot_out).write_text(arrangement_dot(a, highlight=bold, doubled=doubled))
    click.echo(
        f"wrote {dot_out}: {len(a)} nodes, {len(a.arcs)} arcs, "
        f"{len(a.sink_ids)} maximal cliques"
    )


def _instance_seed(seed: int, name: str, index: int) -> int:
    return _stream(seed, f"{name}:{index}").getrandbits(63)


def _sun_graph(k: int, rng) -> Graph:
    """A complete center clique 0..k-1 plus an independent rim k..2k-1,
    rim vertex k+i adjacent to center i and (i+1) mod k. Chordal but not
    strongly chordal, so it must carry a bad cycle."""
    edges = [(i, j) for i in range(k) for j in range(i + 1, k)]
    for i in range(k):
        edges.append((i, k + i))
        edges.append(((i + 1) % k, k + i))
    perm = list(range(2 * k))
    rng.shuffle(perm)
    return Graph(2 * k, [(perm[u], perm[v]) for u, v in edges])


def _run_kcycles(nmax: int, seed: int, index: int) -> tuple[str, str | None]:
    rng = _stream(seed, f"kcycles:{index}")
    if index % 3 == 2:
        g = _sun_graph(rng.randint(3, 4), rng)
    else:
        n_i = rng.randint(1, max(1, nmax))
        density = rng.uniform(0.1, 0.9)
        g = random_chordal(
            GenConfig(n_i, _instance_seed(seed, "kcycles-g", index), density)
        )
    a = build_arrangement(g)
    expected_clean = a.strongly_chordal
    found = None
    for k in range(3, len(a.sink_ids) + 1):
        found = find_bad_k_cycle(a, k, budget=_budget(10_000_000))
        if found is not None:
            break
    if (found is None) != expected_clean:
        return "counterexample", (
            f"strongly_chordal={expected_clean} but bad cycle "
            f"{'found' if found else 'missing'} on {serialize_graph(g)!r}"
        )
    return ("clean" if expected_clean else "bad-cycle"), None


def _run_obstructions(nmax: int, seed: int, index: int) -> tuple[str, str | None]:
    rng = _stream(seed, f"obstructions:{index}")
    if index % 5 == 0:
        pid = 1 + (index // 5) % 7
        size = pattern_graph(pid).n
        n_i = rng.randint(size, max(size, nmax))
        cfg = GenConfig(
            n_i,
            _instance_seed(seed, "obstructions-g", index),
            variant="planted",
            pattern=pid,
        )
    else:
        n_i = rng.randint(1, max(1, nmax))
        cfg = GenConfig(
            n_i,
            _instance_seed(seed, "obstructions-g", index),
            rng.uniform(0.1, 0.9),
            variant="strongly_chordal",
        )
    g = random_strongly_chordal(cfg)
    a = build_arrangement(g)
    w = find_bad_2_cycle(a)
    pm = find_induced_pattern(g)
    if (w is None) != (pm is None):
        name = _bug_artifact(
            {
                "note": "obstruction detectors disagree",
                "graph": serialize_graph(g),
                "bad_2_cycle": w.to_jsonable(a) if w else None,
                "pattern": pm.to_jsonable() if pm else None,
            }
        )
        return "counterexample", f"detectors disagree; details in {name}"
    if w is not None:
        extract_obstruction(g, a, w)
        return "bad2", None
    return "clean", None


def _run_structure(nmax: int, seed: int, index: int) -> tuple[str, str | None]:
    rng = _stream(seed, f"structure:{index}")
    # the first hundred instances double as embedding checks, which need a
    # proper nonempty subset, so keep them at two vertices or more
    lo = 2 if index < 100 and nmax >= 2 else 1
    n_i = rng.randint(lo, max(lo, nmax))
    density = rng.uniform(0.1, 0.9)
    g = random_chordal(GenConfig(n_i, _instance_seed(seed, "structure-g", index), density))
    a = build_arrangement(g)
    problems = arrangement_problems(g, a)
    if problems:
        return "counterexample", f"arrangement check failed: {problems[0]}"
    sinks = list(a.sink_ids)
    for pos, c1 in enumerate(sinks):
        for c2 in sinks[pos + 1 :]:
            witness_nonadjacent_vertex(g, a.nodes[c1], a.nodes[c2])
    if a.strongly_chordal:
        for x in range(len(a)):
            two_clique_cover(a, [x])
        masks = a.node_masks
        triples = []
        for y in range(len(a)):
            for z in range(y + 1, len(a)):
                m = masks[y] & masks[z]
                if m and m != masks[y] and m != masks[z] and a.has_node(m):
                    triples.append((a.node_id(m), y, z))
        rng.shuffle(triples)
        for x, y, z in triples[:50]:
            sink_pair_for_intersection(a, x, y, z)
    if index < 100 and g.n >= 2:
        count = rng.randint(1, g.n - 1)
        sub = sorted(rng.sample(range(g.n), count))
        embed_arrangement(g, sub, a)
    return "checked", None


def _run_leafpowers(nmax: int, seed: int, index: int) -> tuple[str, str | None]:
    rng = _stream(seed, f"leafpowers:{index}")
    n_i = rng.randint(2, max(2, nmax))
    k_i = rng.randint(2, 6)
    g, model = random_leaf_power(n_i, k_i, _instance_seed(seed, "leafpowers-g", index))
    violation = verify_leaf_root(g, model)
    if violation is not None:
        return "counterexample", f"generated model fails: {violation!r}"
    a = build_arrangement(g)
    w = find_bad_2_cycle(a)
    if w is not None:
        return "counterexample", (
            f"leaf power with a bad 2-cycle: {serialize_graph(g)!r}"
        )
    return "checked", None


_RUNNERS = {
    "kcycles": _run_kcycles,
    "obstructions": _run_obstructions,
    "structure": _run_structure,
    "leafpowers": _run_leafpowers,
}


def _campaign_instance(
    name: str, nmax: int, seed: int, index: int
) -> tuple[int, str, str | None]:
    try:
        category, detail = _RUNNERS[name](nmax, seed, index)
    except InvariantViolation as exc:
        category, detail = "counterexample", f"[{exc.stage}] {exc.detail}"
    return index, category, detail


@main.command()
@click.argument("name", type=click.Choice(_CAMPAIGNS))
@click.option("--count", default=100, show_default=True, help="Instances to run.")
@click.option("--n", "nmax", default=10, show_default=True, help="Largest vertex count.")
@click.option("--seed", default=0, show_default=True)
@click.option("--jobs", default=1, show_default=True, help="Parallel worker processes.")
def campaign(name: str, count: int, nmax: int, seed: int, jobs: int) -> None:
    """Run a randomized validation campaign; exits 1 on any counterexample."""
    start = time.monotonic()
    results: list[tuple[int, str, str | None]] = []
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [
                pool.submit(_campaign_instance, name, nmax, seed, i)
                for i in range(count)
            ]
            results = [f.result() for f in futures]
    else:
        results = [_campaign_instance(name, nmax, seed, i) for i in range(count)]
    results.sort()
    tally: dict[str, int] = {}
    failures: list[tuple[int, str]] = []
    for index, category, detail in results:
        tally[category] = tally.get(category, 0) + 1
        if category == "counterexample":
            failures.append((index, detail or ""))
    elapsed = time.monotonic() - start
    click.echo(f"campaign {name}: {count} instances, n <= {nmax}, seed {seed}")
    for category in sorted(tally):
        click.echo(f"  {category}: {tally[category]}")
    for index, detail in failures:
        click.echo(f"  instance {index}: {detail}", err=True)
    click.echo(f"  elapsed: {elapsed:.1f}s")
    if failures:
        sys.exit(1)


@main.group()
def leafroot() -> None:
    """Verify or search weighted leaf-root models."""


@leafroot.command("verify")
@click.argument("graph_path", type=click.Path())
@click.argument("model_path", type=click.Path())
def leafroot_verify(graph_path: str, model_path: str) -> None:
    """Check the model in MODEL_PATH against the graph in GRAPH_PATH."""
    g = _load_graph(graph_path)
    try:
        model = parse_model(Path(model_path).read_text())
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    except GraphFormatError as exc:
        click.echo(f"error: {model_path}: {exc}", err=True)
        sys.exit(2)
    try:
        violation = verify_leaf_root(g, model)
    except ValueError as exc:
        click.echo(f"error: malformed model: {exc}", err=True)
        sys.exit(2)
    if violation is None:
        click.echo("ok")
    else:
        click.echo(f"violation: {violation!r}")
        sys.exit(1)


@leafroot.command("search")
@click.argument("graph_path", type=click.Path())
@click.option("--max-internal", type=int, default=None)
@click.option("--max-weight", type=int, default=None)
@click.option("--max-k", type=int, default=None)
@click.option("--model", "model_out", type=click.Path(), default=None,
              help="Write the found model here instead of stdout.")
@click.option("--dot", "dot_out", type=click.Path(), default=None,
              help="Also write a DOT drawing of the found model.")
def leafroot_search(
    graph_path: str,
    max_internal: int | None,
    max_weight: int | None,
    max_k: int | None,
    model_out: str | None,
    dot_out: str | None,
) -> None:
    """Search for a realizing model of the graph in GRAPH_PATH."""
    g = _load_graph(graph_path)
    try:
        result = search_leaf_root(
            g,
            max_internal=max_internal,
            max_weight=max_weight,
            max_k=max_k,
            budget=_budget(10_000_000),
        )
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    except InvariantViolation as exc:
        click.echo(f"invariant violation [{exc.stage}]: {exc.detail}", err=True)
        sys.exit(3)
    if result:
        text = serialize_model(result.model)
        if model_out:
            Path(model_out).write_text(text)
            click.echo(f"found (k={result.model.k}); wrote {model_out}")
        else:
            click.echo(text, nl=False)
        if dot_out:
            Path(dot_out).write_text(model_dot(result.model))
    else:
        click.echo(result.status)


@main.command("gen")
@click.argument(
    "variant",
    type=click.Choice(
        ["chordal", "strongly_chordal", "ptolemaic", "leaf_power", "planted"]
    ),
)
@click.option("--n", "n", required=True, type=int)
@click.option("--seed", default=0, show_default=True)
@click.option("--out", "out_dir", required=True, type=click.Path())
@click.option("--count", default=1, show_default=True)
@click.option("--density", default=0.5, show_default=True)
@click.option("--k", type=int, default=None, help="Threshold for leaf_power.")
@click.option("--pattern", type=int, default=None, help="Fixture id for planted.")
def gen_cmd(
    variant: str,
    n: int,
    seed: int,
    out_dir: str,
    count: int,
    density: float,
    k: int | None,
    pattern: int | None,
) -> None:
    """Write a corpus of generated graphs plus a manifest."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    manifest = []
    for i in range(count):
        inst_seed = _instance_seed(seed, f"gen:{variant}", i)
        entry: dict = {
            "file": f"g{i:04d}.graph",
            "variant": variant,
            "n": n,
            "seed": inst_seed,
        }
        try:
            if variant == "leaf_power":
                if k is None:
                    raise click.UsageError("leaf_power needs --k")
                g, model = random_leaf_power(n, k, inst_seed)
                entry["k"] = k
                entry["model"] = f"g{i:04d}.model"
                (out / entry["model"]).write_text(serialize_model(model))
            elif variant == "ptolemaic":
                g = random_ptolemaic(n, inst_seed)
            elif variant == "chordal":
                g = random_chordal(GenConfig(n, inst_seed, density))
                entry["density"] = density
            elif variant == "planted":
                if pattern is None:
                    raise click.UsageError("planted needs --pattern")
                g = random_strongly_chordal(
                    GenConfig(n, inst_seed, density, variant="planted", pattern=pattern)
                )
                entry["pattern"] = pattern
            else:
                g = random_strongly_chordal(GenConfig(n, inst_seed, density))
                entry["density"] = density
        except (ValueError, SearchBudgetExceeded) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)
        (out / entry["file"]).write_text(serialize_graph(g))
        manifest.append(entry)
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    click.echo(f"wrote {count} graphs to {out_dir}")


if __name__ == "__main__":
    main()
