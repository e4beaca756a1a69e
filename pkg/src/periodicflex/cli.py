"""Command line interface.

Machine-readable output (JSON lines, CSV) goes to stdout; messages go to
stderr. Exit codes:

    0   success / Flexible
    1   NotFlexible, nothing qualifies, or a residual check failed
    2   Unknown (only type 3 colourings), or construct found only type 3
    3   colourings: the limit was reached before the search finished
    4   verify: the flex is trivial
    5   oracle: a discrepancy was found
    64  malformed input or bad usage
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import random
import sys

from . import colouring as col
from . import construct as con
from . import documents as docs
from . import verify as ver
from .gaincore import GainGraphError, combined_span, is_connected
from .generate import random_gain_graph

EXIT_OK = 0
EXIT_NO = 1
EXIT_UNKNOWN = 2
EXIT_LIMIT = 3
EXIT_TRIVIAL = 4
EXIT_DISCREPANCY = 5
EXIT_INPUT = 64


class InputError(Exception):
    pass


def _say(msg):
    print(msg, file=sys.stderr)


def _emit(obj, out=None):
    out = out or sys.stdout
    out.write(json.dumps(obj, sort_keys=True) + "\n")


def _read(path):
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(str(exc)) from exc


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _load_graph(path):
    try:
        return docs.parse_graph(_read(path))
    except (docs.DocumentError, GainGraphError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _default_mode(G):
    return "flex1" if G.k == 1 else "flex2"


# analyze


def _decision_report(G, decision):
    out = {
        "connected": True,
        "k": G.k,
        "mode": decision.mode.value,
        "rank": decision.rank,
        "balanced": decision.balanced,
        "verdict": decision.verdict,
        "reason": decision.reason,
    }
    r = decision.recipe
    if r is not None:
        out["recipe"] = r.id
        if r.colouring is not None:
            out["colouring"] = docs.colouring_to_dict(r.colouring)
            out["classification"] = r.classification.to_dict()
    if decision.verdict == col.UNKNOWN and decision.witness is not None:
        out["type3_colouring"] = docs.colouring_to_dict(decision.witness.colouring)
        out["classification"] = decision.witness.classification.to_dict()
        out["open_problem"] = (
            "loopless Z^2-gain graphs whose only NBAC-colourings are type 3 are conjectured "
            "flexible, but no construction is known"
        )
    return out


def cmd_analyze(args):
    G = _load_graph(args.graph)
    mode = args.mode or _default_mode(G)
    try:
        decision = col.decide(G, mode)
    except col.DisconnectedGraphError:
        _say("graph is disconnected; reporting each component")
        for vertices, dec in col.decide_components(G, mode):
            rep = _decision_report(G, dec)
            rep["connected"] = False
            rep["component"] = list(vertices)
            _emit(rep)
        return EXIT_INPUT
    except GainGraphError as exc:
        raise InputError(str(exc)) from exc
    _emit(_decision_report(G, decision))
    _say(f"{decision.verdict}: {decision.reason}")
    return {col.FLEXIBLE: EXIT_OK, col.NOT_FLEXIBLE: EXIT_NO, col.UNKNOWN: EXIT_UNKNOWN}[decision.verdict]


# colourings


def cmd_colourings(args):
    G = _load_graph(args.graph)
    if args.limit is not None and args.limit < 0:
        raise InputError("--limit must be non-negative")
    gen = col.enumerate_colourings(G, args.cls)
    count = 0
    for delta, cls in gen:
        if args.limit is not None and count >= args.limit:
            _say(f"limit {args.limit} reached before the search finished")
            return EXIT_LIMIT
        _emit({"index": count, "colouring": docs.colouring_to_dict(delta), "classification": cls.to_dict()})
        count += 1
    if count == 0:
        _say(f"no {args.cls} colourings")
        return EXIT_NO
    return EXIT_OK


# construct


def _auto(G):
    """Pick a construction: balanced, fixed-lattice, type 2 / flexible 1-lattice, type 1, rank-deficient."""
    if combined_span(G).is_trivial:
        return con.construct_balanced(G)
    order = [col.FIXED_LATTICE_SHEAR, col.ONE_PERIODIC_GRID if G.k == 1 else col.TYPE2_SCISSOR]
    if G.k == 2:
        order.append(col.TYPE1_GRID)
    best = {}
    type3 = False
    for delta, cls in col.enumerate_colourings(G, "nbac"):
        rid = col.colouring_recipe(cls, G.k)
        if rid is not None and rid not in best:
            best[rid] = (delta, cls)
            if rid == order[0]:
                break
        type3 = type3 or cls.type3
    for rid in order:
        if rid in best:
            delta, cls = best[rid]
            return con.build(G, rid, delta, cls)
    if G.k == 2 and combined_span(G).rank < 2:
        return con.construct_rank_deficient(G)
    if type3:
        raise _OnlyType3()
    raise con.ConstructionError("no constructible colouring")


class _OnlyType3(Exception):
    pass


def cmd_construct(args):
    G = _load_graph(args.graph)
    if not is_connected(G):
        raise InputError("graph is disconnected")
    try:
        if args.auto:
            result = _auto(G)
        else:
            if args.colouring is None:
                raise InputError("give a colouring file or --auto")
            try:
                delta = docs.parse_colouring(_read(args.colouring), G)
            except (docs.DocumentError, ValueError) as exc:
                raise InputError(f"{args.colouring}: {exc}") from exc
            cls = col.classify(G, delta)
            if not cls.is_nbac:
                _say("colouring is not an NBAC-colouring")
                return EXIT_NO
            if cls.type3 and col.colouring_recipe(cls, G.k) is None:
                raise _OnlyType3()
            result = con.construct_for_colouring(G, delta, cls)
    except _OnlyType3:
        _say("only type 3 colourings qualify; no construction is known")
        return EXIT_UNKNOWN
    except con.ConstructionError as exc:
        _say(f"cannot construct: {exc}")
        return EXIT_NO
    graph, flex = G, result.flex
    if args.extend_at is not None:
        gamma = _parse_gain(args.extend_gain, G.k)
        try:
            graph, flex = con.extend_flex_henneberg(G, flex, args.extend_at, gamma)
        except (con.ConstructionError, GainGraphError) as exc:
            raise InputError(str(exc)) from exc
    doc = docs.FlexDocument(graph, flex, result.recipe, result.colouring if graph is G else None)
    _write(args.output, docs.serialize_flex(doc))
    rep = ver.report(graph, flex)
    summary = {
        "recipe": result.recipe,
        "kind": flex.kind.value,
        "output": args.output,
        "max_edge_residual": rep.max_edge_residual,
        "nontrivial": rep.nontrivial,
        "notes": result.notes,
    }
    _say(json.dumps(summary, sort_keys=True))
    return EXIT_OK if rep.residual_ok and rep.nontrivial else EXIT_NO


def _parse_gain(text, k):
    if text is None:
        raise InputError("--extend-gain is required with --extend-at")
    try:
        g = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise InputError(f"bad gain {text!r}") from exc
    if len(g) != k:
        raise InputError(f"gain must have {k} entries")
    return g


# sample


def _load_flex(path):
    try:
        return docs.parse_flex(_read(path))
    except (docs.DocumentError, GainGraphError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _real(x):
    return format(float(x), ".17g")


def cmd_sample(args):
    doc = _load_flex(args.flex)
    flex = doc.flex
    t0 = flex.domain[0] if args.t0 is None else args.t0
    t1 = flex.domain[1] if args.t1 is None else args.t1
    if args.steps < 2:
        raise InputError("--steps must be at least 2")
    header = ["t"]
    for v in flex.vertices:
        header += [f"x_{v}", f"y_{v}"]
    header += ["L11", "L21"] + (["L12", "L22"] if flex.k == 2 else [])
    out = open(args.output, "w", encoding="utf-8", newline="") if args.output not in (None, "-") else sys.stdout
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        for i in range(args.steps):
            t = t0 + (t1 - t0) * i / (args.steps - 1)
            frame = flex.sample(t)
            row = [_real(t)]
            for xy in frame.P:
                row += [_real(xy[0]), _real(xy[1])]
            for j in range(flex.k):
                row += [_real(frame.L[0, j]), _real(frame.L[1, j])]
            w.writerow(row)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


# verify


def cmd_verify(args):
    doc = _load_flex(args.flex)
    if args.samples < 8:
        raise InputError("--samples must be at least 8")
    rep = ver.report(doc.graph, doc.flex, args.samples, args.tol)
    mismatch = doc.base_mismatch()
    out = rep.to_dict()
    out["base_mismatch"] = mismatch
    out["kind"] = doc.flex.kind.value
    _emit(out)
    if not rep.residual_ok or mismatch > args.tol or not math.isfinite(rep.max_edge_residual):
        _say("edge lengths are not preserved (or the stored base frame does not match)")
        return EXIT_NO
    if not rep.nontrivial:
        _say("flex is trivial: every probed congruence invariant is constant")
        return EXIT_TRIVIAL
    return EXIT_OK


# oracle


def _oracle_colourings(G, trials, rng):
    ids = [e.id for e in G.edges]
    if 2 ** len(ids) <= trials:
        for bits in range(2 ** len(ids)):
            yield col.Colouring({e: col.RED if bits >> i & 1 else col.BLUE for i, e in enumerate(ids)})
    else:
        for _ in range(trials):
            yield col.Colouring({e: rng.choice((col.RED, col.BLUE)) for e in ids})


def _oracle_graph(G, trials, rng, bound, budget):
    """Cross-check one graph; returns (discrepancy records, tally)."""
    found = []
    total = {ver.FOUND: 0, ver.NOT_FOUND: 0, ver.INCONCLUSIVE: 0}
    for delta in _oracle_colourings(G, trials, rng):
        problems, tally = ver.cross_check(G, delta, ver.standard_conditions(G.k), bound, budget)
        for key, n in tally.items():
            total[key] += n
        for p in problems:
            found.append({"graph": docs.graph_to_dict(G), "colouring": docs.colouring_to_dict(delta), **p.to_dict()})
    return found, total


def cmd_oracle(args):
    rng = random.Random(args.seed)
    if args.random_graphs:
        graphs = []
        for _ in range(args.random_graphs):
            k = rng.choice((1, 2))
            n = args.vertices
            m = rng.randint(n - 1, max(n - 1, args.max_edges))
            graphs.append(random_gain_graph(rng, n, m, k))
    else:
        if args.graph is None:
            raise InputError("give a graph file or --random-graphs")
        G = _load_graph(args.graph)
        if len(G.edges) > 12:
            raise InputError("the oracle is limited to graphs with at most 12 edges")
        graphs = [G]
    problems = []
    total = {ver.FOUND: 0, ver.NOT_FOUND: 0, ver.INCONCLUSIVE: 0}
    for G in graphs:
        found, tally = _oracle_graph(G, args.trials, rng, args.bound, args.budget)
        problems += found
        for key, n in tally.items():
            total[key] += n
    for p in problems:
        _emit(p)
    _emit({"graphs": len(graphs), "checks": total, "discrepancies": len(problems)})
    return EXIT_DISCREPANCY if problems else EXIT_OK


# fixtures


def cmd_fixture(args):
    from . import fixtures

    if args.name not in fixtures.CATALOGUE:
        raise InputError(f"unknown fixture {args.name}; choose from {', '.join(fixtures.CATALOGUE)}")
    fx = fixtures.get(args.name)
    if args.colouring is None:
        _write(args.output, docs.serialize_graph(fx.graph))
        return EXIT_OK
    if args.colouring not in fx.colourings:
        raise InputError(f"fixture {args.name} has colourings {sorted(fx.colourings)}")
    _write(args.output, docs.serialize_colouring(fx.colourings[args.colouring]))
    return EXIT_OK


# entry point


def build_parser():
    parser = argparse.ArgumentParser(prog="periodicflex", description="Flexibility of periodic frameworks from gain graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="decide flexibility of a gain graph")
    p.add_argument("graph")
    p.add_argument("--mode", choices=[m.value for m in col.Mode])
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("colourings", help="list NBAC-colourings of a class, one JSON object per line")
    p.add_argument("graph")
    p.add_argument("--class", dest="cls", choices=list(col.CLASS_FILTERS), default="nbac")
    p.add_argument("--limit", type=int)
    p.set_defaults(func=cmd_colourings)

    p = sub.add_parser("construct", help="build a flex document")
    p.add_argument("graph")
    p.add_argument("colouring", nargs="?")
    p.add_argument("--auto", action="store_true", help="choose the colouring and construction automatically")
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--extend-at", help="add a Henneberg vertex joined to this vertex")
    p.add_argument("--extend-gain", help="comma separated gain of the second new edge")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("sample", help="sample a flex document to CSV")
    p.add_argument("flex")
    p.add_argument("--t0", type=float)
    p.add_argument("--t1", type=float)
    p.add_argument("--steps", type=int, default=64)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("verify", help="check edge lengths and non-triviality of a flex document")
    p.add_argument("flex")
    p.add_argument("--samples", type=int, default=ver.DEFAULT_SAMPLES)
    p.add_argument("--tol", type=float, default=ver.RESIDUAL_TOL)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="cross-check the circuit tests against a brute-force walk search")
    p.add_argument("graph", nargs="?")
    p.add_argument("--trials", type=int, default=256)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bound", type=int, default=3, help="maximum times a walk may use one edge")
    p.add_argument("--budget", type=int, default=200_000, help="search states per colour before giving up")
    p.add_argument("--random-graphs", type=int, default=0, help="check this many random graphs instead of a file")
    p.add_argument("--vertices", type=int, default=5)
    p.add_argument("--max-edges", type=int, default=10)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("fixture", help="write a built-in example graph or one of its colourings")
    p.add_argument("name")
    p.add_argument("--colouring", help="colouring key instead of the graph (e.g. given, fixed, flex1)")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_fixture)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        _say(f"error: {exc}")
        return EXIT_INPUT


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
