"""Command line front end for the coloring game engine.

Subcommands:
  solve        outcome/Grundy verdict for one position (closed forms and
               involution pairings tried before exhaustive search)
  grundy-seq   stream the directed-path class tables as CSV plus a summary
  p-positions  lengths with Grundy value 0 in one path class
  sequential   linear-time decision for the fixed-order path game
  reduce       embed a Node-Kayles instance into a richer ruleset
  verify       oracle-equivalence suites (recursion, sequential, reductions,
               closed-forms)
  tables       compute/extend/inspect/export binary table files

Exit codes: 0 computed, 2 parse or usage error, 3 memory budget exceeded,
4 verification failure. All output is deterministic for fixed flags; the
random suites demand an explicit --seed. The transposition table honours the
COLORING_GAMES_TT_BYTES environment variable.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import random
import sys
from typing import TextIO

from . import games, oriented_paths as op, reductions, sequential as seq
from .games import Position
from .graphs import (
    Graph,
    GraphDocument,
    build_family,
    connected_graph_census,
    format_graph_text,
    load_graph_file,
    parse_family_spec,
)
from .rulesets import (
    OUTCOME_N,
    OUTCOME_P,
    OUTCOME_UNKNOWN,
    DistanceColoring,
    ProperColoring,
    RULESET_TOKENS,
    closed_form_outcome,
    outcome_by_involution,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_VERIFY = 4


class CliError(Exception):
    """Bad flags or inputs; reported on stderr with exit code 2."""


# ---- output ---------------------------------------------------------------

def _emit(record: dict, fmt: str, out: TextIO) -> None:
    if fmt == "json":
        out.write(json.dumps(record, sort_keys=True) + "\n")
        return
    for key, val in record.items():
        if isinstance(val, (list, tuple)):
            val = " ".join(str(x) for x in val)
        elif isinstance(val, dict):
            val = " ".join(f"{k}={v}" for k, v in val.items())
        out.write(f"{key}: {val}\n")


# ---- shared input plumbing ------------------------------------------------

def _load_graph(args) -> tuple[Graph, str, GraphDocument | None]:
    """Graph from --graph shorthand or --file, plus a printable source name."""
    spec = getattr(args, "graph", None)
    path = getattr(args, "file", None)
    if spec and path:
        raise CliError("give --graph or --file, not both")
    if spec:
        return parse_family_spec(spec), spec, None
    if path:
        doc = load_graph_file(path)
        return doc.graph, path, doc
    raise CliError("a graph is required (--graph NAME:PARAMS or --file PATH)")


def _build_ruleset(args):
    cls = RULESET_TOKENS[args.ruleset]
    d = getattr(args, "d", None)
    if cls is DistanceColoring:
        return DistanceColoring(2 if d is None else d)
    if d is not None:
        raise CliError("--d only applies to the distance ruleset")
    return cls()


def _resolve_k(args, doc: GraphDocument | None, ruleset) -> int:
    if args.k is not None:
        return args.k
    if doc is not None and doc.k is not None:
        return doc.k
    if ruleset.fixed_k is not None:
        return ruleset.fixed_k
    raise CliError("--k is required for this ruleset")


# ---- solve ---------------------------------------------------------------

def cmd_solve(args, out: TextIO) -> int:
    g, source, doc = _load_graph(args)
    ruleset = _build_ruleset(args)
    k = _resolve_k(args, doc, ruleset)
    coloring = doc.coloring if doc is not None else None
    order = doc.order if doc is not None else None
    pos = Position.start(g, k, ruleset, order=order, coloring=coloring)
    uncolored = pos.painted_count == 0

    record = {"graph": source, "ruleset": ruleset.token, "k": k}
    if isinstance(ruleset, DistanceColoring):
        record["d"] = ruleset.d

    method = args.method
    outcome = OUTCOME_UNKNOWN
    value: int | None = None

    if method in ("auto", "closed-form") and uncolored:
        if ruleset.token == "sequential":
            try:
                outcome = seq.decide_outcome(g, order)
            except ValueError:
                outcome = OUTCOME_UNKNOWN
        else:
            outcome, value = closed_form_outcome(ruleset, k, g)
        if outcome != OUTCOME_UNKNOWN:
            method = "closed-form"

    if outcome == OUTCOME_UNKNOWN and args.method in ("auto", "involution") and uncolored:
        from .rulesets import translate_for_solving

        solved_rs, solved_g = translate_for_solving(ruleset, g)
        if isinstance(solved_rs, ProperColoring) and order is None:
            outcome = outcome_by_involution(solved_g, k)
            if outcome != OUTCOME_UNKNOWN:
                method = "involution"

    if outcome == OUTCOME_UNKNOWN and args.method in ("auto", "search"):
        value = games.grundy(pos, threads=args.threads)
        outcome = OUTCOME_N if value else OUTCOME_P
        method = "search"
        if value:
            mv = games.best_move(pos, threads=args.threads)
            record_move = {"vertex": mv.vertex, "color": mv.color}
        else:
            record_move = None
    else:
        record_move = None

    record["outcome"] = outcome
    if value is not None:
        record["grundy"] = int(value)
    record["method"] = method if outcome != OUTCOME_UNKNOWN else args.method
    if record_move is not None:
        record["winning_move"] = record_move
    _emit(record, args.format, out)
    return EXIT_OK


# ---- grundy-seq and p-positions -------------------------------------------

def _table_slice(table: op.GrundyTable, kmax: int) -> op.GrundyTable:
    if table.K == kmax:
        return table
    return op.GrundyTable(
        K=kmax,
        gA=table.gA[: kmax + 1].copy(),
        gC=table.gC[: kmax + 1].copy(),
        gD=table.gD[: kmax + 1].copy(),
        mode=table.mode,
    )


def _compute_with_checkpoint(kmax: int, mode: str, checkpoint: str | None,
                             step: int) -> op.GrundyTable:
    """Grow the table, persisting after every chunk so a budget abort
    still leaves a loadable file behind."""
    table: op.GrundyTable | None = None
    if checkpoint and os.path.exists(checkpoint):
        table = op.load_table(checkpoint)
    if not checkpoint:
        if table is None:
            return op.compute_tables(kmax, mode=mode)
        return op.extend_table(table, kmax, mode=mode)
    if table is None:
        table = op.compute_tables(min(step, kmax), mode=mode)
        op.save_table(table, checkpoint)
    while table.K < kmax:
        table = op.extend_table(table, min(table.K + step, kmax), mode=mode)
        op.save_table(table, checkpoint)
    return table


def _summary(table: op.GrundyTable, kmax: int) -> dict:
    view = _table_slice(table, kmax)
    report = op.classify_rare_common(view)
    return {
        "d_p_positions": len(op.enumerate_p_positions(view, op.CLASS_D)),
        "max_value": int(report.max_value),
        "largest_rare_index": int(report.max_rare_index),
    }


def cmd_grundy_seq(args, out: TextIO) -> int:
    try:
        table = _compute_with_checkpoint(args.kmax, args.mode, args.checkpoint,
                                         args.checkpoint_every)
    except games.MemoryBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        if args.checkpoint and os.path.exists(args.checkpoint):
            print(f"checkpoint retained: {args.checkpoint}", file=sys.stderr)
        return EXIT_BUDGET

    dest = open(args.out, "w", encoding="utf-8") if args.out else out
    try:
        summary = _summary(table, args.kmax)
        if args.format == "json":
            for k in range(1, args.kmax + 1):
                dest.write(json.dumps(
                    {"k": k, "gA": int(table.gA[k]), "gC": int(table.gC[k]),
                     "gD": int(table.gD[k])}, sort_keys=True) + "\n")
            dest.write(json.dumps({"summary": summary}, sort_keys=True) + "\n")
        else:
            for k in range(1, args.kmax + 1):
                dest.write(f"{k},{table.gA[k]},{table.gC[k]},{table.gD[k]}\n")
            dest.write("# summary "
                       + " ".join(f"{key}={val}" for key, val in summary.items())
                       + "\n")
    finally:
        if args.out:
            dest.close()
    return EXIT_OK


def cmd_p_positions(args, out: TextIO) -> int:
    table = op.compute_tables(args.kmax, mode=args.mode)
    lengths = op.enumerate_p_positions(table, args.klass)
    record = {
        "class": args.klass,
        "kmax": args.kmax,
        "count": len(lengths),
        "lengths": lengths,
    }
    _emit(record, args.format, out)
    return EXIT_OK


# ---- sequential ------------------------------------------------------------

def _parse_order(text: str, n: int) -> tuple[int, ...]:
    try:
        order = tuple(int(tok) for tok in text.replace(",", " ").split())
    except ValueError as exc:
        raise CliError(f"bad --order {text!r}: expected vertex ids") from exc
    if sorted(order) != list(range(n)):
        raise CliError("--order must be a permutation of all vertices")
    return order


def cmd_sequential(args, out: TextIO) -> int:
    g, source, doc = _load_graph(args)
    file_order = doc.order if doc is not None else None
    if args.order is None:
        if file_order is None:
            raise CliError("an order is required (--order or an order line in the file)")
        order = file_order
    elif file_order is not None:
        raise CliError("the file already carries an order; drop --order")
    elif args.order == "random":
        if args.seed is None:
            raise CliError("--order random requires --seed")
        perm = list(range(g.n))
        random.Random(args.seed).shuffle(perm)
        order = tuple(perm)
    else:
        order = _parse_order(args.order, g.n)

    outcome = seq.decide_outcome(g, order)
    record = {
        "graph": source,
        "n": g.n,
        "order": list(order),
        "outcome": outcome,
        "winner": "first" if outcome == OUTCOME_N else "second",
    }
    code = EXIT_OK
    if args.check:
        if g.n > seq.ORACLE_CAP:
            raise CliError(f"--check needs n <= {seq.ORACLE_CAP}")
        oracle = seq.brute_force_outcome(g, order)
        record["check"] = "ok" if oracle == outcome else f"mismatch (oracle {oracle})"
        if oracle != outcome:
            code = EXIT_VERIFY
    _emit(record, args.format, out)
    return code


# ---- reduce ----------------------------------------------------------------

_REDUCERS = {
    "proper": lambda g, k: reductions.reduce_to_proper_k(g, k),
    "oriented": lambda g, k: reductions.reduce_to_oriented_k(g, k),
    "oriented-br": lambda g, k: reductions.reduce_to_oriented_br(g),
    "distance": lambda g, k: reductions.reduce_to_distance_2k(g, k),
}


def cmd_reduce(args, out: TextIO) -> int:
    g, source, _doc = _load_graph(args)
    k = args.k
    if args.to == "oriented-br":
        if k not in (None, 2):
            raise CliError("oriented-br is a two-color game; drop --k or pass 2")
        k = 2
    elif k is None:
        raise CliError("--k is required for this target")
    inst = _REDUCERS[args.to](g, k)
    pos = inst.position

    doc = GraphDocument(graph=pos.graph, k=pos.k, coloring=pos.coloring)
    text = format_graph_text(doc)
    map_lines = "".join(f"# map {v} {t}\n" for v, t in sorted(inst.vertex_map.items()))

    code = EXIT_OK
    verdict = None
    if args.verify:
        if g.n > reductions.VERIFY_CAP:
            raise CliError(f"--verify needs at most {reductions.VERIFY_CAP} vertices")
        report = reductions.verify_equivalence(
            Position.start(g, 1, ProperColoring()), inst)
        verdict = report
        if not report.equivalent:
            code = EXIT_VERIFY

    if args.format == "json":
        record = {
            "source": source,
            "target": args.to,
            "k": k,
            "original_vertices": g.n,
            "reduced_vertices": pos.graph.n,
            "painted": pos.painted_count,
            "vertex_map": {str(v): t for v, t in sorted(inst.vertex_map.items())},
            "graph_text": text,
        }
        if verdict is not None:
            record["equivalent"] = verdict.equivalent
            if not verdict.equivalent:
                record["reason"] = verdict.reason
        _emit(record, "json", out)
    else:
        dest = open(args.out, "w", encoding="utf-8") if args.out else out
        try:
            dest.write(text)
            dest.write(map_lines)
        finally:
            if args.out:
                dest.close()
        if verdict is not None:
            line = "verified equivalent" if verdict.equivalent else \
                f"NOT equivalent: {verdict.reason}"
            print(line, file=sys.stderr)
    return code


# ---- verify ----------------------------------------------------------------

def _suite_recursion(args) -> list[dict]:
    kmax = args.kmax or 12
    table = op.compute_tables(kmax)
    checks = []
    for klass in (op.CLASS_A, op.CLASS_B, op.CLASS_C, op.CLASS_D):
        lo = 2 if klass == op.CLASS_C else 1
        bad = [k for k in range(lo, kmax + 1)
               if games.grundy(op.build_class_position(klass, k)) != table.value(klass, k)]
        checks.append({
            "check": f"recursion-vs-search class {klass} k<={kmax}",
            "ok": not bad,
            "detail": f"mismatch at {bad}" if bad else f"{kmax - lo + 1} lengths",
        })
    return checks


def _suite_sequential(args) -> list[dict]:
    n = args.n or 6
    checks = []
    if args.exhaustive:
        if n > 8:
            raise CliError("exhaustive sequential verification is capped at n=8")
        for m in range(1, n + 1):
            g = build_family("path", m)
            bad = sum(1 for perm in itertools.permutations(range(m))
                      if seq.decide_path(perm) != seq.brute_force_outcome(g, perm))
            checks.append({
                "check": f"sequential exhaustive n={m}",
                "ok": bad == 0,
                "detail": f"{bad} mismatches" if bad else "all orders",
            })
    else:
        if args.seed is None:
            raise CliError("sampled sequential verification requires --seed")
        if n > seq.ORACLE_CAP:
            raise CliError(f"the brute-force oracle is capped at n={seq.ORACLE_CAP}")
        rng = random.Random(args.seed)
        samples = args.samples
        g = build_family("path", n)
        bad = 0
        for _ in range(samples):
            perm = list(range(n))
            rng.shuffle(perm)
            if seq.decide_path(tuple(perm)) != seq.brute_force_outcome(g, tuple(perm)):
                bad += 1
        checks.append({
            "check": f"sequential sampled n={n} x{samples}",
            "ok": bad == 0,
            "detail": f"{bad} mismatches" if bad else f"seed {args.seed}",
        })
    return checks


def _suite_reductions(args) -> list[dict]:
    n = args.n or 4
    if n > reductions.VERIFY_CAP:
        raise CliError(f"reduction verification is capped at n={reductions.VERIFY_CAP}")
    variants = [
        ("proper k=2", lambda g: reductions.reduce_to_proper_k(g, 2)),
        ("proper k=3", lambda g: reductions.reduce_to_proper_k(g, 3)),
        ("oriented k=2", lambda g: reductions.reduce_to_oriented_k(g, 2)),
        ("oriented k=3", lambda g: reductions.reduce_to_oriented_k(g, 3)),
        ("oriented-br", reductions.reduce_to_oriented_br),
        ("distance k=2", lambda g: reductions.reduce_to_distance_2k(g, 2)),
        ("distance k=3", lambda g: reductions.reduce_to_distance_2k(g, 3)),
    ]
    census = [g for m in range(1, n + 1) for g in connected_graph_census(m)]
    checks = []
    for name, make in variants:
        fails = []
        for g in census:
            rep = reductions.verify_equivalence(
                Position.start(g, 1, ProperColoring()), make(g))
            if not rep.equivalent:
                fails.append((g.n, sorted(g.edges), rep.reason))
        checks.append({
            "check": f"reduction {name} on census n<={n}",
            "ok": not fails,
            "detail": f"failed {fails[:2]}" if fails else f"{len(census)} graphs",
        })
    return checks


def _suite_closed_forms(args) -> list[dict]:
    from .rulesets import OrientedBlueRed, WeakColoring

    checks = []

    def engine(g, k, ruleset):
        return games.outcome(Position.start(g, k, ruleset))

    def add(name, instances):
        bad = []
        for g, k, ruleset in instances:
            want, _ = closed_form_outcome(ruleset, k, g)
            if want == OUTCOME_UNKNOWN:
                bad.append((g.family, "no closed form"))
            elif engine(g, k, ruleset) != want:
                bad.append((g.family, want))
        checks.append({
            "check": name,
            "ok": not bad,
            "detail": f"mismatch {bad}" if bad else f"{len(instances)} instances",
        })

    add("proper k=2 paths", [(build_family("path", n), 2, ProperColoring())
                             for n in range(2, 12)])
    add("proper k=2 cycles", [(build_family("cycle", n), 2, ProperColoring())
                              for n in range(3, 11)])
    add("weak cycles", [(build_family("cycle", n), 2, WeakColoring())
                        for n in range(3, 10)])
    add("blue-red directed cycles", [(build_family("directed_cycle", n), 2,
                                      OrientedBlueRed()) for n in range(4, 10)])
    add("distance-2 paths", [(build_family("path", n), 2, DistanceColoring(2))
                             for n in range(3, 10)])

    pairings = [("grid:3,3", OUTCOME_N), ("grid:2,3", OUTCOME_P),
                ("hypercube:3", OUTCOME_P), ("complete_binary_tree:2", OUTCOME_N)]
    bad = []
    for spec, want in pairings:
        g = parse_family_spec(spec)
        got = outcome_by_involution(g, 2)
        if got != want or engine(g, 2, ProperColoring()) != want:
            bad.append((spec, got))
    checks.append({
        "check": "involution pairings",
        "ok": not bad,
        "detail": f"mismatch {bad}" if bad else f"{len(pairings)} instances",
    })
    return checks


_SUITES = {
    "recursion": _suite_recursion,
    "sequential": _suite_sequential,
    "reductions": _suite_reductions,
    "closed-forms": _suite_closed_forms,
}


def cmd_verify(args, out: TextIO) -> int:
    checks = _SUITES[args.suite](args)
    passed = sum(1 for c in checks if c["ok"])
    if args.format == "json":
        for c in checks:
            _emit(c, "json", out)
        _emit({"suite": args.suite, "passed": passed, "total": len(checks)},
              "json", out)
    else:
        for c in checks:
            tag = "ok  " if c["ok"] else "FAIL"
            out.write(f"{tag} {c['check']} ({c['detail']})\n")
        out.write(f"{args.suite}: {passed}/{len(checks)} checks passed\n")
    return EXIT_OK if passed == len(checks) else EXIT_VERIFY


# ---- tables ----------------------------------------------------------------

def cmd_tables(args, out: TextIO) -> int:
    if args.table_cmd == "compute":
        table = op.compute_tables(args.kmax, mode=args.mode)
        op.save_table(table, args.out)
        _emit({"kmax": table.K, "mode": table.mode, "file": args.out},
              args.format, out)
        return EXIT_OK
    if args.table_cmd == "extend":
        table = op.load_table(args.table)
        table = op.extend_table(table, args.kmax, mode=args.mode)
        dest = args.out or args.table
        op.save_table(table, dest)
        _emit({"kmax": table.K, "mode": table.mode, "file": dest},
              args.format, out)
        return EXIT_OK
    if args.table_cmd == "info":
        table = op.load_table(args.table)
        record = {
            "kmax": table.K,
            "mode": table.mode,
            "max_gA": int(table.gA.max()),
            "max_gC": int(table.gC.max()),
            "max_gD": int(table.gD.max()),
            "d_p_positions": len(op.enumerate_p_positions(table, op.CLASS_D)),
        }
        _emit(record, args.format, out)
        return EXIT_OK
    if args.table_cmd == "export-csv":
        table = op.load_table(args.table)
        if args.out:
            op.export_csv(table, args.out)
            _emit({"kmax": table.K, "file": args.out}, args.format, out)
        else:
            op.export_csv(table, out)
        return EXIT_OK
    raise CliError(f"unknown tables subcommand {args.table_cmd!r}")


# ---- argument parsing -------------------------------------------------------

def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "json"), default="text",
                   help="output as key/value text or JSON lines")


def _add_graph_inputs(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", metavar="SPEC",
                   help="family shorthand: path:n cycle:n grid:a,b hypercube:d "
                        "dpath:n dcycle:n complete_binary_tree:d")
    p.add_argument("--file", metavar="PATH", help="graph text file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coloring-games",
        description="Impartial graph coloring games: solving, path-class "
                    "Grundy tables, Kayles reductions, verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="outcome and Grundy value of one position")
    _add_graph_inputs(p)
    p.add_argument("--ruleset", choices=sorted(RULESET_TOKENS), required=True)
    p.add_argument("--k", type=int, help="number of colors")
    p.add_argument("--d", type=int, help="distance bound (distance ruleset only)")
    p.add_argument("--method", choices=("auto", "closed-form", "involution", "search"),
                   default="auto", help="force one solving method")
    p.add_argument("--threads", type=int, default=1)
    _add_format(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("grundy-seq", help="stream class tables as CSV")
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--mode", choices=(op.MODE_NAIVE, op.MODE_ACCELERATED),
                   default=op.MODE_NAIVE)
    p.add_argument("--out", metavar="PATH", help="write CSV here instead of stdout")
    p.add_argument("--checkpoint", metavar="PATH",
                   help="binary table file to resume from and persist to")
    p.add_argument("--checkpoint-every", type=int, default=4096, metavar="N",
                   help="chunk size between checkpoint saves")
    _add_format(p)
    p.set_defaults(func=cmd_grundy_seq)

    p = sub.add_parser("p-positions", help="zero-value lengths in one class")
    p.add_argument("--kmax", type=int, default=8084)
    p.add_argument("--class", dest="klass",
                   choices=(op.CLASS_A, op.CLASS_B, op.CLASS_C, op.CLASS_D),
                   default=op.CLASS_D)
    p.add_argument("--mode", choices=(op.MODE_NAIVE, op.MODE_ACCELERATED),
                   default=op.MODE_NAIVE)
    _add_format(p)
    p.set_defaults(func=cmd_p_positions)

    p = sub.add_parser("sequential", help="decide the fixed-order path game")
    _add_graph_inputs(p)
    p.add_argument("--order", metavar="ORDER",
                   help="visit order: vertex ids, or 'random' with --seed")
    p.add_argument("--seed", type=int)
    p.add_argument("--check", action="store_true",
                   help="cross-check against the brute-force oracle")
    _add_format(p)
    p.set_defaults(func=cmd_sequential)

    p = sub.add_parser("reduce", help="embed Node-Kayles into a richer ruleset")
    _add_graph_inputs(p)
    p.add_argument("--from", dest="source_game", choices=("kayles",), required=True)
    p.add_argument("--to", choices=sorted(_REDUCERS), required=True)
    p.add_argument("--k", type=int, help="colors in the target game")
    p.add_argument("--out", metavar="PATH", help="write graph text here")
    p.add_argument("--verify", action="store_true",
                   help="replay both games in lockstep (small graphs only)")
    _add_format(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="run an oracle-equivalence suite")
    p.add_argument("suite", choices=sorted(_SUITES))
    p.add_argument("--n", type=int, help="size bound where the suite takes one")
    p.add_argument("--kmax", type=int, help="length bound for the recursion suite")
    p.add_argument("--exhaustive", action="store_true",
                   help="all permutations instead of samples (sequential suite)")
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--seed", type=int)
    _add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tables", help="binary table files")
    tsub = p.add_subparsers(dest="table_cmd", required=True)
    t = tsub.add_parser("compute")
    t.add_argument("--kmax", type=int, required=True)
    t.add_argument("--mode", choices=(op.MODE_NAIVE, op.MODE_ACCELERATED),
                   default=op.MODE_NAIVE)
    t.add_argument("--out", required=True)
    _add_format(t)
    t.set_defaults(func=cmd_tables)
    t = tsub.add_parser("extend")
    t.add_argument("--table", required=True)
    t.add_argument("--kmax", type=int, required=True)
    t.add_argument("--mode", choices=(op.MODE_NAIVE, op.MODE_ACCELERATED),
                   default=op.MODE_NAIVE)
    t.add_argument("--out", help="write here instead of overwriting --table")
    _add_format(t)
    t.set_defaults(func=cmd_tables)
    t = tsub.add_parser("info")
    t.add_argument("--table", required=True)
    _add_format(t)
    t.set_defaults(func=cmd_tables)
    t = tsub.add_parser("export-csv")
    t.add_argument("--table", required=True)
    t.add_argument("--out", help="CSV path; stdout when omitted")
    _add_format(t)
    t.set_defaults(func=cmd_tables)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, sys.stdout)
    except BrokenPipeError:
        # the reader went away (e.g. piped into head); quiesce stdout so the
        # interpreter does not complain at shutdown
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK
    except games.MemoryBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
