"""Command-line front end.

Data goes to stdout (or ``--out``); progress and diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import enumeration, rewiring, wiring
from .graph import MAX_ORDER

FORMATS = ("csv", "json", "dot")


class UsageError(Exception):
    pass


def parse_sequence(text: str) -> tuple[int, ...]:
    """Parse ``"5,4,4"`` into a non-increasing tuple (input order is free)."""
    try:
        vals = [int(tok) for tok in text.replace(" ", "").split(",") if tok != ""]
    except ValueError:
        raise UsageError(f"malformed degree sequence {text!r}") from None
    if not vals:
        raise UsageError("empty degree sequence")
    if any(v < 0 for v in vals):
        raise UsageError(f"negative degree in {text!r}")
    if len(vals) > MAX_ORDER:
        raise UsageError(f"sequence of length {len(vals)} exceeds supported order {MAX_ORDER}")
    return tuple(sorted(vals, reverse=True))


def _realizable(d):
    if not enumeration.is_graphical_connected(d):
        why = "odd degree sum" if sum(d) % 2 else "no simple connected realization"
        raise UsageError(f"sequence {','.join(map(str, d))} rejected: {why}")


def _fmt(x):
    return "undef" if x is None else f"{x:.5f}"


class _Progress:
    """Throttled ``done/total`` reporter on stderr."""

    def __init__(self, label, enabled=True):
        self.label = label
        self.enabled = enabled
        self.last = -1

    def __call__(self, done, total):
        if not self.enabled:
            return
        pct = 100 * done // total
        if pct != self.last and (pct % 5 == 0 or done == total):
            self.last = pct
            print(f"{self.label}: {done}/{total}", file=sys.stderr, flush=True)


def _catalog(n, args):
    return enumeration.enumerate_connected(n, args.cache_dir)


def cmd_enumerate(args):
    cat = _catalog(args.n, args)
    if args.format == "json":
        return json.dumps({"n": args.n, "count": len(cat),
                           "graphs": [g.to_graph6() for g in cat.graphs]}, indent=2) + "\n"
    if args.format == "dot":
        raise UsageError("enumerate supports csv or json output")
    return f"n,graphs\n{args.n},{len(cat)}\n"


def cmd_classes(args):
    classes = enumeration.degree_classes(_catalog(args.n, args))
    if args.format == "json":
        doc = {"n": args.n, "count": len(classes),
               "classes": [{"sequence": list(c.key), "members": len(c.members),
                            "optimal": len(c.optimal_members), "max_s": c.max_s}
                           for c in classes]}
        return json.dumps(doc, indent=2) + "\n"
    if args.format == "dot":
        raise UsageError("classes supports csv or json output")
    lines = [f"# n={args.n} classes={len(classes)}", "sequence,members,optimal,max_s"]
    for c in classes:
        lines.append(f"{'-'.join(map(str, c.key))},{len(c.members)},{len(c.optimal_members)},{c.max_s}")
    return "\n".join(lines) + "\n"


def _find_class(args):
    d = args.seq
    n = args.n if args.n is not None else len(d)
    if len(d) != n:
        raise UsageError(f"sequence has {len(d)} entries but n={n}")
    _realizable(d)
    cat = _catalog(n, args)
    for c in enumeration.degree_classes(cat):
        if c.key == d:
            return c, cat
    raise UsageError(f"no class with sequence {d}")  # pragma: no cover


def cmd_metagraph(args):
    if args.seq is None:
        raise UsageError("metagraph requires --seq")
    cls, cat = _find_class(args)
    mg = rewiring.build_meta_graph(cls, cat)
    if args.format == "json":
        return mg.to_json()
    heur = None if args.heuristic in (None, "all") else args.heuristic
    if args.format == "csv":
        rows = ["heuristic,source,target"]
        for h in rewiring.HEURISTICS if heur is None else [rewiring.Heuristic(heur)]:
            rows += [f"{h.value},{a + 1},{b + 1}" for a, b in sorted(mg.directed_edges[h])]
        return "\n".join(rows) + "\n"
    if heur is None and args.heuristic == "all":
        return "".join(mg.to_dot(h, args.alpha) for h in rewiring.HEURISTICS)
    return mg.to_dot(heur, args.alpha)


def cmd_rewire_ce(args):
    cat = _catalog(args.n, args)
    row = rewiring.count_rewiring_counterexamples(
        args.n, cat, progress=_Progress(f"rewire-ce n={args.n}", not args.quiet), jobs=args.jobs)
    if args.format == "json":
        doc = {"n": row.n, "graphs": row.num_graphs, "sequences": row.num_sequences,
               "counts": {h.value: list(row.counts[h]) for h in rewiring.HEURISTICS}}
        return json.dumps(doc, indent=2) + "\n"
    if args.format == "dot":
        raise UsageError("rewire-ce supports csv or json output")
    return (rewiring.RewiringRow.CSV_HEADER + "\n" if args.header else "") + row.csv() + "\n"


WIRE_HEADER = "sequence,classification,num_results,best_alpha_eq2,best_alpha_newman,opt_alpha_eq2,opt_alpha_newman"


def cmd_wire(args):
    if args.seq is None:
        raise UsageError("wire requires --seq")
    d = args.seq
    if args.n is not None and args.n != len(d):
        raise UsageError(f"sequence has {len(d)} entries but n={args.n}")
    _realizable(d)
    if len(d) > 10:
        raise UsageError("wire needs the class optimum, supported for n <= 10")
    cat = _catalog(len(d), args)
    cls = next(c for c in enumeration.degree_classes(cat) if c.key == d)
    opt = cat.graphs[cls.optimal_members[0]]
    out = wiring.greedy_wire_all(d, cls.max_s, guard=args.guard)
    best = out.best
    b2, bn = wiring.alpha_pair(best) if best is not None else (None, None)
    o2, on = wiring.alpha_pair(opt)
    if args.format == "json":
        doc = {"sequence": list(d), "classification": out.classification.value,
               "num_results": len(out.results),
               "best_alpha_eq2": b2, "best_alpha_newman": bn,
               "opt_alpha_eq2": o2, "opt_alpha_newman": on,
               "results": sorted(g.to_graph6() for g in out.results)}
        return json.dumps(doc, indent=2) + "\n"
    if args.format == "dot":
        raise UsageError("wire supports csv or json output")
    row = [
        "-".join(map(str, d)), out.classification.value, str(len(out.results)),
        _fmt(b2), _fmt(bn), _fmt(o2), _fmt(on),
    ]
    return WIRE_HEADER + "\n" + ",".join(row) + "\n"


def cmd_wire_ce(args):
    row = wiring.count_wiring_counterexamples(
        args.n, guard=args.guard, progress=_Progress(f"wire-ce n={args.n}", not args.quiet),
        jobs=args.jobs)
    if args.format == "json":
        doc = {"n": row.n, "sequences": row.num_sequences,
               "feasibility": row.feasibility, "optimality": row.optimality}
        return json.dumps(doc, indent=2) + "\n"
    if args.format == "dot":
        raise UsageError("wire-ce supports csv or json output")
    return (wiring.WiringRow.CSV_HEADER + "\n" if args.header else "") + row.csv() + "\n"


COMMANDS = {
    "enumerate": (cmd_enumerate, True, "count (and optionally list) connected graphs of order n"),
    "classes": (cmd_classes, True, "degree classes of order n with sizes"),
    "metagraph": (cmd_metagraph, False, "export the meta-graph of one degree class"),
    "rewire-ce": (cmd_rewire_ce, True, "rewiring counterexample counts for order n"),
    "wire": (cmd_wire, False, "run the wiring heuristic on one sequence"),
    "wire-ce": (cmd_wire_ce, True, "wiring counterexample counts for order n"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="assortlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, needs_n, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("n_pos", nargs="?", type=int, metavar="n", help="graph order")
        p.add_argument("--n", dest="n_opt", type=int, help="graph order")
        p.add_argument("--seq", help="comma-separated degree sequence")
        p.add_argument("--heuristic", choices=["A", "B", "C", "all"])
        p.add_argument("--alpha", choices=["eq2", "newman"], default="eq2",
                       help="assortativity used for DOT labels")
        p.add_argument("--guard", choices=list(wiring.GUARDS), default="ne",
                       help="tree-condition comparison used by the wiring heuristic")
        p.add_argument("--cache-dir", help="catalog cache (default: $ASSORTLAB_CACHE)")
        p.add_argument("--format", choices=FORMATS)
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument("--jobs", type=int, default=None, help="worker processes (default: all cores)")
        p.add_argument("--header", action="store_true", help="prefix table rows with a CSV header")
        p.add_argument("--quiet", action="store_true", help="suppress progress on stderr")
        p.set_defaults(needs_n=needs_n)
    return parser


def _resolve(args):
    if args.n_pos is not None and args.n_opt is not None and args.n_pos != args.n_opt:
        raise UsageError("conflicting values for n")
    args.n = args.n_opt if args.n_opt is not None else args.n_pos
    if args.n is not None and not 1 <= args.n <= MAX_ORDER:
        raise UsageError(f"n={args.n} outside supported range 1..{MAX_ORDER}")
    if args.needs_n and args.n is None:
        raise UsageError(f"{args.command} requires n")
    args.seq = parse_sequence(args.seq) if args.seq is not None else None
    if args.cache_dir is None:
        args.cache_dir = os.environ.get("ASSORTLAB_CACHE") or None
    if args.format is None:
        args.format = "dot" if args.command == "metagraph" else "csv"
    if args.jobs is not None and args.jobs < 1:
        raise UsageError("--jobs must be positive")
    return args


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args = _resolve(args)
        text = COMMANDS[args.command][0](args)
    except (UsageError, ValueError) as exc:
        print(f"assortlab: error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"assortlab: error: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
            return 1
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
