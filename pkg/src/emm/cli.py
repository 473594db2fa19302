"""Command-line front end.

Commands wrap one decision or construction each and report in plain
text or JSON (`--json`).  Graphs are given either as a built-in corpus
name or as a path to an edge-list file (one `beg end [label]` line per
edge, `LOOP label` for a vertex-free loop, `#` comments).

Exit codes: 0 success / exists / regular; 1 verification failure;
2 input error; 3 a proven negative (no metric, not regular); 4 search
budget exhausted before any verdict -- a negative is never reported on
a blown budget.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .corpus import CORPUS, check_entry
from .errors import BudgetExceeded
from .forms import QuadForm, root_lattice_type
from .homology import cubic_reduction, decompose, genus, homology_basis
from .multigraph import GraphError, Multigraph
from .qemm import strong_qemm
from .torelli import FanKind, torelli_regular
from .verify import verify_emm
from .zemm import decide_zemm

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT = 2
EXIT_NEGATIVE = 3
EXIT_BUDGET = 4


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


def load_graph(token: str) -> Multigraph:
    """A corpus name, or a path to an edge-list file."""
    key = token.lower()
    if key in CORPUS:
        return CORPUS[key].graph
    path = Path(token)
    if not path.exists():
        known = ", ".join(sorted(CORPUS))
        raise GraphError(f"{token!r} is neither a corpus name ({known}) "
                         f"nor an existing file")
    return Multigraph.from_edge_list(path.read_text())


def _cmd_info(args) -> int:
    g = load_graph(args.graph)
    dec = decompose(g)
    pieces = []
    for piece in dec.pieces:
        kind = "loop" if piece.m == 1 and piece.is_loop(0) else "block"
        entry = {"kind": kind, "vertices": piece.n, "edges": piece.m,
                 "genus": genus(piece)}
        if kind == "block":
            red = cubic_reduction(piece)
            entry["cubic_reduction"] = (
                "cycle" if red.is_loop else
                {"vertices": red.reduced.n, "edges": red.reduced.m})
        pieces.append(entry)
    payload = {"vertices": g.n, "edges": g.m, "genus": genus(g),
               "bridges": sorted(g.bridges), "pieces": pieces}
    lines = [f"vertices {g.n}, edges {g.m}, genus {genus(g)}",
             f"bridges: {sorted(g.bridges) or 'none'}",
             f"irreducible pieces: {len(pieces)}"]
    for i, p in enumerate(pieces):
        desc = f"  [{i}] {p['kind']}: n={p['vertices']} m={p['edges']} " \
               f"g={p['genus']}"
        if "cubic_reduction" in p:
            red = p["cubic_reduction"]
            desc += (" (cubic reduction: cycle)" if red == "cycle" else
                     f" (cubic reduction: n={red['vertices']} "
                     f"m={red['edges']})")
        lines.append(desc)
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def _cmd_zemm(args) -> int:
    g = load_graph(args.graph)
    result = decide_zemm(g, max_nodes=args.max_nodes)
    payload = result.to_json_dict()
    if result.exists:
        label = root_lattice_type(result.form).label
        payload["root_lattice"] = label
        _emit(args, payload,
              f"integral edge-minimizing metric exists; root lattice "
              f"{label}\n{json.dumps(result.form.to_json_dict(), sort_keys=True)}")
        return EXIT_OK
    _emit(args, payload, f"no integral edge-minimizing metric: "
                         f"{result.reason}")
    return EXIT_NEGATIVE


def _cmd_qemm(args) -> int:
    g = load_graph(args.graph)
    q = strong_qemm(g)
    verdict = verify_emm(g, q, kind="Q", strong=True)
    payload = {"form": q.to_json_dict(), "strong": True,
               "verified": verdict.to_json_dict()}
    if not verdict.ok:  # strong_qemm itself verifies; belt and braces
        _emit(args, payload, "constructed form failed verification")
        return EXIT_VERIFY_FAILED
    _emit(args, payload,
          "strong rational edge-minimizing metric, verified\n"
          + json.dumps(q.to_json_dict(), sort_keys=True))
    return EXIT_OK


def _cmd_verify(args) -> int:
    g = load_graph(args.graph)
    try:
        data = json.loads(Path(args.form).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise GraphError(f"cannot read form file {args.form!r}: {exc}")
    if isinstance(data, dict) and "form" in data and isinstance(
            data["form"], dict):
        data = data["form"]  # accept whole zemm/qemm reports too
    form = QuadForm.from_json_dict(data)
    kind = "Q" if args.q else "Z"
    verdict = verify_emm(g, form, kind=kind, strong=args.strong)
    word = "ok" if verdict.ok else "FAILED"
    _emit(args, verdict.to_json_dict(),
          f"verification {word}: kind={kind} strong={args.strong} "
          f"failures={verdict.to_json_dict()['failures']}")
    return EXIT_OK if verdict.ok else EXIT_VERIFY_FAILED


def _cmd_torelli(args) -> int:
    g = load_graph(args.graph)
    try:
        fan = FanKind(args.fan)
    except ValueError:
        raise GraphError(f"unknown fan {args.fan!r}; use perf, vor or cent")
    verdict = torelli_regular(g, fan, max_nodes=args.max_nodes)
    word = "regular" if verdict.regular else "NOT regular"
    _emit(args, verdict.to_json_dict(),
          f"{fan.value}: extended period map is {word} at this graph\n"
          f"{verdict.narrative}")
    return EXIT_OK if verdict.regular else EXIT_NEGATIVE


def _cmd_corpus(args) -> int:
    names = [n for n in sorted(CORPUS) if not args.filter
             or args.filter in n]
    if not names:
        raise GraphError(f"no corpus entry matches {args.filter!r}")
    failures = {}
    report = []
    for name in names:
        bad = check_entry(CORPUS[name], max_nodes=args.max_nodes)
        report.append({"name": name, "ok": not bad, "mismatches": bad})
        if bad:
            failures[name] = bad
    text = "\n".join(
        f"{r['name']:12s} {'ok' if r['ok'] else 'MISMATCH: ' + '; '.join(r['mismatches'])}"
        for r in report)
    _emit(args, {"entries": report, "ok": not failures}, text)
    return EXIT_OK if not failures else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    # The shared flags are accepted both before and after the
    # subcommand; SUPPRESS keeps a subcommand-position flag from
    # clobbering one given up front with its default.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true",
                        default=argparse.SUPPRESS,
                        help="machine-readable output (byte-deterministic)")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed for randomized sampling (reserved; all "
                             "verdict commands are deterministic)")
    common.add_argument("--max-nodes", type=int, default=argparse.SUPPRESS,
                        help="search budget; exceeding it exits 4 "
                             "(inconclusive), never a false negative")
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS,
                        help="forwarded to search internals via EMM_THREADS; "
                             "current algorithms are single-threaded")
    parser = argparse.ArgumentParser(
        prog="emm",
        parents=[common],
        description="Edge-minimizing metrics on graph cohomology and "
                    "the boundary behaviour of the period map.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", parents=[common],
                   help="genus, bridges, pieces, reductions")
    p.add_argument("graph")
    p.set_defaults(func=_cmd_info)

    p = sub.add_parser("zemm", parents=[common],
                   help="decide the integral metric")
    p.add_argument("graph")
    p.set_defaults(func=_cmd_zemm)

    p = sub.add_parser("qemm", parents=[common],
                   help="construct the strong rational metric")
    p.add_argument("graph")
    p.set_defaults(func=_cmd_qemm)

    p = sub.add_parser("verify", parents=[common],
                   help="check a form against a graph")
    p.add_argument("graph")
    p.add_argument("form", help="JSON file with a serialized form")
    ring = p.add_mutually_exclusive_group()
    ring.add_argument("--z", action="store_true", help="integral (default)")
    ring.add_argument("--q", action="store_true", help="rational")
    p.add_argument("--strong", action="store_true",
                   help="also require minimal vectors = edge functionals")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("torelli", parents=[common],
                   help="regularity of the extended period map")
    p.add_argument("graph")
    p.add_argument("--fan", required=True,
                   help="perf | vor | cent (or full fan names)")
    p.set_defaults(func=_cmd_torelli)

    p = sub.add_parser("corpus", parents=[common],
                   help="recheck built-in graph facts")
    p.add_argument("--filter", default="",
                   help="only entries whose name contains this")
    p.set_defaults(func=_cmd_corpus)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    # flags left unset anywhere (SUPPRESS) get their defaults here
    fallback = {"json": False, "seed": 0, "max_nodes": 2_000_000_000,
                "threads": int(os.environ.get("EMM_THREADS", "1"))}
    for key, value in fallback.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    os.environ["EMM_THREADS"] = str(args.threads)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (GraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
