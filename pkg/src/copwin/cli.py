"""Command-line front end.

One binary, subcommand style.  Machine output goes to stdout and is
byte-deterministic for fixed flags and seeds; diagnostics go to stderr.
Exit codes: 0 solved/verified, 1 usage error, 2 graph parse error,
3 state budget exceeded, 4 certificate invalid.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .arena import GameVariant
from .digraph import Digraph, fingerprint, parse_edge_list
from .errors import (
    CertificateError,
    ConstructionUnavailableError,
    EdgeListParseError,
    SizeLimitError,
    StateBudgetExceededError,
    UnsupportedVariantError,
)
from .lab import (
    GAP_FIELDS,
    counterexample_family,
    enumerate_digraphs,
    gap_scan,
    random_digraph,
)
from .hardproblems import (
    REPORT_FIELDS,
    hamiltonian_cycle,
    min_equivalent_subgraph,
    min_feedback_arc_set,
    min_feedback_vertex_set,
    width_annotated_report,
)
from .reports import rows_to_csv, rows_to_jsonl
from .solver import (
    DEFAULT_STATE_BUDGET,
    Certificate,
    cop_number,
    gap,
    solve,
    verify_certificate,
)
from .width import width_by_name

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_CERT = 4

DEFAULT_SEED = 0
DEFAULT_P = 0.3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser():
    parser = _Parser(prog="copwin", description=__doc__)
    parser.add_argument("--version", action="version", version=f"copwin {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    def add_common(p, monotone=True):
        p.add_argument("--variant", default="visible",
                       help="game variant: visible | inert | invisible-fast (default visible)")
        if monotone:
            p.add_argument("--monotone", action="store_true",
                           help="restrict the cops to monotone strategies")
        p.add_argument("--state-budget", type=int, default=DEFAULT_STATE_BUDGET,
                       help=f"arena-transition budget (default {DEFAULT_STATE_BUDGET})")
        p.add_argument("--engine", default=None, help="kernel backend: c | py (default: best)")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("solve", help="decide the winner for a fixed cop count")
    add_common(p)
    p.add_argument("--cops", type=int, required=True, help="number of cops k")
    p.add_argument("graph", help="edge-list file")

    p = sub.add_parser("copnum", help="minimal winning cop count")
    add_common(p)
    p.add_argument("--emit-cert", metavar="PATH", default=None,
                   help="write the winning strategy certificate to PATH")
    p.add_argument("graph")

    p = sub.add_parser("gap", help="plain vs monotone cop number")
    add_common(p, monotone=False)
    p.add_argument("graph")

    p = sub.add_parser("width", help="game-characterized width measures")
    p.add_argument("--measure", required=True, choices=["dagwidth", "kellywidth", "dpw"])
    p.add_argument("--state-budget", type=int, default=DEFAULT_STATE_BUDGET)
    p.add_argument("--engine", default=None)
    p.add_argument("--json", action="store_true")
    p.add_argument("graph")

    p = sub.add_parser("gapscan", help="scan instances for monotonicity gaps")
    p.add_argument("--variant", default="visible")
    p.add_argument("--n", type=int, default=None, help="vertex count for generated sources")
    p.add_argument("--exhaustive", action="store_true", help="all labeled digraphs on n vertices")
    p.add_argument("--random", type=int, default=None, metavar="COUNT",
                   help="COUNT random digraphs on n vertices")
    p.add_argument("--p", type=float, default=DEFAULT_P, help=f"arc probability (default {DEFAULT_P})")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"base seed (default {DEFAULT_SEED})")
    p.add_argument("--state-budget", type=int, default=DEFAULT_STATE_BUDGET)
    p.add_argument("--jobs", type=int, default=1, help="parallel instance solves")
    p.add_argument("--format", choices=["csv", "jsonl"], default="csv")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--cert-dir", default=None,
                   help="directory to write per-record strategy certificates")
    p.add_argument("--timings", action="store_true",
                   help="fill runtime_ms (breaks byte-for-byte reproducibility)")
    p.add_argument("graphs", nargs="*", help="edge-list files (file-list source)")

    p = sub.add_parser("certify", help="verify a strategy certificate against a graph")
    p.add_argument("graph")
    p.add_argument("certificate")

    p = sub.add_parser("hard", help="exact hard-problem solvers")
    p.add_argument("problem", choices=["ham", "fvs", "fas", "mes", "report"])
    p.add_argument("--json", action="store_true")
    p.add_argument("--format", choices=["csv", "jsonl"], default="csv",
                   help="report output format (report subcommand)")
    p.add_argument("--state-budget", type=int, default=DEFAULT_STATE_BUDGET)
    p.add_argument("graphs", nargs="+", help="edge-list files")

    p = sub.add_parser("family", help="published counterexample family member")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--variant", default="visible")
    return parser


def _load_graph(path) -> Digraph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise EdgeListParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_edge_list(text)


def _variant(name) -> GameVariant:
    return GameVariant.from_name(name)


def _emit(text, out_path=None):
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_solve(args):
    d = _load_graph(args.graph)
    variant = _variant(args.variant)
    outcome = solve(d, args.cops, variant, args.monotone, args.state_budget, args.engine)
    if args.json:
        doc = {
            "winner": outcome.winner.value,
            "variant": variant.name,
            "k": args.cops,
            "monotone": args.monotone,
            "states_explored": outcome.states_explored,
            "graph_sha256": fingerprint(d),
        }
        print(json.dumps(doc, sort_keys=True))
    else:
        print(outcome.winner.value.upper())
    return EXIT_OK


def _cmd_copnum(args):
    d = _load_graph(args.graph)
    variant = _variant(args.variant)
    res = cop_number(d, variant, args.monotone, args.state_budget, args.engine)
    if args.emit_cert:
        Path(args.emit_cert).write_text(
            res.outcome.certificate.to_json_text(), encoding="utf-8"
        )
    if args.json:
        doc = {
            "cop_number": res.value,
            "variant": variant.name,
            "monotone": args.monotone,
            "states_explored": res.outcome.states_explored,
            "graph_sha256": fingerprint(d),
        }
        print(json.dumps(doc, sort_keys=True))
    else:
        print(res.value)
    return EXIT_OK


def _cmd_gap(args):
    d = _load_graph(args.graph)
    variant = _variant(args.variant)
    res = gap(d, variant, args.state_budget, args.engine)
    if args.json:
        doc = {
            "variant": variant.name,
            "cop_number": res.cop_number,
            "monotone_cop_number": res.monotone_cop_number,
            "gap": res.gap,
            "ratio": res.ratio,
            "graph_sha256": fingerprint(d),
        }
        print(json.dumps(doc, sort_keys=True))
    else:
        print(
            f"cop_number={res.cop_number} monotone_cop_number={res.monotone_cop_number} "
            f"gap={res.gap} ratio={res.ratio!r}"
        )
    return EXIT_OK


def _cmd_width(args):
    d = _load_graph(args.graph)
    report = width_by_name(args.measure)(d, args.state_budget, args.engine)
    if args.json:
        doc = {
            "measure": report.measure,
            "value": report.value,
            "variant": report.variant,
            "monotone": report.monotone,
            "offset": report.offset,
            "cop_number": report.cop_number,
            "graph_sha256": fingerprint(d),
        }
        print(json.dumps(doc, sort_keys=True))
    else:
        print(report.value)
    return EXIT_OK


def _gapscan_source(args):
    if args.exhaustive:
        if args.n is None:
            raise UsageError("--exhaustive requires --n")
        return list(enumerate_digraphs(args.n))
    if args.random is not None:
        if args.n is None:
            raise UsageError("--random requires --n")
        return [
            random_digraph(args.n, args.p, args.seed + i) for i in range(args.random)
        ]
    if args.graphs:
        return [_load_graph(path) for path in args.graphs]
    raise UsageError("gapscan needs --exhaustive, --random COUNT, or graph files")


def _cmd_gapscan(args):
    variant = _variant(args.variant)
    graphs = _gapscan_source(args)
    result = gap_scan(
        graphs,
        variant,
        state_budget=args.state_budget,
        jobs=args.jobs,
        measure_runtime=args.timings,
    )
    cert_paths = {}
    if args.cert_dir:
        cert_dir = Path(args.cert_dir)
        cert_dir.mkdir(parents=True, exist_ok=True)
        for rec in result.records:
            for which, cert in (
                ("plain", rec.certificate_plain),
                ("monotone", rec.certificate_monotone),
            ):
                if cert is None:
                    continue
                path = cert_dir / f"{rec.graph_id}.{rec.variant}.{which}.cert.json"
                path.write_text(cert.to_json_text(), encoding="utf-8")
                cert_paths[(rec.graph_id, which)] = str(path)
    if args.format == "csv":
        text = rows_to_csv(GAP_FIELDS, [r.to_row() for r in result.records])
    else:
        rows = []
        for rec in result.records:
            row = rec.to_row()
            row["certificate_plain"] = cert_paths.get((rec.graph_id, "plain"))
            row["certificate_monotone"] = cert_paths.get((rec.graph_id, "monotone"))
            row["attestation"] = rec.attestation
            rows.append(row)
        text = rows_to_jsonl(rows)
    _emit(text, args.out)
    s = result.summary
    print(
        f"scanned {s.instances} instances: {s.gaps_positive} gaps > 0, "
        f"max gap {s.max_gap}, max ratio {s.max_ratio!r}, {s.errors} errors",
        file=sys.stderr,
    )
    return EXIT_OK


def _cmd_certify(args):
    d = _load_graph(args.graph)
    try:
        text = Path(args.certificate).read_text(encoding="utf-8")
    except OSError as exc:
        raise CertificateError(f"cannot read {args.certificate}: {exc.strerror}") from None
    cert = Certificate.from_json_text(text)
    result = verify_certificate(d, cert)
    if result.valid:
        print("VALID")
        return EXIT_OK
    print("INVALID")
    print(f"certificate invalid: {result.reason}", file=sys.stderr)
    return EXIT_CERT


def _cmd_hard(args):
    if args.problem == "report":
        graphs = [_load_graph(p) for p in args.graphs]
        instances = [(fingerprint(d)[:12], d) for d in graphs]
        rows = width_annotated_report(instances, args.state_budget)
        if args.format == "csv":
            sys.stdout.write(rows_to_csv(REPORT_FIELDS, rows))
        else:
            sys.stdout.write(rows_to_jsonl(rows))
        return EXIT_OK
    solvers = {
        "ham": hamiltonian_cycle,
        "fvs": min_feedback_vertex_set,
        "fas": min_feedback_arc_set,
        "mes": min_equivalent_subgraph,
    }
    for path in args.graphs:
        d = _load_graph(path)
        sol = solvers[args.problem](d)
        if args.json:
            if sol.witness is None:
                witness = None
            elif sol.problem in ("feedback_arc_set", "minimum_equivalent_subgraph"):
                witness = [list(a) for a in sol.witness]
            else:
                witness = list(sol.witness)
            doc = {
                "problem": sol.problem,
                "value": sol.value,
                "witness": witness,
                "optimal": sol.optimal,
                "graph_sha256": fingerprint(d),
            }
            print(json.dumps(doc, sort_keys=True))
        else:
            print(_format_solution(sol))
    return EXIT_OK


def _format_solution(sol):
    if sol.witness is None:
        return f"{sol.problem} value={sol.value} witness=none"
    if sol.problem == "hamiltonian_cycle":
        witness = "->".join(map(str, sol.witness))
    elif sol.problem == "feedback_vertex_set":
        witness = ",".join(map(str, sol.witness)) or "{}"
    else:
        witness = ",".join(f"{u}->{v}" for u, v in sol.witness) or "{}"
    return f"{sol.problem} value={sol.value} witness={witness}"


def _cmd_family(args):
    variant = _variant(args.variant)
    counterexample_family(args.k, variant)
    return EXIT_OK  # pragma: no cover - family always raises for now


_COMMANDS = {
    "solve": _cmd_solve,
    "copnum": _cmd_copnum,
    "gap": _cmd_gap,
    "width": _cmd_width,
    "gapscan": _cmd_gapscan,
    "certify": _cmd_certify,
    "hard": _cmd_hard,
    "family": _cmd_family,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required (see --help)")
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EdgeListParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except StateBudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except CertificateError as exc:
        print(f"certificate error: {exc}", file=sys.stderr)
        return EXIT_CERT
    except (UnsupportedVariantError, SizeLimitError, ConstructionUnavailableError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
