"""
Command-line entry point: python -m twoeig.cli <subcommand> ...

JSON records go to stdout, one per line; logs and summaries go to stderr.
Exit codes: 0 success, 1 contradiction (or a record that fails to replay),
2 parse / parameter error, 3 budget exhaustion (census --strict with
Undetermined records, or condense running out of steps).
"""
import argparse
import json
import sys
from typing import Any, Dict, Iterator, List, Optional

from twoeig.analysis.comborth import (
    DEFAULT_CONDENSE_STEPS,
    comb_edge_bounds_check,
    condensable_vertices,
    condense_to,
    has_two_path,
    p2_cycle_property,
    pattern_allows_comb_orth,
    quadrangular_check,
)
from twoeig.analysis.qbounds import q2_sieve
from twoeig.graphs.graph import (
    Graph,
    augmented_candles,
    complete_graph,
    cycle_graph,
    double_candle,
    path_graph,
    single_candle,
)
from twoeig.graphs.graph6 import graph6_decode, graph6_encode
from twoeig.graphs.named_graphs import named_graph
from twoeig.matrices.orthsearch import certify_q2, search_orthogonal
from twoeig.services.census import census_report
from twoeig.services.records import replay_record
from twoeig.utils.errors import (
    BudgetExceededError,
    ContradictionError,
    InvalidParameterError,
    TwoEigError,
)
from twoeig.utils.logger import get_logger
from twoeig.utils.settings import SearchParams, build_search_params

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_CONTRADICTION = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3

FAMILIES = {
    "double": double_candle,
    "single": single_candle,
    "path": path_graph,
    "cycle": cycle_graph,
    "complete": complete_graph,
}


def _emit(payload: Any) -> None:
    if hasattr(payload, "model_dump"):
        payload = payload.model_dump(mode="json")
    sys.stdout.write(json.dumps(payload) + "\n")


def _graphs(values: List[str]) -> Iterator[Graph]:
    """graph6 strings from argv, or from stdin (one per line) when none or '-' is given."""
    if not values or values == ["-"]:
        values = [line.strip() for line in sys.stdin if line.strip()]
    for value in values:
        yield graph6_decode(value)


def _search_params(args: argparse.Namespace) -> SearchParams:
    overrides: Dict[str, Any] = {
        "max_iterations": getattr(args, "max_iter", None),
        "restarts": getattr(args, "restarts", None),
        "tolerance": getattr(args, "tol", None),
        "seed": getattr(args, "seed", None),
        "polish": getattr(args, "polish", None),
        "workers": getattr(args, "workers", None),
        "census_restarts": getattr(args, "census_restarts", None),
        "escalation_restarts": getattr(args, "escalation_restarts", None),
    }
    return build_search_params(getattr(args, "config", None), overrides)


# --- Subcommands ---

def cmd_generate(args: argparse.Namespace) -> int:
    family = args.family
    if family == "named":
        graphs = [named_graph(args.k)]
    elif family in ("augmented-double", "augmented-single"):
        graphs = list(augmented_candles(int(args.k), family.split("-")[1]))
    elif family in FAMILIES:
        graphs = [FAMILIES[family](int(args.k))]
    else:
        raise InvalidParameterError(f"unknown family '{family}'")
    for g in graphs:
        sys.stdout.write(graph6_encode(g) + "\n")
    return EXIT_OK


def cmd_bound(args: argparse.Namespace) -> int:
    for g in _graphs(args.graph6):
        verdict = q2_sieve(g)
        _emit({"graph6": graph6_encode(g), **verdict.model_dump(mode="json")})
    return EXIT_OK


def cmd_certify(args: argparse.Namespace) -> int:
    params = _search_params(args)
    for g in _graphs(args.graph6):
        outcome = certify_q2(g, params)
        _emit({"graph6": graph6_encode(g), **outcome.model_dump(mode="json")})
    return EXIT_OK


def cmd_search(args: argparse.Namespace) -> int:
    params = _search_params(args)
    for g in _graphs(args.graph6):
        outcome = search_orthogonal(g, params)
        _emit({"graph6": graph6_encode(g), **outcome.model_dump(mode="json")})
    return EXIT_OK


def cmd_comborth(args: argparse.Namespace) -> int:
    for g in _graphs(args.graph6):
        two_path = has_two_path(g)
        payload = {
            "graph6": graph6_encode(g),
            "pattern_allows_comb_orth": pattern_allows_comb_orth(g),
            "p2_4": p2_cycle_property(g, allow_triangles=False) if two_path else None,
            "p2_leq4": p2_cycle_property(g, allow_triangles=True) if two_path else None,
            "quadrangular": quadrangular_check(g),
            "condensable": condensable_vertices(g),
            "bounds": comb_edge_bounds_check(g).model_dump(mode="json") if g.is_connected() else None,
        }
        _emit(payload)
    return EXIT_OK


def cmd_condense(args: argparse.Namespace) -> int:
    target = graph6_decode(args.target)
    for g in _graphs(args.graph6):
        trace = condense_to(g, target, args.max_steps)
        _emit({"graph6": graph6_encode(g), "trace": trace.model_dump(mode="json") if trace else None})
    return EXIT_OK


def cmd_census(args: argparse.Namespace) -> int:
    params = _search_params(args)
    report = census_report(args.n, params, max_edges=args.max_edges, progress=not args.quiet)
    if args.out:
        with open(args.out, "w") as handle:
            handle.write(report.model_dump_json(indent=2))
        logger.info(f"Census report written to {args.out}")
    else:
        for record in report.records:
            _emit(record)

    summary = [f"census n={report.n}: {report.total} connected graphs"]
    for bucket in report.buckets:
        summary.append(
            f"  |E|={bucket.edges:2d}  certified={bucket.Certified:4d}  "
            f"excluded={bucket.Excluded:4d}  undetermined={bucket.Undetermined:4d}"
        )
    summary.append(f"  provenance: {report.provenance}")
    if report.minimum_edges is not None:
        tags = ", ".join(e.tag or e.graph6 for e in report.certified_at_bound) or "none"
        summary.append(f"  certified at {report.minimum_edges} edges: {tags}")
    summary.append(f"  undetermined: {len(report.undetermined)}  contradictions: {len(report.contradictions)}")
    sys.stderr.write("\n".join(summary) + "\n")

    if report.contradictions:
        return EXIT_CONTRADICTION
    if args.strict and report.undetermined:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_replay(args: argparse.Namespace) -> int:
    with open(args.path) as handle:
        text = handle.read()
    try:
        document = json.loads(text)
        records = document["records"] if isinstance(document, dict) else document
    except json.JSONDecodeError:
        records = [json.loads(line) for line in text.splitlines() if line.strip()]
    failed = [r.get("graph6") for r in records if not replay_record(r)]
    _emit({"records": len(records), "failed": failed})
    return EXIT_CONTRADICTION if failed else EXIT_OK


# --- Parser ---

def _add_search_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="dotenv-style file with max-iter, restarts, tol, seed, polish")
    parser.add_argument("--max-iter", type=int, dest="max_iter")
    parser.add_argument("--restarts", type=int)
    parser.add_argument("--tol", type=float)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--polish", dest="polish", action="store_true", default=None)
    parser.add_argument("--no-polish", dest="polish", action="store_false")
    parser.add_argument("--workers", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twoeig", description="Graphs with two distinct eigenvalues.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="print graph6 of a family member")
    p.add_argument("family", help="double | single | path | cycle | complete | augmented-double | augmented-single | named")
    p.add_argument("k", help="size parameter, or the name for 'named'")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bound", help="run the q = 2 sieve")
    p.add_argument("graph6", nargs="*")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("certify", help="closed form, then search")
    p.add_argument("graph6", nargs="*")
    _add_search_flags(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("search", help="numerical orthogonal-matrix search")
    p.add_argument("graph6", nargs="*")
    _add_search_flags(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("comborth", help="combinatorial orthogonality diagnostics")
    p.add_argument("graph6", nargs="*")
    p.set_defaults(func=cmd_comborth)

    p = sub.add_parser("condense", help="search for a condensation onto a target")
    p.add_argument("graph6", nargs="*")
    p.add_argument("--target", required=True)
    p.add_argument("--max-steps", type=int, default=DEFAULT_CONDENSE_STEPS, dest="max_steps")
    p.set_defaults(func=cmd_condense)

    p = sub.add_parser("census", help="classify every connected graph on n vertices")
    p.add_argument("n", type=int)
    p.add_argument("--max-edges", type=int, dest="max_edges")
    p.add_argument("--out")
    p.add_argument("--strict", action="store_true")
    p.add_argument("--quiet", action="store_true")
    p.add_argument("--census-restarts", type=int, dest="census_restarts")
    p.add_argument("--escalation-restarts", type=int, dest="escalation_restarts")
    _add_search_flags(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("replay", help="re-verify serialized records")
    p.add_argument("path")
    p.set_defaults(func=cmd_replay)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ContradictionError as e:
        logger.error(f"{e}")
        return EXIT_CONTRADICTION
    except BudgetExceededError as e:
        logger.error(f"{e}")
        return EXIT_BUDGET
    except (TwoEigError, ValueError) as e:
        logger.error(f"{e}")
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
