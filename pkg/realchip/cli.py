"""
Command line front end. Every command prints JSON on stdout.

Exit codes: 0 success, 1 domain or input error, 2 violated property or theorem check, 3 enumeration budget exceeded.
"""

import argparse
import json
import logging
import sys
import typing

from realchip import builders, errors, fuzz
from realchip.divisor import Divisor, rank_certificate
from realchip.graph import invariants, serialize, validate
from realchip.metric import (
    QDivisor,
    QMetricGraph,
    is_m_metric_graph,
    is_strong_m_metric_graph,
    metric_equivalent,
    metric_invariants,
    metric_parity_signature,
    metric_rank,
    metric_real_g12,
    metric_real_rank,
    metric_totally_real_reduction,
)
from realchip.real import (
    is_m_graph,
    is_strong_m_graph,
    parity_signature,
    real_rank_certificate,
    totally_real_reduction,
)

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VIOLATION = 2
EXIT_BUDGET = 3


class UsageError(Exception):
    ...


class ArgumentParser(argparse.ArgumentParser):
    """Parser reporting usage errors with the domain error exit code."""

    def error(self, message: str) -> typing.NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _emit(data: object):
    print(json.dumps(data, indent=2, sort_keys=True))


def _load_json(path: str) -> typing.Any:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except (OSError, ValueError) as exc:
        raise UsageError(f"Cannot read JSON from {path!r}: {exc}") from None


def _parse_json_argument(raw: str) -> typing.Any:
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise UsageError(f"Argument is not valid JSON: {exc}") from None


def cmd_info(args: argparse.Namespace) -> int:
    G = validate(_load_json(args.file))
    report = invariants(G)
    _emit(
        {
            **report.as_dict(),
            "constraints": "pass" if report.constraints_hold() else "fail",
            "violations": report.violations(),
            "m_graph": is_m_graph(G),
            "strong_m_graph": is_strong_m_graph(G),
        }
    )
    return EXIT_OK if report.constraints_hold() else EXIT_VIOLATION


def cmd_rank(args: argparse.Namespace) -> int:
    G = validate(_load_json(args.file))
    D = Divisor.from_json(G, _parse_json_argument(args.divisor))
    certificate = real_rank_certificate(D) if args.real else rank_certificate(D)
    _emit({"divisor": D.to_json(), "real": args.real, **certificate.as_dict()})
    return EXIT_OK


def cmd_reduce(args: argparse.Namespace) -> int:
    G = validate(_load_json(args.file))
    D = Divisor.from_json(G, _parse_json_argument(args.divisor))
    reduced, f = totally_real_reduction(D)
    _emit(
        {
            "divisor": D.to_json(),
            "reduced": reduced.to_json(),
            "witness": f.to_json(),
            "parity": parity_signature(reduced).as_list(),
        }
    )
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    if args.family == "example1":
        G = builders.example1(args.g, args.s, args.a)
    elif args.family == "example2":
        base = builders.cycle_graph(args.size) if args.base == "cycle" else builders.banana_graph(args.size)
        G, _ = builders.example2(base, base.vertices[0])
    else:
        G = builders.random_real_graph(args.seed, args.max_vertices, args.max_edges, args.profile)
    _emit(serialize(G))
    return EXIT_OK


def cmd_subdivide(args: argparse.Namespace) -> int:
    G = validate(_load_json(args.file))
    _emit(serialize(builders.subdivide(G, args.d)))
    return EXIT_OK


def _metric_divisor(metric: QMetricGraph, raw: str) -> QDivisor:
    return QDivisor.from_json(metric, _parse_json_argument(raw))


def cmd_metric(args: argparse.Namespace) -> int:
    metric = QMetricGraph.from_json(_load_json(args.file))
    if args.metric_command == "info":
        report = metric_invariants(metric)
        _emit(
            {
                "genus": report.genus,
                "s": report.s,
                "s_prime": report.s_prime,
                "a": report.a,
                "constraints": "pass" if report.constraints_hold() else "fail",
                "m_metric_graph": is_m_metric_graph(metric),
                "strong_m_metric_graph": is_strong_m_metric_graph(metric),
            }
        )
        return EXIT_OK if report.constraints_hold() else EXIT_VIOLATION
    if args.metric_command == "equivalent":
        D1 = _metric_divisor(metric, args.divisor)
        D2 = _metric_divisor(metric, args.other)
        f = metric_equivalent(D1, D2, args.refine)
        result: dict[str, typing.Any] = {"equivalent": f is not None}
        if f is not None:
            result["slopes"] = {e: f.slopes(e) for e in metric.model.edges}
        _emit(result)
        return EXIT_OK
    if args.metric_command == "rank":
        D = _metric_divisor(metric, args.divisor)
        value = metric_real_rank(D, args.refine) if args.real else metric_rank(D, args.refine)
        _emit({"divisor": D.to_json(), "real": args.real, "rank": value})
        return EXIT_OK
    if args.metric_command == "parity":
        D = _metric_divisor(metric, args.divisor)
        _emit({"divisor": D.to_json(), "parity": metric_parity_signature(D).as_list()})
        return EXIT_OK
    if args.metric_command == "reduce":
        D = _metric_divisor(metric, args.divisor)
        reduced, f = metric_totally_real_reduction(D)
        _emit({"divisor": D.to_json(), "reduced": reduced.to_json(), "scale": f.reduction.scale})
        return EXIT_OK
    g12, value = metric_real_g12(metric)
    _emit({"g12": g12.to_json(), "rank": value})
    return EXIT_OK


def cmd_fuzz(args: argparse.Namespace) -> int:
    properties = [name.strip() for name in args.properties.split(",") if name.strip()]
    report = fuzz.run_fuzz(args.seed, args.trials, args.max_vertices, args.max_edges, properties, args.jobs)
    _emit(report.as_dict())
    return EXIT_OK if report.ok else EXIT_VIOLATION


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="realchip", description="Divisor theory on graphs with a real structure")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    info = commands.add_parser("info", help="invariants g, s, a and the constraints between them")
    info.add_argument("file", help="graph JSON file, - for stdin")
    info.set_defaults(handler=cmd_info)

    rank = commands.add_parser("rank", help="rank of a divisor with an obstruction")
    rank.add_argument("file")
    rank.add_argument("divisor", help='divisor as JSON, e.g. \'{"v1": 2}\'')
    rank.add_argument("--real", action="store_true", help="real rank of a real divisor")
    rank.set_defaults(handler=cmd_rank)

    reduce = commands.add_parser("reduce", help="totally real reduction on an M-graph")
    reduce.add_argument("file")
    reduce.add_argument("divisor")
    reduce.set_defaults(handler=cmd_reduce)

    gen = commands.add_parser("gen", help="generate a graph")
    families = gen.add_subparsers(dest="family", required=True)
    example1 = families.add_parser("example1", help="graph with prescribed (g, s, a)")
    example1.add_argument("--g", type=int, required=True)
    example1.add_argument("--s", type=int, required=True)
    example1.add_argument("--a", type=int, required=True)
    example2 = families.add_parser("example2", help="two conjugate copies hung from a real vertex")
    example2.add_argument("--base", choices=("cycle", "banana"), default="cycle")
    example2.add_argument("--size", type=int, default=3)
    random = families.add_parser("random", help="seeded random graph")
    random.add_argument("--seed", type=int, default=0)
    random.add_argument("--max-vertices", type=int, default=10)
    random.add_argument("--max-edges", type=int, default=16)
    random.add_argument("--profile", choices=builders.PROFILES, default="general")
    gen.set_defaults(handler=cmd_gen)

    subdivide = commands.add_parser("subdivide", help="split every edge into d parts")
    subdivide.add_argument("file")
    subdivide.add_argument("d", type=int)
    subdivide.set_defaults(handler=cmd_subdivide)

    metric = commands.add_parser("metric", help="metric graphs with rational lengths")
    metric_commands = metric.add_subparsers(dest="metric_command", required=True)
    for name, arity in (("info", 0), ("equivalent", 2), ("rank", 1), ("parity", 1), ("reduce", 1), ("g12", 0)):
        sub = metric_commands.add_parser(name)
        sub.add_argument("file")
        if arity >= 1:
            sub.add_argument("divisor", help="divisor as JSON list of [point, coefficient]")
        if arity == 2:
            sub.add_argument("other")
        if name in ("equivalent", "rank"):
            sub.add_argument("--refine", type=int, default=1)
        if name == "rank":
            sub.add_argument("--real", action="store_true")
    metric.set_defaults(handler=cmd_metric)

    fuzzer = commands.add_parser("fuzz", help="seeded property fuzzing")
    fuzzer.add_argument("--seed", type=int, default=0)
    fuzzer.add_argument("--trials", type=int, default=100)
    fuzzer.add_argument("--max-vertices", type=int, default=10)
    fuzzer.add_argument("--max-edges", type=int, default=16)
    fuzzer.add_argument("--properties", default="all", help=f"comma separated, from {', '.join(fuzz.PROPERTIES)}")
    fuzzer.add_argument("--jobs", type=int, default=1)
    fuzzer.set_defaults(handler=cmd_fuzz)
    return parser


def main(argv: typing.Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.handler(args)
    except errors.TheoremViolationError as exc:
        print(f"theorem check failed: {exc.__class__.__name__}: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except errors.BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (errors.RealChipError, UsageError) as exc:
        print(f"error: {exc.__class__.__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
