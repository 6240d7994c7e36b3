import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path

from analysis.bounds import DEFAULT_KS, bounds_csv, stretch_table
from analysis.storage import StorageSummary, sample_scheme, storage_csv, storage_report
from common import GraphKind, SchemeTag, logger
from configuration.settings import Settings, load_settings
from errors import ClientError, InvariantViolation
from graph.generators import generate
from graph.graph_io import load_graph, save_graph
from graph.oracle import RoundtripOracle
from graph.shortest_paths import dijkstra
from schemes.average import EXACT_K_LIMIT
from schemes.preprocessing import preprocess_scheme
from schemes.serialization import dump_json, load_scheme, save_scheme
from simulation.harness import evaluate, run_route

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVARIANT = 2


class _Parser(argparse.ArgumentParser):
    """usage errors exit with 1; 2 is reserved for broken routing invariants"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="rtroute",
        description="Compact roundtrip routing: generate graphs, preprocess schemes, route and evaluate.",
        epilog="Settings precedence: command-line flags > --config file (key=value lines) > defaults.",
    )
    parser.add_argument("--config", help="key=value settings file")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument("-q", "--quiet", action="store_true", help="warnings and errors only")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = commands.add_parser("gen", help="generate a random graph")
    gen.add_argument("--kind", required=True, choices=[kind.value for kind in GraphKind])
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--density", type=float)
    gen.add_argument("--wmin", type=int)
    gen.add_argument("--wmax", type=int)
    gen.add_argument("--seed", type=int)
    gen.add_argument("-o", "--output", required=True)

    prep = commands.add_parser("preprocess", help="build the routing state of a scheme")
    prep.add_argument("--scheme", required=True, choices=[tag.value for tag in SchemeTag])
    prep.add_argument("--k", type=int)
    prep.add_argument("--seed", type=int)
    prep.add_argument("--budget", type=float)
    prep.add_argument("--max-retries", dest="max_retries", type=int)
    prep.add_argument("--augment", action="store_true", help="connect disconnected input through a dummy vertex")
    prep.add_argument("-i", "--input", required=True)
    prep.add_argument("-o", "--output", required=True)

    route = commands.add_parser("route", help="route one message and compare with the shortest path")
    route.add_argument("--state", required=True)
    route.add_argument("-s", "--source", type=int, required=True)
    route.add_argument("-t", "--target", type=int, required=True)
    route.add_argument("--trace", help="write the hop-by-hop decision log here")

    ev = commands.add_parser("eval", help="route many pairs both ways and report stretch and storage")
    ev.add_argument("--state", required=True)
    ev.add_argument("--pairs", help="all | sample:<count>:<seed>")
    ev.add_argument("--jobs", type=int)
    ev.add_argument("--no-progress", dest="no_progress", action="store_true")
    ev.add_argument("-o", "--output", required=True, help="report path, JSON if it ends with .json, else CSV")

    bounds = commands.add_parser("bounds", help="stretch constants of the average-storage scheme")
    bounds.add_argument("--k-list", dest="k_list", default=",".join(str(k) for k in DEFAULT_KS))
    bounds.add_argument("--exact", action="store_true", help=f"exact rationals, for k up to {EXACT_K_LIMIT}")
    bounds.add_argument("-o", "--output")

    stats = commands.add_parser("stats", help="storage statistics over a directory of states")
    stats.add_argument("--states", required=True)
    stats.add_argument("-o", "--output", required=True)
    return parser


def _write(path: str | None, content: str) -> None:
    if path is None:
        sys.stdout.write(content)
        return
    try:
        Path(path).write_text(content)
    except OSError as e:
        raise ClientError(f"Cannot write [{path}]: {repr(e)}")


def _cmd_gen(args: argparse.Namespace, settings: Settings) -> None:
    g = generate(GraphKind(args.kind), args.n, settings.density, (settings.wmin, settings.wmax), settings.seed)
    save_graph(g, args.output)
    logger.info(f"Wrote {g} to [{args.output}]")


def _cmd_preprocess(args: argparse.Namespace, settings: Settings) -> None:
    g = load_graph(args.input)
    scheme = preprocess_scheme(g, SchemeTag(args.scheme), settings.k, settings.seed, settings.budget,
                               settings.max_retries, augment=args.augment)
    save_scheme(scheme, args.output)
    logger.info(f"Wrote [{scheme.tag.value}] state to [{args.output}], total entries [{scheme.total_entries()}]")


def _cmd_route(args: argparse.Namespace, settings: Settings) -> None:
    scheme = load_scheme(args.state)
    for vertex in (args.source, args.target):
        if not 0 <= vertex < scheme.n:
            raise ClientError(f"Vertex [{vertex}] outside [0, {scheme.n})")
    distance = dijkstra(scheme.graph, args.source).dist[args.target]
    trace = run_route(
        scheme, args.source, args.target,
        hop_budget=settings.hop_budget_factor * scheme.k * scheme.n,
        distance_hint=distance if scheme.needs_distance_hint else None,
        raise_on_error=args.trace is None,
    )
    if args.trace is not None:
        _write(args.trace, "\n".join(trace.lines()) + "\n")
    if trace.error is not None:
        raise InvariantViolation(trace.error)

    print(f"length {trace.length}")
    print(f"distance {distance}")
    print(f"hops {trace.hop_count}")
    if args.source == args.target or trace.length == distance:
        print("stretch exact")
    else:
        print(f"stretch {float(Fraction(trace.length, distance)):.4f}")


def _cmd_eval(args: argparse.Namespace, settings: Settings) -> None:
    scheme = load_scheme(args.state)
    report = evaluate(
        scheme, RoundtripOracle(scheme.graph),
        selection=settings.pairs,
        jobs=settings.jobs,
        hop_budget=settings.hop_budget_factor * scheme.k * scheme.n,
        progress=not args.no_progress,
    )
    content = dump_json(report.to_json()) if args.output.endswith(".json") else report.to_csv()
    _write(args.output, content)
    summary = report.summary()
    logger.info(f"Max roundtrip stretch [{summary['max_roundtrip_stretch']:.4f}], "
                f"max one-way stretch [{summary['max_oneway_stretch']:.4f}]")
    if not report.within_bounds:
        raise InvariantViolation(f"Stretch above the guarantee of [{scheme.tag.value}]: {summary}")


def _cmd_bounds(args: argparse.Namespace, settings: Settings) -> None:
    try:
        ks = [int(k) for k in args.k_list.split(",") if k.strip()]
    except ValueError:
        raise ClientError(f"Invalid k list [{args.k_list}]")
    if not ks or min(ks) < 2:
        raise ClientError(f"Every k must be at least 2, got [{args.k_list}]")
    if args.exact and max(ks) > EXACT_K_LIMIT:
        raise ClientError(f"Exact bounds support k up to [{EXACT_K_LIMIT}], got [{max(ks)}]")
    _write(args.output, bounds_csv(stretch_table(ks, exact=args.exact)))


def _cmd_stats(args: argparse.Namespace, settings: Settings) -> None:
    paths = sorted(Path(args.states).glob("*.json"))
    if not paths:
        raise ClientError(f"No state files in [{args.states}]")
    groups: dict[tuple[str, int], list] = {}
    for path in paths:
        sample = sample_scheme(load_scheme(path), path.name)
        groups.setdefault((sample.scheme, sample.k), []).append(sample)
    summaries: dict[tuple[str, int], StorageSummary] = {key: storage_report(samples)
                                                       for key, samples in sorted(groups.items())}
    _write(args.output, storage_csv(summaries))


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO,
        format="%(levelname)s %(message)s",
    )
    try:
        settings = load_settings(
            args.config,
            k=getattr(args, "k", None),
            seed=getattr(args, "seed", None),
            budget=getattr(args, "budget", None),
            max_retries=getattr(args, "max_retries", None),
            jobs=getattr(args, "jobs", None),
            pairs=getattr(args, "pairs", None),
            density=getattr(args, "density", None),
            wmin=getattr(args, "wmin", None),
            wmax=getattr(args, "wmax", None),
        )
        match args.command:
            case "gen":
                _cmd_gen(args, settings)
            case "preprocess":
                _cmd_preprocess(args, settings)
            case "route":
                _cmd_route(args, settings)
            case "eval":
                _cmd_eval(args, settings)
            case "bounds":
                _cmd_bounds(args, settings)
            case "stats":
                _cmd_stats(args, settings)
    except ClientError as e:
        logger.error(str(e))
        return EXIT_USAGE
    except InvariantViolation as e:
        logger.error(f"Routing invariant violated: {e}")
        return EXIT_INVARIANT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
