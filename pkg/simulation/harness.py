import random
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Any

from tqdm import tqdm

from common import logger
from errors import ClientError, InvariantViolation, LocalityViolation, LoopBudgetExceeded
from graph.oracle import RoundtripOracle
from graph.weighted_graph import WeightedGraph
from schemes.abstract import RoutingScheme
from simulation.report import EvalReport, PairResult
from simulation.view import AccessLog, Decision, Deliver, Forward, LocalView

HOP_BUDGET_FACTOR: int = 8


@dataclass(frozen=True)
class TraceHop:
    vertex: int
    port: int
    weight: int
    target: int


@dataclass(frozen=True)
class LoggedDecision:
    hop: int
    vertex: int
    decision: Decision


class RouteStatus(Enum):
    DELIVERED = "delivered"
    ERROR = "error"


@dataclass(frozen=True)
class RouteTrace:
    source: int
    destination: int
    hops: tuple[TraceHop, ...]
    decisions: tuple[LoggedDecision, ...]
    status: RouteStatus
    error: str | None = None
    max_header_words: int = 0
    accesses: int = 0
    locality_violation: bool = False

    @property
    def length(self) -> int:
        return sum(hop.weight for hop in self.hops)

    @property
    def hop_count(self) -> int:
        return len(self.hops)

    @property
    def vertices(self) -> list[int]:
        return [self.source] + [hop.target for hop in self.hops]

    def decisions_of(self, kind: str) -> list[dict[str, Any]]:
        return [logged.decision.values for logged in self.decisions if logged.decision.kind == kind]

    def lines(self) -> list[str]:
        """line-oriented log for debugging"""
        lines = [f"route {self.source} -> {self.destination}"]
        decisions_by_hop: dict[int, list[LoggedDecision]] = {}
        for logged in self.decisions:
            decisions_by_hop.setdefault(logged.hop, []).append(logged)
        for index in range(len(self.hops) + 1):
            for logged in decisions_by_hop.get(index, []):
                lines.append(f"  @{logged.vertex}: {logged.decision}")
            if index < len(self.hops):
                hop = self.hops[index]
                lines.append(f"{hop.vertex} --port {hop.port}, w {hop.weight}--> {hop.target}")
        lines.append(f"status {self.status.value}, length {self.length}, hops {self.hop_count}"
                     + (f", error {self.error}" if self.error else ""))
        return lines


def run_route(
        scheme: RoutingScheme,
        source: int,
        destination: int,
        hop_budget: int | None = None,
        distance_hint: int | None = None,
        raise_on_error: bool = True,
) -> RouteTrace:
    """
    Forwards one message hop by hop. At every vertex the scheme's step function gets a view holding only
    that vertex's table and label, the destination's label and the header; every read is audited.

    @param hop_budget: hops allowed before the route counts as looping, default 8·k·n
    @param distance_hint: true d(source, destination), for oracle-assisted schemes only
    @raise LoopBudgetExceeded: the budget ran out
    @raise LocalityViolation: a step read state it is not entitled to
    """
    g = scheme.graph
    budget = hop_budget if hop_budget is not None else HOP_BUDGET_FACTOR * scheme.k * g.n
    log = AccessLog()
    vertex = source
    header = None
    hops: list[TraceHop] = []
    decisions: list[LoggedDecision] = []
    max_header_words = 0

    try:
        while True:
            start = len(log)
            view = LocalView(vertex, destination, scheme.table, scheme.label, header, log, distance_hint)
            step = scheme.step(view)
            if violations := log.violations(start, vertex, destination):
                raise LocalityViolation(f"Step at [{vertex}] read foreign state [{violations[0]}]")
            decisions.extend(LoggedDecision(len(hops), vertex, decision) for decision in step.events)

            match step:
                case Deliver():
                    if vertex != destination:
                        raise InvariantViolation(f"Delivered at [{vertex}] instead of [{destination}]")
                    break
                case Forward(port=port, header=new_header):
                    if len(hops) >= budget:
                        raise LoopBudgetExceeded(f"Route [{source} -> {destination}] exceeded [{budget}] hops")
                    try:
                        arc = g.arc_at(vertex, port)
                    except ValueError as e:
                        raise InvariantViolation(f"Invalid port at [{vertex}]: {e}")
                    hops.append(TraceHop(vertex, port, arc.weight, arc.target))
                    header = new_header
                    max_header_words = max(max_header_words, getattr(header, "words", 0))
                    vertex = arc.target
    except InvariantViolation as e:
        if raise_on_error:
            raise
        logger.debug(f"Route [{source} -> {destination}] failed: {e}")
        return RouteTrace(source, destination, tuple(hops), tuple(decisions), RouteStatus.ERROR,
                          error=repr(e), max_header_words=max_header_words, accesses=len(log),
                          locality_violation=isinstance(e, LocalityViolation))

    return RouteTrace(source, destination, tuple(hops), tuple(decisions), RouteStatus.DELIVERED,
                      max_header_words=max_header_words, accesses=len(log))


def replay_trace(g: WeightedGraph, trace: RouteTrace) -> bool:
    """whether the trace is a walk of the graph that matches its ports and weights and ends where it claims"""
    vertex = trace.source
    for hop in trace.hops:
        if hop.vertex != vertex or not 0 <= hop.port < g.degree(vertex):
            return False
        arc = g.arc_at(vertex, hop.port)
        if (arc.target, arc.weight) != (hop.target, hop.weight):
            return False
        vertex = hop.target
    return trace.status is not RouteStatus.DELIVERED or vertex == trace.destination


def select_pairs(n: int, selection: str = "all", exclude: int | None = None,
                 keep: Callable[[int, int], bool] | None = None) -> list[tuple[int, int]]:
    """
    Unordered pairs u < v to evaluate, both directions are routed for each.
    @param selection: `all` or `sample:<count>:<seed>`
    @param keep: filter applied before sampling
    """
    vertices = [u for u in range(n) if u != exclude]
    all_pairs = [(u, v) for i, u in enumerate(vertices) for v in vertices[i + 1:] if keep is None or keep(u, v)]
    if selection == "all":
        return all_pairs
    match selection.split(":"):
        case ["sample", count, seed]:
            try:
                count_value, seed_value = int(count), int(seed)
            except ValueError:
                raise ClientError(f"Invalid pair sample [{selection}]")
            picked = random.Random(seed_value).sample(all_pairs, min(count_value, len(all_pairs)))
            return sorted(picked)
        case _:
            raise ClientError(f"Pair selection must be 'all' or 'sample:<count>:<seed>', got [{selection}]")


def avoids_dummy(scheme: RoutingScheme, oracle: RoundtripOracle) -> Callable[[int, int], bool] | None:
    """
    For an augmented graph, whether a pair is connected both ways without the dummy vertex:
    any path through the dummy costs at least one dummy edge, any path without it costs less.
    """
    if scheme.dummy is None:
        return None
    dummy_weight = scheme.graph.arc_at(scheme.dummy, 0).weight
    return lambda u, v: oracle.distance(u, v) < dummy_weight and oracle.distance(v, u) < dummy_weight


@dataclass(frozen=True)
class _PairOutcome:
    result: PairResult | None
    """None when a route broke the locality contract"""
    header_words: int
    accesses: int


def _route_pair(scheme: RoutingScheme, oracle: RoundtripOracle, pair: tuple[int, int],
                hop_budget: int | None) -> _PairOutcome:
    u, v = pair
    d_uv, d_vu = oracle.distance(u, v), oracle.distance(v, u)
    hint = scheme.needs_distance_hint
    there = run_route(scheme, u, v, hop_budget, d_uv if hint else None, raise_on_error=False)
    back = run_route(scheme, v, u, hop_budget, d_vu if hint else None, raise_on_error=False)
    header_words = max(there.max_header_words, back.max_header_words)
    accesses = there.accesses + back.accesses
    for trace in (there, back):
        if trace.locality_violation:
            logger.warning(f"Route [{trace.source} -> {trace.destination}] broke locality: {trace.error}")
            return _PairOutcome(None, header_words, accesses)
        if trace.status is RouteStatus.ERROR:
            raise InvariantViolation(f"Route [{trace.source} -> {trace.destination}] failed: {trace.error}")
    result = PairResult(u, v, d_uv, d_vu, there.length, back.length, there.hop_count, back.hop_count)
    return _PairOutcome(result, header_words, accesses)


def evaluate(
        scheme: RoutingScheme,
        oracle: RoundtripOracle,
        selection: str = "all",
        jobs: int = 1,
        hop_budget: int | None = None,
        progress: bool = False,
) -> EvalReport:
    """
    Routes every selected pair both ways and compares against the oracle.
    On an augmented graph, pairs through the dummy vertex are skipped. Pairs whose routes read foreign state
    are counted as locality violations and left out of the stretch figures. Results keep pair order for any `jobs`.
    @raise InvariantViolation: a route failed for any other reason
    """
    pairs = select_pairs(scheme.n, selection, scheme.dummy, avoids_dummy(scheme, oracle))
    logger.info(f"Evaluating [{scheme.tag.value}] on [{len(pairs)}] pairs with [{jobs}] workers")

    with ThreadPoolExecutor(max_workers=max(jobs, 1)) as pool:
        outcomes = list(tqdm(
            pool.map(lambda pair: _route_pair(scheme, oracle, pair, hop_budget), pairs),
            total=len(pairs),
            disable=not progress,
            desc=f"{scheme.tag.value} routes",
        ))

    violations = sum(outcome.result is None for outcome in outcomes)
    if violations:
        logger.warning(f"[{violations}] of [{len(pairs)}] pairs broke locality")
    return EvalReport(
        scheme=scheme.tag,
        seed=scheme.hierarchy.seed,
        k=scheme.k,
        n=scheme.n,
        pairs=[outcome.result for outcome in outcomes if outcome.result is not None],
        storage=[scheme.entries(u) for u in range(scheme.n)],
        max_label_words=max(scheme.label_words(u) for u in range(scheme.n)),
        max_header_words=max((outcome.header_words for outcome in outcomes), default=0),
        accesses=sum(outcome.accesses for outcome in outcomes),
        roundtrip_bound=scheme.roundtrip_bound,
        oneway_bound=scheme.oneway_bound,
        locality_violations=violations,
    )
