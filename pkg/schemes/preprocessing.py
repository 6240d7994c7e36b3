from common import SchemeTag, logger
from errors import DisconnectedInput
from graph.oracle import RoundtripOracle
from graph.weighted_graph import WeightedGraph, augment_with_dummy, is_connected
from hierarchy.builder import DEFAULT_MAX_RETRIES, build_hierarchy
from schemes.abstract import RoutingScheme
from schemes.average import preprocess_avg
from schemes.directed_hop import preprocess_hop
from schemes.directed_seven import preprocess7
from schemes.undirected_rt import preprocess


def preprocess_scheme(
        g: WeightedGraph,
        tag: SchemeTag,
        k: int,
        seed: int,
        size_budget: float,
        max_retries: int = DEFAULT_MAX_RETRIES,
        augment: bool = False,
) -> RoutingScheme:
    """
    Builds the hierarchy and the routing state of one scheme.
    The 7-stretch scheme always runs on three levels and checks level-0 cluster sizes as well.

    @param augment: connect a disconnected graph through a dummy vertex instead of rejecting it
    @raise DisconnectedInput: the graph is not (strongly) connected and `augment` is off
    """
    dummy = None
    if not is_connected(g):
        if not augment:
            raise DisconnectedInput("Graph is not connected; use augmentation to route on it")
        g, dummy = augment_with_dummy(g)

    if tag is SchemeTag.DIRECTED_7 and k != 3:
        logger.warning(f"The 7-stretch scheme uses k = 3, ignoring k [{k}]")
        k = 3

    oracle = RoundtripOracle(g)
    build = build_hierarchy(oracle, k, seed, size_budget, max_retries, check_centers=tag is SchemeTag.DIRECTED_7)
    logger.info(f"Hierarchy seed [{build.hierarchy.seed}] accepted after [{build.attempts}] attempts")

    match tag:
        case SchemeTag.UNDIRECTED_RT:
            return preprocess(oracle, build, dummy)
        case SchemeTag.DIRECTED_7:
            return preprocess7(oracle, build, dummy)
        case SchemeTag.DIRECTED_HOP:
            return preprocess_hop(oracle, build, dummy)
        case SchemeTag.AVERAGE:
            return preprocess_avg(oracle, build, dummy)
        case SchemeTag.AVERAGE_ORACLE:
            return preprocess_avg(oracle, build, dummy, with_distance_hint=True)
