import math
from dataclasses import dataclass

from common import logger
from errors import BudgetExceeded, ClientError
from graph.oracle import RoundtripOracle
from hierarchy.bunches import BunchSet, ClusterSet, compute_bunches, compute_clusters
from hierarchy.levels import Hierarchy, RoundtripOrder, bunch_budget, compute_pivots, log_level_sizes, sample_levels

DEFAULT_MAX_RETRIES: int = 50


@dataclass(frozen=True)
class HierarchyBuild:
    hierarchy: Hierarchy
    bunches: BunchSet
    clusters: ClusterSet
    order: RoundtripOrder
    attempts: int


def build_hierarchy(
        oracle: RoundtripOracle,
        k: int,
        seed: int,
        size_budget: float,
        max_retries: int = DEFAULT_MAX_RETRIES,
        check_centers: bool = False,
) -> HierarchyBuild:
    """
    Samples levels, computes pivots, bunches and clusters, and retries with seed+1 while the sample is unusable.

    A sample is rejected when some level A_i (i < k) is empty, when max_u |B(u)| exceeds
    `size_budget * k * n^(1/k) * ln(n+1)`, or, with `check_centers`, when some level-0 cluster C(u, A_1)
    exceeds `size_budget * n^(1/k) * ln(n+1)`.

    @param check_centers: the extra cluster-size check of the 7-stretch directed scheme
    @raise BudgetExceeded: no acceptable sample within `max_retries` attempts
    """
    g = oracle.graph
    n = g.n
    # validation
    if not 1 <= k <= math.log2(n) + 1:
        raise ClientError(f"Level count [{k}] outside [1, log2({n})+1]")
    if size_budget <= 0:
        raise ClientError(f"Size budget must be positive, got [{size_budget}]")

    order = RoundtripOrder(oracle)
    bunch_limit = bunch_budget(n, k, size_budget)
    cluster_limit = size_budget * n ** (1 / k) * math.log(n + 1)

    for attempt in range(max_retries):
        current_seed = seed + attempt
        levels = sample_levels(n, k, current_seed)
        log_level_sizes(levels, n)
        if any(not level for level in levels[:k]):
            logger.warning(f"Empty level for seed [{current_seed}], retrying")
            continue

        pivots, h, rt_pivot = compute_pivots(oracle, levels)
        hierarchy = Hierarchy(k=k, directed=g.directed, seed=current_seed, levels=levels,
                              pivots=pivots, h=h, rt_pivot=rt_pivot)
        bunches = compute_bunches(hierarchy, order)
        largest_bunch = max(bunches.size(u) for u in range(n))
        if largest_bunch > bunch_limit:
            logger.warning(f"Bunch of size [{largest_bunch}] over budget [{bunch_limit:.1f}] "
                           f"for seed [{current_seed}], retrying")
            continue

        clusters = compute_clusters(hierarchy, order)
        if check_centers:
            largest_cluster = max((len(clusters.cluster(w)) for w in range(n) if hierarchy.top_level(w) == 0),
                                  default=0)
            if largest_cluster > cluster_limit:
                logger.warning(f"Cluster of size [{largest_cluster}] over budget [{cluster_limit:.1f}] "
                               f"for seed [{current_seed}], retrying")
                continue

        logger.debug(f"Accepted hierarchy seed [{current_seed}], level sizes [{hierarchy.level_sizes()}], "
                     f"total bunch size [{bunches.total()}]")
        return HierarchyBuild(hierarchy=hierarchy, bunches=bunches, clusters=clusters, order=order,
                              attempts=attempt + 1)

    raise BudgetExceeded(f"No acceptable hierarchy for k [{k}] within [{max_retries}] seeds from [{seed}]")
