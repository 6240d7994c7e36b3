import logging
from enum import auto, Enum

logger = logging.getLogger("rtroute")

INFINITY: int = 2 ** 63 - 1  # "infinite" distance, never used in arithmetic
MAX_WEIGHT: int = 2 ** 32


class Direction(Enum):
    forward = auto()
    reverse = auto()


class GraphKind(Enum):
    ERDOS_RENYI = "erdos-renyi"
    RANDOM_GEOMETRIC = "random-geometric"
    DIRECTED = "directed-strongly-connected"


class SchemeTag(Enum):
    UNDIRECTED_RT = "undirected-rt"
    DIRECTED_7 = "directed-7"
    DIRECTED_HOP = "directed-hop"
    AVERAGE = "average"
    AVERAGE_ORACLE = "average-oracle"

    @property
    def directed(self) -> bool:
        return self in (SchemeTag.DIRECTED_7, SchemeTag.DIRECTED_HOP)


def add_lengths(*lengths: int) -> int:
    """Sum of path lengths where any "infinite" operand makes the result infinite."""
    if any(length == INFINITY for length in lengths):
        return INFINITY
    return sum(lengths)
