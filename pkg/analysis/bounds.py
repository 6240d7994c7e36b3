import csv
import io
from dataclasses import dataclass
from fractions import Fraction

from schemes.average import stretch_bound

CSV_SCHEMA: str = "# schema=bounds/1"
DEFAULT_KS: tuple[int, ...] = (4, 6, 8, 10, 20, 100)


@dataclass(frozen=True)
class BoundRow:
    k: int
    stretch: Fraction | float

    @property
    def ratio(self) -> float:
        return float(self.stretch) / self.k


def stretch_table(ks: list[int] | tuple[int, ...] = DEFAULT_KS, exact: bool = False) -> list[BoundRow]:
    """
    stretch constant of the average-storage scheme and its ratio to k for every k
    floating point by default; `exact=True` uses rationals and only accepts k up to `EXACT_K_LIMIT`
    """
    return [BoundRow(k, stretch_bound(k, exact)) for k in ks]


def bounds_csv(rows: list[BoundRow]) -> str:
    """rows as `k,stretch,stretch_over_k` with one and three decimals"""
    with io.StringIO() as buffer:
        buffer.write(CSV_SCHEMA + "\n")
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["k", "stretch", "stretch_over_k"])
        for row in rows:
            writer.writerow([row.k, f"{float(row.stretch):.1f}", f"{row.ratio:.3f}"])
        return buffer.getvalue()
