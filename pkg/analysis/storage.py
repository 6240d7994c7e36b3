import csv
import io
from dataclasses import dataclass

import numpy as np

from errors import InsufficientData
from schemes.abstract import RoutingScheme

CSV_SCHEMA: str = "# schema=storage/1"
MIN_FIT_SIZES: int = 3


@dataclass(frozen=True)
class StorageSample:
    name: str
    scheme: str
    n: int
    k: int
    seed: int
    total: int
    maximum: int
    level_sizes: tuple[int, ...] = ()

    @property
    def average(self) -> float:
        return self.total / self.n


@dataclass(frozen=True)
class ScalingFit:
    exponent: float
    """slope of log(avg entries) against log(n)"""
    intercept: float
    residual: float
    """root mean square of the log-space residuals"""
    sizes: int


@dataclass(frozen=True)
class StorageSummary:
    samples: list[StorageSample]
    fit: ScalingFit | None

    @property
    def average(self) -> float:
        return sum(s.average for s in self.samples) / len(self.samples)

    @property
    def maximum(self) -> int:
        return max(s.maximum for s in self.samples)

    @property
    def total(self) -> int:
        return sum(s.total for s in self.samples)


def sample_scheme(scheme: RoutingScheme, name: str = "") -> StorageSample:
    per_vertex = [scheme.entries(u) for u in range(scheme.n)]
    return StorageSample(
        name=name,
        scheme=scheme.tag.value,
        n=scheme.n,
        k=scheme.k,
        seed=scheme.hierarchy.seed,
        total=sum(per_vertex),
        maximum=max(per_vertex),
        level_sizes=tuple(scheme.hierarchy.level_sizes()),
    )


def fit_exponent(samples: list[StorageSample]) -> ScalingFit:
    """
    Least-squares line through (log n, log average entries), one point per sample.
    @raise InsufficientData: fewer than three distinct graph sizes
    """
    sizes = {s.n for s in samples}
    if len(sizes) < MIN_FIT_SIZES:
        raise InsufficientData(f"Scaling fit needs [{MIN_FIT_SIZES}] distinct sizes, got [{len(sizes)}]")
    x = np.log([s.n for s in samples])
    y = np.log([s.average for s in samples])
    slope, intercept = np.polyfit(x, y, 1)
    residual = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    return ScalingFit(exponent=float(slope), intercept=float(intercept), residual=residual, sizes=len(sizes))


def storage_report(samples: list[StorageSample]) -> StorageSummary:
    """summary of one or more states; the exponent is fitted only when enough sizes are present"""
    if not samples:
        raise InsufficientData("Storage report needs at least one state")
    fit = fit_exponent(samples) if len({s.n for s in samples}) >= MIN_FIT_SIZES else None
    return StorageSummary(samples=samples, fit=fit)


def storage_csv(summaries: dict[tuple[str, int], StorageSummary]) -> str:
    """per-state rows, then one `# fit` comment line per (scheme, k) group that has a fit"""
    with io.StringIO() as buffer:
        buffer.write(CSV_SCHEMA + "\n")
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["state", "scheme", "n", "k", "seed", "total_entries", "avg_entries", "max_entries",
                         "level_sizes"])
        for summary in summaries.values():
            for s in summary.samples:
                writer.writerow([s.name, s.scheme, s.n, s.k, s.seed, s.total, f"{s.average:.3f}", s.maximum,
                                 " ".join(str(size) for size in s.level_sizes)])
        for (scheme, k), summary in summaries.items():
            if summary.fit is not None:
                buffer.write(f"# fit scheme={scheme} k={k} exponent={summary.fit.exponent:.4f} "
                             f"residual={summary.fit.residual:.4f} sizes={summary.fit.sizes}\n")
        return buffer.getvalue()
