import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from common import SchemeTag

CSV_SCHEMA: str = "# schema=eval/1"


@dataclass(frozen=True)
class PairResult:
    u: int
    v: int
    d_uv: int
    d_vu: int
    routed_uv: int
    routed_vu: int
    hops_uv: int
    hops_vu: int

    @property
    def stretch_uv(self) -> Fraction:
        return Fraction(self.routed_uv, self.d_uv)

    @property
    def stretch_vu(self) -> Fraction:
        return Fraction(self.routed_vu, self.d_vu)

    @property
    def roundtrip_stretch(self) -> Fraction:
        return Fraction(self.routed_uv + self.routed_vu, self.d_uv + self.d_vu)


@dataclass(frozen=True)
class EvalReport:
    scheme: SchemeTag
    seed: int
    k: int
    n: int
    pairs: list[PairResult]
    storage: list[int]
    """table entries per vertex"""
    max_label_words: int
    max_header_words: int
    accesses: int
    roundtrip_bound: Fraction | None
    oneway_bound: Fraction | None
    locality_violations: int = 0

    @property
    def max_oneway_stretch(self) -> Fraction:
        return max((max(p.stretch_uv, p.stretch_vu) for p in self.pairs), default=Fraction(1))

    @property
    def avg_oneway_stretch(self) -> float:
        if not self.pairs:
            return 1.0
        return float(sum(p.stretch_uv + p.stretch_vu for p in self.pairs) / (2 * len(self.pairs)))

    @property
    def max_roundtrip_stretch(self) -> Fraction:
        return max((p.roundtrip_stretch for p in self.pairs), default=Fraction(1))

    @property
    def avg_roundtrip_stretch(self) -> float:
        if not self.pairs:
            return 1.0
        return float(sum(p.roundtrip_stretch for p in self.pairs) / len(self.pairs))

    @property
    def total_storage(self) -> int:
        return sum(self.storage)

    @property
    def within_bounds(self) -> bool:
        roundtrip_ok = self.roundtrip_bound is None or self.max_roundtrip_stretch <= self.roundtrip_bound
        oneway_ok = self.oneway_bound is None or self.max_oneway_stretch <= self.oneway_bound
        return roundtrip_ok and oneway_ok and self.locality_violations == 0

    def summary(self) -> dict[str, Any]:
        return {
            "scheme": self.scheme.value,
            "seed": self.seed,
            "k": self.k,
            "n": self.n,
            "pairs": len(self.pairs),
            "max_oneway_stretch": float(self.max_oneway_stretch),
            "avg_oneway_stretch": self.avg_oneway_stretch,
            "max_roundtrip_stretch": float(self.max_roundtrip_stretch),
            "avg_roundtrip_stretch": self.avg_roundtrip_stretch,
            "roundtrip_bound": None if self.roundtrip_bound is None else float(self.roundtrip_bound),
            "oneway_bound": None if self.oneway_bound is None else float(self.oneway_bound),
            "within_bounds": self.within_bounds,
            "total_storage": self.total_storage,
            "avg_storage": self.total_storage / self.n,
            "max_storage": max(self.storage, default=0),
            "max_label_words": self.max_label_words,
            "max_header_words": self.max_header_words,
            "accesses": self.accesses,
            "locality_violations": self.locality_violations,
        }

    def to_json(self) -> dict[str, Any]:
        return {
            "summary": self.summary(),
            "storage": list(self.storage),
            "pairs": [
                [p.u, p.v, p.d_uv, p.d_vu, p.routed_uv, p.routed_vu, p.hops_uv, p.hops_vu]
                for p in self.pairs
            ],
        }

    def to_csv(self) -> str:
        with io.StringIO() as buffer:
            buffer.write(CSV_SCHEMA + "\n")
            for key, value in self.summary().items():
                buffer.write(f"# {key}={value}\n")
            writer = csv.writer(buffer, lineterminator="\n")
            writer.writerow(["u", "v", "d_uv", "d_vu", "routed_uv", "routed_vu",
                             "stretch_uv", "stretch_vu", "roundtrip_stretch"])
            for p in self.pairs:
                writer.writerow([p.u, p.v, p.d_uv, p.d_vu, p.routed_uv, p.routed_vu,
                                 f"{float(p.stretch_uv):.4f}", f"{float(p.stretch_vu):.4f}",
                                 f"{float(p.roundtrip_stretch):.4f}"])
            return buffer.getvalue()
