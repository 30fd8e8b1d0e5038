"""Benchmark harness: timed checksum enumeration with chunk fan-out.

The timed region covers only the enumeration fold (stage-1 linear algebra
runs outside the clock); the digest doubles as a determinism check across
chunk counts.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Sequence

from .cla import ClaSummary, run_cla
from .instance import HlfInstance
from .stream import Digest, digest_solutions

CSV_HEADER = "label,n,r,chunks,solutions,seconds,solutions_per_sec,xor,mix"


@dataclass(frozen=True)
class BenchRecord:
    label: str
    n: int
    r: int
    chunks: int
    solutions: int
    seconds: float
    digest: Digest

    @property
    def solutions_per_sec(self) -> float:
        return self.solutions / self.seconds if self.seconds > 0 else float("inf")

    def csv_row(self) -> str:
        return (
            f"{self.label},{self.n},{self.r},{self.chunks},{self.solutions},"
            f"{self.seconds:.6f},{self.solutions_per_sec:.1f},"
            f"{self.digest.xor_bits:x},{self.digest.mixed:016x}"
        )


def run_bench(
    inst: HlfInstance,
    chunk_counts: Sequence[int] = (1,),
    repeat: int = 1,
    max_rank: int | None = None,
    cla: ClaSummary | None = None,
) -> list[BenchRecord]:
    """Time the checksum fold for each chunk count; best of ``repeat`` runs."""
    summary = cla if cla is not None else run_cla(inst)
    label = inst.label()
    records = []
    for chunks in chunk_counts:
        best: float | None = None
        digest: Digest | None = None
        for _ in range(max(1, repeat)):
            t0 = time.perf_counter()
            digest = digest_solutions(inst, summary, chunks=chunks, max_rank=max_rank)
            elapsed = time.perf_counter() - t0
            best = elapsed if best is None else min(best, elapsed)
        assert best is not None and digest is not None
        records.append(
            BenchRecord(
                label=label,
                n=inst.n,
                r=summary.r,
                chunks=chunks,
                solutions=digest.count,
                seconds=best,
                digest=digest,
            )
        )
    return records


def records_csv(records: Sequence[BenchRecord]) -> str:
    return "\n".join([CSV_HEADER, *(rec.csv_row() for rec in records)]) + "\n"


def save_bench_figure(records: Sequence[BenchRecord], path: str) -> None:
    """Bar chart of enumeration throughput per chunk count."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    labels = [str(rec.chunks) for rec in records]
    ax.bar(range(len(records)), [rec.solutions_per_sec for rec in records])
    ax.set_xticks(range(len(records)), labels)
    ax.set_xlabel("enumeration chunks")
    ax.set_ylabel("solutions / second")
    if records:
        ax.set_title(f"{records[0].label} (2^{records[0].r} solutions)")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
