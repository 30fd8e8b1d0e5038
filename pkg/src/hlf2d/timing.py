"""Analytic timing models for the two-stage scheme.

All logarithms are base 2; the published lower-bound datapoint
(r0 = 9 at n = 10^6) pins that base.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ValidationError


@dataclass(frozen=True)
class TimingParams:
    """Device coefficients and instance shape for the runtime-ratio model.

    c1: seconds per unit of the stage-1 log^2(n) term.
    c2: seconds per emitted solution of the stage-2 circuit.
    c3: seconds per repetition of the compared measurement protocol.
    d:  circuit depth (1 for grid instances, where depth is constant).
    """

    c1: float
    c2: float
    c3: float
    n: int
    r: int
    d: int = 1

    def __post_init__(self) -> None:
        if min(self.c1, self.c2, self.c3) <= 0:
            raise ValidationError("device coefficients must be strictly positive")
        if self.r < 1:
            raise ValidationError(f"rank must be >= 1 for the ratio, got {self.r}")
        if self.d < 1:
            raise ValidationError(f"depth must be >= 1, got {self.d}")
        if self.n < 2:
            raise ValidationError(f"ratio model needs n >= 2, got {self.n}")


def runtime_ratio(p: TimingParams) -> float:
    """Classical-to-quantum runtime ratio.

    (c1 / c3) * log2(n)^2 / (r * 2^r * d)  +  (c2 / c3) / r.
    Strictly decreasing in r; tends to 1/r (up to constants) for large r.
    """
    log_sq = math.log2(p.n) ** 2
    solutions = 2.0 ** p.r if p.r <= 1023 else math.inf  # beyond float range: term is 0
    return p.c1 * log_sq / (p.c3 * p.r * solutions * p.d) + p.c2 / (p.c3 * p.r)


def r0_bound(n: int) -> int:
    """Least rank at which the classical scheme stops losing: ceil(2 log2 log2 n)."""
    if n < 4:
        raise ValidationError(f"rank lower bound needs n >= 4, got {n}")
    return math.ceil(2.0 * math.log2(math.log2(n)))


def fpga_time_model(dt: float, tau: float, r: int) -> float:
    """Pipelined full-enumeration wall time: dt * (tau + 2^r).

    dt is the clock period in seconds, tau the pipeline fill delay in
    cycles, and 2^r the number of input strings traversed.
    """
    if dt <= 0:
        raise ValidationError(f"clock period must be positive, got {dt}")
    if tau < 0:
        raise ValidationError(f"pipeline delay must be >= 0, got {tau}")
    if r < 0:
        raise ValidationError(f"rank must be >= 0, got {r}")
    return dt * (tau + 2**r)
