"""Independent verification: definition-level solution checks and rank bounds.

Nothing here shares code with the enumeration path: candidates are tested
directly against the defining condition q(x) = 2 z.x (mod 4) over the
kernel span, and the dependence test walks the instance graph rather than
XOR-ing packed rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .bits import BitVector
from .cla import verify_q_linearity
from .errors import ResourceCapError, ValidationError
from .gf2 import gf2_rank, gf2_rank_rows, kernel_basis, quad_form_int
from .instance import HlfInstance, build_grid_instance

BRUTE_FORCE_MAX_N = 20
SPAN_MAX_DIM = 24


def kernel_span_ints(kernel: Sequence[BitVector]) -> Iterator[int]:
    """All 2^k elements of the span of ``kernel`` as packed ints (Gray order)."""
    cols = [v.value for v in kernel]
    cur = 0
    yield cur
    for t in range(1, 1 << len(cols)):
        cur ^= cols[(t & -t).bit_length() - 1]
        yield cur


def check_solution(
    inst: HlfInstance,
    z: BitVector,
    kernel: Sequence[BitVector] | None = None,
    span_cap: int = SPAN_MAX_DIM,
) -> bool:
    """Does ``z`` satisfy 2 (z . x) = q(x) (mod 4) for every x in Ker(A)?

    The kernel span is enumerated exhaustively up to dimension ``span_cap``;
    beyond that the check falls back to the basis alone, which is only
    valid once the linearity of q on the kernel has been confirmed.
    """
    if z.n != inst.n:
        raise ValidationError(f"candidate length {z.n} does not match n={inst.n}")
    if kernel is None:
        kernel = kernel_basis(inst.a)
    rows = inst.a.row_ints()
    zv = z.value
    if len(kernel) > span_cap:
        if not verify_q_linearity(inst, tuple(kernel)):
            raise ResourceCapError(
                f"kernel dimension {len(kernel)} exceeds the span cap {span_cap} "
                "and q is not linear on the kernel; cannot certify"
            )
        candidates: Iterable[int] = (v.value for v in kernel)
    else:
        candidates = kernel_span_ints(kernel)
    for x in candidates:
        if 2 * ((zv & x).bit_count() & 1) != quad_form_int(rows, x):
            return False
    return True


def brute_force_solutions(inst: HlfInstance, max_n: int = BRUTE_FORCE_MAX_N) -> set[BitVector]:
    """Every z in {0,1}^n satisfying the defining condition, by direct test.

    Loops over all 2^n candidates against all kernel-span elements, so it
    is independent of the pivot-column enumeration it cross-checks.
    """
    n = inst.n
    if n > max_n:
        raise ResourceCapError(f"brute force capped at n <= {max_n}, instance has n = {n}")
    kernel = kernel_basis(inst.a)
    if n + len(kernel) > 28:
        raise ResourceCapError(
            f"kernel dimension {len(kernel)} makes the 2^{n + len(kernel)} "
            "candidate-times-span loop infeasible"
        )
    rows = inst.a.row_ints()
    candidates = np.arange(1 << n, dtype=np.uint64)
    keep = np.ones(1 << n, dtype=bool)
    for x in kernel_span_ints(kernel):
        q = quad_form_int(rows, x)
        if q % 2:
            keep[:] = False
            break
        if x == 0:
            continue
        parity = np.bitwise_count(candidates & np.uint64(x)) & np.uint8(1)
        keep &= parity == np.uint8(q >> 1)
    return {BitVector(n, int(v)) for v in candidates[keep]}


def strict_dependence(inst: HlfInstance, vertices: Iterable[int]) -> bool:
    """Do the rows named by ``vertices`` XOR to the zero vector?

    Decided graph-side: collect the connected set of the target vertices
    (self-loops from the diagonal included) and demand that every connected
    vertex meets the target set through an even number of edges.
    """
    target = set(vertices)
    for v in target:
        if not 1 <= v <= inst.n:
            raise ValidationError(f"vertex {v} out of range [1, {inst.n}]")
    neighbours = {v: set(inst.a.rows[v - 1].support()) for v in target}
    connected: set[int] = set()
    for nbrs in neighbours.values():
        connected |= nbrs
    for l in connected:
        degree = sum(1 for v in target if l in neighbours[v])
        if degree % 2:
            return False
    return True


@dataclass(frozen=True)
class RankBoundReport:
    """Grid rank located within its guaranteed interval [n - N, n]."""

    r: int
    lower: int
    within: bool
    first_rows_independent: bool


def rank_bound_check(side: int, b: BitVector | str) -> RankBoundReport:
    """Rank of the side x side grid instance against the n - N lower bound.

    ``first_rows_independent`` confirms that the rows of the first N - 1
    grid rows (vertices 1 .. n - N) are linearly independent, which holds
    for every diagonal string.
    """
    if side < 2:
        raise ValidationError(f"rank bound check needs side >= 2, got {side}")
    inst = build_grid_instance(side, b)
    n = inst.n
    lower = n - side
    r = gf2_rank(inst.a)
    sub_rank = gf2_rank_rows(inst.a.rows[:lower])
    return RankBoundReport(
        r=r,
        lower=lower,
        within=lower <= r <= n,
        first_rows_independent=sub_rank == lower,
    )
