"""Shared helpers: instance generators and independent mini-oracles.

The oracles here deliberately avoid the package's packed elimination and
Gray-code machinery so that cross-checks are meaningful.
"""

from __future__ import annotations

import random

from hlf2d import BitMatrix, BitVector, HlfInstance, build_general_instance, build_grid_instance


def random_b(n: int, rng: random.Random) -> BitVector:
    return BitVector(n, rng.getrandbits(n))


def random_grid(side: int, rng: random.Random) -> HlfInstance:
    return build_grid_instance(side, random_b(side * side, rng))


def random_symmetric_matrix(n: int, rng: random.Random, density: float = 0.5) -> BitMatrix:
    rows = [0] * n
    for i in range(n):
        if rng.random() < density:
            rows[i] |= 1 << i
        for j in range(i + 1, n):
            if rng.random() < density:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return BitMatrix.from_row_ints(n, rows)


def random_general(n: int, rng: random.Random, density: float = 0.5) -> HlfInstance:
    return build_general_instance(random_symmetric_matrix(n, rng, density))


def span_rank_oracle(columns: list[int]) -> int:
    """Greedy column-by-column span construction; counts independent columns."""
    basis: dict[int, int] = {}
    rank = 0
    for col in columns:
        v = col
        while v:
            lead = v.bit_length() - 1
            if lead in basis:
                v ^= basis[lead]
            else:
                basis[lead] = v
                rank += 1
                break
    return rank


def in_span_oracle(columns: list[int], target: int) -> bool:
    """Is ``target`` in the GF(2) span of ``columns``?"""
    basis: dict[int, int] = {}
    for col in columns:
        v = col
        while v:
            lead = v.bit_length() - 1
            if lead in basis:
                v ^= basis[lead]
            else:
                basis[lead] = v
                break
    v = target
    while v:
        lead = v.bit_length() - 1
        if lead not in basis:
            return False
        v ^= basis[lead]
    return True


def brute_kernel(m: BitMatrix) -> set[int]:
    """All x with M x = 0 (mod 2), by direct candidate testing (n <= 14)."""
    n = m.n
    assert n <= 14
    rows = m.row_ints()
    out = set()
    for x in range(1 << n):
        if all((row & x).bit_count() % 2 == 0 for row in rows):
            out.add(x)
    return out


def column_space_closure(m: BitMatrix) -> set[int]:
    """Col(M) materialised by XOR closure over the columns (small n only)."""
    cols = [m.column(j).value for j in range(1, m.n + 1)]
    space = {0}
    frontier = {0}
    while frontier:
        nxt = set()
        for v in frontier:
            for c in cols:
                w = v ^ c
                if w not in space:
                    space.add(w)
                    nxt.add(w)
        frontier = nxt
    return space
