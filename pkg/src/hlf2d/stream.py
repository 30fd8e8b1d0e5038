"""Streaming enumeration of all 2^r solutions in Gray-code order.

Solutions are z(t) = z_a XOR the pivot columns selected by gray(t), for
t = 0 .. 2^r - 1 with gray(t) = t ^ (t >> 1); consecutive outputs differ
by exactly one column XOR.  Two implementations produce identical results:
a per-item generator (any n) and a word-packed numpy kernel used for bulk
digests, materialisation, and binary output.  Chunks over disjoint index
ranges are independent, so callers may fan them out across workers and
merge by set union or digest combination.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import IO, Iterator

import numpy as np

from .bits import BitVector
from .cla import ClaSummary
from .errors import ResourceCapError, ValidationError
from .instance import HlfInstance

DEFAULT_MAX_RANK = 34
MAX_RANK_ENV_VAR = "HLF_MAX_R"

_U64_MASK = (1 << 64) - 1
_MIX_SEED = 0x9E3779B97F4A7C15


def effective_max_rank(explicit: int | None = None) -> int:
    """Resolve the enumeration rank cap: explicit arg, then HLF_MAX_R, then default."""
    if explicit is not None:
        return explicit
    env = os.environ.get(MAX_RANK_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValidationError(f"{MAX_RANK_ENV_VAR}={env!r} is not an integer") from None
    return DEFAULT_MAX_RANK


def _require_enumerable(r: int, max_rank: int | None) -> None:
    cap = effective_max_rank(max_rank)
    if r > cap:
        raise ResourceCapError(
            f"rank {r} exceeds the enumeration cap {cap} (2^{r} solutions); "
            f"raise it with max_rank=/--cap or the {MAX_RANK_ENV_VAR} environment variable"
        )


def _check_range(r: int, start: int, count: int) -> None:
    total = 1 << r
    if start < 0 or count < 0 or start + count > total:
        raise ValidationError(
            f"chunk [{start}, {start + count}) out of bounds for 2^{r} solutions"
        )


def pivot_column_ints(inst: HlfInstance, cla: ClaSummary) -> list[int]:
    """Pivot columns of A as packed ints (rows, since A is symmetric)."""
    return [inst.a.rows[p - 1].value for p in cla.pivots]


def _iter_ints(inst: HlfInstance, cla: ClaSummary, start: int, count: int) -> Iterator[tuple[int, int]]:
    """Yield (index, packed solution) over the index range, seeded in O(r)."""
    if count == 0:
        return
    cols = pivot_column_ints(inst, cla)
    cur = cla.z_a.value
    gray = start ^ (start >> 1)
    for j in range(cla.r):
        if (gray >> j) & 1:
            cur ^= cols[j]
    yield start, cur
    for t in range(start + 1, start + count):
        cur ^= cols[(t & -t).bit_length() - 1]
        yield t, cur


def enumerate_chunk(
    inst: HlfInstance,
    cla: ClaSummary,
    start: int,
    count: int,
    max_rank: int | None = None,
) -> Iterator[tuple[int, BitVector]]:
    """Stream the (index, solution) pairs with indices in [start, start + count)."""
    _require_enumerable(cla.r, max_rank)
    _check_range(cla.r, start, count)
    n = inst.n
    return ((t, BitVector(n, v)) for t, v in _iter_ints(inst, cla, start, count))


def enumerate_solutions(
    inst: HlfInstance, cla: ClaSummary, max_rank: int | None = None
) -> Iterator[tuple[int, BitVector]]:
    """Stream all 2^r (index, solution) pairs in Gray-code order."""
    return enumerate_chunk(inst, cla, 0, 1 << cla.r, max_rank=max_rank)


def solution_set(inst: HlfInstance, cla: ClaSummary, max_rank: int | None = None) -> set[BitVector]:
    """Materialise the full solution set (small ranks only)."""
    return {z for _, z in enumerate_solutions(inst, cla, max_rank=max_rank)}


def partition_ranges(total: int, chunks: int) -> list[tuple[int, int]]:
    """Split [0, total) into ``chunks`` contiguous near-equal (start, count) ranges."""
    if chunks < 1:
        raise ValidationError(f"chunk count must be >= 1, got {chunks}")
    base, extra = divmod(total, chunks)
    ranges = []
    start = 0
    for k in range(chunks):
        count = base + (1 if k < extra else 0)
        ranges.append((start, count))
        start += count
    return ranges


# ---------------------------------------------------------------------------
# Word-packed bulk kernel


def _int_to_words(v: int, words: int) -> np.ndarray:
    return np.frombuffer(v.to_bytes(words * 8, "little"), dtype="<u8").copy()


def _word_count(n: int) -> int:
    return max(1, (n + 63) // 64)


def solution_words(
    inst: HlfInstance,
    cla: ClaSummary,
    start: int = 0,
    count: int | None = None,
    max_rank: int | None = None,
) -> np.ndarray:
    """Solutions for an index range as packed uint64 words.

    Shape (count,) when n <= 64, else (count, ceil(n/64)); bit 1 of a
    solution is the least significant bit of word 0.
    """
    _require_enumerable(cla.r, max_rank)
    if count is None:
        count = (1 << cla.r) - start
    _check_range(cla.r, start, count)
    cols = pivot_column_ints(inst, cla)
    words = _word_count(inst.n)
    t = np.arange(start, start + count, dtype=np.uint64)
    gray = t ^ (t >> np.uint64(1))
    if words == 1:
        out = np.full(count, np.uint64(cla.z_a.value), dtype=np.uint64)
        for j, col in enumerate(cols):
            out ^= ((gray >> np.uint64(j)) & np.uint64(1)) * np.uint64(col)
        return out
    out = np.empty((count, words), dtype=np.uint64)
    out[:] = _int_to_words(cla.z_a.value, words)
    for j, col in enumerate(cols):
        sel = ((gray >> np.uint64(j)) & np.uint64(1)).astype(bool)
        out[sel] ^= _int_to_words(col, words)
    return out


# ---------------------------------------------------------------------------
# Checksum digests


def _mix64_int(x: int) -> int:
    x = (x + _MIX_SEED) & _U64_MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _U64_MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _U64_MASK
    return x ^ (x >> 31)


def _mix64_arr(x: np.ndarray) -> np.ndarray:
    x = x + np.uint64(_MIX_SEED)
    x = (x ^ (x >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    x = (x ^ (x >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return x ^ (x >> np.uint64(31))


@dataclass(frozen=True)
class Digest:
    """Order-independent XOR-and-count summary of a solution stream.

    ``xor_bits`` is the plain XOR of the packed solutions (over a complete
    solution set this cancels to zero whenever r >= 2, which is why the
    ``mixed`` lane, an XOR of per-solution 64-bit hashes, is carried as
    well: it certifies content, not just cardinality).  Both lanes combine
    associatively, so chunk digests merge in any order.
    """

    count: int
    xor_bits: int
    mixed: int

    def merge(self, other: "Digest") -> "Digest":
        return Digest(self.count + other.count, self.xor_bits ^ other.xor_bits, self.mixed ^ other.mixed)

    @classmethod
    def combine(cls, digests: list["Digest"]) -> "Digest":
        acc = cls(0, 0, 0)
        for d in digests:
            acc = acc.merge(d)
        return acc

    def __str__(self) -> str:
        return f"count={self.count} xor={self.xor_bits:x} mix={self.mixed:016x}"


def _hash_solution_int(v: int, n: int) -> int:
    h = n
    for _ in range(_word_count(n)):
        h = _mix64_int(h ^ (v & _U64_MASK))
        v >>= 64
    return h


def digest_chunk(
    inst: HlfInstance,
    cla: ClaSummary,
    start: int,
    count: int,
    max_rank: int | None = None,
    block: int = 1 << 16,
) -> Digest:
    """Fold one index range to its checksum without materialising solutions."""
    _require_enumerable(cla.r, max_rank)
    _check_range(cla.r, start, count)
    n = inst.n
    words = _word_count(n)
    xor_acc = 0
    mix_acc = np.uint64(0)
    done = 0
    while done < count:
        span = min(block, count - done)
        chunk = solution_words(inst, cla, start + done, span, max_rank=max_rank)
        if words == 1:
            xor_acc ^= int(np.bitwise_xor.reduce(chunk))
            h = _mix64_arr(np.uint64(n) ^ chunk)
        else:
            h = np.full(span, np.uint64(n), dtype=np.uint64)
            for w in range(words):
                col = chunk[:, w]
                xor_word = int(np.bitwise_xor.reduce(col))
                xor_acc ^= xor_word << (64 * w)
                h = _mix64_arr(h ^ col)
        mix_acc ^= np.bitwise_xor.reduce(h)
        done += span
    return Digest(count, xor_acc, int(mix_acc))


def digest_solutions(
    inst: HlfInstance,
    cla: ClaSummary,
    chunks: int = 1,
    max_rank: int | None = None,
    max_workers: int | None = None,
) -> Digest:
    """Checksum of the full stream, optionally fanned out over chunk workers.

    The chunk ranges partition [0, 2^r), so the merged digest is identical
    for every chunk count.
    """
    _require_enumerable(cla.r, max_rank)
    ranges = partition_ranges(1 << cla.r, chunks)
    if chunks == 1:
        (start, count), = ranges
        return digest_chunk(inst, cla, start, count, max_rank=max_rank)
    with ThreadPoolExecutor(max_workers=max_workers or chunks) as pool:
        futures = [
            pool.submit(digest_chunk, inst, cla, start, count, max_rank)
            for start, count in ranges
        ]
        return Digest.combine([f.result() for f in futures])


# ---------------------------------------------------------------------------
# Writers


def write_text(
    inst: HlfInstance,
    cla: ClaSummary,
    out: IO[str],
    max_rank: int | None = None,
) -> int:
    """Write one solution bitstring per line in stream order; returns the count."""
    written = 0
    for _, z in enumerate_solutions(inst, cla, max_rank=max_rank):
        out.write(z.to_text())
        out.write("\n")
        written += 1
    return written


def write_binary(
    inst: HlfInstance,
    cla: ClaSummary,
    out: IO[bytes],
    max_rank: int | None = None,
    block: int = 1 << 16,
) -> int:
    """Write packed little-endian 64-bit words per solution; returns the count.

    Bit 1 of each solution is the least significant bit of its word 0.
    """
    _require_enumerable(cla.r, max_rank)
    total = 1 << cla.r
    done = 0
    while done < total:
        span = min(block, total - done)
        chunk = solution_words(inst, cla, done, span, max_rank=max_rank)
        out.write(chunk.astype("<u8").tobytes())
        done += span
    return total
