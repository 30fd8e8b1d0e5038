"""Dense GF(2) linear algebra: rank, pivots, kernel, affine solve, quadratic form.

The elimination engine packs rows into 64-bit numpy words so that every row
operation is a handful of whole-word XORs; the public API speaks BitVector
and BitMatrix.  Pivoting is deterministic: columns are scanned left to
right and the first remaining row with a 1 in the column becomes the pivot.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .bits import BitMatrix, BitVector
from .errors import ValidationError

_ONE = np.uint64(1)


def _pack_ints(ints: Sequence[int], ncols: int) -> np.ndarray:
    """Pack ints into an (m, W) uint64 array, 64 bits per word, LSB first."""
    words = max(1, (ncols + 63) // 64)
    if not ints:
        return np.zeros((0, words), dtype=np.uint64)
    buf = b"".join(v.to_bytes(words * 8, "little") for v in ints)
    return np.frombuffer(buf, dtype="<u8").reshape(len(ints), words).copy()


def _unpack_int(row: np.ndarray) -> int:
    return int.from_bytes(row.astype("<u8").tobytes(), "little")


def _gauss_jordan(mat: np.ndarray, pivot_limit: int, reduce_above: bool = True) -> list[int]:
    """Row-reduce ``mat`` in place, returning the 0-based pivot columns.

    Pivots are only sought in the first ``pivot_limit`` columns; row
    operations span the full word width, so augmented columns ride along.
    With ``reduce_above`` false only the rows below each pivot are cleared
    (row echelon form, enough for rank).
    """
    m = mat.shape[0]
    pivots: list[int] = []
    pr = 0
    for c in range(pivot_limit):
        if pr == m:
            break
        w, b = divmod(c, 64)
        shift = np.uint64(b)
        below = (mat[pr:, w] >> shift) & _ONE
        nz = np.nonzero(below)[0]
        if nz.size == 0:
            continue
        src = pr + int(nz[0])
        if src != pr:
            mat[[pr, src]] = mat[[src, pr]]
        if reduce_above:
            col = (mat[:, w] >> shift) & _ONE
            col[pr] = 0
            hits = np.nonzero(col)[0]
        else:
            hits = pr + 1 + np.nonzero((mat[pr + 1 :, w] >> shift) & _ONE)[0]
        if hits.size:
            mat[hits] ^= mat[pr]
        pivots.append(c)
        pr += 1
    return pivots


@dataclass(frozen=True)
class EliminationResult:
    """Outcome of deterministic Gauss-Jordan elimination.

    ``pivots`` are 1-based column indices, ascending; ``rref`` is the reduced
    row-echelon form; ``transform`` (when recorded) satisfies
    transform @ input == rref over GF(2).
    """

    rank: int
    pivots: tuple[int, ...]
    rref: BitMatrix
    transform: BitMatrix | None = None


def rank_and_pivots(m: BitMatrix, record_transform: bool = False) -> EliminationResult:
    """Rank, pivot columns, and RREF of a square matrix over GF(2).

    The pivot columns index a maximal linearly independent subset of the
    columns of ``m`` (leftmost-first under deterministic elimination).
    """
    n = m.n
    ints = m.row_ints()
    if record_transform:
        ints = [v | (1 << (n + i)) for i, v in enumerate(ints)]
        packed = _pack_ints(ints, 2 * n)
    else:
        packed = _pack_ints(ints, n)
    pivots = _gauss_jordan(packed, pivot_limit=n)
    full = [_unpack_int(packed[i]) for i in range(n)]
    mask = (1 << n) - 1
    rref = BitMatrix.from_row_ints(n, [v & mask for v in full])
    transform = None
    if record_transform:
        transform = BitMatrix.from_row_ints(n, [v >> n for v in full])
    return EliminationResult(len(pivots), tuple(p + 1 for p in pivots), rref, transform)


def kernel_from_elimination(res: EliminationResult) -> list[BitVector]:
    """Canonical null-space basis read off an RREF.

    One basis vector per non-pivot column: that coordinate is set to 1 and
    the pivot coordinates are back-substituted.
    """
    n = res.rref.n
    pivot_set = set(res.pivots)
    rref_ints = res.rref.row_ints()
    basis = []
    for f in range(1, n + 1):
        if f in pivot_set:
            continue
        v = 1 << (f - 1)
        for i, p in enumerate(res.pivots):
            if (rref_ints[i] >> (f - 1)) & 1:
                v |= 1 << (p - 1)
        basis.append(BitVector(n, v))
    return basis


def kernel_basis(m: BitMatrix) -> list[BitVector]:
    """Basis of Ker(m) = {x : m x = 0 mod 2}, one vector per free column."""
    return kernel_from_elimination(rank_and_pivots(m))


def gf2_rank(m: BitMatrix) -> int:
    """Rank over GF(2) via forward elimination only (no RREF materialised)."""
    packed = _pack_ints(m.row_ints(), m.n)
    return len(_gauss_jordan(packed, pivot_limit=m.n, reduce_above=False))


def gf2_rank_rows(rows: Sequence[BitVector], ncols: int | None = None) -> int:
    """Rank of an arbitrary (possibly non-square) stack of row vectors."""
    if rows:
        ncols = rows[0].n
        for row in rows:
            if row.n != ncols:
                raise ValidationError("rows have mixed lengths")
    elif ncols is None:
        ncols = 0
    packed = _pack_ints([r.value for r in rows], ncols)
    return len(_gauss_jordan(packed, pivot_limit=ncols, reduce_above=False))


def solve_affine(rows: Sequence[BitVector], rhs: BitVector, n: int | None = None) -> BitVector | None:
    """One solution of ``row_j . z = rhs_j (mod 2)``, or None if inconsistent.

    Deterministic: free variables are fixed to 0 after elimination.  ``n``
    is only needed for an empty system, where every length-``n`` vector is
    a solution and the all-zero one is returned.
    """
    if len(rhs) != len(rows):
        raise ValidationError(f"need one rhs bit per row: {len(rows)} rows, {len(rhs)} bits")
    if rows:
        n = rows[0].n
        for row in rows:
            if row.n != n:
                raise ValidationError("rows have mixed lengths")
    elif n is None:
        raise ValidationError("empty system needs an explicit variable count n")
    aug = [row.value | (rhs.bit(j + 1) << n) for j, row in enumerate(rows)]
    packed = _pack_ints(aug, n + 1)
    pivots = _gauss_jordan(packed, pivot_limit=n)
    rank = len(pivots)
    aug_word, aug_bit = divmod(n, 64)
    aug_shift = np.uint64(aug_bit)
    for i in range(rank, len(rows)):
        if (packed[i, aug_word] >> aug_shift) & _ONE:
            return None
    z = 0
    for i, p in enumerate(pivots):
        if (packed[i, aug_word] >> aug_shift) & _ONE:
            z |= 1 << p
    return BitVector(n, z)


def mat_vec(m: BitMatrix, v: BitVector) -> BitVector:
    """Binary matrix-vector product: bit i of the result is parity(row_i & v)."""
    if v.n != m.n:
        raise ValidationError(f"vector length {v.n} does not match matrix size {m.n}")
    vv = v.value
    return BitVector.from_bits((row & vv).bit_count() & 1 for row in m.row_ints())


def quad_form_int(row_ints: Sequence[int], x: int) -> int:
    """x^T M x mod 4 over the integers, for bit-packed rows and vector."""
    total = 0
    v = x
    while v:
        low = v & -v
        total += (row_ints[low.bit_length() - 1] & x).bit_count()
        v ^= low
    return total & 3


def quad_form_mod4(m: BitMatrix, x: BitVector) -> int:
    """Quadratic form x^T M x mod 4 with 0/1 entries lifted to integers.

    Equals (sum_i M[i,i] x_i + 2 sum_{i<j} M[i,j] x_i x_j) mod 4 for
    symmetric M; the caller is responsible for symmetry.
    """
    if x.n != m.n:
        raise ValidationError(f"vector length {x.n} does not match matrix size {m.n}")
    return quad_form_int(m.row_ints(), x.value)


def xor_rows(m: BitMatrix, indices: Iterable[int]) -> BitVector:
    """Bitwise XOR of the selected rows (1-based indices, set semantics)."""
    acc = 0
    for i in set(indices):
        if not 1 <= i <= m.n:
            raise ValidationError(f"row index {i} out of range [1, {m.n}]")
        acc ^= m.rows[i - 1].value
    return BitVector(m.n, acc)
