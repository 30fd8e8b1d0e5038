"""Bit strings and square binary matrices packed into Python integers.

External indices are 1-based everywhere: bit 1 is the leftmost character of
the text form and lives at integer bit position 0, so whole-row operations
(XOR, AND, popcount) run at machine-word speed inside the int object.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import ValidationError

_WORD_BITS = 64


@dataclass(frozen=True, order=True)
class BitVector:
    """Immutable bit string of length ``n``.

    ``value`` holds bit i (1-based) at integer position i - 1; bits at or
    beyond position ``n`` are always zero.  Length 0 is permitted so that
    vacuous equation systems have a right-hand side.
    """

    n: int
    value: int = 0

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValidationError(f"negative bit vector length {self.n}")
        if self.value < 0 or self.value >> self.n:
            raise ValidationError("bit vector value has bits beyond its length")

    @classmethod
    def zeros(cls, n: int) -> "BitVector":
        return cls(n, 0)

    @classmethod
    def ones(cls, n: int) -> "BitVector":
        return cls(n, (1 << n) - 1)

    @classmethod
    def from_text(cls, text: str) -> "BitVector":
        """Parse a '0'/'1' string; the leftmost character is bit 1."""
        value = 0
        for pos, ch in enumerate(text):
            if ch == "1":
                value |= 1 << pos
            elif ch != "0":
                raise ValidationError(f"invalid bit character {ch!r} at position {pos + 1}")
        return cls(len(text), value)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitVector":
        """Build from an iterable of 0/1 ints, bit 1 first."""
        value = 0
        count = 0
        for bit in bits:
            if bit not in (0, 1):
                raise ValidationError(f"bit values must be 0 or 1, got {bit!r}")
            value |= bit << count
            count += 1
        return cls(count, value)

    @classmethod
    def from_indices(cls, n: int, indices: Iterable[int]) -> "BitVector":
        """Build a length-``n`` vector with the given 1-based positions set."""
        value = 0
        for i in indices:
            if not 1 <= i <= n:
                raise ValidationError(f"bit index {i} out of range [1, {n}]")
            value |= 1 << (i - 1)
        return cls(n, value)

    def bit(self, i: int) -> int:
        """Return bit ``i`` (1-based)."""
        if not 1 <= i <= self.n:
            raise ValidationError(f"bit index {i} out of range [1, {self.n}]")
        return (self.value >> (i - 1)) & 1

    def to_text(self) -> str:
        return "".join("1" if (self.value >> i) & 1 else "0" for i in range(self.n))

    def __str__(self) -> str:
        return self.to_text()

    def __len__(self) -> int:
        return self.n

    def _require_same_length(self, other: "BitVector") -> None:
        if self.n != other.n:
            raise ValidationError(f"length mismatch: {self.n} vs {other.n}")

    def __xor__(self, other: "BitVector") -> "BitVector":
        self._require_same_length(other)
        return BitVector(self.n, self.value ^ other.value)

    def __and__(self, other: "BitVector") -> "BitVector":
        self._require_same_length(other)
        return BitVector(self.n, self.value & other.value)

    def __or__(self, other: "BitVector") -> "BitVector":
        self._require_same_length(other)
        return BitVector(self.n, self.value | other.value)

    def dot(self, other: "BitVector") -> int:
        """Inner product mod 2."""
        self._require_same_length(other)
        return (self.value & other.value).bit_count() & 1

    def weight(self) -> int:
        return self.value.bit_count()

    def is_zero(self) -> bool:
        return self.value == 0

    def support(self) -> tuple[int, ...]:
        """1-based positions of the set bits, ascending."""
        out = []
        v = self.value
        while v:
            low = v & -v
            out.append(low.bit_length())
            v ^= low
        return tuple(out)

    @property
    def word_count(self) -> int:
        return (self.n + _WORD_BITS - 1) // _WORD_BITS

    def to_bytes(self) -> bytes:
        """Packed little-endian 64-bit words; bit 1 = LSB of word 0."""
        return self.value.to_bytes(self.word_count * 8, "little")

    @classmethod
    def from_bytes(cls, n: int, data: bytes) -> "BitVector":
        expected = ((n + _WORD_BITS - 1) // _WORD_BITS) * 8
        if len(data) != expected:
            raise ValidationError(f"expected {expected} bytes for length {n}, got {len(data)}")
        return cls(n, int.from_bytes(data, "little"))


@dataclass(frozen=True)
class BitMatrix:
    """Immutable square binary matrix stored as a tuple of row BitVectors."""

    n: int
    rows: tuple[BitVector, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValidationError(f"negative matrix size {self.n}")
        if len(self.rows) != self.n:
            raise ValidationError(f"expected {self.n} rows, got {len(self.rows)}")
        for i, row in enumerate(self.rows):
            if row.n != self.n:
                raise ValidationError(f"row {i + 1} has length {row.n}, expected {self.n}")

    @classmethod
    def zeros(cls, n: int) -> "BitMatrix":
        return cls(n, tuple(BitVector.zeros(n) for _ in range(n)))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, tuple(BitVector(n, 1 << i) for i in range(n)))

    @classmethod
    def from_rows(cls, rows: Sequence[BitVector]) -> "BitMatrix":
        return cls(len(rows), tuple(rows))

    @classmethod
    def from_row_ints(cls, n: int, ints: Sequence[int]) -> "BitMatrix":
        return cls(n, tuple(BitVector(n, v) for v in ints))

    @classmethod
    def from_text(cls, text: str) -> "BitMatrix":
        """Parse ``n`` lines of ``n`` characters each."""
        lines = [line for line in text.splitlines() if line.strip()]
        return cls.from_rows([BitVector.from_text(line.strip()) for line in lines])

    def row(self, i: int) -> BitVector:
        """Row ``i`` (1-based)."""
        if not 1 <= i <= self.n:
            raise ValidationError(f"row index {i} out of range [1, {self.n}]")
        return self.rows[i - 1]

    def column(self, j: int) -> BitVector:
        """Column ``j`` (1-based)."""
        if not 1 <= j <= self.n:
            raise ValidationError(f"column index {j} out of range [1, {self.n}]")
        return BitVector.from_bits(row.bit(j) for row in self.rows)

    def entry(self, i: int, j: int) -> int:
        return self.row(i).bit(j)

    def diagonal(self) -> BitVector:
        return BitVector.from_bits(self.rows[i].bit(i + 1) for i in range(self.n))

    def row_ints(self) -> list[int]:
        return [row.value for row in self.rows]

    def is_symmetric(self) -> bool:
        """Whole-matrix symmetry test (vectorised for large n)."""
        if self.n <= 64:
            return all(
                self.rows[i].bit(j + 1) == self.rows[j].bit(i + 1)
                for i in range(self.n)
                for j in range(i + 1, self.n)
            )
        dense = unpack_dense(self)
        return bool(np.array_equal(dense, dense.T))

    def to_text(self) -> str:
        return "\n".join(row.to_text() for row in self.rows)

    def __str__(self) -> str:
        return self.to_text()

    def __iter__(self) -> Iterator[BitVector]:
        return iter(self.rows)


def unpack_dense(m: BitMatrix) -> np.ndarray:
    """Expand to a dense (n, n) uint8 array; entry [i-1, j-1] = M[i, j]."""
    if m.n == 0:
        return np.zeros((0, 0), dtype=np.uint8)
    nbytes = (m.n + 7) // 8
    buf = b"".join(v.to_bytes(nbytes, "little") for v in m.row_ints())
    bits = np.unpackbits(
        np.frombuffer(buf, dtype=np.uint8).reshape(m.n, nbytes), axis=1, bitorder="little"
    )
    return bits[:, : m.n]
