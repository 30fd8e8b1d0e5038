"""Distribution-grid images of solution sets.

A length-n solution string maps to one cell: its first ceil(n/2) bits,
read most-significant-first, give the column; the remaining floor(n/2)
bits give the row.  Images round-trip through portable bitmaps (P1 text
or P4 packed) and can additionally be rendered to a matplotlib figure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .bits import BitVector
from .errors import ResourceCapError, ValidationError

MAX_IMAGE_BITS = 26  # refuse images beyond 2^26 cells


@dataclass(eq=False)
class GridImage:
    """Binary occupancy grid; width and height are powers of two."""

    width: int
    height: int
    cells: np.ndarray  # bool, shape (height, width); [row, col]

    def __post_init__(self) -> None:
        if self.cells.shape != (self.height, self.width):
            raise ValidationError("cell array shape does not match width/height")
        for dim in (self.width, self.height):
            if dim < 1 or dim & (dim - 1):
                raise ValidationError(f"image dimension {dim} is not a power of two")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GridImage):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and bool(np.array_equal(self.cells, other.cells))
        )

    def cell(self, col: int, row: int) -> bool:
        return bool(self.cells[row, col])

    @property
    def n_bits(self) -> int:
        return (self.width.bit_length() - 1) + (self.height.bit_length() - 1)


def _split_bits(n: int) -> tuple[int, int]:
    col_bits = (n + 1) // 2
    return col_bits, n - col_bits


def _check_image_size(n: int) -> None:
    if n > MAX_IMAGE_BITS:
        raise ResourceCapError(
            f"distribution grid for n = {n} needs 2^{n} cells; capped at 2^{MAX_IMAGE_BITS}"
        )


def render_distribution_grid(solutions: Iterable[BitVector], n: int) -> GridImage:
    """Mark one cell per solution string of length ``n``."""
    _check_image_size(n)
    col_bits, row_bits = _split_bits(n)
    cells = np.zeros((1 << row_bits, 1 << col_bits), dtype=bool)
    for z in solutions:
        if z.n != n:
            raise ValidationError(f"solution length {z.n} does not match n={n}")
        text = z.to_text()
        col = int(text[:col_bits], 2) if col_bits else 0
        row = int(text[col_bits:], 2) if row_bits else 0
        cells[row, col] = True
    return GridImage(1 << col_bits, 1 << row_bits, cells)


def grid_image_from_words(words: np.ndarray, n: int) -> GridImage:
    """Vectorised twin of :func:`render_distribution_grid` for n <= 64 word arrays."""
    if n > 64:
        raise ValidationError("word-based rendering requires n <= 64")
    _check_image_size(n)
    col_bits, row_bits = _split_bits(n)
    w = words.astype(np.uint64)
    cols = np.zeros(w.shape, dtype=np.int64)
    for i in range(1, col_bits + 1):
        cols |= (((w >> np.uint64(i - 1)) & np.uint64(1)) << np.uint64(col_bits - i)).astype(np.int64)
    rows = np.zeros(w.shape, dtype=np.int64)
    for i in range(col_bits + 1, n + 1):
        rows |= (((w >> np.uint64(i - 1)) & np.uint64(1)) << np.uint64(n - i)).astype(np.int64)
    cells = np.zeros((1 << row_bits, 1 << col_bits), dtype=bool)
    cells[rows, cols] = True
    return GridImage(1 << col_bits, 1 << row_bits, cells)


def solutions_from_image(image: GridImage) -> set[BitVector]:
    """Invert the rendering: recover the exact solution set from an image."""
    col_bits = image.width.bit_length() - 1
    row_bits = image.height.bit_length() - 1
    n = col_bits + row_bits
    out = set()
    for row, col in zip(*np.nonzero(image.cells)):
        text = format(int(col), f"0{col_bits}b") if col_bits else ""
        text += format(int(row), f"0{row_bits}b") if row_bits else ""
        assert len(text) == n
        out.add(BitVector.from_text(text))
    return out


# ---------------------------------------------------------------------------
# Portable bitmap round-trip


def image_to_pbm(image: GridImage, binary: bool = False) -> bytes:
    """Serialise as P4 (packed) or P1 (text); set cells are black (1)."""
    header = f"{'P4' if binary else 'P1'}\n{image.width} {image.height}\n"
    if binary:
        packed = np.packbits(image.cells.astype(np.uint8), axis=1, bitorder="big")
        return header.encode("ascii") + packed.tobytes()
    body = "\n".join("".join("1" if v else "0" for v in row) for row in image.cells)
    return (header + body + "\n").encode("ascii")


def image_from_pbm(data: bytes) -> GridImage:
    """Parse a P1 or P4 portable bitmap."""
    if data[:2] == b"P1":
        text = data.decode("ascii")
        tokens: list[str] = []
        for line in text.splitlines():
            line = line.split("#", 1)[0]
            tokens.extend(line.split())
        if len(tokens) < 3 or tokens[0] != "P1":
            raise ValidationError("malformed P1 bitmap header")
        width, height = int(tokens[1]), int(tokens[2])
        digits = "".join(tokens[3:])
        if len(digits) != width * height or set(digits) - {"0", "1"}:
            raise ValidationError("P1 pixel data does not match the declared size")
        cells = np.frombuffer(digits.encode("ascii"), dtype=np.uint8).reshape(height, width) == ord("1")
        return GridImage(width, height, cells)
    if data[:2] == b"P4":
        pos = 2
        fields: list[int] = []
        while len(fields) < 2:
            while pos < len(data) and data[pos : pos + 1].isspace():
                pos += 1
            if data[pos : pos + 1] == b"#":
                while pos < len(data) and data[pos : pos + 1] != b"\n":
                    pos += 1
                continue
            start = pos
            while pos < len(data) and not data[pos : pos + 1].isspace():
                pos += 1
            fields.append(int(data[start:pos]))
        pos += 1  # single whitespace byte after the header
        width, height = fields
        row_bytes = (width + 7) // 8
        raw = data[pos : pos + row_bytes * height]
        if len(raw) != row_bytes * height:
            raise ValidationError("P4 pixel data does not match the declared size")
        bits = np.unpackbits(
            np.frombuffer(raw, dtype=np.uint8).reshape(height, row_bytes), axis=1, bitorder="big"
        )
        return GridImage(width, height, bits[:, :width].astype(bool))
    raise ValidationError("not a P1/P4 portable bitmap")


# ---------------------------------------------------------------------------
# Matplotlib figure


def save_figure(image: GridImage, path: str, title: str | None = None) -> None:
    """Render the occupancy grid to an image file via matplotlib."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    col_bits = image.width.bit_length() - 1
    row_bits = image.height.bit_length() - 1
    fig, ax = plt.subplots(figsize=(6, 6 * image.height / max(1, image.width)))
    ax.imshow(image.cells, cmap="Greys", origin="upper", interpolation="nearest", aspect="equal")
    ax.set_xlabel(f"leading {col_bits} bits")
    ax.set_ylabel(f"trailing {row_bits} bits")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
