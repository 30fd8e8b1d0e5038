"""Problem instances: all-connected N x N grids and general symmetric matrices.

Instances are immutable.  The JSON document format is
``{"n": int, "N": int (grids only), "b": bitstring, "edges": [[i, j], ...]}``
with 1-based vertex indices; the inline shorthand ``grid:N:bits`` is accepted
anywhere a file is accepted.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

from .bits import BitMatrix, BitVector
from .errors import ValidationError

GRID_PREFIX = "grid:"


def _grid_row_ints(side: int) -> list[int]:
    """Off-diagonal adjacency rows of the all-connected side x side grid."""
    n = side * side
    rows = [0] * n
    for v in range(n):
        row, col = divmod(v, side)
        if col + 1 < side:
            rows[v] |= 1 << (v + 1)
        if col:
            rows[v] |= 1 << (v - 1)
        if row + 1 < side:
            rows[v] |= 1 << (v + side)
        if row:
            rows[v] |= 1 << (v - side)
    return rows


@dataclass(frozen=True)
class HlfInstance:
    """A symmetric binary matrix ``a`` with diagonal string ``b``.

    ``grid_side`` is set when the off-diagonal support is exactly the
    nearest-neighbour edge set of the all-connected grid (vertex 1 top
    left, row-major numbering).  Construct through :func:`build_grid_instance`,
    :func:`build_general_instance`, or :func:`parse`, which validate symmetry.
    """

    n: int
    a: BitMatrix
    b: BitVector
    grid_side: int | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValidationError(f"instance size must be positive, got {self.n}")
        if self.a.n != self.n:
            raise ValidationError(f"matrix size {self.a.n} does not match n={self.n}")
        if self.b.n != self.n:
            raise ValidationError(f"diagonal string length {self.b.n} does not match n={self.n}")
        if self.a.diagonal() != self.b:
            raise ValidationError("diagonal/b mismatch")
        if self.grid_side is not None:
            side = self.grid_side
            if side * side != self.n:
                raise ValidationError(f"grid side {side} squared is not n={self.n}")
            expected = _grid_row_ints(side)
            actual = self.a.row_ints()
            for i in range(self.n):
                if actual[i] & ~(1 << i) != expected[i]:
                    raise ValidationError("off-diagonal support does not match the grid edges")

    def edges(self) -> list[tuple[int, int]]:
        """Off-diagonal support as 1-based unordered pairs (i < j), sorted."""
        out = []
        for i, row in enumerate(self.a.row_ints()):
            v = row >> (i + 1)
            j = i + 1
            while v:
                low = v & -v
                out.append((i + 1, j + low.bit_length()))
                j += low.bit_length()
                v >>= low.bit_length()
        return out

    def label(self) -> str:
        """Short human-readable identifier used in reports."""
        if self.grid_side is not None:
            return f"grid:{self.grid_side}:{self.b.to_text()}"
        return f"general:n={self.n}"


@dataclass(frozen=True)
class EdgeColoring:
    """Edges partitioned into parallel layers; each layer is a matching."""

    layers: tuple[tuple[tuple[int, int], ...], ...]

    def __post_init__(self) -> None:
        seen: set[tuple[int, int]] = set()
        for layer in self.layers:
            used: set[int] = set()
            for (i, j) in layer:
                if i == j:
                    raise ValidationError(f"self-loop ({i}, {j}) in edge coloring")
                edge = (min(i, j), max(i, j))
                if edge in seen:
                    raise ValidationError(f"edge {edge} appears in two layers")
                seen.add(edge)
                if i in used or j in used:
                    raise ValidationError(f"layer is not a matching: vertex reused by {edge}")
                used.update((i, j))

    def edge_count(self) -> int:
        return sum(len(layer) for layer in self.layers)


def build_grid_instance(side: int, b: BitVector | str) -> HlfInstance:
    """All-connected side x side grid instance with diagonal ``b``."""
    if isinstance(b, str):
        b = BitVector.from_text(b)
    if side < 1:
        raise ValidationError(f"grid side must be >= 1, got {side}")
    n = side * side
    if b.n != n:
        raise ValidationError(f"diagonal string has length {b.n}, expected {n} for side {side}")
    rows = _grid_row_ints(side)
    for i in range(n):
        rows[i] |= b.bit(i + 1) << i
    return HlfInstance(n, BitMatrix.from_row_ints(n, rows), b, grid_side=side)


def build_general_instance(a: BitMatrix) -> HlfInstance:
    """Instance over an arbitrary symmetric matrix; ``b`` is its diagonal."""
    if not a.is_symmetric():
        raise ValidationError("matrix is not symmetric")
    return HlfInstance(a.n, a, a.diagonal(), grid_side=None)


def _grid_coloring(side: int) -> list[list[tuple[int, int]]]:
    """Canonical 4-layer grid coloring (1-based row/column coordinates).

    Layer 1: horizontal edges starting at odd columns; layer 2 at even
    columns; layers 3 and 4 the same split for vertical edges by row.
    """
    def vid(r: int, c: int) -> int:
        return (r - 1) * side + c

    layers: list[list[tuple[int, int]]] = [[], [], [], []]
    for r in range(1, side + 1):
        for c in range(1, side):
            layers[0 if c % 2 else 1].append((vid(r, c), vid(r, c + 1)))
    for r in range(1, side):
        for c in range(1, side + 1):
            layers[2 if r % 2 else 3].append((vid(r, c), vid(r + 1, c)))
    return layers


def _greedy_coloring(edges: list[tuple[int, int]]) -> list[list[tuple[int, int]]]:
    """First-fit proper edge coloring over a fixed edge order (<= 2*maxdeg - 1 layers)."""
    vertex_colors: dict[int, set[int]] = {}
    layers: list[list[tuple[int, int]]] = []
    for (i, j) in sorted(edges):
        taken = vertex_colors.get(i, set()) | vertex_colors.get(j, set())
        color = 0
        while color in taken:
            color += 1
        while color >= len(layers):
            layers.append([])
        layers[color].append((i, j))
        vertex_colors.setdefault(i, set()).add(color)
        vertex_colors.setdefault(j, set()).add(color)
    return layers


def edge_coloring(inst: HlfInstance) -> EdgeColoring:
    """Partition the instance's edges into matchings.

    Grid instances get the canonical coloring (at most 4 nonempty layers);
    general instances a greedy first-fit coloring.
    """
    if inst.grid_side is not None:
        layers = _grid_coloring(inst.grid_side)
    else:
        layers = _greedy_coloring(inst.edges())
    return EdgeColoring(tuple(tuple(sorted(layer)) for layer in layers if layer))


def serialize(inst: HlfInstance) -> str:
    """Canonical JSON document for an instance."""
    doc: dict = {"n": inst.n, "b": inst.b.to_text(), "edges": [list(e) for e in inst.edges()]}
    if inst.grid_side is not None:
        doc["N"] = inst.grid_side
    return json.dumps(doc, sort_keys=True)


def _parse_shorthand(text: str) -> HlfInstance:
    parts = text.strip().split(":")
    if len(parts) != 3:
        raise ValidationError(f"grid shorthand must be grid:N:bits, got {text!r}")
    try:
        side = int(parts[1])
    except ValueError:
        raise ValidationError(f"grid side {parts[1]!r} is not an integer") from None
    return build_grid_instance(side, BitVector.from_text(parts[2]))


def parse(text: str) -> HlfInstance:
    """Parse a JSON instance document or a ``grid:N:bits`` shorthand."""
    stripped = text.strip()
    if stripped.startswith(GRID_PREFIX):
        return _parse_shorthand(stripped)
    try:
        doc = json.loads(stripped)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed instance document: {exc}") from None
    if not isinstance(doc, dict):
        raise ValidationError("instance document must be a JSON object")

    if "rows" in doc:
        matrix = BitMatrix.from_rows([BitVector.from_text(r) for r in doc["rows"]])
        if not matrix.is_symmetric():
            raise ValidationError("matrix rows are not symmetric")
        if "b" in doc and BitVector.from_text(doc["b"]) != matrix.diagonal():
            raise ValidationError("diagonal/b mismatch")
        inst = build_general_instance(matrix)
        n = matrix.n
    else:
        for key in ("n", "b", "edges"):
            if key not in doc:
                raise ValidationError(f"instance document is missing {key!r}")
        n = doc["n"]
        if not isinstance(n, int) or n < 1:
            raise ValidationError(f"bad instance size {n!r}")
        b = BitVector.from_text(doc["b"])
        if b.n != n:
            raise ValidationError(f"diagonal string length {b.n} does not match n={n}")
        rows = [b.bit(i + 1) << i for i in range(n)]
        for pair in doc["edges"]:
            if not (isinstance(pair, list) and len(pair) == 2):
                raise ValidationError(f"bad edge entry {pair!r}")
            i, j = pair
            if not (isinstance(i, int) and isinstance(j, int) and 1 <= i <= n and 1 <= j <= n):
                raise ValidationError(f"edge {pair!r} out of range [1, {n}]")
            if i == j:
                raise ValidationError(f"self-loop edge {pair!r}; diagonal entries belong in b")
            rows[i - 1] |= 1 << (j - 1)
            rows[j - 1] |= 1 << (i - 1)
        inst = HlfInstance(n, BitMatrix.from_row_ints(n, rows), b, grid_side=None)

    if "N" in doc:
        side = doc["N"]
        if not isinstance(side, int) or side * side != n:
            raise ValidationError(f"N={side!r} does not square to n={n}")
        inst = HlfInstance(inst.n, inst.a, inst.b, grid_side=side)
    return inst


def load_instance(ref: str) -> HlfInstance:
    """Resolve a CLI instance reference: ``grid:N:bits`` shorthand or a file path."""
    if ref.strip().startswith(GRID_PREFIX):
        return _parse_shorthand(ref)
    if os.path.isfile(ref):
        with open(ref, "r", encoding="utf-8") as fh:
            return parse(fh.read())
    raise ValidationError(f"instance reference {ref!r} is neither a grid shorthand nor a file")
