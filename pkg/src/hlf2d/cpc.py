"""Gate-level model of the constant-depth parallel circuit.

The circuit is a layered XOR network over n wire groups: matchings of
two-group rectangle units, one Toffoli layer keyed on the instance
diagonal, and a final controlled-NOT layer keyed on the particular
solution.  Evaluating it on input R produces y = A R before the final
layer and the solution z = y ^ z_a after it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .bits import BitVector
from .cla import ClaSummary, run_cla
from .errors import ValidationError
from .gf2 import mat_vec
from .instance import HlfInstance, edge_coloring


@dataclass(frozen=True)
class WireState:
    """Snapshot of the wires: inputs ``r``, accumulators ``y``, controls ``b``."""

    r: BitVector
    y: BitVector
    b: BitVector

    def __post_init__(self) -> None:
        if not (self.r.n == self.y.n == self.b.n):
            raise ValidationError("wire groups have mixed widths")


def initial_state(r: BitVector, b: BitVector) -> WireState:
    """Fresh wire state: accumulators start at zero."""
    return WireState(r, BitVector.zeros(r.n), b)


def apply_rou(state: WireState, i: int, j: int) -> WireState:
    """Rectangle operation unit on wire groups i and j (1-based).

    y_i ^= R_j and y_j ^= R_i; the inputs are never written.
    """
    n = state.r.n
    if i == j or not (1 <= i <= n and 1 <= j <= n):
        raise ValidationError(f"bad wire pair ({i}, {j}) for width {n}")
    rv = state.r.value
    yv = state.y.value
    yv ^= ((rv >> (j - 1)) & 1) << (i - 1)
    yv ^= ((rv >> (i - 1)) & 1) << (j - 1)
    return WireState(state.r, BitVector(n, yv), state.b)


def apply_toffoli_layer(state: WireState) -> WireState:
    """Per-wire Toffoli: y_i ^= b_i * R_i, all wires in parallel."""
    return WireState(state.r, state.y ^ (state.b & state.r), state.b)


@dataclass(frozen=True)
class LayeredCircuit:
    """Compiled netlist: rectangle-unit layers, Toffoli layer, final CNOT layer."""

    n: int
    rou_layers: tuple[tuple[tuple[int, int], ...], ...]
    toffoli_controls: BitVector
    final_controls: BitVector

    def __post_init__(self) -> None:
        if self.toffoli_controls.n != self.n or self.final_controls.n != self.n:
            raise ValidationError("control widths do not match the circuit width")
        for layer in self.rou_layers:
            used: set[int] = set()
            for (i, j) in layer:
                if i == j or not (1 <= i <= self.n and 1 <= j <= self.n):
                    raise ValidationError(f"bad wire pair ({i}, {j})")
                if i in used or j in used:
                    raise ValidationError("a layer reuses a wire group")
                used.update((i, j))

    @property
    def depth(self) -> int:
        """Gate-layer depth: rectangle layers plus Toffoli plus final CNOT."""
        return len(self.rou_layers) + 2

    @property
    def pipeline_stages(self) -> int:
        """Stages before the final controlled layer (rectangle layers + Toffoli)."""
        return len(self.rou_layers) + 1


def compile_cpc(inst: HlfInstance, cla: ClaSummary) -> LayeredCircuit:
    """Compile the instance's constant-depth circuit from its edge coloring."""
    if cla.z_a.n != inst.n:
        raise ValidationError(
            f"stage-1 summary is for size {cla.z_a.n}, instance has size {inst.n}"
        )
    if any(p < 1 or p > inst.n for p in cla.pivots):
        raise ValidationError("pivot set out of range for this instance")
    coloring = edge_coloring(inst)
    return LayeredCircuit(inst.n, coloring.layers, inst.b, cla.z_a)


def eval_circuit(circuit: LayeredCircuit, r_in: BitVector) -> tuple[BitVector, BitVector]:
    """Evaluate gate by gate; returns (pre-final y, solution z).

    Within a layer the gates touch disjoint wire groups, so sequential
    application matches the parallel semantics exactly.
    """
    if r_in.n != circuit.n:
        raise ValidationError(f"input width {r_in.n} does not match circuit width {circuit.n}")
    state = initial_state(r_in, circuit.toffoli_controls)
    for layer in circuit.rou_layers:
        for (i, j) in layer:
            state = apply_rou(state, i, j)
    state = apply_toffoli_layer(state)
    return state.y, state.y ^ circuit.final_controls


def check_circuit_matvec(
    inst: HlfInstance,
    trials: int,
    rng: random.Random | None = None,
    cla: ClaSummary | None = None,
) -> bool:
    """Confirm the layered evaluation realises y = A R.

    Exhaustive over all inputs when 2^n <= trials, otherwise ``trials``
    uniformly random inputs.
    """
    circuit = compile_cpc(inst, cla if cla is not None else run_cla(inst))
    n = inst.n
    if n <= 62 and (1 << n) <= trials:
        candidates = (BitVector(n, v) for v in range(1 << n))
    else:
        rng = rng if rng is not None else random.Random(0)
        candidates = (BitVector(n, rng.getrandbits(n)) for _ in range(trials))
    for r_in in candidates:
        y, _ = eval_circuit(circuit, r_in)
        if y != mat_vec(inst.a, r_in):
            return False
    return True
