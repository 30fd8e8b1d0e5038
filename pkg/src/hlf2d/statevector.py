"""Dense statevector simulation of the instance's shallow quantum circuit.

The circuit is H on every qubit, CZ on every edge, a phase gate S on every
qubit whose diagonal bit is set, then H on every qubit again.  The basis
states carrying nonzero amplitude in the final state are exactly the
instance's solutions, all with magnitude 2^(-r/2).

Amplitude index convention: the basis string is read with bit 1 as the most
significant index bit, i.e. index = int(bitstring_text, 2).

Gate conventions: H = (1/sqrt 2) [[1, 1], [1, -1]], S = diag(1, i),
CZ = diag(1, 1, 1, -1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bits import BitVector
from .errors import InvariantError, ResourceCapError, ValidationError
from .instance import HlfInstance

STATEVECTOR_MAX_QUBITS = 20

_NORM_TOL = 1e-12
_INV_SQRT2 = 1.0 / np.sqrt(2.0)


@dataclass
class StateVector:
    """2^n complex amplitudes indexed by basis string (bit 1 = MSB)."""

    n_qubits: int
    amplitudes: np.ndarray

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def amplitude(self, z: BitVector) -> complex:
        if z.n != self.n_qubits:
            raise ValidationError(f"basis string length {z.n} != {self.n_qubits} qubits")
        return complex(self.amplitudes[index_of(z)])


def index_of(z: BitVector) -> int:
    """Flat amplitude index of a basis string (bit 1 most significant)."""
    if z.n == 0:
        return 0
    return int(z.to_text(), 2)


def basis_vector_of(index: int, n: int) -> BitVector:
    """Inverse of :func:`index_of`."""
    return BitVector.from_text(format(index, f"0{n}b"))


def _apply_hadamard(amps: np.ndarray, n: int, qubit: int) -> None:
    view = amps.reshape(1 << (qubit - 1), 2, 1 << (n - qubit))
    upper = view[:, 0, :].copy()
    lower = view[:, 1, :].copy()
    view[:, 0, :] = (upper + lower) * _INV_SQRT2
    view[:, 1, :] = (upper - lower) * _INV_SQRT2


def _axis_slice(n: int, ones: tuple[int, ...]) -> tuple:
    sl: list = [slice(None)] * n
    for q in ones:
        sl[q - 1] = 1
    return tuple(sl)


def _check_norm(amps: np.ndarray) -> None:
    norm = np.linalg.norm(amps)
    if abs(norm - 1.0) > _NORM_TOL:
        raise InvariantError(f"statevector norm drifted to {norm!r}")


def statevector_run(inst: HlfInstance, max_qubits: int = STATEVECTOR_MAX_QUBITS) -> StateVector:
    """Run the shallow circuit for ``inst`` and return the final state."""
    n = inst.n
    if n > max_qubits:
        raise ResourceCapError(
            f"statevector simulation capped at {max_qubits} qubits, instance has n = {n}"
        )
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[0] = 1.0
    for q in range(1, n + 1):
        _apply_hadamard(amps, n, q)
    _check_norm(amps)
    grid_view = amps.reshape([2] * n)
    for (i, j) in inst.edges():
        grid_view[_axis_slice(n, (i, j))] *= -1.0
    for i in inst.b.support():
        grid_view[_axis_slice(n, (i,))] *= 1.0j
    _check_norm(amps)
    for q in range(1, n + 1):
        _apply_hadamard(amps, n, q)
    _check_norm(amps)
    return StateVector(n, amps)


@dataclass(frozen=True)
class SupportReport:
    """Basis states above the amplitude threshold, with magnitude statistics."""

    support: frozenset[BitVector]
    amp_magnitude: float
    max_deviation: float


def support_of(state: StateVector, tol: float = 1e-9) -> SupportReport:
    """Basis strings with |amplitude| > tol, plus magnitude uniformity stats."""
    mags = np.abs(state.amplitudes)
    idx = np.nonzero(mags > tol)[0]
    if idx.size == 0:
        return SupportReport(frozenset(), 0.0, 0.0)
    values = mags[idx]
    mean = float(values.mean())
    deviation = float(np.max(np.abs(values - mean)))
    n = state.n_qubits
    support = frozenset(basis_vector_of(int(i), n) for i in idx)
    return SupportReport(support, mean, deviation)


def sample_measurements(
    state: StateVector, shots: int, rng: np.random.Generator
) -> list[BitVector]:
    """Computational-basis samples from the state's output distribution."""
    probs = np.abs(state.amplitudes) ** 2
    probs = probs / probs.sum()
    outcomes = rng.choice(probs.size, size=shots, p=probs)
    n = state.n_qubits
    return [basis_vector_of(int(i), n) for i in outcomes]


def draws_until_all_seen(state: StateVector, rng: np.random.Generator, max_draws: int) -> int:
    """Repeated-measurement cost: draws needed to observe every support string.

    This is the run-and-measure protocol the enumeration replaces; its
    expected cost is the coupon-collector bound Theta(k log k) for k
    uniform outcomes.  Returns the draw count, or raises after max_draws.
    """
    want = {index_of(z) for z in support_of(state).support}
    probs = np.abs(state.amplitudes) ** 2
    probs = probs / probs.sum()
    seen: set[int] = set()
    draws = 0
    while seen != want:
        if draws >= max_draws:
            raise ResourceCapError(f"support not covered within {max_draws} draws")
        block = rng.choice(probs.size, size=min(256, max_draws - draws), p=probs)
        for outcome in block:
            draws += 1
            seen.add(int(outcome))
            if seen == want:
                break
    return draws
