"""Oracle agreement: enumeration vs brute force vs statevector support.

Every oracle that fits the instance's size runs; the report records which
ones participated.  Beyond the brute-force cap the enumerated solutions
are still validated against the defining condition directly (the
"kernel_condition" oracle), so large instances are never accepted on
cardinality alone.  The statevector check additionally demands the
uniform amplitude magnitude 2^(-r/2) on its support.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .cla import ClaSummary, run_cla, verify_q_linearity
from .errors import ResourceCapError
from .gf2 import quad_form_int
from .instance import HlfInstance
from .oracle import BRUTE_FORCE_MAX_N, brute_force_solutions, kernel_span_ints
from .statevector import STATEVECTOR_MAX_QUBITS, statevector_run, support_of
from .stream import enumerate_solutions, solution_set, solution_words

_CONDITION_SPAN_CAP = 16


@dataclass(frozen=True)
class AgreementReport:
    agrees: bool
    set_size: int
    r: int
    amp_magnitude: float | None
    max_deviation: float | None
    oracles: tuple[str, ...]

    def to_json(self) -> str:
        return json.dumps(
            {
                "agrees": self.agrees,
                "set_size": self.set_size,
                "r": self.r,
                "amp_magnitude": self.amp_magnitude,
                "max_deviation": self.max_deviation,
                "oracles": list(self.oracles),
            }
        )


def _condition_holds_on_stream(inst: HlfInstance, cla: ClaSummary, max_rank: int | None) -> bool:
    """Every enumerated solution satisfies 2 z.x = q(x) (mod 4) over Ker(A).

    The whole kernel span is tested up to dimension 16; beyond that the
    basis suffices once linearity of q on the kernel is confirmed.
    """
    rows = inst.a.row_ints()
    if len(cla.kernel) > _CONDITION_SPAN_CAP:
        if not verify_q_linearity(inst, cla.kernel):
            return False
        targets = [(v.value, quad_form_int(rows, v.value)) for v in cla.kernel]
    else:
        targets = [(x, quad_form_int(rows, x)) for x in kernel_span_ints(cla.kernel)]
    if any(q % 2 for _, q in targets):
        return False
    if inst.n <= 64:
        words = solution_words(inst, cla, max_rank=max_rank)
        for x, q in targets:
            parity = np.bitwise_count(words & np.uint64(x)) & np.uint8(1)
            if not np.all(parity == np.uint8(q >> 1)):
                return False
        return True
    for _, z in enumerate_solutions(inst, cla, max_rank=max_rank):
        for x, q in targets:
            if 2 * ((z.value & x).bit_count() & 1) != q:
                return False
    return True


def _distinct_count(inst: HlfInstance, cla: ClaSummary, max_rank: int | None) -> int:
    if inst.n <= 64:
        return int(np.unique(solution_words(inst, cla, max_rank=max_rank)).size)
    return len({z.value for _, z in enumerate_solutions(inst, cla, max_rank=max_rank)})


def verify_instance(
    inst: HlfInstance,
    tol: float = 1e-9,
    max_rank: int | None = None,
    statevector_max: int = STATEVECTOR_MAX_QUBITS,
    brute_max: int = BRUTE_FORCE_MAX_N,
) -> AgreementReport:
    """Cross-check the enumerated solution set against every applicable oracle."""
    cla = run_cla(inst)
    oracles = ["enumeration"]
    expected_size = 1 << cla.r
    agrees = True

    brute: set | None = None
    if inst.n <= brute_max:
        try:
            brute = brute_force_solutions(inst, max_n=brute_max)
        except ResourceCapError:
            brute = None

    enumerated: set | None = None
    if brute is not None or inst.n <= statevector_max:
        enumerated = solution_set(inst, cla, max_rank=max_rank)
        set_size = len(enumerated)
    else:
        set_size = _distinct_count(inst, cla, max_rank=max_rank)
    agrees = agrees and set_size == expected_size

    if brute is not None:
        oracles.append("brute_force")
        agrees = agrees and brute == enumerated
    else:
        oracles.append("kernel_condition")
        agrees = agrees and _condition_holds_on_stream(inst, cla, max_rank)

    amp_magnitude: float | None = None
    max_deviation: float | None = None
    if inst.n <= statevector_max:
        state = statevector_run(inst, max_qubits=statevector_max)
        report = support_of(state, tol=tol)
        oracles.append("statevector")
        agrees = agrees and set(report.support) == enumerated
        amp_magnitude = report.amp_magnitude
        max_deviation = report.max_deviation
        expected_mag = 2.0 ** (-cla.r / 2.0)
        agrees = agrees and math.isclose(amp_magnitude, expected_mag, rel_tol=0.0, abs_tol=tol)
        agrees = agrees and max_deviation <= tol

    return AgreementReport(
        agrees=agrees,
        set_size=set_size,
        r=cla.r,
        amp_magnitude=amp_magnitude,
        max_deviation=max_deviation,
        oracles=tuple(oracles),
    )
