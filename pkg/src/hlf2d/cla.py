"""Stage 1: the linear-algebra summary an instance needs before enumeration.

Computes the binary rank, pivot columns, a kernel basis, the quadratic-form
values on the basis, and one particular solution ``z_a`` of the instance's
hidden-linear-function condition.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .bits import BitVector
from .errors import InvariantError
from .gf2 import kernel_from_elimination, quad_form_mod4, rank_and_pivots, solve_affine
from .instance import HlfInstance


@dataclass(frozen=True)
class ClaSummary:
    """Everything stage 2 needs: rank ``r``, pivots, kernel data, and ``z_a``.

    Invariants: ``len(pivots) == r``; ``len(kernel) == n - r``; every kernel
    vector lies in Ker(A); and ``2 * (z_a . v) == q(v) (mod 4)`` for each
    kernel basis vector ``v``.
    """

    r: int
    pivots: tuple[int, ...]
    kernel: tuple[BitVector, ...]
    q_basis: tuple[int, ...]
    z_a: BitVector

    def to_json(self) -> str:
        return json.dumps(
            {
                "r": self.r,
                "P": list(self.pivots),
                "kernel": [v.to_text() for v in self.kernel],
                "z_a": self.z_a.to_text(),
            }
        )


def run_cla(inst: HlfInstance) -> ClaSummary:
    """Solve the stage-1 linear algebra for an instance.

    ``z_a`` is the deterministic particular solution of
    ``2 z . v = q(v) (mod 4)`` over the kernel basis (free variables zero);
    by linearity of q on the kernel it then solves the condition on the
    whole of Ker(A).  For full-rank instances the kernel is empty and
    ``z_a`` is the zero vector.
    """
    elim = rank_and_pivots(inst.a)
    kernel = tuple(kernel_from_elimination(elim))
    q_basis = tuple(quad_form_mod4(inst.a, v) for v in kernel)
    if any(q % 2 for q in q_basis):
        raise InvariantError(
            "odd quadratic-form value on a kernel vector; the instance matrix is corrupt"
        )
    rhs = BitVector.from_bits(q // 2 for q in q_basis)
    z_a = solve_affine(list(kernel), rhs, n=inst.n)
    if z_a is None:
        raise InvariantError("kernel equations inconsistent; elimination is broken")
    return ClaSummary(elim.rank, elim.pivots, kernel, q_basis, z_a)


def verify_q_linearity(inst: HlfInstance, kernel: tuple[BitVector, ...] | list[BitVector]) -> bool:
    """Check q(u ^ v) = q(u) + q(v) (mod 4) on all kernel basis pairs.

    Also requires every basis value to be even.  A False return signals a
    broken invariant (the reduction from evaluating q on the whole kernel
    to evaluating it on a basis rests on this identity).
    """
    values = [quad_form_mod4(inst.a, v) for v in kernel]
    if any(q not in (0, 2) for q in values):
        return False
    for i in range(len(kernel)):
        for j in range(i + 1, len(kernel)):
            combined = quad_form_mod4(inst.a, kernel[i] ^ kernel[j])
            if combined != (values[i] + values[j]) % 4:
                return False
    return True
