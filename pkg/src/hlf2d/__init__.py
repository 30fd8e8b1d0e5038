"""Solver, enumerator, and verifier for full-sampling 2D hidden linear function instances.

The pipeline has two stages: a GF(2) linear-algebra pass over the instance
matrix (rank, pivots, kernel basis, one particular solution) and a
constant-depth layered circuit whose Gray-code traversal streams all 2^r
solutions.  Independent oracles (definition-level brute force and a dense
statevector simulation of the corresponding shallow quantum circuit)
cross-check the output.
"""

from .bits import BitMatrix, BitVector
from .cla import ClaSummary, run_cla, verify_q_linearity
from .cpc import (
    LayeredCircuit,
    WireState,
    apply_rou,
    apply_toffoli_layer,
    check_circuit_matvec,
    compile_cpc,
    eval_circuit,
    initial_state,
)
from .errors import HlfError, InvariantError, ResourceCapError, ValidationError
from .gf2 import (
    EliminationResult,
    gf2_rank,
    gf2_rank_rows,
    kernel_basis,
    mat_vec,
    quad_form_mod4,
    rank_and_pivots,
    solve_affine,
    xor_rows,
)
from .instance import (
    EdgeColoring,
    HlfInstance,
    build_general_instance,
    build_grid_instance,
    edge_coloring,
    load_instance,
    parse,
    serialize,
)
from .oracle import (
    RankBoundReport,
    brute_force_solutions,
    check_solution,
    rank_bound_check,
    strict_dependence,
)
from .statevector import StateVector, SupportReport, sample_measurements, statevector_run, support_of
from .stream import (
    Digest,
    digest_solutions,
    enumerate_chunk,
    enumerate_solutions,
    solution_set,
    solution_words,
)
from .timing import TimingParams, fpga_time_model, r0_bound, runtime_ratio
from .verify import AgreementReport, verify_instance

__version__ = "0.1.0"

__all__ = [
    "AgreementReport",
    "BitMatrix",
    "BitVector",
    "ClaSummary",
    "Digest",
    "EdgeColoring",
    "EliminationResult",
    "HlfError",
    "HlfInstance",
    "InvariantError",
    "LayeredCircuit",
    "RankBoundReport",
    "ResourceCapError",
    "StateVector",
    "SupportReport",
    "TimingParams",
    "ValidationError",
    "WireState",
    "apply_rou",
    "apply_toffoli_layer",
    "brute_force_solutions",
    "build_general_instance",
    "build_grid_instance",
    "check_circuit_matvec",
    "check_solution",
    "compile_cpc",
    "digest_solutions",
    "edge_coloring",
    "enumerate_chunk",
    "enumerate_solutions",
    "eval_circuit",
    "fpga_time_model",
    "gf2_rank",
    "gf2_rank_rows",
    "initial_state",
    "kernel_basis",
    "load_instance",
    "mat_vec",
    "parse",
    "quad_form_mod4",
    "r0_bound",
    "rank_and_pivots",
    "rank_bound_check",
    "run_cla",
    "runtime_ratio",
    "sample_measurements",
    "serialize",
    "solution_set",
    "solution_words",
    "solve_affine",
    "statevector_run",
    "strict_dependence",
    "support_of",
    "verify_instance",
    "verify_q_linearity",
    "xor_rows",
]
