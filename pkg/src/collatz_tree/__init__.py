"""Odd-number Collatz tree: forward steps, closed-form children, bit-level
parent decomposition and a fast range verifier."""

from . import _backend
from .core import (
    ExcursionStats,
    OddPath,
    OddStepResult,
    SequenceNotTerminated,
    Termination,
    collatz_sequence,
    collatz_step,
    max_excursion,
    odd_sequence,
    odd_step,
    v2,
)
from .tree import (
    Branch,
    Decomposition,
    NodeClass,
    TreeEdge,
    boundary_bits,
    children,
    classify,
    decompose,
    export_tree,
    f_minus,
    f_plus,
    generate_tree,
    parent,
    remainder_for,
)
from .verify import (
    VerificationReport,
    corollary_check,
    cycle_search,
    density_check,
    residue_table,
    verify_range,
)

BACKEND = _backend.kernels.NAME

__version__ = "0.1.0"
