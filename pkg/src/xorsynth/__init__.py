"""Linear (XOR-only) circuits over GF(2), with a focus on cancellation-free circuits."""

from .gf2 import BitMatrix, BitVector, det_gf2, matvec, parse_matrix, format_matrix, rank_gf2
from .circuit import (
    ZERO, CircuitBuilder, EliminationResult, LinearCircuit, NodeRef, computes, eliminate,
    evaluate, gate, inp, parse_slp, serialize_slp, value_vectors,
)
from .cfcheck import (
    CfVerdict, check_cf, is_cf_disjoint_support, is_cf_monotone, is_cf_reachability,
)
from .synth import (
    SynthReport, synth_greedy_cse, synth_lupanov, synth_naive, synth_prefix_cancel,
    synth_prefix_cf, synth_sierpinski,
)
from .oracle import OracleResult, cancellation_ratio, min_circuit_size
from .bounds import BoundReport, kab_free, log2_circuit_count, mehlhorn_bound, sierpinski_cf_lower
from .gen import BrownParams, gen_brown, gen_prefix, gen_random, gen_sierpinski

__version__ = "0.1.0"
