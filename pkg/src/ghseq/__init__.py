"""Binary GH residue sequences, LFSR pseudo-noise sequences and their correlation."""

from ghseq.correlation import CorrelationSeries, ccf, peak_ccf, randomness_measure
from ghseq.errors import GhseqError, InvariantViolation
from ghseq.gh_core import (
    GHParams,
    PeriodClass,
    PeriodReport,
    b_sequence,
    classify_prime,
    composite_bound_sweep,
    gh_period,
    gh_residues,
    primes_in_range,
    verify_period_theorem,
)
from ghseq.lfsr import (
    BinaryPolynomial,
    LfsrState,
    factor_mersenne,
    lfsr_bits,
    pn_fragment,
    poly_order,
    sequence_period,
)

__version__ = "0.1.0"

__all__ = [
    "BinaryPolynomial",
    "CorrelationSeries",
    "GHParams",
    "GhseqError",
    "InvariantViolation",
    "LfsrState",
    "PeriodClass",
    "PeriodReport",
    "b_sequence",
    "ccf",
    "classify_prime",
    "composite_bound_sweep",
    "factor_mersenne",
    "gh_period",
    "gh_residues",
    "lfsr_bits",
    "peak_ccf",
    "pn_fragment",
    "poly_order",
    "primes_in_range",
    "randomness_measure",
    "sequence_period",
    "verify_period_theorem",
]
