"""Exact computations on the Macdonald (q,t)-Bratteli diagram of partitions.

Multiplicities, dimensions and coherent measures in exact arithmetic, their
Hall-Littlewood, Schur and Jack specializations, growth samplers, and
brute-force oracles (unipotent matrices over F_p, RSK, charge).
"""

from .branching import (
    BranchingParams,
    GrowthPath,
    dimension,
    interval_dimension,
    kappa,
    kappa_second_form,
    psi_prime,
)
from .coeff import LaurentPoly, RationalFunction, symbols
from .errors import (
    BratteliError,
    CapExceededError,
    DomainError,
    IdentityViolation,
    InvalidAlphabetError,
    NotContainedError,
    PoleError,
)
from .macdonald import Alphabet, Distribution, eval_P, measure, transition_probabilities
from .partitions import CoverStep, Partition, conjugate, cover_step, enumerate_partitions
from .report import Report
from .samplers import (
    RngStream,
    SampleRun,
    asymptotic_profile,
    empirical_distribution,
    grow_bk,
    grow_generic,
    tv_distance,
)
from .special import (
    HLParams,
    JackParams,
    green_polynomial,
    hl_kappa,
    jack_kappa,
    jordan_measure,
    schur_dimension,
    schur_kappa,
    schur_measure,
)
from .verify import verify_suite

__all__ = [
    "Alphabet",
    "BranchingParams",
    "BratteliError",
    "CapExceededError",
    "CoverStep",
    "Distribution",
    "DomainError",
    "GrowthPath",
    "HLParams",
    "IdentityViolation",
    "InvalidAlphabetError",
    "JackParams",
    "LaurentPoly",
    "NotContainedError",
    "Partition",
    "PoleError",
    "RationalFunction",
    "Report",
    "RngStream",
    "SampleRun",
    "asymptotic_profile",
    "conjugate",
    "cover_step",
    "dimension",
    "empirical_distribution",
    "enumerate_partitions",
    "eval_P",
    "green_polynomial",
    "grow_bk",
    "grow_generic",
    "hl_kappa",
    "interval_dimension",
    "jack_kappa",
    "jordan_measure",
    "kappa",
    "kappa_second_form",
    "measure",
    "psi_prime",
    "schur_dimension",
    "schur_kappa",
    "schur_measure",
    "symbols",
    "transition_probabilities",
    "tv_distance",
    "verify_suite",
]

__version__ = "0.1.0"
