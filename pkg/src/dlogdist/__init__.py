"""Discrete logarithms modulo a prime and the distribution of their values.

The package computes discrete logs of arithmetic progressions, places them on
the unit torus, measures their discrepancy, and checks the exponential-sum
identities and bounds that control it.
"""

__version__ = "0.1.0"

from .errors import (
    DlogDistError,
    NotPrime,
    NonGenerator,
    TableTooLarge,
    ZeroResidue,
    RetryExhausted,
    InvalidProgression,
    Overlap,
    DenominatorMismatch,
)
from .numtheory import FieldCtx, build_ctx, factorize, is_prime, mod_pow, smallest_primitive_root
from .dlog import DlogTable, build_table, dlog_bsgs, dlog_pollard_rho
from .torus import (
    DiscrepancyReport,
    Interval,
    Progression,
    TorusPoints,
    brute_force_extreme_discrepancy,
    extreme_discrepancy,
    interval_discrepancy,
    log_image,
)

__all__ = [
    "__version__",
    "DlogDistError",
    "NotPrime",
    "NonGenerator",
    "TableTooLarge",
    "ZeroResidue",
    "RetryExhausted",
    "InvalidProgression",
    "Overlap",
    "DenominatorMismatch",
    "FieldCtx",
    "build_ctx",
    "factorize",
    "is_prime",
    "mod_pow",
    "smallest_primitive_root",
    "DlogTable",
    "build_table",
    "dlog_bsgs",
    "dlog_pollard_rho",
    "DiscrepancyReport",
    "Interval",
    "Progression",
    "TorusPoints",
    "brute_force_extreme_discrepancy",
    "extreme_discrepancy",
    "interval_discrepancy",
    "log_image",
]
