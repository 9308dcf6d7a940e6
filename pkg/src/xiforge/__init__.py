"""High-precision toolkit for the completed zeta function xi and its series."""

from .apcore import APComplex, APReal, PowerSeries, ap
from .errors import (AccuracyLossError, CacheFormatError, DomainError, InvariantViolation, PoleError,
                     TruncationError, XiForgeError)
from .pustylnikov import CoeffTable, xi_coeff, xi_coeff_table
from .keiper import criterion_report, zero_sums
from .specfun import SpecFunContext, xi_direct
from .verify import run_suite

__version__ = "0.1.0"

__all__ = [
    "APComplex", "APReal", "PowerSeries", "ap", "AccuracyLossError", "CacheFormatError", "DomainError",
    "InvariantViolation", "PoleError", "TruncationError", "XiForgeError", "CoeffTable", "xi_coeff",
    "xi_coeff_table", "SpecFunContext", "xi_direct", "zero_sums", "criterion_report", "run_suite",
]
