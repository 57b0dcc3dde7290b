"""Discrete Morrey norms, weak quasi-norms and inclusion witnesses on Z."""

from .core import (Exponents, ExponentError, NormResult, SparseSequence, Window,
                   minimal_cover, validate_exponents, window_weight)
from .norms import dense_oracle_norm, discrete_norm, sup_norm, weak_norm
from .seqfile import load_sequence, store_sequence

__version__ = "0.1.0"

__all__ = [
    "Exponents", "ExponentError", "NormResult", "SparseSequence", "Window",
    "dense_oracle_norm", "discrete_norm", "load_sequence", "minimal_cover",
    "store_sequence", "sup_norm", "validate_exponents", "weak_norm", "window_weight",
]
