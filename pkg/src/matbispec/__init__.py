"""Exact verification of matrix bispectral triples over Q."""
from .arith import BiFraction, BiPoly, MatF, Q
from .closure import SpanBasis, contains, span_close
from .nilpotent import NilpotentData, ThetaPoly, build_b, gamma_membership, standard_data
from .operators import OperatorX, OperatorZ, WaveFunction

__version__ = "0.1.0"

__all__ = [
    "BiFraction", "BiPoly", "MatF", "Q", "SpanBasis", "contains", "span_close",
    "NilpotentData", "ThetaPoly", "build_b", "gamma_membership", "standard_data",
    "OperatorX", "OperatorZ", "WaveFunction",
]
