"""Square roots of Sturmian and optimal squareful words, computed exactly."""

from .cf import (
    FIBONACCI,
    CircleInterval,
    CirclePoint,
    Convention,
    Slope,
    parse_point,
    parse_slope,
)
from .squares import (
    Factorization,
    NoMinimalSquarePrefix,
    SquarefulParams,
    minimal_roots,
    parse_minimal_squares,
    square_root_of,
)
from .sturmian import SturmianSpec, generate, sqrt_prefix
from .words import interval_of, is_factor

__all__ = [
    "FIBONACCI", "CircleInterval", "CirclePoint", "Convention", "Slope",
    "parse_point", "parse_slope", "Factorization", "NoMinimalSquarePrefix",
    "SquarefulParams", "minimal_roots", "parse_minimal_squares", "square_root_of",
    "SturmianSpec", "generate", "sqrt_prefix", "interval_of", "is_factor",
]
