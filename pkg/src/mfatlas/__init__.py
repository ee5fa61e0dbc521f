"""Exact-arithmetic Mishchenko-Fomenko systems on sl_n.

Everything is computed over the Gaussian rationals Q(i): scalars are pairs of
fractions.Fraction, polynomials are sparse dicts keyed by exponent tuples, and
linear algebra is fraction-free.  No floats anywhere.
"""

from .scalar import Scalar, as_scalar
from .mpoly import MPoly, poly_diff, poly_eval
from .linalg import ExactMatrix, mat_rank, mat_kernel

__all__ = [
    "Scalar",
    "as_scalar",
    "MPoly",
    "poly_diff",
    "poly_eval",
    "ExactMatrix",
    "mat_rank",
    "mat_kernel",
]

__version__ = "0.1.0"
