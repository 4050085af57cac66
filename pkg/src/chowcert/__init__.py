"""Exact symbolic checks for product-rank computations on 3x3 permanents and determinants."""

from .poly import Polynomial, Ring, parse
from .ideals import Ideal, NormalizedIdeal, normalize
from .certificate import Certificate

__version__ = "0.1.0"

__all__ = ["Polynomial", "Ring", "parse", "Ideal", "NormalizedIdeal", "normalize", "Certificate"]
