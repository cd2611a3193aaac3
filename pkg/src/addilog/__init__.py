"""Exact computations for additive dilogarithms.

Subpackages by topic: ``fields``/``poly``/``rational``/``series`` for exact
algebra, ``forms``/``tensor`` for differentials and k ⊗ k^×, ``bloch`` for
TB₂, ``lie`` for the co-Lie algebra, ``chow`` for additive cycles,
``artin_schreier`` for characteristic p, and ``suite``/``cli`` for the
harness.
"""

from .errors import AddilogError, ParseError
from .fields import QQ, artin_schreier_field, function_field, prime_field, rational_function_field, simple_extension
from .parsing import parse_curve, parse_expression, parse_field_descriptor, parse_generator
from .report import Verification

__version__ = "0.1.0"

__all__ = [
    "AddilogError",
    "ParseError",
    "QQ",
    "Verification",
    "artin_schreier_field",
    "function_field",
    "parse_curve",
    "parse_expression",
    "parse_field_descriptor",
    "parse_generator",
    "prime_field",
    "rational_function_field",
    "simple_extension",
]
