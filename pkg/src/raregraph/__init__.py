"""Exact construction of a function whose graph has Hausdorff dimension 2 but
meets every vertical translate of each family member's graph at most once."""

from .construction import F_minus_f, TruncatedValue, digits_F, eval_F, g, h, y_digit
from .exact import BitString, Dyadic, bit, bits_window, frac
from .family import IDENTITY, MIXED, ZERO, FamilyFunction, FunctionFamily, eval_f, parse_family
from .partition import classify, count_T, pair_index, s_of

__version__ = "0.1.0"
