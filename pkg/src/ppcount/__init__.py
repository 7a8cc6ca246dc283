"""Counting permutations of GF(q) whose permutation polynomial has degree
below q - 2."""

from .bounds import BoundReport, theorem_report
from .counting import (CountResult, SubsetMask, count, count_exhaustive,
                       count_inclusion_exclusion, count_via_permanent, ns_bruteforce,
                       ns_formula, ryser_permanent)
from .exactcyc import CycInt
from .gf import FieldSpec, FiniteField, build_field, gf, parse_field_spec
from .permpoly import Permutation, PolyFq, coeff_x_qm2, interpolate, is_low_degree

__version__ = "0.1.0"

__all__ = [
    "BoundReport", "CountResult", "CycInt", "FieldSpec", "FiniteField", "Permutation", "PolyFq",
    "SubsetMask", "build_field", "coeff_x_qm2", "count", "count_exhaustive",
    "count_inclusion_exclusion", "count_via_permanent", "gf", "interpolate", "is_low_degree",
    "ns_bruteforce", "ns_formula", "parse_field_spec", "ryser_permanent", "theorem_report",
]
