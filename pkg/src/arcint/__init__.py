"""Exact motivic integration of products of linear forms over arc spaces.

The integral of |prod of linear forms| over the arc space of affine
n-space is a rational function in the Lefschetz class L; this package
computes it exactly and verifies every formula against brute-force
integration over truncated discrete valuation rings at desk scale.
"""

from .arrangements import (LinearForm, StratumSpec, count_stratum_points,
                           kernel_restrict, stratum_class)
from .engine import (FormProduct, MotivicResult, OneVarResult, ValidityReport,
                     change_of_variables, classify_validity, conditioned_term,
                     integrate_general, integrate_onevar, integrate_product,
                     newton_measure, separate_variables, uniformizer_scale_term)
from .errors import (ArcintError, BudgetError, InternalError, ParseError,
                     PoleError, SeparabilityError, StrictValidityError)
from .exact import LPolynomial, RationalFunctionL
from .finitefield import FqField, ZeroDimClass, count_roots, degree_multiset, fq_construct
from .oracle import (Bracket, cylinder_count, equalchar_bracket,
                     padic_bracket_wq, padic_bracket_zp)
from .witt import (WittContext, WittVector, universal_coordinate_polys,
                   witt_context, witt_eval_poly)

__version__ = "0.1.0"

__all__ = [
    "ArcintError", "Bracket", "BudgetError", "FormProduct", "FqField",
    "InternalError", "LPolynomial", "LinearForm", "MotivicResult",
    "OneVarResult", "ParseError", "PoleError", "RationalFunctionL",
    "SeparabilityError", "StratumSpec", "StrictValidityError",
    "ValidityReport", "WittContext", "WittVector", "ZeroDimClass",
    "change_of_variables", "classify_validity", "conditioned_term",
    "count_roots", "count_stratum_points", "cylinder_count",
    "degree_multiset", "equalchar_bracket", "fq_construct",
    "integrate_general", "integrate_onevar", "integrate_product",
    "kernel_restrict", "newton_measure", "padic_bracket_wq",
    "padic_bracket_zp", "separate_variables", "stratum_class",
    "uniformizer_scale_term", "universal_coordinate_polys",
    "witt_context", "witt_eval_poly",
]
