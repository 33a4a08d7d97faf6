"""Bernoulli numbers, their tree and determinant forms, and zeta(s) via nested Bernoulli series."""

from .analytic import (bernoulli_function, binom_extended, functional_equation_factor,
                       functional_equation_rhs, operator_power_series, zeta_nested, zeta_one_minus_s)
from .exact import Convention, bernoulli, bernoulli_table, egf_coefficients, zeta_even_exact, zeta_neg_int
from .gamma import gamma_complex
from .hp import EvalResult, PoleError, SeriesConfig, Status, working_precision
from .kernel import BACKEND
from .reference import EmParams, zeta_dirichlet, zeta_euler_maclaurin
from .tree import (ROOT, SIGMA, BudgetExceeded, CalibrationMismatch, FormalTerm, TreeRow, apply_ol,
                   apply_or, bernoulli_via_tree, hessenberg_matrix, iter_row, s_det, s_row_sum, tree_row)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Convention", "bernoulli", "bernoulli_table", "egf_coefficients", "zeta_even_exact",
    "zeta_neg_int", "FormalTerm", "ROOT", "SIGMA", "TreeRow", "apply_ol", "apply_or", "tree_row",
    "iter_row", "s_row_sum", "bernoulli_via_tree", "hessenberg_matrix", "s_det", "BudgetExceeded",
    "CalibrationMismatch", "EvalResult", "PoleError", "SeriesConfig", "Status", "working_precision",
    "gamma_complex", "binom_extended", "operator_power_series", "bernoulli_function",
    "zeta_one_minus_s", "functional_equation_factor", "functional_equation_rhs", "zeta_nested",
    "EmParams", "zeta_euler_maclaurin", "zeta_dirichlet",
]
