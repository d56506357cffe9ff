"""Decomposition of univariate polynomials over finite fields and exact
counts of the decomposable ones."""

from .errors import BudgetExceeded, DomainError, PolycountError, UsageError
from .field import FieldElement, FieldSpec, parse_element, parse_field, prime_power
from .poly import Poly, compose, derivative, format_poly, parse_poly
from .decompose import (NormalDecomposition, SplitResult, WildOutcome, brute_decompose,
                        decompose_all, tame_decompose, wild_decompose)
from .ritt import (CollisionTuple, FirstCaseParams, RecoveryFailed, SecondCaseParams,
                   dickson, first_case_build, first_case_recover, frobenius_collision,
                   mutual_exclusion_check, second_case_build, second_case_recover)
from .formulas import (alpha, beta, beta_star, bluher_counts, brute_bluher, classify_leaf,
                       count_S, count_T, formula_inputs, frobenius_count, gcd_structure,
                       intersection_count_exact, lower_bound_wild, total_polys)
from .census import (CensusOptions, CensusReport, enumerate_decomposables,
                     enumerate_intersection, verify_bounds)
from .bounds import Bound, evaluate_bounds

__version__ = "0.1.0"
