"""Finite-ring engine: constructions, decompositions, radicals and a checkable theorem registry."""
from .analysis import jacobson_radical, jstar_radical, prime_radical, special_sets
from .decompositions import Decomposition, Kind, find_decomposition, verify_decomposition
from .expr import parse_ring_expr, render
from .ideals import Side, ideal_generated_by, quotient_ring
from .limits import BudgetExceeded, Limits
from .predicates import PredicateResult, check_property, covers_id_u_n, ring_is
from .rings import Ring, build_ring, corner_ring, ring
from .theorems import REGISTRY, TheoremReport, run_all, run_check

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "Decomposition",
    "Kind",
    "Limits",
    "PredicateResult",
    "REGISTRY",
    "Ring",
    "Side",
    "TheoremReport",
    "build_ring",
    "check_property",
    "corner_ring",
    "covers_id_u_n",
    "find_decomposition",
    "ideal_generated_by",
    "jacobson_radical",
    "jstar_radical",
    "parse_ring_expr",
    "prime_radical",
    "quotient_ring",
    "render",
    "ring",
    "ring_is",
    "run_all",
    "run_check",
    "special_sets",
    "verify_decomposition",
]
