"""Graded polynomial identities: free algebra, evaluation, kernels, varieties."""

from .engine import (
    Budget,
    IdentityKernel,
    MultilinearPattern,
    admissible_tuples,
    all_patterns,
    evaluate,
    find_witness,
    identity_kernel,
    is_graded_identity,
    multilinearize,
    normalize_polynomial,
    pattern_of,
)
from .grassmann import GrassmannOracle, grassmann_oracle, reorder_sign
from .parser import parse_polynomial
from .polynomial import (
    GradedPolynomial,
    GradedVariable,
    commutator,
    left_normed,
    standard_polynomial,
    x,
)
from .relfree import RelativelyFreeTruncation, relatively_free_truncation
from .varieties import codimension_table, consequences, graded_codimensions, variety_contains

__all__ = [
    "Budget", "IdentityKernel", "MultilinearPattern", "admissible_tuples", "all_patterns",
    "evaluate", "find_witness", "identity_kernel", "is_graded_identity", "multilinearize",
    "normalize_polynomial", "pattern_of", "GrassmannOracle", "grassmann_oracle", "reorder_sign",
    "parse_polynomial", "GradedPolynomial", "GradedVariable", "commutator", "left_normed",
    "standard_polynomial", "x", "RelativelyFreeTruncation", "relatively_free_truncation",
    "codimension_table", "consequences", "graded_codimensions", "variety_contains",
]
