"""Graded finite-dimensional algebras: data, builders, structure."""

from .builders import (
    base_field,
    clifford,
    corner_algebra,
    corner_basis,
    direct_product,
    elementary_grading,
    from_name,
    function_algebra,
    grassmann,
    matrix_algebra,
    quaternions,
    tensor_with_commutative,
    truncated_polynomial,
    upper_triangular,
)
from .core import (
    FiniteGradedAlgebra,
    GradedAlgebraMorphism,
    HomogeneousElement,
    basis_element,
    homogeneous,
    identity_morphism,
    ideal_closure,
    quotient_algebra,
    span_product,
    subalgebra,
    unit_morphism,
    validate_algebra,
    verify_graded_iso,
    verify_morphism,
    zero_algebra,
)
from .group import TRIVIAL, Z, Z2, GradingGroup, z2_power
from .structure import center, center_radical_local, radical

build_matrix_algebra = matrix_algebra
build_upper_triangular = upper_triangular
build_grassmann_truncated = grassmann
build_clifford = clifford
