"""Noncommutative calculus on finite-dimensional algebras and polynomial forms."""

from .calculus import (
    Bimodule,
    DerivationSpace,
    HochschildLow,
    KaehlerForms,
    TangentObject,
    bimodule_maps,
    derivation_decomposition,
    derivation_degrees,
    derivations,
    graded_derivations,
    hochschild_low,
    inner_derivation,
    is_derivation,
    kaehler_one_forms,
    regular_bimodule,
    sl_bracket_check,
    tangent_object,
)
from .fedosov import (
    Form,
    FormsArena,
    fedosov_commutator,
    fedosov_identity_report,
    fedosov_product,
    parse_form,
)
from .filtrations import (
    AssociatedGraded,
    CommutatorFiltration,
    FiltrationChain,
    commutator_filtration,
    odd_ideal_filtration,
)
