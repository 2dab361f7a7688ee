"""Finite topological spaces and presheaves of graded algebras on them."""

from .cech import VectorPresheaf, cech_h1, hom_presheaf
from .presheaf import (
    PresheafMorphism,
    PresheafOfAlgebras,
    Stalk,
    build_function_sheaf,
    check_presheaf,
    check_sheaf,
    constant_presheaf,
    constant_sheaf,
    germ_colimit_dim,
    irredundant_covers,
    label_presheaf,
    presheaf_from_maps,
    pushforward,
    random_presheaf,
    sheafify,
    stalk_at,
    stalk_isomorphism,
)
from .ringed import (
    RingedMorphism,
    build_recovering_morphism,
    build_relatively_free_presheaf,
    check_locally_ringed,
    default_components,
    lift_base_map,
)
from .topology import (
    FiniteTopology,
    all_small_topologies,
    check_continuous,
    discrete,
    enumerate_topologies,
    indiscrete,
    point,
    pseudocircle,
    sierpinski,
    validate_topology,
)
