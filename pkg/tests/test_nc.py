import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gradedpi.algebra import (
    Z2,
    base_field,
    clifford,
    elementary_grading,
    grassmann,
    matrix_algebra,
    quaternions,
    truncated_polynomial,
    upper_triangular,
)
from gradedpi.errors import CapOverflow, GroupMismatch, InputError
from gradedpi.nc import (
    FormsArena,
    commutator_filtration,
    derivation_decomposition,
    derivations,
    fedosov_commutator,
    fedosov_identity_report,
    fedosov_product,
    graded_derivations,
    hochschild_low,
    is_derivation,
    kaehler_one_forms,
    odd_ideal_filtration,
    regular_bimodule,
    sl_bracket_check,
    tangent_object,
)

ALGEBRAS = [
    base_field(),
    truncated_polynomial(2),
    truncated_polynomial(3),
    matrix_algebra(2),
    upper_triangular(2),
    upper_triangular(3),
    grassmann(2),
    quaternions(),
    clifford([1, -1]),
]


@pytest.mark.parametrize("A", ALGEBRAS, ids=lambda A: A.name)
def test_one_forms_dimension_and_bimodule(A):
    om = kaehler_one_forms(A)
    assert om.dim == A.dim ** 2 - A.dim
    assert om.bimodule.check().verdict is True


def test_one_forms_dual_numbers():
    A = truncated_polynomial(2)
    om = kaehler_one_forms(A)
    assert om.dim == 2
    t = [0, 1]
    assert om.delta_tensor(t) == [0, 1, -1, 0]
    assert any(om.delta(t))


def test_universal_derivation_is_a_derivation():
    A = matrix_algebra(2)
    om = kaehler_one_forms(A)
    D = [[0] * A.dim for _ in range(om.dim)]
    for i in range(A.dim):
        col = om.delta(A.basis_vector(i))
        for k in range(om.dim):
            D[k][i] = col[k]
    assert is_derivation(A, om.bimodule, D)


@pytest.mark.parametrize("A,dim", [(truncated_polynomial(2), 1), (matrix_algebra(2), 3), (base_field(), 0)])
def test_derivation_dimensions(A, dim):
    Der = derivations(A)
    assert Der.dim == dim
    assert all(is_derivation(A, regular_bimodule(A), D) for D in Der.basis)


@pytest.mark.parametrize("A", ALGEBRAS, ids=lambda A: A.name)
def test_exact_sequence(A):
    h = hochschild_low(A)
    assert h.certificate.verdict is True
    assert A.dim - h.hh0 == len(h.inner)
    assert h.hh1 == h.derivations.dim - len(h.inner)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_matrix_algebras_sl(r):
    assert hochschild_low(matrix_algebra(r)).hh1 == 0
    assert sl_bracket_check(r).verdict is True


@pytest.mark.parametrize("l", [1, 2, 3, 4])
def test_upper_triangular_derivations_inner(l):
    assert hochschild_low(upper_triangular(l)).hh1 == 0


def test_dual_numbers_hh1():
    h = hochschild_low(truncated_polynomial(2))
    assert (h.hh0, len(h.inner), h.hh1) == (2, 0, 1)


@pytest.mark.parametrize("A", [matrix_algebra(2), base_field(), truncated_polynomial(3), upper_triangular(2)], ids=lambda A: A.name)
def test_tangent_object(A):
    t = tangent_object(A)
    assert t.certificate.verdict is True
    assert len(t.bimodule_maps) == t.derivations.dim
    if t.forward:
        n = len(t.forward)
        prod = [[sum(t.inverse[i][k] * t.forward[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        assert prod == [[int(i == j) for j in range(n)] for i in range(n)]


def test_tangent_dimensions_m2():
    t = tangent_object(matrix_algebra(2))
    assert t.derivations.dim == 3 and len(t.bimodule_maps) == 3


def test_zero_derivation_round_trip():
    t = tangent_object(matrix_algebra(2))
    zero = [0] * t.derivations.dim
    assert [sum(r[i] * zero[i] for i in range(len(zero))) for r in t.inverse] == zero


def test_graded_derivations_e2():
    E = grassmann(2)
    euler = [[0] * 4 for _ in range(4)]
    for i, lab in enumerate(E.labels):
        euler[i][i] = len(lab) // 2 if lab != "1" else 0
    D0 = graded_derivations(E, (0,))
    assert D0.coordinates(euler) is not None
    interior = [[0] * 4 for _ in range(4)]
    interior[0][E.labels.index("e1")] = 1
    interior[E.labels.index("e2")][E.labels.index("e1e2")] = 1
    # ungraded Leibniz fails for e1 -> 1: D(e1 e1) = 0 but D(e1) e1 + e1 D(e1) = 2 e1
    assert graded_derivations(E, (1,)).coordinates(interior) is None
    assert not is_derivation(E, regular_bimodule(E), interior)


@pytest.mark.parametrize("A", [grassmann(2), grassmann(3), elementary_grading(2, Z2, [0, 1]), clifford([1])], ids=lambda A: A.name)
def test_derivation_decomposition(A):
    rep = derivation_decomposition(A)
    assert rep.verdict is True
    assert sum(rep.invariants["components"].values()) == rep.invariants["der_dim"]


# -- Fedosov ---------------------------------------------------------------------

def test_fedosov_examples():
    F = FormsArena(2, 3)
    x1, x2 = F.x(1), F.x(2)
    assert fedosov_product(x1, x2) == F.parse("x1*x2 + 1/2 dx1^dx2")
    assert fedosov_commutator(x1, x2) == F.parse("dx1^dx2")
    beta = F.parse("x1^2*x2 - 3 dx1^dx2")
    assert fedosov_product(F.one(), beta) == beta


def test_fedosov_report():
    rep = fedosov_identity_report(2, 3, 100, seed=0)
    assert rep.verdict is True
    assert rep.invariants["seed"] == 0
    assert rep.invariants["triple_commutator_in_sampled_kernel"] is True
    assert rep.invariants["nonzero_commutators"] > 0


def test_fedosov_one_variable_commutative():
    rep = fedosov_identity_report(1, 5, 40, seed=3)
    assert rep.verdict is True
    assert rep.invariants["commutator_in_sampled_kernel"] is True


def test_constant_gamma_kills_commutator():
    F = FormsArena(2, 3)
    rng = random.Random(1)
    a, b = F.random_even(rng, 1), F.random_even(rng, 1)
    gamma = F.one().scale(7)
    assert fedosov_commutator(fedosov_commutator(a, b), gamma).is_zero()


def test_cap_overflow():
    F = FormsArena(2, 2)
    with pytest.raises(CapOverflow):
        fedosov_product(F.parse("x1^2"), F.x(2))
    with pytest.raises(CapOverflow):
        F.parse("x1^3")


def test_form_parsing():
    F = FormsArena(3, 3)
    assert F.parse("dx2^dx1") == F.parse("-dx1^dx2")
    assert F.parse("dx1^dx1").is_zero()
    assert str(F.parse("x1^2*x2 dx1^dx3")) == "x1^2*x2 dx1^dx3"
    with pytest.raises(InputError):
        F.parse("x4")
    with pytest.raises(InputError):
        F.parse("y1")


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_d_squared_zero(seed):
    F = FormsArena(3, 3)
    rng = random.Random(seed)
    a = F.random_even(rng, 3, terms=4)
    assert a.d().d().is_zero()
    b = F.random_even(rng, 0)
    # Leibniz for d on the wedge product, even a
    assert a.wedge(b).d() == a.d().wedge(b) + a.wedge(b.d())


# -- filtrations -----------------------------------------------------------------

def test_odd_ideal_e3():
    g = odd_ideal_filtration(grassmann(3))
    assert g.chain.dims[1:] == [7, 4, 1, 0]
    assert g.report.invariants["graded_dims"] == [1, 3, 3, 1]
    assert g.algebra.dim == 8
    assert g.algebra.forget_grading().same_structure(grassmann(3).forget_grading())


def test_odd_ideal_purely_even():
    A = matrix_algebra(2).embed_trivially(Z2)
    g = odd_ideal_filtration(A)
    assert g.chain.dims == [4, 0]
    assert g.algebra.forget_grading().same_structure(A.forget_grading())


def test_odd_ideal_needs_z2():
    with pytest.raises(GroupMismatch):
        odd_ideal_filtration(matrix_algebra(2))


def test_odd_ideal_products_respect_levels():
    for k in (2, 4):
        g = odd_ideal_filtration(grassmann(k))
        assert g.report.verdict is True
        assert sum(g.report.invariants["graded_dims"]) == 2 ** k


def test_commutator_filtration_commutative():
    A = truncated_polynomial(3)
    c = commutator_filtration(A)
    assert c.chain.dims[1] == 0 and c.order == 0
    assert c.abelianization.same_structure(A)


def test_commutator_filtration_ut2():
    A = upper_triangular(2)
    c = commutator_filtration(A)
    F1 = c.chain.levels[1]
    assert len(F1) == 1 and F1[0][A.labels.index("e12")] != 0 and sum(1 for x in F1[0] if x) == 1
    assert c.chain.dims[2] == 0
    assert c.abelianization.dim == 2 and c.abelianization.is_commutative()
    assert c.order == 1


def test_commutator_filtration_m2():
    c = commutator_filtration(matrix_algebra(2), k_max=4)
    assert c.chain.dims[1] == 4
    assert c.abelianization.dim == 0
    assert c.order == "order > 4"
    assert any("unit" in n for n in c.report.notes)


def test_lie_weight_mode_differs_on_ut2():
    c = commutator_filtration(upper_triangular(2), k_max=3, mode="lie_weight")
    assert c.chain.dims[:3] == [3, 1, 1]
    assert c.order == "order > 3"
