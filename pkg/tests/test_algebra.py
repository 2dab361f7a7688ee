from fractions import Fraction

import pytest

from gradedpi.algebra import (
    TRIVIAL,
    Z2,
    FiniteGradedAlgebra,
    GradedAlgebraMorphism,
    GradingGroup,
    base_field,
    basis_element,
    center,
    center_radical_local,
    clifford,
    corner_algebra,
    direct_product,
    from_name,
    function_algebra,
    grassmann,
    homogeneous,
    matrix_algebra,
    quaternions,
    radical,
    span_product,
    tensor_with_commutative,
    truncated_polynomial,
    upper_triangular,
    validate_algebra,
    verify_graded_iso,
    verify_morphism,
    z2_power,
)
from gradedpi.algebra.core import is_associativity_violation
from gradedpi.errors import DegreeMismatch, GradingError, PreconditionError, StructureError
from gradedpi.linalg import matrix_rank

BUILT = [
    base_field(),
    matrix_algebra(1),
    matrix_algebra(2),
    matrix_algebra(3),
    upper_triangular(2),
    upper_triangular(3),
    grassmann(0),
    grassmann(3),
    grassmann(4, graded=False),
    clifford([1]),
    clifford([-1, -1, -1]),
    quaternions(),
    truncated_polynomial(3),
    function_algebra(3),
]


@pytest.mark.parametrize("A", BUILT, ids=lambda A: A.name)
def test_builders_validate(A):
    assert validate_algebra(A).verdict is True


def test_group_arithmetic():
    G = GradingGroup(1, (2, 3))
    assert G.add((1, 1, 2), (2, 1, 2)) == (3, 0, 1)
    assert G.neg((1, 1, 1)) == (-1, 1, 2)
    assert Z2.elements() == [(0,), (1,)]
    with pytest.raises(StructureError):
        GradingGroup(0, (1,))
    with pytest.raises(StructureError):
        Z2.element((0, 1))


def test_matrix_units_and_elementary_grading():
    M2 = matrix_algebra(2)
    assert M2.dim == 4
    e11, e12 = basis_element(M2, "e11"), basis_element(M2, "e12")
    assert M2.mul(list(e11.coords), list(e12.coords)) == list(e12.coords)
    graded = matrix_algebra(2, {(0, 1): (1,), (1, 0): (1,)}, Z2)
    assert validate_algebra(graded).verdict is True
    assert graded.component_dims() == {(0,): 2, (1,): 2}
    with pytest.raises(GradingError):
        matrix_algebra(2, {(0, 1): (1,)}, Z2)


def test_m1_is_field():
    assert matrix_algebra(1).same_structure(base_field().regraded(TRIVIAL, [()]))
    assert matrix_algebra(1).dim == 1


def test_grassmann_components_and_sign():
    E3 = grassmann(3)
    assert E3.component_dims() == {(0,): 4, (1,): 4}
    E2 = grassmann(2)
    e1, e2 = E2.basis_vector(E2.label_index("e1")), E2.basis_vector(E2.label_index("e2"))
    assert E2.mul(e1, e2) == [-x for x in E2.mul(e2, e1)]
    assert grassmann(0).dim == 1


def test_altered_m2_associativity_witness():
    M2 = matrix_algebra(2)
    consts = {(i, j, k): c for i, j, k, c in M2.constants()}
    e12, e21, e11, e22 = (M2.label_index(s) for s in ("e12", "e21", "e11", "e22"))
    del consts[(e12, e21, e11)]
    consts[(e12, e21, e22)] = 1
    bad = FiniteGradedAlgebra(TRIVIAL, M2.degrees, consts, M2.unit, M2.labels)
    rep = validate_algebra(bad)
    assert rep.verdict is False
    assert rep.witness["axiom"] == "associativity"
    assert is_associativity_violation(bad, *rep.witness["indices"])
    assert is_associativity_violation(bad, e12, e21, e12)


def test_malformed_input_is_structural():
    with pytest.raises(StructureError):
        FiniteGradedAlgebra(TRIVIAL, [()], {(0, 0, 1): 1}, [1])
    with pytest.raises(StructureError):
        FiniteGradedAlgebra(TRIVIAL, [()], {}, [1, 0])


def test_bad_grading_reported_not_raised():
    A = FiniteGradedAlgebra(Z2, [(0,), (0,)], {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1}, [1, 0])
    assert validate_algebra(A).verdict is True
    B = A.regraded(Z2, [(0,), (1,)])
    assert validate_algebra(B).verdict is True
    C = FiniteGradedAlgebra(Z2, [(0,), (1,)], {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1, (1, 1, 1): 1}, [1, 0])
    rep = validate_algebra(C)
    assert rep.verdict is False and rep.witness["axiom"] == "grading"


def test_upper_triangular():
    UT2, UT3 = upper_triangular(2), upper_triangular(3)
    assert UT2.dim == 3 and UT3.dim == 6
    assert upper_triangular(1).dim == 1
    comms = [UT3.commutator(UT3.basis_vector(i), UT3.basis_vector(j)) for i in range(6) for j in range(6)]
    assert matrix_rank([c for c in comms if any(c)]) == 3
    R = radical(UT2)
    assert R == [UT2.basis_vector(UT2.label_index("e12"))]


def test_clifford():
    H = quaternions()
    i, j = H.basis_vector(H.label_index("v1")), H.basis_vector(H.label_index("v2"))
    assert H.mul(i, i) == [-x for x in H.unit_vector()]
    assert H.mul(i, j) == [-x for x in H.mul(j, i)]
    C1 = clifford([1])
    e = [Fraction(1, 2), Fraction(1, 2)]
    assert C1.mul(e, e) == e
    for q in ([1], [1, -1], [-1, -1, -1], [2, 3, 5, 7]):
        assert clifford(q).component_dims()[(0,)] == 2 ** (len(q) - 1)
    with pytest.raises(StructureError):
        clifford([1, 0])


def test_tensor_with_commutative():
    M2 = matrix_algebra(2)
    T = tensor_with_commutative(M2, function_algebra(2))
    assert T.dim == 8 and validate_algebra(T).verdict is True
    # isomorphic to M2 x M2: the basis relabelling is an isomorphism
    P = direct_product([M2, M2])
    perm = [[0] * 8 for _ in range(8)]
    for a in range(4):
        for p in range(2):
            perm[p * 4 + a][a * 2 + p] = 1
    assert verify_graded_iso(GradedAlgebraMorphism(T, P, perm)).verdict is True
    E2t = tensor_with_commutative(grassmann(2), truncated_polynomial(2))
    assert E2t.dim == 8 and E2t.component_dims() == {(0,): 4, (1,): 4}
    same = tensor_with_commutative(M2, base_field())
    assert same.dim == 4 and verify_graded_iso(GradedAlgebraMorphism(same, M2, [[int(i == j) for j in range(4)] for i in range(4)]))
    with pytest.raises(PreconditionError):
        tensor_with_commutative(M2, M2)


def test_tensor_unit_embedding():
    A, C = upper_triangular(2), truncated_polynomial(2)
    T = tensor_with_commutative(A, C)
    mat = [[0] * A.dim for _ in range(T.dim)]
    for i in range(A.dim):
        for p in range(C.dim):
            mat[i * C.dim + p][i] = C.unit[p]
    phi = GradedAlgebraMorphism(A, T, mat)
    assert verify_morphism(phi).verdict is True
    assert matrix_rank(mat) == A.dim


def test_direct_product():
    E2 = grassmann(2)
    G = z2_power(2)
    P = direct_product(
        [E2, E2],
        regrade=(G, [[(d[0], 0) for d in E2.degrees], [(0, d[0]) for d in E2.degrees]]),
    )
    assert P.dim == 8 and validate_algebra(P).verdict is True
    FF = direct_product([base_field(), base_field()])
    assert FF.dim == 2 and FF.is_commutative()
    assert FF.mul([1, 0], [1, 0]) == [1, 0] and FF.mul([1, 0], [0, 1]) == [0, 0]
    assert direct_product([E2]) is E2
    with pytest.raises(GradingError):
        direct_product([E2], regrade=(Z2, [[(1,), (0,), (0,), (0,)]]))


def test_corner_algebra():
    M2, M3 = matrix_algebra(2), matrix_algebra(3)
    e11 = basis_element(M2, "e11")
    assert corner_algebra(M2, e11).dim == 1
    e = homogeneous(M3, [1, 0, 0, 0, 1, 0, 0, 0, 0])
    C = corner_algebra(M3, e)
    assert C.dim == 4
    # labels of the chosen basis are the matrix units with i, j <= 2
    iso = [[int(C.labels[j] == M2.labels[i]) for j in range(4)] for i in range(4)]
    assert verify_graded_iso(GradedAlgebraMorphism(C, M2, iso)).verdict is True
    with pytest.raises(PreconditionError):
        corner_algebra(M2, basis_element(M2, "e12"))
    whole = corner_algebra(M3, homogeneous(M3, M3.unit_vector()))
    ident = [[int(i == j) for j in range(9)] for i in range(9)]
    assert verify_morphism(GradedAlgebraMorphism(whole, M3, ident)).verdict is True


def test_corner_rejects_non_neutral():
    E2 = grassmann(2)
    with pytest.raises((PreconditionError, DegreeMismatch)):
        corner_algebra(E2, basis_element(E2, "e1"))


def test_locality():
    res = center_radical_local(matrix_algebra(2))
    assert (len(res.center), len(res.radical), res.is_local) == (1, 0, False)
    E4 = center_radical_local(grassmann(4))
    assert E4.is_local is True and len(E4.radical) == 15
    assert center_radical_local(upper_triangular(2)).is_local is False
    assert center_radical_local(truncated_polynomial(3)).is_local is True
    assert center_radical_local(quaternions()).is_local == "inconclusive"
    assert center_radical_local(function_algebra(2)).is_local is False


@pytest.mark.parametrize("A", BUILT, ids=lambda A: A.name)
def test_center_rank_nullity(A):
    images = []
    for i in range(A.dim):
        a = A.basis_vector(i)
        images.append([x for j in range(A.dim) for x in A.commutator(a, A.basis_vector(j))])
    rank = matrix_rank(images) if images else 0
    assert A.dim - len(center(A)) == rank


def test_span_product_and_from_name():
    UT3 = upper_triangular(3)
    basis = [UT3.basis_vector(i) for i in range(6)]
    assert len(span_product(UT3, basis, basis)) == 6
    assert from_name("M:2").same_structure(matrix_algebra(2))
    assert from_name("Cl:-1,-1").dim == 4
    assert from_name("E:2@triv").group == TRIVIAL
    assert from_name("M:2@z2").group == Z2
    with pytest.raises(StructureError):
        from_name("Q:3")


def test_to_dict_round_trip_fields():
    d = clifford([Fraction(1, 2)]).to_dict()
    assert d["dim"] == 2 and [1, 1, 0, "1/2"] in d["mul"]
