from itertools import permutations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gradedpi.algebra import (
    TRIVIAL,
    Z2,
    base_field,
    basis_element,
    function_algebra,
    grassmann,
    matrix_algebra,
    subalgebra,
    tensor_with_commutative,
    truncated_polynomial,
    upper_triangular,
    validate_algebra,
)
from gradedpi.errors import BudgetExceeded, DegreeMismatch, GroupMismatch, InputError, MissingAssignment
from gradedpi.identities import (
    Budget,
    GradedPolynomial,
    GradedVariable,
    GrassmannOracle,
    MultilinearPattern,
    all_patterns,
    codimension_table,
    commutator,
    consequences,
    evaluate,
    grassmann_oracle,
    identity_kernel,
    is_graded_identity,
    multilinearize,
    parse_polynomial,
    relatively_free_truncation,
    standard_polynomial,
    variety_contains,
    x,
)
from gradedpi.identities.engine import _perms
from gradedpi.linalg import Echelon, matrix_rank

V1, V2 = GradedVariable(1), GradedVariable(2)
O1, O2 = GradedVariable(1, (1,)), GradedVariable(2, (1,))


def brute_kernel_dim(A, degrees):
    """Independent check: rank of the full evaluation matrix over all tuples."""
    n = len(degrees)
    perms = _perms(n)
    by = {g: [i for i, d in enumerate(A.degrees) if d == g] for g in set(degrees)}
    rows = []
    for tup in product(*(by[g] for g in degrees)):
        vals = []
        for sigma in perms:
            v = A.unit_vector()
            for s in sigma:
                v = A.mul(v, A.basis_vector(tup[s]))
            vals.append(v)
        for k in range(A.dim):
            rows.append([vals[s][k] for s in range(len(perms))])
    return len(perms) - (matrix_rank(rows) if rows else 0)


# -- polynomials and parsing ------------------------------------------------------

def test_polynomial_arithmetic():
    f = x(1) * x(2) - x(2) * x(1)
    assert f == commutator(x(1), x(2))
    assert (f - f).terms == {}
    assert str(parse_polynomial("2*x1 - 1/2*x2")) == "2*x1 - 1/2*x2"
    assert f.is_multilinear() and not (x(1) * x(1)).is_multilinear()


def test_parser_features():
    assert parse_polynomial("[x1,x2]") == commutator(x(1), x(2))
    assert parse_polynomial("[x1,x2,x3]") == commutator(commutator(x(1), x(2)), x(3))
    s = parse_polynomial("s3(x1,x2,x3)")
    assert s == standard_polynomial([V1, V2, GradedVariable(3)]) and len(s.terms) == 6
    p = parse_polynomial("x1@1*x2@1+x2@1 x1@1")
    assert p.variables() == [O1, O2]
    assert parse_polynomial("x1^2") == x(1) * x(1)
    assert parse_polynomial("x1@3", Z2).variables() == [GradedVariable(1, (1,))]
    assert parse_polynomial("x1", Z2).variables() == [GradedVariable(1, (0,))]
    assert parse_polynomial("(x1+x2)*x3") == x(1) * x(3) + x(2) * x(3)
    for bad in ("", "x1 +", "[x1]", "s3(x1,x2)", "x0", "x1 )"):
        with pytest.raises(InputError):
            parse_polynomial(bad)


# -- evaluation -------------------------------------------------------------------

def test_evaluate_examples():
    M2 = matrix_algebra(2)
    val = evaluate(parse_polynomial("[x1,x2]"), M2, {V1: basis_element(M2, "e11"), V2: basis_element(M2, "e12")})
    assert val == M2.basis_vector(M2.label_index("e12"))
    E4 = grassmann(4)
    f = parse_polynomial("x1@1*x2@1+x2@1*x1@1")
    assert evaluate(f, E4, {O1: basis_element(E4, "e1"), O2: basis_element(E4, "e2")}) == E4.zero()
    with pytest.raises(DegreeMismatch):
        evaluate(parse_polynomial("[x1@0,x2@0]"), E4,
                 {GradedVariable(1, (0,)): basis_element(E4, "e1"), GradedVariable(2, (0,)): basis_element(E4, "e2")})
    with pytest.raises(MissingAssignment):
        evaluate(parse_polynomial("[x1,x2]"), M2, {V1: basis_element(M2, "e11")})


def test_evaluate_constant_is_unit_multiple():
    M2 = matrix_algebra(2)
    assert evaluate(GradedPolynomial.const(3), M2, {}) == [3, 0, 0, 3]


# -- multilinearization -----------------------------------------------------------

def test_multilinearize_examples():
    assert multilinearize(x(1) * x(1)) == [x(1) * x(2) + x(2) * x(1)]
    f = commutator(x(1), x(2))
    assert multilinearize(f) == [f]
    cube = multilinearize(x(1) * x(1) * x(1))[0]
    assert cube == sum((x(a) * x(b) * x(c) for a, b, c in permutations((1, 2, 3))), GradedPolynomial())
    odd = multilinearize(parse_polynomial("x1@1*x1@1"))[0]
    assert all(v.degree == (1,) for v in odd.variables())


def test_multilinearize_mixed_components():
    parts = multilinearize(x(1) * x(1) + x(2))
    assert len(parts) == 2 and all(p.is_multilinear() for p in parts)


# -- identity checks --------------------------------------------------------------

def test_is_graded_identity_examples():
    assert is_graded_identity(commutator(x(1), x(2)), truncated_polynomial(2)).verdict is True
    assert is_graded_identity(parse_polynomial("[x1,x2,x3]"), grassmann(5, graded=False)).verdict is True
    s4 = parse_polynomial("s4(x1,x2,x3,x4)")
    assert is_graded_identity(s4, matrix_algebra(2)).verdict is True
    rep = is_graded_identity(s4, matrix_algebra(3))
    assert rep.verdict is False
    M3 = matrix_algebra(3)
    sub = {GradedVariable(int(k[1:])): basis_element(M3, lab) for k, lab in rep.witness["substitution"].items()}
    assert any(evaluate(s4, M3, sub))


def test_square_identity_via_polarization():
    E = grassmann(4)
    assert is_graded_identity(parse_polynomial("x1@1*x1@1"), E).verdict is True
    assert is_graded_identity(x(1) * x(1), matrix_algebra(2)).verdict is False


def test_nonzero_constant_never_identity():
    assert is_graded_identity(GradedPolynomial.const(1), base_field()).verdict is False


# -- kernels ----------------------------------------------------------------------

def test_kernel_examples():
    k = identity_kernel(MultilinearPattern.trivial(2), base_field())
    assert k.codimension == 1 and k.kernel_basis == [commutator(x(1), x(2))]
    assert identity_kernel(MultilinearPattern.trivial(3), grassmann(6, graded=False)).codimension == 4
    k = identity_kernel(MultilinearPattern.of([(1,), (1,)]), grassmann(4))
    assert k.contains(parse_polynomial("x1@1*x2@1+x2@1*x1@1"))


@pytest.mark.parametrize("name,A,degs", [
    ("M2", matrix_algebra(2), [(), (), ()]),
    ("UT3", upper_triangular(3), [(), (), ()]),
    ("E3", grassmann(3), [(0,), (1,), (1,)]),
    ("E3-odd", grassmann(3), [(1,), (1,), (1,)]),
    ("M2z2", matrix_algebra(2, {(0, 1): (1,), (1, 0): (1,)}, Z2), [(0,), (1,), (1,)]),
])
def test_kernel_matches_brute_force(name, A, degs):
    k = identity_kernel(MultilinearPattern.of(degs), A)
    assert k.dimension == brute_kernel_dim(A, [A.group.element(g) if g else A.group.identity for g in degs])


def test_kernel_vectors_vanish():
    A = upper_triangular(3)
    k = identity_kernel(MultilinearPattern.trivial(3), A)
    for f in k.kernel_basis:
        for tup in product(range(A.dim), repeat=3):
            assign = {GradedVariable(i + 1): basis_element(A, t) for i, t in enumerate(tup)}
            assert not any(evaluate(f, A, assign))


def test_kernel_sn_closed():
    A = matrix_algebra(2)
    k = identity_kernel(MultilinearPattern.trivial(3), A)
    ech = Echelon()
    for v in k.vectors:
        ech.add(v)
    for f in k.kernel_basis:
        for tau in permutations((1, 2, 3)):
            moved = f.substitute({GradedVariable(i + 1): x(t) for i, t in enumerate(tau)})
            assert ech.contains(k.pattern.to_vector(moved))


def test_budget_errors():
    with pytest.raises(BudgetExceeded):
        identity_kernel(MultilinearPattern.trivial(7), base_field())
    with pytest.raises(BudgetExceeded):
        identity_kernel(MultilinearPattern.trivial(4), matrix_algebra(3), budget=Budget(operations=100))


# -- Grassmann oracle -------------------------------------------------------------

def test_oracle_examples():
    assert grassmann_oracle(MultilinearPattern.trivial(1)).codimension == 1
    assert grassmann_oracle(MultilinearPattern.trivial(3)).codimension == 4
    k = grassmann_oracle(MultilinearPattern.of([(1,), (1,)]))
    assert k.kernel_basis == [parse_polynomial("x1@1*x2@1+x2@1*x1@1")]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_oracle_matches_truncation(n):
    p = MultilinearPattern.trivial(n)
    assert grassmann_oracle(p).vectors == identity_kernel(p, grassmann(2 * n, graded=False)).vectors
    for q in all_patterns(n, [(0,), (1,)]):
        assert grassmann_oracle(q).vectors == identity_kernel(q, grassmann(2 * n)).vectors


def test_oracle_identity_check():
    E = GrassmannOracle()
    assert E.is_identity(parse_polynomial("[x1@0,x2@1]")).verdict is True
    assert E.is_identity(parse_polynomial("[x1@1,x2@1]")).verdict is False


# -- varieties --------------------------------------------------------------------

def test_variety_examples():
    M2, F = matrix_algebra(2), base_field()
    assert variety_contains(M2, F, 4).verdict is True
    rep = variety_contains(F, M2, 2)
    assert rep.verdict is False and rep.witness["separating_identity"] == "x1*x2 - x2*x1"
    assert rep.truncation_degree == 2
    assert variety_contains(GrassmannOracle(), grassmann(4), 3).verdict is True
    with pytest.raises(GroupMismatch):
        variety_contains(grassmann(2), M2, 2)


def test_codimension_tables():
    assert codimension_table(base_field(), 4) == [(1, 1), (2, 1), (3, 1), (4, 1)]
    assert codimension_table(GrassmannOracle(), 4) == [(1, 1), (2, 2), (3, 4), (4, 8)]
    assert codimension_table(matrix_algebra(2), 2) == [(1, 1), (2, 2)]


def test_generation_of_grassmann_identities():
    gens = [parse_polynomial(s) for s in ("[x1@0,x2@0]", "[x1@0,x2@1]", "x1@1*x2@1+x2@1*x1@1")]
    for n in range(1, 4):
        for p in all_patterns(n, [(0,), (1,)]):
            assert consequences(gens, p, Z2) == grassmann_oracle(p).vectors


@pytest.mark.parametrize("A", [matrix_algebra(2), upper_triangular(2), grassmann(3)], ids=lambda a: a.name)
def test_tensor_monotonicity(A):
    T = tensor_with_commutative(A, function_algebra(2))
    for n in (1, 2, 3):
        for p in all_patterns(n, A.occurring_degrees()):
            assert identity_kernel(p, A).vectors == identity_kernel(p, T).vectors


def test_subalgebra_monotonicity():
    UT2 = upper_triangular(2)
    diag, _ = subalgebra(UT2, [UT2.basis_vector(0), UT2.basis_vector(2)])
    for n in (2, 3):
        p = MultilinearPattern.trivial(n)
        assert identity_kernel(p, UT2).is_subspace_of(identity_kernel(p, diag))


# -- relatively free algebras -----------------------------------------------------

def test_relatively_free_examples():
    r = relatively_free_truncation(base_field(), [V1, V2], 2)
    assert r.dim == 6
    assert [r.label(w) for w in r.normal_words] == ["1", "x1", "x2", "x1*x1", "x1*x2", "x2*x2"]
    assert relatively_free_truncation(GrassmannOracle(TRIVIAL), [V1, V2], 2).dim == 7
    r = relatively_free_truncation(GrassmannOracle(), [O1, O2], 2)
    assert r.normal_form(x(2, (1,)) * x(1, (1,))) == -(x(1, (1,)) * x(2, (1,)))


@pytest.mark.parametrize("source,vs", [
    (matrix_algebra(2), [V1, V2]),
    (GrassmannOracle(), [O1, GradedVariable(2, (0,))]),
    (upper_triangular(2), [V1]),
])
def test_relatively_free_algebra_in_variety(source, vs):
    R = relatively_free_truncation(source, vs, 3).as_algebra()
    assert validate_algebra(R).verdict is True
    assert variety_contains(source, R, 3).verdict is True


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from([-2, -1, 1, 3]), min_size=6, max_size=6))
def test_random_multilinear_consistency(coefs):
    """is_graded_identity agrees with kernel membership on random combinations."""
    A = upper_triangular(2)
    p = MultilinearPattern.trivial(3)
    k = identity_kernel(p, A)
    vec = {i: c for i, c in enumerate(coefs)}
    f = p.to_polynomial(vec)
    assert is_graded_identity(f, A).verdict is k.contains(f)
    basis = k.vectors
    if basis:
        g = p.to_polynomial(basis[0])
        assert is_graded_identity(g, A).verdict is True
