import pytest

from gradedpi.algebra import (
    Z2,
    GradedAlgebraMorphism,
    base_field,
    corner_algebra,
    elementary_grading,
    grassmann,
    identity_morphism,
    matrix_algebra,
    quaternions,
    truncated_polynomial,
    upper_triangular,
    verify_graded_iso,
)
from gradedpi.errors import GroupMismatch, PreconditionError
from gradedpi.identities import MultilinearPattern, identity_kernel
from gradedpi.morita import (
    MoritaContext,
    corner_variety_certificate,
    diagonal_idempotent,
    find_graded_iso,
    first_corner_iso,
    matrix_over,
    morita_ringed_morphism,
)
from gradedpi.sheaves import constant_sheaf, sierpinski

CORPUS = [base_field(), grassmann(2), upper_triangular(2), truncated_polynomial(2), quaternions(),
          elementary_grading(2, Z2, [0, 1])]


def field_context(n=2, flags=(1, 0)):
    k = base_field()
    return MoritaContext(k, k, n, diagonal_idempotent(k, n, list(flags)), iso=[[1]])


def test_matrix_over_examples():
    B = grassmann(2)
    assert matrix_over(B, 1) is B
    assert matrix_over(base_field(), 2).same_structure(matrix_algebra(2))
    M = matrix_over(B, 2)
    assert M.dim == 16
    assert M.component_dims() == {(0,): 8, (1,): 8}


def test_matrix_over_rejects_bad_size():
    with pytest.raises(PreconditionError):
        matrix_over(base_field(), 0)


def test_verify_graded_iso_examples():
    A = upper_triangular(2)
    assert verify_graded_iso(identity_morphism(A)).verdict is True
    C = corner_algebra(matrix_algebra(2), [1, 0, 0, 0])
    assert verify_graded_iso(GradedAlgebraMorphism(C, base_field(), [[1]])).verdict is True
    E = grassmann(2)
    flat = E.regraded(Z2, [0] * 4)
    rep = verify_graded_iso(GradedAlgebraMorphism(E, flat, identity_morphism(E).matrix))
    assert rep.verdict is False
    assert rep.witness["axiom"] == "degree" and rep.witness["basis"] == "e1"


@pytest.mark.parametrize("B", CORPUS, ids=lambda B: B.name)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_first_corner_is_b(B, n):
    ctx = MoritaContext(B, B, n, diagonal_idempotent(B, n, [1] + [0] * (n - 1)), iso=first_corner_iso(B, n))
    assert ctx.validate().verdict is True


@pytest.mark.parametrize("B", [base_field(), grassmann(2), upper_triangular(2)], ids=lambda B: B.name)
def test_matrix_kernel_inside_b_kernel(B):
    ctx = MoritaContext(B, B, 2, diagonal_idempotent(B, 2, [1, 0]), iso=first_corner_iso(B, 2))
    rep = corner_variety_certificate(ctx, 3)
    assert rep.verdict is True


def test_field_certificate_detects_s4():
    rep = corner_variety_certificate(field_context(), 4)
    assert rep.verdict is True
    assert rep.invariants["s4_in_Mn"] is True and rep.invariants["s4_in_corner"] is True
    assert rep.truncation_degree == 4


def test_full_idempotent_gives_equal_kernels():
    M2 = matrix_algebra(2)
    k = base_field()
    ctx = MoritaContext(M2, k, 2, diagonal_idempotent(k, 2, [1, 1]), iso=identity_morphism(M2).matrix)
    assert corner_variety_certificate(ctx, 4).verdict is True
    for n in range(1, 4):
        pat = MultilinearPattern.trivial(n)
        assert identity_kernel(pat, ctx.Mn).same_as(identity_kernel(pat, ctx.corner))


def test_invalid_idempotent_rejected():
    k = base_field()
    ctx = MoritaContext(k, k, 2, [2, 0, 0, 0])
    rep = corner_variety_certificate(ctx, 2)
    assert rep.verdict is False and rep.witness["hypothesis"] == "morita_context"


def test_wrong_iso_rejected():
    B = upper_triangular(2)
    ctx = MoritaContext(B, B, 2, diagonal_idempotent(B, 2, [1, 0]), iso=[[1, 0, 0], [0, 0, 1], [0, 1, 0]])
    assert ctx.validate().verdict is False


def test_group_mismatch():
    with pytest.raises(GroupMismatch):
        MoritaContext(grassmann(2), base_field(), 2, [0] * 4)


def test_iso_search():
    B = upper_triangular(2)
    C = corner_algebra(matrix_over(B, 2), diagonal_idempotent(B, 2, [1, 0]))
    M, rep = find_graded_iso(B, C)
    assert rep.verdict is True
    assert verify_graded_iso(GradedAlgebraMorphism(B, C, M)).verdict is True
    _, rep = find_graded_iso(truncated_polynomial(2), C)
    assert rep.verdict is False
    with pytest.raises(PreconditionError):
        find_graded_iso(grassmann(2), grassmann(2))


def test_morita_morphism_sierpinski():
    X = sierpinski()
    k = base_field()
    m, rep = morita_ringed_morphism(X, constant_sheaf(k, X), constant_sheaf(matrix_algebra(2), X), field_context(), 4)
    assert rep.verdict is True
    ledger = rep.invariants["ledger"]
    assert ledger["corner_certificate"] is True and ledger["h1_hom"] == 0
    assert m.as_presheaf_morphism().check().verdict is True
    assert any("single abelian grading group" in n for n in rep.notes)


def test_morita_non_neutral_idempotent():
    B = elementary_grading(2, Z2, [0, 1])
    # e12 (x) 1 + e11-ish mixtures are not neutral; take the odd unit e12 of B in the (1,1) slot
    e = [0] * 16
    e[B.labels.index("e12")] = 1
    ctx = MoritaContext(B, B, 2, e)
    X = sierpinski()
    m, rep = morita_ringed_morphism(X, constant_sheaf(B, X), constant_sheaf(matrix_over(B, 2), X), ctx, 2)
    assert m is None
    assert rep.witness["hypothesis"] == "morita_context"
    assert "recovering_morphism" not in rep.invariants["ledger"]


def test_morita_sub_certificates_suffice():
    # whenever both sub-certificates pass the morphism is built
    X = sierpinski()
    for B in (base_field(), upper_triangular(2)):
        ctx = MoritaContext(B, B, 2, diagonal_idempotent(B, 2, [1, 0]), iso=first_corner_iso(B, 2))
        m, rep = morita_ringed_morphism(X, constant_sheaf(B, X), constant_sheaf(matrix_over(B, 2), X), ctx, 3,
                                        components=None)
        cert = corner_variety_certificate(ctx, 3)
        assert cert.verdict is True
        assert (rep.verdict is True) == (rep.invariants["ledger"].get("h1_hom") == 0)
