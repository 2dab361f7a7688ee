"""Bimodules, noncommutative one-forms, derivations and low Hochschild cohomology."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..algebra.core import FiniteGradedAlgebra
from ..algebra.structure import center
from ..linalg import Echelon, identity, mat_mul, matrix_rank, solve_inverse, sparse
from ..report import VerificationReport


def _dense(vec: dict, n: int) -> list:
    return [vec.get(i, 0) for i in range(n)]


def _apply(M, v) -> list:
    return [sum(r[i] * v[i] for i in range(len(v)) if v[i]) for r in M]


@dataclass
class Bimodule:
    """Left and right actions of the basis of ``algebra`` as dim x dim matrices."""

    algebra: FiniteGradedAlgebra
    dim: int
    left: list
    right: list
    degrees: list | None = None
    labels: list | None = None

    def act_left(self, a: list, m: list) -> list:
        out = [0] * self.dim
        for i, c in enumerate(a):
            if c:
                for k, v in enumerate(_apply(self.left[i], m)):
                    out[k] += c * v
        return out

    def act_right(self, m: list, a: list) -> list:
        out = [0] * self.dim
        for i, c in enumerate(a):
            if c:
                for k, v in enumerate(_apply(self.right[i], m)):
                    out[k] += c * v
        return out

    def check(self) -> VerificationReport:
        """Unital actions, associativity of each action, and (a m) b = a (m b)."""
        A = self.algebra
        n = A.dim
        one = identity(self.dim)

        def comb(mats, vec):
            out = [[0] * self.dim for _ in range(self.dim)]
            for i, c in enumerate(vec):
                if c:
                    for r in range(self.dim):
                        for s in range(self.dim):
                            out[r][s] += c * mats[i][r][s]
            return out

        if n and (comb(self.left, A.unit) != one or comb(self.right, A.unit) != one):
            return VerificationReport("bimodule", False, {"axiom": "unital"})
        for i in range(n):
            for j in range(n):
                prod = A.mul(A.basis_vector(i), A.basis_vector(j))
                if mat_mul(self.left[i], self.left[j]) != comb(self.left, prod):
                    return VerificationReport("bimodule", False, {"axiom": "left action", "pair": [i, j]})
                # m (b_i b_j) = (m b_i) b_j
                if mat_mul(self.right[j], self.right[i]) != comb(self.right, prod):
                    return VerificationReport("bimodule", False, {"axiom": "right action", "pair": [i, j]})
                if mat_mul(self.left[i], self.right[j]) != mat_mul(self.right[j], self.left[i]):
                    return VerificationReport("bimodule", False, {"axiom": "commuting actions", "pair": [i, j]})
        return VerificationReport("bimodule", True, invariants={"dim": self.dim})

    def to_dict(self) -> dict:
        return {"algebra": self.algebra.name, "dim": self.dim, "labels": self.labels}


def regular_bimodule(A: FiniteGradedAlgebra) -> Bimodule:
    left = [A.left_matrix(A.basis_vector(i)) for i in range(A.dim)]
    right = [A.right_matrix(A.basis_vector(i)) for i in range(A.dim)]
    return Bimodule(A, A.dim, left, right, degrees=list(A.degrees), labels=list(A.labels))


def _outer_tensor(A: FiniteGradedAlgebra):
    """Actions a.(x (x) y).b = ax (x) yb on A (x) A, index i*n + j."""
    n = A.dim
    N = n * n
    left, right = [], []
    for a in range(n):
        L = [[0] * N for _ in range(N)]
        R = [[0] * N for _ in range(N)]
        for i in range(n):
            for j in range(n):
                for k, c in A.basis_product(a, i):
                    L[k * n + j][i * n + j] += c
                for k, c in A.basis_product(j, a):
                    R[i * n + k][i * n + j] += c
        left.append(L)
        right.append(R)
    return left, right


@dataclass
class KaehlerForms:
    """Omega^1 = ker(m: A (x) A -> A) with its outer bimodule structure.

    ``embedding`` is the (n^2 x m) matrix of the kernel basis inside A (x) A.
    """

    bimodule: Bimodule
    embedding: list
    _coords: Echelon = field(repr=False, default=None)

    @property
    def dim(self) -> int:
        return self.bimodule.dim

    def coordinates(self, tensor: list) -> list:
        """Coordinates of an element of ker(m) given in A (x) A."""
        combo = self._coords.express(sparse(tensor))
        if combo is None:
            raise ValueError("tensor is not in the kernel of multiplication")
        return _dense(combo, self.dim)

    def delta_tensor(self, a: list) -> list:
        """1 (x) a - a (x) 1 in A (x) A."""
        A = self.bimodule.algebra
        n = A.dim
        out = [0] * (n * n)
        for i, u in enumerate(A.unit):
            for j, v in enumerate(a):
                out[i * n + j] += u * v
                out[j * n + i] -= v * u
        return out

    def delta(self, a: list) -> list:
        return self.coordinates(self.delta_tensor(a))


def kaehler_one_forms(A: FiniteGradedAlgebra) -> KaehlerForms:
    n = A.dim
    N = n * n
    ech = Echelon()
    for k in range(n):
        row = {}
        for i in range(n):
            for j in range(n):
                for kk, c in A.basis_product(i, j):
                    if kk == k:
                        row[i * n + j] = row.get(i * n + j, 0) + c
        row = {c: v for c, v in row.items() if v}
        if row:
            ech.add(row)
    basis = [_dense(v, N) for v in ech.nullspace(range(N))]
    coords = Echelon(track=True)
    for t, v in enumerate(basis):
        coords.add(sparse(v), t)
    m = len(basis)
    L_full, R_full = _outer_tensor(A)

    def restrict(M):
        cols = []
        for v in basis:
            combo = coords.express(sparse(_apply(M, v)))
            cols.append(_dense(combo, m))
        return [[cols[c][r] for c in range(m)] for r in range(m)]

    left = [restrict(L) for L in L_full]
    right = [restrict(R) for R in R_full]
    degrees = []
    for v in basis:
        degs = {A.group.add(A.degrees[i // n], A.degrees[i % n]) for i, c in enumerate(v) if c}
        degrees.append(degs.pop() if len(degs) == 1 else None)
    labels = [_tensor_label(A, v) for v in basis]
    bim = Bimodule(A, m, left, right, degrees=degrees, labels=labels)
    embedding = [[basis[c][r] for c in range(m)] for r in range(N)]
    return KaehlerForms(bim, embedding, coords)


def _tensor_label(A, v) -> str:
    n = A.dim
    terms = []
    for idx, c in enumerate(v):
        if c:
            coef = "" if c == 1 else ("-" if c == -1 else f"{c}*")
            terms.append(f"{coef}{A.labels[idx // n]}(x){A.labels[idx % n]}")
    return " + ".join(terms).replace("+ -", "- ")


# -- derivations --------------------------------------------------------------------

@dataclass
class DerivationSpace:
    """Basis of Der(A, M); each derivation is an (M.dim x A.dim) matrix."""

    algebra: FiniteGradedAlgebra
    module: Bimodule
    basis: list

    @property
    def dim(self) -> int:
        return len(self.basis)

    def flat(self, D) -> dict:
        m = self.module.dim
        return {i * m + k: D[k][i] for i in range(self.algebra.dim) for k in range(m) if D[k][i]}

    def coordinates(self, D) -> list | None:
        ech = Echelon(track=True)
        for t, B in enumerate(self.basis):
            ech.add(self.flat(B), t)
        combo = ech.express(self.flat(D))
        return None if combo is None else _dense(combo, self.dim)

    def to_dict(self) -> dict:
        return {"dim": self.dim, "basis": [[[str(x) for x in r] for r in D] for D in self.basis]}


def is_derivation(A: FiniteGradedAlgebra, M: Bimodule, D) -> bool:
    cols = [[D[k][i] for k in range(M.dim)] for i in range(A.dim)]
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = [0] * M.dim
            for k, c in A.basis_product(i, j):
                for r in range(M.dim):
                    lhs[r] += c * cols[k][r]
            rhs1 = M.act_right(cols[i], A.basis_vector(j))
            rhs2 = M.act_left(A.basis_vector(i), cols[j])
            if lhs != [a + b for a, b in zip(rhs1, rhs2)]:
                return False
    return True


def _leibniz_rows(A: FiniteGradedAlgebra, M: Bimodule):
    """Rows over unknowns D[i][k] (index i*m + k) of D(b_i b_j) - D(b_i) b_j - b_i D(b_j)."""
    n, m = A.dim, M.dim
    for i in range(n):
        for j in range(n):
            rows = [dict() for _ in range(m)]
            for k, c in A.basis_product(i, j):
                for r in range(m):
                    rows[r][k * m + r] = rows[r].get(k * m + r, 0) + c
            Rj, Li = M.right[j], M.left[i]
            for r in range(m):
                for s in range(m):
                    if Rj[r][s]:
                        rows[r][i * m + s] = rows[r].get(i * m + s, 0) - Rj[r][s]
                    if Li[r][s]:
                        rows[r][j * m + s] = rows[r].get(j * m + s, 0) - Li[r][s]
            for row in rows:
                row = {c: v for c, v in row.items() if v}
                if row:
                    yield row


def _solve_derivations(A, M, extra_zero=()) -> list:
    n, m = A.dim, M.dim
    ech = Echelon()
    for row in _leibniz_rows(A, M):
        ech.add(row)
    for col in extra_zero:
        ech.add({col: 1})
    basis = []
    for v in ech.nullspace(range(n * m)):
        basis.append([[v.get(i * m + k, 0) for i in range(n)] for k in range(m)])
    return basis


def derivations(A: FiniteGradedAlgebra, M: Bimodule | None = None) -> DerivationSpace:
    M = M if M is not None else regular_bimodule(A)
    return DerivationSpace(A, M, _solve_derivations(A, M))


def inner_derivation(A: FiniteGradedAlgebra, s: list) -> list:
    """ad(s)(m) = s m - m s as a matrix."""
    L, R = A.left_matrix(s), A.right_matrix(s)
    return [[L[r][c] - R[r][c] for c in range(A.dim)] for r in range(A.dim)]


def graded_derivations(A: FiniteGradedAlgebra, h) -> DerivationSpace:
    """Derivations with D(A^g) inside A^{g+h}."""
    h = A.group.element(h)
    n = A.dim
    zero = [i * n + k for i in range(n) for k in range(n)
            if A.degrees[k] != A.group.add(A.degrees[i], h)]
    return DerivationSpace(A, regular_bimodule(A), _solve_derivations(A, regular_bimodule(A), zero))


def derivation_degrees(A: FiniteGradedAlgebra) -> list:
    """Degree shifts h that can carry a nonzero homogeneous map A -> A."""
    G = A.group
    occ = A.occurring_degrees()
    return sorted({G.sub(b, a) for a in occ for b in occ})


def derivation_decomposition(A: FiniteGradedAlgebra) -> VerificationReport:
    """Der(A, A) as the direct sum of its homogeneous components."""
    total = derivations(A)
    comps = {h: graded_derivations(A, h) for h in derivation_degrees(A)}
    ech = Echelon()
    independent = True
    for D in comps.values():
        for B in D.basis:
            if not ech.add(total.flat(B)):
                independent = False
    dims = {str(h): D.dim for h, D in comps.items()}
    ok = independent and ech.rank == total.dim
    return VerificationReport(
        "graded_derivations", ok, None if ok else {"component_sum": ech.rank, "der_dim": total.dim},
        {"der_dim": total.dim, "components": dims, "independent": independent},
    )


# -- Hochschild cohomology in low degrees ---------------------------------------------

@dataclass
class HochschildLow:
    center: list
    inner: list
    derivations: DerivationSpace
    certificate: VerificationReport

    @property
    def hh0(self) -> int:
        return len(self.center)

    @property
    def hh1(self) -> int:
        return self.derivations.dim - len(self.inner)

    def to_dict(self) -> dict:
        return {
            "HH0": self.hh0,
            "Inn": len(self.inner),
            "Der": self.derivations.dim,
            "HH1": self.hh1,
            "certificate": self.certificate.to_dict(),
        }


def hochschild_low(A: FiniteGradedAlgebra) -> HochschildLow:
    """0 -> HH^0 -> A -> Der(A, A) -> HH^1 -> 0 with ad in the middle."""
    Z = center(A)
    Der = derivations(A)
    ech = Echelon()
    inner = []
    inside = True
    for i in range(A.dim):
        D = inner_derivation(A, A.basis_vector(i))
        if Der.coordinates(D) is None:
            inside = False
        if ech.add(Der.flat(D)):
            inner.append(D)
    n = A.dim
    exact = n - len(Z) == len(inner)
    terms = {"HH0": len(Z), "A": n, "Der": Der.dim, "HH1": Der.dim - len(inner), "Inn": len(inner)}
    cert = VerificationReport(
        "hochschild_exact_sequence", exact and inside,
        None if exact and inside else {"dim_A_minus_center": n - len(Z), "inner": len(inner), "inner_are_derivations": inside},
        terms,
    )
    return HochschildLow(Z, inner, Der, cert)


def sl_bracket_check(r: int, A: FiniteGradedAlgebra | None = None) -> VerificationReport:
    """Der(M_r) against sl_r: ad is injective on sl_r, onto Der, and bracket preserving.

    The basis of sl_r is E_ij (i != j) and E_ii - E_{i+1,i+1}; the structure
    constants of the commutator bracket of derivations are compared with those
    of sl_r in that basis.
    """
    from ..algebra.builders import matrix_algebra

    A = A if A is not None else matrix_algebra(r)
    idx = {A.labels[k]: k for k in range(A.dim)}

    def E(i, j):
        v = [0] * A.dim
        v[idx[f"e{i}{j}"]] = 1
        return v

    sl = [E(i, j) for i in range(1, r + 1) for j in range(1, r + 1) if i != j]
    sl += [[a - b for a, b in zip(E(i, i), E(i + 1, i + 1))] for i in range(1, r)]
    Der = derivations(A)
    ads = [inner_derivation(A, x) for x in sl]
    ech_sl = Echelon(track=True)
    for t, x in enumerate(sl):
        ech_sl.add(sparse(x), t)
    ech_ad = Echelon(track=True)
    for t, D in enumerate(ads):
        ech_ad.add(Der.flat(D), t)
    injective = ech_ad.rank == len(sl)
    onto = ech_ad.rank == Der.dim
    mismatches = []
    for a in range(len(sl)):
        for b in range(len(sl)):
            bracket = A.commutator(sl[a], sl[b])
            sl_coords = ech_sl.express(sparse(bracket))
            Da, Db = ads[a], ads[b]
            comm = [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(mat_mul(Da, Db), mat_mul(Db, Da))]
            der_coords = ech_ad.express(Der.flat(comm))
            if sl_coords is None or der_coords != sl_coords:
                mismatches.append([a, b])
    ok = injective and onto and not mismatches
    return VerificationReport(
        "sl_bracket", ok, None if ok else {"injective": injective, "onto": onto, "mismatches": mismatches[:5]},
        {"r": r, "dim_sl": len(sl), "dim_der": Der.dim},
    )


# -- tangent object --------------------------------------------------------------------

@dataclass
class TangentObject:
    derivations: DerivationSpace
    bimodule_maps: list  # (A.dim x Omega.dim) matrices
    forward: list  # Der coordinates of phi o delta, one column per bimodule map
    inverse: list | None
    certificate: VerificationReport

    def to_dict(self) -> dict:
        return {
            "der_dim": self.derivations.dim,
            "hom_dim": len(self.bimodule_maps),
            "certificate": self.certificate.to_dict(),
        }


def bimodule_maps(M: Bimodule, N: Bimodule) -> list:
    """Basis of Hom_{A-bimod}(M, N) as (N.dim x M.dim) matrices."""
    A = M.algebra
    p, q = M.dim, N.dim
    ech = Echelon()
    # unknown phi[r][s] at index r*p + s; phi L_M = L_N phi and phi R_M = R_N phi
    for actM, actN in ((M.left, N.left), (M.right, N.right)):
        for a in range(A.dim):
            X, Y = actM[a], actN[a]
            for r in range(q):
                for s in range(p):
                    row = {}
                    for t in range(p):
                        if X[t][s]:
                            row[r * p + t] = row.get(r * p + t, 0) + X[t][s]
                    for t in range(q):
                        if Y[r][t]:
                            row[t * p + s] = row.get(t * p + s, 0) - Y[r][t]
                    row = {c: v for c, v in row.items() if v}
                    if row:
                        ech.add(row)
    return [[[v.get(r * p + s, 0) for s in range(p)] for r in range(q)] for v in ech.nullspace(range(p * q))]


def tangent_object(A: FiniteGradedAlgebra) -> TangentObject:
    """Der(A, A) and Hom_{A-bimod}(Omega^1, A), linked by phi -> phi o delta.

    The explicit inverse sends D to the map sum x (x) y -> sum x D(y).
    """
    omega = kaehler_one_forms(A)
    reg = regular_bimodule(A)
    Der = derivations(A, reg)
    homs = bimodule_maps(omega.bimodule, reg)
    deltas = [omega.delta(A.basis_vector(i)) for i in range(A.dim)]
    forward_cols = []
    for phi in homs:
        D = [[0] * A.dim for _ in range(A.dim)]
        for i, d in enumerate(deltas):
            col = _apply(phi, d)
            for k in range(A.dim):
                D[k][i] = col[k]
        forward_cols.append(Der.coordinates(D))
    all_derivations = all(c is not None for c in forward_cols)
    square = len(homs) == Der.dim
    F = [[forward_cols[c][r] for c in range(len(homs))] for r in range(Der.dim)] if all_derivations else None
    inverse = solve_inverse(F) if F is not None and square and F else ([] if square and not homs else None)

    # explicit inverse D -> phi_D, checked against the computed one
    hom_ech = Echelon(track=True)
    p = omega.dim
    for t, phi in enumerate(homs):
        hom_ech.add({r * p + s: phi[r][s] for r in range(A.dim) for s in range(p) if phi[r][s]}, t)
    n = A.dim
    explicit_ok = True
    for t, D in enumerate(Der.basis):
        phi = [[0] * p for _ in range(n)]
        for s in range(p):
            col = [0] * n
            for idx, c in enumerate(r[s] for r in omega.embedding):
                if c:
                    x, y = idx // n, idx % n
                    Dy = [D[k][y] for k in range(n)]
                    for k, v in enumerate(A.mul(A.basis_vector(x), Dy)):
                        col[k] += c * v
            for r in range(n):
                phi[r][s] = col[r]
        combo = hom_ech.express({r * p + s: phi[r][s] for r in range(n) for s in range(p) if phi[r][s]})
        if combo is None or inverse is None:
            explicit_ok = False
            break
        expected = [inverse[h][t] for h in range(len(homs))]
        if _dense(combo, len(homs)) != expected:
            explicit_ok = False
            break
    ok = all_derivations and square and inverse is not None and explicit_ok
    cert = VerificationReport(
        "tangent_object", ok,
        None if ok else {"images_are_derivations": all_derivations, "dims": [len(homs), Der.dim], "explicit_inverse": explicit_ok},
        {"der_dim": Der.dim, "hom_dim": len(homs), "omega_dim": omega.dim},
        notes=["tangent object realized as Hom_{A-bimod}(Omega^1, A); Omega^1 carries no product of its own"],
    )
    return TangentObject(Der, homs, F, inverse, cert)
