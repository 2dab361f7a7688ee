"""Presheaves of vector spaces, first Čech cohomology, and the Hom-presheaf."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from ..linalg import Echelon, sparse
from .presheaf import PresheafOfAlgebras
from .topology import FiniteTopology


@dataclass
class VectorPresheaf:
    """dims[U] and maps[(U, V)] (dim V x dim U) for V ⊆ U."""

    topology: FiniteTopology
    dims: dict
    maps: dict

    def matrix(self, U: int, V: int) -> list[list]:
        if U == V:
            return [[int(i == j) for j in range(self.dims[U])] for i in range(self.dims[U])]
        return self.maps[(U, V)]

    @classmethod
    def of_algebras(cls, F: PresheafOfAlgebras) -> "VectorPresheaf":
        return cls(F.topology, F.dims(), dict(F.restrictions))

    @classmethod
    def constant(cls, T: FiniteTopology, dim: int) -> "VectorPresheaf":
        """k^dim on nonempty opens, 0 on the empty set."""
        dims = {U: (dim if U else 0) for U in T.opens}
        maps = {}
        for U in T.opens:
            for V in T.subopens(U):
                maps[(U, V)] = [[int(i == j) for j in range(dims[U])] for i in range(dims[V])]
        return cls(T, dims, maps)

    @classmethod
    def zero(cls, T: FiniteTopology) -> "VectorPresheaf":
        return cls.constant(T, 0)


def _block_rows(V: VectorPresheaf, simplices_from, simplices_to, offsets_from, sign_faces):
    """Rows of the coboundary from cochains on ``simplices_from`` to ``simplices_to``."""
    rows = []
    for s in simplices_to:
        target = s[1]
        for k in range(V.dims[target]):
            row = {}
            for sign, face in sign_faces(s[0]):
                src = simplices_from[face]
                M = V.matrix(src, target)
                base = offsets_from[face]
                for c, v in enumerate(M[k]):
                    if v:
                        row[base + c] = row.get(base + c, 0) + sign * v
            row = {c: v for c, v in row.items() if v}
            if row:
                rows.append(row)
    return rows


def cech_h1(T: FiniteTopology, V: VectorPresheaf) -> int:
    """dim H^1 of the alternating Čech complex of the cover by minimal opens."""
    cover = T.minimal_cover()
    m = len(cover)
    c0 = {(i,): cover[i] for i in range(m)}
    c1 = {(i, j): cover[i] & cover[j] for i, j in combinations(range(m), 2)}
    c2 = {(i, j, k): cover[i] & cover[j] & cover[k] for i, j, k in combinations(range(m), 3)}

    def offsets(cochains):
        out, total = {}, 0
        for key, U in cochains.items():
            out[key] = total
            total += V.dims[U]
        return out, total

    off0, n0 = offsets(c0)
    off1, n1 = offsets(c1)

    def faces(simplex):
        return [((-1) ** p, simplex[:p] + simplex[p + 1:]) for p in range(len(simplex))]

    d0 = _block_rows(V, c0, [(s, U) for s, U in c1.items()], off0, faces)
    d1 = _block_rows(V, c1, [(s, U) for s, U in c2.items()], off1, faces)
    r0 = Echelon()
    for r in d0:
        r0.add(r)
    r1 = Echelon()
    for r in d1:
        r1.add(r)
    return (n1 - r1.rank) - r0.rank


def hom_presheaf(F: PresheafOfAlgebras, G: PresheafOfAlgebras) -> VectorPresheaf:
    """Hom(F, G)(U) = degree-preserving natural transformations F|_U -> G|_U.

    Coordinates of a transformation are the entries (target k, source i) of
    its components at every open W ⊆ U with deg matching; naturality over
    all pairs inside U cuts out the space.  Restriction forgets components.
    """
    T = F.topology
    slots: dict = {}  # open W -> list of (k, i)
    for W in T.opens:
        A, B = F(W), G(W)
        slots[W] = [(k, i) for k in range(B.dim) for i in range(A.dim) if B.degrees[k] == A.degrees[i]]
    spaces = {}
    for U in T.opens:
        subs = T.subopens(U)
        index = {}
        for W in subs:
            for s in slots[W]:
                index[(W, s)] = len(index)
        ech = Echelon()
        for W in subs:
            for W2 in T.subopens(W):
                if W2 == W:
                    continue
                RG, RF = G.matrix(W, W2), F.matrix(W, W2)
                # (RG phi_W)[k2, i] - (phi_W2 RF)[k2, i] = 0
                for k2 in range(G(W2).dim):
                    for i in range(F(W).dim):
                        row = {}
                        for k, v in enumerate(RG[k2]):
                            col = index.get((W, (k, i)))
                            if v and col is not None:
                                row[col] = row.get(col, 0) + v
                        for i2 in range(F(W2).dim):
                            v = RF[i2][i]
                            col = index.get((W2, (k2, i2)))
                            if v and col is not None:
                                row[col] = row.get(col, 0) - v
                        row = {c: v for c, v in row.items() if v}
                        if row:
                            ech.add(row)
        basis = ech.nullspace(range(len(index)))
        spaces[U] = (index, basis)
    dims = {U: len(spaces[U][1]) for U in T.opens}
    maps = {}
    for U in T.opens:
        idxU, basisU = spaces[U]
        for V in T.subopens(U):
            idxV, basisV = spaces[V]
            track = Echelon(track=True)
            for t, b in enumerate(basisV):
                track.add(b, t)
            cols = []
            for b in basisU:
                image = {}
                for (W, s), col in idxU.items():
                    if (W, s) in idxV and b.get(col):
                        image[idxV[(W, s)]] = b[col]
                combo = track.express(image)
                cols.append([combo.get(t, 0) for t in range(len(basisV))])
            maps[(U, V)] = [list(r) for r in zip(*cols)] if cols else [[] for _ in basisV]
    return VectorPresheaf(T, dims, maps)
