"""Size-bounded truncations of the diagram category and their weights.

The truncation on objects of size 0..N is a locally unital algebra whose
basis is the set of relations between listed objects.  Weights are pairs
(object size, irreducible representation of its automorphism group).  The
primitive idempotent attached to a weight is found inside the corner
eps End(Z) eps of a matrix-unit idempotent eps of the group algebra: exactly
one simple block of that corner survives modulo maps factoring through
smaller objects, and its lifted idempotent is the one we want.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .diagram import DiagramCategory
from .errors import SizeLimitExceeded
from .fdalg import FDAlgebra
from .groups import AutGroup
from .hw import HWCategory
from .lincat import DiagramLinCat
from .linalg import Matrix, Subspace


@dataclass(frozen=True, order=True)
class WeightLabel:
    size: int
    rep: tuple
    text: str = field(compare=False, default="")

    def __str__(self):
        return self.text or f"({self.size};{self.rep})"

    def to_json(self):
        return {"size": self.size, "irrep": list(self.rep), "text": str(self)}


class TruncatedAlgebra:
    """All relations between objects of size <= N, with structure constants."""

    def __init__(self, cat, F, N: int):
        if N > cat.cap:
            raise SizeLimitExceeded(f"truncation size {N} exceeds the backend cap {cat.cap}")
        self.cat = cat
        self.F = F
        self.N = N
        self.D = DiagramCategory(cat, F)
        self.objects = [cat.obj(i) for i in range(N + 1)]
        self.C = DiagramLinCat(self.D, self.objects)

    def hom_dim(self, i, j):
        return self.C.hom_dim(i, j)

    def total_dim(self):
        n = len(self.objects)
        return sum(self.C.hom_dim(i, j) for i in range(n) for j in range(n))

    def check_associativity(self, samples=None, seed=0):
        """Exhaustive (or sampled) check of (c b) a = c (b a) on basis triples."""
        C = self.C
        n = len(self.objects)
        triples = []
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    for l in range(n):
                        triples.append((i, j, k, l))
        rng = random.Random(seed)
        checked = 0
        for i, j, k, l in triples:
            da, db, dc = C.hom_dim(i, j), C.hom_dim(j, k), C.hom_dim(k, l)
            combos = [(a, b, c) for a in range(da) for b in range(db) for c in range(dc)]
            if samples is not None and len(combos) > samples:
                combos = rng.sample(combos, samples)
            for a, b, c in combos:
                left = _mul_dict(C, l, k, i, {c: C.F.one}, C.mul_basis(k, j, i, b, a))
                right = _mul_dict(C, l, j, i, C.mul_basis(l, k, j, c, b), {a: C.F.one})
                if left != right:
                    return False, (i, j, k, l, a, b, c)
                checked += 1
        return True, checked


def _mul_dict(C, k, j, i, B, A):
    out = {}
    for b, cb in B.items():
        for a, ca in A.items():
            for c, v in C.mul_basis(k, j, i, b, a).items():
                out[c] = out.get(c, C.F.zero) + cb * ca * v
    return {c: v for c, v in out.items() if v}


def build_algebra(cat, F, N: int) -> TruncatedAlgebra:
    return TruncatedAlgebra(cat, F, N)


def group_element_vector(A: TruncatedAlgebra, z: int, coeffs: dict):
    """The element sum c_g graph(g) of End(Z) as a coordinate list."""
    C = A.C
    F = A.F
    vec = [F.zero] * C.hom_dim(z, z)
    idx = C.index(z, z)
    for g, c in coeffs.items():
        r = A.D.graph(g)
        vec[idx[r]] = vec[idx[r]] + F(c)
    return vec


def _iso_positions(A: TruncatedAlgebra, z: int):
    C = A.C
    X = A.objects[z]
    idx = C.index(z, z)
    return sorted(idx[A.D.graph(g)] for g in A.cat.automorphisms(X))


def primitive_for_irrep(A: TruncatedAlgebra, z: int, eps):
    """Primitive idempotent of End(Z) lying over the matrix unit eps."""
    C = A.C
    F = A.F
    d = C.hom_dim(z, z)

    def mul(x, y):
        return C.compose(z, z, z, x, y)

    spans = [mul(mul(eps, [F.one if k == b else F.zero for k in range(d)]), eps) for b in range(d)]
    sub = Subspace.span(F, d, spans)
    basis = sub.basis.rows()
    piv = sub.pivots
    if len(basis) == 1:
        return list(eps)

    def coords(v):
        return [v[p] for p in piv]

    table = []
    for x in basis:
        row = []
        for y in basis:
            c = coords(mul(x, y))
            row.append({k: v for k, v in enumerate(c) if v})
        table.append(row)
    alg = FDAlgebra(F, len(basis), table, coords(eps))
    isos = _iso_positions(A, z)

    def to_end(c):
        out = [F.zero] * d
        for k, v in enumerate(c):
            if v:
                for j, bv in enumerate(basis[k]):
                    if bv:
                        out[j] = out[j] + v * bv
        return out

    for c in alg.central_idempotents():
        e = to_end(c)
        if any(e[p] for p in isos):
            lifted = alg.lift_idempotent(alg.primitive_in_corner(c))
            return to_end(lifted)
    raise ArithmeticError("no block of the corner survives modulo smaller objects")


def weight_labels(A: TruncatedAlgebra):
    """(labels in the mutation order, object map, idempotent map)."""
    labels, objs, idems = [], {}, {}
    for z, X in enumerate(A.objects):
        G = AutGroup(A.cat, X)
        irreps = sorted(G.irreps, key=lambda r: r.label)
        for ir in irreps:
            text = f"([{X.size}];{G.label_text(ir)})"
            lab = WeightLabel(X.size, tuple(ir.label), text)
            eps = group_element_vector(A, z, G.matrix_unit_element(ir))
            labels.append(lab)
            objs[lab] = z
            idems[lab] = primitive_for_irrep(A, z, eps)
    labels.sort()
    return labels, objs, idems


def highest_weight_category(A: TruncatedAlgebra) -> HWCategory:
    labels, objs, idems = weight_labels(A)
    # larger support is lower in the highest-weight order
    return HWCategory(A.C, labels, objs, idems, lambda a, b: a.size > b.size,
                      names={lab: str(lab) for lab in labels})
