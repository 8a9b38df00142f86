"""The category of relations with degree-weighted composition.

Objects are backend objects X; the basis of Hom(X, Y) is the set of
relations R in X x Y (canonical subobjects of the product, X first).
Composing two basis relations gives u^k times a basis relation, where u^k is
the degree of the coimage in the fiber-product construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BackendMismatch, ObjectMismatch
from .regular import RegularCategory, RMorphism, RObject, _UnionFind, partition_from_labels
from .relations import Calculus, NRelation, NSpan

U_CLASS, D_CLASS, M_CLASS, GENERIC_CLASS = "U", "D", "M", "generic"


@dataclass
class DiagMorphism:
    source: RObject
    target: RObject
    terms: dict = field(default_factory=dict)

    def items(self):
        return sorted(self.terms.items())

    def is_zero(self):
        return not self.terms


class DiagramCategory:
    """Relations over `cat` with composition weighted by powers of F.param."""

    def __init__(self, cat: RegularCategory, F):
        self.cat = cat
        self.F = F
        self.calc = Calculus(cat)
        self._basis = {}
        self._index = {}
        self._comp = {}
        self._tens = {}
        self.fast = cat.backend == "finset_op"

    # ------------------------------------------------------------ bases
    def hom_basis(self, X: RObject, Y: RObject):
        k = (X, Y)
        b = self._basis.get(k)
        if b is None:
            self.cat.check(X, Y)
            b = self.calc.enumerate((X, Y))
            self._basis[k] = b
            self._index[k] = {r: i for i, r in enumerate(b)}
        return b

    def hom_index(self, X, Y):
        self.hom_basis(X, Y)
        return self._index[(X, Y)]

    def hom_dim(self, X, Y) -> int:
        return len(self.hom_basis(X, Y))

    # ------------------------------------------------------------ basic relations
    def graph(self, f: RMorphism) -> NRelation:
        """The relation {(x, f x)} in X x Y."""
        return self.calc.relation(NSpan(f.source, (self.cat.identity(f.source), f)))

    def identity_rel(self, X) -> NRelation:
        return self.graph(self.cat.identity(X))

    def transpose(self, R: NRelation) -> NRelation:
        sp = self.calc.canonical_span(R)
        return self.calc.relation(NSpan(sp.source, (sp.legs[1], sp.legs[0])))

    def to_terminal(self, X):
        return RMorphism(X, self.cat.terminal(), ())

    def diagonal(self, X):
        return self.cat.pair([self.cat.identity(X), self.cat.identity(X)])

    def cup_rel(self, X) -> NRelation:
        return self.calc.relation(NSpan(X, (self.to_terminal(X), self.diagonal(X))))

    def cap_rel(self, X) -> NRelation:
        return self.calc.relation(NSpan(X, (self.diagonal(X), self.to_terminal(X))))

    def braiding_rel(self, X, Y) -> NRelation:
        cat = self.cat
        P, p1, p2 = cat.product(X, Y)
        swap = cat.pair([p2, p1])
        return self.graph(swap)

    # ------------------------------------------------------------ composition
    def compose_rel(self, R2: NRelation, R1: NRelation):
        """R2 o R1 as (exponent of u, relation)."""
        key = (R2, R1)
        hit = self._comp.get(key)
        if hit is not None:
            return hit
        if R1.targets[1] != R2.targets[0]:
            raise ObjectMismatch(f"cannot compose {R2.targets} after {R1.targets}")
        out = self._compose_partitions(R2, R1) if self.fast else self.compose_rel_generic(R2, R1)
        self._comp[key] = out
        return out

    def compose_rel_generic(self, R2: NRelation, R1: NRelation):
        """Fiber product over the middle object, then image factorization."""
        cat = self.cat
        s1 = self.calc.canonical_span(R1)
        s2 = self.calc.canonical_span(R2)
        P, p1, p2 = cat.pullback(s1.legs[1], s2.legs[0])
        f = cat.pair([cat.compose(s1.legs[0], p1), cat.compose(s2.legs[1], p2)])
        coim, im = cat.image_factorization(f)
        k = coim.source.size - coim.target.size
        rel = NRelation((R1.targets[0], R2.targets[1]), cat.subobject_canon(f))
        return k, rel

    def _compose_partitions(self, R2, R1):
        m, n = R1.targets[0].size, R1.targets[1].size
        p = R2.targets[1].size
        uf = _UnionFind(m + n + p)
        for block in R1.key:
            for x in block[1:]:
                uf.union(block[0], x)
        for block in R2.key:
            shifted = [x + m for x in block]
            for x in shifted[1:]:
                uf.union(shifted[0], x)
        comps = {}
        for x in range(m + n + p):
            comps.setdefault(uf.find(x), []).append(x)
        loops = 0
        outer = []
        for members in comps.values():
            pts = [x if x < m else x - n for x in members if x < m or x >= m + n]
            if pts:
                outer.append(tuple(sorted(pts)))
            else:
                loops += 1
        rel = NRelation((R1.targets[0], R2.targets[1]), tuple(sorted(outer)))
        return loops, rel

    def coeff(self, k):
        return self.F.param_power(k)

    def compose(self, G: DiagMorphism, Fm: DiagMorphism) -> DiagMorphism:
        if Fm.target != G.source:
            raise ObjectMismatch(f"cannot compose {G.source} <- {Fm.target}")
        out = {}
        for r2, c2 in G.terms.items():
            for r1, c1 in Fm.terms.items():
                k, r = self.compose_rel(r2, r1)
                v = out.get(r, self.F.zero) + c1 * c2 * self.coeff(k)
                if v:
                    out[r] = v
                else:
                    out.pop(r, None)
        return DiagMorphism(Fm.source, G.target, out)

    # ------------------------------------------------------------ morphisms
    def basis_morphism(self, R: NRelation, c=None) -> DiagMorphism:
        return DiagMorphism(R.targets[0], R.targets[1], {R: self.F.one if c is None else self.F(c)})

    def identity(self, X) -> DiagMorphism:
        return self.basis_morphism(self.identity_rel(X))

    def zero(self, X, Y) -> DiagMorphism:
        return DiagMorphism(X, Y, {})

    def add(self, A: DiagMorphism, B: DiagMorphism) -> DiagMorphism:
        if (A.source, A.target) != (B.source, B.target):
            raise ObjectMismatch("adding morphisms with different ends")
        out = dict(A.terms)
        for r, c in B.terms.items():
            v = out.get(r, self.F.zero) + c
            if v:
                out[r] = v
            else:
                out.pop(r, None)
        return DiagMorphism(A.source, A.target, out)

    def scale(self, A: DiagMorphism, c) -> DiagMorphism:
        c = self.F(c)
        if not c:
            return DiagMorphism(A.source, A.target, {})
        return DiagMorphism(A.source, A.target, {r: v * c for r, v in A.terms.items()})

    def equal(self, A, B) -> bool:
        return (A.source, A.target) == (B.source, B.target) and A.terms == B.terms

    def vector(self, A: DiagMorphism):
        idx = self.hom_index(A.source, A.target)
        v = [self.F.zero] * len(idx)
        for r, c in A.terms.items():
            v[idx[r]] = c
        return v

    def from_vector(self, X, Y, vec) -> DiagMorphism:
        basis = self.hom_basis(X, Y)
        return DiagMorphism(X, Y, {basis[i]: c for i, c in enumerate(vec) if c})

    # ------------------------------------------------------------ tensor
    def tensor_obj(self, X, Y) -> RObject:
        return self.cat.product(X, Y)[0]

    def tensor_rel(self, R1: NRelation, R2: NRelation) -> NRelation:
        key = (R1, R2)
        hit = self._tens.get(key)
        if hit is not None:
            return hit
        if self.fast:
            out = self._tensor_partitions(R1, R2)
        else:
            out = self.tensor_rel_generic(R1, R2)
        self._tens[key] = out
        return out

    def tensor_rel_generic(self, R1, R2) -> NRelation:
        cat = self.cat
        s1 = self.calc.canonical_span(R1)
        s2 = self.calc.canonical_span(R2)
        a = cat.product_morphism([s1.legs[0], s2.legs[0]])
        b = cat.product_morphism([s1.legs[1], s2.legs[1]])
        return self.calc.relation(NSpan(a.source, (a, b)))

    def _tensor_partitions(self, R1, R2):
        (X, Y), (X2, Y2) = R1.targets, R2.targets
        m, n, m2 = X.size, Y.size, X2.size

        def lab1(x):
            return x if x < m else x + m2

        def lab2(x):
            return x + m if x < m2 else x + m + n

        blocks = [tuple(lab1(x) for x in b) for b in R1.key] + \
                 [tuple(lab2(x) for x in b) for b in R2.key]
        cat = self.cat
        return NRelation((cat.obj(m + m2), cat.obj(n + Y2.size)), tuple(sorted(blocks)))

    def tensor(self, A: DiagMorphism, B: DiagMorphism) -> DiagMorphism:
        if A.source.backend != B.source.backend:
            raise BackendMismatch("tensor across backends")
        out = {}
        for r1, c1 in A.terms.items():
            for r2, c2 in B.terms.items():
                r = self.tensor_rel(r1, r2)
                out[r] = out.get(r, self.F.zero) + c1 * c2
        out = {r: c for r, c in out.items() if c}
        return DiagMorphism(self.tensor_obj(A.source, B.source), self.tensor_obj(A.target, B.target), out)

    def braiding(self, X, Y) -> DiagMorphism:
        return self.basis_morphism(self.braiding_rel(X, Y))

    def cup(self, X) -> DiagMorphism:
        return self.basis_morphism(self.cup_rel(X))

    def cap(self, X) -> DiagMorphism:
        return self.basis_morphism(self.cap_rel(X))

    def unitor(self, X) -> DiagMorphism:
        """X x * -> X (the canonical identification)."""
        cat = self.cat
        P, p1, _ = cat.product(X, cat.terminal())
        return self.basis_morphism(self.graph(p1))

    # ------------------------------------------------------------ triangular
    def classify(self, R: NRelation) -> str:
        sp = self.calc.canonical_span(R)
        a, b = sp.legs
        cat = self.cat
        u = cat.is_surjective(a) and cat.is_injective(b)
        d = cat.is_injective(a) and cat.is_surjective(b)
        if u and d:
            return M_CLASS
        if u:
            return U_CLASS
        if d:
            return D_CLASS
        return GENERIC_CLASS

    def in_U(self, R) -> bool:
        return self.classify(R) in (U_CLASS, M_CLASS)

    def in_D(self, R) -> bool:
        return self.classify(R) in (D_CLASS, M_CLASS)

    def core_decompose(self, R: NRelation):
        """(g, f) with g in D, f in U and f o g = R with coefficient 1."""
        g, f = self.calc.reduce(R, 1)
        return g, f

    def core_iso(self, g, f, g2, f2):
        """Automorphism alpha of the middle object with g2 = alpha g and f2 = f alpha^-1."""
        return self.calc.reduction_iso(g, f, g2, f2, 1)

    def middle_object(self, g: NRelation) -> RObject:
        return g.targets[1]

    def leq(self, X, Y) -> bool:
        return self.cat.leq(X, Y)
