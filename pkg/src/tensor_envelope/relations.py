"""n-ary spans and relations over a regular backend.

Leg indices are 0-based throughout: an n-ary span has legs 0..n-1.  A span
class is recorded by its image relation together with the excess
size(source) - size(image); in both backends the coimage quotient of a span
is determined up to isomorphism by that excess, so the pair is a complete
invariant.  Relations are the spans of excess 0.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (IndexOutOfRange, NoIsoFound, NotEqualComposites, NotOneReduced,
                     TargetMismatch)
from .regular import RegularCategory, RMorphism, RObject


@dataclass(frozen=True)
class NSpan:
    source: RObject
    legs: tuple

    def __post_init__(self):
        for f in self.legs:
            if f.source != self.source:
                raise ValueError("legs of a span must share the source")

    @property
    def arity(self):
        return len(self.legs)

    @property
    def targets(self):
        return tuple(f.target for f in self.legs)


@dataclass(frozen=True, order=True)
class NRelation:
    """Subobject of the product of `targets`, stored in canonical form."""

    targets: tuple
    key: tuple

    @property
    def arity(self):
        return len(self.targets)


@dataclass(frozen=True)
class SpanClass:
    relation: NRelation
    excess: int


class Calculus:
    """Relation operations for one backend."""

    def __init__(self, cat: RegularCategory):
        self.cat = cat

    # ------------------------------------------------------------ conversion
    def span(self, source, legs) -> NSpan:
        return NSpan(source, tuple(legs))

    def induced(self, f: NSpan) -> RMorphism:
        return self.cat.pair(list(f.legs))

    def is_jointly_injective(self, f: NSpan) -> bool:
        return self.cat.is_injective(self.induced(f))

    def image(self, f: NSpan) -> NRelation:
        return NRelation(f.targets, self.cat.subobject_canon(self.induced(f)))

    def relation(self, f: NSpan) -> NRelation:
        if not self.is_jointly_injective(f):
            raise ValueError("span is not jointly injective")
        return self.image(f)

    def span_class(self, f: NSpan) -> SpanClass:
        rel = self.image(f)
        return SpanClass(rel, f.source.size - self.relation_source(rel).size)

    def relation_source(self, r: NRelation) -> RObject:
        P, _ = self.cat.product_many(list(r.targets))
        return self.cat.canon_mono(P, r.key).source

    def canonical_span(self, r: NRelation) -> NSpan:
        cat = self.cat
        P, projs = cat.product_many(list(r.targets))
        m = cat.canon_mono(P, r.key)
        return NSpan(m.source, tuple(cat.compose(p, m) for p in projs))

    def as_span(self, f) -> NSpan:
        return self.canonical_span(f) if isinstance(f, NRelation) else f

    def enumerate(self, targets):
        """All relations with the given targets, in canonical order."""
        cat = self.cat
        P, _ = cat.product_many(list(targets))
        return [NRelation(tuple(targets), k) for k in cat.enumerate_subobjects(P, _checked=True)]

    # ------------------------------------------------------------ sigma_j
    def sigma(self, f: NSpan, j: int) -> NSpan:
        """View f as the 2-span (pairing of the legs other than j, f_j)."""
        self._check_index(f, j)
        others = [g for i, g in enumerate(f.legs) if i != j]
        if others:
            rest = self.cat.pair(others)
        else:
            rest = RMorphism(f.source, self.cat.terminal(), ())
        return NSpan(f.source, (rest, f.legs[j]))

    def _check_index(self, f, j):
        if not 0 <= j < f.arity:
            raise IndexOutOfRange(f"leg {j} out of range for arity {f.arity}")

    # ------------------------------------------------------------ j-composition
    def j_compose(self, f, j: int, s) -> NSpan:
        """f *_j s: pull f_j back along s_0 and replace leg j by s_1 after it."""
        f = self.as_span(f)
        s = self.as_span(s)
        self._check_index(f, j)
        if s.arity != 2:
            raise ValueError("j-composition needs a 2-span")
        if f.legs[j].target != s.legs[0].target:
            raise TargetMismatch(f"leg {j} target {f.legs[j].target} != {s.legs[0].target}")
        cat = self.cat
        P, p, p2 = cat.pullback(f.legs[j], s.legs[0])
        legs = [cat.compose(g, p) for g in f.legs]
        legs[j] = cat.compose(s.legs[1], p2)
        return NSpan(P, tuple(legs))

    def compose2(self, s, t) -> NSpan:
        """s *_1 t on 2-spans: the usual span composition."""
        return self.j_compose(s, 1, t)

    def same_class(self, a, b) -> bool:
        return self.span_class(self.as_span(a)) == self.span_class(self.as_span(b))

    # ------------------------------------------------------------ reduction
    def is_in_s_minus(self, s) -> bool:
        s = self.as_span(s)
        return (s.arity == 2 and self.cat.is_surjective(s.legs[0])
                and self.cat.is_injective(s.legs[1]))

    def is_j_reduced(self, f, j: int) -> bool:
        f = self.as_span(f)
        self._check_index(f, j)
        sig = self.sigma(f, j)
        return self.cat.is_surjective(f.legs[j]) and self.cat.is_injective(sig.legs[0])

    def reduce(self, f, j: int):
        """Return (g, s) with g j-reduced, s in S-minus and f = g *_j s."""
        f = self.as_span(f)
        cat = self.cat
        sig = self.sigma(f, j)
        e1, i1 = cat.image_factorization(sig.legs[0])
        e2, i2 = cat.image_factorization(sig.legs[1])
        Q, g1, g2 = cat.pushout_of_surjections(e1, e2)
        I1 = e1.target
        others = [g for i, g in enumerate(f.legs) if i != j]
        if others:
            _, projs = cat.product_many([g.target for g in others])
            rest = [cat.compose(p, i1) for p in projs]
        else:
            rest = []
        legs = rest[:j] + [g1] + rest[j:]
        g = NSpan(I1, tuple(legs))
        s = NSpan(e2.target, (g2, i2))
        return self.relation(g), self.relation(s)

    def replace_leg(self, g, j, alpha: RMorphism) -> NSpan:
        g = self.as_span(g)
        legs = list(g.legs)
        legs[j] = self.cat.compose(alpha, legs[j])
        return NSpan(g.source, tuple(legs))

    def twist(self, g, s, j, alpha: RMorphism):
        """The factorization (g with leg j moved by alpha, s with first leg moved)."""
        g2 = self.relation(self.replace_leg(g, j, alpha))
        s2 = self.relation(self.replace_leg(s, 0, alpha))
        return g2, s2

    def reduction_iso(self, g, s, g2, s2, j: int):
        """An automorphism alpha relating two j-reduced factorizations of one relation."""
        lhs = self.j_compose(g, j, s)
        rhs = self.j_compose(g2, j, s2)
        if not self.same_class(lhs, rhs):
            raise NotEqualComposites("the two factorizations compose to different relations")
        g_sp = self.as_span(g)
        Q, Q2 = g_sp.legs[j].target, self.as_span(g2).legs[j].target
        if Q != Q2:
            raise NoIsoFound(f"middle objects {Q} and {Q2} are not isomorphic")
        g2 = g2 if isinstance(g2, NRelation) else self.relation(g2)
        s2 = s2 if isinstance(s2, NRelation) else self.relation(s2)
        for alpha in self.cat.automorphisms(Q):
            tg, ts = self.twist(g, s, j, alpha)
            if tg == g2 and ts == s2:
                return alpha
        raise NoIsoFound("no automorphism relates the two factorizations")

    # ------------------------------------------------------------ three legs
    def tri_factor(self, f):
        """Factor a 0-reduced 3-ary relation as (g *_1 s) *_2 t with g fully reduced."""
        f = self.as_span(f)
        if f.arity != 3:
            raise ValueError("tri_factor needs a 3-ary relation")
        if not self.is_j_reduced(f, 0):
            raise NotOneReduced("relation is not reduced at leg 0")
        h, s = self.reduce(f, 1)
        g, t = self.reduce(h, 2)
        return g, s, t

    def tri_compose(self, g, s, t) -> NSpan:
        return self.j_compose(self.j_compose(g, 1, s), 2, t)

    def tri_compose_product(self, g, s, t) -> NSpan:
        """(g_0, (g_1, g_2)) *_1 (s_0 x t_0, s_1 x t_1)."""
        cat = self.cat
        g = self.as_span(g)
        s = self.as_span(s)
        t = self.as_span(t)
        flat = NSpan(g.source, (g.legs[0], cat.pair([g.legs[1], g.legs[2]])))
        prod = NSpan(cat.product_many([s.source, t.source])[0],
                     (cat.product_morphism([s.legs[0], t.legs[0]]),
                      cat.product_morphism([s.legs[1], t.legs[1]])))
        two = self.j_compose(flat, 1, prod)
        _, projs = cat.product_many([s.legs[1].target, t.legs[1].target])
        legs = (two.legs[0], cat.compose(projs[0], two.legs[1]), cat.compose(projs[1], two.legs[1]))
        return NSpan(two.source, legs)

    def tri_factor_iso(self, a, b):
        """Automorphisms (alpha, beta) relating two outputs of tri_factor."""
        g, s, t = a
        g2, s2, t2 = b
        gs = self.as_span(g)
        A, B = gs.legs[1].target, gs.legs[2].target
        g2s = self.as_span(g2)
        if (A, B) != (g2s.legs[1].target, g2s.legs[2].target):
            raise NoIsoFound("middle objects differ")
        for alpha in self.cat.automorphisms(A):
            sa = self.relation(self.replace_leg(s, 0, alpha))
            if sa != s2:
                continue
            ga = self.replace_leg(g, 1, alpha)
            for beta in self.cat.automorphisms(B):
                if (self.relation(self.replace_leg(t, 0, beta)) == t2
                        and self.relation(self.replace_leg(ga, 2, beta)) == g2):
                    return alpha, beta
        raise NoIsoFound("no pair of automorphisms relates the factorizations")

    def all_reduced(self, f) -> bool:
        f = self.as_span(f)
        return all(self.is_j_reduced(f, i) for i in range(f.arity))
