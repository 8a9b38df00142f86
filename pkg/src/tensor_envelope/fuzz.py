"""Seeded property fuzzer for the n-ary relation calculus.

Each case draws a random span (arity 1..3, objects of size <= 3) over one of
the backends, takes its relation, and checks: reduction roundtrips and the
reducedness of its output, uniqueness of reductions up to an automorphism,
associativity and interchange of j-composition, and the full reduction of
3-ary relations with uniqueness up to a pair of automorphisms.
"""

from __future__ import annotations

import random

from .errors import EnvelopeError
from .regular import make_backend
from .relations import Calculus, NSpan


class _Sampler:
    def __init__(self, cat, rng, max_size):
        self.cat = cat
        self.rng = rng
        self.max_size = max_size
        self._mor = {}

    def obj(self, lo=0):
        return self.cat.obj(self.rng.randint(lo, self.max_size))

    def _homs(self, X, Y):
        ms = self._mor.get((X, Y))
        if ms is None:
            ms = list(self.cat.all_morphisms(X, Y))
            self._mor[(X, Y)] = ms
        return ms

    def morphism(self, X, Y):
        return self.rng.choice(self._homs(X, Y))

    def span(self, targets):
        """A random span; the source is redrawn until every leg has a candidate."""
        while True:
            S = self.obj()
            if all(self._homs(S, T) for T in targets):
                return NSpan(S, tuple(self.morphism(S, T) for T in targets))

    def automorphism(self, X):
        return self.rng.choice(self.cat.automorphisms(X))

    def presentation(self, calc, rel):
        """The relation's canonical span precomposed with a random automorphism."""
        sp = calc.canonical_span(rel)
        a = self.automorphism(sp.source)
        return NSpan(sp.source, tuple(self.cat.compose(f, a) for f in sp.legs))


def _check(cond, name, failures, **data):
    if not cond:
        failures.append({"property": name, **{k: str(v) for k, v in data.items()}})
    return cond


def fuzz_case(cat, rng, max_size=3) -> list:
    """Run every property on one random relation; returns the list of failures."""
    calc = Calculus(cat)
    smp = _Sampler(cat, rng, max_size)
    failures = []
    n = rng.randint(1, 3)
    targets = tuple(smp.obj() for _ in range(n))
    f = calc.image(smp.span(targets))
    fspan = calc.canonical_span(f)

    # reduction: roundtrip, reducedness, S-minus, other legs stay reduced, uniqueness
    for j in range(n):
        g, s = calc.reduce(f, j)
        _check(calc.same_class(calc.j_compose(g, j, s), f), "reduce-roundtrip", failures, f=f, j=j)
        _check(calc.is_j_reduced(g, j), "reduce-reduced", failures, f=f, j=j)
        _check(calc.is_in_s_minus(s), "reduce-s-minus", failures, f=f, j=j)
        for k in range(n):
            if k != j and calc.is_j_reduced(f, k):
                _check(calc.is_j_reduced(g, k), "reduce-keeps-reduced", failures, f=f, j=j, k=k)
        # an independently presented input and a twisted factorization
        g2, s2 = calc.reduce(smp.presentation(calc, f), j)
        mid = calc.as_span(g).legs[j].target
        alpha = smp.automorphism(mid)
        g3, s3 = calc.twist(g, s, j, alpha)
        for other in ((g2, s2), (g3, s3)):
            try:
                calc.reduction_iso(g, s, other[0], other[1], j)
                ok = True
            except EnvelopeError:
                ok = False
            _check(ok, "reduction-iso", failures, f=f, j=j)

    # j-composition: associativity and interchange
    j = rng.randrange(n)
    A, B = smp.obj(), smp.obj()
    s = calc.image(smp.span((fspan.legs[j].target, A)))
    t = calc.image(smp.span((A, B)))
    lhs = calc.j_compose(calc.j_compose(f, j, s), j, t)
    rhs = calc.j_compose(f, j, calc.compose2(s, t))
    _check(calc.same_class(lhs, rhs), "j-associativity", failures, f=f, j=j, s=s, t=t)
    if n >= 2:
        k = rng.choice([i for i in range(n) if i != j])
        u = calc.image(smp.span((fspan.legs[k].target, smp.obj())))
        a = calc.j_compose(calc.j_compose(f, j, s), k, u)
        b = calc.j_compose(calc.j_compose(f, k, u), j, s)
        _check(calc.same_class(a, b), "j-interchange", failures, f=f, j=j, k=k)

    # 3-ary: full reduction after making leg 0 reduced
    if n == 3:
        h, _ = calc.reduce(f, 0)
        g, s1, t1 = calc.tri_factor(h)
        _check(calc.all_reduced(g), "tri-reduced", failures, f=h)
        _check(calc.same_class(calc.tri_compose(g, s1, t1), h), "tri-roundtrip", failures, f=h)
        _check(calc.same_class(calc.tri_compose_product(g, s1, t1), h), "tri-product", failures, f=h)
        other = calc.tri_factor(calc.relation(smp.presentation(calc, h)))
        gs = calc.as_span(g)
        al, be = smp.automorphism(gs.legs[1].target), smp.automorphism(gs.legs[2].target)
        twisted = (calc.relation(calc.replace_leg(calc.replace_leg(g, 1, al), 2, be)),
                   calc.relation(calc.replace_leg(s1, 0, al)),
                   calc.relation(calc.replace_leg(t1, 0, be)))
        for alt in (other, twisted):
            try:
                calc.tri_factor_iso((g, s1, t1), alt)
                ok = True
            except EnvelopeError:
                ok = False
            _check(ok, "tri-unique", failures, f=h)
    return failures


def appendix_fuzz(seed: int, cases: int, backends=("finset_op", "finvec2", "finvec3")) -> dict:
    """Round-robin over the backends; deterministic given the seed."""
    rng = random.Random(seed)
    cats = []
    for name in backends:
        if name.startswith("finvec"):
            q = int(name[6:] or 2)
            cats.append((name, make_backend("finvec", q), 2 if q == 3 else 3))
        else:
            cats.append((name, make_backend(name), 3))
    counts = {name: 0 for name, _, _ in cats}
    failures = []
    for i in range(cases):
        name, cat, size = cats[i % len(cats)]
        case_rng = random.Random(rng.getrandbits(64))
        try:
            fails = fuzz_case(cat, case_rng, size)
        except EnvelopeError as exc:
            fails = [{"property": "exception", "error": f"{type(exc).__name__}: {exc}"}]
        counts[name] += 1
        for fl in fails:
            failures.append({"case": i, "backend": name, **fl})
    return {"seed": seed, "cases": cases, "per_backend": counts,
            "failures": failures, "ok": not failures}
