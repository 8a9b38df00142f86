import random

import pytest

from conftest import finset, finvec
from oracles import bell
from tensor_envelope.errors import (IndexOutOfRange, NoIsoFound, NotEqualComposites, NotOneReduced,
                                    TargetMismatch)
from tensor_envelope.fuzz import appendix_fuzz, fuzz_case
from tensor_envelope.relations import Calculus, NSpan


def test_relation_enumeration_and_canonical_spans():
    cat = finset()
    calc = Calculus(cat)
    targets = (cat.obj(1), cat.obj(1), cat.obj(1))
    rels = calc.enumerate(targets)
    assert len(rels) == 5
    for r in rels:
        sp = calc.canonical_span(r)
        assert calc.is_jointly_injective(sp)
        assert calc.relation(sp) == r


def test_span_class_records_excess():
    cat = finset()
    calc = Calculus(cat)
    X = cat.obj(1)
    # [2] with both legs collapsing: not jointly injective, excess one
    S = cat.obj(2)
    f = cat.morphism(S, X, (0,))
    sp = NSpan(S, (f, f))
    cls = calc.span_class(sp)
    assert cls.excess == 1
    with pytest.raises(ValueError):
        calc.relation(sp)


@pytest.mark.parametrize("get", [finset, lambda: finvec(2)])
def test_reduction_on_every_binary_relation(get):
    cat = get()
    calc = Calculus(cat)
    for m in range(3):
        for n in range(3):
            for r in calc.enumerate((cat.obj(m), cat.obj(n))):
                for j in range(2):
                    g, s = calc.reduce(r, j)
                    assert calc.is_j_reduced(g, j) and calc.is_in_s_minus(s)
                    assert calc.same_class(calc.j_compose(g, j, s), r)
                    assert calc.reduction_iso(g, s, g, s, j) is not None


def test_reduction_iso_refuses_unrelated_factorizations():
    cat = finset()
    calc = Calculus(cat)
    X = cat.obj(2)
    a, b = calc.enumerate((X, X))[:2]
    ga, sa = calc.reduce(a, 1)
    gb, sb = calc.reduce(b, 1)
    with pytest.raises((NoIsoFound, NotEqualComposites)):
        calc.reduction_iso(ga, sa, gb, sb, 1)


def test_index_and_target_errors():
    cat = finset()
    calc = Calculus(cat)
    r = calc.enumerate((cat.obj(1), cat.obj(2)))[0]
    with pytest.raises(IndexOutOfRange):
        calc.reduce(r, 2)
    s = calc.enumerate((cat.obj(1), cat.obj(1)))[0]
    with pytest.raises(TargetMismatch):
        calc.j_compose(r, 1, s)


def test_tri_factor_requires_leg_zero_reduced():
    cat = finset()
    calc = Calculus(cat)
    X = cat.obj(1)
    bad = [r for r in calc.enumerate((X, X, X)) if not calc.is_j_reduced(r, 0)]
    assert bad
    with pytest.raises(NotOneReduced):
        calc.tri_factor(bad[0])


def test_tri_factor_on_all_small_ternary_relations():
    cat = finset()
    calc = Calculus(cat)
    objs = [cat.obj(n) for n in range(3)]
    count = want = 0
    for A in objs:
        for B in objs:
            for C in objs:
                if A.size + B.size + C.size > 4:
                    continue
                want += bell(A.size + B.size + C.size)
                for r in calc.enumerate((A, B, C)):
                    h, _ = calc.reduce(r, 0)
                    g, s, t = calc.tri_factor(h)
                    assert calc.all_reduced(g)
                    assert calc.same_class(calc.tri_compose(g, s, t), h)
                    assert calc.same_class(calc.tri_compose_product(g, s, t), h)
                    count += 1
    assert count == want


@pytest.mark.parametrize("seed", [2, 5, 17])
def test_fuzz_seeds(seed):
    rep = appendix_fuzz(seed, 45)
    assert rep["ok"], rep["failures"][:3]
    assert sum(rep["per_backend"].values()) == 45


def test_fuzz_is_deterministic():
    assert appendix_fuzz(4, 30) == appendix_fuzz(4, 30)


def test_fuzz_detects_a_broken_reduction(monkeypatch):
    # swap in a reduction that returns the wrong factor
    real = Calculus.reduce

    def broken(self, f, j):
        g, s = real(self, f, j)
        return g, self.enumerate(self.as_span(s).targets)[0]

    monkeypatch.setattr(Calculus, "reduce", broken)
    rng = random.Random(0)
    failures = []
    for _ in range(10):
        try:
            failures += fuzz_case(finset(), rng, 2)
        except (NoIsoFound, ValueError, NotOneReduced):
            failures.append({"property": "exception"})
    assert failures
