import random
from itertools import product

import pytest

from conftest import diagram, finset
from oracles import PartitionAlgebra
from tensor_envelope.diagram import DiagMorphism
from tensor_envelope.errors import ObjectMismatch
from tensor_envelope.regular import make_backend
from tensor_envelope.scalar import Scalar, make_field
from tensor_envelope.verify import factorization_report, triangular_verify
from tensor_envelope.weights import build_algebra


def _basis_pairs(D, nmax):
    cat = D.cat
    objs = [cat.obj(n) for n in range(nmax + 1)]
    for X, Y, Z in product(objs, repeat=3):
        for r1 in D.hom_basis(X, Y):
            for r2 in D.hom_basis(Y, Z):
                yield r2, r1


def test_composition_matches_partition_oracle():
    D = diagram("generic")
    P = PartitionAlgebra(2, 5)
    seen = 0
    for r2, r1 in _basis_pairs(D, 2):
        e, r = D.compose_rel(r2, r1)
        (m, n), p = (x.size for x in r1.targets), r2.targets[1].size
        c, out = P.mul_basis((n, p, r2.key), (m, n, r1.key))
        assert c == 5 ** e and out == (m, p, r.key)
        seen += 1
    assert seen > 500


def test_fast_and_generic_composition_agree():
    D = diagram("generic")
    rng = random.Random(3)
    pairs = list(_basis_pairs(D, 2))
    pairs += rng.sample(list(_basis_pairs(D, 3)), 400)
    for r2, r1 in pairs:
        assert D.compose_rel(r2, r1) == D.compose_rel_generic(r2, r1)


def test_fast_and_generic_tensor_agree():
    D = diagram("generic")
    cat = D.cat
    objs = [cat.obj(n) for n in range(2)]
    rels = [r for X in objs for Y in objs for r in D.hom_basis(X, Y)]
    for r1, r2 in product(rels, repeat=2):
        assert D.tensor_rel(r1, r2) == D.tensor_rel_generic(r1, r2)


@pytest.mark.parametrize("backend,q", [("finvec", 2), ("finvec", 3)])
def test_finvec_truncation_associative(backend, q):
    A = build_algebra(make_backend(backend, q), make_field("generic"), 1)
    ok, info = A.check_associativity()
    assert ok, info


def test_finset_truncation_associative():
    A = build_algebra(finset(), make_field("generic"), 2)
    ok, info = A.check_associativity()
    assert ok and info > 9000


@pytest.mark.parametrize("t,backend", [("generic", "finset_op"), ("2", "finset_op"), ("generic", "finvec")])
def test_unit_laws(t, backend):
    D = diagram(t, backend)
    cat = D.cat
    for X, Y in product([cat.obj(n) for n in range(3 if backend == "finset_op" else 2)], repeat=2):
        for R in D.hom_basis(X, Y):
            f = D.basis_morphism(R)
            assert D.equal(D.compose(D.identity(Y), f), f)
            assert D.equal(D.compose(f, D.identity(X)), f)


def _random_morphism(D, X, Y, rng):
    basis = D.hom_basis(X, Y)
    picks = rng.sample(basis, min(len(basis), 3))
    return DiagMorphism(X, Y, {r: D.F(rng.randint(-3, 3) or 1) for r in picks})


@pytest.mark.parametrize("backend", ["finset_op", "finvec"])
def test_interchange_and_braiding(backend):
    D = diagram("generic", backend)
    cat = D.cat
    rng = random.Random(11)
    sizes = range(3) if backend == "finset_op" else range(2)
    for _ in range(25):
        A, B, C, E, G, H = (cat.obj(rng.choice(sizes)) for _ in range(6))
        f1, f2 = _random_morphism(D, A, B, rng), _random_morphism(D, B, C, rng)
        g1, g2 = _random_morphism(D, E, G, rng), _random_morphism(D, G, H, rng)
        lhs = D.compose(D.tensor(f2, g2), D.tensor(f1, g1))
        rhs = D.tensor(D.compose(f2, f1), D.compose(g2, g1))
        assert D.equal(lhs, rhs)
        # the braiding is an involution and natural
        s = D.braiding(A, E)
        assert D.equal(D.compose(D.braiding(E, A), s), D.identity(D.tensor_obj(A, E)))
        nat_l = D.compose(D.braiding(B, G), D.tensor(f1, g1))
        nat_r = D.compose(D.tensor(g1, f1), s)
        assert D.equal(nat_l, nat_r)


@pytest.mark.parametrize("backend,nmax", [("finset_op", 3), ("finvec", 2)])
def test_rigidity_and_dimensions(backend, nmax):
    D = diagram("generic", backend)
    cat = D.cat
    t = Scalar.t()
    for n in range(nmax + 1):
        X = cat.obj(n)
        idX = D.identity(X)
        zig = D.compose(D.tensor(D.cap(X), idX), D.tensor(idX, D.cup(X)))
        zag = D.compose(D.tensor(idX, D.cap(X)), D.tensor(D.cup(X), idX))
        assert D.equal(zig, idX) and D.equal(zag, idX)
        loop = D.compose(D.cap(X), D.cup(X))
        assert loop.terms == {D.identity_rel(cat.terminal()): t ** n}


def test_transpose_is_an_anti_involution():
    D = diagram("generic")
    for r2, r1 in _basis_pairs(D, 2):
        e, r = D.compose_rel(r2, r1)
        e2, rt = D.compose_rel(D.transpose(r1), D.transpose(r2))
        assert e == e2 and rt == D.transpose(r)
        assert D.transpose(D.transpose(r1)) == r1


def test_composition_type_errors():
    D = diagram("generic")
    cat = D.cat
    with pytest.raises(ObjectMismatch):
        D.compose(D.identity(cat.obj(1)), D.identity(cat.obj(2)))


@pytest.mark.parametrize("t", ["generic", "2", "3"])
def test_triangular_structure(t):
    rep = triangular_verify(diagram(t), 2)
    assert rep["ok"], rep
    assert rep["T3"]["checked"] == 9


def test_triangular_structure_finvec():
    rep = triangular_verify(diagram("generic", "finvec"), 1)
    assert rep["ok"], rep


def test_factorizations_of_two_by_two():
    D = diagram("generic")
    cat = D.cat
    rep = factorization_report(D, cat.obj(2), cat.obj(2), [cat.obj(n) for n in range(3)])
    assert rep["ok"] and rep["relations"] == 15
    # every relation has a factorization, extra ones come from automorphisms of the middle
    assert rep["factorizations"] >= 15


def test_triangular_fault_injection():
    D = diagram("generic")
    one = finset().obj(1)

    def corrupt(R2, R1, c, r):
        if R1.targets == (one, one) and R2.targets == (one, one):
            return c * 0, r
        return c, r

    rep = triangular_verify(D, 2, corrupt=corrupt)
    assert not rep["ok"]
    assert "T3" in rep["failed"]
    assert rep["T3"]["witness"]["image_rank"] < rep["T3"]["witness"]["hom_dim"]
