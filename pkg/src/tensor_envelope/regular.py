"""Concrete regular Mal'cev categories: finite sets opposite and F_q-vector spaces.

A morphism X -> Y of `FinSetOp` is stored as the underlying map of finite
sets Y -> X, so monomorphisms of the category are surjective set maps, the
product is the disjoint union and pullbacks are pushouts of sets.  `FinVec`
stores a matrix over F_q acting on column vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product

from . import gf
from .errors import BackendMismatch, NotSurjective, SizeLimitExceeded


@dataclass(frozen=True, order=True)
class RObject:
    backend: str
    size: int
    q: int = 0

    def to_json(self):
        if self.backend == "finset_op":
            return {"backend": "finset_op", "size": self.size}
        return {"backend": "finvec", "dim": self.size, "q": self.q}

    def __str__(self):
        if self.backend == "finset_op":
            return f"[{self.size}]"
        return f"F{self.q}^{self.size}"


@dataclass(frozen=True)
class RMorphism:
    source: RObject
    target: RObject
    data: tuple

    def __str__(self):
        return f"{self.source}->{self.target}:{self.data}"


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb

    def labels(self, n):
        """Class index for each element, classes numbered by minimum element."""
        out = [0] * n
        seen = {}
        for x in range(n):
            r = self.find(x)
            if r not in seen:
                seen[r] = len(seen)
            out[x] = seen[r]
        return out, len(seen)


def partition_from_labels(labels) -> tuple:
    blocks = {}
    for i, b in enumerate(labels):
        blocks.setdefault(b, []).append(i)
    return tuple(sorted(tuple(v) for v in blocks.values()))


def set_partitions(elements):
    """All set partitions of a sorted sequence, each as a tuple of sorted blocks.

    Recursion on the block containing the first element; the result is sorted
    into canonical order afterwards.
    """
    elements = list(elements)
    if not elements:
        return [()]
    first, rest = elements[0], elements[1:]
    out = []
    for mask in range(1 << len(rest)):
        block = (first,) + tuple(x for i, x in enumerate(rest) if mask >> i & 1)
        remaining = [x for i, x in enumerate(rest) if not mask >> i & 1]
        for tail in set_partitions(remaining):
            out.append((block,) + tail)
    return out


class RegularCategory:
    """Common interface; subclasses implement the backend-specific pieces."""

    backend = ""
    default_cap = 0

    def __init__(self, cap=None):
        self.cap = self.default_cap if cap is None else cap

    # -------------------------------------------------------------- objects
    def obj(self, n: int) -> RObject:
        raise NotImplementedError

    def terminal(self) -> RObject:
        return self.obj(0)

    def check(self, *objs):
        for X in objs:
            if X.backend != self.backend or (self.backend == "finvec" and X.q != self.q):
                raise BackendMismatch(f"{X} does not belong to {self.name}")

    def check_cap(self, X: RObject, factor=1):
        if X.size > self.cap * factor:
            raise SizeLimitExceeded(f"{X} exceeds the size cap {self.cap * factor}")

    def product(self, X: RObject, Y: RObject):
        P, projs = self.product_many([X, Y])
        return P, projs[0], projs[1]

    # -------------------------------------------------------------- generic
    def compose_many(self, *fs):
        """compose_many(h, g, f) = h o g o f."""
        out = fs[-1]
        for g in reversed(fs[:-1]):
            out = self.compose(g, out)
        return out

    def is_iso(self, f: RMorphism) -> bool:
        return self.is_injective(f) and self.is_surjective(f)

    def image_factorization(self, f: RMorphism):
        key = self.subobject_canon(f)
        im = self.canon_mono(f.target, key)
        coim = self.factor_through_mono(f, key)
        return coim, im

    def image_canon(self, f: RMorphism):
        return self.subobject_canon(f)

    def enumerate_relations(self, X: RObject, Y: RObject):
        self.check(X, Y)
        self.check_cap(X)
        self.check_cap(Y)
        P, _, _ = self.product(X, Y)
        return self.enumerate_subobjects(P, _checked=True)

    def degree(self, p: RMorphism, u):
        if not self.is_surjective(p):
            raise NotSurjective(f"{p} is not surjective")
        k = p.source.size - p.target.size
        return u ** k if k else u ** 0

    def leq_by_spans(self, X: RObject, Y: RObject) -> bool:
        """Subquotient test from the definition: a span Y <-< S ->> X."""
        for n in range(0, Y.size + 1):
            S = self.obj(n)
            if n < X.size:
                continue
            for m in self.all_morphisms(S, Y):
                if not self.is_injective(m):
                    continue
                for e in self.all_morphisms(S, X):
                    if self.is_surjective(e):
                        return True
        return False

    def leq(self, X: RObject, Y: RObject) -> bool:
        self.check(X, Y)
        return X.size <= Y.size


class FinSetOp(RegularCategory):
    backend = "finset_op"
    name = "finset-op"
    default_cap = 5
    q = 0

    def obj(self, n: int) -> RObject:
        if n < 0:
            raise ValueError("negative cardinality")
        return RObject("finset_op", n)

    def key(self):
        return ("finset_op",)

    def identity(self, X):
        return RMorphism(X, X, tuple(range(X.size)))

    def morphism(self, X, Y, data):
        data = tuple(int(d) for d in data)
        if len(data) != Y.size or any(not 0 <= d < X.size for d in data):
            raise ValueError(f"ill-typed set map {data} for {X}->{Y}")
        return RMorphism(X, Y, data)

    def compose(self, g: RMorphism, f: RMorphism) -> RMorphism:
        if f.target != g.source:
            raise BackendMismatch(f"cannot compose {g} after {f}")
        fd = f.data
        return RMorphism(f.source, g.target, tuple(fd[z] for z in g.data))

    def product_many(self, objs):
        self.check(*objs)
        total = sum(X.size for X in objs)
        P = self.obj(total)
        projs = []
        off = 0
        for X in objs:
            projs.append(RMorphism(P, X, tuple(range(off, off + X.size))))
            off += X.size
        return P, projs

    def pair(self, legs):
        S = legs[0].source
        P, _ = self.product_many([f.target for f in legs])
        data = tuple(d for f in legs for d in f.data)
        return RMorphism(S, P, data)

    def product_morphism(self, fs):
        S, _ = self.product_many([f.source for f in fs])
        T, _ = self.product_many([f.target for f in fs])
        data = []
        off = 0
        for f in fs:
            data.extend(off + d for d in f.data)
            off += f.source.size
        return RMorphism(S, T, tuple(data))

    def is_injective(self, f):
        return len(set(f.data)) == f.source.size

    def is_surjective(self, f):
        return len(set(f.data)) == len(f.data)

    def subobject_canon(self, f):
        fibers = {}
        for y, x in enumerate(f.data):
            fibers.setdefault(x, []).append(y)
        return tuple(sorted(tuple(v) for v in fibers.values()))

    def canon_mono(self, Y, key):
        I = self.obj(len(key))
        data = [0] * Y.size
        for b, block in enumerate(key):
            for y in block:
                data[y] = b
        return RMorphism(I, Y, tuple(data))

    def factor_through_mono(self, f, key):
        I = self.obj(len(key))
        return RMorphism(f.source, I, tuple(f.data[block[0]] for block in key))

    def pullback(self, f, g):
        if f.target != g.target:
            raise BackendMismatch("pullback needs a common target")
        A, B = f.source.size, g.source.size
        uf = _UnionFind(A + B)
        for a, b in zip(f.data, g.data):
            uf.union(a, A + b)
        labels, n = uf.labels(A + B)
        P = self.obj(n)
        return P, RMorphism(P, f.source, tuple(labels[:A])), RMorphism(P, g.source, tuple(labels[A:]))

    def pushout_of_surjections(self, p, q):
        if p.source != q.source:
            raise BackendMismatch("pushout needs a common source")
        for s in (p, q):
            if not self.is_surjective(s):
                raise NotSurjective(f"{s} is not surjective")
        common = sorted(set(p.data) & set(q.data))
        Q = self.obj(len(common))
        pi = {s: i for i, s in enumerate(p.data)}
        qi = {s: i for i, s in enumerate(q.data)}
        return (Q, RMorphism(p.target, Q, tuple(pi[s] for s in common)),
                RMorphism(q.target, Q, tuple(qi[s] for s in common)))

    def enumerate_subobjects(self, X, _checked=False):
        if not _checked:
            self.check(X)
            self.check_cap(X, 2)
        return sorted(set_partitions(range(X.size)))

    def all_morphisms(self, X, Y):
        for data in product(range(X.size), repeat=Y.size):
            yield RMorphism(X, Y, data)

    def automorphisms(self, X):
        self.check(X)
        self.check_cap(X)
        return [RMorphism(X, X, p) for p in permutations(range(X.size))]

    def inverse(self, f):
        inv = [0] * len(f.data)
        for i, d in enumerate(f.data):
            inv[d] = i
        return RMorphism(f.target, f.source, tuple(inv))

    def canon_to_json(self, key):
        return [list(b) for b in key]

    def canon_from_json(self, obj):
        return tuple(sorted(tuple(sorted(int(x) for x in b)) for b in obj))


class FinVec(RegularCategory):
    backend = "finvec"
    default_cap = 3

    def __init__(self, q=2, cap=None):
        if q < 2 or any(q % p == 0 for p in range(2, int(q ** 0.5) + 1)):
            raise ValueError(f"q={q} must be prime")
        super().__init__(cap)
        self.q = q
        self.name = f"finvec(q={q})"

    def obj(self, n: int) -> RObject:
        if n < 0:
            raise ValueError("negative dimension")
        return RObject("finvec", n, self.q)

    def key(self):
        return ("finvec", self.q)

    def identity(self, X):
        return RMorphism(X, X, gf.identity(X.size))

    def morphism(self, X, Y, data):
        data = gf.normalize(data, self.q)
        if len(data) != Y.size or any(len(r) != X.size for r in data):
            raise ValueError(f"matrix shape does not fit {X}->{Y}")
        return RMorphism(X, Y, data)

    def compose(self, g, f):
        if f.target != g.source:
            raise BackendMismatch(f"cannot compose {g} after {f}")
        return RMorphism(f.source, g.target,
                         gf.matmul(g.data, f.data, self.q, f.target.size, f.source.size))

    def product_many(self, objs):
        self.check(*objs)
        total = sum(X.size for X in objs)
        P = self.obj(total)
        projs = []
        off = 0
        for X in objs:
            rows = tuple(tuple(1 if j == off + i else 0 for j in range(total)) for i in range(X.size))
            projs.append(RMorphism(P, X, rows))
            off += X.size
        return P, projs

    def pair(self, legs):
        S = legs[0].source
        P, _ = self.product_many([f.target for f in legs])
        return RMorphism(S, P, tuple(r for f in legs for r in f.data))

    def product_morphism(self, fs):
        S, _ = self.product_many([f.source for f in fs])
        T, _ = self.product_many([f.target for f in fs])
        rows = []
        off = 0
        for f in fs:
            for r in f.data:
                rows.append((0,) * off + tuple(r) + (0,) * (S.size - off - f.source.size))
            off += f.source.size
        return RMorphism(S, T, tuple(rows))

    def rank(self, f):
        return gf.rank(f.data, f.source.size, self.q)

    def is_injective(self, f):
        return self.rank(f) == f.source.size

    def is_surjective(self, f):
        return self.rank(f) == f.target.size

    def subobject_canon(self, f):
        cols = gf.transpose(f.data, f.source.size)
        R, _ = gf.rref(cols, f.target.size, self.q)
        return R

    def canon_mono(self, Y, key):
        I = self.obj(len(key))
        return RMorphism(I, Y, gf.transpose(key, Y.size) if key else tuple(() for _ in range(Y.size)))

    def factor_through_mono(self, f, key):
        _, piv = gf.rref(key, f.target.size, self.q)
        I = self.obj(len(key))
        return RMorphism(f.source, I, tuple(f.data[p] for p in piv))

    def pullback(self, f, g):
        if f.target != g.target:
            raise BackendMismatch("pullback needs a common target")
        A, B = f.source.size, g.source.size
        q = self.q
        stacked = tuple(tuple(fr) + tuple((-x) % q for x in gr) for fr, gr in zip(f.data, g.data))
        K = gf.nullspace(stacked, A + B, q)
        K, _ = gf.rref(K, A + B, q)
        P = self.obj(len(K))
        p1 = tuple(tuple(v[i] for v in K) for i in range(A))
        p2 = tuple(tuple(v[A + i] for v in K) for i in range(B))
        return P, RMorphism(P, f.source, p1), RMorphism(P, g.source, p2)

    def pushout_of_surjections(self, p, s):
        if p.source != s.source:
            raise BackendMismatch("pushout needs a common source")
        for m in (p, s):
            if not self.is_surjective(m):
                raise NotSurjective(f"{m} is not surjective")
        q = self.q
        n = p.source.size
        kers = gf.nullspace(p.data, n, q) + gf.nullspace(s.data, n, q)
        K, piv = gf.rref(kers, n, q)
        free = [j for j in range(n) if j not in set(piv)]
        Q = self.obj(len(free))
        # quotient map: reduce modulo K, then read the non-pivot coordinates
        pi_cols = []
        for j in range(n):
            v = [1 if i == j else 0 for i in range(n)]
            for row, pc in zip(K, piv):
                c = v[pc]
                if c:
                    v = [(a - c * b) % q for a, b in zip(v, row)]
            pi_cols.append([v[f] for f in free])
        pi = tuple(tuple(pi_cols[j][i] for j in range(n)) for i in range(len(free)))
        legs = []
        for m in (p, s):
            sec = gf.solve_right_inverse(m.data, m.target.size, n, q)
            legs.append(RMorphism(m.target, Q, gf.matmul(pi, sec, q, n, m.target.size)))
        return Q, legs[0], legs[1]

    def enumerate_subobjects(self, X, _checked=False):
        if not _checked:
            self.check(X)
            self.check_cap(X, 2)
        return gf.echelon_forms(X.size, self.q)

    def all_morphisms(self, X, Y):
        for M in gf.all_matrices(Y.size, X.size, self.q):
            yield RMorphism(X, Y, M)

    def automorphisms(self, X):
        self.check(X)
        self.check_cap(X)
        n = X.size
        return [RMorphism(X, X, M) for M in gf.all_matrices(n, n, self.q)
                if gf.rank(M, n, self.q) == n]

    def inverse(self, f):
        n = f.source.size
        return RMorphism(f.target, f.source, gf.solve_right_inverse(f.data, n, n, self.q))

    def canon_to_json(self, key):
        return [list(r) for r in key]

    def canon_from_json(self, obj):
        rows = gf.normalize(obj, self.q)
        n = len(rows[0]) if rows else 0
        return gf.rref(rows, n, self.q)[0]


def make_backend(name: str, q: int = 2, cap=None) -> RegularCategory:
    name = name.replace("-", "_").lower()
    if name in ("finset_op", "finsetop", "finset"):
        return FinSetOp(cap)
    if name in ("finvec", "finvec_fq"):
        return FinVec(q, cap)
    raise ValueError(f"unknown backend {name!r}")
