"""Brute-force reference computations, deliberately independent of the package.

Nothing here imports tensor_envelope: set partitions, subspaces of F_q^n and
the partition category at a rational parameter are built from scratch with
plain Python and `fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product


# ------------------------------------------------------------ set partitions
def restricted_growth_strings(n):
    """All restricted growth strings of length n (a_0 = 0, a_i <= 1 + max a_<i)."""
    if n == 0:
        yield ()
        return
    def rec(prefix, top):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in range(top + 2):
            yield from rec(prefix + [v], max(top, v))
    yield from rec([0], 0)


def bell(n):
    return sum(1 for _ in restricted_growth_strings(n))


def partition_from_rgs(rgs):
    blocks = {}
    for i, b in enumerate(rgs):
        blocks.setdefault(b, []).append(i)
    return tuple(sorted(tuple(v) for v in blocks.values()))


def set_partitions(n):
    return [partition_from_rgs(r) for r in restricted_growth_strings(n)]


# ------------------------------------------------------------ subspaces of F_q^n
def count_subspaces(n, q):
    """Enumerate subspaces of F_q^n by closing every subset of generators."""
    vectors = list(product(range(q), repeat=n))

    def span(gens):
        out = {tuple([0] * n)}
        frontier = list(out)
        while frontier:
            new = []
            for v in frontier:
                for g in gens:
                    for c in range(1, q):
                        w = tuple((a + c * b) % q for a, b in zip(v, g))
                        if w not in out:
                            out.add(w)
                            new.append(w)
            frontier = new
        return frozenset(out)

    seen = {span(())}
    layer = {span(())}
    while layer:
        nxt = set()
        for S in layer:
            for v in vectors:
                if v not in S:
                    T = span(tuple(S) + (v,))
                    if T not in seen:
                        seen.add(T)
                        nxt.add(T)
        layer = nxt
    return len(seen)


def gaussian_binomial_total(n, q):
    """Sum of Gaussian binomials [n choose k]_q, a closed-form cross-check."""
    def gb(n, k):
        num = den = 1
        for i in range(k):
            num *= q ** (n - i) - 1
            den *= q ** (i + 1) - 1
        return num // den
    return sum(gb(n, k) for k in range(n + 1))


# ------------------------------------------------------------ exact linear algebra
def rank(rows):
    """Rank of a list of Fraction rows by plain Gaussian elimination."""
    M = [list(r) for r in rows if any(r)]
    if not M:
        return 0
    ncols = len(M[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
        if r == len(M):
            break
    return r


def row_basis(rows):
    """A basis (echelon rows) of the span of `rows`."""
    M = [list(r) for r in rows if any(r)]
    out = []
    if not M:
        return out
    ncols = len(M[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
    return M[:r]


def left_kernel(G):
    """Basis of {x : x G = 0} for a square Fraction matrix G."""
    n = len(G)
    # solve G^T x = 0
    A = [[G[j][i] for j in range(n)] for i in range(n)]
    m = len(A[0]) if A else 0
    piv_cols = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(n):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        piv_cols.append(c)
        r += 1
    free = [c for c in range(m) if c not in piv_cols]
    basis = []
    for fc in free:
        v = [Fraction(0)] * m
        v[fc] = Fraction(1)
        for i, pc in enumerate(piv_cols):
            v[pc] = -A[i][fc]
        basis.append(v)
    return basis


# ------------------------------------------------------------ partition category
class PartitionAlgebra:
    """The partition category on objects 0..N at parameter t, as one algebra.

    A basis element (m, n, P) is a set partition P of the points 0..m+n-1,
    the first m being the source; composing glues along the middle and
    multiplies by t for each component that lives entirely in the middle.
    """

    def __init__(self, N, t):
        self.N = N
        self.t = Fraction(t)
        self.basis = [(m, n, P) for m in range(N + 1) for n in range(N + 1) for P in set_partitions(m + n)]
        self.index = {b: i for i, b in enumerate(self.basis)}
        self.dim = len(self.basis)
        self._table = {}

    def mul_basis(self, b, a):
        """b o a for basis elements, as (coefficient, basis element) or None."""
        key = (b, a)
        if key in self._table:
            return self._table[key]
        (m, n, P), (n2, p, Q) = a, b
        if n != n2:
            self._table[key] = None
            return None
        parent = list(range(m + n + p))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)

        for block in P:
            for x in block[1:]:
                union(block[0], x)
        for block in Q:
            for x in block[1:]:
                union(block[0] + m, x + m)
        comps = {}
        for x in range(m + n + p):
            comps.setdefault(find(x), []).append(x)
        loops, outer = 0, []
        for members in comps.values():
            pts = [x if x < m else x - n for x in members if x < m or x >= m + n]
            if pts:
                outer.append(tuple(sorted(pts)))
            else:
                loops += 1
        out = (self.t ** loops, (m, p, tuple(sorted(outer))))
        self._table[key] = out
        return out

    def mul(self, y, x):
        """Product y x of algebra elements given as coordinate lists."""
        out = [Fraction(0)] * self.dim
        xs = [(i, c) for i, c in enumerate(x) if c]
        for j, cy in enumerate(y):
            if not cy:
                continue
            bj = self.basis[j]
            for i, cx in xs:
                hit = self.mul_basis(bj, self.basis[i])
                if hit is None:
                    continue
                c, r = hit
                out[self.index[r]] += cy * cx * c
        return out

    def unit_vector(self, b, c=1):
        v = [Fraction(0)] * self.dim
        v[self.index[b]] = Fraction(c)
        return v

    def identity_of(self, k):
        return self.unit_vector((k, k, tuple((i, i + k) for i in range(k))))

    def swap2(self):
        return self.unit_vector((2, 2, ((0, 3), (1, 2))))

    def group_idempotent(self, k, sign):
        """Trivial (sign=+1) or sign (sign=-1) isotypic idempotent of S_k at object k (k <= 2)."""
        e = self.identity_of(k)
        if k < 2:
            return e
        s = self.swap2()
        return [(a + sign * b) / 2 for a, b in zip(e, s)]

    def radical(self):
        """Jacobson radical via the trace form (valid in characteristic zero)."""
        n = self.dim
        mats = []
        for i in range(n):
            ei = self.unit_vector(self.basis[i])
            mats.append([self.mul(ei, self.unit_vector(self.basis[j])) for j in range(n)])
        # G[i][j] = Tr(L_{b_i b_j}); L_{b_i b_j}(b_k) = b_i (b_j b_k)
        G = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                prod = mats[i][j]
                tr = Fraction(0)
                for k in range(n):
                    col = self.mul(prod, self.unit_vector(self.basis[k]))
                    tr += col[k]
                G[i][j] = tr
        return left_kernel(G)


def _span_dim_with(base, extra):
    return rank(base + extra)


def radical_series_decomposition(N, t):
    """Decomposition matrix of the partition category truncated at N <= 2.

    Labels are (k, sign) for k <= N with sign in {+1, -1} only when k = 2, in
    the order ([0]), ([1]), ([2], sign), ([2], trivial).  Standards are
    A f / (A 1_{<k} A f); simples are their radical tops; every radical layer
    of a standard is split into simples by peeling dimension vectors on the
    isotypic idempotents, smallest object first.
    """
    assert N <= 2
    A = PartitionAlgebra(N, t)
    labels = [(k, 1) for k in range(min(N, 1) + 1)]
    if N == 2:
        labels += [(2, -1), (2, 1)]
    idem = {lab: A.group_idempotent(*lab) for lab in labels}
    rad = A.radical()
    basis_vecs = [A.unit_vector(b) for b in A.basis]

    def module_of(lab):
        k, _ = lab
        f = idem[lab]
        gens = row_basis([A.mul(b, f) for b in basis_vecs])
        low = []
        for j in range(k):
            one_j = A.identity_of(j)
            for x in basis_vecs:
                xj = A.mul(x, one_j)
                if any(xj):
                    for y in basis_vecs:
                        low.append(A.mul(xj, A.mul(y, f)))
        return gens, row_basis(low)

    def layers(gens, K):
        out = []
        S = gens
        while True:
            T = row_basis([A.mul(r, s) for r in rad for s in S]) if S else []
            top = rank(S + K)
            bottom = rank(T + K)
            if top == bottom:
                break
            vec = {}
            for lab in labels:
                f = idem[lab]
                fS = [A.mul(f, s) for s in S]
                vec[lab] = _span_dim_with(T + K, fS) - bottom
            out.append(vec)
            S = T
        return out

    std_layers = {lab: layers(*module_of(lab)) for lab in labels}
    simple_vec = {lab: std_layers[lab][0] for lab in labels}
    order = sorted(labels, key=lambda lab: lab[0])
    matrix = []
    for lam in labels:
        row = {mu: 0 for mu in labels}
        for layer in std_layers[lam]:
            rest = dict(layer)
            for mu in order:
                d = simple_vec[mu][mu]
                assert d > 0
                m, r = divmod(rest[mu], d)
                assert r == 0, "layer is not a sum of simples"
                row[mu] += m
                for nu in labels:
                    rest[nu] -= m * simple_vec[mu][nu]
            assert all(v == 0 for v in rest.values()), "layer left a remainder"
        matrix.append([row[mu] for mu in labels])
    return labels, matrix
