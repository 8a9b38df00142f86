"""Rational irreducible representations of the automorphism groups.

Symmetric groups use the integral Specht construction: polytabloids of the
standard tableaux span the module inside the permutation module on
tabloids, and matrices are coordinates of permuted polytabloids.  The small
general linear groups that split over Q are handled through explicit
isomorphisms: GL_1(F_2) is trivial, GL_1(F_3) has order two and GL_2(F_2)
acts faithfully on the three nonzero vectors of F_2^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from flint import fmpq, fmpq_mat

from .errors import UnsupportedAutGroup
from .regular import RegularCategory, RMorphism, RObject


def partitions_of(n, maxpart=None):
    if maxpart is None:
        maxpart = n
    if n == 0:
        return [()]
    out = []
    for k in range(min(n, maxpart), 0, -1):
        for rest in partitions_of(n - k, k):
            out.append((k,) + rest)
    return out


def standard_tableaux(shape):
    n = sum(shape)
    out = []

    def place(tab, k):
        if k > n:
            out.append(tuple(tuple(r) for r in tab))
            return
        for i, row in enumerate(tab):
            if len(row) < shape[i] and (i == 0 or len(tab[i - 1]) > len(row)):
                row.append(k)
                place(tab, k + 1)
                row.pop()

    place([[] for _ in shape], 1)
    return out


def _tabloid(tab):
    return tuple(frozenset(r) for r in tab)


def _polytabloid(tab):
    """Signed combination of tabloids {tabloid: coefficient}."""
    cols = []
    for j in range(len(tab[0]) if tab else 0):
        cols.append([tab[i][j] for i in range(len(tab)) if j < len(tab[i])])
    out = {}
    col_perms = [list(permutations(c)) for c in cols]

    def rec(k, mapping, sign):
        if k == len(cols):
            t = tuple(tuple(mapping.get(x, x) for x in row) for row in tab)
            key = _tabloid(t)
            out[key] = out.get(key, 0) + sign
            return
        base = cols[k]
        for p in col_perms[k]:
            s = _perm_sign(base, p)
            m = dict(mapping)
            for a, b in zip(base, p):
                m[a] = b
            rec(k + 1, m, sign * s)

    rec(0, {}, 1)
    return {k: v for k, v in out.items() if v}


def _perm_sign(base, perm):
    idx = {b: i for i, b in enumerate(base)}
    arr = [idx[p] for p in perm]
    sign = 1
    seen = [False] * len(arr)
    for i in range(len(arr)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = arr[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


class SpechtModule:
    """Integral Specht module S^shape of S_n, matrices for permutations of 1..n."""

    def __init__(self, shape):
        self.shape = tuple(shape)
        self.n = sum(shape)
        self.tableaux = standard_tableaux(self.shape) if self.n else [()]
        if self.n == 0:
            self.dim = 1
            return
        self.polys = [_polytabloid(t) for t in self.tableaux]
        tabloids = sorted({k for p in self.polys for k in p}, key=lambda s: [sorted(r) for r in s])
        self.tindex = {k: i for i, k in enumerate(tabloids)}
        self.dim = len(self.tableaux)
        rows = [[0] * len(tabloids) for _ in self.polys]
        for r, p in enumerate(self.polys):
            for k, v in p.items():
                rows[r][self.tindex[k]] = v
        self.basis = fmpq_mat(rows)
        self._cache = {}

    def matrix(self, perm):
        """Action of perm (a tuple with perm[i-1] = image of i) as a dim x dim matrix."""
        if self.n == 0:
            return [[fmpq(1)]]
        perm = tuple(perm)
        hit = self._cache.get(perm)
        if hit is not None:
            return hit
        images = []
        for tab in self.tableaux:
            moved = tuple(tuple(perm[x - 1] for x in row) for row in tab)
            p = _polytabloid(moved)
            v = [0] * len(self.tindex)
            for k, c in p.items():
                v[self.tindex[k]] = c
            images.append(v)
        # solve coeffs * basis = image  (row vectors)
        B = self.basis.transpose()
        cols = []
        for v in images:
            x = _solve_rows(B, v)
            cols.append(x)
        # column j of the matrix = coordinates of perm . e_j
        mat = [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]
        self._cache[perm] = mat
        return mat


def _solve_rows(B, v):
    """Solve B x = v for B of full column rank (exact)."""
    n = B.nrows()
    m = B.ncols()
    aug = fmpq_mat(n, m + 1)
    for i in range(n):
        for j in range(m):
            aug[i, j] = B[i, j]
        aug[i, m] = v[i]
    R, rank = aug.rref()
    x = [fmpq(0)] * m
    for i in range(rank):
        piv = next(j for j in range(m + 1) if R[i, j] != 0)
        if piv == m:
            raise ValueError("inconsistent Specht coordinates")
        x[piv] = R[i, m]
    return x


@dataclass(frozen=True)
class Irrep:
    """An irreducible representation of Aut(X): label and matrices per element."""

    label: tuple
    dim: int


class AutGroup:
    """Aut(X) with its rational irreducible representations.

    Representations are homomorphisms for composition in the category:
    rho(g o h) = rho(g) rho(h).
    """

    def __init__(self, cat: RegularCategory, X: RObject):
        self.cat = cat
        self.X = X
        self.elements = cat.automorphisms(X)
        self.order = len(self.elements)
        self._perm = {}
        if cat.backend == "finset_op":
            self.irreps = [Irrep(p, SpechtModule(p).dim) for p in partitions_of(X.size)]
            self._specht = {p: SpechtModule(p) for p in partitions_of(X.size)}
        else:
            self._specht = {}
            self.irreps = self._gl_irreps()

    def _gl_irreps(self):
        q, n = self.cat.q, self.X.size
        if n == 0 or (n == 1 and q == 2):
            return [Irrep(("triv",), 1)]
        if n == 1 and q == 3:
            return [Irrep(("triv",), 1), Irrep(("sign",), 1)]
        if n == 2 and q == 2:
            self._specht = {p: SpechtModule(p) for p in partitions_of(3)}
            return [Irrep(("S3",) + p, SpechtModule(p).dim) for p in partitions_of(3)]
        raise UnsupportedAutGroup(f"GL_{n}(F_{q}) has no built-in rational irreducibles")

    def _as_perm(self, g: RMorphism):
        """Permutation of 1..m (as image tuple) realizing g as a homomorphism."""
        hit = self._perm.get(g)
        if hit is not None:
            return hit
        if self.cat.backend == "finset_op":
            # data is the set map y -> x; its inverse is a homomorphism
            inv = [0] * len(g.data)
            for y, x in enumerate(g.data):
                inv[x] = y
            perm = tuple(v + 1 for v in inv)
        else:
            vecs = [(1, 0), (0, 1), (1, 1)]
            pos = {v: i for i, v in enumerate(vecs)}
            img = []
            for v in vecs:
                w = tuple(sum(g.data[i][j] * v[j] for j in range(2)) % 2 for i in range(2))
                img.append(pos[w] + 1)
            perm = tuple(img)
        self._perm[g] = perm
        return perm

    def matrix(self, irrep: Irrep, g: RMorphism):
        lab = irrep.label
        if self.cat.backend == "finset_op":
            return self._specht[lab].matrix(self._as_perm(g))
        if lab == ("triv",):
            return [[fmpq(1)]]
        if lab == ("sign",):
            return [[fmpq(1) if g.data[0][0] == 1 else fmpq(-1)]]
        return self._specht[lab[1:]].matrix(self._as_perm(g))

    def character(self, irrep, g):
        m = self.matrix(irrep, g)
        return sum((m[i][i] for i in range(len(m))), fmpq(0))

    def matrix_unit_element(self, irrep: Irrep):
        """Coefficients {g: c} of the idempotent (d/|G|) sum rho(g^-1)_{00} g."""
        d = irrep.dim
        out = {}
        for g in self.elements:
            ginv = self.cat.inverse(g)
            c = self.matrix(irrep, ginv)[0][0] * fmpq(d, self.order)
            if c != 0:
                out[g] = c
        return out

    def label_text(self, irrep: Irrep) -> str:
        lab = irrep.label
        if self.cat.backend == "finset_op":
            return "(" + ",".join(str(p) for p in lab) + ")" if lab else "()"
        if lab[0] == "S3":
            return "S3(" + ",".join(str(p) for p in lab[1:]) + ")"
        return lab[0]
