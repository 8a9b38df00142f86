"""Finite k-linear categories given by Hom bases and composition tables.

Object ids are integers.  Modules live on the first `n` objects (the
truncation); further objects may be registered so that representables
Hom(Z, -) with Z outside the truncation can still be evaluated on it.

Composition is written b o a for a in Hom(i, j), b in Hom(j, k).
"""

from __future__ import annotations

import threading

from .linalg import Matrix


class LinearCategory:
    F = None
    n = 0

    def hom_dim(self, i, j) -> int:
        raise NotImplementedError

    def mul_basis(self, k, j, i, b, a) -> dict:
        """b o a for basis elements, as a sparse dict over Hom(i, k)."""
        raise NotImplementedError

    def identity_vec(self, i) -> list:
        raise NotImplementedError

    def object_name(self, i) -> str:
        return str(i)

    # ------------------------------------------------------------ derived
    def _cache(self):
        if not hasattr(self, "_mats"):
            self._mats = {}
        return self._mats

    def left_basis_matrix(self, j, k, b, i) -> Matrix:
        """Matrix of x -> b o x from Hom(i, j) to Hom(i, k)."""
        key = ("L", j, k, b, i)
        cache = self._cache()
        M = cache.get(key)
        if M is None:
            entries = {}
            for a in range(self.hom_dim(i, j)):
                for c, v in self.mul_basis(k, j, i, b, a).items():
                    entries[(c, a)] = v
            M = Matrix.from_sparse(self.F, self.hom_dim(i, k), self.hom_dim(i, j), entries)
            cache[key] = M
        return M

    def right_basis_matrix(self, i, j, a, k) -> Matrix:
        """Matrix of x -> x o a from Hom(j, k) to Hom(i, k)."""
        key = ("R", i, j, a, k)
        cache = self._cache()
        M = cache.get(key)
        if M is None:
            entries = {}
            for b in range(self.hom_dim(j, k)):
                for c, v in self.mul_basis(k, j, i, b, a).items():
                    entries[(c, b)] = v
            M = Matrix.from_sparse(self.F, self.hom_dim(i, k), self.hom_dim(j, k), entries)
            cache[key] = M
        return M

    def left_matrix(self, j, k, bvec, i) -> Matrix:
        out = Matrix.zeros(self.F, self.hom_dim(i, k), self.hom_dim(i, j))
        for b, c in enumerate(bvec):
            if c:
                out = out + self.left_basis_matrix(j, k, b, i).scale(c)
        return out

    def right_matrix(self, i, j, avec, k) -> Matrix:
        out = Matrix.zeros(self.F, self.hom_dim(i, k), self.hom_dim(j, k))
        for a, c in enumerate(avec):
            if c:
                out = out + self.right_basis_matrix(i, j, a, k).scale(c)
        return out

    def compose(self, k, j, i, bvec, avec) -> list:
        F = self.F
        out = [F.zero] * self.hom_dim(i, k)
        for b, cb in enumerate(bvec):
            if not cb:
                continue
            for a, ca in enumerate(avec):
                if not ca:
                    continue
                for c, v in self.mul_basis(k, j, i, b, a).items():
                    out[c] = out[c] + cb * ca * v
        return out

    def opposite(self) -> "OppositeCategory":
        return OppositeCategory(self)


class OppositeCategory(LinearCategory):
    def __init__(self, base: LinearCategory):
        self.base = base
        self.F = base.F
        self.n = base.n

    def hom_dim(self, i, j):
        return self.base.hom_dim(j, i)

    def mul_basis(self, k, j, i, b, a):
        # in the opposite, b o a = a o b in the base, with a: j -> i, b: k -> j
        return self.base.mul_basis(i, j, k, a, b)

    def identity_vec(self, i):
        return self.base.identity_vec(i)

    def object_name(self, i):
        return self.base.object_name(i)

    def opposite(self):
        return self.base


class DiagramLinCat(LinearCategory):
    """The diagram category restricted to a list of objects."""

    def __init__(self, D, objects, n=None):
        self.D = D
        self.F = D.F
        self.objects = list(objects)
        self.n = len(self.objects) if n is None else n
        self._ids = {X: i for i, X in enumerate(self.objects)}
        self._lock = threading.Lock()

    def add_object(self, X) -> int:
        i = self._ids.get(X)
        if i is not None:
            return i
        with self._lock:
            i = self._ids.get(X)
            if i is None:
                i = len(self.objects)
                self.objects.append(X)
                self._ids[X] = i
        return i

    def object_id(self, X) -> int:
        return self._ids[X]

    def basis(self, i, j):
        return self.D.hom_basis(self.objects[i], self.objects[j])

    def index(self, i, j):
        return self.D.hom_index(self.objects[i], self.objects[j])

    def hom_dim(self, i, j):
        return self.D.hom_dim(self.objects[i], self.objects[j])

    def mul_basis(self, k, j, i, b, a):
        B2 = self.basis(j, k)[b]
        B1 = self.basis(i, j)[a]
        e, r = self.D.compose_rel(B2, B1)
        return {self.index(i, k)[r]: self.D.coeff(e)}

    def identity_vec(self, i):
        return self.D.vector(self.D.identity(self.objects[i]))

    def object_name(self, i):
        return str(self.objects[i])

    def vec_of(self, morph):
        """Coordinates of a DiagMorphism in the Hom basis."""
        return self.D.vector(morph)

    def morph_of(self, i, j, vec):
        return self.D.from_vector(self.objects[i], self.objects[j], vec)


class TableCategory(LinearCategory):
    """A linear category given explicitly by dimensions and dense tables."""

    def __init__(self, F, dims, table, identities, names=None):
        # dims[(i, j)] = dim Hom(i, j); table[(k, j, i)][b][a] = sparse dict
        self.F = F
        self.dims = dims
        self.table = table
        self.identities = identities
        self.n = len(identities)
        self.names = names or [str(i) for i in range(self.n)]

    def hom_dim(self, i, j):
        return self.dims[(i, j)]

    def mul_basis(self, k, j, i, b, a):
        return self.table[(k, j, i)][b][a]

    def identity_vec(self, i):
        return list(self.identities[i])

    def object_name(self, i):
        return self.names[i]
