"""Finite-dimensional modules over a linear category.

A module M assigns a vector space M(W) to each truncation object W and a
matrix M(b): M(j) -> M(k) to each basis element b of Hom(j, k).  Vectors are
columns.  Sub- and quotient modules are computed with RREF subspaces, so
coordinates are read off at pivot columns rather than solved for.
"""

from __future__ import annotations

from .linalg import Matrix, Subspace


class FdModule:
    def __init__(self, C, dims, act):
        self.C = C
        self.F = C.F
        self.dims = list(dims)
        self.act = act  # (j, k) -> list of matrices, one per basis element of Hom(j, k)

    @property
    def n(self):
        return len(self.dims)

    @property
    def dim(self):
        return sum(self.dims)

    def action(self, j, k, vec) -> Matrix:
        out = Matrix.zeros(self.F, self.dims[k], self.dims[j])
        for b, c in enumerate(vec):
            if c:
                out = out + self.act[(j, k)][b].scale(c)
        return out

    def is_zero(self):
        return self.dim == 0

    def check_functor(self) -> bool:
        C = self.C
        for i in range(self.n):
            if self.action(i, i, C.identity_vec(i)) != Matrix.identity(self.F, self.dims[i]):
                return False
        for i in range(self.n):
            for j in range(self.n):
                for k in range(self.n):
                    for a in range(C.hom_dim(i, j)):
                        for b in range(C.hom_dim(j, k)):
                            prod = C.mul_basis(k, j, i, b, a)
                            lhs = Matrix.zeros(self.F, self.dims[k], self.dims[i])
                            for c, v in prod.items():
                                lhs = lhs + self.act[(i, k)][c].scale(v)
                            if lhs != self.act[(j, k)][b] @ self.act[(i, j)][a]:
                                return False
        return True


def _all_pairs(n):
    return [(j, k) for j in range(n) for k in range(n)]


class Projective(FdModule):
    """Hom(Z, -) o f restricted to the truncation, in RREF coordinates."""

    def __init__(self, C, z, fvec=None):
        F = C.F
        self.z = z
        self.fvec = fvec
        subs = []
        for W in range(C.n):
            d = C.hom_dim(z, W)
            if fvec is None:
                subs.append(Subspace.whole(F, d))
            else:
                R = C.right_matrix(z, z, fvec, W)
                subs.append(Subspace.from_matrix_rows(R.T))
        self.subs = subs
        act = {}
        for j, k in _all_pairs(C.n):
            Bj = subs[j].basis.T
            piv = subs[k].pivots
            act[(j, k)] = [(C.left_basis_matrix(j, k, b, z) @ Bj).select_rows(piv)
                           for b in range(C.hom_dim(j, k))]
        super().__init__(C, [s.dim for s in subs], act)

    def to_hom(self, W, coords: Matrix) -> Matrix:
        return self.subs[W].basis.T @ coords

    def from_hom(self, W, vec: Matrix) -> Matrix:
        return vec.select_rows(self.subs[W].pivots)

    def generator(self) -> Matrix:
        """Coordinates of f (or the identity) in P(Z); Z must be a truncation object."""
        v = self.fvec if self.fvec is not None else self.C.identity_vec(self.z)
        col = Matrix.from_columns(self.F, [v], nrows=self.C.hom_dim(self.z, self.z))
        return self.from_hom(self.z, col)


def direct_sum(C, mods) -> FdModule:
    F = C.F
    dims = [sum(m.dims[W] for m in mods) for W in range(C.n)]
    act = {}
    for j, k in _all_pairs(C.n):
        act[(j, k)] = [Matrix.block_diag(F, [m.act[(j, k)][b] for m in mods]) if mods else
                       Matrix.zeros(F, 0, 0) for b in range(C.hom_dim(j, k))]
    return FdModule(C, dims, act)


def zero_module(C) -> FdModule:
    return direct_sum(C, [])


def submodule(M: FdModule, subs) -> FdModule:
    act = {}
    for j, k in _all_pairs(M.n):
        Bj = subs[j].basis.T
        piv = subs[k].pivots
        act[(j, k)] = [(A @ Bj).select_rows(piv) for A in M.act[(j, k)]]
    return FdModule(M.C, [s.dim for s in subs], act)


def quotient_maps(M: FdModule, subs):
    """Projection matrices M(W) -> (M/S)(W) and lift matrices back."""
    F = M.F
    proj, lift = [], []
    for W in range(M.n):
        S = subs[W]
        free = S.complement_pivots()
        P = S.reduce(Matrix.identity(F, M.dims[W])).select_rows(free)
        L = Matrix.zeros(F, M.dims[W], len(free))
        for c, r in enumerate(free):
            L[r, c] = F.one
        proj.append(P)
        lift.append(L)
    return proj, lift


def quotient(M: FdModule, subs):
    proj, lift = quotient_maps(M, subs)
    act = {}
    for j, k in _all_pairs(M.n):
        act[(j, k)] = [proj[k] @ A @ lift[j] for A in M.act[(j, k)]]
    Q = FdModule(M.C, [p.nrows for p in proj], act)
    return Q, proj


def generated(M: FdModule, gens):
    """Submodule generated by (object, column vector) pairs, as subspaces."""
    C = M.C
    F = M.F
    subs = []
    for W in range(M.n):
        cols = []
        for j, v in gens:
            for b in range(C.hom_dim(j, W)):
                w = M.act[(j, W)][b] @ v
                cols.extend(w.T.rows())
        subs.append(Subspace.span(F, M.dims[W], cols))
    return subs


def zero_subs(M):
    return [Subspace.span(M.F, d, []) for d in M.dims]


def whole_subs(M):
    return [Subspace.whole(M.F, d) for d in M.dims]


def sum_subs(a, b):
    return [x.sum(y) for x, y in zip(a, b)]


def subs_dim(subs):
    return sum(s.dim for s in subs)


def kernel_subs(maps, M):
    out = []
    for W, A in enumerate(maps):
        K = A.nullspace()
        out.append(Subspace.from_matrix_rows(K.T) if K.ncols else Subspace.span(M.F, M.dims[W], []))
    return out


def image_subs(maps, N):
    return [Subspace.from_matrix_rows(A.T) if A.ncols else Subspace.span(N.F, N.dims[W], [])
            for W, A in enumerate(maps)]


def dual_module(M: FdModule, C) -> FdModule:
    """Vector-space dual of a module over the opposite of C, as a C-module."""
    act = {}
    for j, k in _all_pairs(C.n):
        act[(j, k)] = [A.T for A in M.act[(k, j)]]
    return FdModule(C, M.dims, act)


def idempotent_rank(M: FdModule, z, fvec) -> int:
    return M.action(z, z, fvec).rank()


def hom_space(M: FdModule, N: FdModule) -> Matrix:
    """All module maps M -> N by brute-force linear algebra.

    Returns a matrix whose columns are the flattened maps (object by object,
    row-major).
    """
    F = M.F
    C = M.C
    offs = []
    total = 0
    for W in range(M.n):
        offs.append(total)
        total += N.dims[W] * M.dims[W]
    rows = []
    for j, k in _all_pairs(M.n):
        mj, nk, nj = M.dims[j], N.dims[k], N.dims[j]
        mk = M.dims[k]
        if mj == 0 or nk == 0:
            continue
        for b in range(C.hom_dim(j, k)):
            Ma = M.act[(j, k)][b].rows()
            Na = N.act[(j, k)][b].rows()
            # (phi_k M(b) - N(b) phi_j)[r][c] = 0
            for r in range(nk):
                for c in range(mj):
                    eq = {}
                    for s in range(mk):
                        v = Ma[s][c]
                        if v:
                            idx = offs[k] + r * mk + s
                            eq[idx] = eq.get(idx, F.zero) + v
                    for s in range(nj):
                        v = Na[r][s]
                        if v:
                            idx = offs[j] + s * mj + c
                            eq[idx] = eq.get(idx, F.zero) - v
                    eq = {i: v for i, v in eq.items() if v}
                    if eq:
                        rows.append(eq)
    A = Matrix.zeros(F, len(rows), total)
    for r, eq in enumerate(rows):
        for i, v in eq.items():
            A[r, i] = v
    return A.nullspace()


def hom_dim_bruteforce(M, N) -> int:
    return hom_space(M, N).ncols


def unflatten_map(M, N, vec):
    F = M.F
    out = []
    off = 0
    for W in range(M.n):
        r, c = N.dims[W], M.dims[W]
        A = Matrix.zeros(F, r, c)
        for i in range(r):
            for j in range(c):
                A[i, j] = vec[off + i * c + j]
        off += r * c
        out.append(A)
    return out


def is_module_map(M, N, maps) -> bool:
    C = M.C
    for j, k in _all_pairs(M.n):
        for b in range(C.hom_dim(j, k)):
            if maps[k] @ M.act[(j, k)][b] != N.act[(j, k)][b] @ maps[j]:
                return False
    return True
