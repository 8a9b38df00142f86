"""Highest-weight structure on a finite labeled linear category.

A labeling assigns to each weight an object Z and a primitive idempotent f in
End(Z).  `lt(a, b)` is the strict highest-weight order: Delta(b) has composition
factors L(a) with a <= b, projectives P(b) are filtered by Delta(a) with a >= b.

Modules are covariant functors on the truncation objects (see `modules`).
The radical of the category is computed by the trace form of the regular
representation, which is valid in characteristic zero.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import ProjComplex
from .errors import ExtensionStepFailed, UnknownLabel
from .fdalg import algebra_from_matrices
from .linalg import Matrix, Subspace
from .modules import (FdModule, Projective, direct_sum, generated, hom_space, image_subs,
                      kernel_subs, quotient, quotient_maps, submodule, subs_dim, sum_subs,
                      unflatten_map, dual_module, zero_subs)


@dataclass(frozen=True)
class Summand:
    """An indecomposable-or-not projective Hom(Z, -) o e given by object and idempotent."""

    obj: int
    idem: tuple


class HWCategory:
    def __init__(self, C, labels, objs, idems, lt, names=None):
        self.C = C
        self.F = C.F
        self.labels = list(labels)
        self.obj = dict(objs)
        self.idem = {k: list(v) for k, v in idems.items()}
        self._lt = lt
        self.names = names or {lab: str(lab) for lab in self.labels}
        self._proj = {}
        self._std = {}
        self._cos = {}
        self._simple = {}
        self._gram = {}
        self._radical = None
        self._res = {}
        self._op = None

    # ------------------------------------------------------------ order and labels
    def check_label(self, lab):
        if lab not in self.obj:
            raise UnknownLabel(f"unknown weight {lab!r}")

    def lt(self, a, b) -> bool:
        return a != b and self._lt(a, b)

    def le(self, a, b) -> bool:
        return a == b or self._lt(a, b)

    def decreasing(self, labs=None):
        """A linear extension listing larger weights first."""
        labs = list(self.labels if labs is None else labs)
        out = []
        rest = labs[:]
        while rest:
            for a in rest:
                if not any(self.lt(a, b) for b in rest):
                    out.append(a)
                    rest.remove(a)
                    break
        return out

    def obj_of(self, lab):
        return lab.obj if isinstance(lab, Summand) else self.obj[lab]

    def idem_of(self, lab):
        return list(lab.idem) if isinstance(lab, Summand) else self.idem[lab]

    def opposite(self) -> "HWCategory":
        if self._op is None:
            self._op = HWCategory(self.C.opposite(), self.labels, self.obj, self.idem, self._lt, self.names)
            self._op._op = self
        return self._op

    # ------------------------------------------------------------ projectives
    def projective(self, lab) -> Projective:
        hit = self._proj.get(lab)
        if hit is None:
            hit = Projective(self.C, self.obj_of(lab), self.idem_of(lab))
            self._proj[lab] = hit
        return hit

    projective_for = projective

    def fimage(self, M: FdModule, lab) -> Subspace:
        """f_lab M(Z_lab) as a subspace of M(Z_lab)."""
        z = self.obj_of(lab)
        A = M.action(z, z, self.idem_of(lab))
        return Subspace.from_matrix_rows(A.T)

    def multiplicity(self, M: FdModule, lab) -> int:
        """[M : L(lab)] as the rank of f_lab on M(Z_lab)."""
        z = self.obj_of(lab)
        return M.action(z, z, self.idem_of(lab)).rank()

    def character(self, M: FdModule) -> dict:
        return {lab: self.multiplicity(M, lab) for lab in self.labels}

    # ------------------------------------------------------------ standard objects
    def standard(self, lab) -> FdModule:
        self.check_label(lab)
        hit = self._std.get(lab)
        if hit is None:
            P = self.projective(lab)
            others = [mu for mu in self.labels if not self.le(mu, lab)]
            K = self._trace(P, others)
            hit, _ = quotient(P, K)
            self._std[lab] = hit
        return hit

    def _trace(self, M, labs):
        gens = []
        for mu in labs:
            S = self.fimage(M, mu)
            z = self.obj_of(mu)
            B = S.basis.T
            for k in range(S.dim):
                gens.append((z, B.select_columns([k])))
        return generated(M, gens)

    def costandard(self, lab) -> FdModule:
        self.check_label(lab)
        hit = self._cos.get(lab)
        if hit is None:
            hit = dual_module(self.opposite().standard(lab), self.C)
            self._cos[lab] = hit
        return hit

    def standard_generator(self, lab) -> Matrix:
        """Image of f in Delta(lab)(Z)."""
        P = self.projective(lab)
        Delta = self.standard(lab)
        z = self.obj_of(lab)
        others = [mu for mu in self.labels if not self.le(mu, lab)]
        K = self._trace(P, others)
        proj, _ = quotient_maps(P, K)
        return proj[z] @ P.generator()

    # ------------------------------------------------------------ Gram maps and simples
    def gram(self, lab):
        """Map Delta(lab) -> Nabla(lab) sending the generator to a spanning f-vector.

        Returns (list of per-object matrices, rank).  The rank is dim L(lab).
        """
        hit = self._gram.get(lab)
        if hit is not None:
            return hit
        D = self.standard(lab)
        N = self.costandard(lab)
        z = self.obj_of(lab)
        v = self.standard_generator(lab)
        S = self.fimage(N, lab)
        if S.dim != 1:
            raise ExtensionStepFailed(f"f-part of the costandard at {self.names[lab]} has dimension {S.dim}")
        w = S.basis.T
        maps = []
        C = self.C
        for W in range(C.n):
            if D.dims[W] == 0:
                maps.append(Matrix.zeros(self.F, N.dims[W], 0))
                continue
            cols_s, cols_t = [], []
            for b in range(C.hom_dim(z, W)):
                cols_s.extend((D.act[(z, W)][b] @ v).T.rows())
                cols_t.extend((N.act[(z, W)][b] @ w).T.rows())
            Sm = Matrix.from_columns(self.F, cols_s, nrows=D.dims[W])
            Tm = Matrix.from_columns(self.F, cols_t, nrows=N.dims[W])
            phiT = Sm.T.solve(Tm.T)
            if phiT is None:
                raise ExtensionStepFailed(f"no module map Delta -> Nabla at {self.names[lab]}")
            maps.append(phiT.T)
        rank = sum(m.rank() for m in maps)
        out = (maps, rank)
        self._gram[lab] = out
        return out

    def gram_determinants(self, lab):
        maps, _ = self.gram(lab)
        return [m.det() if m.nrows else self.F.one for m in maps]

    def simple(self, lab) -> FdModule:
        hit = self._simple.get(lab)
        if hit is None:
            maps, _ = self.gram(lab)
            N = self.costandard(lab)
            hit = submodule(N, image_subs(maps, N))
            self._simple[lab] = hit
        return hit

    def decomposition_matrix(self):
        return [[self.multiplicity(self.standard(a), b) for b in self.labels] for a in self.labels]

    # ------------------------------------------------------------ radical
    def radical_spaces(self):
        """J(i, j) inside Hom(i, j) for truncation objects, via the trace form."""
        if self._radical is not None:
            return self._radical
        C = self.C
        F = self.F
        n = C.n
        tau = {}
        for i in range(n):
            vals = []
            for c in range(C.hom_dim(i, i)):
                acc = F.zero
                for W in range(n):
                    acc = acc + C.left_basis_matrix(i, i, c, W).trace()
                vals.append(acc)
            tau[i] = vals
        J = {}
        for i in range(n):
            for j in range(n):
                da, db = C.hom_dim(i, j), C.hom_dim(j, i)
                G = Matrix.zeros(F, db, da)
                for b in range(db):
                    for a in range(da):
                        acc = F.zero
                        for c, v in C.mul_basis(i, j, i, b, a).items():
                            if tau[i][c]:
                                acc = acc + v * tau[i][c]
                        if acc:
                            G[b, a] = acc
                K = G.nullspace()
                J[(i, j)] = Subspace.from_matrix_rows(K.T) if K.ncols else Subspace.span(F, da, [])
        self._radical = J
        return J

    def radical_dim(self):
        return sum(s.dim for s in self.radical_spaces().values())

    def radical_submodule(self, M: FdModule):
        J = self.radical_spaces()
        F = self.F
        subs = []
        for W in range(M.n):
            cols = []
            for i in range(M.n):
                if M.dims[i] == 0:
                    continue
                S = J[(i, W)]
                for row in S.basis.rows():
                    A = M.action(i, W, row)
                    cols.extend(A.T.rows())
            subs.append(Subspace.span(F, M.dims[W], cols))
        return subs

    def top(self, M: FdModule):
        return quotient(M, self.radical_submodule(M))

    # ------------------------------------------------------------ covers and resolutions
    def cover(self, M: FdModule):
        """Generators of a projective cover: (label, vector in f M(Z)) pairs."""
        R = self.radical_submodule(M)
        proj, lift = quotient_maps(M, R)
        out = []
        for lab in self.labels:
            z = self.obj_of(lab)
            if M.dims[z] == 0:
                continue
            Fm = M.action(z, z, self.idem_of(lab))
            img = (proj[z] @ Fm)
            if img.nrows == 0:
                continue
            S = Subspace.from_matrix_rows(img.T)
            for k in range(S.dim):
                vbar = S.basis.T.select_columns([k])
                v = Fm @ lift[z] @ vbar
                out.append((lab, v))
        return out

    def cover_map(self, M: FdModule, gens):
        """Per-object matrices of the map sum_r P(lab_r) -> M sending generators to vectors."""
        C = self.C
        parts = [self.projective(lab) for lab, _ in gens]
        maps = []
        for W in range(C.n):
            blocks = []
            for (lab, v), P in zip(gens, parts):
                z = self.obj_of(lab)
                hd = C.hom_dim(z, W)
                if P.dims[W] == 0:
                    blocks.append(Matrix.zeros(self.F, M.dims[W], 0))
                    continue
                cols = []
                for b in range(hd):
                    cols.extend((M.act[(z, W)][b] @ v).T.rows())
                A = Matrix.from_columns(self.F, cols, nrows=M.dims[W])
                blocks.append(A @ P.subs[W].basis.T)
            maps.append(Matrix.hstack(self.F, blocks) if blocks else Matrix.zeros(self.F, M.dims[W], 0))
        return parts, maps

    def resolve(self, M: FdModule, max_len=None):
        """Minimal projective resolution in degrees <= 0; returns (complex, complete flag)."""
        gens = self.cover(M)
        terms = {0: [lab for lab, _ in gens]}
        diffs = {}
        parts, phi = self.cover_map(M, gens)
        Psum = direct_sum(self.C, parts)
        K = kernel_subs(phi, Psum)
        deg = 0
        while subs_dim(K) > 0:
            if max_len is not None and -deg >= max_len:
                return ProjComplex(terms, diffs), False
            Km = submodule(Psum, K)
            kg = self.cover(Km)
            amb = [(lab, K[self.obj_of(lab)].basis.T @ v) for lab, v in kg]
            D = []
            for lab, vec in amb:
                zr = self.obj_of(lab)
                row = []
                off = 0
                for P in parts:
                    d = P.dims[zr]
                    piece = vec.select_rows(list(range(off, off + d)))
                    off += d
                    row.append(P.to_hom(zr, piece).column(0) if d else [self.F.zero] * self.C.hom_dim(P.z, zr))
                D.append(row)
            diffs[deg - 1] = D
            terms[deg - 1] = [lab for lab, _ in amb]
            new_parts, psi = self.cover_map(Psum, amb)
            parts = new_parts
            Psum = direct_sum(self.C, parts)
            K = kernel_subs(psi, Psum)
            deg -= 1
        return ProjComplex(terms, diffs), True

    def standard_resolution(self, lab):
        hit = self._res.get(lab)
        if hit is None:
            hit = self.resolve(self.standard(lab), max_len=len(self.labels) + 1)
            self._res[lab] = hit
        return hit

    # ------------------------------------------------------------ Ext
    def hom_spaces_of(self, N: FdModule, labs):
        return [self.fimage(N, lab) for lab in labs]

    def ext_from_resolution(self, res: ProjComplex, N: FdModule, imax: int):
        """dim Ext^i(M, N) for i = 0..imax from a projective resolution of M."""
        F = self.F
        spaces = {}
        for j in range(0, imax + 2):
            spaces[j] = self.hom_spaces_of(N, res.term(-j))
        deltas = {}
        for j in range(0, imax + 1):
            src, tgt = spaces[j], spaces[j + 1]
            D = res.diff(-j - 1)
            rows_n = sum(s.dim for s in tgt)
            cols_n = sum(s.dim for s in src)
            A = Matrix.zeros(F, rows_n, cols_n)
            if D is not None and rows_n and cols_n:
                r0 = 0
                for r, lab_r in enumerate(res.term(-j - 1)):
                    c0 = 0
                    zr = self.obj_of(lab_r)
                    for s, lab_s in enumerate(res.term(-j)):
                        zs = self.obj_of(lab_s)
                        y = D[r][s]
                        if any(y) and src[s].dim and tgt[r].dim:
                            img = N.action(zs, zr, y) @ src[s].basis.T
                            block = tgt[r].coords(img)
                            for a in range(block.nrows):
                                for b in range(block.ncols):
                                    v = block[a, b]
                                    if v:
                                        A[r0 + a, c0 + b] = v
                        c0 += src[s].dim
                    r0 += tgt[r].dim
            deltas[j] = A
        out = []
        for j in range(0, imax + 1):
            dimC = sum(s.dim for s in spaces[j])
            ker = dimC - deltas[j].rank()
            im = deltas[j - 1].rank() if j >= 1 else 0
            out.append(ker - im)
        return out

    def ext(self, M: FdModule, N: FdModule, imax: int, res=None):
        if res is None:
            res, _ = self.resolve(M, max_len=imax + 1)
        return self.ext_from_resolution(res, N, imax)

    def ext_cocycles(self, res: ProjComplex, N: FdModule):
        """Ext^1 representatives: lists of vectors w_s in f_s N(Z_s) over summands of degree -1."""
        spaces0 = self.hom_spaces_of(N, res.term(0))
        spaces1 = self.hom_spaces_of(N, res.term(-1))
        spaces2 = self.hom_spaces_of(N, res.term(-2))
        F = self.F

        def delta(j, src, tgt):
            D = res.diff(-j - 1)
            rows_n = sum(s.dim for s in tgt)
            cols_n = sum(s.dim for s in src)
            A = Matrix.zeros(F, rows_n, cols_n)
            if D is None:
                return A
            r0 = 0
            for r, lab_r in enumerate(res.term(-j - 1)):
                c0 = 0
                zr = self.obj_of(lab_r)
                for s, lab_s in enumerate(res.term(-j)):
                    zs = self.obj_of(lab_s)
                    y = D[r][s]
                    if any(y) and src[s].dim and tgt[r].dim:
                        block = tgt[r].coords(N.action(zs, zr, y) @ src[s].basis.T)
                        for a in range(block.nrows):
                            for b in range(block.ncols):
                                if block[a, b]:
                                    A[r0 + a, c0 + b] = block[a, b]
                    c0 += src[s].dim
                r0 += tgt[r].dim
            return A

        d0 = delta(0, spaces0, spaces1)
        d1 = delta(1, spaces1, spaces2)
        n1 = sum(s.dim for s in spaces1)
        Z = d1.nullspace() if n1 else Matrix.zeros(F, 0, 0)
        B = Subspace.from_matrix_rows(d0.T) if d0.ncols and n1 else Subspace.span(F, n1, [])
        reps = []
        acc = B
        for k in range(Z.ncols):
            col = Z.select_columns([k])
            if not acc.contains(col):
                reps.append(col)
                acc = acc.sum(Subspace.span(F, n1, col.T.rows()))
        out = []
        for col in reps:
            ws = []
            off = 0
            for S in spaces1:
                piece = col.select_rows(list(range(off, off + S.dim)))
                off += S.dim
                ws.append(S.basis.T @ piece)
            out.append(ws)
        return out

    # ------------------------------------------------------------ tilting modules
    def universal_extension(self, M: FdModule, mu, res: ProjComplex, cocycles):
        """Pushout of e copies of 0 -> K -> P(mu) -> Delta(mu) -> 0 along the cocycles."""
        e = len(cocycles)
        P = self.projective(mu)
        E0 = direct_sum(self.C, [M] + [P] * e)
        gens = []
        terms1 = res.term(-1)
        D = res.diff(-1)
        zmu = self.obj_of(mu)
        for a, ws in enumerate(cocycles):
            for s, lab_s in enumerate(terms1):
                zs = self.obj_of(lab_s)
                y = D[s][0]
                ycol = Matrix.from_columns(self.F, [y], nrows=self.C.hom_dim(zmu, zs))
                pvec = P.from_hom(zs, ycol)
                parts = [ws[s].scale(-self.F.one)]
                for b in range(e):
                    parts.append(pvec if b == a else Matrix.zeros(self.F, P.dims[zs], 1))
                gens.append((zs, Matrix.vstack(self.F, parts)))
        Rel = generated(E0, gens)
        E, _ = quotient(E0, Rel)
        if E.dim != M.dim + e * self.standard(mu).dim:
            raise ExtensionStepFailed(f"universal extension by {self.names[mu]} has the wrong dimension")
        return E

    def tilting(self, lab, max_rounds=8):
        """T(lab) and the record of standard labels added, in order."""
        M = self.standard(lab)
        record = [lab]
        below = [mu for mu in self.decreasing() if self.lt(mu, lab)]
        for _ in range(max_rounds):
            changed = False
            for mu in below:
                res, _ = self.standard_resolution(mu)
                cocycles = self.ext_cocycles(res, M)
                if cocycles:
                    M = self.universal_extension(M, mu, res, cocycles)
                    record.extend([mu] * len(cocycles))
                    changed = True
            if not changed:
                return M, record
        raise ExtensionStepFailed(f"tilting construction for {self.names[lab]} did not stabilise")

    # ------------------------------------------------------------ filtrations
    def delta_multiplicities(self, M: FdModule) -> dict:
        """(M : Delta(mu)) read as dim Hom(M, Nabla(mu)); valid when M has a Delta-flag."""
        out = {}
        res, _ = self.resolve(M, max_len=1)
        for mu in self.labels:
            out[mu] = self.ext_from_resolution(res, self.costandard(mu), 0)[0]
        return out

    def nabla_multiplicities(self, M: FdModule) -> dict:
        out = {}
        for mu in self.labels:
            res, _ = self.standard_resolution(mu)
            out[mu] = self.ext_from_resolution(res, M, 0)[0]
        return out

    def delta_certificate(self, M: FdModule) -> dict:
        """Ext^1(M, Nabla(mu)) for all mu; all zero iff M has a Delta-flag."""
        res, _ = self.resolve(M, max_len=2)
        return {mu: self.ext_from_resolution(res, self.costandard(mu), 1)[1] for mu in self.labels}

    def nabla_certificate(self, M: FdModule) -> dict:
        """Ext^1(Delta(mu), M) for all mu; all zero iff M has a Nabla-flag."""
        out = {}
        for mu in self.labels:
            res, _ = self.standard_resolution(mu)
            out[mu] = self.ext_from_resolution(res, M, 1)[1]
        return out

    def peel_standards(self, M: FdModule):
        """Extract a Delta-flag from the bottom, larger weights first.

        Returns (list of (label, multiplicity) in extraction order, ok flag).
        """
        record = []
        cur = M
        for mu in self.decreasing():
            if cur.dim == 0:
                break
            U = self._trace(cur, [mu])
            m = self.fimage(cur, mu).dim
            if m == 0:
                continue
            Um = submodule(cur, U)
            D = self.standard(mu)
            if Um.dim != m * D.dim:
                return record, False
            for nu in self.labels:
                if self.multiplicity(Um, nu) != m * self.multiplicity(D, nu):
                    return record, False
            record.append((mu, m))
            cur, _ = quotient(cur, U)
        return record, cur.dim == 0

    def endomorphism_algebra(self, M: FdModule):
        H = hom_space(M, M)
        mats = []
        for k in range(H.ncols):
            blocks = unflatten_map(M, M, H.column(k))
            mats.append(Matrix.block_diag(self.F, blocks))
        if not mats:
            return None
        alg, _, _ = algebra_from_matrices(self.F, mats)
        return alg
