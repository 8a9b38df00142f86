"""Karoubi objects of the diagram category: idempotent splitting and blocks.

A Karoubi object is a finite list of diagram objects with an idempotent
matrix E, entry E[i][j] in Hom(X_j, X_i).  Its endomorphism algebra is the
corner E End(sum X) E; a complete set of primitive orthogonal idempotents
there is found by splitting off one primitive at a time: a primitive of the
semisimple quotient is chosen inside the current corner and lifted by Newton
iteration, so it stays below the current idempotent.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NonSplitField
from .cellmod import CellData
from .fdalg import FDAlgebra, VecSpace


@dataclass
class KarObject:
    parts: tuple            # diagram objects
    idem: tuple             # rows of dicts: idem[i][j] maps relation -> scalar in Hom(X_j, X_i)

    @staticmethod
    def of(X, e=None, F=None, D=None):
        if e is None:
            e = {D.identity_rel(X): D.F.one}
        return KarObject((X,), ((dict(e),),))


class EndAlgebra:
    """Flattened End(sum X_i) with composition, and the corner of an idempotent."""

    def __init__(self, D, parts):
        self.D = D
        self.F = D.F
        self.parts = tuple(parts)
        self.slots = []
        self.offset = {}
        n = 0
        for i, Xi in enumerate(parts):
            for j, Xj in enumerate(parts):
                basis = D.hom_basis(Xj, Xi)
                self.offset[(i, j)] = n
                self.slots.append((i, j, basis))
                n += len(basis)
        self.dim = n

    def flat(self, mat) -> list:
        v = [self.F.zero] * self.dim
        for i, j, basis in self.slots:
            entry = mat[i][j]
            if not entry:
                continue
            idx = self.D.hom_index(self.parts[j], self.parts[i])
            o = self.offset[(i, j)]
            for r, c in entry.items():
                v[o + idx[r]] = v[o + idx[r]] + c
        return v

    def unflat(self, v):
        k = len(self.parts)
        mat = [[{} for _ in range(k)] for _ in range(k)]
        for i, j, basis in self.slots:
            o = self.offset[(i, j)]
            for a, r in enumerate(basis):
                c = v[o + a]
                if c:
                    mat[i][j][r] = c
        return mat

    def mul_mats(self, x, y):
        """(x y)[i][k] = sum_j x[i][j] o y[j][k]."""
        D, F = self.D, self.F
        k = len(self.parts)
        out = [[{} for _ in range(k)] for _ in range(k)]
        for i in range(k):
            for m in range(k):
                acc = {}
                for j in range(k):
                    for r2, c2 in x[i][j].items():
                        for r1, c1 in y[j][m].items():
                            e, r = D.compose_rel(r2, r1)
                            acc[r] = acc.get(r, F.zero) + c1 * c2 * D.coeff(e)
                out[i][m] = {r: c for r, c in acc.items() if c}
        return out

    def mul(self, u, v):
        return self.flat(self.mul_mats(self.unflat(u), self.unflat(v)))

    def corner(self, E):
        """(FDAlgebra of E End E, basis vectors in flat coordinates)."""
        F = self.F
        e = self.flat(E)
        em = self.unflat(e)
        vecs = []
        for i, j, basis in self.slots:
            for r in basis:
                k = len(self.parts)
                unit = [[{} for _ in range(k)] for _ in range(k)]
                unit[i][j] = {r: F.one}
                vecs.append(self.flat(self.mul_mats(self.mul_mats(em, unit), em)))
        space = VecSpace(F, self.dim, vecs)
        basis = [list(r) for r in space.rows]
        piv = space.pivots

        def coords(v):
            return [v[p] for p in piv]

        table = []
        for x in basis:
            row = []
            for y in basis:
                c = coords(self.mul(x, y))
                row.append({k: val for k, val in enumerate(c) if val})
            table.append(row)
        alg = FDAlgebra(F, len(basis), table, coords(e))

        def to_flat(c):
            out = [F.zero] * self.dim
            for k, val in enumerate(c):
                if val:
                    for t, bv in enumerate(basis[k]):
                        if bv:
                            out[t] = out[t] + val * bv
            return out

        return alg, to_flat, coords


def split_idempotents(D, X: KarObject):
    """Primitive orthogonal idempotents summing to X.idem, as Karoubi objects."""
    E = EndAlgebra(D, X.parts)
    alg, to_flat, coords = E.corner([list(r) for r in X.idem])
    if alg.d == 0:
        return []
    out = []
    e = list(alg.unit)
    zero = alg.zero()
    for _ in range(alg.d + 1):
        if e == zero:
            break
        p0 = alg.primitive_in_corner(e)
        p = alg.lift_idempotent(alg.mul(alg.mul(e, p0), e))
        if p == zero:
            raise NonSplitField("primitive idempotent vanished after lifting")
        mat = E.unflat(to_flat(p))
        out.append(KarObject(X.parts, tuple(tuple(row) for row in mat)))
        e = alg.sub(e, p)
    else:
        raise NonSplitField("splitting did not terminate")
    return out


def endomorphism_dim(D, X: KarObject) -> int:
    E = EndAlgebra(D, X.parts)
    alg, _, _ = E.corner([list(r) for r in X.idem])
    return alg.d


def hom_dim(D, X: KarObject, Y: KarObject) -> int:
    """dim Y.idem Hom(sum X, sum Y) X.idem."""
    F = D.F
    parts = tuple(X.parts) + tuple(Y.parts)
    E = EndAlgebra(D, parts)
    nx = len(X.parts)
    k = len(parts)

    def embed(block, off):
        mat = [[{} for _ in range(k)] for _ in range(k)]
        for i, row in enumerate(block):
            for j, entry in enumerate(row):
                mat[off + i][off + j] = dict(entry)
        return mat

    ex = embed(X.idem, 0)
    ey = embed(Y.idem, nx)
    vecs = []
    for i in range(len(Y.parts)):
        for j in range(nx):
            for r in D.hom_basis(X.parts[j], Y.parts[i]):
                mat = [[{} for _ in range(k)] for _ in range(k)]
                mat[nx + i][j] = {r: F.one}
                vecs.append(E.flat(E.mul_mats(E.mul_mats(ey, mat), ex)))
    return VecSpace(F, E.dim, vecs).dim if vecs else 0


def identify(cells, X: KarObject) -> dict:
    """{weight: rank of the idempotent on L(weight)(sum X)} over the given cell data."""
    from .linalg import Matrix
    out = {}
    for lab, cd in cells.items():
        F = cd.F
        dims = [cd.simple_dim(P) if P.size >= cd.Z.size else 0 for P in X.parts]
        if not any(dims):
            continue
        blocks = []
        for i, Pi in enumerate(X.parts):
            row = []
            for j, Pj in enumerate(X.parts):
                if Pi.size < cd.Z.size or Pj.size < cd.Z.size:
                    row.append(None)
                    continue
                entry = X.idem[i][j]
                G = cd.form(Pi)
                A = cd.act(entry, Pj, Pi) if entry else None
                row.append(G @ A if A is not None else Matrix.zeros(F, G.nrows, cd.dim(Pj)))
            blocks.append(row)
        rows = []
        for i, row in enumerate(blocks):
            if all(b is None for b in row):
                continue
            rows.append(Matrix.hstack(F, [b for b in row if b is not None]))
        if rows:
            r = Matrix.vstack(F, rows).rank()
            if r:
                out[lab] = r
    return out


def split_multiplicities(checker, g) -> dict:
    """Count the summands of the object cut out by the label g, via explicit splitting.

    Every primitive summand has exactly one simple on which it acts with
    rank one; that simple names the summand.  This is an independent route
    to the multiplicities read off from Gram ranks, and is only practical
    for objects of size at most three.
    """
    D = checker.A0.D
    W = checker.wts.obj(checker.work.obj_of(g))
    cells = {nu: checker.cell(nu, X, ir, G) for nu, X, ir, G in checker.weights(W.size)}
    out = {}
    for piece in split_idempotents(D, KarObject.of(W, checker.wts.idem_dict(g), D=D)):
        ident = identify(cells, piece)
        if len(ident) != 1 or next(iter(ident.values())) != 1:
            raise ArithmeticError(f"summand is not identified by a single simple: {ident}")
        nu = next(iter(ident))
        out[nu] = out.get(nu, 0) + 1
    return out


# ------------------------------------------------------------ blocks
@dataclass
class BlockInfo:
    members: list
    trivial: bool
    almost_trivial: bool


def blocks(D, objects, names=None):
    """Connected components of the symmetrized nonzero-Hom graph with triviality flags."""
    n = len(objects)
    names = names or [str(i) for i in range(n)]
    adj = [[False] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            if a != b and (hom_dim(D, objects[a], objects[b]) or hom_dim(D, objects[b], objects[a])):
                adj[a][b] = adj[b][a] = True
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s]:
            continue
        comp, stack = [], [s]
        seen[s] = True
        while stack:
            a = stack.pop()
            comp.append(a)
            for b in range(n):
                if adj[a][b] and not seen[b]:
                    seen[b] = True
                    stack.append(b)
        comp.sort()
        almost = len(comp) == 1
        trivial = almost and endomorphism_dim(D, objects[comp[0]]) == 1
        out.append(BlockInfo([names[i] for i in comp], trivial, almost))
    return out, adj


def envelope_block_report(D, objects, names):
    """Blocks of a list of pairwise non-isomorphic indecomposables, with the envelope flag.

    The flag refers to the given truncation only; it is evidence, not a proof
    about the whole category.
    """
    bl, adj = blocks(D, objects, names)
    witness = next((b for b in bl if b.almost_trivial), None)
    recheck = None
    if witness is not None:
        w = names.index(witness.members[0])
        recheck = all(not adj[w][b] for b in range(len(objects)) if b != w)
    return {
        "scope": "truncation-level evidence",
        "blocks": [{"members": b.members, "trivial": b.trivial, "almost_trivial": b.almost_trivial}
                   for b in bl],
        "all_trivial": all(b.trivial for b in bl),
        "envelope_criterion": witness is not None,
        "witness": witness.members[0] if witness else None,
        "witness_isolated": recheck,
    }


def truncation_indecomposables(D, N: int, threads: int = 1):
    """Pairwise non-isomorphic indecomposable summands of [0], ..., [N], named by weight.

    The objects are split independently (in a pool when threads > 1); the
    merge runs over the objects in size order, so the result does not depend
    on the number of threads.
    """
    from concurrent.futures import ThreadPoolExecutor
    from .monoidal import weights_up_to
    cat = D.cat
    objs = [cat.obj(n) for n in range(N + 1)]
    cells = {lab: CellData(D, X, ir, G) for lab, X, ir, G in weights_up_to(cat, N)}

    def work(X):
        return split_idempotents(D, KarObject.of(X, D=D))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            pieces = list(pool.map(work, objs))
    else:
        pieces = [work(X) for X in objs]
    found = {}
    for parts in pieces:
        for p in parts:
            ident = identify(cells, p)
            if len(ident) != 1:
                raise ArithmeticError(f"summand is not identified by a single simple: {ident}")
            lab = next(iter(ident))
            found.setdefault(lab, p)
    labs = sorted(found)
    return [found[lab] for lab in labs], [str(lab) for lab in labs]


def truncation_block_report(D, N: int, threads: int = 1) -> dict:
    objects, names = truncation_indecomposables(D, N, threads)
    rep = envelope_block_report(D, objects, names)
    rep["truncation"] = N
    return rep
