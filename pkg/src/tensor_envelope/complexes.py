"""Bounded complexes of projectives and of modules.

A `ProjComplex` has, in each cohomological degree, a list of weight labels
(summands P(label)) and, between consecutive degrees, a matrix whose (r, s)
entry is a vector in Hom(Z_s, Z_r): the summand r in degree i maps to the
summand s in degree i+1 by precomposition.  Matrices compose in row
convention, so the composite of d^i and d^{i+1} is the product d^i d^{i+1}.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .linalg import Matrix, Subspace
from .modules import FdModule, direct_sum, kernel_subs, image_subs, submodule, quotient


@dataclass
class ProjComplex:
    terms: dict = field(default_factory=dict)   # degree -> list of labels
    diffs: dict = field(default_factory=dict)   # degree i -> matrix (list of rows) of Hom vectors

    def degrees(self):
        ds = [d for d, t in self.terms.items() if t]
        return (min(ds), max(ds)) if ds else (0, -1)

    def term(self, d):
        return self.terms.get(d, [])

    def diff(self, d):
        return self.diffs.get(d)

    def shift(self, n: int) -> "ProjComplex":
        """C[n]: degree i holds C^{i+n}, differential (-1)^n d^{i+n}."""
        terms = {d - n: list(t) for d, t in self.terms.items()}
        diffs = {}
        sign = -1 if n % 2 else 1
        for d, D in self.diffs.items():
            diffs[d - n] = [[_scale_vec(v, sign) for v in row] for row in D]
        return ProjComplex(terms, diffs)

    def summand_count(self):
        return sum(len(t) for t in self.terms.values())

    def euler_labels(self):
        out = {}
        for d, t in self.terms.items():
            for lab in t:
                out[lab] = out.get(lab, 0) + (-1) ** (d % 2)
        return out


def proj_d2_is_zero(hw, Cx: ProjComplex) -> bool:
    """d o d = 0 computed by composing Hom entries in the category."""
    C = hw.C
    lo, hi = Cx.degrees()
    for d in range(lo, hi - 1):
        A, B = Cx.diff(d), Cx.diff(d + 1)
        if A is None or B is None:
            continue
        mids = Cx.term(d + 1)
        for r, lab_r in enumerate(Cx.term(d)):
            zr = hw.obj_of(lab_r)
            for t, lab_t in enumerate(Cx.term(d + 2)):
                zt = hw.obj_of(lab_t)
                acc = [C.F.zero] * C.hom_dim(zt, zr)
                for s, lab_s in enumerate(mids):
                    if any(A[r][s]) and any(B[s][t]):
                        prod = C.compose(zr, hw.obj_of(lab_s), zt, A[r][s], B[s][t])
                        acc = [x + y for x, y in zip(acc, prod)]
                if any(acc):
                    return False
    return True


def _scale_vec(v, c):
    return [x * c if x else x for x in v]


def stalk(label) -> ProjComplex:
    return ProjComplex({0: [label]}, {})


@dataclass
class ModComplex:
    """Complex of modules: modules per degree and differentials per object."""

    modules: dict           # degree -> FdModule
    maps: dict              # degree i -> list over objects of Matrix M^{i+1}(W) x M^i(W)
    parts: dict = None      # degree -> list of projective summands, when realized

    def degrees(self):
        ds = sorted(self.modules)
        return (ds[0], ds[-1]) if ds else (0, -1)


def realize(hw, Cx: ProjComplex, projective=None) -> ModComplex:
    """Realize a complex of projectives as a complex of modules on the truncation."""
    C = hw.C
    F = C.F
    proj = projective or hw.projective_for
    lo, hi = Cx.degrees()
    modules, parts = {}, {}
    for d in range(lo, hi + 1):
        ps = [proj(lab) for lab in Cx.term(d)]
        parts[d] = ps
        modules[d] = direct_sum(C, ps)
    maps = {}
    for d in range(lo, hi):
        src, tgt = parts[d], parts[d + 1]
        D = Cx.diff(d)
        per_obj = []
        for W in range(C.n):
            blocks_rows = []
            for s, Ps in enumerate(tgt):
                row_blocks = []
                for r, Pr in enumerate(src):
                    y = D[r][s] if D is not None else None
                    if y is None or not any(y):
                        row_blocks.append(Matrix.zeros(F, Ps.dims[W], Pr.dims[W]))
                        continue
                    R = C.right_matrix(hw.obj_of(Cx.term(d + 1)[s]), hw.obj_of(Cx.term(d)[r]), y, W)
                    block = Ps.from_hom(W, R @ Pr.subs[W].basis.T)
                    row_blocks.append(block)
                blocks_rows.append(row_blocks)
            per_obj.append(_assemble(F, blocks_rows, [P.dims[W] for P in tgt], [P.dims[W] for P in src]))
        maps[d] = per_obj
    return ModComplex(modules, maps, parts)


def _assemble(F, blocks, row_dims, col_dims):
    R, Cn = sum(row_dims), sum(col_dims)
    out = Matrix.zeros(F, R, Cn)
    r0 = 0
    for s, row in enumerate(blocks):
        c0 = 0
        for r, B in enumerate(row):
            for i, brow in enumerate(B.rows()):
                for j, v in enumerate(brow):
                    if v:
                        out[r0 + i, c0 + j] = v
            c0 += col_dims[r]
        r0 += row_dims[s]
    return out


def cohomology(X: ModComplex, d: int) -> FdModule:
    """H^d as a module: kernel of the outgoing map modulo the incoming image."""
    M = X.modules.get(d)
    if M is None:
        return None
    if d in X.maps:
        Z = kernel_subs(X.maps[d], M)
    else:
        Z = [Subspace.whole(M.F, n) for n in M.dims]
    Zm = submodule(M, Z)
    if d - 1 in X.maps:
        B = image_subs(X.maps[d - 1], M)
        # coordinates of B inside Z
        rel = []
        for W in range(M.n):
            cols = Z[W].coords(B[W].basis.T) if B[W].dim else Matrix.zeros(M.F, Z[W].dim, 0)
            rel.append(Subspace.from_matrix_rows(cols.T) if cols.ncols else Subspace.span(M.F, Z[W].dim, []))
        H, _ = quotient(Zm, rel)
        return H
    return Zm


def cohomology_dims(X: ModComplex):
    lo, hi = X.degrees()
    out = {}
    for d in range(lo, hi + 1):
        M = X.modules[d]
        rk_out = [A.rank() for A in X.maps[d]] if d in X.maps else [0] * M.n
        rk_in = [A.rank() for A in X.maps[d - 1]] if d - 1 in X.maps else [0] * M.n
        out[d] = sum(M.dims[W] - rk_out[W] - rk_in[W] for W in range(M.n))
    return out


def check_d2(X: ModComplex) -> bool:
    lo, hi = X.degrees()
    for d in range(lo, hi - 1):
        if d in X.maps and d + 1 in X.maps:
            for A, B in zip(X.maps[d], X.maps[d + 1]):
                if not (B @ A).is_zero():
                    return False
    return True
