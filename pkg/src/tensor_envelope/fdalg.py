"""Finite-dimensional algebras given by structure constants.

Elements are coordinate lists over the field context F.  The radical is the
kernel of the trace form of the left regular representation (valid in
characteristic zero).  Primitive idempotents are found in the semisimple
quotient, one simple block at a time, and lifted by the Newton iteration
e <- 3e^2 - 2e^3.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .errors import NonSplitField
from .linalg import Matrix, Subspace
from .polyroots import roots


class VecSpace:
    """Subspace of F^d kept in RREF, with list-based reduction helpers."""

    def __init__(self, F, d, rows=()):
        self.F = F
        self.d = d
        sub = Subspace.span(F, d, rows)
        self.rows = sub.basis.rows()
        self.pivots = sub.pivots

    @property
    def dim(self):
        return len(self.pivots)

    def reduce(self, v):
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c:
                for j, r in enumerate(row):
                    if r:
                        v[j] = v[j] - c * r
        return v

    def contains(self, v):
        return not any(self.reduce(v))


@dataclass
class Block:
    primitive: list
    multiplicity: int
    simple_dim: int
    central: list


class FDAlgebra:
    """Associative algebra with basis 0..d-1 and sparse structure constants."""

    def __init__(self, F, d, table, unit):
        # table[i][j] = dict {k: coefficient} for b_i b_j
        self.F = F
        self.d = d
        self.table = table
        self.unit = list(unit)
        self._radical = None

    # ------------------------------------------------------------ arithmetic
    def zero(self):
        return [self.F.zero] * self.d

    def basis_vector(self, i):
        v = self.zero()
        v[i] = self.F.one
        return v

    def mul(self, x, y):
        F = self.F
        out = [F.zero] * self.d
        nx = [(i, a) for i, a in enumerate(x) if a]
        ny = [(j, b) for j, b in enumerate(y) if b]
        tab = self.table
        for i, a in nx:
            row = tab[i]
            for j, b in ny:
                prod = row[j]
                if prod:
                    ab = a * b
                    for k, c in prod.items():
                        out[k] = out[k] + ab * c
        return out

    def add(self, x, y):
        return [a + b for a, b in zip(x, y)]

    def sub(self, x, y):
        return [a - b for a, b in zip(x, y)]

    def scale(self, x, c):
        return [a * c for a in x]

    def is_zero(self, x):
        return not any(x)

    def left_matrix(self, x) -> Matrix:
        cols = [self.mul(x, self.basis_vector(j)) for j in range(self.d)]
        return Matrix.from_columns(self.F, cols, nrows=self.d)

    def trace_left(self, x):
        """Trace of left multiplication by x on the algebra."""
        F = self.F
        acc = F.zero
        for i, a in enumerate(x):
            if a:
                t = self._trace_basis(i)
                if t:
                    acc = acc + a * t
        return acc

    def _trace_basis(self, i):
        if not hasattr(self, "_tr"):
            F = self.F
            tr = []
            for k in range(self.d):
                acc = F.zero
                row = self.table[k]
                for j in range(self.d):
                    c = row[j].get(j) if row[j] else None
                    if c:
                        acc = acc + c
                tr.append(acc)
            self._tr = tr
        return self._tr[i]

    # ------------------------------------------------------------ radical
    def trace_form(self) -> Matrix:
        F = self.F
        d = self.d
        G = Matrix.zeros(F, d, d)
        for i in range(d):
            row = self.table[i]
            for j in range(d):
                prod = row[j]
                if prod:
                    acc = F.zero
                    for k, c in prod.items():
                        t = self._trace_basis(k)
                        if t:
                            acc = acc + c * t
                    if acc:
                        G[i, j] = acc
        return G

    def radical(self) -> VecSpace:
        if self._radical is None:
            G = self.trace_form()
            K = G.nullspace()
            self._radical = VecSpace(self.F, self.d, K.T.rows())
        return self._radical

    def is_semisimple(self) -> bool:
        return self.radical().dim == 0

    def is_local(self) -> bool:
        return self.d - self.radical().dim == 1

    # ------------------------------------------------------------ idempotents
    def is_idempotent(self, e) -> bool:
        return self.mul(e, e) == list(e)

    def lift_idempotent(self, e, max_steps=64):
        """Newton iteration e <- 3e^2 - 2e^3 from an idempotent modulo the radical."""
        e = list(e)
        for _ in range(max_steps):
            e2 = self.mul(e, e)
            if e2 == e:
                return e
            e3 = self.mul(e2, e)
            e = [3 * a - 2 * b for a, b in zip(e2, e3)]
        raise ArithmeticError("idempotent lifting did not stabilise")

    def min_poly_mod(self, x, unit, J: VecSpace):
        """Monic minimal polynomial of x in the unital corner with the given unit, modulo J."""
        F = self.F
        powers = [J.reduce(unit)]
        cur = list(unit)
        while True:
            cur = self.mul(cur, x)
            red = J.reduce(cur)
            A = Matrix.from_columns(F, powers, nrows=self.d)
            sol = A.solve(Matrix.from_columns(F, [red], nrows=self.d))
            if sol is not None:
                coeffs = [-sol[i, 0] for i in range(len(powers))] + [F.one]
                return coeffs
            powers.append(red)

    def _poly_at(self, coeffs, x, unit):
        """Evaluate a polynomial at x with the constant term times unit."""
        acc = self.scale(unit, coeffs[-1])
        for c in reversed(coeffs[:-1]):
            acc = self.add(self.mul(acc, x), self.scale(unit, c))
        return acc

    def _span_mod(self, vecs, J):
        red = [J.reduce(v) for v in vecs]
        return VecSpace(self.F, self.d, list(J.rows) + red).dim - J.dim

    def center_mod_radical(self):
        """Basis of the center of A/J (as representatives in A)."""
        F = self.F
        J = self.radical()
        d = self.d
        basis = [self.basis_vector(i) for i in range(d)]
        # column i stacks reduce(b_i b_j - b_j b_i) over j
        cols = []
        for i in range(d):
            col = []
            for j in range(d):
                c = self.sub(self.mul(basis[i], basis[j]), self.mul(basis[j], basis[i]))
                col.extend(J.reduce(c))
            cols.append(col)
        M = Matrix.from_columns(F, cols, nrows=d * d)
        sol = M.nullspace()
        vecs = [sol.column(k) for k in range(sol.ncols)]
        # drop the radical part and keep a basis modulo J
        out = []
        acc = VecSpace(F, d, J.rows)
        for v in vecs:
            r = acc.reduce(v)
            if any(r):
                out.append(v)
                acc = VecSpace(F, d, list(acc.rows) + [v])
        return out

    def central_idempotents(self):
        """Primitive central idempotents of A/J (representatives)."""
        F = self.F
        J = self.radical()
        Z = self.center_mod_radical()
        m = len(Z)
        if m == 0:
            return []
        if m == 1:
            return [self.unit]
        for attempt in range(1, 40):
            z = self.zero()
            for k, v in enumerate(Z):
                c = F((k + 1) ** attempt + attempt * k)
                z = self.add(z, self.scale(v, c))
            mp = self.min_poly_mod(z, self.unit, J)
            rts, deg = roots(F, mp)
            if deg < len(mp) - 1:
                raise NonSplitField("center of the semisimple quotient is not split")
            if len(rts) == m:
                rs = [r for r, _ in rts]
                idems = []
                for i, ri in enumerate(rs):
                    e = list(self.unit)
                    for j, rj in enumerate(rs):
                        if j == i:
                            continue
                        e = self.mul(e, self.sub(z, self.scale(self.unit, rj)))
                        e = self.scale(e, F.one / (ri - rj))
                    idems.append(e)
                return idems
        raise NonSplitField("could not separate the center of the semisimple quotient")

    def _corner_basis(self, e, J):
        vecs = []
        acc = VecSpace(self.F, self.d, J.rows)
        for i in range(self.d):
            v = self.mul(self.mul(e, self.basis_vector(i)), e)
            r = acc.reduce(v)
            if any(r):
                vecs.append(v)
                acc = VecSpace(self.F, self.d, list(acc.rows) + [v])
        return vecs

    def primitive_in_corner(self, e):
        """A primitive idempotent below e in A/J (a representative, not lifted)."""
        F = self.F
        J = self.radical()
        while True:
            corner = self._corner_basis(e, J)
            if len(corner) <= 1:
                return e
            split = None
            candidates = list(corner)
            for a in corner:
                for b in corner:
                    candidates.append(self.add(a, b))
                if len(candidates) > 4 * len(corner):
                    break
            for x in candidates:
                mp = self.min_poly_mod(x, e, J)
                if len(mp) <= 2:
                    continue
                rts, _ = roots(F, mp)
                if not rts:
                    continue
                r = rts[0][0]
                y = self.sub(x, self.scale(e, r))
                split = self._left_ideal_idempotent(y, corner, J)
                if split is not None:
                    break
            if split is None:
                raise NonSplitField("no zero divisor with a rational eigenvalue in a simple block")
            e = split

    def _left_ideal_idempotent(self, y, corner, J):
        """Idempotent generating the left ideal (corner) * y modulo J."""
        F = self.F
        d = self.d
        gens = [J.reduce(self.mul(c, y)) for c in corner]
        L = VecSpace(F, d, gens)
        if L.dim == 0:
            return None
        lbasis = [list(r) for r in L.rows]
        k = len(lbasis)
        # unknown f = sum c_a l_a with l_b f = l_b (mod J) for all b
        cols = []
        rhs = []
        for b in range(k):
            rhs.extend(J.reduce(lbasis[b]))
        for a in range(k):
            col = []
            for b in range(k):
                col.extend(J.reduce(self.mul(lbasis[b], lbasis[a])))
            cols.append(col)
        M = Matrix.from_columns(F, cols, nrows=k * d)
        sol = M.solve(Matrix.from_columns(F, [rhs], nrows=k * d))
        if sol is None:
            return None
        f = self.zero()
        for a in range(k):
            c = sol[a, 0]
            if c:
                f = self.add(f, self.scale(lbasis[a], c))
        return f

    def blocks(self):
        """One lifted primitive idempotent per simple block, with multiplicities."""
        J = self.radical()
        out = []
        for c in self.central_idempotents():
            dim = self._span_mod([self.mul(c, self.basis_vector(i)) for i in range(self.d)], J)
            n = isqrt(dim)
            if n * n != dim:
                raise NonSplitField(f"simple block of dimension {dim} is not a matrix algebra")
            p = self.primitive_in_corner(c)
            p = self.lift_idempotent(p)
            out.append(Block(primitive=p, multiplicity=n, simple_dim=dim, central=c))
        return out


def algebra_from_matrices(F, mats, unit=None) -> tuple:
    """Structure constants of the span of the given square matrices.

    Returns (FDAlgebra, basis matrices, coordinate function).
    """
    n = mats[0].nrows if mats else 0
    flat = [[m[i, j] for i in range(n) for j in range(n)] for m in mats]
    sub = Subspace.span(F, n * n, flat)
    basis = []
    for row in sub.basis.rows():
        basis.append(Matrix.from_rows(F, [row[i * n:(i + 1) * n] for i in range(n)], ncols=n))
    piv = sub.pivots

    def coords(M):
        return [M[p // n, p % n] for p in piv]

    d = len(basis)
    table = []
    for a in basis:
        row = []
        for b in basis:
            c = coords(a @ b)
            row.append({k: v for k, v in enumerate(c) if v})
        table.append(row)
    if unit is None:
        unit = Matrix.identity(F, n)
    alg = FDAlgebra(F, d, table, coords(unit))
    return alg, basis, coords
