"""Dense exact matrices over Q (flint-backed) and Q(t) (pure Python).

Everything above this module talks to `Matrix` and `Subspace` only, so the
field choice is made once, by the field context passed at construction.
"""

from __future__ import annotations

from flint import fmpq, fmpq_mat

from .scalar import FunctionField, RationalField, Scalar


def _cost(x: Scalar) -> int:
    return x.num.degree() + x.den.degree() + 2


class Matrix:
    __slots__ = ("F", "nrows", "ncols", "_q", "_rows")

    def __init__(self, F, nrows, ncols, q=None, rows=None):
        self.F = F
        self.nrows = nrows
        self.ncols = ncols
        self._q = q
        self._rows = rows

    # ------------------------------------------------------------ construction
    @staticmethod
    def zeros(F, r, c) -> "Matrix":
        if F.is_generic:
            return Matrix(F, r, c, rows=[[F.zero] * c for _ in range(r)])
        return Matrix(F, r, c, q=fmpq_mat(r, c))

    @staticmethod
    def identity(F, n) -> "Matrix":
        m = Matrix.zeros(F, n, n)
        for i in range(n):
            m[i, i] = F.one
        return m

    @staticmethod
    def from_rows(F, rows, ncols=None) -> "Matrix":
        rows = [list(r) for r in rows]
        r = len(rows)
        c = len(rows[0]) if rows else (ncols or 0)
        if F.is_generic:
            return Matrix(F, r, c, rows=[[Scalar.coerce(x) for x in row] for row in rows])
        flat = [F(x) for row in rows for x in row]
        return Matrix(F, r, c, q=fmpq_mat(r, c, flat) if r and c else fmpq_mat(r, c))

    @staticmethod
    def from_columns(F, cols, nrows=None) -> "Matrix":
        return Matrix.from_rows(F, cols, ncols=nrows).T

    @staticmethod
    def from_sparse(F, r, c, entries) -> "Matrix":
        m = Matrix.zeros(F, r, c)
        for (i, j), v in entries.items():
            m[i, j] = v
        return m

    # ------------------------------------------------------------ access
    def __getitem__(self, ij):
        i, j = ij
        if self._q is not None:
            return self._q[i, j]
        return self._rows[i][j]

    def __setitem__(self, ij, v):
        i, j = ij
        if self._q is not None:
            self._q[i, j] = self.F(v)
        else:
            self._rows[i][j] = Scalar.coerce(v)

    def rows(self) -> list:
        if self._q is not None:
            if self.nrows == 0:
                return []
            if self.ncols == 0:
                return [[] for _ in range(self.nrows)]
            return self._q.tolist()
        return [list(r) for r in self._rows]

    def row(self, i) -> list:
        if self._q is not None:
            return [self._q[i, j] for j in range(self.ncols)]
        return list(self._rows[i])

    def column(self, j) -> list:
        if self._q is not None:
            return [self._q[i, j] for i in range(self.nrows)]
        return [r[j] for r in self._rows]

    def copy(self) -> "Matrix":
        if self._q is not None:
            return Matrix(self.F, self.nrows, self.ncols, q=fmpq_mat(self._q))
        return Matrix(self.F, self.nrows, self.ncols, rows=[list(r) for r in self._rows])

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def is_zero(self) -> bool:
        if self._q is not None:
            if self.nrows == 0 or self.ncols == 0:
                return True
            return self._q == fmpq_mat(self.nrows, self.ncols)
        return all(not x for r in self._rows for x in r)

    def __eq__(self, other):
        if not isinstance(other, Matrix) or self.shape != other.shape:
            return False
        return (self - other).is_zero()

    __hash__ = None

    # ------------------------------------------------------------ arithmetic
    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        F = self.F
        if self._q is not None:
            if self.nrows == 0 or other.ncols == 0 or self.ncols == 0:
                return Matrix.zeros(F, self.nrows, other.ncols)
            return Matrix(F, self.nrows, other.ncols, q=self._q * other._q)
        cols = other.ncols
        out = []
        orows = other._rows
        for r in self._rows:
            acc = [F.zero] * cols
            for k, a in enumerate(r):
                if not a:
                    continue
                ok = orows[k]
                for j in range(cols):
                    b = ok[j]
                    if b:
                        acc[j] = acc[j] + a * b
            out.append(acc)
        return Matrix(F, self.nrows, cols, rows=out)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch in +")
        if self._q is not None:
            if self.nrows == 0 or self.ncols == 0:
                return self.copy()
            return Matrix(self.F, self.nrows, self.ncols, q=self._q + other._q)
        return Matrix(self.F, self.nrows, self.ncols,
                      rows=[[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __neg__(self):
        if self._q is not None:
            if self.nrows == 0 or self.ncols == 0:
                return self.copy()
            return Matrix(self.F, self.nrows, self.ncols, q=-self._q)
        return Matrix(self.F, self.nrows, self.ncols, rows=[[-a for a in r] for r in self._rows])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = self.F(c)
        if self._q is not None:
            if self.nrows == 0 or self.ncols == 0:
                return self.copy()
            return Matrix(self.F, self.nrows, self.ncols, q=self._q * c)
        return Matrix(self.F, self.nrows, self.ncols, rows=[[a * c for a in r] for r in self._rows])

    @property
    def T(self) -> "Matrix":
        if self._q is not None:
            if self.nrows == 0 or self.ncols == 0:
                return Matrix.zeros(self.F, self.ncols, self.nrows)
            return Matrix(self.F, self.ncols, self.nrows, q=self._q.transpose())
        return Matrix(self.F, self.ncols, self.nrows,
                      rows=[list(c) for c in zip(*self._rows)] if self.nrows else
                      [[] for _ in range(self.ncols)])

    def select_rows(self, idx) -> "Matrix":
        idx = list(idx)
        rows = self.rows()
        return Matrix.from_rows(self.F, [rows[i] for i in idx], ncols=self.ncols)

    def select_columns(self, idx) -> "Matrix":
        idx = list(idx)
        rows = self.rows()
        return Matrix.from_rows(self.F, [[r[j] for j in idx] for r in rows], ncols=len(idx)) \
            if self.nrows else Matrix.zeros(self.F, 0, len(idx))

    @staticmethod
    def hstack(F, mats, nrows=None) -> "Matrix":
        mats = list(mats)
        if not mats:
            return Matrix.zeros(F, nrows or 0, 0)
        r = mats[0].nrows
        rows = [[] for _ in range(r)]
        for m in mats:
            if m.nrows != r:
                raise ValueError("hstack row mismatch")
            for i, row in enumerate(m.rows()):
                rows[i].extend(row)
        return Matrix.from_rows(F, rows, ncols=sum(m.ncols for m in mats))

    @staticmethod
    def vstack(F, mats, ncols=None) -> "Matrix":
        mats = list(mats)
        if not mats:
            return Matrix.zeros(F, 0, ncols or 0)
        c = mats[0].ncols
        rows = []
        for m in mats:
            if m.ncols != c:
                raise ValueError("vstack column mismatch")
            rows.extend(m.rows())
        return Matrix.from_rows(F, rows, ncols=c)

    @staticmethod
    def block_diag(F, mats) -> "Matrix":
        mats = list(mats)
        R = sum(m.nrows for m in mats)
        C = sum(m.ncols for m in mats)
        out = Matrix.zeros(F, R, C)
        r0 = c0 = 0
        for m in mats:
            for i, row in enumerate(m.rows()):
                for j, v in enumerate(row):
                    if v:
                        out[r0 + i, c0 + j] = v
            r0 += m.nrows
            c0 += m.ncols
        return out

    # ------------------------------------------------------------ elimination
    def rref(self):
        """Return (R, pivots) with R the reduced echelon form (nonzero rows only)."""
        if self._q is not None:
            if self.nrows == 0 or self.ncols == 0:
                return Matrix.zeros(self.F, 0, self.ncols), []
            R, rank = self._q.rref()
            pivots = []
            rows = []
            for i in range(rank):
                row = [R[i, j] for j in range(self.ncols)]
                for j, v in enumerate(row):
                    if v != 0:
                        pivots.append(j)
                        break
                rows.append(row)
            return Matrix.from_rows(self.F, rows, ncols=self.ncols), pivots
        return _generic_rref(self)

    def rank(self) -> int:
        if self._q is not None:
            if self.nrows == 0 or self.ncols == 0:
                return 0
            return self._q.rank()
        return len(_generic_rref(self)[1])

    def nullspace(self) -> "Matrix":
        """Columns form a basis of {x : self @ x = 0}."""
        R, piv = self.rref()
        n = self.ncols
        free = [j for j in range(n) if j not in set(piv)]
        F = self.F
        out = Matrix.zeros(F, n, len(free))
        rows = R.rows()
        for k, f in enumerate(free):
            out[f, k] = F.one
            for i, p in enumerate(piv):
                v = rows[i][f]
                if v:
                    out[p, k] = -v
        return out

    def left_nullspace(self) -> "Matrix":
        """Rows form a basis of {y : y @ self = 0}."""
        return self.T.nullspace().T

    def solve(self, B: "Matrix"):
        """Some X with self @ X = B, or None when inconsistent."""
        n = self.ncols
        aug = Matrix.hstack(self.F, [self, B])
        R, piv = aug.rref()
        if any(p >= n for p in piv):
            return None
        X = Matrix.zeros(self.F, n, B.ncols)
        rows = R.rows()
        for i, p in enumerate(piv):
            for j in range(B.ncols):
                v = rows[i][n + j]
                if v:
                    X[p, j] = v
        return X

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise ValueError("inverse of non-square matrix")
        X = self.solve(Matrix.identity(self.F, self.nrows))
        if X is None or (self @ X) != Matrix.identity(self.F, self.nrows):
            raise ZeroDivisionError("singular matrix")
        return X

    def trace(self):
        acc = self.F.zero
        for i in range(min(self.nrows, self.ncols)):
            acc = acc + self[i, i]
        return acc

    def det(self):
        if self.nrows != self.ncols:
            raise ValueError("det of non-square matrix")
        if self.nrows == 0:
            return self.F.one
        if self._q is not None:
            return self._q.det()
        return _generic_det(self)

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, {self.rows()})"


def _generic_rref(m: Matrix):
    F = m.F
    rows = [list(r) for r in m._rows]
    nrows, ncols = m.nrows, m.ncols
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        best = None
        for i in range(r, nrows):
            v = rows[i][c]
            if v:
                cost = _cost(v)
                if best is None or cost < best[0]:
                    best = (cost, i)
                    if cost == 2:
                        break
        if best is None:
            continue
        i = best[1]
        rows[r], rows[i] = rows[i], rows[r]
        piv = rows[r][c]
        inv = piv.inverse()
        prow = [x * inv if x else x for x in rows[r]]
        prow[c] = F.one
        rows[r] = prow
        nz = [j for j in range(c, ncols) if prow[j]]
        for i2 in range(nrows):
            if i2 == r:
                continue
            f = rows[i2][c]
            if not f:
                continue
            row2 = rows[i2]
            for j in nz:
                row2[j] = row2[j] - f * prow[j]
        pivots.append(c)
        r += 1
    return Matrix(F, r, ncols, rows=rows[:r]), pivots


def _generic_det(m: Matrix):
    F = m.F
    rows = [list(r) for r in m._rows]
    n = m.nrows
    det = F.one
    for c in range(n):
        piv = None
        for i in range(c, n):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            return F.zero
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        p = rows[c][c]
        det = det * p
        inv = p.inverse()
        for i in range(c + 1, n):
            f = rows[i][c]
            if f:
                f = f * inv
                for j in range(c, n):
                    if rows[c][j]:
                        rows[i][j] = rows[i][j] - f * rows[c][j]
    return det


class Subspace:
    """Subspace of F^n held as an RREF basis (rows)."""

    __slots__ = ("F", "n", "basis", "pivots")

    def __init__(self, F, n, basis: Matrix, pivots):
        self.F = F
        self.n = n
        self.basis = basis
        self.pivots = list(pivots)

    @staticmethod
    def span(F, n, vectors) -> "Subspace":
        vectors = [list(v) for v in vectors]
        if not vectors:
            return Subspace(F, n, Matrix.zeros(F, 0, n), [])
        R, piv = Matrix.from_rows(F, vectors, ncols=n).rref()
        return Subspace(F, n, R, piv)

    @staticmethod
    def from_matrix_rows(M: Matrix) -> "Subspace":
        R, piv = M.rref()
        return Subspace(M.F, M.ncols, R, piv)

    @staticmethod
    def whole(F, n) -> "Subspace":
        return Subspace(F, n, Matrix.identity(F, n), list(range(n)))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def coords(self, M: Matrix) -> Matrix:
        """Coordinates of the columns of M (assumed inside) in the RREF basis."""
        return M.select_rows(self.pivots)

    def reduce(self, M: Matrix) -> Matrix:
        """Columns of M minus their projection along the RREF basis."""
        if self.dim == 0:
            return M
        return M - self.basis.T @ M.select_rows(self.pivots)

    def contains(self, M: Matrix) -> bool:
        return self.reduce(M).is_zero()

    def sum(self, other: "Subspace") -> "Subspace":
        return Subspace.from_matrix_rows(Matrix.vstack(self.F, [self.basis, other.basis], ncols=self.n))

    def intersect(self, other: "Subspace") -> "Subspace":
        # x = a B1 = b B2  <=>  [a, -b] [B1; B2] = 0
        if self.dim == 0 or other.dim == 0:
            return Subspace(self.F, self.n, Matrix.zeros(self.F, 0, self.n), [])
        stacked = Matrix.vstack(self.F, [self.basis, -other.basis], ncols=self.n)
        K = stacked.left_nullspace()
        if K.nrows == 0:
            return Subspace(self.F, self.n, Matrix.zeros(self.F, 0, self.n), [])
        vecs = K.select_columns(range(self.dim)) @ self.basis
        return Subspace.from_matrix_rows(vecs)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.n == other.n and self.pivots == other.pivots
                and self.basis == other.basis)

    __hash__ = None

    def complement_pivots(self):
        s = set(self.pivots)
        return [j for j in range(self.n) if j not in s]


def column_vector(F, values) -> Matrix:
    return Matrix.from_rows(F, [[v] for v in values], ncols=1)


def is_rational_field(F) -> bool:
    return isinstance(F, RationalField)


def is_function_field(F) -> bool:
    return isinstance(F, FunctionField)


__all__ = ["Matrix", "Subspace", "column_vector", "fmpq"]
