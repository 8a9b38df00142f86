"""Small dense linear algebra over a prime field F_q.

Matrices are tuples of row tuples of ints in range(q).  Shapes are passed
explicitly because zero-row matrices carry no column count.
"""

from __future__ import annotations

from itertools import combinations, product


def normalize(rows, q):
    return tuple(tuple(int(x) % q for x in r) for r in rows)


def zeros(r, c):
    return tuple((0,) * c for _ in range(r))


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def matmul(A, B, q, inner, ncols):
    """A (r x inner) times B (inner x ncols)."""
    out = []
    for row in A:
        acc = [0] * ncols
        for k in range(inner):
            a = row[k]
            if a:
                bk = B[k]
                for j in range(ncols):
                    if bk[j]:
                        acc[j] = (acc[j] + a * bk[j]) % q
        out.append(tuple(acc))
    return tuple(out)


def transpose(A, ncols):
    return tuple(tuple(r[j] for r in A) for j in range(ncols))


def rref(rows, ncols, q):
    """Reduced row echelon form: (nonzero rows, pivot columns)."""
    M = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] % q), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], q - 2, q)
        M[r] = [(x * inv) % q for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [(a - f * b) % q for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return tuple(tuple(row) for row in M[:r]), tuple(pivots)


def rank(rows, ncols, q):
    return len(rref(rows, ncols, q)[1])


def nullspace(A, ncols, q):
    """Basis (list of vectors) of {x : A x = 0}, in a canonical order."""
    R, piv = rref(A, ncols, q)
    pset = set(piv)
    basis = []
    for f in range(ncols):
        if f in pset:
            continue
        v = [0] * ncols
        v[f] = 1
        for i, p in enumerate(piv):
            v[p] = (-R[i][f]) % q
        basis.append(tuple(v))
    return basis


def solve_right_inverse(A, nrows, ncols, q):
    """Some X (ncols x nrows) with A X = I, for A of full row rank."""
    cols = []
    for i in range(nrows):
        e = [0] * nrows
        e[i] = 1
        aug = [tuple(A[r]) + (e[r],) for r in range(nrows)]
        R, piv = rref(aug, ncols + 1, q)
        if ncols in piv:
            raise ValueError("matrix is not of full row rank")
        x = [0] * ncols
        for row, p in zip(R, piv):
            x[p] = row[ncols]
        cols.append(x)
    return tuple(tuple(cols[j][i] for j in range(nrows)) for i in range(ncols))


def all_matrices(r, c, q):
    for flat in product(range(q), repeat=r * c):
        yield tuple(tuple(flat[i * c:(i + 1) * c]) for i in range(r))


def echelon_forms(n, q):
    """All subspaces of F_q^n as RREF row tuples, grouped by dimension."""
    out = []
    for k in range(n + 1):
        for pivots in combinations(range(n), k):
            free = [(i, j) for i, p in enumerate(pivots) for j in range(p + 1, n)
                    if j not in pivots]
            for vals in product(range(q), repeat=len(free)):
                M = [[0] * n for _ in range(k)]
                for i, p in enumerate(pivots):
                    M[i][p] = 1
                for (i, j), v in zip(free, vals):
                    M[i][j] = v
                out.append(tuple(tuple(r) for r in M))
    return out

