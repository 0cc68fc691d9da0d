"""Reference implementations for testing and verification.

Gaussian elimination with pivoting, the classic algorithm family the
decomposition core deliberately avoids.  Agreement between the two routes
is therefore meaningful.  Nothing in the decomposition path calls into
this module; it backs the test-suite and the CLI ``verify`` command only.
Performance is a non-goal here.
"""

from __future__ import annotations

from .dense import DenseMatrix, MulCounter, mat_mul_classical
from .errors import ShapeError, SingularError


def gauss_rank(A: DenseMatrix) -> int:
    """Rank by row reduction with full pivoting."""
    field = A.field
    m = [list(r) for r in A._d]
    nrows, ncols = A.rows, A.cols
    rank = 0
    while True:
        pivot = None
        for i in range(rank, nrows):
            for j in range(rank, ncols):
                if m[i][j]:
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            return rank
        pi, pj = pivot
        if pi != rank:
            m[rank], m[pi] = m[pi], m[rank]
        if pj != rank:
            for row in m:
                row[rank], row[pj] = row[pj], row[rank]
        inv_p = field.inv(m[rank][rank])
        mul, sub = field.mul, field.sub
        prow = m[rank]
        for i in range(rank + 1, nrows):
            f = m[i][rank]
            if f:
                f = mul(f, inv_p)
                ri = m[i]
                for j in range(rank, ncols):
                    ri[j] = sub(ri[j], mul(f, prow[j]))
        rank += 1


def _row_echelon(A: DenseMatrix):
    """Echelon form scanning columns left to right; returns (rows, pivot cols)."""
    field = A.field
    m = [list(r) for r in A._d]
    nrows, ncols = A.rows, A.cols
    mul, sub = field.mul, field.sub
    pivots = []
    prow = 0
    for col in range(ncols):
        found = None
        for i in range(prow, nrows):
            if m[i][col]:
                found = i
                break
        if found is None:
            continue
        if found != prow:
            m[prow], m[found] = m[found], m[prow]
        inv_p = field.inv(m[prow][col])
        for i in range(prow + 1, nrows):
            f = m[i][col]
            if f:
                f = mul(f, inv_p)
                ri = m[i]
                pr = m[prow]
                for j in range(col, ncols):
                    ri[j] = sub(ri[j], mul(f, pr[j]))
        pivots.append(col)
        prow += 1
        if prow == nrows:
            break
    return m, pivots


def gauss_kernel(A: DenseMatrix) -> DenseMatrix:
    """Right kernel basis (cols x nullity) via back-substitution."""
    field = A.field
    m, pivots = _row_echelon(A)
    ncols = A.cols
    free = [j for j in range(ncols) if j not in pivots]
    mul, inv = field.mul, field.inv
    z = field.zero_raw
    basis = []
    for f in free:
        x = [z] * ncols
        x[f] = field.one_raw
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            s = z
            row = m[r]
            for j in range(pc + 1, ncols):
                if row[j] and x[j]:
                    s = field.add(s, mul(row[j], x[j]))
            if s:
                x[pc] = field.neg(mul(s, inv(row[pc])))
        basis.append(x)
    data = [[basis[k][i] for k in range(len(free))] for i in range(ncols)]
    return DenseMatrix._wrap(field, data, ncols, len(free))


def gauss_inverse(A: DenseMatrix) -> DenseMatrix:
    """Inverse by Gauss-Jordan elimination; SingularError carries the rank."""
    n = A.rows
    if A.cols != n:
        raise ShapeError(f"expected a square matrix, got {A.shape}")
    field = A.field
    mul, sub, inv = field.mul, field.sub, field.inv
    z, o = field.zero_raw, field.one_raw
    m = [list(r) + [o if i == j else z for j in range(n)] for i, r in enumerate(A._d)]
    for col in range(n):
        found = None
        for i in range(col, n):
            if m[i][col]:
                found = i
                break
        if found is None:
            raise SingularError(f"matrix of rank {gauss_rank(A)} < {n} has no inverse",
                                rank=gauss_rank(A))
        if found != col:
            m[col], m[found] = m[found], m[col]
        inv_p = inv(m[col][col])
        m[col] = [mul(v, inv_p) for v in m[col]]
        prow = m[col]
        for i in range(n):
            if i != col and m[i][col]:
                f = m[i][col]
                m[i] = [sub(v, mul(f, pv)) for v, pv in zip(m[i], prow)]
    data = [row[n:] for row in m]
    return DenseMatrix._wrap(field, data, n, n)


def check_inverse(A: DenseMatrix, B: DenseMatrix) -> bool:
    """Whether B is a two-sided inverse of A."""
    ident = DenseMatrix.identity(A.field, A.rows)
    c = MulCounter()
    return mat_mul_classical(A, B, c) == ident and mat_mul_classical(B, A, c) == ident
