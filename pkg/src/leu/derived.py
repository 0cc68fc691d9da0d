"""Operations derived from the triple factorization L * A * U = E.

Everything here rides on one decomposition of the input: the generalized
Bruhat form V1 * w * V2 with triangular V1, V2 and a full permutation w,
the exact inverse U * E^T * L of a nonsingular matrix, the rank as the
number of ones of E, a kernel basis read off the columns of U, and index
sets of a nonsingular submatrix of maximal size.
"""

from __future__ import annotations

from dataclasses import dataclass

from .decompose import LeuResult, leu_decompose
from .dense import (
    DenseMatrix,
    MulCounter,
    invert_lower_triangular,
    invert_upper_unitriangular,
    mat_mul_classical,
)
from .errors import ShapeError, SingularError
from .perms import TruncPerm, reversal_perm, tp_apply_left


@dataclass
class BruhatResult:
    """Factors of M = V1 * w * V2.

    V1 and V2 are upper triangular and may be singular exactly when M is;
    w is a full permutation.
    """

    V1: DenseMatrix
    w: TruncPerm
    V2: DenseMatrix


def _sub_unit_diag_outside(M: DenseMatrix, support_mask: int) -> DenseMatrix:
    # subtract 1 from each diagonal entry whose index is outside the support
    field = M.field
    one = field.one_raw
    data = []
    for i, row in enumerate(M._d):
        if (support_mask >> i) & 1:
            data.append(row)
        else:
            nr = list(row)
            nr[i] = field.sub(nr[i], one)
            data.append(nr)
    return DenseMatrix._wrap(field, data, M.rows, M.cols)


def _reverse_both(M: DenseMatrix) -> DenseMatrix:
    data = [list(reversed(row)) for row in reversed(M._d)]
    return DenseMatrix._wrap(M.field, data, M.rows, M.cols)


def bruhat_decompose(
    M: DenseMatrix,
    counter: MulCounter | None = None,
    *,
    method: str = "classical",
    cutoff: int = 32,
    parallel: bool = False,
    debug_checks: bool = False,
) -> BruhatResult:
    """Generalized Bruhat decomposition M = V1 * w * V2.

    Decomposes the row-reversed matrix, then converts: with L*(rev*M)*U = E,
    V1 is the reversal conjugate of L^-1 minus its off-support unit diagonal,
    w is the reversal composed with the permutation E completed to full rank,
    and V2 is U^-1 minus its off-support unit diagonal.
    """
    s = M.rows
    if M.cols != s:
        raise ShapeError(f"expected a square matrix, got {M.shape}")
    if s == 0:
        raise ShapeError("empty matrix")
    if counter is None:
        counter = MulCounter()
    rev = reversal_perm(s)
    res = leu_decompose(
        tp_apply_left(rev, M),
        counter,
        method=method,
        cutoff=cutoff,
        parallel=parallel,
        debug_checks=debug_checks,
    )
    l_inv = invert_lower_triangular(res.L, counter)
    u_inv = invert_upper_unitriangular(res.U, counter)
    i_e = res.E.row_support()
    j_e = res.E.col_support()
    v1 = _reverse_both(_sub_unit_diag_outside(l_inv, i_e.mask))
    v2 = _sub_unit_diag_outside(u_inv, j_e.mask)
    full = res.E.union(res.E.complement())
    w = TruncPerm(s, [(s - 1 - i, j) for i, j in full.ones])
    return BruhatResult(v1, w, v2)


def mat_inverse(
    A: DenseMatrix,
    counter: MulCounter | None = None,
    *,
    method: str = "classical",
    cutoff: int = 32,
    parallel: bool = False,
    debug_checks: bool = False,
) -> DenseMatrix:
    """Exact inverse U * E^T * L of a nonsingular matrix.

    E^T is applied by row selection; one dense product remains and is
    counted.  Raises SingularError carrying the rank when rank < n.
    """
    n = A.rows
    if A.cols != n:
        raise ShapeError(f"expected a square matrix, got {A.shape}")
    if counter is None:
        counter = MulCounter()
    res = leu_decompose(
        A, counter, method=method, cutoff=cutoff, parallel=parallel, debug_checks=debug_checks
    )
    r = res.rank
    if r < n:
        raise SingularError(f"matrix of rank {r} < {n} has no inverse", rank=r)
    etl = tp_apply_left(res.E.transpose(), res.L)
    return mat_mul_classical(res.U, etl, counter)


def mat_rank(
    A: DenseMatrix,
    counter: MulCounter | None = None,
    *,
    method: str = "classical",
    cutoff: int = 32,
    parallel: bool = False,
) -> int:
    """Rank of a matrix; rectangular input is padded square with zeros."""
    res = _decompose_squared(A, counter, method, cutoff, parallel)
    return res.rank


def _decompose_squared(A, counter, method, cutoff, parallel) -> LeuResult:
    s = max(A.rows, A.cols)
    if A.rows != A.cols:
        z = A.field.zero_raw
        data = [row + [z] * (s - A.cols) for row in A._d]
        data += [[z] * s for _ in range(s - A.rows)]
        A = DenseMatrix._wrap(A.field, data, s, s)
    return leu_decompose(A, counter, method=method, cutoff=cutoff, parallel=parallel)


def kernel_basis(
    A: DenseMatrix,
    counter: MulCounter | None = None,
    *,
    method: str = "classical",
    cutoff: int = 32,
    parallel: bool = False,
    debug_checks: bool = False,
) -> DenseMatrix:
    """Basis of the right kernel as the columns of an (n x nullity) matrix.

    With L*A*U = E, each zero column j of E gives A * (U e_j) =
    L^-1 * E * e_j = 0, and those columns of U are linearly independent
    because U is invertible.  For rectangular input the matrix is padded
    square; only zero columns inside the original domain contribute (the
    basis columns of a unitriangular U never reach below their index, so
    nothing is lost by truncating the padded coordinates).
    """
    cols = A.cols
    res = _decompose_squared(A, counter, method, cutoff, parallel)
    covered = {j for _, j in res.E.ones}
    free = [j for j in range(cols) if j not in covered]
    ud = res.U._d
    data = [[ud[i][j] for j in free] for i in range(cols)]
    K = DenseMatrix._wrap(A.field, data, cols, len(free))
    if debug_checks:
        prod = mat_mul_classical(A, K, MulCounter())
        assert prod.is_zero(), "kernel candidate fails to annihilate"
    return K


def largest_nonsingular_block(
    A: DenseMatrix,
    counter: MulCounter | None = None,
    *,
    method: str = "classical",
    cutoff: int = 32,
    parallel: bool = False,
    verify: bool = False,
) -> tuple:
    """Row and column index sets of a nonsingular rank x rank submatrix.

    The rows holding ones of E and the columns holding ones of E are
    returned, each ascending.  With ``verify`` the submatrix is
    cross-checked nonsingular by the elimination oracle.
    """
    n = A.rows
    if A.cols != n:
        raise ShapeError(f"expected a square matrix, got {A.shape}")
    if counter is None:
        counter = MulCounter()
    res = leu_decompose(A, counter, method=method, cutoff=cutoff, parallel=parallel)
    rows = tuple(res.E.row_support().indices())
    cols = tuple(res.E.col_support().indices())
    if verify:
        from .oracle import gauss_rank

        sub = A.select(rows, cols)
        if gauss_rank(sub) != len(rows):
            raise AssertionError("selected block is singular")
    return rows, cols
