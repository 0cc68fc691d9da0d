"""Recursive pivot-free factorization L * A * U = E over an exact field.

For any square matrix A the factorization produces a nonsingular lower
triangular L, an upper unitriangular U and a truncated permutation E with
the same rank as A, such that L*A*U equals E exactly.  Equivalently
A = L^-1 * E * U^-1.  No entry is ever searched for or swapped: the block
layout of the recursion is fixed in advance, so identical inputs take
identical paths regardless of the data, and independent branches may run
concurrently with bitwise-identical results.

Each recursion node on a 2n x 2n block performs exactly 17 dense n x n
products (counted through the supplied MulCounter) plus additions and
sparse permutation/diagonal applications, which are free of counted
multiplications.  The scalar base case inverts one nonzero entry.

The support masks (i, j) threaded through the recursion express which rows
and columns of a block may be nonzero.  They never influence the computed
values; they exist so that each sub-result can be checked against its
support contract when ``debug_checks`` is on, and they document where the
algorithm is allowed to place nonzero entries.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .dense import (
    DenseMatrix,
    MulCounter,
    _mm_classical,
    _mm_strassen,
    invert_lower_triangular,
    invert_upper_unitriangular,
    is_lower_triangular,
    is_upper_unitriangular,
    mat_mul_classical,
    pad_to_pow2,
)
from .errors import ShapeError
from .fields import Scalar
from .perms import DiagIdem, TruncPerm, tp_to_dense

# spawn threads for the two independent middle recursions only above this
# child size; below it thread overhead dominates
_SPAWN_MIN = 16


@dataclass
class LeuResult:
    """Decomposition triple with the counter state at completion."""

    L: DenseMatrix
    E: TruncPerm
    U: DenseMatrix
    counter: MulCounter

    @property
    def rank(self) -> int:
        return len(self.E.ones)


@dataclass
class VerifyReport:
    """Named pass/fail outcomes of the structural checks."""

    checks: tuple

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)

    def lines(self) -> list:
        return [f"{name}: {'PASS' if ok else 'FAIL'}" for name, ok in self.checks]


class _Plan:
    """Per-call context shared by every node of one decomposition."""

    __slots__ = ("field", "mm", "debug", "log", "parallel")

    def __init__(self, field, mm, debug, log, parallel):
        self.field = field
        self.mm = mm
        self.debug = debug
        self.log = log
        self.parallel = parallel


def _make_mm(field, method, cutoff):
    if method == "classical":
        def mm(x, y, h, counter):
            return _mm_classical(x, y, h, field, counter)
    elif method == "strassen":
        if cutoff < 1:
            raise ValueError("cutoff must be >= 1")
        def mm(x, y, h, counter):
            return _mm_strassen(x, y, h, cutoff, field, counter)
    else:
        raise ValueError(f"unknown multiplication method {method!r}")
    return mm


def _row_mask(ones):
    m = 0
    for i, _ in ones:
        m |= 1 << i
    return m


def _col_mask(ones):
    m = 0
    for _, j in ones:
        m |= 1 << j
    return m


def _mask_cols(rows, mask, h):
    if mask == (1 << h) - 1:
        return rows
    keep = [(mask >> j) & 1 for j in range(h)]
    return [[v if k else 0 for v, k in zip(r, keep)] for r in rows]


def _apply_tp_t_right(rows, ones, h):
    # X * E^T: column i of the result is column j of X for each one (i, j)
    out = []
    for r in rows:
        nr = [0] * h
        for i, j in ones:
            nr[i] = r[j]
        out.append(nr)
    return out


def _apply_tp_t_left(ones, rows, h, zrow):
    # E^T * X: row j of the result is row i of X for each one (i, j)
    out = [zrow] * h
    for i, j in ones:
        out[j] = rows[i]
    return list(out)


def _outside_support(rows, n, im, jm):
    """True if some entry lives in a row outside im or a column outside jm."""
    full = (1 << n) - 1
    for i in range(n):
        if not (im >> i) & 1 and any(rows[i]):
            return True
    cm = jm ^ full
    if cm:
        dead = [j for j in range(n) if (cm >> j) & 1]
        for r in rows:
            if any(r[j] for j in dead):
                return True
    return False


def _unit_column(rows, n, j, one):
    return rows[j][j] == one and all(not rows[i][j] for i in range(n) if i != j)


def _unit_row(rows, n, i, one):
    r = rows[i]
    return r[i] == one and all(not r[j] for j in range(n) if j != i)


def _debug_node(l, e, u, n, im, jm, one):
    i_e = _row_mask(e)
    j_e = _col_mask(e)
    assert i_e & im == i_e, "row support escapes its contract"
    assert j_e & jm == j_e, "column support escapes its contract"
    for j in range(n):
        if not (i_e >> j) & 1:
            assert _unit_column(l, n, j, one), "L has a non-unit column outside the support"
    for i in range(n):
        if not (im >> i) & 1:
            assert _unit_row(l, n, i, one), "L has a non-unit row outside the support"
    for i in range(n):
        if not (j_e >> i) & 1:
            assert _unit_row(u, n, i, one), "U has a non-unit row outside the support"
    for j in range(n):
        if not (jm >> j) & 1:
            assert _unit_column(u, n, j, one), "U has a non-unit column outside the support"


def _leu_rec(a, n, im, jm, plan, counter):
    field = plan.field
    if n == 1:
        v = a[0][0]
        one = field.one_raw
        if v:
            counter.scalar_invs += 1
            return [[field.inv(v)]], [(0, 0)], [[one]]
        return [[one]], [], [[one]]

    if plan.debug and _outside_support(a, n, im, jm):
        raise ShapeError("block has entries outside its (I, J) support")

    h = n >> 1
    hm = (1 << h) - 1
    i1, i2 = im & hm, im >> h
    j1, j2 = jm & hm, jm >> h
    a11 = [r[:h] for r in a[:h]]
    a12 = [r[h:] for r in a[:h]]
    a21 = [r[:h] for r in a[h:]]
    a22 = [r[h:] for r in a[h:]]
    mm = plan.mm
    log = plan.log
    if log is not None:
        start = counter.scalar_mults
        kids = 0
        before = counter.scalar_mults

    l11, e11, u11 = _leu_rec(a11, h, i1, j1, plan, counter)
    if log is not None:
        kids += counter.scalar_mults - before

    q = mm(l11, a12, h, counter)
    b = mm(a21, u11, h, counter)

    i11 = _row_mask(e11)
    j11 = _col_mask(e11)
    ib11 = i11 ^ hm
    jb11 = j11 ^ hm
    zrow = [0] * h
    a1_12 = [q[i] if (ib11 >> i) & 1 else zrow for i in range(h)]
    a1_21 = _mask_cols(b, jb11, h)
    t = _apply_tp_t_right(b, e11, h)
    a1_22 = [field.vsub(ra, rt) for ra, rt in zip(a22, mm(t, q, h, counter))]

    im12, jm12 = ib11 & i1, j2
    im21, jm21 = i2, jb11 & j1
    if plan.parallel and h >= _SPAWN_MIN and log is None:
        # the two middle recursions are mutually independent
        c12, c21 = MulCounter(), MulCounter()
        box = {}

        def _left_branch():
            box["r"] = _leu_rec(a1_12, h, im12, jm12, plan, c12)

        th = threading.Thread(target=_left_branch)
        th.start()
        l21, e21, u21 = _leu_rec(a1_21, h, im21, jm21, plan, c21)
        th.join()
        l12, e12, u12 = box["r"]
        counter.merge(c12)
        counter.merge(c21)
    else:
        if log is not None:
            before = counter.scalar_mults
        l12, e12, u12 = _leu_rec(a1_12, h, im12, jm12, plan, counter)
        l21, e21, u21 = _leu_rec(a1_21, h, im21, jm21, plan, counter)
        if log is not None:
            kids += counter.scalar_mults - before

    g = mm(mm(l21, a1_22, h, counter), u12, h, counter)
    i21 = _row_mask(e21)
    j12 = _col_mask(e12)
    ib21 = i21 ^ hm
    jb12 = j12 ^ hm
    gj = _mask_cols(g, jb12, h)
    a2_22 = [gj[i] if (ib21 >> i) & 1 else zrow for i in range(h)]

    if log is not None:
        before = counter.scalar_mults
    l22, e22, u22 = _leu_rec(a2_22, h, ib21 & i2, jb12 & j2, plan, counter)
    if log is not None:
        kids += counter.scalar_mults - before

    ge = _apply_tp_t_right(g, e12, h)
    w = [field.vadd(r1, r2) for r1, r2 in zip(mm(ge, l12, h, counter), mm(l21, t, h, counter))]
    eg = _apply_tp_t_left(e21, gj, h, zrow)
    eq = _apply_tp_t_left(e11, q, h, zrow)
    v = [field.vadd(r1, r2) for r1, r2 in zip(mm(u21, eg, h, counter), mm(eq, u12, h, counter))]

    vneg = field.vneg
    l_tl = mm(l12, l11, h, counter)
    l_bl = [vneg(r) for r in mm(mm(l22, w, h, counter), l11, h, counter)]
    l_br = mm(l22, l21, h, counter)
    u_tl = mm(u11, u21, h, counter)
    u_tr = [vneg(r) for r in mm(mm(u11, v, h, counter), u22, h, counter)]
    u_br = mm(u12, u22, h, counter)

    l = [r + zrow for r in l_tl] + [r1 + r2 for r1, r2 in zip(l_bl, l_br)]
    u = [r1 + r2 for r1, r2 in zip(u_tl, u_tr)] + [zrow + r for r in u_br]
    e = list(e11)
    e += [(i, j + h) for i, j in e12]
    e += [(i + h, j) for i, j in e21]
    e += [(i + h, j + h) for i, j in e22]

    if plan.debug:
        _debug_node(l, e, u, n, im, jm, field.one_raw)
    if log is not None:
        log.append((n, counter.scalar_mults - start - kids))
    return l, e, u


def leu_base(a: Scalar, counter: MulCounter | None = None) -> LeuResult:
    """Decomposition of a single scalar: ([a^-1], 1-at-(0,0), [1]) when a is
    nonzero, ([1], empty, [1]) for zero.  The nonzero case counts one scalar
    inversion."""
    if counter is None:
        counter = MulCounter()
    field = a.field
    l, e, u = _leu_rec([[a.value]], 1, 1, 1, _Plan(field, None, False, None, False), counter)
    return LeuResult(
        DenseMatrix._wrap(field, l, 1, 1),
        TruncPerm(1, e),
        DenseMatrix._wrap(field, u, 1, 1),
        counter.copy(),
    )


def leu_pow2(
    A: DenseMatrix,
    I: DiagIdem,
    J: DiagIdem,
    counter: MulCounter | None = None,
    *,
    method: str = "classical",
    cutoff: int = 32,
    parallel: bool = False,
    debug_checks: bool = False,
    _node_log=None,
) -> LeuResult:
    """Decompose a power-of-two square matrix that vanishes outside the row
    support I and column support J.

    The result satisfies L*A*U = E with the support of E contained in
    (I, J); L and U equal the identity outside those supports.
    """
    n = A.rows
    if A.cols != n or n < 1 or n & (n - 1):
        raise ShapeError(f"expected a power-of-two square matrix, got {A.shape}")
    if I.n != n or J.n != n:
        raise ShapeError("support masks must match the matrix dimension")
    if _outside_support(A._d, n, I.mask, J.mask):
        raise ShapeError("matrix has entries outside its (I, J) support")
    if counter is None:
        counter = MulCounter()
    plan = _Plan(A.field, _make_mm(A.field, method, cutoff), debug_checks, _node_log, parallel)
    l, e, u = _leu_rec(A._d, n, I.mask, J.mask, plan, counter)
    return LeuResult(
        DenseMatrix._wrap(A.field, l, n, n),
        TruncPerm(n, e),
        DenseMatrix._wrap(A.field, u, n, n),
        counter.copy(),
    )


def leu_decompose(
    A: DenseMatrix,
    counter: MulCounter | None = None,
    *,
    method: str = "classical",
    cutoff: int = 32,
    parallel: bool = False,
    debug_checks: bool = False,
    _node_log=None,
) -> LeuResult:
    """Decompose any square matrix, padding to a power of two internally.

    The padded factors carry the identity on the padded region, so the
    leading s x s blocks of L, E, U are returned and satisfy every
    invariant for the original matrix.
    """
    s = A.rows
    if A.cols != s:
        raise ShapeError(f"expected a square matrix, got {A.shape}")
    if s == 0:
        raise ShapeError("empty matrix")
    field = A.field
    P = pad_to_pow2(A)
    m = P.rows
    if counter is None:
        counter = MulCounter()
    plan = _Plan(field, _make_mm(field, method, cutoff), debug_checks, _node_log, parallel)
    l, e, u = _leu_rec(P._d, m, (1 << m) - 1, (1 << m) - 1, plan, counter)
    if m != s:
        if debug_checks:
            one = field.one_raw
            for i in range(s, m):
                assert _unit_row(l, m, i, one) and _unit_column(l, m, i, one)
                assert _unit_row(u, m, i, one) and _unit_column(u, m, i, one)
        l = [r[:s] for r in l[:s]]
        u = [r[:s] for r in u[:s]]
        assert all(i < s and j < s for i, j in e), "support escaped the unpadded block"
    return LeuResult(
        DenseMatrix._wrap(field, l, s, s),
        TruncPerm(s, e),
        DenseMatrix._wrap(field, u, s, s),
        counter.copy(),
    )


def _unit_outside(M: DenseMatrix, support: DiagIdem, side: str) -> bool:
    """Whether M agrees with the identity on rows/columns outside support."""
    n = M.rows
    one = M.field.one_raw
    d = M._d
    for k in range(n):
        if (support.mask >> k) & 1:
            continue
        ok = _unit_column(d, n, k, one) if side == "cols" else _unit_row(d, n, k, one)
        if not ok:
            return False
    return True


def leu_verify(A: DenseMatrix, r: LeuResult) -> VerifyReport:
    """Structural checks of a decomposition against the matrix it came from.

    Reports, per check: L lower triangular with nonzero diagonal, U upper
    unitriangular, exact reconstruction L*A*U = E, the support form of L
    and U (identity outside the support of E), and the same form for their
    inverses.  Never raises; failures are reported.
    """
    checks = []
    scratch = MulCounter()
    n = A.rows
    lower_ok = (
        r.L.shape == (n, n)
        and is_lower_triangular(r.L)
        and all(r.L._d[i][i] for i in range(n))
    )
    checks.append(("lower-triangular", lower_ok))
    upper_ok = r.U.shape == (n, n) and is_upper_unitriangular(r.U)
    checks.append(("upper-unitriangular", upper_ok))

    recon_ok = False
    if A.cols == n and r.E.n == n:
        prod = mat_mul_classical(mat_mul_classical(r.L, A, scratch), r.U, scratch)
        recon_ok = prod == tp_to_dense(r.E, A.field)
    checks.append(("reconstruction", recon_ok))

    i_e = r.E.row_support()
    j_e = r.E.col_support()
    imm_ok = _unit_outside(r.L, i_e, "cols") and _unit_outside(r.U, j_e, "rows")
    checks.append(("support-form", imm_ok))

    inv_ok = lower_ok and upper_ok
    if inv_ok:
        li = invert_lower_triangular(r.L, scratch)
        ui = invert_upper_unitriangular(r.U, scratch)
        inv_ok = _unit_outside(li, i_e, "cols") and _unit_outside(ui, j_e, "rows")
    checks.append(("support-form-inverse", inv_ok))
    return VerifyReport(tuple(checks))
