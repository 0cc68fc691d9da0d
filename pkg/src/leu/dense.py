"""Dense matrices over an exact field.

Matrices are immutable after construction, so every operation is a pure
function and rows may be shared between results freely.  Multiplications
carry an explicit :class:`MulCounter` instead of global state: classical
multiplication adds exactly rows*inner*cols scalar products, the Strassen
path adds what its recursion actually performs, and applications of
permutation or diagonal matrices (see :mod:`leu.perms`) add nothing.

The Strassen recursion works on unreduced ring values and canonicalizes
once at the end; over GF(p) this is exact because the intermediate integers
are never reduced, only the final entries are.
"""

from __future__ import annotations

from operator import mul as _mul

from .errors import FieldMismatchError, ShapeError, SingularError
from .fields import FieldSpec, Scalar


class MulCounter:
    """Running totals of scalar multiplications and scalar inversions."""

    __slots__ = ("scalar_mults", "scalar_invs")

    def __init__(self, scalar_mults: int = 0, scalar_invs: int = 0):
        self.scalar_mults = scalar_mults
        self.scalar_invs = scalar_invs

    def copy(self) -> "MulCounter":
        return MulCounter(self.scalar_mults, self.scalar_invs)

    def merge(self, other: "MulCounter") -> None:
        self.scalar_mults += other.scalar_mults
        self.scalar_invs += other.scalar_invs

    def __eq__(self, other):
        return (
            isinstance(other, MulCounter)
            and other.scalar_mults == self.scalar_mults
            and other.scalar_invs == self.scalar_invs
        )

    def __repr__(self):
        return f"MulCounter(scalar_mults={self.scalar_mults}, scalar_invs={self.scalar_invs})"


class DenseMatrix:
    """A rows x cols matrix of canonical field values.

    Construct from any nested sequence of entries (ints, fractions or
    :class:`Scalar` of the matching field).  Indexing with ``A[i, j]``
    returns a :class:`Scalar`.
    """

    __slots__ = ("field", "rows", "cols", "_d")

    def __init__(self, field: FieldSpec, entries):
        canon = field.canon
        data = []
        cols = None
        for raw_row in entries:
            row = []
            for v in raw_row:
                if isinstance(v, Scalar):
                    if v.field != field:
                        raise FieldMismatchError(f"entry of field {v.field!r} in {field!r} matrix")
                    row.append(v.value)
                else:
                    row.append(canon(v))
            if cols is None:
                cols = len(row)
            elif len(row) != cols:
                raise ShapeError("ragged rows")
            data.append(row)
        self.field = field
        self.rows = len(data)
        self.cols = 0 if cols is None else cols
        self._d = data

    @classmethod
    def _wrap(cls, field: FieldSpec, data: list, rows: int, cols: int) -> "DenseMatrix":
        # internal fast path: data is already canonical, no validation
        m = object.__new__(cls)
        m.field = field
        m.rows = rows
        m.cols = cols
        m._d = data
        return m

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "DenseMatrix":
        z = field.zero_raw
        return cls._wrap(field, [[z] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "DenseMatrix":
        z, o = field.zero_raw, field.one_raw
        data = [[o if i == j else z for j in range(n)] for i in range(n)]
        return cls._wrap(field, data, n, n)

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        return Scalar(self.field, self._d[i][j])

    def __eq__(self, other):
        return (
            isinstance(other, DenseMatrix)
            and other.field == self.field
            and other.rows == self.rows
            and other.cols == self.cols
            and other._d == self._d
        )

    def _conform(self, other: "DenseMatrix") -> None:
        if not isinstance(other, DenseMatrix):
            raise TypeError(f"expected DenseMatrix, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatchError(f"mixed fields {self.field!r} and {other.field!r}")
        if other.shape != self.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        self._conform(other)
        vadd = self.field.vadd
        data = [vadd(a, b) for a, b in zip(self._d, other._d)]
        return DenseMatrix._wrap(self.field, data, self.rows, self.cols)

    def __sub__(self, other):
        self._conform(other)
        vsub = self.field.vsub
        data = [vsub(a, b) for a, b in zip(self._d, other._d)]
        return DenseMatrix._wrap(self.field, data, self.rows, self.cols)

    def __neg__(self):
        vneg = self.field.vneg
        data = [vneg(r) for r in self._d]
        return DenseMatrix._wrap(self.field, data, self.rows, self.cols)

    def transpose(self) -> "DenseMatrix":
        data = [list(col) for col in zip(*self._d)] if self.rows else []
        return DenseMatrix._wrap(self.field, data, self.cols, self.rows)

    def is_zero(self) -> bool:
        return not any(any(row) for row in self._d)

    def select(self, row_idx, col_idx) -> "DenseMatrix":
        """Submatrix at the given row and column index lists."""
        data = [[self._d[i][j] for j in col_idx] for i in row_idx]
        return DenseMatrix._wrap(self.field, data, len(data), len(col_idx))

    def __repr__(self):
        return f"<DenseMatrix {self.rows}x{self.cols} over {self.field!r}>"

    def __str__(self):
        fmt = self.field.fmt
        return "\n".join(" ".join(fmt(v) for v in row) for row in self._d)


def is_lower_triangular(A: DenseMatrix) -> bool:
    d = A._d
    return all(not d[i][j] for i in range(A.rows) for j in range(i + 1, A.cols))


def is_upper_triangular(A: DenseMatrix) -> bool:
    d = A._d
    return all(not d[i][j] for i in range(A.rows) for j in range(min(i, A.cols)))


def is_upper_unitriangular(A: DenseMatrix) -> bool:
    if A.rows != A.cols or not is_upper_triangular(A):
        return False
    one = A.field.one_raw
    return all(A._d[i][i] == one for i in range(A.rows))


# ---------------------------------------------------------------------------
# raw kernels: operate on lists of rows, shared with the decomposition core


def _raw_classical(x, y, inner, out_cols):
    if inner == 0:
        return [[0] * out_cols for _ in x]
    yt = list(zip(*y))
    return [[sum(map(_mul, r, c)) for c in yt] for r in x]


def _mm_classical(x, y, h, field, counter):
    # square h x h product, counted, canonical output
    counter.scalar_mults += h * h * h
    if field.kind == "gfp":
        p = field.modulus
        yt = list(zip(*y))
        return [[sum(map(_mul, r, c)) % p for c in yt] for r in x]
    dot = field.dot
    yt = list(zip(*y))
    return [[dot(r, c) for c in yt] for r in x]


def _mm_rect_classical(x, y, r, k, c, field, counter):
    counter.scalar_mults += r * k * c
    raw = _raw_classical(x, y, k, c)
    vcanon = field.vcanon
    return [vcanon(row) for row in raw]


def _radd(x, y):
    return [[a + b for a, b in zip(rx, ry)] for rx, ry in zip(x, y)]


def _rsub(x, y):
    return [[a - b for a, b in zip(rx, ry)] for rx, ry in zip(x, y)]


def _strassen_raw(x, y, n, cutoff, counter):
    # Unreduced ring arithmetic; callers canonicalize the final entries.
    if n <= cutoff:
        counter.scalar_mults += n * n * n
        return _raw_classical(x, y, n, n)
    if n == 2:
        counter.scalar_mults += 7
        a, b = x[0]
        c, d = x[1]
        e, f = y[0]
        g, h = y[1]
        m1 = (a + d) * (e + h)
        m2 = (c + d) * e
        m3 = a * (f - h)
        m4 = d * (g - e)
        m5 = (a + b) * h
        m6 = (c - a) * (e + f)
        m7 = (b - d) * (g + h)
        return [[m1 + m4 - m5 + m7, m3 + m5], [m2 + m4, m1 - m2 + m3 + m6]]
    h2 = n >> 1
    x11 = [r[:h2] for r in x[:h2]]
    x12 = [r[h2:] for r in x[:h2]]
    x21 = [r[:h2] for r in x[h2:]]
    x22 = [r[h2:] for r in x[h2:]]
    y11 = [r[:h2] for r in y[:h2]]
    y12 = [r[h2:] for r in y[:h2]]
    y21 = [r[:h2] for r in y[h2:]]
    y22 = [r[h2:] for r in y[h2:]]
    m1 = _strassen_raw(_radd(x11, x22), _radd(y11, y22), h2, cutoff, counter)
    m2 = _strassen_raw(_radd(x21, x22), y11, h2, cutoff, counter)
    m3 = _strassen_raw(x11, _rsub(y12, y22), h2, cutoff, counter)
    m4 = _strassen_raw(x22, _rsub(y21, y11), h2, cutoff, counter)
    m5 = _strassen_raw(_radd(x11, x12), y22, h2, cutoff, counter)
    m6 = _strassen_raw(_rsub(x21, x11), _radd(y11, y12), h2, cutoff, counter)
    m7 = _strassen_raw(_rsub(x12, x22), _radd(y21, y22), h2, cutoff, counter)
    c11 = _radd(_rsub(_radd(m1, m4), m5), m7)
    c12 = _radd(m3, m5)
    c21 = _radd(m2, m4)
    c22 = _radd(_rsub(_radd(m1, m3), m2), m6)
    return [r1 + r2 for r1, r2 in zip(c11, c12)] + [r1 + r2 for r1, r2 in zip(c21, c22)]


def _mm_strassen(x, y, h, cutoff, field, counter):
    raw = _strassen_raw(x, y, h, cutoff, counter)
    vcanon = field.vcanon
    return [vcanon(row) for row in raw]


# ---------------------------------------------------------------------------
# public operations


def mat_mul_classical(A: DenseMatrix, B: DenseMatrix, counter: MulCounter | None = None) -> DenseMatrix:
    """Schoolbook product; counts A.rows * A.cols * B.cols multiplications."""
    if A.field != B.field:
        raise FieldMismatchError(f"mixed fields {A.field!r} and {B.field!r}")
    if A.cols != B.rows:
        raise ShapeError(f"cannot multiply {A.shape} by {B.shape}")
    if counter is None:
        counter = MulCounter()
    data = _mm_rect_classical(A._d, B._d, A.rows, A.cols, B.cols, A.field, counter)
    return DenseMatrix._wrap(A.field, data, A.rows, B.cols)


def mat_mul_strassen(
    A: DenseMatrix, B: DenseMatrix, cutoff: int = 32, counter: MulCounter | None = None
) -> DenseMatrix:
    """Strassen product for square power-of-two operands.

    Falls back to the classical kernel at or below ``cutoff``; above it each
    level performs 7 recursive half-size products.  The result is bitwise
    identical to :func:`mat_mul_classical`.
    """
    if A.field != B.field:
        raise FieldMismatchError(f"mixed fields {A.field!r} and {B.field!r}")
    n = A.rows
    if A.shape != (n, n) or B.shape != (n, n):
        raise ShapeError(f"operands must be equal square matrices, got {A.shape} and {B.shape}")
    if n < 1 or n & (n - 1):
        raise ShapeError(f"dimension {n} is not a power of two")
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    if counter is None:
        counter = MulCounter()
    data = _mm_strassen(A._d, B._d, n, cutoff, A.field, counter)
    return DenseMatrix._wrap(A.field, data, n, n)


def split4(A: DenseMatrix):
    """Quadrants (A11, A12, A21, A22) of an even-dimension square matrix."""
    n = A.rows
    if A.cols != n:
        raise ShapeError(f"split4 needs a square matrix, got {A.shape}")
    if n == 0 or n % 2:
        raise ShapeError(f"split4 needs an even dimension, got {n}")
    h = n // 2
    d = A._d
    w = DenseMatrix._wrap
    f = A.field
    return (
        w(f, [r[:h] for r in d[:h]], h, h),
        w(f, [r[h:] for r in d[:h]], h, h),
        w(f, [r[:h] for r in d[h:]], h, h),
        w(f, [r[h:] for r in d[h:]], h, h),
    )


def join4(A11: DenseMatrix, A12: DenseMatrix, A21: DenseMatrix, A22: DenseMatrix) -> DenseMatrix:
    """Inverse of :func:`split4` for conformal quadrants."""
    f = A11.field
    for q in (A12, A21, A22):
        if q.field != f:
            raise FieldMismatchError("quadrants of mixed fields")
    if A11.rows != A12.rows or A21.rows != A22.rows:
        raise ShapeError("row counts of quadrants do not conform")
    if A11.cols != A21.cols or A12.cols != A22.cols:
        raise ShapeError("column counts of quadrants do not conform")
    data = [r1 + r2 for r1, r2 in zip(A11._d, A12._d)]
    data += [r1 + r2 for r1, r2 in zip(A21._d, A22._d)]
    return DenseMatrix._wrap(f, data, A11.rows + A21.rows, A11.cols + A12.cols)


def pad_to_pow2(A: DenseMatrix) -> DenseMatrix:
    """Embed A in the top-left corner of the next power-of-two square."""
    s = max(A.rows, A.cols, 1)
    m = 1 if s <= 1 else 1 << (s - 1).bit_length()
    if A.rows == m and A.cols == m:
        return A
    z = A.field.zero_raw
    pad = [z] * (m - A.cols)
    data = [row + pad for row in A._d]
    zrow = [z] * m
    data += [zrow[:] for _ in range(m - A.rows)]
    return DenseMatrix._wrap(A.field, data, m, m)


def _inv_lower_raw(d, n, field, counter):
    if n == 1:
        counter.scalar_invs += 1
        return [[field.inv(d[0][0])]]
    h = n // 2
    a = [r[:h] for r in d[:h]]
    c = [r[:h] for r in d[h:]]
    b = [r[h:] for r in d[h:]]
    ia = _inv_lower_raw(a, h, field, counter)
    ib = _inv_lower_raw(b, n - h, field, counter)
    m = _mm_rect_classical(c, ia, n - h, h, h, field, counter)
    m = _mm_rect_classical(ib, m, n - h, n - h, h, field, counter)
    vneg = field.vneg
    z = [field.zero_raw] * (n - h)
    out = [ra + z for ra in ia]
    out += [vneg(rm) + rb for rm, rb in zip(m, ib)]
    return out


def invert_lower_triangular(L: DenseMatrix, counter: MulCounter | None = None) -> DenseMatrix:
    """Exact inverse of a lower triangular matrix with nonzero diagonal.

    Recursive block scheme with multiplication-time complexity; diagonal
    inversions are counted as scalar inversions.
    """
    n = L.rows
    if L.cols != n:
        raise ShapeError(f"expected a square matrix, got {L.shape}")
    if not is_lower_triangular(L):
        raise ShapeError("matrix is not lower triangular")
    d = L._d
    for i in range(n):
        if not d[i][i]:
            raise SingularError(f"zero diagonal entry at position {i}")
    if counter is None:
        counter = MulCounter()
    if n == 0:
        return L
    data = _inv_lower_raw(d, n, L.field, counter)
    return DenseMatrix._wrap(L.field, data, n, n)


def _inv_upper_unit_raw(d, n, field, counter):
    if n == 1:
        return [[field.one_raw]]
    h = n // 2
    a = [r[:h] for r in d[:h]]
    b = [r[h:] for r in d[:h]]
    c = [r[h:] for r in d[h:]]
    ia = _inv_upper_unit_raw(a, h, field, counter)
    ic = _inv_upper_unit_raw(c, n - h, field, counter)
    m = _mm_rect_classical(ia, b, h, h, n - h, field, counter)
    m = _mm_rect_classical(m, ic, h, n - h, n - h, field, counter)
    vneg = field.vneg
    z = [field.zero_raw] * h
    out = [ra + vneg(rm) for ra, rm in zip(ia, m)]
    out += [z + rc for rc in ic]
    return out


def invert_upper_unitriangular(U: DenseMatrix, counter: MulCounter | None = None) -> DenseMatrix:
    """Exact inverse of an upper triangular matrix with unit diagonal."""
    n = U.rows
    if U.cols != n:
        raise ShapeError(f"expected a square matrix, got {U.shape}")
    if not is_upper_triangular(U):
        raise ShapeError("matrix is not upper triangular")
    one = U.field.one_raw
    for i in range(n):
        if U._d[i][i] != one:
            raise ValueError(f"diagonal entry at position {i} is not 1")
    if counter is None:
        counter = MulCounter()
    if n == 0:
        return U
    data = _inv_upper_unit_raw(U._d, n, U.field, counter)
    return DenseMatrix._wrap(U.field, data, n, n)
