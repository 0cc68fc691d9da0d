"""Dense matrix operations: arithmetic, products, counters, inverses."""

import random

import pytest

from leu import (
    QQ,
    DenseMatrix,
    FieldMismatchError,
    GF,
    MulCounter,
    ShapeError,
    SingularError,
    invert_lower_triangular,
    invert_upper_unitriangular,
    join4,
    mat_mul_classical,
    mat_mul_strassen,
    pad_to_pow2,
    split4,
)
from helpers import FIELDS, GF7, mul, rand_matrix

rng = random.Random(0xD15EA5E)


def test_add_identity_and_inverse():
    A = DenseMatrix(QQ, [[1, 2], [3, 4]])
    Z = DenseMatrix.zeros(QQ, 2, 2)
    assert A + Z == A
    assert A + (-A) == Z
    assert A - A == Z


def test_add_gf7_wraps():
    assert DenseMatrix(GF7, [[6]]) + DenseMatrix(GF7, [[3]]) == DenseMatrix(GF7, [[2]])


def test_add_shape_and_field_mismatch():
    A = DenseMatrix(GF7, [[1, 2]])
    with pytest.raises(ShapeError):
        A + DenseMatrix(GF7, [[1], [2]])
    with pytest.raises(FieldMismatchError):
        A + DenseMatrix(QQ, [[1, 2]])


def test_classical_identity():
    A = rand_matrix(GF7, 4, 4, rng)
    I = DenseMatrix.identity(GF7, 4)
    assert mul(I, A) == A
    assert mul(A, I) == A


def test_classical_worked_product():
    # [[3,1],[2,5]] times its inverse mod 7
    A = DenseMatrix(GF7, [[3, 1], [2, 5]])
    B = DenseMatrix(GF7, [[2, 1], [2, 4]])
    assert mul(A, B) == DenseMatrix.identity(GF7, 2)


def test_classical_count():
    c = MulCounter()
    A = rand_matrix(GF7, 8, 8, rng)
    mat_mul_classical(A, A, c)
    assert c.scalar_mults == 512
    c2 = MulCounter()
    mat_mul_classical(rand_matrix(GF7, 3, 5, rng), rand_matrix(GF7, 5, 2, rng), c2)
    assert c2.scalar_mults == 3 * 5 * 2


def test_classical_shape_error():
    with pytest.raises(ShapeError):
        mat_mul_classical(rand_matrix(GF7, 2, 3, rng), rand_matrix(GF7, 2, 3, rng))


@pytest.mark.parametrize("field", FIELDS)
@pytest.mark.parametrize("n", [1, 2, 4, 8])
def test_strassen_matches_classical(field, n):
    A = rand_matrix(field, n, n, rng)
    B = rand_matrix(field, n, n, rng)
    assert mat_mul_strassen(A, B, 2) == mul(A, B)


def test_strassen_counts():
    A = rand_matrix(GF(65521), 8, 8, rng)
    c = MulCounter()
    mat_mul_strassen(A, A, 1, c)
    assert c.scalar_mults == 343
    c = MulCounter()
    mat_mul_strassen(A, A, 8, c)
    assert c.scalar_mults == 512  # immediate classical fallback
    c = MulCounter()
    mat_mul_strassen(A, A, 4, c)
    assert c.scalar_mults == 7 * 64


def test_strassen_validation():
    A = rand_matrix(GF7, 3, 3, rng)
    with pytest.raises(ShapeError):
        mat_mul_strassen(A, A, 2)
    B = rand_matrix(GF7, 4, 4, rng)
    with pytest.raises(ValueError):
        mat_mul_strassen(B, B, 0)


def test_split_join_roundtrip():
    A = rand_matrix(QQ, 8, 8, rng)
    assert join4(*split4(A)) == A
    q = split4(DenseMatrix(GF7, [[1, 2], [3, 4]]))
    assert [m._d for m in q] == [[[1]], [[2]], [[3]], [[4]]]


def test_split4_odd_rejected():
    with pytest.raises(ShapeError):
        split4(rand_matrix(GF7, 3, 3, rng))
    with pytest.raises(ShapeError):
        split4(rand_matrix(GF7, 2, 4, rng))


def test_pad_to_pow2():
    A = rand_matrix(GF7, 3, 3, rng)
    P = pad_to_pow2(A)
    assert P.shape == (4, 4)
    assert P.select(range(3), range(3)) == A
    assert all(not v for v in P._d[3])
    B = rand_matrix(GF7, 4, 4, rng)
    assert pad_to_pow2(B) is B
    C = rand_matrix(GF7, 1, 1, rng)
    assert pad_to_pow2(C) is C
    R = rand_matrix(GF7, 2, 5, rng)
    assert pad_to_pow2(R).shape == (8, 8)


def test_invert_lower_identity():
    I = DenseMatrix.identity(GF7, 3)
    assert invert_lower_triangular(I) == I


def test_invert_lower_worked():
    L = DenseMatrix(GF7, [[5, 0], [2, 4]])
    Li = invert_lower_triangular(L)
    assert Li == DenseMatrix(GF7, [[3, 0], [2, 2]])
    assert mul(L, Li) == DenseMatrix.identity(GF7, 2)
    assert mul(Li, L) == DenseMatrix.identity(GF7, 2)


def test_invert_lower_singular():
    with pytest.raises(SingularError):
        invert_lower_triangular(DenseMatrix(GF7, [[1, 0], [0, 0]]))
    with pytest.raises(ShapeError):
        invert_lower_triangular(DenseMatrix(GF7, [[1, 1], [0, 1]]))


def test_invert_upper_unitriangular():
    U = DenseMatrix(QQ, [[1, 2], [0, 1]])
    assert invert_upper_unitriangular(U) == DenseMatrix(QQ, [[1, -2], [0, 1]])
    I = DenseMatrix.identity(QQ, 4)
    assert invert_upper_unitriangular(I) == I
    with pytest.raises(ValueError):
        invert_upper_unitriangular(DenseMatrix(QQ, [[2, 1], [0, 1]]))


@pytest.mark.parametrize("field", FIELDS)
def test_invert_random_triangulars(field):
    n = 8
    one = field.one_raw
    lo = [[rand_matrix(field, 1, 1, rng)._d[0][0] if j < i else (one if j == i else 0)
           for j in range(n)] for i in range(n)]
    for i in range(n):  # keep the diagonal nonzero
        if not lo[i][i]:
            lo[i][i] = one
    L = DenseMatrix(field, lo)
    assert mul(L, invert_lower_triangular(L)) == DenseMatrix.identity(field, n)
    up = [[rand_matrix(field, 1, 1, rng)._d[0][0] if j > i else (one if j == i else 0)
          for j in range(n)] for i in range(n)]
    U = DenseMatrix(field, up)
    c = MulCounter()
    Ui = invert_upper_unitriangular(U, c)
    assert mul(U, Ui) == DenseMatrix.identity(field, n)
    assert c.scalar_invs == 0


def test_inversion_counts_inversions():
    c = MulCounter()
    invert_lower_triangular(DenseMatrix(GF7, [[5, 0], [2, 4]]), c)
    assert c.scalar_invs == 2


def test_entries_are_scalars():
    A = DenseMatrix(GF7, [[3, 1], [2, 5]])
    assert A[0, 1] == GF7(1)
    assert A[1, 1].value == 5


def test_constructor_validation():
    with pytest.raises(ShapeError):
        DenseMatrix(GF7, [[1, 2], [3]])
    with pytest.raises(FieldMismatchError):
        DenseMatrix(GF7, [[QQ(1)]])
    with pytest.raises(TypeError):
        DenseMatrix(GF7, [[1.5]])
