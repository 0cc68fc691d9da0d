"""Shared builders for randomized tests.

All randomness flows through explicit random.Random instances so every
test is reproducible.
"""

from __future__ import annotations

import random

from leu import QQ, DenseMatrix, GF, MulCounter, mat_mul_classical

GF7 = GF(7)
GF65521 = GF(65521)
FIELDS = (GF7, GF65521, QQ)


def rand_matrix(field, rows: int, cols: int, rng: random.Random) -> DenseMatrix:
    if field.kind == "gfp":
        p = field.modulus
        data = [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)]
    else:
        data = [[field.canon(rng.randint(-9, 9)) for _ in range(cols)] for _ in range(rows)]
    return DenseMatrix._wrap(field, data, rows, cols)


def planted_rank(field, n: int, r: int, rng: random.Random) -> DenseMatrix:
    """Random n x n matrix of rank at most r, as a product of thin factors."""
    if r == 0:
        return DenseMatrix.zeros(field, n, n)
    P = rand_matrix(field, n, r, rng)
    Q = rand_matrix(field, r, n, rng)
    return mat_mul_classical(P, Q, MulCounter())


def mul(A: DenseMatrix, B: DenseMatrix) -> DenseMatrix:
    return mat_mul_classical(A, B, MulCounter())
