import random
from fractions import Fraction

import numpy as np
import pytest

from baxref.linalg import (
    Matrix,
    SingularMatrixError,
    char_polynomial,
    embed,
    embed_sites,
    flip,
    insert_identity,
    kron,
    minimal_polynomial,
    partial_trace,
    poly_eval_matrix,
    rational_roots,
    weighted_partial_trace,
)
from baxref.linalg import _kernels as K
from baxref.scalars import Scalar


def rand_matrix(n, seed, factors=None, big=False):
    rng = random.Random(seed)
    top = 10**40 if big else 9
    rows = [[Fraction(rng.randint(-top, top), rng.randint(1, 9)) for _ in range(n)] for _ in range(n)]
    return Matrix.from_entries(rows, factors or (n,))


def test_inverse_and_rank():
    A = rand_matrix(6, 1)
    assert A @ A.inverse() == Matrix.identity(6)
    assert A.rank() == 6
    S = Matrix.from_entries([[1, 2], [2, 4]])
    assert S.rank() == 1
    with pytest.raises(SingularMatrixError):
        S.inverse()


def test_quadratic_field_matrices():
    r2 = Scalar(0, 1, 2)
    A = Matrix.from_entries([[1, r2], [r2, 3]])
    Ainv = A.inverse()
    assert A @ Ainv == Matrix.identity(2)
    assert (A @ A)[0, 1] == r2 * 4


def test_json_roundtrip():
    A = Matrix.from_entries([[Fraction(1, 3), Scalar(1, 2, 5)], [0, -7]], (2,))
    assert Matrix.from_json(A.to_json()) == A


@pytest.mark.parametrize("n", [4, 25, 40])
def test_multimodular_product_is_exact(n):
    rng = random.Random(n)
    a = np.array([[rng.randint(-10**300, 10**300) for _ in range(n)] for _ in range(n)], dtype=object)
    b = np.array([[rng.randint(-10**300, 10**300) for _ in range(n)] for _ in range(n)], dtype=object)
    ref = a.dot(b)
    assert (K.int_matmul(a, b) == ref).all()
    bound = n * K._max_abs(a) * K._max_abs(b)
    assert (K._multimodular(a, b, bound) == ref).all()


def test_numba_and_numpy_kernels_agree():
    p = K.PRIMES[3]
    rng = np.random.default_rng(0)
    a = rng.integers(0, p, size=(37, 53), dtype=np.int64)
    b = rng.integers(0, p, size=(53, 29), dtype=np.int64)
    ref = (a.astype(object).dot(b.astype(object))) % p
    assert (K.matmul_mod_numpy(a, b, p).astype(object) == ref).all()
    assert (K.matmul_mod(a, b, p).astype(object) == ref).all()


def test_kron_embed_and_flip():
    A, B = rand_matrix(2, 3), rand_matrix(2, 4)
    AB = kron(A, B)
    assert AB.factors == (2, 2)
    assert embed(A, 1, (2, 2)) @ embed(B, 2, (2, 2)) == AB
    P = flip(2)
    assert P @ AB @ P == kron(B, A)
    # two-site operator on sites (1, 3) of three
    E = embed_sites(AB, [1, 3], (2, 2, 2))
    assert E == kron(A, Matrix.identity(2), B)


def test_partial_traces():
    A, B = rand_matrix(2, 5), rand_matrix(3, 6)
    AB = kron(A, B)
    assert partial_trace(AB, 2) == A.scale(B.trace())
    assert partial_trace(AB, 1) == B.scale(A.trace())
    W = rand_matrix(3, 7)
    assert weighted_partial_trace(AB, 2, W) == A.scale((W @ B).trace())
    assert insert_identity(A, 2, 3) == kron(A, Matrix.identity(3))


def test_polynomials():
    A = Matrix.diag([1, 2, 2])
    cp = char_polynomial(A)
    assert rational_roots(cp) == [(Fraction(1), 1), (Fraction(2), 2)]
    mp = minimal_polynomial(A)
    assert [Fraction(str(c)) for c in mp] == [2, -3, 1]
    assert poly_eval_matrix(mp, A).is_zero()
    M = rand_matrix(5, 11)
    assert poly_eval_matrix(char_polynomial(M), M).is_zero()
