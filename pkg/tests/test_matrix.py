"""Matrix layer tests: frozen eliminations plus randomized algebraic laws."""
from __future__ import annotations

import random

import pytest

from qgrs.errors import WrongShape
from qgrs.field import make_field
from qgrs.matrix import FMatrix


def _random_matrix(F, rng, nrows, ncols):
    return FMatrix(F, [[rng.randrange(F.order) for _ in range(ncols)]
                       for _ in range(nrows)])


def test_frozen_rref_over_prime_subfield():
    # arithmetic on {0,1,2} inside GF(9) is plain mod-3 arithmetic
    F = make_field(3, 1)
    A = FMatrix(F, [[1, 2, 0], [0, 1, 1]])
    R, pivots = A.rref()
    assert pivots == (0, 1)
    assert R.rows == ((1, 0, 1), (0, 1, 1))


def test_identity_and_zeros():
    F = make_field(5, 1)
    I = FMatrix.identity(F, 4)
    assert I.rank() == 4
    assert I.nullspace() == ()
    Z = FMatrix.zeros(F, 3, 5)
    assert Z.rank() == 0
    assert len(Z.nullspace()) == 5
    assert Z.is_zero()


def test_empty_matrix_needs_ncols():
    F = make_field(3, 1)
    with pytest.raises(WrongShape):
        FMatrix(F, [])
    E = FMatrix(F, [], ncols=4)
    assert E.shape == (0, 4)
    assert E.rank() == 0
    # kernel of a 0 x n map is everything
    ns = E.nullspace()
    assert len(ns) == 4


def test_nullspace_vectors_are_solutions():
    rng = random.Random(7)
    F = make_field(3, 1)
    for _ in range(40):
        A = _random_matrix(F, rng, rng.randrange(1, 5), rng.randrange(1, 6))
        ns = A.nullspace()
        assert len(ns) == A.ncols - A.rank()
        for v in ns:
            assert all(c == 0 for c in A.mul_vec(v))


def test_rref_is_idempotent_and_row_equivalent():
    rng = random.Random(11)
    F = make_field(2, 2)
    for _ in range(30):
        A = _random_matrix(F, rng, rng.randrange(1, 5), rng.randrange(1, 6))
        R, _ = A.rref()
        R2, _ = R.rref()
        assert R == R2
        assert A.row_equivalent(R)


def test_row_equivalence_under_random_row_ops():
    rng = random.Random(13)
    F = make_field(5, 1)
    A = _random_matrix(F, rng, 3, 5)
    rows = [list(r) for r in A.rows]
    # scale a row and add a multiple of another
    c = rng.randrange(1, F.order)
    rows[1] = [F.mul_codes(c, x) for x in rows[1]]
    f = rng.randrange(F.order)
    rows[2] = [F.add_codes(a, F.mul_codes(f, b)) for a, b in zip(rows[2], rows[0])]
    B = FMatrix(F, rows)
    assert A.row_equivalent(B)
    # a generically perturbed matrix is not
    rows[0] = [F.add_codes(x, 1) for x in rows[0]]
    C = FMatrix(F, rows)
    assert not A.row_equivalent(C) or C.rref()[0] == A.rref()[0]


def test_vandermonde_rank():
    # distinct evaluation points give full rank — classical, used as oracle
    F = make_field(7, 1)
    pts = [F.from_log(i) for i in range(6)]
    V = FMatrix.from_felts([[x ** j for j in range(4)] for x in pts])
    assert V.rank() == 4
    W = FMatrix.from_felts([[x ** j for j in range(8)] for x in pts])
    assert W.rank() == 6


def test_delete_column_and_submatrix():
    F = make_field(3, 1)
    A = FMatrix(F, [[1, 2, 3], [4, 5, 6]])
    B = A.delete_column(1)
    assert B.rows == ((1, 3), (4, 6))
    S = A.submatrix([1], [0, 2])
    assert S.rows == ((4, 6),)
    with pytest.raises(WrongShape):
        A.delete_column(3)


def test_entrywise_frobenius_is_involution_here():
    rng = random.Random(3)
    F = make_field(3, 1)
    A = _random_matrix(F, rng, 3, 3)
    B = A.entrywise_frobenius()
    assert B.entrywise_frobenius() == A
    for i in range(3):
        for j in range(3):
            assert B.entry(i, j) == A.entry(i, j) ** F.q


def test_matmul_and_mul_vec_agree():
    rng = random.Random(23)
    F = make_field(5, 1)
    A = _random_matrix(F, rng, 3, 4)
    v = [rng.randrange(F.order) for _ in range(4)]
    col = FMatrix(F, [[x] for x in v])
    prod = A.matmul(col)
    assert tuple(r[0] for r in prod.rows) == A.mul_vec(v)


def test_block_diag_rank_adds():
    rng = random.Random(5)
    F = make_field(3, 1)
    A = _random_matrix(F, rng, 2, 3)
    B = _random_matrix(F, rng, 3, 2)
    D = FMatrix.block_diag(F, [A, B])
    assert D.shape == (5, 5)
    assert D.rank() == A.rank() + B.rank()
    assert D.submatrix(range(2), range(3)) == A


def test_transpose_involution():
    rng = random.Random(31)
    F = make_field(2, 2)
    A = _random_matrix(F, rng, 2, 5)
    assert A.transpose().transpose() == A
    assert A.transpose().shape == (5, 2)
