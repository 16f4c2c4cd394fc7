import random

import pytest

from subspace_forge.gf import make_field
from subspace_forge.matgf import (
    MatrixGF,
    kernel_basis,
    mat_vec,
    rank,
    rank_of_stack,
    rref,
    stack,
)

FIELDS = [make_field(2), make_field(3), make_field(2, 2), make_field(5)]


def random_matrix(field, rows, cols, rng):
    return MatrixGF(field, rows, cols, tuple(rng.randrange(field.q) for _ in range(rows * cols)))


# ---------------------------------------------------------------------------
# rref
# ---------------------------------------------------------------------------


def test_rref_identity(f5):
    I = MatrixGF.identity(f5, 3)
    R, rk, piv = rref(I)
    assert R == I
    assert rk == 3
    assert piv == (0, 1, 2)


def test_rref_zero(f5):
    Z = MatrixGF.zeros(f5, 2, 4)
    R, rk, piv = rref(Z)
    assert R == Z
    assert rk == 0
    assert piv == ()


def test_rref_vandermonde_rank(f5):
    # nodes 1, 2, 3: determinant (2-1)(3-1)(3-2) = 2 != 0 mod 5
    V = MatrixGF.from_rows(f5, [[1, 1, 1], [1, 2, 4], [1, 3, 4]])
    _, rk, _ = rref(V)
    assert rk == 3


def test_rref_idempotent():
    rng = random.Random(42)
    for field in FIELDS:
        for _ in range(25):
            M = random_matrix(field, rng.randrange(1, 5), rng.randrange(1, 6), rng)
            R, rk, piv = rref(M)
            R2, rk2, piv2 = rref(R)
            assert (R2, rk2, piv2) == (R, rk, piv)


def test_rref_pivots_strictly_increasing():
    rng = random.Random(7)
    for field in FIELDS:
        for _ in range(25):
            M = random_matrix(field, rng.randrange(1, 5), rng.randrange(1, 6), rng)
            _, rk, piv = rref(M)
            assert len(piv) == rk
            assert all(a < b for a, b in zip(piv, piv[1:]))


# ---------------------------------------------------------------------------
# kernel
# ---------------------------------------------------------------------------


def test_kernel_of_sum_row(f5):
    K = kernel_basis(MatrixGF.from_rows(f5, [[1, 1]]))
    assert K.row_list() == [(1, 4)]  # (1, -1) canonicalized


def test_kernel_of_full_rank_square(f5):
    K = kernel_basis(MatrixGF.identity(f5, 3))
    assert K.rows == 0


def test_kernel_of_empty_matrix_is_identity(f5):
    # no constraints: kernel is the whole space, canonical basis I
    K = kernel_basis(MatrixGF(f5, 0, 3, ()))
    assert K == MatrixGF.identity(f5, 3)


def test_kernel_rows_annihilate():
    rng = random.Random(3)
    for field in FIELDS:
        for _ in range(25):
            M = random_matrix(field, rng.randrange(1, 4), rng.randrange(1, 6), rng)
            K = kernel_basis(M)
            for r in range(K.rows):
                assert mat_vec(M, K.row(r)) == (0,) * M.rows


def test_rank_nullity():
    rng = random.Random(11)
    for field in FIELDS:
        for _ in range(40):
            M = random_matrix(field, rng.randrange(1, 5), rng.randrange(1, 6), rng)
            assert rank(M) + kernel_basis(M).rows == M.cols


def test_kernel_is_canonical():
    rng = random.Random(5)
    for field in FIELDS:
        for _ in range(20):
            M = random_matrix(field, rng.randrange(1, 4), rng.randrange(1, 5), rng)
            K = kernel_basis(M)
            if K.rows:
                R, rk, _ = rref(K)
                assert R == K and rk == K.rows


# ---------------------------------------------------------------------------
# stacking
# ---------------------------------------------------------------------------


def test_rank_of_stack_self(f5):
    M = MatrixGF.from_rows(f5, [[1, 2, 0], [0, 0, 1]])
    assert rank_of_stack(M, M) == rank(M) == 2


def test_rank_of_stack_disjoint_lines(f2):
    A = MatrixGF.from_rows(f2, [[1, 0, 0]])
    B = MatrixGF.from_rows(f2, [[0, 1, 0]])
    assert rank_of_stack(A, B) == 2


def test_rank_of_stack_vandermonde_rows(f5):
    # rows (1, t, t^2) for distinct t have full rank
    A = MatrixGF.from_rows(f5, [[1, 1, 1], [1, 2, 4]])
    B = MatrixGF.from_rows(f5, [[1, 3, 4]])
    assert rank_of_stack(A, B) == 3


def test_rank_of_stack_mismatch(f2, f5):
    A = MatrixGF.from_rows(f2, [[1, 0]])
    B = MatrixGF.from_rows(f5, [[1, 0]])
    with pytest.raises(ValueError):
        rank_of_stack(A, B)
    C = MatrixGF.from_rows(f2, [[1, 0, 0]])
    with pytest.raises(ValueError):
        rank_of_stack(A, C)


def test_stack_shape(f3):
    A = MatrixGF.from_rows(f3, [[1, 0], [0, 1]])
    B = MatrixGF.from_rows(f3, [[2, 2]])
    S = stack(A, B)
    assert (S.rows, S.cols) == (3, 2)
    assert S.row(2) == (2, 2)


def test_dimension_formula_random_spaces():
    # dim A + dim B == dim(A+B) + dim(A cap B), with the intersection
    # computed through the orthogonal-kernel route: A cap B is the kernel
    # of the stacked kernels of A and B.
    rng = random.Random(2024)
    fields = {2: make_field(2), 3: make_field(3), 4: make_field(2, 2), 5: make_field(5)}
    trials = 0
    while trials < 200:
        q = rng.choice([2, 3, 4, 5])
        field = fields[q]
        n = rng.randrange(2, 7)
        A = random_matrix(field, rng.randrange(1, n + 1), n, rng)
        B = random_matrix(field, rng.randrange(1, n + 1), n, rng)
        ra, rb = rank(A), rank(B)
        if ra == 0 or rb == 0:
            continue
        dim_sum = rank_of_stack(A, B)
        KA, KB = kernel_basis(A), kernel_basis(B)
        dim_int = kernel_basis(stack(KA, KB)).rows if (KA.rows or KB.rows) else 0
        if KA.rows == 0 and KB.rows == 0:
            dim_int = n
        assert ra + rb == dim_sum + dim_int
        trials += 1


def test_matrix_validation(f3):
    with pytest.raises(ValueError):
        MatrixGF(f3, 2, 2, (0, 1, 2))  # wrong entry count
    with pytest.raises(ValueError):
        MatrixGF(f3, 1, 2, (0, 3))  # out of range
    with pytest.raises(ValueError):
        MatrixGF.from_rows(f3, [[0, 1], [2]])  # ragged


def test_mat_vec(f5):
    M = MatrixGF.from_rows(f5, [[1, 2], [3, 4]])
    assert mat_vec(M, (1, 1)) == (3, 2)
    with pytest.raises(ValueError):
        mat_vec(M, (1, 1, 1))


def test_json_roundtrip(f5):
    M = MatrixGF.from_rows(f5, [[1, 2, 3], [0, 4, 1]])
    obj = M.to_json()
    assert MatrixGF.from_json(f5, obj) == M
