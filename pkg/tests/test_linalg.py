import random
from itertools import permutations, product

import pytest
from hypothesis import given, strategies as st

from frobenius_descent.errors import Singular
from frobenius_descent.field import Field, embedding
from frobenius_descent.linalg import MatrixF, block_diag, nullspace, solve_or_invert

SMALL = [(2, 1), (2, 2), (3, 1), (4, 1), (3, 2)]


def leibniz_det(M):
    F = M.field
    n = M.rows
    total = F.zero
    for perm in permutations(range(n)):
        inversions = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        term = F.one
        for i, j in enumerate(perm):
            term = term * M[i, j]
        total = total - term if inversions % 2 else total + term
    return total


def kernel_size_brute(M):
    F = M.field
    count = 0
    for v in product(F.elements(), repeat=M.cols):
        if all(x == F.zero for x in M.apply(list(v))):
            count += 1
    return count


@given(st.sampled_from(SMALL), st.integers(0, 10**6), st.integers(1, 3), st.integers(1, 3))
def test_rank_nullity_against_enumeration(qm, seed, r, c):
    F = Field.of(*qm)
    M = MatrixF.random(F, r, c, random.Random(seed))
    ker = nullspace(M)
    assert M.rank() + len(ker) == c
    for v in ker:
        assert all(x == F.zero for x in M.apply(v))
    if F.order ** c <= 729:
        assert kernel_size_brute(M) == F.order ** len(ker)


@given(st.sampled_from(SMALL + [(8, 1), (5, 2)]), st.integers(0, 10**6), st.integers(1, 4))
def test_inverse_and_det(qm, seed, n):
    F = Field.of(*qm)
    rng = random.Random(seed)
    A = MatrixF.random(F, n, n, rng)
    assert A.det() == leibniz_det(A)
    if A.det():
        assert A @ A.inverse() == MatrixF.identity(F, n)
        assert solve_or_invert(A) == A.inverse()
    else:
        with pytest.raises(Singular) as exc:
            A.inverse()
        assert exc.value.rank == A.rank()


def test_solve_consistent_and_inconsistent():
    F = Field.of(3, 1)
    A = MatrixF(F, [[1, 2], [2, 1]])
    b = [F(1), F(2)]
    x = solve_or_invert(A, b)
    assert A.apply(x) == b
    S = MatrixF(F, [[1, 1], [1, 1]])
    with pytest.raises(Singular):
        S.solve([F(1), F(0)])


def test_frobenius_commutes_with_products(rng):
    F = Field.of(2, 3)
    A, B = MatrixF.random(F, 3, 3, rng), MatrixF.random(F, 3, 3, rng)
    assert (A @ B).frobenius(1) == A.frobenius(1) @ B.frobenius(1)
    assert A.frobenius(3) == A


def test_embed_is_multiplicative(rng):
    S, T = Field.of(2, 2), Field.of(2, 4)
    emb = embedding(S, T)
    A, B = MatrixF.random(S, 2, 2, rng), MatrixF.random(S, 2, 2, rng)
    assert (A @ B).embed(emb) == A.embed(emb) @ B.embed(emb)


def test_block_diag_and_transpose(rng):
    F = Field.of(5, 1)
    A, B = MatrixF.random(F, 2, 2, rng), MatrixF.random(F, 1, 1, rng)
    D = block_diag(A, B)
    assert D.shape == (3, 3)
    assert D.T.T == D
    assert D[2, 2] == B[0, 0] and D[0, 2] == F.zero


def test_scale_with_integer_means_prime_constant():
    F = Field.of(4, 1)
    A = MatrixF.identity(F, 2)
    assert A.scale(3) == A  # 3 = 1 in characteristic two
