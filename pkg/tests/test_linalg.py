from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from terracini.linalg import (
    DEFAULT_PRIME,
    SECOND_PRIME,
    Matrix,
    MultiPrimeRank,
    inv_mod,
    is_prime,
    multi_prime_rank,
    rank,
    rank_and_left_kernel,
    sqrt_mod,
)
from terracini.rng import Rng


def random_matrix(rows, cols, p, seed):
    rng = Rng(seed)
    a = np.asarray(
        [[rng.field(p) for _ in range(cols)] for _ in range(rows)], dtype=np.int64
    )
    return Matrix(rows, cols, p, a)


def test_identity_rank():
    prof = rank_and_left_kernel(Matrix.identity(3, 101))
    assert prof.rank == 3
    assert prof.left_kernel_basis == ()


def test_duplicate_rows_kernel():
    m = Matrix.from_rows([[1, 2, 3], [1, 2, 3]], 101)
    prof = rank_and_left_kernel(m)
    assert prof.rank == 1
    assert len(prof.left_kernel_basis) == 1
    v = prof.left_kernel_basis[0]
    # The basis vector is (1, -1) up to the elimination's normalization.
    assert (v[0] + v[1]) % 101 == 0 and v[0] != 0


def test_kernel_annihilates_exactly():
    for seed in range(5):
        m = random_matrix(10, 15, DEFAULT_PRIME, seed)
        prof = rank_and_left_kernel(m)
        assert prof.rank + len(prof.left_kernel_basis) == m.rows
        for v in prof.left_kernel_basis:
            prod = (np.asarray(v, dtype=np.int64) @ m.entries) % m.p
            assert not prod.any()


def test_rank_invariant_under_row_permutation():
    rng = Rng(77)
    m = random_matrix(10, 15, DEFAULT_PRIME, 42)
    base = rank(m)
    for _ in range(5):
        perm = list(range(10))
        for i in range(9, 0, -1):
            j = rng.below(i + 1)
            perm[i], perm[j] = perm[j], perm[i]
        shuffled = Matrix(10, 15, m.p, m.entries[perm])
        assert rank(shuffled) == base


@given(st.integers(0, 2**32), st.integers(2, 6), st.integers(2, 6))
@settings(max_examples=25, deadline=None)
def test_rank_invariant_under_transpose_like_permutations(seed, r, c):
    m = random_matrix(r, c, 101, seed)
    rng = Rng(seed + 1)
    perm = list(range(c))
    for i in range(c - 1, 0, -1):
        j = rng.below(i + 1)
        perm[i], perm[j] = perm[j], perm[i]
    permuted = Matrix(r, c, m.p, m.entries[:, perm])
    assert rank(m) == rank(permuted)


def test_block_diag_rank_adds():
    a = random_matrix(4, 6, DEFAULT_PRIME, 1)
    b = random_matrix(5, 3, DEFAULT_PRIME, 2)
    blocks = np.zeros((9, 9), dtype=np.int64)
    blocks[:4, :6] = a.entries
    blocks[4:, 6:] = b.entries
    m = Matrix(9, 9, DEFAULT_PRIME, blocks)
    assert rank(m) == rank(a) + rank(b)


def test_rank_deficient_recipe_agrees_across_primes():
    def builder(p):
        return Matrix.from_rows([[1, 2, 3], [2, 4, 6], [0, 1, 1]], p)

    res = multi_prime_rank(builder, (101, 103))
    assert res.rank == 2
    assert not res.disagree


def test_identity_recipe_multi_prime():
    res = multi_prime_rank(lambda p: Matrix.identity(3, p), (101, 103))
    assert res.rank == 3
    assert not res.disagree


def test_seeded_double_point_recipe_agrees_on_big_primes():
    def builder(p):
        rng = Rng(424242)
        a = np.asarray(
            [[rng.field(p) for _ in range(35)] for _ in range(20)], dtype=np.int64
        )
        return Matrix(20, 35, p, a)

    res = multi_prime_rank(builder, (DEFAULT_PRIME, SECOND_PRIME))
    assert res.rank == 20
    assert not res.disagree


def test_multi_prime_needs_two_primes():
    with pytest.raises(ValueError):
        multi_prime_rank(lambda p: Matrix.identity(2, p), (101, 101))


def test_disagreement_is_flagged():
    def builder(p):
        # det = 101, so the rank drops mod 101 only.
        return Matrix.from_rows([[1, 1], [1, 102]], p)

    res = multi_prime_rank(builder, (101, 103))
    assert res.disagree
    assert res.rank == 2
    assert dict(res.per_prime) == {101: 1, 103: 2}


def test_inv_and_sqrt_mod():
    for p in (DEFAULT_PRIME, SECOND_PRIME, 101):
        assert is_prime(p)
        for a in (2, 5, 1234567):
            assert a * inv_mod(a, p) % p == 1
            r = sqrt_mod(a * a % p, p)
            assert r is not None and r * r % p == a * a % p
    assert sqrt_mod(0, 101) == 0
    # 2 is a non-residue mod 101? 101 % 8 == 5 -> yes.
    assert sqrt_mod(2, 101) is None
