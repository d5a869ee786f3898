"""Tests for sparse linear algebra over GF(2) with int-bitset rows."""
from __future__ import annotations

import random

from starcob.gf2la import SparseMatF2, reduce_against, row_space_basis


def _vec(bits):
    v = 0
    for b in bits:
        v |= 1 << b
    return v


def test_from_entries_and_mul_vec():
    # Rows: [1 1 0], [0 1 1].
    m = SparseMatF2.from_entries(2, 3, [(0, 0), (0, 1), (1, 1), (1, 2)])
    assert m.nrows == 2
    assert m.ncols == 3
    assert m.mul_vec(_vec([0])) == _vec([0])
    assert m.mul_vec(_vec([1])) == _vec([0, 1])
    assert m.mul_vec(_vec([0, 1, 2])) == 0
    assert m.mul_vec(_vec([0, 2])) == _vec([0, 1])


def test_rank_and_kernel_hand_checked():
    # [1 0 1; 0 1 1; 1 1 0] has rank 2 and kernel spanned by (1,1,1).
    m = SparseMatF2([_vec([0, 2]), _vec([1, 2]), _vec([0, 1])], 3)
    assert m.rank() == 2
    kernel = m.kernel_basis()
    assert kernel == [_vec([0, 1, 2])]
    for k in kernel:
        assert m.mul_vec(k) == 0


def test_solve():
    m = SparseMatF2([_vec([0, 2]), _vec([1, 2]), _vec([0, 1])], 3)
    # b = first column + second column: rows hit (0, 2) of b? Solve m x = b.
    x = m.solve(_vec([0, 1]))
    assert x is not None
    assert m.mul_vec(x) == _vec([0, 1])
    # The all-ones target is outside the column space of this rank-2 matrix
    # only if it fails elimination; verify consistency of the answer instead.
    for target in range(8):
        x = m.solve(target)
        if x is not None:
            assert m.mul_vec(x) == target


def test_transpose():
    m = SparseMatF2.from_entries(2, 3, [(0, 0), (0, 2), (1, 1)])
    t = m.transpose()
    assert t.nrows == 3
    assert t.ncols == 2
    assert t.rows == [_vec([0]), _vec([1]), _vec([0])]


def test_reduce_against_and_row_space_basis():
    basis = row_space_basis([_vec([0, 1]), _vec([1, 2]), _vec([0, 2])])
    assert len(basis) == 2
    assert reduce_against(_vec([0, 2]), basis) == 0
    assert reduce_against(_vec([0]), basis) != 0
    assert reduce_against(0, basis) == 0


def test_rank_nullity_random():
    rng = random.Random(42)
    for _ in range(50):
        nrows = rng.randrange(1, 8)
        ncols = rng.randrange(1, 8)
        rows = [rng.getrandbits(ncols) for _ in range(nrows)]
        m = SparseMatF2(rows, ncols)
        kernel = m.kernel_basis()
        assert m.rank() + len(kernel) == ncols
        for k in kernel:
            assert m.mul_vec(k) == 0
        # Kernel vectors are linearly independent.
        assert len(row_space_basis(kernel)) == len(kernel)


def test_solve_roundtrip_random():
    rng = random.Random(99)
    for _ in range(50):
        nrows = rng.randrange(1, 7)
        ncols = rng.randrange(1, 7)
        rows = [rng.getrandbits(ncols) for _ in range(nrows)]
        m = SparseMatF2(rows, ncols)
        x = rng.getrandbits(ncols)
        b = m.mul_vec(x)
        y = m.solve(b)
        assert y is not None
        assert m.mul_vec(y) == b
