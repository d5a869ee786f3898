"""Sparse GF(2) linear algebra on bit-packed integer rows.

A matrix stores each row as a Python int bitmask (bit c set means entry 1 in
column c).  Elimination always picks the lowest available pivot column, so
ranks, kernels, and solutions are deterministic for a fixed row order.
"""
from __future__ import annotations

from typing import Iterable, List, Optional


class SparseMatF2:
    """A matrix over GF(2) with bit-packed rows.

    >>> m = SparseMatF2([0b11, 0b10], 2)
    >>> m.rank()
    2
    >>> SparseMatF2([0b11, 0b11], 2).rank()
    1
    """

    __slots__ = ("rows", "ncols")

    def __init__(self, rows: Iterable[int], ncols: int):
        self.rows: List[int] = list(rows)
        self.ncols = ncols
        mask = (1 << ncols) - 1
        for r in self.rows:
            if r & ~mask:
                raise ValueError("row has bits beyond ncols")

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Iterable[tuple[int, int]]) -> "SparseMatF2":
        """Build from (row, col) positions of the 1-entries."""
        rows = [0] * nrows
        for r, c in entries:
            rows[r] ^= 1 << c
        return cls(rows, ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def transpose(self) -> "SparseMatF2":
        out = [0] * self.ncols
        for i, row in enumerate(self.rows):
            r = row
            while r:
                low = r & -r
                c = low.bit_length() - 1
                out[c] |= 1 << i
                r ^= low
        return SparseMatF2(out, len(self.rows))

    def mul_vec(self, v: int) -> int:
        """Matrix-vector product; v is a bitmask over columns."""
        out = 0
        for i, row in enumerate(self.rows):
            if (row & v).bit_count() & 1:
                out |= 1 << i
        return out

    def _rref(self, aug: Optional[List[int]] = None) -> tuple[List[int], List[int], Optional[List[int]]]:
        """Reduced row echelon form; returns (rows, pivot columns, aug rows)."""
        work = self.rows[:]
        aug_work = aug[:] if aug is not None else None
        pivots: List[int] = []
        row_idx = 0
        for col in range(self.ncols):
            pivot = None
            for r in range(row_idx, len(work)):
                if (work[r] >> col) & 1:
                    pivot = r
                    break
            if pivot is None:
                continue
            work[row_idx], work[pivot] = work[pivot], work[row_idx]
            if aug_work is not None:
                aug_work[row_idx], aug_work[pivot] = aug_work[pivot], aug_work[row_idx]
            for r in range(len(work)):
                if r != row_idx and (work[r] >> col) & 1:
                    work[r] ^= work[row_idx]
                    if aug_work is not None:
                        aug_work[r] ^= aug_work[row_idx]
            pivots.append(col)
            row_idx += 1
            if row_idx == len(work):
                break
        return work, pivots, aug_work

    def rank(self) -> int:
        _, pivots, _ = self._rref()
        return len(pivots)

    def kernel_basis(self) -> List[int]:
        """Basis vectors (column bitmasks) of {v : M v = 0}, one per free column."""
        rows, pivots, _ = self._rref()
        pivot_set = set(pivots)
        basis: List[int] = []
        for free in range(self.ncols):
            if free in pivot_set:
                continue
            vec = 1 << free
            for r, pc in enumerate(pivots):
                if (rows[r] >> free) & 1:
                    vec |= 1 << pc
            basis.append(vec)
        return basis

    def solve(self, b: int) -> Optional[int]:
        """One solution v of M v = b (free variables 0), or None if inconsistent."""
        rows, pivots, aug = self._rref([(b >> i) & 1 for i in range(len(self.rows))])
        assert aug is not None
        for r in range(len(rows)):
            if rows[r] == 0 and aug[r]:
                return None
        v = 0
        for r, pc in enumerate(pivots):
            if aug[r]:
                v |= 1 << pc
        return v


def reduce_against(vec: int, basis_rows: List[int]) -> int:
    """Reduce vec modulo the row space spanned by basis_rows (assumed RREF-like).

    Rows are processed in order; each row clears its lowest set bit from vec.
    """
    for row in basis_rows:
        if row == 0:
            continue
        lead = (row & -row).bit_length() - 1
        if (vec >> lead) & 1:
            vec ^= row
    return vec


def row_space_basis(rows: List[int]) -> List[int]:
    """Independent RREF rows spanning the same space, lowest-lead-bit first."""
    basis: List[int] = []
    for row in rows:
        for b in basis:
            lead = (b & -b).bit_length() - 1
            if (row >> lead) & 1:
                row ^= b
        if row:
            basis.append(row)
            basis.sort(key=lambda r: (r & -r).bit_length())
    # back-eliminate for canonical form
    for i, b in enumerate(basis):
        for j, other in enumerate(basis):
            if i != j:
                lead = (b & -b).bit_length() - 1
                if (other >> lead) & 1:
                    basis[j] = other ^ b
    return basis


__all__ = ["SparseMatF2", "reduce_against", "row_space_basis"]
