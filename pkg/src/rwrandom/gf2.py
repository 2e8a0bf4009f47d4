"""Packed binary linear algebra over GF(2).

Rows are Python ints used as bit vectors: bit ``j`` of ``rows[i]`` is entry
``(i, j)``.  Everything here is pure; matrices and bases are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

MAX_COLS = 4096


@dataclass(frozen=True)
class BitMatrix:
    n_rows: int
    n_cols: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n_rows < 0 or self.n_cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if self.n_cols > MAX_COLS:
            raise ValueError(f"at most {MAX_COLS} columns supported, got {self.n_cols}")
        if len(self.rows) != self.n_rows:
            raise ValueError(f"expected {self.n_rows} rows, got {len(self.rows)}")
        limit = 1 << self.n_cols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise ValueError("row has bits set beyond n_cols")

    @classmethod
    def from_rows(cls, rows: Sequence[int], n_cols: int) -> "BitMatrix":
        return cls(len(rows), n_cols, tuple(int(r) for r in rows))

    @classmethod
    def from_array(cls, a) -> "BitMatrix":
        a = np.asarray(a, dtype=np.uint8) & 1
        if a.ndim != 2:
            raise ValueError("expected a 2-d array")
        k1, k2 = a.shape
        weights = [1 << j for j in range(k2)]
        rows = tuple(sum(w for w, bit in zip(weights, row) if bit) for row in a.tolist())
        return cls(k1, k2, rows)

    @classmethod
    def from_strings(cls, strings: Sequence[str]) -> "BitMatrix":
        """Build from strings like ``"1010"``; character ``j`` is column ``j``."""
        n_cols = len(strings[0]) if strings else 0
        rows = []
        for s in strings:
            if len(s) != n_cols:
                raise ValueError("ragged rows")
            rows.append(sum(1 << j for j, ch in enumerate(s) if ch == "1"))
        return cls(len(rows), n_cols, tuple(rows))

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> "BitMatrix":
        return cls(n_rows, n_cols, (0,) * n_rows)

    @classmethod
    def ones(cls, n_rows: int, n_cols: int) -> "BitMatrix":
        return cls(n_rows, n_cols, ((1 << n_cols) - 1,) * n_rows)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def to_array(self) -> np.ndarray:
        out = np.zeros((self.n_rows, self.n_cols), dtype=np.uint8)
        for i, r in enumerate(self.rows):
            for j in iter_bits(r):
                out[i, j] = 1
        return out

    def to_strings(self) -> list[str]:
        return ["".join(str((r >> j) & 1) for j in range(self.n_cols)) for r in self.rows]

    def transpose(self) -> "BitMatrix":
        cols = [0] * self.n_cols
        for i, r in enumerate(self.rows):
            for j in iter_bits(r):
                cols[j] |= 1 << i
        return BitMatrix(self.n_cols, self.n_rows, tuple(cols))

    def submatrix(self, rows: Iterable[int]) -> "BitMatrix":
        return BitMatrix.from_rows([self.rows[i] for i in rows], self.n_cols)

    def nnz(self) -> int:
        return sum(r.bit_count() for r in self.rows)


@dataclass(frozen=True)
class Gf2Basis:
    """Reduced row-echelon basis; ``vectors[i]`` has its lowest set bit at ``pivots[i]``."""

    length: int
    vectors: tuple[int, ...]
    pivots: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    def span(self) -> list[int]:
        """All ``2**dimension`` elements of the span (use only for small bases)."""
        out = [0]
        for b in self.vectors:
            out += [x ^ b for x in out]
        return out


def iter_bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def rank_of_rows(rows: Iterable[int]) -> int:
    """GF(2) rank of a collection of int bit-rows."""
    pivots: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            b = pivots.get(top)
            if b is None:
                pivots[top] = r
                break
            r ^= b
    return len(pivots)


def rank(m: BitMatrix) -> int:
    return rank_of_rows(m.rows)


def echelonize(m: BitMatrix) -> Gf2Basis:
    basis: list[int] = []
    for r in m.rows:
        for b in basis:
            if r & (b & -b):
                r ^= b
        if r:
            low = r & -r
            # keep the basis reduced: clear the new pivot from older vectors
            basis = [b ^ r if b & low else b for b in basis]
            basis.append(r)
    basis.sort(key=lambda b: b & -b)
    pivots = tuple((b & -b).bit_length() - 1 for b in basis)
    return Gf2Basis(m.n_cols, tuple(basis), pivots)


def contains(basis: Gf2Basis, v: int, length: int | None = None) -> bool:
    """True iff ``v`` lies in the span of ``basis``.

    ``length`` is the logical length of ``v``; when given it must match the
    basis.  A vector with bits beyond the basis length is a length mismatch.
    """
    if length is not None and length != basis.length:
        raise ValueError(f"vector length {length} != basis length {basis.length}")
    if v < 0 or v >> basis.length:
        raise ValueError(f"vector does not fit in length {basis.length}")
    for b, p in zip(basis.vectors, basis.pivots):
        if (v >> p) & 1:
            v ^= b
    return v == 0


def sparse_rank_lower_bound(m: BitMatrix) -> tuple[int, tuple[int, ...]]:
    """Greedy rank certificate for a sparse matrix.

    Repeatedly take the first remaining nonzero row, record it, and drop
    every remaining row that is nonzero in that row's lowest nonzero column.
    The recorded rows are independent: each has a 1 in a column where all
    later recorded rows are 0.  If every row and column has at most ``M``
    ones, each step discards at most ``M`` rows and ``M**2`` ones, so at
    least ``ceil(nnz / M**2)`` rows get recorded.

    Returns ``(bound, witness_rows)`` with ``bound == len(witness_rows)``.
    """
    alive = [i for i, r in enumerate(m.rows) if r]
    witness = []
    while alive:
        w = alive[0]
        lead = m.rows[w] & -m.rows[w]
        witness.append(w)
        alive = [i for i in alive[1:] if not m.rows[i] & lead]
    return len(witness), tuple(witness)


def max_line_weight(m: BitMatrix) -> int:
    """Largest number of ones in any single row or column."""
    if m.n_rows == 0 or m.n_cols == 0:
        return 0
    row_max = max(r.bit_count() for r in m.rows)
    col_max = max(r.bit_count() for r in m.transpose().rows)
    return max(row_max, col_max)
