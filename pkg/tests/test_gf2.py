from itertools import product
from math import ceil

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rwrandom.gf2 import (
    BitMatrix,
    contains,
    echelonize,
    max_line_weight,
    rank,
    sparse_rank_lower_bound,
)


def span_size(rows):
    span = {0}
    for r in rows:
        span |= {x ^ r for x in span}
    return len(span)


@st.composite
def matrices(draw, max_rows=8, max_cols=8):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    rows = draw(st.lists(st.integers(0, (1 << c) - 1), min_size=r, max_size=r))
    return BitMatrix(r, c, tuple(rows))


def test_rank_examples():
    assert rank(BitMatrix.identity(3)) == 3
    assert rank(BitMatrix.zeros(2, 5)) == 0
    assert rank(BitMatrix.ones(4, 6)) == 1
    m = BitMatrix.from_strings(["1100", "0110", "1010"])
    assert span_size(m.rows) == 4
    assert rank(m) == 2


def test_empty_shapes_have_rank_zero():
    assert rank(BitMatrix.zeros(0, 5)) == 0
    assert rank(BitMatrix.zeros(5, 0)) == 0
    assert rank(BitMatrix.zeros(0, 0)) == 0


def test_rank_does_not_modify_input():
    m = BitMatrix.from_strings(["11", "11"])
    rank(m)
    assert m.to_strings() == ["11", "11"]


def test_column_limit():
    with pytest.raises(ValueError):
        BitMatrix.zeros(1, 4097)
    with pytest.raises(ValueError):
        BitMatrix(1, 2, (0b100,))


@pytest.mark.parametrize("r", range(0, 17))
def test_rank_matches_span_enumeration_exhaustively(r):
    # every matrix with at most 16 entries
    for c in range(0, 17 if r == 0 else 16 // r + 1):
        for rows in product(range(1 << c), repeat=r):
            assert (1 << rank(BitMatrix(r, c, rows))) == span_size(rows)


@given(matrices())
def test_rank_is_transpose_invariant(m):
    assert rank(m) == rank(m.transpose())
    assert 0 <= rank(m) <= min(m.n_rows, m.n_cols)


def test_echelonize_examples():
    assert echelonize(BitMatrix.zeros(3, 4)).dimension == 0
    b = echelonize(BitMatrix.identity(3))
    assert b.vectors == (1, 2, 4) and b.pivots == (0, 1, 2)
    b = echelonize(BitMatrix.from_strings(["11", "01"]))
    assert b.pivots == (0, 1) and b.dimension == 2


@given(matrices())
def test_echelon_basis_spans_row_space(m):
    b = echelonize(m)
    assert b.dimension == rank(m)
    assert list(b.pivots) == sorted(set(b.pivots))
    for v, p in zip(b.vectors, b.pivots):
        assert v & -v == 1 << p
    row_space = {0}
    for r in m.rows:
        row_space |= {x ^ r for x in row_space}
    assert set(b.span()) == row_space
    for r in m.rows:
        assert contains(b, r)


def test_contains_examples():
    empty = echelonize(BitMatrix.zeros(0, 4))
    assert contains(empty, 0)
    assert not contains(empty, 0b0100)
    b = echelonize(BitMatrix.from_strings(["1100", "0011"]))
    assert contains(b, 0b1111)
    assert not contains(b, 0b0110)
    with pytest.raises(ValueError):
        contains(b, 0b1, length=5)
    with pytest.raises(ValueError):
        contains(b, 1 << 4)


def block_diagonal(blocks):
    size = sum(len(b) for b in blocks)
    a = np.zeros((size, size), dtype=np.uint8)
    off = 0
    for b in blocks:
        k = len(b)
        a[off:off + k, off:off + k] = b
        off += k
    return BitMatrix.from_array(a)


def test_sparse_bound_examples():
    bound, wit = sparse_rank_lower_bound(BitMatrix.identity(5))
    assert bound == 5 == rank(BitMatrix.identity(5))
    m = BitMatrix.ones(4, 4)
    assert m.nnz() == 16 and max_line_weight(m) == 4
    assert sparse_rank_lower_bound(m)[0] == 1
    m = block_diagonal([np.ones((2, 2))] * 3)
    assert m.nnz() == 12 and max_line_weight(m) == 2
    bound, wit = sparse_rank_lower_bound(m)
    assert bound == 3 == ceil(12 / 4) == rank(m)
    assert rank(m.submatrix(wit)) == 3
    assert sparse_rank_lower_bound(BitMatrix.zeros(3, 3)) == (0, ())


@given(matrices(max_rows=12, max_cols=12))
def test_sparse_bound_is_certified(m):
    bound, wit = sparse_rank_lower_bound(m)
    assert bound == len(wit)
    assert rank(m.submatrix(wit)) == bound <= rank(m)
    if m.nnz():
        M = max_line_weight(m)
        assert bound >= ceil(m.nnz() / M**2)
