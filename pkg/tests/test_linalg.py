from __future__ import annotations

from hypothesis import given, settings
from hypothesis import strategies as st

from brokensym.linalg import SparseMatrix, kernel, nullity, rank, rref, solve_columns, columns_to_matrix
from brokensym.polyalg import GF, QQ
from oracles import fraction_rank

matrices = st.integers(0, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=1, max_size=6)
)


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_rank_matches_fraction_elimination(rows):
    m = SparseMatrix.from_dense(rows)
    assert rank(m) == fraction_rank(rows)
    assert nullity(m) == m.ncols - fraction_rank(rows)


@settings(max_examples=80, deadline=None)
@given(matrices, st.sampled_from([2, 3, 7]))
def test_rank_mod_p_matches_oracle(rows, p):
    assert rank(SparseMatrix.from_dense(rows), GF(p)) == fraction_rank(rows, p)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_kernel_vectors_are_killed_and_independent(rows):
    m = SparseMatrix.from_dense(rows)
    ker = kernel(m)
    assert len(ker) == nullity(m)
    if ker:
        km = columns_to_matrix(ker, m.ncols)
        assert (m @ km).is_zero()
        assert rank(km) == len(ker)


def test_rref_pivots_and_solve():
    m = SparseMatrix.from_dense([[1, 2, 3], [2, 4, 7]])
    _, pivots = rref(m)
    assert pivots == [0, 2]
    basis = SparseMatrix.from_dense([[1, 0], [0, 1], [1, 1]])
    target = SparseMatrix.from_dense([[2], [3], [5]])
    assert solve_columns(basis, target) == [[2], [3]]


def test_blocks_and_products():
    a = SparseMatrix.from_dense([[1, 2], [3, 4]])
    i = SparseMatrix.identity(2)
    big = SparseMatrix.block([[a, None], [None, i]])
    assert big.shape == (4, 4)
    assert rank(big) == 4
    assert (a @ i).dense() == a.dense()
    assert SparseMatrix.block_diag([a, a]).dense()[3] == [0, 0, 3, 4]
    assert rank(a, GF(2)) == 1
    assert rank(a, QQ) == 2
