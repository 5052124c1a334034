from __future__ import annotations

import pytest

from brokensym.hochschild import TriGradedDims, hh_dim, hh_dims, induced_map, induced_rank, koszul_differential
from brokensym.linalg import rank
from brokensym.polyalg import GF
from brokensym.soergel import BSShape, insert_wall, merge_wall
from oracles import QuotientRing, koszul_hh_dims


def test_one_variable_polynomial_ring():
    # HH(Q[x]) = Q[x] ⊗ Λ[θ]: one class in each (j, d) with d >= 2j
    dims = hh_dims(BSShape(1), 12)
    assert dims == {(j, d): 1 for j in (0, 1) for d in range(2 * j, 13, 2)}


@pytest.mark.parametrize(
    "strands,walls,shift,top",
    [(2, (), 0, 6), (2, (1,), 0, 6), (2, (1,), -2, 4), (2, (1, 1), 0, 4), (3, (1,), 0, 4), (3, (1, 2), 0, 4), (3, (2, 1, 2), 0, 2)],
)
def test_hh_matches_dense_quotient_ring_oracle(strands, walls, shift, top):
    ring = QuotientRing(strands, walls)
    shape = BSShape(strands, walls, shift)
    for d in range(shift, top + 1, 2):
        want = koszul_hh_dims(ring, shift, d)
        assert {j: hh_dim(shape, j, d) for j in range(strands + 1)} == want


def test_koszul_differential_squares_to_zero():
    sh = BSShape(3, (1, 2))
    for d in range(0, 9, 2):
        for j in range(2, 4):
            assert (koszul_differential(sh, j - 1, d) @ koszul_differential(sh, j, d)).is_zero()


def test_hh_over_finite_field_matches_rationals_here():
    sh = BSShape(2, (1,))
    assert hh_dims(sh, 8, GF(101)) == hh_dims(sh, 8)


def test_induced_maps():
    B = BSShape(2, (1,))
    f = merge_wall(B, 1)
    assert induced_map(f, 0, 0) == [[1]]
    for j in range(3):
        for d in range(0, 9, 2):
            mat = induced_map(f, j, d)
            r = rank_of(mat)
            assert r == induced_rank(f, j, d)
    g = insert_wall(BSShape(2), 1, 1)
    for j in range(3):
        for d in range(0, 7, 2):
            assert rank_of(induced_map(g, j, d)) == induced_rank(g, j, d)


def rank_of(rows):
    from brokensym.linalg import SparseMatrix

    if not rows or not rows[0]:
        return 0
    return rank(SparseMatrix.from_dense(rows))


def test_trigraded_dims_helpers():
    dims = TriGradedDims({(0, 0, 0): 1, (1, 1, 2): 2, (0, 1, 4): 0})
    assert len(dims) == 2
    assert dims.shifted(dt=1)[(2, 1, 2)] == 2
    assert dims.restrict(0) == {(0, 0, 0): 1}
    assert dims.diff(TriGradedDims({(0, 0, 0): 1})) == {(1, 1, 2): (2, 0)}
    assert str(dims.euler()) == "-2*a*q^2 + 1"
    with pytest.raises(ValueError):
        TriGradedDims({(0, 0, 0): -1})
