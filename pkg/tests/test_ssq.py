from __future__ import annotations

import pytest

from brokensym.braidword import parse
from brokensym.laurent import LPoly
from brokensym.linalg import SparseMatrix
from brokensym.polyalg import GF
from brokensym.ssq import (
    ChainComplex,
    build_e1,
    compute_e2,
    cone,
    cube_cochain_complex,
    euler_characteristic,
    is_graded_exact,
    limiting_descriptor,
    reindex,
    verify_d1_squared,
    vertex_shape,
)
from brokensym.braidword import GradingLedger


def test_vertex_modules_and_edges():
    w = parse("1 -2", 3)
    c = build_e1(w)
    assert vertex_shape(w, 0b11).walls == (1, 2)
    assert vertex_shape(w, 0b11).internal_shift == -2
    assert vertex_shape(w, 0b01).internal_shift == 0
    for (near, far), (f, s) in c.edge_maps.items():
        assert f.source == c.vertex_modules[near]
        assert f.target == c.vertex_modules[far]
        assert f.degree == 0
        assert s in (1, -1)


@pytest.mark.parametrize("text,r", [("1 1", 2), ("1 -1", 2), ("1 2 1", 3), ("-1 2 -1", 3)])
def test_d1_squared_and_sign_flip_control(text, r):
    c = build_e1(parse(text, r))
    assert verify_d1_squared(c, 8)
    far, a, b, near = next(iter(c.poset.faces()))
    broken = c.with_sign_flipped(near, a)
    res = verify_d1_squared(broken, 8)
    assert not res.ok
    assert res.face is not None


def test_cube_complex_is_a_complex():
    c = build_e1(parse("1 2 -1", 3))
    for d in range(-2, 7, 2):
        cx = cube_cochain_complex(c, d)
        for f, g in zip(cx.maps, cx.maps[1:]):
            assert (g @ f).is_zero()


def test_cone_of_identity_is_exact_and_of_zero_is_not():
    a = ChainComplex((2, 3), (SparseMatrix.from_dense([[1, 0], [0, 1], [1, 1]]),))
    ident = [SparseMatrix.identity(2), SparseMatrix.identity(3)]
    assert is_graded_exact(cone(ident, a, a))
    zero = [SparseMatrix.zeros(2, 2), SparseMatrix.zeros(3, 3)]
    assert not is_graded_exact(cone(zero, a, a))
    with pytest.raises(ValueError):
        ChainComplex((2, 2), (SparseMatrix.zeros(3, 2),))


def test_unknot_page():
    page = compute_e2(parse("", 1), 12)
    assert page.dims == {(0, j, d): 1 for j in (0, 1) for d in range(2 * j, 13, 2)}


@pytest.mark.parametrize("text,r", [("1", 2), ("-1", 2), ("1 1 1", 2), ("1 -2 1", 3), ("1 -1", 2)])
def test_e1_and_e2_share_euler_characteristic(text, r):
    page = compute_e2(parse(text, r), 8)
    assert page.e1.euler() == euler_characteristic(page)


def test_single_crossing_euler_characteristics():
    aq = ("a", "q")
    a, q = LPoly.var(aq, "a"), LPoly.var(aq, "q")
    u1 = compute_e2(parse("", 1), 10).dims.euler() * (1 - q * q)
    assert u1.truncate("q", 10) == 1 + a * q * q
    pos = compute_e2(parse("1", 2), 10).dims.euler() * (1 - q * q)
    neg = compute_e2(parse("-1", 2), 10).dims.euler() * (1 - q * q)
    assert pos.truncate("q", 10) == (-a * q ** 2 * (1 + a * q * q)).truncate("q", 10)
    assert neg.truncate("q", 10) == (-(q ** -2) * (1 + a * q * q)).truncate("q", 10)


def test_finite_field_and_parallel_runs_agree():
    w = parse("1 1 1", 2)
    base = compute_e2(w, 8)
    assert compute_e2(w, 8, GF(101)).dims == base.dims
    assert compute_e2(w, 8, jobs=2).dims == base.dims


def test_budget_stops_early_and_odd_cutoff_rejected():
    w = parse("1 2 1", 3)
    page = compute_e2(w, 12, budget=20)
    assert page.cutoff < 12
    assert page.dims == compute_e2(w, page.cutoff).dims
    with pytest.raises(ValueError):
        compute_e2(w, 7)


def test_reindex_moves_cube_degree():
    page = compute_e2(parse("", 2), 4)
    moved = reindex(page.dims, GradingLedger(1, -1))
    assert {k[0] for k in moved} == {1}


def test_descriptor_examples():
    d = limiting_descriptor(parse("1 1 1", 2))
    assert (d.component_count, d.virtual_dim) == (1, 6)
    d = limiting_descriptor(parse("", 2))
    assert (d.component_count, d.virtual_dim) == (2, 0)
    d = limiting_descriptor(parse("1 -1", 2))
    assert (d.component_count, d.virtual_dim) == (2, 0)
    assert d.permutation.images == (1, 2)
