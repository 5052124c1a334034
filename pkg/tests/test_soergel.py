from __future__ import annotations

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from brokensym.polyalg import Poly
from brokensym.soergel import (
    BSElement,
    BSShape,
    identity_map,
    insert_wall,
    left_mult,
    matrix_of,
    merge_wall,
    normal_form,
    piece_basis,
    right_mult,
)
from oracles import QuotientRing, hilbert_dim

SHAPES = [BSShape(2, (1,)), BSShape(2, (1, 1)), BSShape(3, (1, 2)), BSShape(3, (2, 1, 2)), BSShape(3, (1, 1, 2))]


@pytest.mark.parametrize("shape", SHAPES + [BSShape(3, (1, 2), -4)])
def test_piece_dimensions(shape):
    ring = QuotientRing(shape.strands, shape.walls)
    for d in range(shape.internal_shift, shape.internal_shift + 9, 2):
        n = (d - shape.internal_shift) // 2
        assert shape.dim(d) == hilbert_dim(shape.strands, shape.q, n)
        assert shape.dim(d) == len(piece_basis(shape, d))
        assert shape.dim(d) == ring.dim(n)
    assert shape.dim(shape.internal_shift - 2) == 0


def _to_sympy(p: Poly, ring: QuotientRing):
    total = 0
    for mono, c in p.terms.items():
        term = sympy.Integer(c)
        for k, e in enumerate(mono):
            a, m = divmod(k, ring.r)
            term *= ring.x[a][m] ** e
        total += term
    return total


@pytest.mark.parametrize("shape", SHAPES[:3])
@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_normal_form_agrees_with_groebner_reduction(shape, data):
    ring = QuotientRing(shape.strands, shape.walls)
    nvars = (shape.q + 1) * shape.strands
    terms = data.draw(st.dictionaries(st.tuples(*[st.integers(0, 2)] * nvars), st.integers(-3, 3), max_size=4))
    raw = Poly(shape.ring, terms)
    nf = normal_form(raw, shape)
    assert ring.reduce(_to_sympy(raw, ring) - _to_sympy(nf.value, ring)) == 0
    assert nf.is_zero() == (ring.reduce(_to_sympy(raw, ring)) == 0)


@pytest.mark.parametrize("shape,t", [(BSShape(2, (1,)), 1), (BSShape(3, (1, 2)), 2), (BSShape(3, (2, 1, 2)), 2)])
def test_merge_is_a_bimodule_map(shape, t):
    f = merge_wall(shape, t)
    for mask in range(shape.rank):
        g = BSElement.generator(shape, mask)
        for m in range(1, shape.strands + 1):
            assert f.apply(right_mult(g, m)) == right_mult(f.apply(g), m)
            assert f.apply(left_mult(g, m)) == left_mult(f.apply(g), m)


@pytest.mark.parametrize("shape,t,i", [(BSShape(2), 1, 1), (BSShape(3, (1,)), 2, 2), (BSShape(3, (2, 1)), 2, 1)])
def test_insert_is_a_bimodule_map(shape, t, i):
    f = insert_wall(shape, t, i)
    assert f.degree == 0
    for mask in range(shape.rank):
        g = BSElement.generator(shape, mask)
        for m in range(1, shape.strands + 1):
            assert f.apply(right_mult(g, m)) == right_mult(f.apply(g), m)


def test_merge_after_insert_is_the_simple_root():
    R = BSShape(3)
    for i in (1, 2):
        up = insert_wall(R, 1, i)
        down = merge_wall(up.target, 1)
        img = down.compose(up).image(0)
        alpha = R.ring.var(0, i) - R.ring.var(0, i + 1)
        assert img.value == alpha


def test_matrix_shapes_and_identity():
    sh = BSShape(3, (1, 2))
    m = matrix_of(identity_map(sh), 4)
    assert m.shape == (sh.dim(4), sh.dim(4))
    assert m.dense() == [[int(a == b) for b in range(sh.dim(4))] for a in range(sh.dim(4))]
    f = merge_wall(sh, 2)
    assert matrix_of(f, 4).shape == (f.target.dim(4), sh.dim(4))
    with pytest.raises(ValueError):
        matrix_of(f, 6, cutoff=4)
