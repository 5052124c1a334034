from __future__ import annotations

import math

import pytest

from brokensym.rootdata import (
    Permutation,
    braid_exponent,
    cartan_from_matrix,
    permutation_and_components,
    simple_root,
    type_a,
    v_representation,
    weyl_apply,
)
from brokensym.braidword import parse


def test_type_a_exponents():
    cd = type_a(4)
    assert braid_exponent(cd, 1, 2) == 3
    assert braid_exponent(cd, 1, 3) == 2
    with pytest.raises(ValueError):
        braid_exponent(cd, 2, 2)


def test_general_cartan_exponents():
    b2 = cartan_from_matrix([[2, -2], [-1, 2]])
    g2 = cartan_from_matrix([[2, -3], [-1, 2]])
    affine = cartan_from_matrix([[2, -2], [-2, 2]])
    assert braid_exponent(b2, 1, 2) == 4
    assert braid_exponent(g2, 1, 2) == 6
    assert braid_exponent(affine, 1, 2) == math.inf
    with pytest.raises(ValueError):
        cartan_from_matrix([[2, -1], [0, 2]])


def test_weyl_action_on_roots():
    cd = type_a(3)
    a1, a2 = simple_root(cd, 1), simple_root(cd, 2)
    assert weyl_apply(cd, [1], a1) == -a1
    assert weyl_apply(cd, [1], a2) == a1 + a2
    # s1 s2 s1 = s2 s1 s2
    for v in (a1, a2):
        assert weyl_apply(cd, [1, 2, 1], v) == weyl_apply(cd, [2, 1, 2], v)


def test_permutations_and_components():
    p = Permutation((2, 3, 1))
    assert p.compose(p.inverse()) == Permutation.identity(3)
    assert p.cycles() == [(1, 2, 3)]
    assert p.length() == 2
    for text, r, comps in [("1 1 1", 2, 1), ("1 1", 2, 2), ("", 4, 4), ("1 2", 3, 1), ("1 -1", 2, 2)]:
        w = parse(text, r)
        assert permutation_and_components(w.datum, w)[1] == comps


def test_virtual_dimension_is_twice_signed_length():
    for text, r in [("1 1 1", 2), ("1 -2 1 -1", 3), ("", 2), ("-1 -1", 2)]:
        w = parse(text, r)
        _, vdim = v_representation(w.datum, w)
        signs = [n > 0 for n in w.to_ints()]
        assert vdim == 2 * (signs.count(True) - signs.count(False))
