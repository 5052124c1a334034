from __future__ import annotations

import pytest

from brokensym.braidword import cyclic_permute, parse
from brokensym.cubeposet import (
    build,
    reduced_sequence_poset,
    reflect_mask,
    relabel_cyclic,
    rotate_mask,
    same_unsigned,
)


def test_cube_shape():
    p = build(parse("1 -2 1", 3))
    assert p.size == 3
    assert len(p.vertices) == 8
    assert len(p.edges) == 12
    assert len(list(p.faces())) == 6
    # terminal vertex keeps positive letters and drops negative ones
    assert p.terminal == 0b101
    assert p.distance(p.terminal) == 0
    assert sorted(len(p.layer(t)) for t in range(4)) == [1, 1, 3, 3]


def test_edge_signs_square_anticommute():
    p = build(parse("1 2 -1 2", 3))
    sign = {(e.source, e.target): e.sign for e in p.edges}
    for far, a, b, near in p.faces():
        assert sign[(far, a)] * sign[(a, near)] == -sign[(far, b)] * sign[(b, near)]


def test_mask_relabelings():
    assert rotate_mask(0b001, 3) == 0b100
    assert rotate_mask(0b110, 3) == 0b011
    assert reflect_mask(0b001, 3) == 0b100
    for text in ("1 2", "1 -2", "1 1 2", "-1 2 -2 1"):
        w = parse(text, 3)
        assert same_unsigned(relabel_cyclic(build(w)), build(cyclic_permute(w)))


def test_reduced_sequence_posets():
    full = reduced_sequence_poset(1, 2, 3, 3)
    assert set(full.elements) == {(), (1,), (2,), (1, 2), (2, 1), (1, 2, 1)}
    small = reduced_sequence_poset(1, 3, 1, 2)
    assert set(small.elements) == {(), (3,)}
    with pytest.raises(ValueError):
        reduced_sequence_poset(1, 2, 4, 3)
    with pytest.raises(ValueError):
        reduced_sequence_poset(1, 2, 1, float("inf"))
