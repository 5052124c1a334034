from __future__ import annotations

import pytest

from brokensym.braidword import (
    GradingLedger,
    apply_braid_relation,
    contract_inverse_pair,
    cyclic_permute,
    insert_inverse_pair,
    lengths,
    parse,
    reflect,
    stabilize,
)


def test_parse_and_format_round_trip():
    w = parse(" 1  -2 1 ", 3)
    assert w.to_ints() == [1, -2, 1]
    assert parse(w.format(), 3) == w
    assert str(parse("", 2)) == "e"
    assert w.writhe() == 1
    assert lengths(w) == (2, 1, -3)


@pytest.mark.parametrize("text,r", [("0", 2), ("3", 3), ("-3", 3), ("1 x", 2), ("1.5", 3)])
def test_parse_rejects_bad_words(text, r):
    with pytest.raises(ValueError):
        parse(text, r)


def test_moves():
    w = parse("1 2 1 3", 4)
    assert apply_braid_relation(w, 1, (1, 2)).to_ints() == [2, 1, 2, 3]
    with pytest.raises(ValueError):
        apply_braid_relation(w, 2, (1, 2))
    assert apply_braid_relation(parse("1 3", 4), 1, (1, 3)).to_ints() == [3, 1]
    assert cyclic_permute(w).to_ints() == [2, 1, 3, 1]
    assert reflect(w).to_ints() == [3, 1, 2, 1]


def test_inverse_pairs_and_ledgers_cancel():
    w = parse("2 1", 3)
    longer, up = insert_inverse_pair(w, 2, 1, sign_first=-1)
    assert longer.to_ints() == [2, -1, 1, 1]
    back, down = contract_inverse_pair(longer, 2)
    assert back == w
    assert up + down == GradingLedger()
    assert down.as_pair() == (1, -1)
    with pytest.raises(ValueError):
        contract_inverse_pair(w, 1)


def test_stabilization_adds_a_strand():
    w = parse("1 1", 2)
    s, delta = stabilize(w, -1)
    assert s.strands == 3 and s.to_ints() == [1, 1, -2]
    assert delta.null_moves == 1
    assert stabilize(w, 1)[1].as_pair() == (2, 0)
