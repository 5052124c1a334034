from __future__ import annotations

from fractions import Fraction

import pytest

from brokensym.laurent import LPoly, Truncated

V = ("q",)
q = LPoly.var(V, "q")


def test_arithmetic_and_inverse_monomials():
    f = (q + q ** -1) ** 2
    assert f == q ** 2 + 2 + q ** -2
    assert (2 * q) ** -1 == LPoly(V, {(-1,): Fraction(1, 2)})
    with pytest.raises(ValueError):
        (q + 1) ** -1
    assert str(q ** 2 - 2 * q ** -1) == "q^2 - 2*q^-1"


def test_substitute_and_truncate():
    av = ("a", "z")
    p = LPoly.var(av, "a") * LPoly.var(av, "z") ** 2
    img = LPoly.var(("q",), "q")
    out = p.substitute({"a": img ** 2, "z": img - img ** -1}, ("q",))
    assert out == q ** 4 - 2 * q ** 2 + 1
    assert out.truncate("q", 2) == -2 * q ** 2 + 1


def test_series_division_recovers_geometric_series():
    # 1 / (1 - q^2) through q^10
    num = Truncated(LPoly.const(V, 1), "q", None)
    den = Truncated(1 - q ** 2, "q", None)
    with pytest.raises(ArithmeticError):
        num.divide(den)
    quot = Truncated(LPoly.const(V, 1), "q", 10).divide(den)
    assert quot.poly == sum((q ** (2 * k) for k in range(6)), LPoly(V))
    assert quot.valid == 10


def test_truncated_products_track_validity():
    a = Truncated(1 + q, "q", 4)
    b = Truncated(q ** 2, "q", None)
    prod = a * b
    assert prod.valid == 6
    ok, top = prod.agrees(Truncated(q ** 2 + q ** 3 + q ** 9, "q", None))
    assert ok and top == 6
