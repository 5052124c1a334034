from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brokensym.polyalg import GF, QQ, Field, FieldMismatch, Poly, PolyRing, demazure, divide_by_difference, graded_basis
from oracles import demazure_monomial

R3 = PolyRing(1, 3)


def polys(ring: PolyRing = R3, max_terms: int = 4, max_exp: int = 3):
    mono = st.tuples(*[st.integers(0, max_exp)] * ring.nvars)
    return st.dictionaries(mono, st.integers(-5, 5), max_size=max_terms).map(lambda t: Poly(ring, t))


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), st.integers(1, 2))
def test_demazure_twisted_leibniz(f, g, i):
    lhs = demazure(f * g, 0, i)
    rhs = demazure(f, 0, i) * g + f.swap(0, i) * demazure(g, 0, i)
    assert lhs == rhs


@settings(max_examples=60, deadline=None)
@given(polys(), st.integers(1, 2))
def test_demazure_squares_to_zero(f, i):
    assert demazure(demazure(f, 0, i), 0, i).is_zero()


@settings(max_examples=60, deadline=None)
@given(polys(), st.integers(1, 2))
def test_invariant_plus_root_multiple_decomposition(f, i):
    alpha = R3.var(0, i) - R3.var(0, i + 1)
    sym = (f + f.swap(0, i)) * Fraction(1, 2)
    assert sym.swap(0, i) == sym
    assert f == sym + alpha * demazure(f, 0, i) * Fraction(1, 2)


@pytest.mark.parametrize("a,b", [(a, b) for a in range(5) for b in range(5)])
def test_demazure_on_monomials_matches_closed_form(a, b):
    ring = PolyRing(1, 2)
    got = demazure(ring.monomial((a, b)), 0, 1)
    want = Poly(ring, demazure_monomial(a, b))
    assert got == want


def test_inexact_division_raises():
    ring = PolyRing(1, 2)
    with pytest.raises(ArithmeticError):
        divide_by_difference(ring.var(0, 1), 0, 1)


@pytest.mark.parametrize("n,d", [(n, d) for n in range(1, 5) for d in range(0, 11, 2)])
def test_graded_basis_counts(n, d):
    basis = graded_basis(n, d)
    assert len(basis) == comb(d // 2 + n - 1, n - 1)
    assert basis == sorted(basis, reverse=True)
    assert all(2 * sum(m) == d for m in basis)


def test_graded_basis_rejects_odd_and_negative():
    with pytest.raises(ValueError):
        graded_basis(2, 3)
    with pytest.raises(ValueError):
        graded_basis(2, -2)


def test_degree_is_twice_polynomial_degree():
    x = R3.var(0, 1)
    p = x * x * R3.var(0, 3) + 3
    assert p.degree() == 6
    assert not p.is_homogeneous()
    assert p.homogeneous_part(6) == x * x * R3.var(0, 3)
    assert str(p) == "x0_1^2*x0_3 + 3"


def test_finite_field_arithmetic_and_mismatch():
    F5 = PolyRing(1, 2, GF(5))
    x = F5.var(0, 1)
    assert (x * 5).is_zero()
    assert (x + 1) ** 5 == x ** 5 + 1
    with pytest.raises(FieldMismatch):
        _ = x + PolyRing(1, 2).var(0, 1)


def test_field_parsing():
    assert Field.parse("q") == QQ
    assert Field.parse("fp:7").characteristic == 7
    for bad in ("fp:8", "fp:x", "reals"):
        with pytest.raises(ValueError):
            Field.parse(bad)
