"""Multivariate Laurent polynomials with exact coefficients.

Used for Poincaré series, Euler characteristics, Hecke-algebra coefficients
and HOMFLY polynomials.  Variables are named; two polynomials combine only
when they share the same variable tuple.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Coeff = Union[int, Fraction]


def _norm(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


class LPoly:
    """Immutable Laurent polynomial: exponent tuple -> nonzero coefficient."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Iterable[str], terms: Mapping[tuple, Coeff] | None = None):
        self.vars = tuple(vars)
        n = len(self.vars)
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n:
                raise ValueError("exponent vector has the wrong length")
            if c:
                clean[e] = _norm(c)
        self.terms = clean

    # -- constructors ---------------------------------------------------
    @classmethod
    def const(cls, vars: Iterable[str], c: Coeff) -> "LPoly":
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def var(cls, vars: Iterable[str], name: str, power: int = 1) -> "LPoly":
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = power
        return cls(vars, {tuple(e): 1})

    @classmethod
    def monomial(cls, vars: Iterable[str], exps: Mapping[str, int], c: Coeff = 1) -> "LPoly":
        vars = tuple(vars)
        e = [0] * len(vars)
        for name, k in exps.items():
            e[vars.index(name)] = k
        return cls(vars, {tuple(e): c})

    def _coerce(self, other) -> "LPoly":
        if isinstance(other, LPoly):
            if other.vars != self.vars:
                raise ValueError(f"variable mismatch {self.vars} vs {other.vars}")
            return other
        if isinstance(other, (int, Fraction)):
            return LPoly.const(self.vars, other)
        return NotImplemented

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LPoly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return LPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LPoly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            ((e, c),) = self.terms.items()
            inv = LPoly(self.vars, {tuple(-k for k in e): Fraction(1) / c})
            return inv ** (-n)
        result = LPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LPoly.const(self.vars, other)
        if not isinstance(other, LPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- queries and transforms ----------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def coefficient(self, exps: Mapping[str, int]) -> Coeff:
        e = [0] * len(self.vars)
        for name, k in exps.items():
            e[self.vars.index(name)] = k
        return self.terms.get(tuple(e), 0)

    def degree_range(self, name: str) -> tuple[int, int]:
        k = self.vars.index(name)
        degs = [e[k] for e in self.terms]
        if not degs:
            return (0, -1)
        return (min(degs), max(degs))

    def truncate(self, name: str, max_deg: int) -> "LPoly":
        """Drop every term whose ``name``-degree exceeds ``max_deg``."""
        k = self.vars.index(name)
        return LPoly(self.vars, {e: c for e, c in self.terms.items() if e[k] <= max_deg})

    def coefficient_in(self, name: str, deg: int) -> "LPoly":
        """Coefficient of ``name**deg`` as a polynomial in the same variables."""
        k = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[k] == deg:
                e2 = list(e)
                e2[k] = 0
                out[tuple(e2)] = c
        return LPoly(self.vars, out)

    def shift(self, exps: Mapping[str, int]) -> "LPoly":
        return self * LPoly.monomial(self.vars, exps)

    def substitute(self, images: Mapping[str, "LPoly"], new_vars: Iterable[str]) -> "LPoly":
        """Evaluate at ``images`` (keyed by old variable names) into ``new_vars``.

        Variables not in ``images`` must also appear in ``new_vars``.
        Negative powers are only allowed when the image is a monomial.
        """
        new_vars = tuple(new_vars)
        imgs = []
        for name in self.vars:
            if name in images:
                img = images[name]
                if img.vars != new_vars:
                    raise ValueError("substitution image has the wrong variables")
                imgs.append(img)
            else:
                imgs.append(LPoly.var(new_vars, name))
        cache: dict = {}
        result = LPoly(new_vars)
        for e, c in self.terms.items():
            term = LPoly.const(new_vars, c)
            for k, power in enumerate(e):
                if power:
                    key = (k, power)
                    if key not in cache:
                        cache[key] = imgs[k] ** power
                    term = term * cache[key]
            result = result + term
        return result

    def rename(self, new_vars: Iterable[str]) -> "LPoly":
        return LPoly(new_vars, self.terms)

    def to_list(self) -> list:
        """Sorted ``[exponents..., coefficient]`` rows (JSON friendly)."""
        rows = []
        for e in sorted(self.terms):
            c = self.terms[e]
            rows.append([*e, c if isinstance(c, int) else str(c)])
        return rows

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            factors = []
            for name, k in zip(self.vars, e):
                if k == 1:
                    factors.append(name)
                elif k:
                    factors.append(f"{name}^{k}")
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"LPoly[{','.join(self.vars)}]({self})"


class Truncated:
    """A Laurent series in ``var`` known exactly through degree ``valid``.

    ``valid = None`` means the polynomial is exact (no truncation).
    Products and quotients track how far the result stays exact.
    """

    __slots__ = ("poly", "var", "valid")

    def __init__(self, poly: LPoly, var: str, valid: int | None):
        self.poly = poly if valid is None else poly.truncate(var, valid)
        self.var = var
        self.valid = valid

    def low(self) -> int:
        lo, hi = self.poly.degree_range(self.var)
        return lo if hi >= lo else 0

    def __mul__(self, other: "Truncated") -> "Truncated":
        cands = []
        if self.valid is not None:
            cands.append(self.valid + other.low())
        if other.valid is not None:
            cands.append(other.valid + self.low())
        valid = min(cands) if cands else None
        return Truncated(self.poly * other.poly, self.var, valid)

    def divide(self, den: "Truncated") -> "Truncated":
        """Series quotient; the lowest coefficient of ``den`` must be ±monomial."""
        lo_d = den.low()
        lead = den.poly.coefficient_in(self.var, lo_d)
        if not lead.is_monomial():
            raise ArithmeticError("leading coefficient is not a unit")
        ((le, lc),) = lead.terms.items()
        if lc not in (1, -1):
            raise ArithmeticError("leading coefficient is not a unit")
        inv_lead = LPoly(self.poly.vars, {tuple(-x for x in le): lc})
        lo_q = self.low() - lo_d
        bounds = []
        if self.valid is not None:
            bounds.append(self.valid - lo_d)
        if den.valid is not None:
            bounds.append(den.valid - lo_d + lo_q)
        if not bounds:
            raise ArithmeticError("exact quotient of exact polynomials needs a bound")
        valid = min(bounds)
        k = self.poly.vars.index(self.var)
        rem = self.poly
        quot = LPoly(self.poly.vars)
        for n in range(lo_q, valid + 1):
            c = rem.coefficient_in(self.var, n + lo_d)
            if c.is_zero():
                continue
            step = c * inv_lead
            e = [0] * len(self.poly.vars)
            e[k] = n
            term = step * LPoly(self.poly.vars, {tuple(e): 1})
            quot = quot + term
            rem = (rem - term * den.poly).truncate(self.var, valid + lo_d)
        return Truncated(quot, self.var, valid)

    def agrees(self, other: "Truncated") -> tuple[bool, int | None]:
        """Compare through the common exact band; returns (equal, band top)."""
        cands = [v for v in (self.valid, other.valid) if v is not None]
        top = min(cands) if cands else None
        a = self.poly if top is None else self.poly.truncate(self.var, top)
        b = other.poly if top is None else other.poly.truncate(self.var, top)
        return a == b, top

    def __repr__(self) -> str:
        return f"Truncated({self.poly}, {self.var} <= {self.valid})"
