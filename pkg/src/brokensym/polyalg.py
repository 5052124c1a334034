"""Exact sparse polynomials in several alphabets of torus variables.

A variable ``x^{(a)}_m`` carries an alphabet index ``a >= 0`` and a position
``1 <= m <= positions``.  Every variable has internal degree 2, so a
monomial of total degree ``n`` sits in internal degree ``2n``.

Coefficients live in a :class:`Field`: the rationals (ints and
``Fraction``) or a prime field ``F_p`` (ints reduced mod p).  Nothing on the
computation path ever touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Union

Scalar = Union[int, Fraction]
Monomial = tuple  # exponent vector, alphabet-major


class FieldMismatch(ValueError):
    """Raised when polynomials over different coefficient fields meet."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """Coefficient field: characteristic 0 means the rationals."""

    characteristic: int = 0

    def __post_init__(self) -> None:
        if self.characteristic != 0 and not is_prime(self.characteristic):
            raise ValueError(f"field characteristic {self.characteristic} is not prime")

    @property
    def name(self) -> str:
        return "q" if self.characteristic == 0 else f"fp:{self.characteristic}"

    @classmethod
    def parse(cls, text: str) -> "Field":
        text = text.strip().lower()
        if text in ("q", "qq", "rationals"):
            return QQ
        if text.startswith("fp:"):
            try:
                p = int(text[3:])
            except ValueError:
                raise ValueError(f"malformed prime field spec {text!r}") from None
            return cls(p)
        raise ValueError(f"unknown field {text!r}; use 'q' or 'fp:<p>'")

    def __call__(self, c: Scalar) -> Scalar:
        p = self.characteristic
        if p == 0:
            if isinstance(c, Fraction) and c.denominator == 1:
                return int(c.numerator)
            return c
        if isinstance(c, Fraction):
            return (c.numerator * pow(c.denominator, -1, p)) % p
        return int(c) % p


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


@dataclass(frozen=True)
class PolyRing:
    """Variable universe: ``alphabets`` copies of ``positions`` variables."""

    alphabets: int
    positions: int
    field: Field = QQ

    def __post_init__(self) -> None:
        if self.alphabets < 1 or self.positions < 0:
            raise ValueError("a ring needs at least one alphabet")

    @property
    def nvars(self) -> int:
        return self.alphabets * self.positions

    def index(self, a: int, m: int) -> int:
        if not 0 <= a < self.alphabets:
            raise ValueError(f"alphabet {a} outside 0..{self.alphabets - 1}")
        if not 1 <= m <= self.positions:
            raise ValueError(f"position {m} outside 1..{self.positions}")
        return a * self.positions + (m - 1)

    def var(self, a: int, m: int) -> "Poly":
        e = [0] * self.nvars
        e[self.index(a, m)] = 1
        return Poly(self, {tuple(e): 1})

    def const(self, c: Scalar) -> "Poly":
        return Poly(self, {(0,) * self.nvars: c})

    def one(self) -> "Poly":
        return self.const(1)

    def zero(self) -> "Poly":
        return Poly(self, {})

    def monomial(self, exps: Iterable[int], c: Scalar = 1) -> "Poly":
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise ValueError("exponent vector has the wrong length")
        return Poly(self, {exps: c})

    def var_name(self, k: int) -> str:
        a, m = divmod(k, self.positions)
        return f"x{a}_{m + 1}"


def _add_into(acc: dict, mono, c) -> None:
    v = acc.get(mono, 0) + c
    if v:
        acc[mono] = v
    else:
        acc.pop(mono, None)


class Poly:
    """Immutable sparse polynomial over a :class:`PolyRing`."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Monomial, Scalar] | None = None):
        f = ring.field
        clean = {}
        for mono, c in (terms or {}).items():
            if len(mono) != ring.nvars:
                raise ValueError("monomial outside the variable universe")
            c = f(c)
            if c:
                clean[tuple(mono)] = c
        self.ring = ring
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring: PolyRing, terms: dict) -> "Poly":
        p = cls.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    # -- coercion -------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                if other.ring.field != self.ring.field:
                    raise FieldMismatch(
                        f"cannot combine {self.ring.field.name} and {other.ring.field.name}"
                    )
                raise ValueError("polynomials live in different variable universes")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        f = self.ring.field
        out = dict(self.terms)
        for mono, c in other.terms.items():
            v = f(out.get(mono, 0) + c)
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
        return Poly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        f = self.ring.field
        return Poly._raw(self.ring, {m: f(-c) for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = self.ring.field
            out = {}
            for m, c in self.terms.items():
                v = f(c * other)
                if v:
                    out[m] = v
            return Poly._raw(self.ring, out)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                out[mono] = out.get(mono, 0) + c1 * c2
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        if other.ring.field != self.ring.field:
            raise FieldMismatch("equality across coefficient fields")
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- queries --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Internal degree (twice the total degree); -1 for zero."""
        if not self.terms:
            return -1
        return max(2 * sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly._raw(self.ring, {m: c for m, c in self.terms.items() if 2 * sum(m) == d})

    def coefficient(self, mono: Monomial) -> Scalar:
        return self.terms.get(tuple(mono), 0)

    # -- symmetric-group action ----------------------------------------
    def swap(self, a: int, m: int) -> "Poly":
        """Transpose ``x^{(a)}_m`` and ``x^{(a)}_{m+1}``."""
        if not 1 <= m < self.ring.positions:
            raise ValueError(f"position pair ({m}, {m + 1}) out of range")
        k = self.ring.index(a, m)
        out = {}
        for mono, c in self.terms.items():
            e = list(mono)
            e[k], e[k + 1] = e[k + 1], e[k]
            out[tuple(e)] = c
        return Poly._raw(self.ring, out)

    def substitute(self, images: Mapping[int, "Poly"]) -> "Poly":
        """Replace variable ``k`` by ``images[k]`` (others untouched)."""
        ring = self.ring
        result = ring.zero()
        for mono, c in self.terms.items():
            rest = list(mono)
            term = None
            for k, img in images.items():
                e = rest[k]
                if e:
                    rest[k] = 0
                    piece = img ** e
                    term = piece if term is None else term * piece
            base = Poly._raw(ring, {tuple(rest): c})
            result = result + (base if term is None else base * term)
        return result

    # -- rendering ------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, reverse=True):
            c = self.terms[mono]
            factors = []
            for k, e in enumerate(mono):
                if e:
                    name = self.ring.var_name(k)
                    factors.append(name if e == 1 else f"{name}^{e}")
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Poly({self})"


def swap_action(p: Poly, a: int, m: int) -> Poly:
    return p.swap(a, m)


def divide_by_difference(num: Poly, u: int, w: int) -> Poly:
    """Exact quotient of ``num`` by ``x_u - x_w`` (variable indices).

    Synthetic division in ``x_u``; a nonzero remainder means the caller handed
    us something that is not divisible, which is an arithmetic bug.
    """
    ring = num.ring
    f = ring.field
    # group by the power of x_u
    layers: dict[int, dict] = {}
    for mono, c in num.terms.items():
        k = mono[u]
        e = list(mono)
        e[u] = 0
        _add_into(layers.setdefault(k, {}), tuple(e), c)
    if not layers:
        return ring.zero()
    top = max(layers)
    quotient: dict[int, dict] = {}
    carry: dict = {}
    # Q_{k-1} = N_k + x_w * Q_k, from the top down
    for k in range(top, 0, -1):
        cur = dict(layers.get(k, {}))
        for mono, c in carry.items():
            e = list(mono)
            e[w] += 1
            _add_into(cur, tuple(e), c)
        quotient[k - 1] = cur
        carry = cur
    remainder = dict(layers.get(0, {}))
    for mono, c in carry.items():
        e = list(mono)
        e[w] += 1
        _add_into(remainder, tuple(e), c)
    if any(f(c) for c in remainder.values()):
        raise ArithmeticError("inexact division by a linear difference")
    out: dict = {}
    for k, layer in quotient.items():
        for mono, c in layer.items():
            e = list(mono)
            e[u] = k
            _add_into(out, tuple(e), c)
    return Poly(ring, out)


def demazure(p: Poly, a: int, i: int) -> Poly:
    """Divided difference ``(p - s_i p) / (x_i - x_{i+1})`` in alphabet ``a``."""
    num = p - p.swap(a, i)
    k = p.ring.index(a, i)
    return divide_by_difference(num, k, k + 1)


def graded_basis(nvars: int, d: int) -> list[Monomial]:
    """Monomials of internal degree ``d`` in ``nvars`` variables, lex-descending."""
    if d % 2:
        raise ValueError("odd internal degree has no monomials")
    if d < 0:
        raise ValueError("negative internal degree")
    n = d // 2
    if nvars == 0:
        return [()] if n == 0 else []
    out = []
    for combo in combinations_with_replacement(range(nvars), n):
        e = [0] * nvars
        for k in combo:
            e[k] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out
