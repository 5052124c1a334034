"""Hecke algebra, Ocneanu trace and the HOMFLY polynomial of braid closures.

Conventions (fixed here and nowhere else):

* Hecke algebra over Z[q^±]: ``T_i^2 = (q - 1) T_i + q``, so
  ``T_i^{-1} = q^{-1} T_i + (q^{-1} - 1)``; a braid letter ``s_i^{±1}``
  maps to ``T_i^{±1}``.
* Ocneanu trace: ``tr(1) = 1``, ``tr(x T_n y) = λ tr(x y)`` for x, y in the
  algebra on n strands.
* HOMFLY: ``a P(L+) - a^{-1} P(L-) = z P(L0)``, unknot = 1, so the
  two-component unlink is ``(a - a^{-1}) / z``.  With ``q = v^2``,
  ``λ = a^2 (q - 1) / (a^2 - 1)`` and ``z = v - v^{-1}``,

      P(β) = a^{-e} v^{-e} ((a - a^{-1}) / z)^{r-1} tr(T_β),

  e the writhe and r the strand count.  In these conventions the closure of
  ``s_1^3`` is ``a^{-2} z^2 + 2 a^{-2} - a^{-4}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .braidword import BraidWord
from .laurent import LPoly

QV = ("q",)
TRACE_VARS = ("q", "lam")
HOMFLY_VARS = ("a", "z")


def _qpoly(terms: dict) -> LPoly:
    return LPoly(QV, {(k,): c for k, c in terms.items()})


Q = LPoly.var(QV, "q")
ONE = LPoly.const(QV, 1)


@dataclass(frozen=True)
class HeckeElement:
    """``Σ c_w T_w`` with w a permutation in one-line notation."""

    strands: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {tuple(w): c for w, c in self.terms.items() if not c.is_zero()}
        object.__setattr__(self, "terms", clean)

    @classmethod
    def one(cls, strands: int) -> "HeckeElement":
        return cls(strands, {tuple(range(1, strands + 1)): ONE})

    @classmethod
    def basis(cls, strands: int, perm) -> "HeckeElement":
        return cls(strands, {tuple(perm): ONE})

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        if other.strands != self.strands:
            raise ValueError("Hecke elements on different strand counts")
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return HeckeElement(self.strands, out)

    def scale(self, c: LPoly) -> "HeckeElement":
        return HeckeElement(self.strands, {w: c * x for w, x in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, HeckeElement) and self.strands == other.strands and self.terms == other.terms

    def times_generator(self, i: int, sign: int = 1) -> "HeckeElement":
        """Right multiplication by ``T_i`` (sign +1) or ``T_i^{-1}`` (sign -1)."""
        if not 1 <= i < self.strands:
            raise ValueError(f"generator {i} out of range")
        out: dict = {}

        def add(w, c):
            out[w] = out[w] + c if w in out else c

        for w, c in self.terms.items():
            ws = list(w)
            ws[i - 1], ws[i] = ws[i], ws[i - 1]
            ws = tuple(ws)
            up = w[i - 1] < w[i]
            if sign > 0:
                if up:
                    add(ws, c)
                else:
                    add(w, c * (Q - 1))
                    add(ws, c * Q)
            else:
                # T_i^{-1} = q^{-1} T_i + (q^{-1} - 1)
                qi = Q ** -1
                if up:
                    add(ws, c * qi)
                    add(w, c * (qi - 1))
                else:
                    # T_w = T_ws T_i
                    add(ws, c)
        return HeckeElement(self.strands, out)

    def __mul__(self, other: "HeckeElement") -> "HeckeElement":
        if other.strands != self.strands:
            raise ValueError("Hecke elements on different strand counts")
        total = HeckeElement(self.strands, {})
        for w, c in other.terms.items():
            part = self
            for i in reduced_word(w):
                part = part.times_generator(i)
            total = total + part.scale(c)
        return total


def reduced_word(w: tuple[int, ...]) -> list[int]:
    """A reduced word ``i_1 ... i_l`` with ``w = s_{i_1} ... s_{i_l}``."""
    w = list(w)
    word: list[int] = []
    # peel right descents: w = w' s_i with w(i) > w(i+1)
    while True:
        for i in range(len(w) - 1):
            if w[i] > w[i + 1]:
                w[i], w[i + 1] = w[i + 1], w[i]
                word.append(i + 1)
                break
        else:
            break
    return list(reversed(word))


def represent(w: BraidWord) -> HeckeElement:
    if not w.datum.is_type_a:
        raise ValueError("Hecke representation needs a type-A word")
    h = HeckeElement.one(w.strands)
    for letter in w.letters:
        h = h.times_generator(letter.index, letter.sign)
    return h


def _lift(c: LPoly) -> LPoly:
    return LPoly(TRACE_VARS, {(k[0], 0): v for k, v in c.terms.items()})


def ocneanu_trace(h: HeckeElement) -> LPoly:
    """Markov trace with ``tr(1) = 1`` as a Laurent polynomial in ``(q, lam)``.

    Strand reduction: if ``w(n+1) != n+1`` write ``T_w = T_u T_n Y`` with u
    and Y on n strands (move the value n+1 to position n by right
    descents, then across position n), so ``tr(T_w) = λ tr(T_u Y)``.
    """
    lam = LPoly.var(TRACE_VARS, "lam")
    n1 = h.strands
    # coefficients now live in Z[q^±, lam]
    current = {w: _lift(c) for w, c in h.terms.items()}
    while n1 > 1:
        n = n1 - 1
        nxt: dict = {}

        def add(w, c):
            nxt[w] = nxt[w] + c if w in nxt else c

        for w, c in current.items():
            if w[n] == n1:
                add(w[:n], c)
                continue
            w = list(w)
            b = w.index(n1) + 1  # position of the value n+1 (1-based)
            tail = []
            for pos in range(b, n):
                w[pos - 1], w[pos] = w[pos], w[pos - 1]
                tail.append(pos)
            # now w(n) = n+1; w = u s_n with u fixing n+1
            w[n - 1], w[n] = w[n], w[n - 1]
            u = tuple(w[:n])
            # Y = T_{n-1} ... T_b, i.e. the tail in reverse order
            prod = _HeckeLam.basis(n, u)
            for i in reversed(tail):
                prod = prod.times_generator(i)
            for v, cv in prod.terms.items():
                add(v, c * lam * cv)
        current = nxt
        n1 = n
    total = LPoly(TRACE_VARS)
    for c in current.values():
        total = total + c
    return total


class _HeckeLam:
    """Minimal Hecke element with coefficients in Z[q^±, lam] (trace internals)."""

    Qt = LPoly.var(TRACE_VARS, "q")

    def __init__(self, strands: int, terms: dict):
        self.strands = strands
        self.terms = {w: c for w, c in terms.items() if not c.is_zero()}

    @classmethod
    def basis(cls, strands: int, perm) -> "_HeckeLam":
        return cls(strands, {tuple(perm): LPoly.const(TRACE_VARS, 1)})

    def times_generator(self, i: int) -> "_HeckeLam":
        out: dict = {}

        def add(w, c):
            out[w] = out[w] + c if w in out else c

        for w, c in self.terms.items():
            ws = list(w)
            ws[i - 1], ws[i] = ws[i], ws[i - 1]
            ws = tuple(ws)
            if w[i - 1] < w[i]:
                add(ws, c)
            else:
                add(w, c * (self.Qt - 1))
                add(ws, c * self.Qt)
        return _HeckeLam(self.strands, out)


def _v_to_z(coeffs: dict[int, int]) -> dict[int, int]:
    """Rewrite a Laurent polynomial in v as a polynomial in z = v - v^{-1}."""
    f = {k: c for k, c in coeffs.items() if c}
    out: dict[int, int] = {}
    while f:
        top = max(f)
        if top < 0:
            raise ArithmeticError("not a polynomial in v - v^{-1}")
        c = f[top]
        out[top] = c
        # subtract c * (v - v^{-1})^top
        for k in range(top + 1):
            e = top - 2 * k
            f[e] = f.get(e, 0) - c * comb(top, k) * (-1) ** k
            if not f[e]:
                del f[e]
    return out


def homfly(w: BraidWord) -> LPoly:
    """HOMFLY polynomial of the closure of ``w`` in ``(a, z)``."""
    r = w.strands
    e = w.writhe()
    tr = ocneanu_trace(represent(w))
    av = ("a", "v")
    a = LPoly.var(av, "a")
    v = LPoly.var(av, "v")
    total = LPoly(av)
    for (qe, k), c in tr.terms.items():
        if k > r - 1:
            raise ArithmeticError("trace degree in lam exceeds strands - 1")
        piece = (
            LPoly.monomial(av, {"v": 2 * qe}, c)
            * (a * a - 1) ** (r - 1 - k)
            * a ** (2 * k - r + 1)
            * (v * v - 1) ** k
        )
        total = total + piece
    total = total * a ** (-e) * v ** (-e)
    # z^{r-1} P as a polynomial in z, per power of a
    by_a: dict[int, dict[int, int]] = {}
    for (ae, ve), c in total.terms.items():
        by_a.setdefault(ae, {})[ve] = c
    out = {}
    for ae, vpoly in by_a.items():
        for ze, c in _v_to_z(vpoly).items():
            out[(ae, ze - (r - 1))] = c
    return LPoly(HOMFLY_VARS, out)


def unlink(r: int) -> LPoly:
    """HOMFLY of the r-component unlink, ``((a - a^{-1}) / z)^{r-1}``."""
    a = LPoly.var(HOMFLY_VARS, "a")
    z = LPoly.var(HOMFLY_VARS, "z")
    return ((a - a ** -1) * z ** -1) ** (r - 1)


def mirror(p: LPoly) -> LPoly:
    """HOMFLY of the mirror image: ``(a, z) -> (a^{-1}, -z)``."""
    return LPoly(p.vars, {(-ae, ze): c * (-1) ** ze for (ae, ze), c in p.terms.items()})
