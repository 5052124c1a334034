"""Independent reference implementations used only by the tests.

Nothing here imports the package's linear algebra, normal forms or Hecke
code: quotient rings come from sympy Gröbner bases, ranks from plain
Fraction elimination, and link polynomials from a Kauffman-bracket state sum.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, product
from math import comb

import sympy


# --- linear algebra ---------------------------------------------------------

def fraction_rank(rows: list[list], p: int = 0) -> int:
    m = [[Fraction(x) if not p else int(x) % p for x in row] for row in rows]
    if not m or not m[0]:
        return 0
    rank = 0
    ncols = len(m[0])
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = (1 / m[rank][c]) if not p else pow(m[rank][c], -1, p)
        m[rank] = [x * inv if not p else x * inv % p for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c]:
                f = m[r][c]
                m[r] = [a - f * b if not p else (a - f * b) % p for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


# --- Bott–Samelson quotient rings via Gröbner bases --------------------------

class QuotientRing:
    """``Q[x^(0..q)]`` modulo the wall relations, with sympy normal forms."""

    def __init__(self, strands: int, walls: tuple[int, ...]):
        self.r = strands
        self.walls = tuple(walls)
        q = len(walls)
        self.x = [[sympy.Symbol(f"x{a}_{m}") for m in range(1, strands + 1)] for a in range(q + 1)]
        gens = []
        for t, i in enumerate(walls, start=1):
            lo, hi = self.x[t - 1], self.x[t]
            for m in range(strands):
                if m not in (i - 1, i):
                    gens.append(lo[m] - hi[m])
            gens.append(lo[i - 1] + lo[i] - hi[i - 1] - hi[i])
            gens.append(lo[i - 1] * lo[i] - hi[i - 1] * hi[i])
        # top alphabet first so that normal forms push toward x^(0)
        self.symbols = [s for alpha in reversed(self.x) for s in alpha]
        self.G = sympy.groebner(gens, *self.symbols, order="grevlex") if gens else None

    def reduce(self, f):
        f = sympy.expand(f)
        if self.G is None:
            return f
        return self.G.reduce(f)[1]

    @lru_cache(maxsize=None)
    def standard_monomials(self, n: int) -> tuple:
        """Monomials of polynomial degree n not in the leading-term ideal."""
        out = []
        leads = []
        if self.G is not None:
            leads = [sympy.Poly(g, *self.symbols).monoms(order="grevlex")[0] for g in self.G.exprs]
        for combo in combinations_with_replacement(range(len(self.symbols)), n):
            e = [0] * len(self.symbols)
            for k in combo:
                e[k] += 1
            if any(all(a >= b for a, b in zip(e, lead)) for lead in leads):
                continue
            out.append(sympy.Mul(*[s ** k for s, k in zip(self.symbols, e)]))
        return tuple(out)

    def coords(self, f, n: int) -> list:
        basis = self.standard_monomials(n)
        red = self.reduce(f)
        if red == 0:
            return [0] * len(basis)
        poly = sympy.Poly(red, *self.symbols)
        lookup = {sympy.Poly(b, *self.symbols).monoms()[0]: k for k, b in enumerate(basis)}
        vec = [0] * len(basis)
        for mono, c in poly.terms():
            vec[lookup[mono]] = Fraction(int(c.p), int(c.q))
        return vec

    def dim(self, n: int) -> int:
        return len(self.standard_monomials(n)) if n >= 0 else 0


def hilbert_dim(strands: int, nwalls: int, n: int) -> int:
    """Coefficient of t^n in (1 + t)^q / (1 - t)^r."""
    if n < 0:
        return 0
    return sum(comb(nwalls, k) * comb(n - k + strands - 1, strands - 1) for k in range(min(nwalls, n) + 1))


def koszul_hh_dims(ring: QuotientRing, shift: int, d: int) -> dict[int, int]:
    """``dim HH_j`` at internal degree d by a dense Koszul complex over ``ring``."""
    r = ring.r
    left, right = ring.x[0], ring.x[-1]

    def slot_n(j: int) -> int | None:
        m = d - 2 * j - shift
        return m // 2 if m >= 0 and m % 2 == 0 else None

    def chain(j: int) -> list[tuple]:
        n = slot_n(j)
        if n is None or j < 0 or j > r:
            return []
        return [(S, b) for S in combinations(range(r), j) for b in ring.standard_monomials(n)]

    def boundary(j: int) -> list[list]:
        src, tgt = chain(j), chain(j - 1)
        if not src or not tgt:
            return [[0] * len(src) for _ in tgt]
        n_t = slot_n(j - 1)
        per = len(ring.standard_monomials(n_t))
        order = {S: k for k, S in enumerate(combinations(range(r), j - 1))}
        cols = []
        for S, b in src:
            col = [0] * len(tgt)
            for k, m in enumerate(S):
                T = S[:k] + S[k + 1 :]
                vec = ring.coords((left[m] - right[m]) * b, n_t)
                sgn = -1 if k % 2 else 1
                base = order[T] * per
                for i, v in enumerate(vec):
                    col[base + i] += sgn * v
            cols.append(col)
        return [list(row) for row in zip(*cols)]

    ranks = {j: fraction_rank(boundary(j)) for j in range(1, r + 1)}
    return {j: len(chain(j)) - ranks.get(j, 0) - ranks.get(j + 1, 0) for j in range(r + 1)}


# --- Demazure operators on monomials -----------------------------------------

def demazure_monomial(a: int, b: int) -> dict[tuple[int, int], int]:
    """∂(x^a y^b) = (x^a y^b - x^b y^a) / (x - y) as {(i, j): coeff}."""
    if a == b:
        return {}
    if a > b:
        return {(a - 1 - k, b + k): 1 for k in range(a - b)}
    return {(a + k, b - 1 - k): -1 for k in range(b - a)}


# --- Jones polynomial by the Kauffman bracket ---------------------------------

def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _loops(strands: int, smoothings: list[tuple[int, bool]]) -> int:
    """Loops in the closure of a fully smoothed braid (True = cup-cap)."""
    k = len(smoothings)
    node = lambda level, pos: (level % k if k else 0) * strands + pos  # noqa: E731
    parent = list(range(max(k, 1) * strands))

    def join(a, b):
        ra, rb = _find(parent, a), _find(parent, b)
        if ra != rb:
            parent[ra] = rb

    for c, (i, cup) in enumerate(smoothings):
        for p in range(strands):
            if p in (i - 1, i):
                continue
            join(node(c, p), node(c + 1, p))
        if cup:
            join(node(c, i - 1), node(c, i))
            join(node(c + 1, i - 1), node(c + 1, i))
        else:
            join(node(c, i - 1), node(c + 1, i - 1))
            join(node(c, i), node(c + 1, i))
    return len({_find(parent, x) for x in range(len(parent))})


def _pmul(f: dict, g: dict) -> dict:
    out: dict = {}
    for a, x in f.items():
        for b, y in g.items():
            out[a + b] = out.get(a + b, 0) + x * y
    return {k: v for k, v in out.items() if v}


def jones_in_A(ints: list[int], strands: int) -> dict[int, int]:
    """Normalized bracket ``(-A^3)^{-w} <D> / δ`` as a Laurent polynomial in A.

    ``σ_i`` smooths as ``A <id> + A^{-1} <cup-cap>``, ``σ_i^{-1}`` the other
    way round; ``V(t)`` is this at ``A = t^{-1/4}``.
    """
    delta = {2: -1, -2: -1}
    total: dict = {}
    for choice in product((False, True), repeat=len(ints)):
        power = 0
        sm = []
        for n, cup in zip(ints, choice):
            sign = 1 if n > 0 else -1
            power += -sign if cup else sign
            sm.append((abs(n), cup))
        loops = _loops(strands, sm)
        term = {power: 1}
        for _ in range(loops - 1):
            term = _pmul(term, delta)
        for k, v in term.items():
            total[k] = total.get(k, 0) + v
    w = sum(1 if n > 0 else -1 for n in ints)
    norm = {-3 * w: (-1) ** w}
    return _pmul({k: v for k, v in total.items() if v}, norm)
