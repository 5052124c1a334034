"""Cartan data, roots, Weyl-group action, and link combinatorics of braid words.

Type A roots use GL-style coordinates in Z^r: alpha_i = e_i - e_{i+1} and
s_i swaps coordinates i and i+1.  For a general Cartan matrix roots are
recorded in the simple-root basis (length r_s) and reflected by
s_i(v) = v - <alpha_i^vee, v> alpha_i.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import inf
from typing import TYPE_CHECKING, Sequence

if TYPE_CHECKING:
    from .braidword import BraidWord


@dataclass(frozen=True)
class CartanDatum:
    rank: int
    semisimple_rank: int
    matrix: tuple[tuple[int, ...], ...]
    kind: str = "general"

    def __post_init__(self) -> None:
        rs = self.semisimple_rank
        if self.rank < 1:
            raise ValueError("rank must be positive")
        if not 0 <= rs <= self.rank:
            raise ValueError("semisimple rank out of range")
        if len(self.matrix) != rs or any(len(row) != rs for row in self.matrix):
            raise ValueError("Cartan matrix must be r_s x r_s")
        for i in range(rs):
            if self.matrix[i][i] != 2:
                raise ValueError("diagonal Cartan entries must be 2")
            for j in range(rs):
                if i == j:
                    continue
                a, b = self.matrix[i][j], self.matrix[j][i]
                if a > 0:
                    raise ValueError("off-diagonal Cartan entries must be <= 0")
                if (a == 0) != (b == 0):
                    raise ValueError("a_ij = 0 iff a_ji = 0")

    @property
    def is_type_a(self) -> bool:
        return self.kind == "A"

    @property
    def coord_length(self) -> int:
        return self.rank if self.is_type_a else self.semisimple_rank

    def check_index(self, i: int) -> None:
        if not 1 <= i <= self.semisimple_rank:
            raise ValueError(f"generator index {i} outside 1..{self.semisimple_rank}")


def type_a(r: int) -> CartanDatum:
    """Cartan datum of SU(r): r - 1 simple roots in a chain."""
    if r < 1:
        raise ValueError("type A needs at least one strand")
    rs = r - 1
    mat = tuple(
        tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(rs)) for i in range(rs)
    )
    return CartanDatum(rank=r, semisimple_rank=rs, matrix=mat, kind="A")


def cartan_from_matrix(matrix: Sequence[Sequence[int]], rank: int | None = None) -> CartanDatum:
    mat = tuple(tuple(int(x) for x in row) for row in matrix)
    rs = len(mat)
    return CartanDatum(rank=rank if rank is not None else max(rs, 1), semisimple_rank=rs, matrix=mat)


def braid_exponent(cd: CartanDatum, i: int, j: int) -> float:
    """Order m_ij of s_i s_j: 2, 3, 4, 6 or ``math.inf``."""
    cd.check_index(i)
    cd.check_index(j)
    if i == j:
        raise ValueError("no braid relation between a generator and itself")
    prod = cd.matrix[i - 1][j - 1] * cd.matrix[j - 1][i - 1]
    return {0: 2, 1: 3, 2: 4, 3: 6}.get(prod, inf)


@dataclass(frozen=True)
class RootVector:
    coords: tuple[int, ...]

    def __add__(self, other: "RootVector") -> "RootVector":
        if len(self.coords) != len(other.coords):
            raise ValueError("root vectors of different lengths")
        return RootVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "RootVector":
        return RootVector(tuple(-a for a in self.coords))

    def __sub__(self, other: "RootVector") -> "RootVector":
        return self + (-other)

    def scale(self, c: int) -> "RootVector":
        return RootVector(tuple(c * a for a in self.coords))


def simple_root(cd: CartanDatum, i: int) -> RootVector:
    cd.check_index(i)
    n = cd.coord_length
    e = [0] * n
    if cd.is_type_a:
        e[i - 1], e[i] = 1, -1
    else:
        e[i - 1] = 1
    return RootVector(tuple(e))


def _reflect(cd: CartanDatum, i: int, v: RootVector) -> RootVector:
    cd.check_index(i)
    c = list(v.coords)
    if len(c) != cd.coord_length:
        raise ValueError("root vector length does not match the datum")
    if cd.is_type_a:
        c[i - 1], c[i] = c[i], c[i - 1]
        return RootVector(tuple(c))
    # <alpha_i^vee, alpha_j> = a_ij
    pairing = sum(cd.matrix[i - 1][j] * c[j] for j in range(len(c)))
    c[i - 1] -= pairing
    return RootVector(tuple(c))


def weyl_apply(cd: CartanDatum, word: Sequence[int], v: RootVector) -> RootVector:
    """Apply ``s_{i_1} s_{i_2} ... s_{i_n}`` (as a composite map) to ``v``."""
    for i in word:
        cd.check_index(i)
    for i in reversed(list(word)):
        v = _reflect(cd, i, v)
    return v


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError("not a bijection on 1..n")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, i: int) -> "Permutation":
        im = list(range(1, n + 1))
        im[i - 1], im[i] = im[i], im[i - 1]
        return cls(tuple(im))

    def __call__(self, k: int) -> int:
        return self.images[k - 1]

    def compose(self, other: "Permutation") -> "Permutation":
        """``self after other``."""
        return Permutation(tuple(self(other(k)) for k in range(1, len(self.images) + 1)))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for k, v in enumerate(self.images, start=1):
            inv[v - 1] = k
        return Permutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(1, len(self.images) + 1):
            if start in seen:
                continue
            cyc = []
            k = start
            while k not in seen:
                seen.add(k)
                cyc.append(k)
                k = self(k)
            out.append(tuple(cyc))
        return out

    def length(self) -> int:
        im = self.images
        return sum(1 for a in range(len(im)) for b in range(a + 1, len(im)) if im[a] > im[b])


def v_representation(cd: CartanDatum, w: "BraidWord") -> tuple[list[tuple[int, RootVector]], int]:
    """Signed translates ``(eps_j, s_{i_1}...s_{i_{j-1}}(alpha_{i_j}))``."""
    out = []
    prefix: list[int] = []
    for letter in w.letters:
        root = weyl_apply(cd, prefix, simple_root(cd, letter.index))
        out.append((letter.sign, root))
        prefix.append(letter.index)
    return out, 2 * sum(s for s, _ in out)


def permutation_and_components(cd: CartanDatum, w: "BraidWord") -> tuple[Permutation, int]:
    if not cd.is_type_a:
        raise ValueError("link components are only defined for type A data")
    perm = Permutation.identity(cd.rank)
    for letter in w.letters:
        perm = perm.compose(Permutation.transposition(cd.rank, letter.index))
    return perm, len(perm.cycles())
