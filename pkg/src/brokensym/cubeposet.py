"""The cube of sub-words of a braid word, oriented toward its positive part.

Vertices are bitmasks (bit ``j`` set means letter ``j+1`` is present).  The
terminal vertex keeps exactly the positive letters.  An edge toggles one bit
and always moves one step closer to the terminal vertex: it adds a positive
letter or removes a negative one.  The cube degree of a vertex is its
Hamming distance from the terminal vertex.

Edge signs are the standard Koszul signs relative to the terminal vertex:
toggling bit ``j`` costs ``(-1)^{#bits below j that differ from terminal}``.

The reduced-sequence posets used for braid-relation comparisons live here too.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import inf

from .braidword import BraidWord, cyclic_permute


@dataclass(frozen=True)
class CubeEdge:
    source: int
    target: int
    position: int  # 0-based letter position toggled
    sign: int


@dataclass(frozen=True)
class CubePoset:
    word: BraidWord
    terminal: int
    edges: tuple[CubeEdge, ...]

    @property
    def size(self) -> int:
        return len(self.word.letters)

    @property
    def vertices(self) -> list[int]:
        return list(range(1 << self.size))

    def distance(self, v: int) -> int:
        if not 0 <= v < (1 << self.size):
            raise ValueError(f"vertex {v} outside the cube")
        return bin(v ^ self.terminal).count("1")

    def layer(self, t: int) -> list[int]:
        if not 0 <= t <= self.size:
            raise ValueError(f"layer {t} outside 0..{self.size}")
        return [v for v in self.vertices if self.distance(v) == t]

    @cached_property
    def edges_from(self) -> dict[int, list[CubeEdge]]:
        out: dict[int, list[CubeEdge]] = {}
        for e in self.edges:
            out.setdefault(e.source, []).append(e)
        return out

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], CubeEdge]:
        return {(e.source, e.target): e for e in self.edges}

    def faces(self):
        """2-faces as ``(far, a, b, near)``: far at distance t+2, near at t."""
        for far in self.vertices:
            diff = far ^ self.terminal
            bits = [j for j in range(self.size) if diff >> j & 1]
            for x in range(len(bits)):
                for y in range(x + 1, len(bits)):
                    a = far ^ (1 << bits[x])
                    b = far ^ (1 << bits[y])
                    near = a ^ (1 << bits[y])
                    yield far, a, b, near

    def dump(self) -> str:
        """Line-oriented adjacency listing (masks in binary, letter 1 leftmost)."""
        k = self.size

        def fmt(v: int) -> str:
            return "".join("1" if v >> j & 1 else "0" for j in range(k)) or "-"

        lines = [f"word {self.word.format() or '(empty)'}", f"terminal {fmt(self.terminal)}"]
        for v in self.vertices:
            outs = " ".join(
                f"{fmt(e.target)}{'+' if e.sign > 0 else '-'}" for e in self.edges_from.get(v, [])
            )
            lines.append(f"{fmt(v)} t={self.distance(v)} -> {outs}".rstrip())
        return "\n".join(lines)


def vertex_letters(w: BraidWord, v: int) -> list[int]:
    """Signed generators present at vertex ``v``, in word order."""
    return [x.signed for j, x in enumerate(w.letters) if v >> j & 1]


def build(w: BraidWord) -> CubePoset:
    k = len(w.letters)
    terminal = sum(1 << j for j, x in enumerate(w.letters) if x.sign > 0)
    edges = []
    for v in range(1 << k):
        diff = v ^ terminal
        for j in range(k):
            if not diff >> j & 1:
                continue
            below = bin(diff & ((1 << j) - 1)).count("1")
            edges.append(CubeEdge(source=v, target=v ^ (1 << j), position=j, sign=-1 if below % 2 else 1))
    return CubePoset(word=w, terminal=terminal, edges=tuple(edges))


def distance(p: CubePoset, v: int) -> int:
    return p.distance(v)


def layer(p: CubePoset, t: int) -> list[int]:
    return p.layer(t)


def rotate_mask(v: int, k: int) -> int:
    """Vertex of the cyclically permuted word matching ``v``.

    Cyclic permutation moves letter 1 to the end, so bit 0 becomes bit k-1.
    """
    if k == 0:
        return v
    return (v >> 1) | ((v & 1) << (k - 1))


def reflect_mask(v: int, k: int) -> int:
    return sum(1 << (k - 1 - j) for j in range(k) if v >> j & 1)


def relabel_cyclic(p: CubePoset) -> CubePoset:
    """The poset of the cyclically permuted word, with unsigned edges relabeled.

    Returns the image of ``p`` under the relabeling; comparing it with
    ``build(cyclic_permute(word))`` (ignoring signs) tests the isomorphism.
    """
    k = p.size
    q = cyclic_permute(p.word)
    edges = tuple(
        CubeEdge(rotate_mask(e.source, k), rotate_mask(e.target, k), (e.position - 1) % k if k else 0, e.sign)
        for e in p.edges
    )
    return CubePoset(word=q, terminal=rotate_mask(p.terminal, k), edges=edges)


def same_unsigned(p: CubePoset, q: CubePoset) -> bool:
    a = {(e.source, e.target, e.position) for e in p.edges}
    b = {(e.source, e.target, e.position) for e in q.edges}
    return p.terminal == q.terminal and a == b


@dataclass(frozen=True)
class ReducedSequencePoset:
    pair: tuple[int, int]
    m: int
    elements: tuple[tuple[int, ...], ...]
    morphisms: tuple[tuple[int, int], ...]  # (shorter index, longer index)


def _alternation(i: int, j: int, length: int, start: int) -> tuple[int, ...]:
    a, b = (i, j) if start == i else (j, i)
    return tuple(a if k % 2 == 0 else b for k in range(length))


def reduced_sequence_poset(i: int, j: int, m: int, m_ij) -> ReducedSequencePoset:
    """Reduced alternating sequences of the window of length ``m``.

    The window is the tail of the full ``i j i ...`` alternation of length
    ``m_ij`` (the whole alternation when ``m = m_ij``).  Elements: the empty
    sequence, both alternations of each length ``0 < p < m``, and the window
    itself; ``2m`` elements in all.  A sequence maps to a longer
    one exactly when it is a subword of it.
    """
    if m_ij == inf or m_ij is None:
        raise ValueError("reduced sequences need a finite braid exponent")
    m_ij = int(m_ij)
    if i == j:
        raise ValueError("pair must consist of distinct generators")
    if not 1 <= m <= m_ij:
        raise ValueError(f"m = {m} outside 1..{m_ij}")
    full = _alternation(i, j, m_ij, i)
    window = full[m_ij - m :]
    elems: list[tuple[int, ...]] = [()]
    for p in range(1, m):
        for start in (i, j):
            elems.append(_alternation(i, j, p, start))
    elems.append(window)
    elems.sort(key=lambda s: (len(s), s))

    def subword(a: tuple, b: tuple) -> bool:
        it = iter(b)
        return all(x in it for x in a)

    morph = tuple(
        (x, y)
        for x, a in enumerate(elems)
        for y, b in enumerate(elems)
        if len(a) < len(b) and subword(a, b)
    )
    return ReducedSequencePoset(pair=(i, j), m=m, elements=tuple(elems), morphisms=morph)
