"""The E₁ cube of bimodules, its differential, and the E₂ page.

A vertex J of the cube (a sub-word) carries the Bott–Samelson bimodule of
*all* letters present in J, in word order, shifted down by 2 for every
negative letter present.  Edges point toward the positive part of the word;
in cohomology the differential runs the other way, from cube degree t to
t+1:

* dropping a positive letter merges its wall (``merge_wall``);
* adding a negative letter inserts its wall (``insert_wall``).

Both maps have internal degree 0, and each is multiplied by the cube sign.

E₂ is computed per ``(j, d)`` (Hochschild degree, internal degree) from the
double complex ``V^t_j = ⊕_{dist J = t} K_j(BS(J))_d`` with Koszul
differential ∂ and cube differential δ.  Taking Koszul homology first and
then δ-cohomology,

    dim E₂^t = N(t) - null ∂^{t+1}_{j+1} - null ∂^{t-1}_j - dim V^t_{j+1} + N(t-1),

where ``N(t)`` is the nullity of ``[[∂^t_j, 0], [δ^t_j, ∂^{t+1}_{j+1}]]``.
Only exact ranks are needed; no homology bases are formed.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Mapping, Sequence

from .braidword import BraidWord, GradingLedger, lengths
from .cubeposet import CubePoset, build
from .hochschild import (
    TriGradedDims,
    chain_dim,
    koszul_differential,
    koszul_rank,
    tensor_map_matrix,
)
from .laurent import LPoly
from .linalg import SparseMatrix, nullity, rank
from .polyalg import QQ, Field
from .rootdata import Permutation, RootVector, permutation_and_components, v_representation
from .soergel import BimoduleMap, BSShape, insert_wall, matrix_of, merge_wall


@dataclass(frozen=True)
class E1Complex:
    """Cube of bimodules with signed edge maps.

    ``edge_maps[(near, far)] = (map, sign)`` where ``near`` is the vertex
    closer to the terminal one; the map goes ``BS(near) -> BS(far)``.
    """

    poset: CubePoset
    vertex_modules: Mapping[int, BSShape]
    edge_maps: Mapping[tuple[int, int], tuple[BimoduleMap, int]]

    @property
    def word(self) -> BraidWord:
        return self.poset.word

    def layer(self, t: int) -> list[int]:
        return self.poset.layer(t)

    def with_sign_flipped(self, near: int, far: int) -> "E1Complex":
        """Copy with one edge sign negated (negative control for d₁² checks)."""
        maps = dict(self.edge_maps)
        f, s = maps[(near, far)]
        maps[(near, far)] = (f, -s)
        return E1Complex(self.poset, self.vertex_modules, maps)


def vertex_shape(w: BraidWord, v: int) -> BSShape:
    walls = tuple(x.index for j, x in enumerate(w.letters) if v >> j & 1)
    negatives = sum(1 for j, x in enumerate(w.letters) if v >> j & 1 and x.sign < 0)
    return BSShape(w.strands, walls, -2 * negatives)


def build_e1(w: BraidWord) -> E1Complex:
    if not w.datum.is_type_a:
        raise ValueError("the bimodule model needs a type-A word")
    p = build(w)
    shapes = {v: vertex_shape(w, v) for v in p.vertices}
    maps = {}
    for e in p.edges:
        letter = w.letters[e.position]
        far, near = e.source, e.target
        if letter.sign > 0:
            # near has the letter, far does not: merge it away
            slot = 1 + bin(near & ((1 << e.position) - 1)).count("1")
            f = merge_wall(shapes[near], slot)
        else:
            # far has the letter, near does not: insert it
            slot = 1 + bin(far & ((1 << e.position) - 1)).count("1")
            f = insert_wall(shapes[near], slot, letter.index)
        if f.target != shapes[far]:
            raise AssertionError("edge map does not land in the vertex module")
        maps[(near, far)] = (f, e.sign)
    return E1Complex(p, shapes, maps)


# --- d₁² = 0 -----------------------------------------------------------

@dataclass(frozen=True)
class D1Check:
    ok: bool
    face: tuple[int, int, int, int] | None = None
    generator: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_d1_squared(c: E1Complex, cutoff: int) -> D1Check:
    """Check that the two composites around every 2-face cancel.

    The maps are left R-linear, so it suffices to test the free generators of
    the source module whose internal degree is at most ``cutoff``; every
    element of degree <= cutoff is an R-combination of those.
    """
    for far, a, b, near in c.poset.faces():
        fa, sa = c.edge_maps[(near, a)]
        ga, ta = c.edge_maps[(a, far)]
        fb, sb = c.edge_maps[(near, b)]
        gb, tb = c.edge_maps[(b, far)]
        one = ga.compose(fa).scale(sa * ta)
        two = gb.compose(fb).scale(sb * tb)
        total = one + two
        src = c.vertex_modules[near]
        for mask, img in enumerate(total.images):
            if 2 * bin(mask).count("1") + src.internal_shift > cutoff:
                continue
            if img:
                return D1Check(False, (near, a, b, far), mask)
    return D1Check(True)


# --- the E₂ page --------------------------------------------------------

@dataclass(frozen=True)
class LedgeredPage:
    dims: TriGradedDims
    ledger: GradingLedger
    strands: int
    cutoff: int
    e1: TriGradedDims = field(default_factory=TriGradedDims)
    word: BraidWord | None = None

    @property
    def provisional_band(self) -> tuple[int, int]:
        return (self.cutoff - 2 * self.strands, self.cutoff)

    @property
    def certified_cutoff(self) -> int:
        return self.cutoff - 2 * self.strands


class _Grid:
    """Per-word cache of vertex data for the (j, d) computations."""

    def __init__(self, w: BraidWord, field: Field):
        self.word = w
        self.field = field
        self.c = build_e1(w)
        k = len(w.letters)
        self.layers = [self.c.layer(t) for t in range(k + 1)]
        self.out_edges: dict[int, list[tuple[int, BimoduleMap, int]]] = {}
        for (near, far), (f, s) in self.c.edge_maps.items():
            self.out_edges.setdefault(near, []).append((far, f, s))

    def shape(self, v: int) -> BSShape:
        return self.c.vertex_modules[v]

    def layer_dims(self, t: int, j: int, d: int) -> list[int]:
        if not 0 <= t < len(self.layers):
            return []
        return [chain_dim(self.shape(v), j, d) for v in self.layers[t]]

    def koszul_block(self, t: int, j: int, d: int) -> SparseMatrix:
        """Block-diagonal ∂: V^t_j -> V^t_{j-1}."""
        if not 0 <= t < len(self.layers):
            return SparseMatrix(0, 0)
        r = self.word.strands
        blocks = []
        for v in self.layers[t]:
            sh = self.shape(v)
            if 1 <= j <= r:
                blocks.append(koszul_differential(sh, j, d, self.field))
            else:
                blocks.append(SparseMatrix(chain_dim(sh, j - 1, d), chain_dim(sh, j, d)))
        return SparseMatrix.block_diag(blocks)

    def koszul_nullity(self, t: int, j: int, d: int) -> int:
        if not 0 <= t < len(self.layers):
            return 0
        total = 0
        for v in self.layers[t]:
            sh = self.shape(v)
            total += chain_dim(sh, j, d) - koszul_rank(sh, j, d, self.field)
        return total

    def cube_block(self, t: int, j: int, d: int) -> SparseMatrix:
        """δ: V^t_j -> V^{t+1}_j."""
        src = self.layers[t] if 0 <= t < len(self.layers) else []
        tgt = self.layers[t + 1] if 0 <= t + 1 < len(self.layers) else []
        row_sizes = [chain_dim(self.shape(v), j, d) for v in tgt]
        col_sizes = [chain_dim(self.shape(v), j, d) for v in src]
        row_of = {v: k for k, v in enumerate(tgt)}
        grid: list[list] = [[None] * len(src) for _ in tgt]
        for c, v in enumerate(src):
            if not col_sizes[c]:
                continue
            for far, f, s in self.out_edges.get(v, []):
                m = tensor_map_matrix(f, j, d, self.field)
                grid[row_of[far]][c] = m.scaled(s) if s < 0 else m
        return SparseMatrix.block(grid, row_sizes=row_sizes, col_sizes=col_sizes)

    def coupled_nullity(self, t: int, j: int, d: int) -> int:
        """Nullity of ``[[∂^t_j, 0], [δ^t_j, ∂^{t+1}_{j+1}]]``."""
        dz = self.koszul_block(t, j, d)
        db = self.koszul_block(t + 1, j + 1, d)
        delta = self.cube_block(t, j, d)
        rows = [sum(self.layer_dims(t, j - 1, d)), sum(self.layer_dims(t + 1, j, d))]
        cols = [sum(self.layer_dims(t, j, d)), sum(self.layer_dims(t + 1, j + 1, d))]
        m = SparseMatrix.block([[dz, None], [delta, db]], row_sizes=rows, col_sizes=cols)
        return nullity(m, self.field)

    def e1_entry(self, t: int, j: int, d: int) -> int:
        return sum(
            chain_dim(self.shape(v), j, d)
            - koszul_rank(self.shape(v), j, d, self.field)
            - koszul_rank(self.shape(v), j + 1, d, self.field)
            for v in self.layers[t]
        )

    def e2_column(self, j: int, d: int) -> dict[int, int]:
        k = len(self.layers) - 1
        n_prev = self.coupled_nullity(-1, j, d)
        out = {}
        for t in range(k + 1):
            n_here = self.coupled_nullity(t, j, d)
            val = (
                n_here
                - self.koszul_nullity(t + 1, j + 1, d)
                - self.koszul_nullity(t - 1, j, d)
                - sum(self.layer_dims(t, j + 1, d))
                + n_prev
            )
            if val < 0:
                raise AssertionError(f"negative E2 dimension at {(t, j, d)}")
            if val:
                out[t] = val
            n_prev = n_here
        return out


@lru_cache(maxsize=8)
def _grid(ints: tuple[int, ...], strands: int, characteristic: int) -> _Grid:
    return _Grid(BraidWord.from_ints(ints, strands), Field(characteristic))


def _column_task(args) -> tuple[int, int, dict, dict]:
    ints, strands, p, j, d = args
    g = _grid(ints, strands, p)
    e1 = {t: g.e1_entry(t, j, d) for t in range(len(g.layers))}
    return j, d, g.e2_column(j, d), e1


def degree_range(w: BraidWord, cutoff: int) -> list[int]:
    """Internal degrees that can carry homology: from -2 l₋ up to the cutoff."""
    _, lm, _ = lengths(w)
    return list(range(-2 * lm, cutoff + 1, 2))


def task_size(w: BraidWord, j: int, d: int) -> int:
    """Rough number of columns in the largest coupled matrix for ``(j, d)``."""
    g = _grid(tuple(w.to_ints()), w.strands, 0)
    return max(
        (sum(g.layer_dims(t, j, d)) + sum(g.layer_dims(t + 1, j + 1, d)) for t in range(len(g.layers))),
        default=0,
    )


def compute_e2(
    w: BraidWord,
    cutoff: int,
    field: Field = QQ,
    jobs: int = 1,
    budget: int | None = None,
    progress: Callable[[int, int], None] | None = None,
) -> LedgeredPage:
    """E₂ page through internal degree ``cutoff``.

    ``budget`` (a matrix-width limit) makes the computation stop at the first
    degree whose matrices would exceed it; the returned page then has a
    smaller ``cutoff`` (the last fully computed degree).
    """
    if cutoff % 2:
        raise ValueError("cutoff must be even")
    ints = tuple(w.to_ints())
    r = w.strands
    degrees = degree_range(w, cutoff)
    done_cutoff = cutoff
    if budget is not None:
        ok = []
        for d in degrees:
            if max(task_size(w, j, d) for j in range(r + 1)) > budget:
                done_cutoff = d - 2
                break
            ok.append(d)
        degrees = ok
    tasks = [(ints, r, field.characteristic, j, d) for d in degrees for j in range(r + 1)]
    e2: dict = {}
    e1: dict = {}
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_column_task, tasks))
    else:
        results = []
        for n, task in enumerate(tasks):
            results.append(_column_task(task))
            if progress:
                progress(n + 1, len(tasks))
    for j, d, col, e1col in results:
        for t, v in col.items():
            e2[(t, j, d)] = v
        for t, v in e1col.items():
            e1[(t, j, d)] = v
    _, _, l_norm = lengths(w)
    return LedgeredPage(
        dims=TriGradedDims(e2),
        ledger=GradingLedger(suspension=l_norm, shift=0),
        strands=r,
        cutoff=done_cutoff,
        e1=TriGradedDims(e1),
        word=w,
    )


def euler_characteristic(p: "LedgeredPage | TriGradedDims") -> LPoly:
    """Σ (-1)^t q^d a^j dim, as a Laurent polynomial in (a, q)."""
    dims = p.dims if isinstance(p, LedgeredPage) else p
    return dims.euler()


def reindex(dims: TriGradedDims, delta: GradingLedger) -> TriGradedDims:
    """Move a page along a ledger delta: cube degree shifts by ``-delta.shift``.

    The suspension part only regrades the abutment, not the associated
    graded, so it leaves ``(t, j, d)`` alone.
    """
    return dims.shifted(dt=-delta.shift)


# --- graded exactness ----------------------------------------------------

@dataclass(frozen=True)
class ChainComplex:
    """Finite cochain complex ``V_0 -> V_1 -> ...``; ``maps[i]: V_i -> V_{i+1}``."""

    dims: tuple[int, ...]
    maps: tuple[SparseMatrix, ...]

    def __post_init__(self) -> None:
        if len(self.maps) != max(len(self.dims) - 1, 0):
            raise ValueError("need one map between consecutive terms")
        for i, m in enumerate(self.maps):
            if m.shape != (self.dims[i + 1], self.dims[i]):
                raise ValueError(f"map {i} has shape {m.shape}, expected {(self.dims[i + 1], self.dims[i])}")

    def cohomology(self, field: Field = QQ) -> list[int]:
        ranks = [rank(m, field) for m in self.maps]
        out = []
        for i, n in enumerate(self.dims):
            r_out = ranks[i] if i < len(ranks) else 0
            r_in = ranks[i - 1] if i >= 1 else 0
            out.append(n - r_out - r_in)
        return out


def is_graded_exact(complexes: Mapping[int, ChainComplex] | ChainComplex, field: Field = QQ) -> bool:
    """True iff every degree's complex has vanishing cohomology everywhere."""
    if isinstance(complexes, ChainComplex):
        complexes = {0: complexes}
    return all(all(h == 0 for h in c.cohomology(field)) for c in complexes.values())


def cone(f: Sequence[SparseMatrix], a: ChainComplex, b: ChainComplex) -> ChainComplex:
    """Mapping cone of a chain map ``f: a -> b`` (``f[i]: a_i -> b_i``).

    ``cone^i = a^{i+1} ⊕ b^i`` for ``i = -1 .. N-1``, with
    ``d(x, y) = (-d_a x, f x + d_b y)``.  Terms are renumbered from 0.
    """
    n = max(len(a.dims), len(b.dims))
    ad = list(a.dims) + [0] * (n + 1 - len(a.dims))
    bd = list(b.dims) + [0] * (n + 1 - len(b.dims))

    def da(i: int) -> SparseMatrix:  # a^i -> a^{i+1}
        return a.maps[i] if i < len(a.maps) else SparseMatrix(ad[i + 1], ad[i])

    def db(i: int) -> SparseMatrix:
        return b.maps[i] if i < len(b.maps) else SparseMatrix(bd[i + 1], bd[i])

    def fm(i: int) -> SparseMatrix:
        return f[i] if i < len(f) else SparseMatrix(bd[i], ad[i])

    def term(i: int) -> list[int]:  # [dim a^{i+1}, dim b^i]
        return [ad[i + 1], bd[i] if i >= 0 else 0]

    dims = tuple(sum(term(i)) for i in range(-1, n))
    maps = []
    for i in range(-1, n - 1):
        grid = [
            [da(i + 1).scaled(-1), None],
            [fm(i + 1), db(i) if i >= 0 else None],
        ]
        maps.append(SparseMatrix.block(grid, row_sizes=term(i + 1), col_sizes=term(i)))
    return ChainComplex(dims, tuple(maps))


def cube_cochain_complex(c: E1Complex, d: int, field: Field = QQ) -> ChainComplex:
    """The cube complex of the vertex bimodules at internal degree ``d``."""
    k = len(c.word.letters)
    layers = [c.layer(t) for t in range(k + 1)]
    dims = tuple(sum(c.vertex_modules[v].dim(d) for v in L) for L in layers)
    maps = []
    for t in range(k):
        src, tgt = layers[t], layers[t + 1]
        row_of = {v: n for n, v in enumerate(tgt)}
        grid: list[list] = [[None] * len(src) for _ in tgt]
        for col, v in enumerate(src):
            for (near, far), (f, s) in c.edge_maps.items():
                if near == v:
                    grid[row_of[far]][col] = matrix_of(f, d, field=field).scaled(s)
        maps.append(
            SparseMatrix.block(
                grid,
                row_sizes=[c.vertex_modules[v].dim(d) for v in tgt],
                col_sizes=[c.vertex_modules[v].dim(d) for v in src],
            )
        )
    return ChainComplex(dims, tuple(maps))


# --- limiting descriptor -------------------------------------------------

@dataclass(frozen=True)
class ThomDescriptor:
    signed_roots: tuple[tuple[int, RootVector], ...]
    virtual_dim: int
    permutation: Permutation
    component_count: int
    net_suspension: int

    def cycle_count(self) -> int:
        return len(self.permutation.cycles())

    def as_dict(self) -> dict:
        return {
            "signed_roots": [[s, list(v.coords)] for s, v in self.signed_roots],
            "virtual_dim": self.virtual_dim,
            "permutation": list(self.permutation.images),
            "component_count": self.component_count,
            "net_suspension": self.net_suspension,
        }


def limiting_descriptor(w: BraidWord) -> ThomDescriptor:
    roots, vdim = v_representation(w.datum, w)
    perm, comps = permutation_and_components(w.datum, w)
    _, _, l_norm = lengths(w)
    return ThomDescriptor(tuple(roots), vdim, perm, comps, -vdim + l_norm)


def default_jobs() -> int:
    return max(1, min(4, os.cpu_count() or 1))
