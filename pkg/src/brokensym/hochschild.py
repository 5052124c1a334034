"""Hochschild homology of Bott–Samelson bimodules via the Koszul complex.

For a bimodule M over R = Q[x_1..x_r], HH(M) is the homology of
``M ⊗ Λ[θ_1..θ_r]`` with differential

    d(g ⊗ θ_S) = Σ_k (-1)^k (x_{s_k} g - g x_{s_k}) ⊗ θ_{S \\ s_k},

``S = {s_0 < s_1 < ...}``.  Each θ carries internal degree +2, so the
differential preserves internal degree; a slot ``(S, d)`` holds the
module-degree ``d - 2|S| - shift`` piece of M.

Everything here is exact; ranks go through :mod:`brokensym.linalg`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Mapping

from .laurent import LPoly
from .linalg import SparseMatrix, columns_to_matrix, kernel, nullity, rank, rref, solve_columns
from .polyalg import QQ, Field
from .soergel import (
    BimoduleMap,
    BSShape,
    _add_coords,
    _coords_to_terms,
    _normal_terms,
    _terms_to_coords,
    left_linear_matrix,
    matrix_of,
    module_basis,
)


@dataclass(frozen=True)
class KoszulSlot:
    shape: BSShape
    S: tuple[int, ...]
    d: int

    @property
    def j(self) -> int:
        return len(self.S)

    @property
    def module_degree(self) -> int:
        return self.d - 2 * len(self.S) - self.shape.internal_shift

    def dim(self) -> int:
        return len(module_basis(self.shape.strands, self.shape.q, self.module_degree)[0])


class TriGradedDims(Mapping):
    """Finitely supported ``(t, j, d) -> dim`` with zero entries dropped."""

    def __init__(self, data: Mapping[tuple[int, int, int], int] | Iterable = ()):
        items = data.items() if isinstance(data, Mapping) else data
        clean = {}
        for key, v in items:
            if v < 0:
                raise ValueError(f"negative dimension at {key}")
            if v:
                clean[tuple(key)] = int(v)
        self._data = clean

    def __getitem__(self, key):
        return self._data.get(tuple(key), 0)

    def __iter__(self) -> Iterator:
        return iter(sorted(self._data))

    def __len__(self) -> int:
        return len(self._data)

    def __eq__(self, other) -> bool:
        if isinstance(other, TriGradedDims):
            return self._data == other._data
        if isinstance(other, Mapping):
            return self._data == {k: v for k, v in other.items() if v}
        return NotImplemented

    def __repr__(self) -> str:
        return f"TriGradedDims({dict(sorted(self._data.items()))})"

    def rows(self) -> list[list[int]]:
        return [[t, j, d, self._data[(t, j, d)]] for (t, j, d) in sorted(self._data)]

    def restrict(self, d_max: int) -> "TriGradedDims":
        return TriGradedDims({k: v for k, v in self._data.items() if k[2] <= d_max})

    def shifted(self, dt: int = 0, dj: int = 0, dd: int = 0) -> "TriGradedDims":
        return TriGradedDims({(t + dt, j + dj, d + dd): v for (t, j, d), v in self._data.items()})

    def diff(self, other: "TriGradedDims") -> dict:
        """Entries where the two differ: ``key -> (mine, theirs)``."""
        keys = set(self._data) | set(other._data)
        return {k: (self[k], other[k]) for k in sorted(keys) if self[k] != other[k]}

    def poincare(self) -> LPoly:
        """Σ dim · T^t A^j Q^d."""
        return LPoly(("T", "A", "Q"), dict(self._data))

    def euler(self) -> LPoly:
        """Σ (-1)^t dim · a^j q^d."""
        out: dict = {}
        for (t, j, d), v in self._data.items():
            out[(j, d)] = out.get((j, d), 0) + (-1) ** t * v
        return LPoly(("a", "q"), out)

    def min_degree(self) -> int | None:
        return min((k[2] for k in self._data), default=None)


# --- the Koszul differential ------------------------------------------

def subsets(r: int, j: int) -> list[tuple[int, ...]]:
    return list(combinations(range(1, r + 1), j))


@lru_cache(maxsize=None)
def koszul_images(shape: BSShape) -> tuple:
    """Per position m: generator images of ``g -> x^{(0)}_m g - g x^{(q)}_m``."""
    r, q = shape.strands, shape.q
    bare = BSShape(r, shape.walls)
    out = []
    for m in range(1, r + 1):
        imgs = []
        for mask in range(1 << q):
            terms = _coords_to_terms({mask: {(0,) * r: 1}}, bare)
            right = {}
            for mono, c in terms.items():
                e = list(mono)
                e[q * r + m - 1] += 1
                right[tuple(e)] = c
            right = _terms_to_coords(_normal_terms(right, r, shape.walls), bare)
            one = [0] * r
            one[m - 1] = 1
            left = {mask: {tuple(one): 1}}
            imgs.append(_add_coords(left, right, -1))
        out.append(tuple(imgs))
    return tuple(out)


def koszul_matrix(shape: BSShape, S: tuple[int, ...], d: int, field: Field = QQ, cutoff: int | None = None) -> SparseMatrix:
    """Differential from slot ``(S, d)`` to the stacked slots ``(S - s, d)``, s in S."""
    if cutoff is not None and d > cutoff:
        raise ValueError(f"degree {d} exceeds the cutoff {cutoff}")
    S = tuple(S)
    src = KoszulSlot(shape, S, d)
    ncols = src.dim()
    if not S:
        return SparseMatrix(0, ncols)
    imgs = koszul_images(shape)
    blocks = []
    for k, m in enumerate(S):
        blk = left_linear_matrix(
            imgs[m - 1], shape.strands, shape.q, src.module_degree, shape.q, src.module_degree + 2
        )
        blocks.append([blk.scaled(-1) if k % 2 else blk])
    mat = SparseMatrix.block(blocks, col_sizes=[ncols])
    return mat.reduced(field) if field.characteristic else mat


@lru_cache(maxsize=None)
def koszul_differential(shape: BSShape, j: int, d: int, field: Field = QQ) -> SparseMatrix:
    """Full differential ``K_j(d) -> K_{j-1}(d)`` in canonical slot order."""
    r = shape.strands
    cols = subsets(r, j)
    rows = subsets(r, j - 1) if j >= 1 else []
    col_sizes = [KoszulSlot(shape, S, d).dim() for S in cols]
    row_sizes = [KoszulSlot(shape, S, d).dim() for S in rows]
    if not cols or not rows:
        return SparseMatrix(sum(row_sizes), sum(col_sizes))
    row_of = {S: k for k, S in enumerate(rows)}
    imgs = koszul_images(shape)
    grid: list[list] = [[None] * len(cols) for _ in rows]
    for c, S in enumerate(cols):
        mdeg = d - 2 * j - shape.internal_shift
        for k, m in enumerate(S):
            T = S[:k] + S[k + 1 :]
            blk = left_linear_matrix(imgs[m - 1], r, shape.q, mdeg, shape.q, mdeg + 2)
            grid[row_of[T]][c] = blk.scaled(-1) if k % 2 else blk
    mat = SparseMatrix.block(grid, row_sizes=row_sizes, col_sizes=col_sizes)
    return mat.reduced(field) if field.characteristic else mat


def chain_dim(shape: BSShape, j: int, d: int) -> int:
    if j < 0 or j > shape.strands:
        return 0
    return comb(shape.strands, j) * shape.dim(d - 2 * j)


@lru_cache(maxsize=None)
def koszul_rank(shape: BSShape, j: int, d: int, field: Field = QQ) -> int:
    if j < 1 or j > shape.strands:
        return 0
    return rank(koszul_differential(shape, j, d, field), field)


def hh_dim(shape: BSShape, j: int, d: int, field: Field = QQ) -> int:
    return chain_dim(shape, j, d) - koszul_rank(shape, j, d, field) - koszul_rank(shape, j + 1, d, field)


def hh_dims(shape: BSShape, cutoff: int, field: Field = QQ) -> dict[tuple[int, int], int]:
    """Nonzero ``dim HH_j(shape)_d`` for every ``d <= cutoff``."""
    out = {}
    lo = shape.internal_shift
    for d in range(lo, cutoff + 1, 2):
        for j in range(shape.strands + 1):
            v = hh_dim(shape, j, d, field)
            if v:
                out[(j, d)] = v
    return out


# --- representatives and induced maps ----------------------------------

def hh_representatives(shape: BSShape, j: int, d: int, field: Field = QQ) -> tuple[list[list], SparseMatrix]:
    """Cycle representatives of a basis of ``HH_j(shape)_d`` and the boundary matrix.

    Representatives are the pivot columns of ``[boundaries | cycles]`` under
    exact row reduction, so the choice is deterministic.
    """
    n = chain_dim(shape, j, d)
    cycles = kernel(koszul_differential(shape, j, d, field), field) if j >= 1 else [
        [1 if a == b else 0 for a in range(n)] for b in range(n)
    ]
    bnd = koszul_differential(shape, j + 1, d, field) if j + 1 <= shape.strands else SparseMatrix(n, 0)
    aug = SparseMatrix.hstack([bnd, columns_to_matrix(cycles, n)], nrows=n)
    _, pivots = rref(aug, field)
    reps = [cycles[p - bnd.ncols] for p in pivots if p >= bnd.ncols]
    return reps, bnd


def _independent_columns(m: SparseMatrix, field: Field) -> SparseMatrix:
    if m.ncols == 0:
        return m
    _, pivots = rref(m, field)
    keep = {p: k for k, p in enumerate(pivots)}
    ent = {(i, keep[c]): v for (i, c), v in m.entries.items() if c in keep}
    return SparseMatrix(m.nrows, len(pivots), ent)


def tensor_map_matrix(f: BimoduleMap, j: int, d: int, field: Field = QQ) -> SparseMatrix:
    """``f ⊗ id`` from ``K_j(source)_d`` to ``K_j(target)_{d + deg f}``."""
    blk = matrix_of(f, d - 2 * j, field=field)
    return SparseMatrix.block_diag([blk] * comb(f.source.strands, j))


def induced_map(f: BimoduleMap, j: int, d: int, field: Field = QQ) -> list[list]:
    """Matrix of ``HH_j(f)`` from degree ``d`` to ``d + deg f`` in the chosen bases."""
    if f.source.strands != f.target.strands:
        raise ValueError("maps between different strand counts")
    d_out = d + f.degree
    src_reps, _ = hh_representatives(f.source, j, d, field)
    tgt_reps, tgt_bnd = hh_representatives(f.target, j, d_out, field)
    if not src_reps or not tgt_reps:
        return [[0] * len(src_reps) for _ in tgt_reps]
    fm = tensor_map_matrix(f, j, d, field)
    n_src = chain_dim(f.source, j, d)
    images = fm @ columns_to_matrix(src_reps, n_src)
    n_tgt = chain_dim(f.target, j, d_out)
    basis = SparseMatrix.hstack(
        [columns_to_matrix(tgt_reps, n_tgt), _independent_columns(tgt_bnd, field)], nrows=n_tgt
    )
    coords = solve_columns(basis, images, field)
    return [row for row in coords[: len(tgt_reps)]]


def induced_rank(f: BimoduleMap, j: int, d: int, field: Field = QQ) -> int:
    """Rank of ``HH_j(f)`` at degree ``d``, from ranks alone (no representatives).

    ``dim(f Z + B) - dim B`` where Z are the source cycles and B the target
    boundaries; ``dim(f Z + B)`` is computed as a nullity of a coupled matrix.
    """
    src, tgt = f.source, f.target
    d_out = d + f.degree
    dz = koszul_differential(src, j, d, field)
    db = koszul_differential(tgt, j + 1, d_out, field) if j + 1 <= tgt.strands else SparseMatrix(
        chain_dim(tgt, j, d_out), 0
    )
    fm = tensor_map_matrix(f, j, d, field)
    coupled = SparseMatrix.block([[dz, None], [fm, db]], row_sizes=[dz.nrows, fm.nrows], col_sizes=[dz.ncols, db.ncols])
    span = nullity(dz, field) + db.ncols - nullity(coupled, field)
    return span - rank(db, field)
