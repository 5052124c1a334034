"""Exact linear algebra over Q or F_p.

Matrices are assembled sparsely in Python (:class:`SparseMatrix`) and handed
to python-flint for rank and row reduction.  Integer matrices over Q go
through ``fmpz_mat`` (fraction-free), anything with fractions through
``fmpq_mat``, and prime fields through ``nmod_mat``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import flint

from .polyalg import QQ, Field


@dataclass
class SparseMatrix:
    """``nrows x ncols`` matrix stored as ``{(row, col): value}``."""

    nrows: int
    ncols: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.nrows < 0 or self.ncols < 0:
            raise ValueError("negative matrix dimension")

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def dense(self) -> list[list]:
        rows = [[0] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def is_zero(self) -> bool:
        return not any(self.entries.values())

    def scaled(self, c) -> "SparseMatrix":
        return SparseMatrix(
            self.nrows, self.ncols, {k: v * c for k, v in self.entries.items() if v * c}
        )

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.ncols, self.nrows, {(j, i): v for (i, j), v in self.entries.items()})

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        out = dict(self.entries)
        for k, v in other.entries.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return SparseMatrix(self.nrows, self.ncols, out)

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        by_row: dict[int, list] = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        out: dict = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                out[(i, j)] = out.get((i, j), 0) + a * b
        return SparseMatrix(self.nrows, other.ncols, {k: v for k, v in out.items() if v})

    def reduced(self, fld: Field) -> "SparseMatrix":
        out = {}
        for k, v in self.entries.items():
            v = fld(v)
            if v:
                out[k] = v
        return SparseMatrix(self.nrows, self.ncols, out)

    @staticmethod
    def zeros(nrows: int, ncols: int) -> "SparseMatrix":
        return SparseMatrix(nrows, ncols, {})

    @staticmethod
    def identity(n: int) -> "SparseMatrix":
        return SparseMatrix(n, n, {(i, i): 1 for i in range(n)})

    @staticmethod
    def from_dense(rows: Sequence[Sequence]) -> "SparseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        ent = {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v}
        return SparseMatrix(nrows, ncols, ent)

    @staticmethod
    def block(grid: Sequence[Sequence["SparseMatrix | None"]], row_sizes=None, col_sizes=None):
        """Assemble a block matrix; ``None`` blocks are zero.

        Sizes are inferred from the non-``None`` blocks unless given.
        """
        nbr = len(grid)
        nbc = len(grid[0]) if nbr else 0
        rs = list(row_sizes) if row_sizes is not None else [None] * nbr
        cs = list(col_sizes) if col_sizes is not None else [None] * nbc
        for bi, row in enumerate(grid):
            for bj, blk in enumerate(row):
                if blk is None:
                    continue
                if rs[bi] is None:
                    rs[bi] = blk.nrows
                elif rs[bi] != blk.nrows:
                    raise ValueError("inconsistent block row heights")
                if cs[bj] is None:
                    cs[bj] = blk.ncols
                elif cs[bj] != blk.ncols:
                    raise ValueError("inconsistent block column widths")
        if None in rs or None in cs:
            raise ValueError("block sizes could not be inferred")
        roff = [0]
        for s in rs:
            roff.append(roff[-1] + s)
        coff = [0]
        for s in cs:
            coff.append(coff[-1] + s)
        out = {}
        for bi, row in enumerate(grid):
            for bj, blk in enumerate(row):
                if blk is None:
                    continue
                r0, c0 = roff[bi], coff[bj]
                for (i, j), v in blk.entries.items():
                    out[(r0 + i, c0 + j)] = v
        return SparseMatrix(roff[-1], coff[-1], out)

    @staticmethod
    def block_diag(blocks: Sequence["SparseMatrix"]) -> "SparseMatrix":
        n = len(blocks)
        grid = [[blocks[i] if i == j else None for j in range(n)] for i in range(n)]
        return SparseMatrix.block(
            grid, row_sizes=[b.nrows for b in blocks], col_sizes=[b.ncols for b in blocks]
        )

    @staticmethod
    def hstack(blocks: Sequence["SparseMatrix"], nrows: int | None = None) -> "SparseMatrix":
        if nrows is None:
            nrows = blocks[0].nrows if blocks else 0
        return SparseMatrix.block([list(blocks)], row_sizes=[nrows], col_sizes=[b.ncols for b in blocks])


def _flat(m: SparseMatrix) -> list:
    flat = [0] * (m.nrows * m.ncols)
    nc = m.ncols
    for (i, j), v in m.entries.items():
        flat[i * nc + j] = v
    return flat


def to_flint(m: SparseMatrix, fld: Field = QQ, rational: bool = False):
    """Convert to the flint matrix type matching ``fld``."""
    p = fld.characteristic
    if p:
        return flint.nmod_mat(m.nrows, m.ncols, [fld(v) for v in _flat(m)], p)
    if rational or any(isinstance(v, Fraction) for v in m.entries.values()):
        flat = [flint.fmpq(v.numerator, v.denominator) if isinstance(v, Fraction) else v for v in _flat(m)]
        return flint.fmpq_mat(m.nrows, m.ncols, flat)
    return flint.fmpz_mat(m.nrows, m.ncols, _flat(m))


def rank(m: SparseMatrix, fld: Field = QQ) -> int:
    if m.nrows == 0 or m.ncols == 0 or not m.entries:
        return 0
    return int(to_flint(m, fld).rank())


def nullity(m: SparseMatrix, fld: Field = QQ) -> int:
    return m.ncols - rank(m, fld)


def _scalar(x, fld: Field):
    if fld.characteristic:
        return int(x)
    if isinstance(x, flint.fmpz):
        return int(x)
    num, den = int(x.p), int(x.q)
    return num if den == 1 else Fraction(num, den)


def rref(m: SparseMatrix, fld: Field = QQ) -> tuple[list[list], list[int]]:
    """Reduced row echelon form as Python scalars, plus pivot columns."""
    if m.nrows == 0 or m.ncols == 0:
        return [[0] * m.ncols for _ in range(m.nrows)], []
    fm = to_flint(m, fld, rational=True)
    red, r = fm.rref()
    rows = [[_scalar(red[i, j], fld) for j in range(m.ncols)] for i in range(m.nrows)]
    pivots = []
    for i in range(r):
        for j in range(m.ncols):
            if rows[i][j]:
                pivots.append(j)
                break
    return rows, pivots


def kernel(m: SparseMatrix, fld: Field = QQ) -> list[list]:
    """Basis of the right kernel; one vector per free column, in column order."""
    rows, pivots = rref(m, fld)
    n = m.ncols
    pivset = set(pivots)
    basis = []
    for free in range(n):
        if free in pivset:
            continue
        v = [0] * n
        v[free] = 1
        for i, pc in enumerate(pivots):
            c = rows[i][free]
            if c:
                v[pc] = fld(-c)
        basis.append(v)
    return basis


def columns_to_matrix(cols: Sequence[Sequence], nrows: int) -> SparseMatrix:
    ent = {}
    for j, col in enumerate(cols):
        for i, v in enumerate(col):
            if v:
                ent[(i, j)] = v
    return SparseMatrix(nrows, len(cols), ent)


def solve_columns(basis: SparseMatrix, targets: SparseMatrix, fld: Field = QQ) -> list[list]:
    """Coordinates ``X`` with ``basis @ X = targets``; ``basis`` has full column rank.

    Raises ``ValueError`` when some target column is outside the span.
    """
    k = basis.ncols
    aug = SparseMatrix.hstack([basis, targets], nrows=basis.nrows)
    rows, pivots = rref(aug, fld)
    if pivots[:k] != list(range(k)) or any(p >= k for p in pivots):
        raise ValueError("target not in the span of the basis")
    return [[rows[i][k + j] for j in range(targets.ncols)] for i in range(k)]
