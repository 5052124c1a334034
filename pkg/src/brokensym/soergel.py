"""Bott–Samelson bimodules in alphabet normal form.

A shape with walls ``(i_1, ..., i_q)`` on ``r`` strands is the quotient of
the polynomial ring in alphabets ``x^{(0)}, ..., x^{(q)}`` by the wall
relations: across wall ``t`` (index ``i``) the alphabets ``t-1`` and ``t``
agree off the pair ``{i, i+1}`` and have equal elementary symmetric
functions on it.  Reducing from the top alphabet down gives a normal form
in which only ``x^{(0)}`` (the ring R) and the square-free ``y_t =
x^{(t)}_{i_t}`` occur, so the module is free over R (acting on the left)
with basis the ``2^q`` square-free monomials in the ``y_t``.  A basis
element is encoded by a bitmask (bit ``t-1`` for ``y_t``).

Elements are handled internally as *coordinates*: ``{mask: {R-monomial:
coeff}}``.  Every map in this module is left R-linear, so it is stored by its
values on the ``2^q`` free generators and extended by multiplying with
R-monomials.

Each negative letter contributes an internal shift of -2 (``internal_shift``);
internal degree = module degree + internal_shift, module degree = twice the
polynomial degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Mapping

from .linalg import SparseMatrix
from .polyalg import QQ, Field, Poly, PolyRing, graded_basis

Coords = dict  # {mask: {rmono: coeff}}


@dataclass(frozen=True)
class BSShape:
    strands: int
    walls: tuple[int, ...] = ()
    internal_shift: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "walls", tuple(self.walls))
        if self.strands < 1:
            raise ValueError("need at least one strand")
        for i in self.walls:
            if not 1 <= i <= self.strands - 1:
                raise ValueError(f"wall index {i} outside 1..{self.strands - 1}")
        if self.internal_shift % 2:
            raise ValueError("internal shift must be even")

    @property
    def q(self) -> int:
        return len(self.walls)

    @property
    def ring(self) -> PolyRing:
        return PolyRing(self.q + 1, self.strands)

    @property
    def rank(self) -> int:
        return 1 << self.q

    def shifted(self, by: int) -> "BSShape":
        return BSShape(self.strands, self.walls, self.internal_shift + by)

    def dim(self, d: int) -> int:
        """Dimension of the internal-degree-``d`` piece."""
        m = d - self.internal_shift
        if m < 0 or m % 2:
            return 0
        n = m // 2
        r = self.strands
        return sum(comb(self.q, k) * comb(n - k + r - 1, r - 1) for k in range(min(self.q, n) + 1))

    def __str__(self) -> str:
        body = "".join(f"B{i}" for i in self.walls) or "R"
        return body + (f"<{self.internal_shift}>" if self.internal_shift else "")


# --- normal form -------------------------------------------------------

@lru_cache(maxsize=None)
def _wall_power(a: int, b: int) -> dict:
    """``y^a (e - y)^b`` reduced by ``y^2 = e y - p``, over ``(X, X', y)``.

    Here X, X' are the pair variables of the lower alphabet, e = X + X',
    p = X X'.  Keys are exponent triples with y-exponent <= 1.
    """
    poly = {(0, 0, a): 1} if a <= 1 else None
    if poly is None:
        poly = {(0, 0, 0): 1}
        for _ in range(a):
            poly = _times_y(poly)
    for _ in range(b):
        # multiply by e - y
        out: dict = {}
        for (x, xp, y), c in poly.items():
            for key, cc in (((x + 1, xp, y), c), ((x, xp + 1, y), c)):
                out[key] = out.get(key, 0) + cc
        for key, c in _times_y(poly).items():
            out[key] = out.get(key, 0) - c
        poly = {k: c for k, c in out.items() if c}
    return poly


def _times_y(poly: dict) -> dict:
    out: dict = {}
    for (x, xp, y), c in poly.items():
        if y == 0:
            keys = (((x, xp, 1), c),)
        else:
            # y^2 = (X + X') y - X X'
            keys = (((x + 1, xp, 1), c), ((x, xp + 1, 1), c), ((x + 1, xp + 1, 0), -c))
        for key, cc in keys:
            out[key] = out.get(key, 0) + cc
    return {k: c for k, c in out.items() if c}


def _normal_terms(terms: Mapping[tuple, int], r: int, walls: tuple[int, ...]) -> dict:
    terms = dict(terms)
    for t in range(len(walls), 0, -1):
        i = walls[t - 1]
        lo = (t - 1) * r
        hi = t * r
        out: dict = {}
        for mono, c in terms.items():
            block = mono[hi : hi + r]
            a, b = block[i - 1], block[i]
            clean = b == 0 and a <= 1 and all(block[m] == 0 for m in range(r) if m not in (i - 1, i))
            if clean:
                out[mono] = out.get(mono, 0) + c
                continue
            base = list(mono)
            for m in range(r):
                base[hi + m] = 0
                if m not in (i - 1, i):
                    base[lo + m] += block[m]
            for (x, xp, y), cc in _wall_power(a, b).items():
                e = list(base)
                e[lo + i - 1] += x
                e[lo + i] += xp
                e[hi + i - 1] = y
                key = tuple(e)
                out[key] = out.get(key, 0) + c * cc
        terms = {k: v for k, v in out.items() if v}
    return terms


def _terms_to_coords(terms: Mapping[tuple, int], shape: BSShape) -> Coords:
    r = shape.strands
    out: Coords = {}
    for mono, c in terms.items():
        mask = 0
        for t, i in enumerate(shape.walls, start=1):
            if mono[t * r + i - 1]:
                mask |= 1 << (t - 1)
        rm = mono[:r]
        slot = out.setdefault(mask, {})
        slot[rm] = slot.get(rm, 0) + c
    return out


def _coords_to_terms(coords: Coords, shape: BSShape) -> dict:
    r = shape.strands
    n = (shape.q + 1) * r
    out = {}
    for mask, poly in coords.items():
        for rm, c in poly.items():
            e = list(rm) + [0] * (n - r)
            for t, i in enumerate(shape.walls, start=1):
                if mask >> (t - 1) & 1:
                    e[t * r + i - 1] = 1
            out[tuple(e)] = c
    return out


def _clean(coords: Coords) -> Coords:
    out = {}
    for mask, poly in coords.items():
        p = {m: c for m, c in poly.items() if c}
        if p:
            out[mask] = p
    return out


@dataclass(frozen=True)
class BSElement:
    """An element of BS(shape), stored by its normal-form polynomial."""

    shape: BSShape
    value: Poly

    def coords(self) -> Coords:
        return _terms_to_coords(self.value.terms, self.shape)

    @classmethod
    def from_coords(cls, shape: BSShape, coords: Coords) -> "BSElement":
        return cls(shape, Poly(shape.ring, _coords_to_terms(_clean(coords), shape)))

    @classmethod
    def generator(cls, shape: BSShape, mask: int) -> "BSElement":
        return cls.from_coords(shape, {mask: {(0,) * shape.strands: 1}})

    def __add__(self, other: "BSElement") -> "BSElement":
        if other.shape != self.shape:
            raise ValueError("elements of different bimodules")
        return BSElement(self.shape, self.value + other.value)

    def __sub__(self, other: "BSElement") -> "BSElement":
        if other.shape != self.shape:
            raise ValueError("elements of different bimodules")
        return BSElement(self.shape, self.value - other.value)

    def __neg__(self) -> "BSElement":
        return BSElement(self.shape, -self.value)

    def scale(self, c) -> "BSElement":
        return BSElement(self.shape, self.value * c)

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def module_degree(self) -> int:
        return self.value.degree()

    def __str__(self) -> str:
        return str(self.value)


def normal_form(raw: Poly, shape: BSShape) -> BSElement:
    """Reduce a polynomial in the shape's alphabets to normal form."""
    if raw.ring.alphabets != shape.q + 1 or raw.ring.positions != shape.strands:
        raise ValueError("polynomial uses variables outside the shape's alphabets")
    terms = _normal_terms(raw.terms, shape.strands, shape.walls)
    return BSElement(shape, Poly(shape.ring, terms))


def left_mult(e: BSElement, m: int) -> BSElement:
    if not 1 <= m <= e.shape.strands:
        raise ValueError("position out of range")
    return BSElement(e.shape, e.value * e.shape.ring.var(0, m))


def right_mult(e: BSElement, m: int) -> BSElement:
    if not 1 <= m <= e.shape.strands:
        raise ValueError("position out of range")
    return normal_form(e.value * e.shape.ring.var(e.shape.q, m), e.shape)


# --- left-linear maps --------------------------------------------------

def _mul_rpoly_coords(p: Mapping[tuple, int], coords: Coords) -> Coords:
    out: Coords = {}
    for mask, poly in coords.items():
        slot = out.setdefault(mask, {})
        for m1, c1 in p.items():
            for m2, c2 in poly.items():
                key = tuple(a + b for a, b in zip(m1, m2))
                slot[key] = slot.get(key, 0) + c1 * c2
    return _clean(out)


def _add_coords(a: Coords, b: Coords, scale: int = 1) -> Coords:
    out = {mask: dict(p) for mask, p in a.items()}
    for mask, poly in b.items():
        slot = out.setdefault(mask, {})
        for m, c in poly.items():
            slot[m] = slot.get(m, 0) + scale * c
    return _clean(out)


def apply_coords(images: tuple[Coords, ...], coords: Coords) -> Coords:
    """Extend generator images left R-linearly to an element."""
    out: Coords = {}
    for mask, p in coords.items():
        out = _add_coords(out, _mul_rpoly_coords(p, images[mask]))
    return out


@dataclass(frozen=True)
class BimoduleMap:
    """Left R-linear map given by the images of the free generators.

    ``degree`` is the change of internal degree (shifts included);
    ``module_degree`` is the change of polynomial (module) degree.
    """

    source: BSShape
    target: BSShape
    images: tuple  # tuple[Coords, ...], one per source generator
    module_degree: int = 0

    def __post_init__(self) -> None:
        if len(self.images) != self.source.rank:
            raise ValueError("need one image per free generator")

    @property
    def degree(self) -> int:
        return self.module_degree + self.target.internal_shift - self.source.internal_shift

    def image(self, mask: int) -> BSElement:
        return BSElement.from_coords(self.target, self.images[mask])

    def apply(self, e: BSElement) -> BSElement:
        if e.shape != self.source:
            raise ValueError("element is not in the source bimodule")
        return BSElement.from_coords(self.target, apply_coords(self.images, e.coords()))

    def compose(self, inner: "BimoduleMap") -> "BimoduleMap":
        """``self after inner``."""
        if inner.target != self.source:
            raise ValueError("maps are not composable")
        imgs = tuple(apply_coords(self.images, img) for img in inner.images)
        return BimoduleMap(inner.source, self.target, imgs, inner.module_degree + self.module_degree)

    def __add__(self, other: "BimoduleMap") -> "BimoduleMap":
        if (other.source, other.target, other.module_degree) != (self.source, self.target, self.module_degree):
            raise ValueError("maps with different source, target or degree")
        imgs = tuple(_add_coords(a, b) for a, b in zip(self.images, other.images))
        return BimoduleMap(self.source, self.target, imgs, self.module_degree)

    def scale(self, c: int) -> "BimoduleMap":
        imgs = tuple(_add_coords({}, img, c) for img in self.images)
        return BimoduleMap(self.source, self.target, imgs, self.module_degree)

    def is_zero(self) -> bool:
        return all(not img for img in self.images)


def identity_map(shape: BSShape) -> BimoduleMap:
    one = (0,) * shape.strands
    return BimoduleMap(shape, shape, tuple({m: {one: 1}} for m in range(shape.rank)), 0)


def zero_map(source: BSShape, target: BSShape, module_degree: int = 0) -> BimoduleMap:
    return BimoduleMap(source, target, tuple({} for _ in range(source.rank)), module_degree)


def _reindex_alphabets(terms: Mapping[tuple, int], r: int, new_of_old, n_new: int) -> dict:
    out: dict = {}
    for mono, c in terms.items():
        e = [0] * (n_new * r)
        for a in range(len(mono) // r):
            na = new_of_old(a)
            for m in range(r):
                e[na * r + m] += mono[a * r + m]
        key = tuple(e)
        out[key] = out.get(key, 0) + c
    return out


@lru_cache(maxsize=None)
def _merge_images(strands: int, walls: tuple[int, ...], t: int) -> tuple:
    shape = BSShape(strands, walls)
    tgt_walls = walls[: t - 1] + walls[t:]
    q = len(walls)
    imgs = []
    for mask in range(1 << q):
        terms = _coords_to_terms({mask: {(0,) * strands: 1}}, shape)
        moved = _reindex_alphabets(terms, strands, lambda a: a if a < t else a - 1, q)
        normal = _normal_terms(moved, strands, tgt_walls)
        imgs.append(_terms_to_coords(normal, BSShape(strands, tgt_walls)))
    return tuple(imgs)


def merge_wall(shape: BSShape, t: int) -> BimoduleMap:
    """Forget wall ``t``: substitute ``x^{(t)} -> x^{(t-1)}`` and renumber."""
    if not 1 <= t <= shape.q:
        raise ValueError(f"wall {t} outside 1..{shape.q}")
    target = BSShape(shape.strands, shape.walls[: t - 1] + shape.walls[t:], shape.internal_shift)
    return BimoduleMap(shape, target, _merge_images(shape.strands, shape.walls, t), 0)


@lru_cache(maxsize=None)
def _insert_images(strands: int, walls: tuple[int, ...], t: int, i: int) -> tuple:
    src = BSShape(strands, walls)
    tgt_walls = walls[: t - 1] + (i,) + walls[t - 1 :]
    q = len(walls)
    r = strands
    n_new = q + 2
    # c = x^{(t-1)}_i - x^{(t)}_{i+1}
    c_terms = {}
    e = [0] * (n_new * r)
    e[(t - 1) * r + i - 1] = 1
    c_terms[tuple(e)] = 1
    e = [0] * (n_new * r)
    e[t * r + i] = 1
    c_terms[tuple(e)] = -1
    imgs = []
    for mask in range(1 << q):
        terms = _coords_to_terms({mask: {(0,) * r: 1}}, src)
        moved = _reindex_alphabets(terms, r, lambda a: a if a < t else a + 1, n_new)
        prod: dict = {}
        for m1, c1 in moved.items():
            for m2, c2 in c_terms.items():
                key = tuple(a + b for a, b in zip(m1, m2))
                prod[key] = prod.get(key, 0) + c1 * c2
        normal = _normal_terms({k: v for k, v in prod.items() if v}, r, tgt_walls)
        imgs.append(_terms_to_coords(normal, BSShape(r, tgt_walls)))
    return tuple(imgs)


def insert_wall(shape_without: BSShape, t: int, i: int) -> BimoduleMap:
    """Insert a wall of index ``i`` as wall ``t``: ``1 -> x^{(t-1)}_i - x^{(t)}_{i+1}``.

    The target carries an extra internal shift of -2, so the map has
    internal degree 0 (module degree +2).
    """
    if not 1 <= t <= shape_without.q + 1:
        raise ValueError(f"insertion slot {t} outside 1..{shape_without.q + 1}")
    if not 1 <= i <= shape_without.strands - 1:
        raise ValueError(f"wall index {i} out of range")
    target = BSShape(
        shape_without.strands,
        shape_without.walls[: t - 1] + (i,) + shape_without.walls[t - 1 :],
        shape_without.internal_shift - 2,
    )
    return BimoduleMap(shape_without, target, _insert_images(shape_without.strands, shape_without.walls, t, i), 2)


# --- graded pieces and matrices ---------------------------------------

@lru_cache(maxsize=None)
def module_basis(strands: int, q: int, mdeg: int) -> tuple[tuple, dict]:
    """Canonical basis of the module-degree-``mdeg`` piece of a q-wall shape.

    Returns ``(basis, index)`` with basis entries ``(mask, R-monomial)``,
    ordered by mask then lex-descending monomial.
    """
    basis = []
    if mdeg >= 0 and mdeg % 2 == 0:
        for mask in range(1 << q):
            rest = mdeg - 2 * bin(mask).count("1")
            if rest < 0:
                continue
            for mono in graded_basis(strands, rest):
                basis.append((mask, mono))
    basis = tuple(basis)
    return basis, {b: k for k, b in enumerate(basis)}


def piece_basis(shape: BSShape, d: int) -> tuple:
    """Basis of the internal-degree-``d`` piece."""
    return module_basis(shape.strands, shape.q, d - shape.internal_shift)[0]


def left_linear_matrix(
    images: tuple, strands: int, src_q: int, src_mdeg: int, tgt_q: int, tgt_mdeg: int
) -> SparseMatrix:
    """Matrix of a left-linear map between module-degree pieces."""
    src, _ = module_basis(strands, src_q, src_mdeg)
    tgt, index = module_basis(strands, tgt_q, tgt_mdeg)
    ent: dict = {}
    for col, (mask, mono) in enumerate(src):
        for tmask, poly in images[mask].items():
            for pm, c in poly.items():
                key = (tmask, tuple(a + b for a, b in zip(pm, mono)))
                row = index.get(key)
                if row is None:
                    raise ValueError("map is not homogeneous of the stated degree")
                ent[(row, col)] = ent.get((row, col), 0) + c
    return SparseMatrix(len(tgt), len(src), {k: v for k, v in ent.items() if v})


def matrix_of(f: BimoduleMap, d: int, cutoff: int | None = None, field: Field = QQ) -> SparseMatrix:
    """Matrix from internal degree ``d`` of the source to ``d + f.degree``."""
    if cutoff is not None and d > cutoff:
        raise ValueError(f"degree {d} exceeds the cutoff {cutoff}")
    src_m = d - f.source.internal_shift
    tgt_m = src_m + f.module_degree
    mat = left_linear_matrix(f.images, f.source.strands, f.source.q, src_m, f.target.q, tgt_m)
    return mat.reduced(field) if field.characteristic else mat


def element_vector(e: BSElement, d: int) -> list:
    """Coordinates of a homogeneous element in the canonical basis of degree ``d``."""
    basis, index = module_basis(e.shape.strands, e.shape.q, d - e.shape.internal_shift)
    vec = [0] * len(basis)
    for mask, poly in e.coords().items():
        for mono, c in poly.items():
            k = index.get((mask, mono))
            if k is None:
                raise ValueError("element is not homogeneous of the requested degree")
            vec[k] = c
    return vec
