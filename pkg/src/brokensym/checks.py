"""Verification suites comparing E₂ pages across braid moves and oracles.

Each suite returns a list of :class:`Comparison` records.  A record names the
two sides compared, the reindexing applied (from the move's ledger), and the
differing entries (empty when the comparison passes).

The decategorification check relates the E₂ Euler characteristic of a braid
closure to its HOMFLY polynomial P(a, z).  With U the Euler characteristic
of the one-strand unknot, e the writhe, r the strand count and l₋ the number
of negative letters, the relation tested is

    χ(w) = U · (-1)^{l₋} · q^{λ₁ e + λ₂ (r-1)} · [a^{e+r-1} P]_{a² ↦ κ a q^m, z ↦ q - q^{-1}}

where the integers (λ₁, λ₂, κ, m) are calibrated on the unknot and trefoil
and then frozen.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache

from .braidword import (
    BraidWord,
    apply_braid_relation,
    contract_inverse_pair,
    cyclic_permute,
    lengths,
    reflect,
    stabilize,
)
from .cubeposet import build, relabel_cyclic, rotate_mask, same_unsigned
from .heckeoracle import homfly
from .hochschild import TriGradedDims, hh_dims, induced_rank
from .laurent import LPoly, Truncated
from .polyalg import QQ, Field
from .ssq import LedgeredPage, build_e1, compute_e2, limiting_descriptor, reindex, verify_d1_squared


@dataclass
class Comparison:
    suite: str
    name: str
    passed: bool
    reindex: str = "none"
    diff: dict = field(default_factory=dict)
    detail: str = ""

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "name": self.name,
            "passed": self.passed,
            "reindex": self.reindex,
            "diff": [[list(k) if isinstance(k, tuple) else k, list(v) if isinstance(v, tuple) else v] for k, v in self.diff.items()],
            "detail": self.detail,
        }


def W(text: str, strands: int) -> BraidWord:
    from .braidword import parse

    return parse(text, strands)


@lru_cache(maxsize=64)
def _page(ints: tuple[int, ...], strands: int, cutoff: int, characteristic: int, jobs: int) -> LedgeredPage:
    return compute_e2(BraidWord.from_ints(ints, strands), cutoff, Field(characteristic), jobs=jobs)


def page(w: BraidWord, cutoff: int, field: Field = QQ, jobs: int = 1) -> LedgeredPage:
    return _page(tuple(w.to_ints()), w.strands, cutoff, field.characteristic, jobs)


def _label(w: BraidWord) -> str:
    return f"[{w.format() or 'e'}]/{w.strands}"


# --- d₁² -------------------------------------------------------------

def all_words(max_len: int, max_strands: int):
    for r in range(1, max_strands + 1):
        gens = [s * i for i in range(1, r) for s in (1, -1)]
        for n in range(max_len + 1):
            for ints in itertools.product(gens, repeat=n):
                yield BraidWord.from_ints(ints, r)


def suite_d2(words=None, cutoff: int = 12, **_) -> list[Comparison]:
    words = list(words) if words is not None else list(all_words(4, 3))
    out = []
    failures = []
    for w in words:
        res = verify_d1_squared(build_e1(w), cutoff)
        if not res.ok:
            failures.append((w, res))
            out.append(Comparison("d2", _label(w), False, diff={"face": res.face}))
    out.append(
        Comparison("d2", f"{len(words)} words at D={cutoff}", not failures, detail=f"{len(failures)} failing")
    )
    return out


# --- Markov 1 ----------------------------------------------------------

def e1_signature(w: BraidWord, cutoff: int, field: Field = QQ) -> tuple[dict, dict]:
    """Basis-free E₁ data: vertex HH dims and the ranks of every induced edge map."""
    c = build_e1(w)
    vertices = {v: hh_dims(sh, cutoff, field) for v, sh in c.vertex_modules.items()}
    edges = {}
    for (near, far), (f, _) in c.edge_maps.items():
        ranks = {}
        for (j, d) in vertices[near]:
            rk = induced_rank(f, j, d, field)
            if rk:
                ranks[(j, d)] = rk
        edges[(near, far)] = ranks
    return vertices, edges


def compare_cyclic(w: BraidWord, cutoff: int, field: Field = QQ, jobs: int = 1) -> list[Comparison]:
    out = []
    k = len(w.letters)
    cur = w
    sig = e1_signature(cur, cutoff, field)
    for _ in range(max(k, 1)):
        nxt = cyclic_permute(cur)
        name = f"{_label(cur)} -> {_label(nxt)}"
        poset_ok = same_unsigned(relabel_cyclic(build(cur)), build(nxt))
        nsig = e1_signature(nxt, cutoff, field)
        verts, edges = sig
        moved_v = {rotate_mask(v, k): dims for v, dims in verts.items()}
        moved_e = {(rotate_mask(a, k), rotate_mask(b, k)): r for (a, b), r in edges.items()}
        diff = {}
        for v in set(moved_v) | set(nsig[0]):
            if moved_v.get(v) != nsig[0].get(v):
                diff[("vertex", v)] = "HH dims differ"
        for e in set(moved_e) | set(nsig[1]):
            if moved_e.get(e) != nsig[1].get(e):
                diff[("edge",) + e] = "induced ranks differ"
        p1, p2 = page(cur, cutoff, field, jobs), page(nxt, cutoff, field, jobs)
        for key, vals in p1.dims.diff(p2.dims).items():
            diff[key] = vals
        out.append(
            Comparison("markov1", name, poset_ok and not diff, reindex="relabel by rotation", diff=diff)
        )
        cur, sig = nxt, nsig
    return out


def suite_markov1(words=None, cutoff: int = 8, field: Field = QQ, jobs: int = 1) -> list[Comparison]:
    words = words or [W("1 2", 3), W("1 -2", 3), W("1 1 2", 3)]
    out = []
    for w in words:
        out.extend(compare_cyclic(w, cutoff, field, jobs))
    return out


# --- honest moves --------------------------------------------------------

def compare_pages(suite: str, a: BraidWord, b: BraidWord, cutoff: int, field: Field, jobs: int, delta=None) -> Comparison:
    pa, pb = page(a, cutoff, field, jobs), page(b, cutoff, field, jobs)
    left = pa.dims
    right = pb.dims if delta is None else reindex(pb.dims, -delta)
    note = "none" if delta is None else f"t -> t + {-delta.shift}"
    return Comparison(suite, f"{_label(a)} vs {_label(b)}", left == right, reindex=note, diff=left.diff(right))


def suite_braid(pairs=None, cutoff: int = 12, field: Field = QQ, jobs: int = 1) -> list[Comparison]:
    if pairs is None:
        w = W("1 2 1", 3)
        pairs = [(w, apply_braid_relation(w, 1, (1, 2)))]
    return [compare_pages("braid", a, b, cutoff, field, jobs) for a, b in pairs]


def suite_reflect(words=None, cutoff: int = 12, field: Field = QQ, jobs: int = 1) -> list[Comparison]:
    words = words or [W("1 2 1", 3), W("1 1 2", 3), W("1 -2 2 2", 3)]
    return [compare_pages("reflect", w, reflect(w), cutoff, field, jobs) for w in words]


def suite_inverse(cases=None, cutoff: int = 12, field: Field = QQ, jobs: int = 1) -> list[Comparison]:
    """Contraction ``w -> w_red`` with ledger delta (+1, -1): E₂(w)^t = E₂(w_red)^{t-1}."""
    cases = cases or [(W("1 -1", 2), 1), (W("-1 1", 2), 1), (W("2 1 -1 2", 3), 2)]
    out = []
    for w, at in cases:
        red, delta = contract_inverse_pair(w, at)
        pw, pr = page(w, cutoff, field, jobs), page(red, cutoff, field, jobs)
        moved = reindex(pr.dims, delta)
        out.append(
            Comparison(
                "inverse",
                f"{_label(w)} vs {_label(red)}",
                pw.dims == moved,
                reindex=f"t -> t + {-delta.shift} (ledger {delta.as_pair()})",
                diff=pw.dims.diff(moved),
            )
        )
    return out


# --- Markov 2 --------------------------------------------------------------

def poincare(p: LedgeredPage) -> Truncated:
    return Truncated(p.dims.poincare(), "Q", p.cutoff)


@dataclass
class StabilizationFactor:
    sign: int
    phi: Truncated
    comparisons: list

    @property
    def monomial(self) -> LPoly | None:
        return self.phi.poly if self.phi.poly.is_monomial() else None


def stabilization_factor(sign: int, cutoff: int, field: Field = QQ, jobs: int = 1) -> Truncated:
    """Φ = P(stabilized unknot) / P(one-strand unknot) as a truncated series."""
    base = W("", 1)
    stab, _ = stabilize(base, sign)
    return poincare(page(stab, cutoff, field, jobs)).divide(poincare(page(base, cutoff, field, jobs)))


def suite_markov2(words=None, cutoff: int = 10, field: Field = QQ, jobs: int = 1) -> list[Comparison]:
    words = words or [W("1", 2), W("1 1 1", 2)]
    out = []
    for sign in (1, -1):
        phi = stabilization_factor(sign, cutoff, field, jobs)
        label = "+" if sign > 0 else "-"
        out.append(
            Comparison(
                "markov2",
                f"factor {label}",
                phi.poly.is_monomial(),
                detail=f"Phi{label} = {phi.poly} (exact through Q^{phi.valid})",
            )
        )
        for w in words:
            stab, delta = stabilize(w, sign)
            lhs = poincare(page(stab, cutoff, field, jobs))
            rhs = phi * poincare(page(w, cutoff, field, jobs))
            ok, top = lhs.agrees(rhs)
            lo = min(lhs.low(), rhs.low())
            diff = {}
            if not ok:
                d = (lhs.poly - rhs.poly).truncate("Q", top)
                diff = {tuple(e): c for e, c in d.terms.items()}
            out.append(
                Comparison(
                    "markov2",
                    f"{_label(stab)} vs Phi{label}*{_label(w)}",
                    ok and top is not None and top > lo,
                    reindex=f"multiply by Phi{label}; ledger {delta.as_pair()}",
                    diff=diff,
                    detail=f"compared Q-degrees {lo}..{top}",
                )
            )
    return out


# --- decategorification ------------------------------------------------------

@dataclass(frozen=True)
class Substitution:
    writhe_power: int  # λ₁
    strand_power: int  # λ₂
    kappa: int
    m: int

    def describe(self) -> str:
        k = "" if self.kappa == 1 else "-"
        return (
            f"chi = U * (-1)^l- * q^({self.writhe_power}e + {self.strand_power}(r-1)) "
            f"* [a^(e+r-1) P](a^2 -> {k}a q^{self.m}, z -> q - q^-1)"
        )


AQ = ("a", "q")


def predicted_factor(w: BraidWord, sub: Substitution) -> tuple[LPoly, int]:
    """``(M, N)`` with ``χ(w) (q - q^{-1})^N`` predicted as ``U · M``."""
    P = homfly(w)
    e, r = w.writhe(), w.strands
    _, lm, _ = lengths(w)
    N = max(0, -P.degree_range("z")[0]) if not P.is_zero() else 0
    q = LPoly.var(AQ, "q")
    zq = q - q ** -1
    a2 = LPoly.monomial(AQ, {"a": 1, "q": sub.m}, sub.kappa)
    total = LPoly(AQ)
    for (ae, ze), c in P.terms.items():
        ae += e + r - 1
        if ae % 2:
            raise ArithmeticError("odd a-power after writhe normalization")
        total = total + LPoly.const(AQ, c) * a2 ** (ae // 2) * zq ** (ze + N)
    total = total * LPoly.monomial(AQ, {"q": sub.writhe_power * e + sub.strand_power * (r - 1)}, (-1) ** lm)
    return total, N


def euler_matches(w: BraidWord, sub: Substitution, cutoff: int, field: Field = QQ, jobs: int = 1) -> tuple[bool, int | None, LPoly]:
    unknot = page(W("", 1), cutoff, field, jobs)
    pw = page(w, cutoff, field, jobs)
    U = Truncated(unknot.dims.euler(), "q", unknot.cutoff)
    chi = Truncated(pw.dims.euler(), "q", pw.cutoff)
    M, N = predicted_factor(w, sub)
    q = LPoly.var(AQ, "q")
    lhs = chi * Truncated((q - q ** -1) ** N, "q", None)
    rhs = U * Truncated(M, "q", None)
    ok, top = lhs.agrees(rhs)
    return ok, top, (lhs.poly - rhs.poly)


CALIBRATION_WORDS = (("", 1), ("1", 2), ("1 1 1", 2))
HELD_OUT = (("1 1", 2),)


def calibrate(cutoff: int = 12, field: Field = QQ, jobs: int = 1, span: int = 4) -> list[Substitution]:
    """All substitutions in a small integer box consistent with the calibration words."""
    words = [W(t, r) for t, r in CALIBRATION_WORDS]
    found = []
    for l1, l2, kappa, m in itertools.product(
        range(-span, span + 1), range(-span, span + 1), (1, -1), range(-span, span + 1)
    ):
        sub = Substitution(l1, l2, kappa, m)
        if all(euler_matches(w, sub, cutoff, field, jobs)[0] for w in words):
            found.append(sub)
    return found


def suite_oracle(words=None, cutoff: int = 12, field: Field = QQ, jobs: int = 1) -> list[Comparison]:
    subs = calibrate(cutoff, field, jobs)
    out = [
        Comparison(
            "oracle",
            "calibration on unknot and trefoil",
            len(subs) == 1,
            detail="; ".join(s.describe() for s in subs) or "no consistent substitution",
        )
    ]
    if len(subs) != 1:
        return out
    sub = subs[0]
    targets = [W(t, r) for t, r in CALIBRATION_WORDS + HELD_OUT]
    targets += list(words or [])
    for w in targets:
        ok, top, delta = euler_matches(w, sub, cutoff, field, jobs)
        diff = {} if ok else {tuple(e): c for e, c in delta.truncate("q", top).terms.items()}
        held = " (held out)" if (w.format(), w.strands) in HELD_OUT else ""
        out.append(Comparison("oracle", _label(w) + held, ok, diff=diff, detail=f"exact through q^{top}"))
    return out


# --- descriptor ------------------------------------------------------------

def descriptor_invariants(w: BraidWord) -> dict:
    d = limiting_descriptor(w)
    return {"components": d.component_count, "cycles": d.cycle_count()}


def random_word(rng: random.Random, max_len: int, max_strands: int) -> BraidWord:
    r = rng.randint(2, max_strands)
    n = rng.randint(1, max_len)
    ints = [rng.choice([1, -1]) * rng.randint(1, r - 1) for _ in range(n)]
    return BraidWord.from_ints(ints, r)


SUITES = {
    "d2": suite_d2,
    "markov1": suite_markov1,
    "braid": suite_braid,
    "inverse": suite_inverse,
    "reflect": suite_reflect,
    "markov2": suite_markov2,
    "oracle": suite_oracle,
}
