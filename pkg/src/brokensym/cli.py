"""Command-line front end: ``brokensym compute | check | descriptor``.

JSON goes to stdout (``--format text`` prints tables instead).  Exit codes:
0 success, 1 invalid input, 2 a check comparison failed, 3 a resource limit
was hit (the partial degree band is still reported).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from . import CACHE_VERSION
from .braidword import BraidWord, parse
from .checks import SUITES
from .polyalg import Field
from .ssq import compute_e2, default_jobs, limiting_descriptor

EXIT_OK, EXIT_INVALID, EXIT_CHECK_FAILED, EXIT_RESOURCE = 0, 1, 2, 3
SCHEMA = 1


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class JobConfig:
    command: str
    word: str
    strands: int
    cutoff: int
    field: str
    jobs: int
    cache_dir: str | None
    fmt: str = "json"
    suite: str | None = None
    budget: int | None = None

    def validate(self) -> tuple[BraidWord, Field]:
        if self.cutoff % 2:
            raise UsageError(f"cutoff must be even, got {self.cutoff}")
        if self.cutoff < 0:
            raise UsageError("cutoff must be non-negative")
        if self.jobs < 1:
            raise UsageError("jobs must be at least 1")
        try:
            field = Field.parse(self.field)
            w = parse(self.word, self.strands)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return w, field

    def cache_key(self, w: BraidWord, field: Field) -> str:
        blob = json.dumps(
            {"word": w.to_ints(), "strands": w.strands, "cutoff": self.cutoff, "field": field.name, "version": CACHE_VERSION},
            sort_keys=True,
        )
        return hashlib.sha256(blob.encode()).hexdigest()


def _dump(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def resolve_cache_dir(flag: str | None) -> Path | None:
    env = os.environ.get("BROKENSYM_CACHE")
    chosen = env or flag
    return Path(chosen) if chosen else None


# --- compute ------------------------------------------------------------

def compute_document(cfg: JobConfig, w: BraidWord, field: Field) -> tuple[dict, bool]:
    page = compute_e2(w, cfg.cutoff, field, jobs=cfg.jobs, budget=cfg.budget)
    complete = page.cutoff == cfg.cutoff
    doc = {
        "schema": SCHEMA,
        "word": w.to_ints(),
        "strands": w.strands,
        "field": field.name,
        "cutoff": cfg.cutoff,
        "computed_through": page.cutoff,
        "complete": complete,
        "provisional_band": list(page.provisional_band),
        "ledger": asdict(page.ledger),
        "dims": page.dims.rows(),
        "e1": page.e1.rows(),
        "euler": {"vars": ["a", "q"], "terms": page.dims.euler().to_list()},
        "descriptor": limiting_descriptor(w).as_dict(),
    }
    return doc, complete


def render_compute_text(doc: dict) -> str:
    lines = [
        f"word [{' '.join(map(str, doc['word'])) or 'e'}] on {doc['strands']} strands, field {doc['field']}",
        f"computed through internal degree {doc['computed_through']} (requested {doc['cutoff']})",
        "",
        f"{'t':>4} {'j':>4} {'d':>4} {'dim E2':>8}",
    ]
    lines += [f"{t:>4} {j:>4} {d:>4} {v:>8}" for t, j, d, v in doc["dims"]]
    desc = doc["descriptor"]
    lines += ["", f"components {desc['component_count']}, |V_I| {desc['virtual_dim']}"]
    return "\n".join(lines) + "\n"


def cmd_compute(cfg: JobConfig, out) -> int:
    w, field = cfg.validate()
    cache = resolve_cache_dir(cfg.cache_dir)
    path = cache / f"{cfg.cache_key(w, field)}.json" if cache else None
    if path is not None and path.exists():
        text = path.read_text()
        complete = True
    else:
        try:
            doc, complete = compute_document(cfg, w, field)
        except MemoryError:
            print("error: out of memory", file=sys.stderr)
            return EXIT_RESOURCE
        text = _dump(doc)
        if path is not None and complete:
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(".tmp")
            tmp.write_text(text)
            tmp.replace(path)
    out.write(text if cfg.fmt == "json" else render_compute_text(json.loads(text)))
    if not complete:
        print("warning: budget exceeded; reporting the partial band", file=sys.stderr)
        return EXIT_RESOURCE
    return EXIT_OK


# --- check ----------------------------------------------------------------

def _first_braid_window(w: BraidWord):
    from .braidword import apply_braid_relation

    ints = w.to_ints()
    for at in range(1, len(ints) - 1):
        i, j, k = ints[at - 1 : at + 2]
        if i == k and i > 0 and j > 0 and abs(i - j) == 1:
            return apply_braid_relation(w, at, (i, j))
    return None


def _first_inverse_pair(w: BraidWord) -> int | None:
    ints = w.to_ints()
    for at in range(1, len(ints)):
        if ints[at - 1] == -ints[at]:
            return at
    return None


def user_arguments(suite: str, w: BraidWord) -> dict:
    """Extra inputs for a suite built from a user-supplied word."""
    if suite in ("d2", "markov1", "reflect", "markov2", "oracle"):
        return {"words": [w]}
    if suite == "braid":
        other = _first_braid_window(w)
        if other is None:
            raise UsageError("word has no positive i j i window with |i - j| = 1")
        return {"pairs": [(w, other)]}
    if suite == "inverse":
        at = _first_inverse_pair(w)
        if at is None:
            raise UsageError("word has no adjacent inverse pair")
        return {"cases": [(w, at)]}
    raise UsageError(f"unknown suite {suite!r}")


def cmd_check(cfg: JobConfig, out, word_given: bool) -> int:
    if cfg.suite not in SUITES:
        raise UsageError(f"unknown suite {cfg.suite!r}; choose from {', '.join(SUITES)}")
    w, field = cfg.validate()
    run = SUITES[cfg.suite]
    results = run(cutoff=cfg.cutoff, field=field, jobs=cfg.jobs)
    if word_given:
        extra = run(**user_arguments(cfg.suite, w), cutoff=cfg.cutoff, field=field, jobs=cfg.jobs)
        # the oracle suite repeats its calibration rows; keep only the new word's
        results += extra[-1:] if cfg.suite == "oracle" else extra
    passed = all(c.passed for c in results)
    doc = {
        "schema": SCHEMA,
        "suite": cfg.suite,
        "cutoff": cfg.cutoff,
        "field": field.name,
        "passed": passed,
        "comparisons": [c.as_dict() for c in results],
    }
    if cfg.fmt == "json":
        out.write(_dump(doc))
    else:
        for c in results:
            status = "PASS" if c.passed else "FAIL"
            out.write(f"{status}  {c.name}  [reindex: {c.reindex}]  {c.detail}\n")
            for k, v in c.diff.items():
                out.write(f"      {k}: {v}\n")
    return EXIT_OK if passed else EXIT_CHECK_FAILED


# --- descriptor -------------------------------------------------------------

def cmd_descriptor(cfg: JobConfig, out) -> int:
    w, _ = cfg.validate()
    d = limiting_descriptor(w)
    doc = {"schema": SCHEMA, "word": w.to_ints(), "strands": w.strands, "descriptor": d.as_dict()}
    if cfg.fmt == "json":
        out.write(_dump(doc))
    else:
        out.write(
            f"components {d.component_count}\n|V_I| {d.virtual_dim}\n"
            f"permutation {list(d.permutation.images)}\nnet suspension {d.net_suspension}\n"
        )
    return EXIT_OK


# --- argument parsing --------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):  # validation errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INVALID)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="brokensym", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, cutoff: int):
        sp.add_argument("--word", default=None, help='signed generators, e.g. "1 -2 1" (default: empty word)')
        sp.add_argument("--strands", type=int, default=None, help="strand count (default: 1 + largest generator)")
        sp.add_argument("--cutoff", type=int, default=cutoff, help="even internal-degree cutoff D")
        sp.add_argument("--field", default="q", help="'q' for the rationals or 'fp:<p>'")
        sp.add_argument("--jobs", type=int, default=1, help=f"worker processes (suggested: {default_jobs()})")
        sp.add_argument("--cache-dir", default=None, help="result cache (BROKENSYM_CACHE overrides)")
        sp.add_argument("--format", dest="fmt", choices=("json", "text"), default="json")

    c = sub.add_parser("compute", help="E2 page, Euler characteristic and descriptor")
    common(c, 12)
    c.add_argument("--budget", type=int, default=None, help="largest matrix width to attempt")
    k = sub.add_parser("check", help="run a verification suite")
    common(k, 12)
    k.add_argument("--suite", required=True, choices=sorted(SUITES))
    d = sub.add_parser("descriptor", help="limiting descriptor only (no linear algebra)")
    common(d, 0)
    return p


def _default_strands(word: str) -> int:
    top = 0
    for tok in word.split():
        try:
            top = max(top, abs(int(tok)))
        except ValueError:
            pass  # parse() reports it
    return top + 1


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    word_given = args.word is not None
    word = args.word or ""
    cfg = JobConfig(
        command=args.command,
        word=word,
        strands=args.strands if args.strands is not None else _default_strands(word),
        cutoff=args.cutoff,
        field=args.field,
        jobs=args.jobs,
        cache_dir=args.cache_dir,
        fmt=args.fmt,
        suite=getattr(args, "suite", None),
        budget=getattr(args, "budget", None),
    )
    try:
        if cfg.command == "compute":
            return cmd_compute(cfg, out)
        if cfg.command == "check":
            return cmd_check(cfg, out, word_given)
        return cmd_descriptor(cfg, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    raise SystemExit(main())
