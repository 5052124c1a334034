"""Braid words, their text format, and the moves relating braid closures.

Every move returns the new word together with a :class:`GradingLedger`
delta recording how the filtered object is suspended (``suspension``) and
how its filtration is shifted (``shift``).  Ledgers add under composition;
absolute shifts are never computed, only relative ones along move sequences.

Move positions are 1-based and refer to the word before the move.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .rootdata import CartanDatum, braid_exponent, type_a


@dataclass(frozen=True)
class BraidLetter:
    index: int
    sign: int = 1

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError("letter sign must be +1 or -1")
        if self.index < 1:
            raise ValueError("generator indices start at 1")

    @property
    def signed(self) -> int:
        return self.sign * self.index

    def inverse(self) -> "BraidLetter":
        return BraidLetter(self.index, -self.sign)


@dataclass(frozen=True)
class GradingLedger:
    """Net suspension and filtration shift accumulated along moves.

    ``null_moves`` counts stabilizations whose comparison map is of the
    null type; their grading effect is calibrated, not derived.
    """

    suspension: int = 0
    shift: int = 0
    null_moves: int = 0

    def __add__(self, other: "GradingLedger") -> "GradingLedger":
        return GradingLedger(
            self.suspension + other.suspension,
            self.shift + other.shift,
            self.null_moves + other.null_moves,
        )

    def __neg__(self) -> "GradingLedger":
        return GradingLedger(-self.suspension, -self.shift, -self.null_moves)

    def as_pair(self) -> tuple[int, int]:
        return (self.suspension, self.shift)


HONEST = GradingLedger()


@dataclass(frozen=True)
class BraidWord:
    datum: CartanDatum
    letters: tuple[BraidLetter, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", tuple(self.letters))
        for letter in self.letters:
            self.datum.check_index(letter.index)

    @classmethod
    def from_ints(cls, ints, strands: int) -> "BraidWord":
        letters = []
        for n in ints:
            if n == 0:
                raise ValueError("0 is not a braid generator")
            letters.append(BraidLetter(abs(n), 1 if n > 0 else -1))
        return cls(type_a(strands), tuple(letters))

    @property
    def strands(self) -> int:
        return self.datum.rank

    def __len__(self) -> int:
        return len(self.letters)

    def to_ints(self) -> list[int]:
        return [letter.signed for letter in self.letters]

    def format(self) -> str:
        return " ".join(str(n) for n in self.to_ints())

    def __str__(self) -> str:
        if not self.letters:
            return "e"
        parts = []
        for letter in self.letters:
            parts.append(f"s{letter.index}" + ("" if letter.sign > 0 else "^-1"))
        return " ".join(parts)

    def writhe(self) -> int:
        return sum(letter.sign for letter in self.letters)

    def concat(self, other: "BraidWord") -> "BraidWord":
        if other.datum != self.datum:
            raise ValueError("cannot concatenate words over different data")
        return BraidWord(self.datum, self.letters + other.letters)


def parse(text: str, strands: int) -> BraidWord:
    """Parse whitespace-separated signed integers, e.g. ``"1 -2 1"``."""
    if strands < 1:
        raise ValueError("strand count must be positive")
    ints = []
    for tok in text.split():
        try:
            n = int(tok)
        except ValueError:
            raise ValueError(f"malformed token {tok!r}") from None
        if n == 0:
            raise ValueError("0 is not a braid generator")
        if abs(n) > strands - 1:
            raise ValueError(f"generator {n} out of range for {strands} strands")
        ints.append(n)
    return BraidWord.from_ints(ints, strands)


def format_word(w: BraidWord) -> str:
    return w.format()


def lengths(w: BraidWord) -> tuple[int, int, int]:
    """``(l_plus, l_minus, l_minus - 2 l_plus)``."""
    lp = sum(1 for x in w.letters if x.sign > 0)
    lm = len(w.letters) - lp
    return lp, lm, lm - 2 * lp


def cyclic_permute(w: BraidWord) -> BraidWord:
    """Move the first letter to the end (no-op on the empty word)."""
    if not w.letters:
        return w
    return replace(w, letters=w.letters[1:] + w.letters[:1])


def _check_pos(w: BraidWord, at: int, width: int) -> None:
    if at < 1 or at + width - 1 > len(w.letters):
        raise ValueError(f"window {at}..{at + width - 1} outside a word of length {len(w.letters)}")


def apply_braid_relation(w: BraidWord, at: int, pair: tuple[int, int]) -> BraidWord:
    """Replace the alternation ``i j i ...`` (m_ij letters) by ``j i j ...``."""
    i, j = pair
    m = braid_exponent(w.datum, i, j)
    if m == float("inf"):
        raise ValueError(f"no braid relation between {i} and {j} (m = infinity)")
    m = int(m)
    _check_pos(w, at, m)
    window = w.letters[at - 1 : at - 1 + m]
    expected = [i if k % 2 == 0 else j for k in range(m)]
    if any(x.sign != 1 for x in window) or [x.index for x in window] != expected:
        raise ValueError(f"window is not a positive alternation starting with {i}")
    swapped = tuple(BraidLetter(j if k % 2 == 0 else i, 1) for k in range(m))
    return replace(w, letters=w.letters[: at - 1] + swapped + w.letters[at - 1 + m :])


def contract_inverse_pair(w: BraidWord, at: int) -> tuple[BraidWord, GradingLedger]:
    """Delete ``s_i s_i^-1`` (either order) at positions ``at, at+1``."""
    _check_pos(w, at, 2)
    a, b = w.letters[at - 1], w.letters[at]
    if a.index != b.index or a.sign == b.sign:
        raise ValueError("positions do not hold an inverse pair")
    out = replace(w, letters=w.letters[: at - 1] + w.letters[at + 1 :])
    return out, GradingLedger(suspension=1, shift=-1)


def insert_inverse_pair(
    w: BraidWord, at: int, index: int, sign_first: int = 1
) -> tuple[BraidWord, GradingLedger]:
    """Formal inverse of :func:`contract_inverse_pair`: the pair starts at ``at``."""
    w.datum.check_index(index)
    if not 1 <= at <= len(w.letters) + 1:
        raise ValueError("insertion position out of range")
    pair = (BraidLetter(index, sign_first), BraidLetter(index, -sign_first))
    out = replace(w, letters=w.letters[: at - 1] + pair + w.letters[at - 1 :])
    return out, GradingLedger(suspension=-1, shift=1)


def reflect(w: BraidWord) -> BraidWord:
    return replace(w, letters=tuple(reversed(w.letters)))


def stabilize(w: BraidWord, sign: int) -> tuple[BraidWord, GradingLedger]:
    """Add a strand and append ``s_r^{sign}`` (r = old strand count)."""
    if sign not in (1, -1):
        raise ValueError("stabilization sign must be +1 or -1")
    if not w.datum.is_type_a:
        raise ValueError("stabilization needs a type-A word")
    r = w.strands
    datum = type_a(r + 1)
    out = BraidWord(datum, w.letters + (BraidLetter(r, sign),))
    delta = GradingLedger(suspension=2 if sign > 0 else -1, shift=0, null_moves=1)
    return out, delta


def rehost(w: BraidWord, strands: int) -> BraidWord:
    """Same letters on a (larger) strand count."""
    return BraidWord(type_a(strands), w.letters)
