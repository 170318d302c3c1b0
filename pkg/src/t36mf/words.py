"""Bunch-of-chains data and the 24 word types of first-level modules.

Each family has one full word of four letters, for example ``r3 - ~a2 ~ a2 - c3``
for family ``a`` at n = 2 (``~a`` is a-tilde).  Cutting drops the outer
letter on that side together with its connective.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .pencil import PencilBlock

__all__ = [
    "FAMILIES",
    "Letter",
    "ChainBunch",
    "BUNCH",
    "Word",
    "WordSyntaxError",
    "UnsupportedBlock",
    "enumerate_words",
    "letters",
    "parse_word",
    "blocks_to_words",
    "is_valid",
]

# Family identifiers; primes are spelled "cp"/"dp" in the CLI syntax.
FAMILIES: Tuple[str, ...] = ("a", "b", "c", "d", "c'", "d'")
_CLI_NAMES = {"a": "a", "b": "b", "c": "c", "d": "d", "c'": "cp", "d'": "dp"}
_FROM_CLI = {v: k for k, v in _CLI_NAMES.items()}
_FROM_CLI.update({"c'": "c'", "d'": "d'", "c′": "c'", "d′": "d'"})


class WordSyntaxError(ValueError):
    pass


class UnsupportedBlock(ValueError):
    """Regular pencil blocks have no word in the first level."""


@dataclass(frozen=True, order=True)
class Letter:
    """A symbol of the bunch: an end letter (r3, r4, c3, c4) or an indexed one."""

    name: str
    index: Optional[int] = None
    tilde: bool = False

    def generic(self) -> "Letter":
        """Index-free form used for chain membership."""
        return Letter(self.name, None, self.tilde)

    def __str__(self) -> str:
        core = self.name + (str(self.index) if self.index is not None else "")
        return ("~" if self.tilde else "") + core


def _L(name: str, tilde: bool = False) -> Letter:
    return Letter(name, None, tilde)


@dataclass(frozen=True)
class ChainBunch:
    """Pairs of chains (E_k, F_k) and the pairing ``~``."""

    pairs: Tuple[Tuple[Tuple[Letter, ...], Tuple[Letter, ...]], ...]
    tilde_pairs: Tuple[Tuple[Letter, Letter], ...]

    def pair_of(self, letter: Letter) -> Tuple[int, str]:
        """(pair index, "E" or "F") containing the letter."""
        g = letter.generic()
        for i, (E, F) in enumerate(self.pairs):
            if g in E:
                return i, "E"
            if g in F:
                return i, "F"
        raise KeyError(str(letter))

    def dash_ok(self, a: Letter, b: Letter) -> bool:
        """'-' joins one letter of E_k with one of F_k for the same k."""
        (i, s), (j, t) = self.pair_of(a), self.pair_of(b)
        return i == j and s != t

    def tilde_ok(self, a: Letter, b: Letter) -> bool:
        if a.index != b.index:
            return False
        ga, gb = a.generic(), b.generic()
        return any({ga, gb} == {p, q} for p, q in self.tilde_pairs)


BUNCH = ChainBunch(
    pairs=(
        ((_L("a"), _L("d"), _L("d'")), (_L("c3"),)),
        ((_L("b"), _L("d", True), _L("d'", True)), (_L("c4"),)),
        ((_L("r3"),), (_L("a", True), _L("c"), _L("c'"))),
        ((_L("r4"),), (_L("b", True), _L("c", True), _L("c'", True))),
    ),
    tilde_pairs=tuple((_L(f), _L(f, True)) for f in FAMILIES),
)

# Full word per family: (left end letter, right end letter).
_SHAPES: Dict[str, Tuple[str, str]] = {
    "a": ("r3", "c3"),
    "b": ("r4", "c4"),
    "c": ("r4", "r3"),
    "d": ("c4", "c3"),
    "c'": ("r4", "r3"),
    "d'": ("c4", "c3"),
}


@dataclass(frozen=True, order=True)
class Word:
    family: str
    n: int
    left_cut: bool = False
    right_cut: bool = False

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise WordSyntaxError(f"unknown family {self.family!r}")
        if self.n < 1:
            raise WordSyntaxError("word size must be positive")

    @property
    def cuts(self) -> str:
        return ("l" if self.left_cut else "") + ("r" if self.right_cut else "")

    @property
    def untruncated(self) -> "Word":
        return Word(self.family, self.n)

    def cli(self) -> str:
        """Round-trips through :func:`parse_word`."""
        base = f"{_CLI_NAMES[self.family]}:{self.n}"
        return base + (":" + self.cuts if self.cuts else "")

    def sort_key(self) -> Tuple[int, int, int]:
        return (FAMILIES.index(self.family), self.n, 2 * self.right_cut + self.left_cut)

    def __str__(self) -> str:
        return self.cli()


def letters(w: Word) -> List[Tuple[Optional[str], Letter]]:
    """Letters with the connective preceding each (``None`` for the first)."""
    left, right = _SHAPES[w.family]
    full = [
        (None, Letter(left)),
        ("-", Letter(w.family, w.n, True)),
        ("~", Letter(w.family, w.n, False)),
        ("-", Letter(right)),
    ]
    if w.right_cut:
        full = full[:-1]
    if w.left_cut:
        full = [(None, full[1][1])] + full[2:]
    return full


def word_text(w: Word) -> str:
    return " ".join((f"{c} " if c else "") + str(l) for c, l in letters(w))


def is_valid(seq: Sequence[Tuple[Optional[str], Letter]], bunch: ChainBunch = BUNCH) -> bool:
    """Connectives alternate and each joins letters the bunch allows."""
    prev_conn = None
    for i in range(1, len(seq)):
        conn, cur = seq[i]
        before = seq[i - 1][1]
        if conn == prev_conn or conn not in ("-", "~"):
            return False
        ok = bunch.dash_ok(before, cur) if conn == "-" else bunch.tilde_ok(before, cur)
        if not ok:
            return False
        prev_conn = conn
    return True


def enumerate_words(max_n: int) -> List[Word]:
    """All 24 * max_n words, ordered by family, then n, then cuts."""
    if max_n < 1:
        raise ValueError("max_n must be at least 1")
    return [Word(f, n, l, r) for f in FAMILIES for n in range(1, max_n + 1)
            for (r, l) in ((False, False), (False, True), (True, False), (True, True))]


_WORD_RE = re.compile(r"^\s*([a-z]+'?|[cd]′)\s*:\s*(\d+)\s*(?::\s*(l|r|lr|rl)?\s*)?$")


def parse_word(text: str) -> Word:
    """Parse ``family:n[:cuts]`` with families ``a b c d cp dp``."""
    m = _WORD_RE.match(text)
    if m is None:
        raise WordSyntaxError(f"bad word {text!r}; expected family:n[:l|r|lr]")
    fam = _FROM_CLI.get(m.group(1))
    if fam is None:
        raise WordSyntaxError(f"unknown family {m.group(1)!r}; use a b c d cp dp")
    n = int(m.group(2))
    cuts = m.group(3) or ""
    return Word(fam, n, "l" in cuts, "r" in cuts)


def blocks_to_words(blocks: Iterable[PencilBlock], decorations: Iterable[int] = ()) -> List[Word]:
    """One untruncated word per block.

    ``decorations`` holds positions of C/D blocks carrying the extra unit
    entry, which turns them into the primed families.
    """
    blocks = list(blocks)
    deco: FrozenSet[int] = frozenset(decorations)
    out: List[Word] = []
    for i, b in enumerate(blocks):
        if b.kind == "Regular":
            raise UnsupportedBlock(f"{b} has no first-level word")
        fam = b.kind.lower()
        if i in deco:
            if b.kind not in ("C", "D"):
                raise ValueError(f"only C and D blocks can be decorated, not {b}")
            fam += "'"
        out.append(Word(fam, b.size))
    bad = [i for i in deco if not 0 <= i < len(blocks)]
    if bad:
        raise IndexError(f"decoration positions out of range: {bad}")
    return out
