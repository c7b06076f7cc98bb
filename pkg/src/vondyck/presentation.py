"""Parameters, words and curvature classification for von Dyck groups.

A von Dyck group D(a, b, c) is presented as <x, y | x^a = y^b = (xy)^c = 1>.
Words are plain tuples of :class:`Letter` values; nothing here touches
floating point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum, IntEnum
from fractions import Fraction
from itertools import groupby
from typing import Iterable

__all__ = [
    "VonDyckParams", "Letter", "Word", "CurvatureClass", "WordSyntaxError",
    "classify_curvature", "euclidean_triples", "parse_word", "format_word",
    "free_reduce", "torsion_normalize", "invert_word", "word_power",
]


class Letter(IntEnum):
    """Generator letters. The integer order X < Y < Xinv < Yinv is the
    tie-break order used for canonical words."""

    X = 0
    Y = 1
    Xinv = 2
    Yinv = 3

    @property
    def inverse(self) -> "Letter":
        return Letter((self + 2) % 4)

    @property
    def base(self) -> "Letter":
        """The positive generator underlying this letter."""
        return Letter(self % 2)

    @property
    def sign(self) -> int:
        return 1 if self < 2 else -1


Word = tuple  # tuple[Letter, ...]


class CurvatureClass(str, Enum):
    SPHERICAL = "Spherical"
    EUCLIDEAN = "Euclidean"
    HYPERBOLIC = "Hyperbolic"


@dataclass(frozen=True, order=True)
class VonDyckParams:
    a: int
    b: int
    c: int

    def __post_init__(self):
        for name in ("a", "b", "c"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 2:
                raise ValueError(f"{name} must be an integer >= 2, got {v!r}")

    @property
    def curvature(self) -> CurvatureClass:
        return classify_curvature(self)

    def __str__(self):
        return f"({self.a},{self.b},{self.c})"


def _coerce(params) -> VonDyckParams:
    if isinstance(params, VonDyckParams):
        return params
    return VonDyckParams(*params)


def classify_curvature(params) -> CurvatureClass:
    """Spherical, Euclidean or hyperbolic according to the sign of
    1/a + 1/b + 1/c - 1, compared exactly."""
    p = _coerce(params)
    s = Fraction(1, p.a) + Fraction(1, p.b) + Fraction(1, p.c)
    if s > 1:
        return CurvatureClass.SPHERICAL
    if s == 1:
        return CurvatureClass.EUCLIDEAN
    return CurvatureClass.HYPERBOLIC


def euclidean_triples() -> list[VonDyckParams]:
    """The unordered solutions of 1/a + 1/b + 1/c = 1 with a <= b <= c.

    With a <= b <= c the equation forces a <= 3 and, given a, b <= 2a/(a-1),
    so the search below is finite and exhaustive.
    """
    out = []
    for a in range(2, 4):
        for b in range(a, 7):
            rest = 1 - Fraction(1, a) - Fraction(1, b)
            if rest <= 0 or rest.numerator != 1:
                continue
            c = rest.denominator
            if c >= b:
                out.append(VonDyckParams(a, b, c))
    return sorted(out, key=lambda p: (p.a, p.b, p.c))


class WordSyntaxError(ValueError):
    def __init__(self, text: str, pos: int, msg: str):
        super().__init__(f"{msg} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:([xXyY])(?:\^(-?\d+))?|(1))")
_LETTERS = {"x": Letter.X, "X": Letter.Xinv, "y": Letter.Y, "Y": Letter.Yinv}


def parse_word(text: str) -> Word:
    """Parse ``"x y^-1 X^2"``-style text into a word.

    ``X`` and ``Y`` denote inverses, exponents may be negative, and ``1``
    is the empty word. No reduction is performed.
    """
    letters: list[Letter] = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise WordSyntaxError(text, bad, f"unexpected {text[bad]!r}")
        if m.group(3) is None:
            letter = _LETTERS[m.group(1)]
            exp = int(m.group(2)) if m.group(2) is not None else 1
            if exp < 0:
                letter, exp = letter.inverse, -exp
            letters.extend([letter] * exp)
        pos = m.end()
    return tuple(letters)


def format_word(w: Iterable[Letter]) -> str:
    """Run-length text form of a word; ``"1"`` for the empty word."""
    parts = []
    for letter, run in groupby(w):
        k = len(list(run))
        name = "x" if letter.base == Letter.X else "y"
        e = k * letter.sign
        parts.append(name if e == 1 else f"{name}^{e}")
    return " ".join(parts) if parts else "1"


def free_reduce(w: Iterable[Letter]) -> Word:
    out: list[Letter] = []
    for letter in w:
        # letter codes differ by 2 exactly for inverse pairs
        if out and out[-1] ^ letter == 2:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def invert_word(w: Iterable[Letter]) -> Word:
    return tuple(letter.inverse for letter in reversed(tuple(w)))


def word_power(w: Word, k: int) -> Word:
    if k < 0:
        return invert_word(w) * (-k)
    return tuple(w) * k


def torsion_normalize(w: Iterable[Letter], params) -> Word:
    """Collapse runs of x (mod a) and y (mod b), choosing the exponent of
    smallest absolute value (positive on ties), until nothing changes."""
    p = _coerce(params)
    order = {Letter.X: p.a, Letter.Y: p.b}
    cur = free_reduce(w)
    while True:
        out: list[Letter] = []
        for base, run in groupby(cur, key=lambda letter: letter.base):
            e = sum(letter.sign for letter in run) % order[base]
            if 2 * e > order[base]:
                e -= order[base]
            out.extend([base] * e if e >= 0 else [base.inverse] * -e)
        nxt = free_reduce(out)
        if nxt == cur:
            return cur
        cur = nxt
