"""Exact arithmetic on words in a free group with generators x_0, x_1, ...

A letter is a pair ``(index, sign)``; a :class:`Word` is a freely reduced
tuple of letters and a :class:`CyclicWord` is a word whose first and last
letters are not mutually inverse.  All values are immutable.

Text form::

    x0^-1 x2 x0 x2^-2        # the literal 1 is the empty word
"""

from __future__ import annotations

import re
from typing import Iterable, NamedTuple

from .errors import (
    EmptyWord,
    IndexOutOfAlphabet,
    NotCyclicallyReduced,
    WordParseError,
)


class Letter(NamedTuple):
    index: int
    sign: int

    def inverse(self) -> "Letter":
        return Letter(self.index, -self.sign)

    def __str__(self):
        return f"x{self.index}" if self.sign > 0 else f"x{self.index}^-1"


def letter_key(letter):
    """Total order on letters: by index, then +1 before -1."""
    return (letter[0], -letter[1])


def word_key(letters):
    return [(i, -s) for i, s in letters]


def _free_reduce(seq):
    out = []
    for i, s in seq:
        if s not in (1, -1):
            raise ValueError(f"letter sign must be +1 or -1, got {s}")
        if i < 0:
            raise ValueError(f"generator index must be non-negative, got {i}")
        if out and out[-1][0] == i and out[-1][1] == -s:
            out.pop()
        else:
            out.append(Letter(i, s))
    return tuple(out)


class Word:
    """A freely reduced word.  Construction always reduces its input."""

    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable = ()):
        self.letters = _free_reduce(letters)
        self._hash = None

    @classmethod
    def _trusted(cls, letters):
        # caller guarantees ``letters`` is a reduced tuple of Letter
        w = cls.__new__(cls)
        w.letters = letters
        w._hash = None
        return w

    @classmethod
    def parse(cls, text: str) -> "Word":
        return cls(_parse_letters(text))

    @classmethod
    def gen(cls, index: int, power: int = 1) -> "Word":
        sign = 1 if power > 0 else -1
        return cls._trusted((Letter(index, sign),) * abs(power))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word._trusted(self.letters[item])
        return self.letters[item]

    def __eq__(self, other):
        if isinstance(other, Word):
            return self.letters == other.letters
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.letters)
        return self._hash

    def __lt__(self, other):
        return word_key(self.letters) < word_key(other.letters)

    def __mul__(self, other):
        return Word(self.letters + other.letters)

    def __invert__(self):
        return invert(self)

    def __pow__(self, m: int):
        if m < 0:
            return invert(self) ** (-m)
        if m == 0:
            return Word()
        c, g = cyclically_reduce(self)
        return Word._trusted(g.letters + c.base.letters * m + invert(g).letters)

    def syllables(self):
        """Run-length view: list of ``(index, exponent)``."""
        out = []
        for i, s in self.letters:
            if out and out[-1][0] == i:
                out[-1][1] += s
            else:
                out.append([i, s])
        return [(i, e) for i, e in out]

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(
            f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in self.syllables()
        )

    def __repr__(self):
        return f"Word({str(self)!r})"


class CyclicWord:
    """A cyclically reduced word.  Equality is literal; see
    :meth:`is_rotation_of` for equality up to cyclic permutation."""

    __slots__ = ("base",)

    def __init__(self, base):
        if not isinstance(base, Word):
            base = Word(base)
        if not is_cyclically_reduced(base):
            raise NotCyclicallyReduced(f"{base} is not cyclically reduced")
        self.base = base

    @classmethod
    def parse(cls, text: str) -> "CyclicWord":
        return cls(Word.parse(text))

    @property
    def letters(self):
        return self.base.letters

    def __len__(self):
        return len(self.base)

    def __iter__(self):
        return iter(self.base)

    def __eq__(self, other):
        if isinstance(other, CyclicWord):
            return self.base == other.base
        return NotImplemented

    def __hash__(self):
        return hash(("cyclic", self.base.letters))

    def __str__(self):
        return str(self.base)

    def __repr__(self):
        return f"CyclicWord({str(self)!r})"

    def rotate(self, r: int) -> "CyclicWord":
        if not self.letters:
            return self
        r %= len(self.letters)
        return CyclicWord._trusted(self.letters[r:] + self.letters[:r])

    @classmethod
    def _trusted(cls, letters):
        c = cls.__new__(cls)
        c.base = Word._trusted(letters)
        return c

    def inverse(self) -> "CyclicWord":
        return CyclicWord._trusted(invert(self.base).letters)

    def canonical(self) -> "CyclicWord":
        """Lexicographically least rotation (letter order: index, then +1 < -1)."""
        if not self.letters:
            return self
        return min(rotations(self), key=lambda c: word_key(c.letters))

    def is_rotation_of(self, other: "CyclicWord") -> bool:
        if len(self) != len(other):
            return False
        if not self.letters:
            return True
        doubled = self.letters + self.letters
        n = len(self.letters)
        return any(doubled[r:r + n] == other.letters for r in range(n))


_TERM = re.compile(r"x(\d+)(?:\^(-?)(\d+))?")


def _parse_letters(text: str):
    stripped = text.strip()
    if stripped == "1":
        return []
    if not stripped:
        raise WordParseError(text, 0, "empty input")
    offset = len(text) - len(text.lstrip())
    pos = offset
    end = offset + len(stripped)
    letters = []
    while pos < end:
        m = _TERM.match(text, pos)
        if m is None or m.end() > end:
            raise WordParseError(text, pos, "expected term 'x<index>[^<exponent>]'")
        index = int(m.group(1))
        power = 1
        if m.group(3) is not None:
            power = int(m.group(3))
            if power == 0:
                raise WordParseError(text, m.start(3), "exponent must be nonzero")
            if m.group(2):
                power = -power
        sign = 1 if power > 0 else -1
        letters.extend([(index, sign)] * abs(power))
        pos = m.end()
        if pos < end:
            if not text[pos].isspace():
                raise WordParseError(text, pos, "expected whitespace between terms")
            while pos < end and text[pos].isspace():
                pos += 1
    return letters


def parse_word(text: str) -> Word:
    return Word.parse(text)


def reduce(raw) -> Word:
    return Word(raw)


def invert(u: Word) -> Word:
    return Word._trusted(tuple(Letter(i, -s) for i, s in reversed(u.letters)))


def is_cyclically_reduced(u: Word) -> bool:
    lt = u.letters
    return len(lt) <= 1 or lt[0] != Letter(lt[-1][0], -lt[-1][1])


def cyclically_reduce(u: Word):
    """Return ``(c, g)`` with ``u = g c g^-1`` and ``c`` cyclically reduced."""
    lt = u.letters
    lo, hi = 0, len(lt)
    while hi - lo >= 2 and lt[lo][0] == lt[hi - 1][0] and lt[lo][1] == -lt[hi - 1][1]:
        lo += 1
        hi -= 1
    return CyclicWord._trusted(lt[lo:hi]), Word._trusted(lt[:lo])


def rotations(c: CyclicWord) -> set:
    if not c.letters:
        return {c}
    return {c.rotate(r) for r in range(len(c))}


def shift_subscripts(u: Word, i: int, n: int) -> Word:
    """Apply the subscript shift x_j -> x_{(j+i) mod n}."""
    if n <= 0:
        raise ValueError("n must be positive")
    for j, _ in u.letters:
        if j >= n:
            raise IndexOutOfAlphabet(f"x{j} is outside the alphabet x0..x{n - 1}")
    return Word._trusted(tuple(Letter((j + i) % n, s) for j, s in u.letters))


def involved_indices(u) -> frozenset:
    return frozenset(j for j, _ in u.letters)


def _period(lt):
    n = len(lt)
    for d in range(1, n + 1):
        if n % d == 0 and lt[:d] * (n // d) == lt:
            return d
    return n


def primitive_root(u):
    """Return ``(p, m)`` with ``u = p^m`` and ``m`` maximal.

    ``u`` must be nonempty and cyclically reduced.
    """
    base = u.base if isinstance(u, CyclicWord) else u
    if not base.letters:
        raise EmptyWord("primitive root of the empty word")
    if not is_cyclically_reduced(base):
        raise NotCyclicallyReduced(f"{base} is not cyclically reduced")
    d = _period(base.letters)
    return Word._trusted(base.letters[:d]), len(base.letters) // d


def power_root(u: Word):
    """Root of an arbitrary nonempty reduced word, canonically oriented.

    Returns ``(r, e)`` with ``u = r^e`` where ``r`` generates the maximal
    cyclic subgroup containing ``u``; of ``r`` and ``r^-1`` the one whose
    letter sequence is lexicographically smaller is chosen.  Two nontrivial
    words are powers of a common element iff their roots coincide.
    """
    if not u.letters:
        raise EmptyWord("root of the empty word")
    c, g = cyclically_reduce(u)
    p, m = primitive_root(c.base)
    root = g.letters + p.letters + invert(g).letters
    inv = invert(Word._trusted(root)).letters
    if word_key(inv) < word_key(root):
        return Word._trusted(inv), -m
    return Word._trusted(root), m
