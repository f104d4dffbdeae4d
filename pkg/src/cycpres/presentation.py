"""One-relator presentations <x_0..x_k | w> and cyclic families G_n(w)."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IndexOutOfAlphabet, InvalidRelator, NotMagnus
from .freeword import (
    CyclicWord,
    Letter,
    Word,
    cyclically_reduce,
    involved_indices,
    shift_subscripts,
)


@dataclass(frozen=True)
class OneRelatorSpec:
    """H = <x_0, ..., x_k | relator>, with the relator involving x_0 and x_k."""

    k: int
    relator: CyclicWord

    def __post_init__(self):
        if not self.relator.letters:
            raise InvalidRelator("relator is empty")
        involved = involved_indices(self.relator)
        if self.k < 1:
            raise InvalidRelator(
                f"relator {self.relator} must involve two distinct generators x_0 and x_k"
            )
        if 0 not in involved or self.k not in involved:
            raise InvalidRelator(f"relator {self.relator} must involve x0 and x{self.k}")
        if max(involved) > self.k:
            raise InvalidRelator(f"relator {self.relator} uses generators beyond x{self.k}")

    @classmethod
    def from_word(cls, word) -> "OneRelatorSpec":
        """Build from text or a word: cyclically reduce, then translate to x_0."""
        if isinstance(word, str):
            word = Word.parse(word)
        if isinstance(word, Word):
            word, _ = cyclically_reduce(word)
        return normalize_span(word)[0]

    @property
    def involved(self) -> frozenset:
        return involved_indices(self.relator)

    @property
    def indices(self) -> frozenset:
        return frozenset(range(self.k + 1))

    def __str__(self):
        gens = ", ".join(f"x{i}" for i in range(self.k + 1))
        return f"<{gens} | {self.relator}>"


@dataclass(frozen=True)
class MagnusSubset:
    alphabet_k: int
    indices: frozenset

    @property
    def rank(self) -> int:
        return len(self.indices)

    def __str__(self):
        return "{" + ",".join(str(i) for i in sorted(self.indices)) + "}"


@dataclass(frozen=True)
class CyclicPresentationSpec:
    """G_n(w): generators x_0..x_{n-1}, relators w, w.theta, ..., w.theta^{n-1}."""

    n: int
    w: CyclicWord

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.w.letters and max(involved_indices(self.w)) >= self.n:
            raise IndexOutOfAlphabet(
                f"{self.w} uses x{max(involved_indices(self.w))} but n = {self.n}"
            )


@dataclass(frozen=True)
class GapProfile:
    k: int
    involved: frozenset
    max_interior_gap: int

    @property
    def t_min(self) -> int:
        """Least t for which no t consecutive interior generators are all omitted."""
        return self.max_interior_gap + 1


def normalize_span(u: CyclicWord):
    """Translate subscripts so the least involved index is 0.

    Returns ``(spec, offset)`` where ``offset`` was subtracted.
    """
    if not u.letters:
        raise InvalidRelator("relator is empty")
    offset = min(involved_indices(u))
    moved = CyclicWord._trusted(tuple(Letter(i - offset, s) for i, s in u.letters))
    k = max(involved_indices(moved))
    return OneRelatorSpec(k, moved), offset


def relator_family(p: CyclicPresentationSpec) -> list:
    family = []
    for i in range(p.n):
        c, g = cyclically_reduce(shift_subscripts(p.w.base, i, p.n))
        # a shift never breaks cyclic reduction
        assert not g.letters and len(c) == len(p.w)
        family.append(c)
    return family


def gap_profile(spec: OneRelatorSpec) -> GapProfile:
    involved = spec.involved
    best = run = 0
    for i in range(1, spec.k):
        if i in involved:
            run = 0
        else:
            run += 1
            best = max(best, run)
    return GapProfile(spec.k, involved, best)


def magnus_subset(spec: OneRelatorSpec, indices) -> MagnusSubset:
    indices = frozenset(indices)
    stray = [i for i in indices if not 0 <= i <= spec.k]
    if stray:
        raise IndexOutOfAlphabet(f"indices {sorted(stray)} outside 0..{spec.k}")
    if spec.involved <= indices:
        raise NotMagnus(
            f"{{{','.join(map(str, sorted(indices)))}}} omits no generator of {spec.relator}"
        )
    return MagnusSubset(spec.k, indices)
