"""Infiniteness certificates for G_n(w).

Four rules, each turning verified (or explicitly assumed) non-exceptional
Magnus pairs into a bound n_min such that for every n >= n_min each
one-relator group <x_i..x_{i+k} | w theta^i> embeds in G_n(w):

=================  ====================================================  ==========
tag                hypothesis                                            n_min
=================  ====================================================  ==========
``Cor1_4``         w involves every x_0..x_k; (M_k, M_0) non-exceptional  2(k + 1)
``Thm1_3``         w is t-pure                                           2k + 2t
``Cor1_2``         (M_k, M_0) non-exceptional                            4k
``Thm1_1_manual``  user asserts the k-fold intersection is trivial       4k
=================  ====================================================  ==========

Here M_k = <x_0..x_{k-1}> and M_0 = <x_1..x_k>.  t-purity additionally
needs, for i = 1..k-t, that M_{i,i+t-1} (generated by all of x_0..x_k
except x_i..x_{i+t-1}) meets both M_0 and M_k non-exceptionally.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import Condition3Violated
from .formcheck import (
    ASSUMED,
    DEFAULT_PARAMS,
    MagnusPair,
    PairVerdict,
    SearchParams,
    check_pair,
)
from .freeword import CyclicWord, word_key
from .presentation import OneRelatorSpec, gap_profile

FULL_INVOLVEMENT = "Cor1_4"
PURE = "Thm1_3"
SINGLE_PAIR = "Cor1_2"
MANUAL_TRIPLE = "Thm1_1_manual"

NONEXCEPTIONAL_PAIR = "NonExceptionalPair"
TRIPLE_TRIVIAL = "TripleIntersectionTrivial"


def relator_key(relator: CyclicWord):
    """Invariant of a relator under rotation and inversion."""
    a = relator.canonical().letters
    b = relator.inverse().canonical().letters
    return min(a, b, key=word_key)


def _pair_key(y1, y2):
    return frozenset((frozenset(y1), frozenset(y2)))


@dataclass(frozen=True)
class Assumption:
    """A hypothesis supplied by the user, never generated by the library."""

    kind: str
    source: str
    relator: tuple = ()  # relator_key of the word it speaks about
    pair: tuple | None = None  # (Y1 indices, Y2 indices) for NonExceptionalPair
    description: str | None = None

    @classmethod
    def nonexceptional(cls, spec: OneRelatorSpec, y1, y2, source: str) -> "Assumption":
        MagnusPair.of(spec, y1, y2)  # validates both subsets
        return cls(NONEXCEPTIONAL_PAIR, source, relator_key(spec.relator),
                   (tuple(sorted(y1)), tuple(sorted(y2))))

    @classmethod
    def triple_trivial(cls, spec: OneRelatorSpec, source: str,
                       description: str | None = None) -> "Assumption":
        if description is None:
            k = spec.k
            description = (
                f"<x0..x{k - 1}> & <x1..x{k}> & ... & <x{k}..x{2 * k - 1}> = 1 "
                f"in the stem product on x0..x{3 * k - 1}"
            )
        return cls(TRIPLE_TRIVIAL, source, relator_key(spec.relator), description=description)

    def covers(self, pair: MagnusPair) -> bool:
        return (
            self.kind == NONEXCEPTIONAL_PAIR
            and self.relator == relator_key(pair.spec.relator)
            and _pair_key(*self.pair) == _pair_key(pair.Y1.indices, pair.Y2.indices)
        )

    def to_json(self):
        if self.kind == NONEXCEPTIONAL_PAIR:
            return {"kind": self.kind, "pair": [list(p) for p in self.pair], "source": self.source}
        return {"kind": self.kind, "description": self.description, "source": self.source}

    @classmethod
    def from_json(cls, d, spec: OneRelatorSpec) -> "Assumption":
        if d["kind"] == NONEXCEPTIONAL_PAIR:
            return cls.nonexceptional(spec, d["pair"][0], d["pair"][1], d["source"])
        return cls.triple_trivial(spec, d["source"], d["description"])


def main_pair(spec: OneRelatorSpec) -> MagnusPair:
    k = spec.k
    return MagnusPair.of(spec, range(0, k), range(1, k + 1))


def required_pairs(spec: OneRelatorSpec, t: int) -> list:
    """Pairs whose non-exceptionality makes w t-pure (given conditions 1 and 3)."""
    k = spec.k
    if not 1 <= t <= k:
        raise ValueError(f"t must lie in 1..{k}, got {t}")
    g = gap_profile(spec).max_interior_gap
    if t < g + 1:
        raise Condition3Violated(
            f"{spec.relator} omits {g} consecutive interior generators; need t >= {g + 1}"
        )
    m_k = frozenset(range(0, k))
    m_0 = frozenset(range(1, k + 1))
    pairs = [MagnusPair.of(spec, m_k, m_0)]
    for i in range(1, k - t + 1):
        x_i = frozenset(range(0, i)) | frozenset(range(i + t, k + 1))
        pairs.append(MagnusPair.of(spec, x_i, m_0))
        pairs.append(MagnusPair.of(spec, x_i, m_k))
    return pairs


@dataclass(frozen=True)
class PurityCandidate:
    t: int
    pairs: tuple
    verdicts: tuple

    @property
    def holds(self) -> bool:
        return all(v.positive for v in self.verdicts)


@dataclass(frozen=True)
class PurityReport:
    k: int
    t_min_syntactic: int
    candidates: tuple
    certified_t: int | None


class _Ledger:
    """Runs each pair check once and records which assumptions discharge
    which failed checks."""

    def __init__(self, spec, assumptions, params):
        self.spec = spec
        self.assumptions = list(assumptions)
        self.params = params
        self.raw = {}
        self.order = []

    def verdict(self, pair: MagnusPair) -> PairVerdict:
        key = _pair_key(pair.Y1.indices, pair.Y2.indices)
        if key not in self.raw:
            self.raw[key] = check_pair(pair, self.params)
            self.order.append(key)
        return self.raw[key]

    def assumption_for(self, pair: MagnusPair):
        return next((a for a in self.assumptions if a.covers(pair)), None)

    def discharge(self, pairs):
        """``(ok, used assumptions)`` for a set of pairs that must all be positive."""
        used = []
        for p in pairs:
            if self.verdict(p).positive:
                continue
            a = self.assumption_for(p)
            if a is None:
                return False, []
            if a not in used:
                used.append(a)
        return True, used

    def effective(self, pair: MagnusPair) -> PairVerdict:
        v = self.verdict(pair)
        if v.positive:
            return v
        a = self.assumption_for(pair)
        if a is None:
            return v
        return _assumed(v, a)


def _assumed(v: PairVerdict, a: Assumption) -> PairVerdict:
    return PairVerdict(v.pair, ASSUMED, v.search_params, v.witness,
                       f"check gave {v.outcome}; assumed: {a.source}")


def _purity(ledger: _Ledger) -> PurityReport:
    spec = ledger.spec
    t_min = gap_profile(spec).t_min
    candidates = []
    certified = None
    for t in range(t_min, spec.k + 1):
        pairs = required_pairs(spec, t)
        verdicts = tuple(ledger.effective(p) for p in pairs)
        cand = PurityCandidate(t, tuple(p.indices for p in pairs), verdicts)
        candidates.append(cand)
        if certified is None and cand.holds:
            certified = t
    return PurityReport(spec.k, t_min, tuple(candidates), certified)


def analyze_purity(spec: OneRelatorSpec, assumptions=(), params: SearchParams = DEFAULT_PARAMS) -> PurityReport:
    return _purity(_Ledger(spec, assumptions, params))


@dataclass(frozen=True)
class Certificate:
    word: str
    k: int
    theorem: str | None  # None: no rule applies
    t: int | None
    n_min: int | None
    checks: tuple
    assumptions: tuple
    notes: tuple = ()
    conclusion: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.theorem is not None

    def to_dict(self):
        d = {"word": self.word, "k": self.k, "theorem": self.theorem}
        if self.t is not None:
            d["t"] = self.t
        d["n_min"] = self.n_min
        d["checks"] = [c.to_json() for c in self.checks]
        d["assumptions"] = [a.to_json() for a in self.assumptions]
        d["notes"] = list(self.notes)
        d["conclusion"] = self.conclusion
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        d = json.loads(text)
        spec = OneRelatorSpec.from_word(d["word"])
        return cls(
            d["word"], d["k"], d["theorem"], d.get("t"), d["n_min"],
            tuple(PairVerdict.from_json(c) for c in d["checks"]),
            tuple(Assumption.from_json(a, spec) for a in d["assumptions"]),
            tuple(d["notes"]), d["conclusion"],
        )


def _conclusion(spec, n_min):
    k = spec.k
    if n_min is None:
        return {"infinite": None,
                "statement": "no rule applies; nothing is claimed about G_n(w)"}
    return {
        "infinite": True,
        "n_min": n_min,
        "statement": (
            f"for all n >= {n_min}: each <x_i,...,x_(i+{k}) | w theta^i> "
            f"(0 <= i < n) embeds in G_n(w); G_n(w) is infinite"
        ),
    }


class RuleOption(NamedTuple):
    n_min: int
    order: int  # tie-break between rules with equal bounds
    tag: str
    t: int | None
    used: list
    pairs: list


def _options(ledger: _Ledger, report: PurityReport):
    spec = ledger.spec
    k = spec.k
    mp = main_pair(spec)
    options = []
    ok, used = ledger.discharge([mp])
    if ok and spec.involved == spec.indices:
        options.append(RuleOption(2 * (k + 1), 0, FULL_INVOLVEMENT, None, used, [mp]))
    for cand in report.candidates:
        if cand.holds:
            pairs = required_pairs(spec, cand.t)
            _, used_t = ledger.discharge(pairs)
            options.append(RuleOption(2 * k + 2 * cand.t, 1, PURE, cand.t, used_t, pairs))
    if ok:
        options.append(RuleOption(4 * k, 2, SINGLE_PAIR, None, used, [mp]))
    triple = next((a for a in ledger.assumptions
                   if a.kind == TRIPLE_TRIVIAL and a.relator == relator_key(spec.relator)), None)
    if triple is not None:
        options.append(RuleOption(4 * k, 3, MANUAL_TRIPLE, None, [triple], []))
    return options


def applicable_rules(spec: OneRelatorSpec, assumptions=(),
                     params: SearchParams = DEFAULT_PARAMS) -> list:
    """Every rule (and every pure t) whose hypotheses hold, unsorted."""
    ledger = _Ledger(spec, assumptions, params)
    return _options(ledger, _purity(ledger))


def certify(spec: OneRelatorSpec, assumptions=(), params: SearchParams = DEFAULT_PARAMS) -> Certificate:
    """Best certificate obtainable for ``spec``; ``theorem is None`` when none."""
    ledger = _Ledger(spec, assumptions, params)
    k = spec.k
    mp = main_pair(spec)
    options = _options(ledger, _purity(ledger))

    notes = [
        "pair checks test the two necessary shapes for exceptional intersection; "
        f"search envelope max_exponent={params.max_exponent}, "
        f"cancellation_budget={params.cancellation_budget}, node_limit={params.node_limit}; "
        "completeness of the bounded search is not established",
    ]
    if any(key != _pair_key(*mp.indices) for key in ledger.order):
        notes.append(
            "pairs other than (<x0..x(k-1)>, <x1..xk>) are checked with the two-shape "
            "criterion generalized to arbitrary Magnus pairs"
        )

    if not options:
        checks = tuple(ledger.raw[key] for key in ledger.order)
        return Certificate(str(spec.relator), k, None, None, None, checks, (),
                           tuple(notes), _conclusion(spec, None))

    n_min, _, tag, t, used, pairs = min(options, key=lambda o: (o.n_min, o.order))
    assumed_keys = {
        _pair_key(*p.indices) for p in pairs if not ledger.verdict(p).positive
    }
    checks = []
    for key in ledger.order:
        v = ledger.raw[key]
        if key in assumed_keys:
            first = next(p for p in pairs if _pair_key(*p.indices) == key)
            v = _assumed(v, ledger.assumption_for(first))
        checks.append(v)

    if tag == FULL_INVOLVEMENT:
        notes.append(
            "bound 2(k+1) uses only the pair (<x0..x(k-1)>, <x1..xk>) and involvement of "
            "every generator; the remaining t-purity pairs are not required by this rule"
        )
    elif tag == MANUAL_TRIPLE:
        notes.append(
            "the k-fold intersection hypothesis is taken from the listed assumption, not "
            "verified; the bound 4k is used although the standing setup only needs n >= 3k"
        )
    return Certificate(str(spec.relator), k, tag, t, n_min, tuple(checks), tuple(used),
                       tuple(notes), _conclusion(spec, n_min))
