"""Necessary-condition test for exceptional intersection of two Magnus subgroups.

Two Magnus subgroups <Y1>, <Y2> of H = <x_0..x_k | w> can intersect
exceptionally only if some cyclic permutation of w (or of w^-1) is

    form I:   w1^a1 w2^b1 w1^a2 w2^b2 ... w1^al w2^bl,
              w1 in <Y1>, w2 in <Y2>
    form II:  w3^a1 (v1 v2)^b1 ... w3^al (v1 v2)^bl,
              w3 in <Y1 & Y2>, v1 in <Y1>, v2 in <Y2>

When neither shape exists the pair is certified non-exceptional.  A match
proves nothing: the shapes are necessary, not sufficient.

Both searches cut a rotation of the relator into consecutive pieces with
alternating labels.  With ``cancellation_budget = 0`` the pieces are
literal subwords; a positive budget lets a junction hide a cancelling pair
``h h^-1`` with ``h`` a word over the shared generators, the total length
of all such ``h`` bounded by the budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd

from .errors import DegeneratePair, TooLong
from .freeword import CyclicWord, Letter, Word, invert, power_root
from .presentation import MagnusSubset, OneRelatorSpec, magnus_subset

CERTIFIED = "CertifiedNonExceptional"
FORM_MATCH = "FormMatch"
INCONCLUSIVE = "Inconclusive"
ASSUMED = "Assumed"

DEGENERATE_REASON = "relator inside one subgroup"


@dataclass(frozen=True)
class SearchParams:
    max_exponent: int | None = None  # None means |w| + cancellation_budget
    cancellation_budget: int = 0
    node_limit: int = 500_000

    def exponent_bound(self, length: int) -> int:
        if self.max_exponent is None:
            return length + self.cancellation_budget
        return self.max_exponent

    def to_json(self):
        return {
            "max_exponent": self.max_exponent,
            "cancellation_budget": self.cancellation_budget,
            "node_limit": self.node_limit,
        }

    @classmethod
    def from_json(cls, d):
        return cls(d["max_exponent"], d["cancellation_budget"], d["node_limit"])


DEFAULT_PARAMS = SearchParams()


@dataclass(frozen=True)
class MagnusPair:
    spec: OneRelatorSpec
    Y1: MagnusSubset
    Y2: MagnusSubset

    def __post_init__(self):
        if self.Y1.indices == self.Y2.indices:
            raise ValueError("a Magnus pair needs two distinct subsets")
        if self.Y1.alphabet_k != self.spec.k or self.Y2.alphabet_k != self.spec.k:
            raise ValueError("subsets belong to a different alphabet")

    @classmethod
    def of(cls, spec: OneRelatorSpec, y1, y2) -> "MagnusPair":
        return cls(spec, magnus_subset(spec, y1), magnus_subset(spec, y2))

    def with_relator(self, relator: CyclicWord) -> "MagnusPair":
        return MagnusPair.of(OneRelatorSpec(self.spec.k, relator), self.Y1.indices, self.Y2.indices)

    def swapped(self) -> "MagnusPair":
        return MagnusPair(self.spec, self.Y2, self.Y1)

    @property
    def indices(self):
        return tuple(sorted(self.Y1.indices)), tuple(sorted(self.Y2.indices))

    def __str__(self):
        return f"({self.Y1}, {self.Y2})"


@dataclass(frozen=True)
class FormWitness:
    form: str  # "I" or "II"
    rotation_offset: int
    inverted: bool
    components: tuple  # I: (w1, w2); II: (w3, v1, v2)
    exponents: tuple  # ((a1, b1), ..., (al, bl))

    @property
    def component_names(self):
        return ("w1", "w2") if self.form == "I" else ("w3", "v1", "v2")

    @property
    def total_length(self) -> int:
        return sum(len(c) for c in self.components)

    def factors(self):
        """The alternating factors as ``(word, exponent)`` in product order."""
        if self.form == "I":
            first, second = self.components
        else:
            first = self.components[0]
            second = self.components[1] * self.components[2]
        out = []
        for a, b in self.exponents:
            out.append((first, a))
            out.append((second, b))
        return out

    def expand(self) -> Word:
        letters = []
        for base, e in self.factors():
            letters.extend((base ** e).letters)
        return Word(letters)

    def designated(self, relator: CyclicWord) -> Word:
        """The word this witness spells: rotation ``rotation_offset`` of the
        relator, or of its inverse when ``inverted``."""
        source = relator.inverse() if self.inverted else relator
        return source.rotate(self.rotation_offset).base

    def explain(self, relator: CyclicWord):
        lines = [f"form {self.form}"]
        lines += [f"  {name} = {c}" for name, c in zip(self.component_names, self.components)]
        target = self.designated(relator)
        how = "rotation of inverse" if self.inverted else "rotation"
        lines.append(f"  target: {how} {self.rotation_offset} = {target}")
        acc = Word()
        for base, e in self.factors():
            if e == 0:
                continue
            acc = acc * base ** e
            lines.append(f"  * ({base})^{e}  ->  {acc}")
        lines.append("  matches target" if acc == target else "  DOES NOT match target")
        return lines

    def to_json(self):
        return {
            "form": self.form,
            "rotation_offset": self.rotation_offset,
            "inverted": self.inverted,
            "components": {n: str(c) for n, c in zip(self.component_names, self.components)},
            "exponents": [list(p) for p in self.exponents],
        }

    @classmethod
    def from_json(cls, d):
        comps = tuple(Word.parse(s) for s in d["components"].values())
        return cls(d["form"], d["rotation_offset"], d["inverted"], comps,
                   tuple(tuple(p) for p in d["exponents"]))


@dataclass(frozen=True)
class PairVerdict:
    pair: tuple  # (Y1 indices, Y2 indices)
    outcome: str
    search_params: SearchParams
    witness: FormWitness | None = None
    reason: str | None = None

    @property
    def positive(self) -> bool:
        return self.outcome in (CERTIFIED, ASSUMED)

    def to_json(self):
        return {
            "pair": [list(self.pair[0]), list(self.pair[1])],
            "outcome": self.outcome,
            "search_params": self.search_params.to_json(),
            "witness": self.witness.to_json() if self.witness else None,
            "reason": self.reason,
        }

    @classmethod
    def from_json(cls, d):
        return cls(
            (tuple(d["pair"][0]), tuple(d["pair"][1])),
            d["outcome"],
            SearchParams.from_json(d["search_params"]),
            FormWitness.from_json(d["witness"]) if d["witness"] else None,
            d["reason"],
        )


@dataclass(frozen=True)
class FormSearch:
    """Result of one matcher: the best witness, if any, and whether the
    search covered its whole envelope."""

    witness: FormWitness | None
    exhaustive: bool
    nodes: int = 0
    over_bound: bool = False  # a match exists, but only with exponents beyond the bound


# --- skeleton -----------------------------------------------------------------


@dataclass(frozen=True)
class Block:
    kind: str  # "A", "B", "X" (outside both subsets) or "flex"
    start: int
    letters: tuple


@dataclass(frozen=True)
class Skeleton:
    classes: tuple  # per-letter class of the relator
    blocks: tuple

    @property
    def pattern(self) -> str:
        return "".join(b.kind for b in self.blocks if b.kind != "flex")


def _classify(pair: MagnusPair):
    y1, y2 = pair.Y1.indices, pair.Y2.indices
    out = []
    for i, _ in pair.spec.relator.letters:
        if i in y1 and i in y2:
            out.append("F")
        elif i in y1:
            out.append("A")
        elif i in y2:
            out.append("B")
        else:
            out.append("X")
    return tuple(out)


def _check_degenerate(pair: MagnusPair, classes):
    kinds = set(classes)
    if kinds <= {"A", "F"} or kinds <= {"B", "F"}:
        raise DegeneratePair(
            f"{pair.spec.relator} lies inside a single Magnus subgroup of {pair}"
        )


def syllable_factorize(pair: MagnusPair) -> Skeleton:
    """Cyclic skeleton of the relator relative to a pair.

    Letters of Y1\\Y2 are A-anchors, of Y2\\Y1 B-anchors, of Y1&Y2 flexible.
    Consecutive same-type anchors (with the flexible letters between them)
    form one block; the flexible runs between blocks of different types
    are listed separately, since every decomposition has to cut them.
    """
    letters = pair.spec.relator.letters
    classes = _classify(pair)
    _check_degenerate(pair, classes)
    n = len(letters)
    anchors = [p for p, c in enumerate(classes) if c != "F"]
    starts = [
        j for j in range(len(anchors))
        if classes[anchors[j]] != classes[anchors[j - 1]]
    ]
    if not starts:
        p = anchors[0]
        return Skeleton(classes, (Block(classes[p], p, letters[p:] + letters[:p]),))

    def arc(a, b):  # cyclic slice a..b inclusive
        return tuple(letters[q % n] for q in range(a, b + 1 if b >= a else b + n + 1))

    blocks = []
    for s_idx, j in enumerate(starts):
        j_next = starts[(s_idx + 1) % len(starts)]
        last = anchors[j_next - 1]  # final anchor of this group
        first = anchors[j]
        blocks.append(Block(classes[first], first, arc(first, last)))
        nxt = anchors[j_next]
        if (nxt - last) % n > 1:
            blocks.append(Block("flex", (last + 1) % n, arc(last + 1, nxt - 1)))
    return Skeleton(classes, tuple(blocks))


# --- main matcher ---------------------------------------------------------------


class _Abort(Exception):
    pass


def _flex_words(flex, budget):
    """Reduced words over the shared generators, grouped by length."""
    letters = [Letter(i, s) for i in sorted(flex) for s in (1, -1)]
    by_len = [[()]]
    for _ in range(budget):
        nxt = []
        for h in by_len[-1]:
            for a in letters:
                if h and h[-1] == a.inverse():
                    continue
                nxt.append(h + (a,))
        by_len.append(nxt)
    return by_len


def _split_point(u, y1, y2):
    """Least s with u[:s] over Y1 and u[s:] over Y2, or None."""
    s = 0
    for p, (i, _) in enumerate(u):
        if i not in y2:
            s = p + 1
    for i, _ in u[:s]:
        if i not in y1:
            return None
    return s


class _Search:
    def __init__(self, pair: MagnusPair, form: str, params: SearchParams):
        self.pair = pair
        self.form = form
        self.params = params
        y1, y2 = pair.Y1.indices, pair.Y2.indices
        self.y1, self.y2 = y1, y2
        self.flex = y1 & y2
        if form == "I":
            self.alphabets = (y1, y2)
        else:
            self.alphabets = (self.flex, y1 | y2)
        n = len(pair.spec.relator)
        self.bound = params.exponent_bound(n)
        self.hwords = _flex_words(self.flex, params.cancellation_budget)
        self.roots = {}
        self.nodes = 0
        self.best = None
        self.best_key = None
        self.over_bound = False

    def _root(self, piece):
        r = self.roots.get(piece)
        if r is None:
            r = self.roots[piece] = power_root(Word._trusted(piece))
        return r

    def run(self) -> FormSearch:
        base = self.pair.spec.relator.letters
        n = len(base)
        exhaustive = True
        try:
            for inverted in (False, True):
                word = invert(Word._trusted(base)).letters if inverted else base
                for r in range(n):
                    R = word[r:] + word[:r]
                    for first in (0, 1):
                        self._extend(R, r, inverted, 0, first, (),
                                     self.params.cancellation_budget, (None, None), ())
        except _Abort:
            exhaustive = False
        return FormSearch(self.best, exhaustive, self.nodes, self.over_bound and self.best is None)

    def _extend(self, R, offset, inverted, i, label, h_in, budget, roots, pieces):
        self.nodes += 1
        if self.nodes > self.params.node_limit:
            raise _Abort
        n = len(R)
        allowed = self.alphabets[label]
        if h_in and R[i] == h_in[0]:
            return  # h_in^-1 followed by R[i] would cancel
        h_in_inv = tuple(Letter(a, -s) for a, s in reversed(h_in))
        for j in range(i + 1, n + 1):
            if R[j - 1][0] not in allowed:
                break
            core = h_in_inv + R[i:j]
            outs = ((),) if j == n else [h for hs in self.hwords[:budget + 1] for h in hs]
            last = R[j - 1]
            for h_out in outs:
                if h_out and h_out[0][0] == last[0] and h_out[0][1] == -last[1]:
                    continue
                piece = core + h_out
                root, e = self._root(piece)
                if roots[label] is not None and roots[label] != root:
                    continue
                new_roots = (root, roots[1]) if label == 0 else (roots[0], root)
                new_pieces = pieces + ((label, e),)
                if j == n:
                    self._finish(offset, inverted, new_roots, new_pieces)
                else:
                    self._extend(R, offset, inverted, j, 1 - label, h_out,
                                 budget - len(h_out), new_roots, new_pieces)

    def _finish(self, offset, inverted, roots, pieces):
        first_root, second_root = roots
        if second_root is None or (self.form == "I" and first_root is None):
            return
        firsts = [e for lab, e in pieces if lab == 0]
        seconds = [e for lab, e in pieces if lab == 1]
        d1, over1 = _scale(firsts, self.bound) if firsts else (1, False)
        splits = {}
        if self.form == "I":
            d2, over2 = _scale(seconds, self.bound)
        else:
            def splittable(m):
                # the unit v1 v2 may be the root power or its inverse
                for sign in (1, -1):
                    cut = _split_point((second_root ** (sign * m)).letters, self.y1, self.y2)
                    if cut is not None:
                        splits[m] = (sign, cut)
                        return True
                return False

            d2, over2 = _scale(seconds, self.bound, splittable)
        if d1 is None or d2 is None:
            # over the bound only if neither group is outright impossible
            if (d1 is not None or over1) and (d2 is not None or over2):
                self.over_bound = True
            return
        if self.form == "I":
            comps = (first_root ** d1, second_root ** d2)
        else:
            sign, cut = splits[d2]
            d2 *= sign
            u = (second_root ** d2).letters
            w3 = first_root ** d1 if first_root is not None else Word()
            comps = (w3, Word._trusted(u[:cut]), Word._trusted(u[cut:]))
        exps = [(lab, e // (d1 if lab == 0 else d2)) for lab, e in pieces]
        witness = FormWitness(self.form, offset, inverted, comps, _pair_up(exps))
        key = (witness.total_length, offset, inverted)
        if self.best_key is None or key < self.best_key:
            self.best, self.best_key = witness, key


def _scale(exps, bound, admissible=lambda d: True):
    """Least d dividing every exponent with ``admissible(d)`` and all
    ``|e|/d`` within bound.  Returns ``(d, False)`` or ``(None, over)``
    where ``over`` says an admissible d existed but exceeded the bound."""
    g = 0
    for e in exps:
        g = gcd(g, e)
    top = max(abs(e) for e in exps)
    over = False
    for d in range(1, g + 1):
        if g % d or not admissible(d):
            continue
        if top // d <= bound:
            return d, False
        over = True
    return None, over


def _pair_up(labelled):
    """Turn an alternating ``[(label, exp), ...]`` into ``((a, b), ...)``."""
    seq = list(labelled)
    if seq[0][0] == 1:
        seq.insert(0, (0, 0))
    if seq[-1][0] == 0:
        seq.append((1, 0))
    return tuple((seq[p][1], seq[p + 1][1]) for p in range(0, len(seq), 2))


def _prepare(pair: MagnusPair):
    _check_degenerate(pair, _classify(pair))


def match_form_i(pair: MagnusPair, params: SearchParams = DEFAULT_PARAMS) -> FormSearch:
    _prepare(pair)
    return _Search(pair, "I", params).run()


def match_form_ii(pair: MagnusPair, params: SearchParams = DEFAULT_PARAMS) -> FormSearch:
    _prepare(pair)
    return _Search(pair, "II", params).run()


def check_pair(pair: MagnusPair, params: SearchParams = DEFAULT_PARAMS) -> PairVerdict:
    try:
        _prepare(pair)
    except DegeneratePair:
        return PairVerdict(pair.indices, INCONCLUSIVE, params, reason=DEGENERATE_REASON)
    first = _Search(pair, "I", params).run()
    if first.witness is not None:
        return PairVerdict(pair.indices, FORM_MATCH, params, witness=first.witness)
    second = _Search(pair, "II", params).run()
    if second.witness is not None:
        return PairVerdict(pair.indices, FORM_MATCH, params, witness=second.witness)
    return _refuted_verdict(pair.indices, params, [first, second])


def _refuted_verdict(indices, params, searches):
    reasons = []
    for name, s in zip(("I", "II"), searches):
        if not s.exhaustive:
            reasons.append(f"form {name} search stopped at node limit {params.node_limit}")
        elif s.over_bound:
            reasons.append(f"form {name} matches only with exponents beyond the bound")
    if reasons:
        return PairVerdict(indices, INCONCLUSIVE, params, reason="; ".join(reasons))
    return PairVerdict(indices, CERTIFIED, params)


# --- brute-force oracle -----------------------------------------------------------
#
# Deliberately naive and separate from the matcher above: it cuts each
# rotation at every admissible set of positions, tests commensurability of
# pieces by commutation, and finds exponents by trial multiplication.


def _naive_root(letters):
    lo, hi = 0, len(letters)
    while hi - lo >= 2 and letters[lo][0] == letters[hi - 1][0] and letters[lo][1] == -letters[hi - 1][1]:
        lo += 1
        hi -= 1
    core = letters[lo:hi]
    for d in range(1, len(core) + 1):
        if len(core) % d == 0 and core[:d] * (len(core) // d) == core:
            head = letters[:lo]
            tail = tuple((i, -s) for i, s in reversed(head))
            return head + core[:d] + tail
    raise AssertionError("unreachable")


def _naive_power(letters, e):
    if e < 0:
        letters = tuple((i, -s) for i, s in reversed(letters))
        e = -e
    return Word(list(letters) * e).letters


def _naive_exponent(root, piece, limit):
    for e in range(1, limit + 1):
        for sgn in (e, -e):
            if _naive_power(root, sgn) == piece:
                return sgn
    return None


def _commute(p, q):
    return Word(p + q) == Word(q + p)


def _all_reduced_words(letters, max_len):
    out = [()]
    frontier = [()]
    for _ in range(max_len):
        nxt = []
        for h in frontier:
            for a in letters:
                if not h or h[-1] != (a[0], -a[1]):
                    nxt.append(h + (a,))
        out.extend(nxt)
        frontier = nxt
    return out


def brute_force_oracle(pair: MagnusPair, max_len: int = 12,
                       params: SearchParams = DEFAULT_PARAMS) -> PairVerdict:
    relator = pair.spec.relator.letters
    n = len(relator)
    if n > max_len:
        raise TooLong(f"relator length {n} exceeds {max_len}")
    y1, y2 = pair.Y1.indices, pair.Y2.indices
    if all(i in y1 for i, _ in relator) or all(i in y2 for i, _ in relator):
        return PairVerdict(pair.indices, INCONCLUSIVE, params, reason=DEGENERATE_REASON)
    beyond = False
    for form in ("I", "II"):
        witness, over = _oracle_form(form, relator, y1, y2, params)
        if witness is not None:
            return PairVerdict(pair.indices, FORM_MATCH, params, witness=witness)
        beyond |= over
    if beyond:
        return PairVerdict(pair.indices, INCONCLUSIVE, params,
                           reason="match only with exponents beyond bound")
    return PairVerdict(pair.indices, CERTIFIED, params)


def _oracle_form(form, relator, y1, y2, params):
    n = len(relator)
    flex = y1 & y2
    budget = params.cancellation_budget
    bound = params.exponent_bound(n)
    limit = n + 2 * budget
    hs = _all_reduced_words([(i, s) for i in sorted(flex) for s in (1, -1)], budget)
    alph = (y1, y2) if form == "I" else (flex, y1 | y2)
    over = False
    for inverted, r, first in product((False, True), range(n), (0, 1)):
        word = tuple((i, -s) for i, s in reversed(relator)) if inverted else tuple(relator)
        R = word[r:] + word[:r]
        for pieces in _cuts(R, alph, first, hs, budget):
            res = _assess(form, pieces, y1, y2, bound, limit)
            if res is None:
                continue
            if res is False:
                over = True
                continue
            return FormWitness(form, r, inverted, res[0], res[1]), False
    return None, over


def _cuts(R, alph, label, hs, budget, i=0, h_in=()):
    """Yield alternating piece lists ``[(label, letters), ...]`` covering R."""
    n = len(R)
    h_inv = tuple((a, -s) for a, s in reversed(h_in))
    for j in range(i + 1, n + 1):
        if any(R[q][0] not in alph[label] for q in range(i, j)):
            break
        for h_out in ((),) if j == n else hs:
            if len(h_out) > budget:
                continue
            raw = h_inv + R[i:j] + h_out
            if Word(raw).letters != raw:
                continue
            if j == n:
                yield [(label, raw)]
            else:
                for rest in _cuts(R, alph, 1 - label, hs, budget - len(h_out), j, h_out):
                    yield [(label, raw)] + rest


def _fit(component, group, limit, bound):
    """Exponents of each piece as a power of ``component``; None if some
    piece is not a power, False if one exceeds the bound."""
    exps = [_naive_exponent(component, p, limit) for p in group]
    if any(e is None for e in exps):
        return None
    if any(abs(e) > bound for e in exps):
        return False
    return exps


def _assess(form, pieces, y1, y2, bound, limit):
    """None if the pieces fit no shape, False if they fit only beyond the
    exponent bound, else ``(components, exponent pairs)``."""
    groups = ([p for lab, p in pieces if lab == 0], [p for lab, p in pieces if lab == 1])
    for g in groups:
        if any(not _commute(g[0], q) for q in g[1:]):
            return None
    if not groups[1] or (form == "I" and not groups[0]):
        return None
    chosen = [None, None]
    status = ["none", "none"]
    for lab in (0, 1):
        if not groups[lab]:
            chosen[lab], status[lab] = ((), []), "ok"
            continue
        root = _naive_root(groups[lab][0])
        for d in range(1, limit + 1):
            comp = _naive_power(root, d)
            if form == "II" and lab == 1 and _naive_cut(comp, y1, y2) is None:
                continue
            fit = _fit(comp, groups[lab], limit, bound)
            if fit is None:
                continue
            if fit is False:
                status[lab] = "over"
                continue
            chosen[lab], status[lab] = (comp, fit), "ok"
            break
    if "none" in status:
        return None
    if "over" in status:
        return False
    counters = [iter(chosen[0][1]), iter(chosen[1][1])]
    exps = [(lab, next(counters[lab])) for lab, _ in pieces]
    if form == "I":
        comps = (Word(chosen[0][0]), Word(chosen[1][0]))
    else:
        u = chosen[1][0]
        cut = _naive_cut(u, y1, y2)
        comps = (Word(chosen[0][0]), Word(u[:cut]), Word(u[cut:]))
    return comps, _pair_up(exps)


def _naive_cut(u, y1, y2):
    return next((s for s in range(len(u) + 1)
                 if all(i in y1 for i, _ in u[:s]) and all(i in y2 for i, _ in u[s:])), None)
