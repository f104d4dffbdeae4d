"""Bounded Todd-Coxeter enumeration of the cosets of the trivial subgroup.

Strategy ``HLT+lookahead``: cosets are processed in order of definition;
every relator is scanned from each live coset, filling gaps by new
definitions, and coincidences are processed as soon as they arise.  When the
table is full, a lookahead pass scans all live cosets without defining,
then the table is compacted; if that frees less than 1/64 of the table the
run is declared an overflow.  Deterministic for a given presentation and coset limit.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..presentation import CyclicPresentationSpec, relator_family

STRATEGY = "HLT+lookahead"


@dataclass(frozen=True)
class EnumerationOutcome:
    completed: bool
    order: int | None  # group order when completed
    max_cosets: int
    defined: int  # cosets ever defined, across compactions
    collapsed: int  # cosets eliminated by coincidences
    strategy: str = STRATEGY

    def __str__(self):
        if self.completed:
            return f"Completed({self.order})"
        return f"Overflow({self.max_cosets})"

    def to_json(self):
        return {
            "result": "Completed" if self.completed else "Overflow",
            "order": self.order,
            "max_cosets": self.max_cosets,
            "defined": self.defined,
            "collapsed": self.collapsed,
            "strategy": self.strategy,
        }


class _Overflow(Exception):
    pass


class CosetTable:
    """Coset table over generators x_0..x_{ngens-1}; column 2j is x_j and
    column 2j+1 its inverse."""

    def __init__(self, ngens, relators, max_cosets):
        self.ncols = 2 * ngens
        self.relators = [
            [2 * i + (0 if s > 0 else 1) for i, s in r] for r in relators if r
        ]
        self.max_cosets = max_cosets
        self.table = [[None] * self.ncols]
        self.rep = [0]
        self.collapsed = 0
        self.defined = 1

    def _define(self, a, x):
        if len(self.table) >= self.max_cosets:
            raise _Overflow
        self.defined += 1
        b = len(self.table)
        self.table.append([None] * self.ncols)
        self.rep.append(b)
        self.table[a][x] = b
        self.table[b][x ^ 1] = a

    def _find(self, c):
        rep = self.rep
        root = c
        while rep[root] != root:
            root = rep[root]
        while rep[c] != root:
            rep[c], c = root, rep[c]
        return root

    def _merge(self, a, b, queue):
        a, b = self._find(a), self._find(b)
        if a != b:
            if b < a:
                a, b = b, a
            self.rep[b] = a
            queue.append(b)

    def _coincidence(self, a, b):
        queue = []
        self._merge(a, b, queue)
        table = self.table
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            self.collapsed += 1
            row = table[g]
            for x in range(self.ncols):
                d = row[x]
                if d is None:
                    continue
                table[d][x ^ 1] = None
                mu, nu = self._find(g), self._find(d)
                if table[mu][x] is not None:
                    self._merge(nu, table[mu][x], queue)
                elif table[nu][x ^ 1] is not None:
                    self._merge(mu, table[nu][x ^ 1], queue)
                else:
                    table[mu][x] = nu
                    table[nu][x ^ 1] = mu

    def _scan_and_fill(self, a, word):
        table = self.table
        f, i = a, 0
        b, j = a, len(word) - 1
        while True:
            while i <= j and table[f][word[i]] is not None:
                f = table[f][word[i]]
                i += 1
            if i > j:
                if f != a:
                    self._coincidence(f, a)
                return
            while j >= i and table[b][word[j] ^ 1] is not None:
                b = table[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self._coincidence(f, b)
                return
            if i == j:
                table[f][word[i]] = b
                table[b][word[i] ^ 1] = f
                return
            self._define(f, word[i])

    def _scan_only(self, a, word):
        """Scan without defining; closes a single gap or records a coincidence."""
        table = self.table
        f, i = a, 0
        b, j = a, len(word) - 1
        while i <= j and table[f][word[i]] is not None:
            f = table[f][word[i]]
            i += 1
        if i > j:
            if f != a:
                self._coincidence(f, a)
            return
        while j >= i and table[b][word[j] ^ 1] is not None:
            b = table[b][word[j] ^ 1]
            j -= 1
        if j < i:
            self._coincidence(f, b)
        elif i == j:
            table[f][word[i]] = b
            table[b][word[i] ^ 1] = f

    def _lookahead(self):
        for c in range(len(self.table)):
            for r in self.relators:
                if self.rep[c] != c:
                    break
                self._scan_only(c, r)

    def _compact(self, a):
        """Renumber live cosets in order; returns the new index of the
        first live coset at or after ``a``."""
        old = [c for c in range(len(self.table)) if self.rep[c] == c]
        new_of = {c: i for i, c in enumerate(old)}
        table = []
        for c in old:
            table.append([None if d is None else new_of[d] for d in self.table[c]])
        nxt = next((new_of[c] for c in old if c >= a), len(old))
        self.table = table
        self.rep = list(range(len(table)))
        return nxt

    def run(self) -> bool:
        """Enumerate; True if the table closed, False on overflow."""
        a = 0
        while True:
            try:
                while a < len(self.table):
                    for r in self.relators:
                        if self.rep[a] != a:
                            break
                        self._scan_and_fill(a, r)
                    if self.rep[a] == a:
                        row = self.table[a]
                        for x in range(self.ncols):
                            if row[x] is None:
                                self._define(a, x)
                    a += 1
                return True
            except _Overflow:
                self._lookahead()
                # stop unless lookahead freed a worthwhile share of the table
                if self.max_cosets - self.live() < max(1, self.max_cosets // 64):
                    return False
                a = self._compact(a)

    def live(self) -> int:
        return sum(1 for c in range(len(self.rep)) if self.rep[c] == c)


def enumerate_cosets(ngens, relators, max_cosets) -> EnumerationOutcome:
    """Order of <x_0..x_{ngens-1} | relators> if it closes within ``max_cosets``."""
    if max_cosets < 1:
        raise ValueError("max_cosets must be at least 1")
    ct = CosetTable(ngens, relators, max_cosets)
    done = ct.run()
    return EnumerationOutcome(done, ct.live() if done else None, max_cosets,
                              ct.defined, ct.collapsed)


def todd_coxeter(p: CyclicPresentationSpec, max_cosets: int = 100_000) -> EnumerationOutcome:
    relators = [c.letters for c in relator_family(p)]
    return enumerate_cosets(p.n, relators, max_cosets)
