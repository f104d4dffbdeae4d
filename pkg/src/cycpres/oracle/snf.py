"""Exact Smith normal form and the abelianization of G_n(w)."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import OracleContradiction
from ..presentation import CyclicPresentationSpec
from .resultant import circulant_resultant, exponent_polynomial


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major tuple of row tuples, Python ints

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entries do not match the declared shape")

    @classmethod
    def from_rows(cls, rows) -> "IntMatrix":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        return cls(len(rows), len(rows[0]) if rows else 0, rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def is_circulant(self) -> bool:
        if self.rows != self.cols:
            return False
        n = self.rows
        return all(
            self.entries[i][j] == self.entries[(i + 1) % n][(j + 1) % n]
            for i in range(n) for j in range(n)
        )

    def __str__(self):
        return "\n".join(" ".join(f"{x:>3}" for x in r) for r in self.entries)


@dataclass(frozen=True)
class SNFResult:
    invariants: tuple

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariants if d)

    @property
    def nonzero_product(self) -> int:
        prod = 1
        for d in self.invariants:
            if d:
                prod *= d
        return prod

    def __str__(self):
        return "(" + ", ".join(map(str, self.invariants)) + ")"


def smith_normal_form(m: IntMatrix) -> SNFResult:
    """Invariant factors d_1 | d_2 | ... of ``m`` (length min(rows, cols)).

    Pivot: least nonzero |entry| of the active block, ties broken row-major.
    """
    a = [list(r) for r in m.entries]
    rows, cols = m.rows, m.cols
    diag = []
    for t in range(min(rows, cols)):
        while True:
            pivot = _min_entry(a, t, rows, cols)
            if pivot is None:
                break
            i, j = pivot
            a[t], a[i] = a[i], a[t]
            for r in a:
                r[t], r[j] = r[j], r[t]
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // p
                    row_i, row_t = a[i], a[t]
                    for j in range(t, cols):
                        row_i[j] -= q * row_t[j]
                    dirty |= a[i][t] != 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // p
                    for i in range(t, rows):
                        a[i][j] -= q * a[i][t]
                    dirty |= a[t][j] != 0
            if dirty:
                continue
            # row and column cleared; enforce divisibility on the rest
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            row_b, row_t = a[bad], a[t]
            for j in range(t, cols):
                row_t[j] += row_b[j]
        if pivot is None:
            diag.extend([0] * (min(rows, cols) - t))
            break
        diag.append(abs(a[t][t]))
    return SNFResult(tuple(diag))


def _min_entry(a, t, rows, cols):
    best = None
    for i in range(t, rows):
        for j in range(t, cols):
            v = a[i][j]
            if v and (best is None or abs(v) < best[0]):
                best = (abs(v), i, j)
    return None if best is None else best[1:]


def exponent_matrix(p: CyclicPresentationSpec) -> IntMatrix:
    """Row i, column j: exponent sum of x_j in w theta^i."""
    n = p.n
    first = [0] * n
    for j, s in p.w.letters:
        first[j] += s
    return IntMatrix.from_rows([first[-i:] + first[:-i] if i else first[:] for i in range(n)])


class _Infinite:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Infinite"

    __str__ = __repr__


INFINITE = _Infinite()


def abelian_order(p: CyclicPresentationSpec, crosscheck: bool = True):
    """Order of G_n(w)^ab, or :data:`INFINITE`.

    An infinite abelianization proves G_n(w) infinite; a finite one proves
    nothing.  With ``crosscheck`` the value is compared to the circulant
    resultant |Res(f, x^n - 1)| computed independently.
    """
    snf = smith_normal_form(exponent_matrix(p))
    order = INFINITE if 0 in snf.invariants else snf.nonzero_product
    if crosscheck:
        res = abs(circulant_resultant(exponent_polynomial(p.w, p.n), p.n))
        expected = INFINITE if res == 0 else res
        if expected is not order and expected != order:
            raise OracleContradiction(
                f"Smith form gives {order} but the resultant gives {expected} for n={p.n}, w={p.w}"
            )
    return order
