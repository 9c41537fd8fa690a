"""Exact integer matrices, Smith normal form and rational elimination.

All arithmetic uses Python integers, so entry growth never overflows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


class IntMatrix:
    """Dense integer matrix stored as a list of rows."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Sequence[Sequence[int]], rows: int | None = None, cols: int | None = None):
        self.data = [[int(x) for x in row] for row in data]
        self.rows = len(self.data) if rows is None else rows
        if cols is None:
            cols = len(self.data[0]) if self.data else 0
        self.cols = cols
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ValueError("entry storage does not match the declared shape")

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[0] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def from_columns(cls, columns: Iterable[dict[int, int]], rows: int):
        columns = list(columns)
        m = cls.zeros(rows, len(columns))
        for j, col in enumerate(columns):
            for i, v in col.items():
                m.data[i][j] += v
        return m

    def columns(self) -> list[dict[int, int]]:
        return [{i: self.data[i][j] for i in range(self.rows) if self.data[i][j]}
                for j in range(self.cols)]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = [[other.data[k][j] for k in range(other.rows)] for j in range(other.cols)]
        out = [[sum(a * b for a, b in zip(row, col)) for col in ocols] for row in self.data]
        return IntMatrix(out, self.rows, other.cols)

    def transpose(self) -> IntMatrix:
        return IntMatrix([[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
                         self.cols, self.rows)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.data)

    def diagonal(self) -> list[int]:
        return [self.data[i][i] for i in range(min(self.rows, self.cols))]

    def tolist(self):
        return [row[:] for row in self.data]

    def __repr__(self):
        return f"IntMatrix({self.data!r})"


def determinant(m: IntMatrix) -> int:
    """Bareiss fraction-free determinant."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    a = m.tolist()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


@dataclass
class SnfResult:
    D: IntMatrix
    U: IntMatrix | None
    V: IntMatrix | None

    def invariant_factors(self) -> list[int]:
        return [d for d in self.D.diagonal() if d]


def _smallest(D, cells):
    best = None
    for i, j in cells:
        v = D[i][j]
        if v and (best is None or abs(v) < best[0]):
            best = (abs(v), i, j)
    return best


def smith_normal_form(A: IntMatrix, transforms: bool = True) -> SnfResult:
    """Unimodular U, V with U @ A @ V == D, D diagonal with d1 | d2 | ...

    Pivot: smallest non-zero |entry| of the remaining block, ties by
    row-major position. With ``transforms=False`` only D is computed.
    """
    m, n = A.rows, A.cols
    D = A.tolist()
    U = [[int(i == j) for j in range(m)] for i in range(m)] if transforms else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if transforms else None

    def swap_rows(i, j):
        if i != j:
            D[i], D[j] = D[j], D[i]
            if U is not None:
                U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for row in D:
                row[i], row[j] = row[j], row[i]
            if V is not None:
                for row in V:
                    row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row dst += q * row src
        rd, rs = D[dst], D[src]
        for k in range(n):
            if rs[k]:
                rd[k] += q * rs[k]
        if U is not None:
            ud, us = U[dst], U[src]
            for k in range(m):
                if us[k]:
                    ud[k] += q * us[k]

    def add_col(dst, src, q):
        for row in D:
            if row[src]:
                row[dst] += q * row[src]
        if V is not None:
            for row in V:
                if row[src]:
                    row[dst] += q * row[src]

    for t in range(min(m, n)):
        best = _smallest(D, ((i, j) for i in range(t, m) for j in range(t, n)))
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
            rest = [(i, t) for i in range(t + 1, m)] + [(t, j) for j in range(t + 1, n)]
            best = _smallest(D, sorted(rest))
            if best is not None:
                # a remainder survived; it is smaller than the pivot
                _, i, j = best
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
    return SnfResult(
        IntMatrix(D, m, n),
        IntMatrix(U, m, m) if U is not None else None,
        IntMatrix(V, n, n) if V is not None else None,
    )


def invariant_factors(columns: Sequence[dict[int, int]], nrows: int) -> list[int]:
    """Non-zero invariant factors of a sparse integer matrix, ascending.

    Unit entries are eliminated first (each contributes a factor 1 and
    removes one row and one column); the leftover block goes through the
    dense Smith normal form.
    """
    cols = [dict(c) for c in columns]
    rows: dict[int, set[int]] = {}
    for j, c in enumerate(cols):
        for i in c:
            rows.setdefault(i, set()).add(j)
    active = [j for j, c in enumerate(cols) if c]
    units = 0
    changed = True
    while changed:
        changed = False
        survivors = []
        for j in active:
            c = cols[j]
            if not c:
                continue
            best = None
            for i, v in c.items():
                if v == 1 or v == -1:
                    key = (len(rows[i]), i)
                    if best is None or key < best:
                        best = key
            if best is None:
                survivors.append(j)
                continue
            i = best[1]
            piv = c[i]
            for j2 in sorted(rows[i]):
                if j2 == j:
                    continue
                c2 = cols[j2]
                f = c2[i] * piv
                for r, v in c.items():
                    nv = c2.get(r, 0) - f * v
                    if nv:
                        if r not in c2:
                            rows[r].add(j2)
                        c2[r] = nv
                    elif r in c2:
                        del c2[r]
                        rows[r].discard(j2)
            for r in c:
                rows[r].discard(j)
            cols[j] = {}
            units += 1
            changed = True
        active = [j for j in survivors if cols[j]]
    factors = [1] * units
    if active:
        used = sorted({i for j in active for i in cols[j]})
        pos = {r: k for k, r in enumerate(used)}
        block = IntMatrix.zeros(len(used), len(active))
        for k, j in enumerate(active):
            for i, v in cols[j].items():
                block.data[pos[i]][k] = v
        factors += smith_normal_form(block, transforms=False).invariant_factors()
    return sorted(factors)


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {k: v // g for k, v in row.items()}
    return row


class RationalEchelon:
    """Incremental fraction-free row echelon form over the rationals.

    Rows are sparse ``{column: int}`` dicts; each stored row is keyed by
    its leading (smallest) column. Rows are kept primitive to bound growth.
    """

    def __init__(self):
        self.pivots: dict[int, dict[int, int]] = {}

    def reduce(self, row: dict[int, int], limit: int | None = None) -> dict[int, int]:
        row = {k: v for k, v in row.items() if v}
        while row:
            c = min(row)
            if limit is not None and c >= limit:
                break
            p = self.pivots.get(c)
            if p is None:
                break
            a, b = p[c], row[c]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {k: a * v for k, v in row.items()}
            for k, v in p.items():
                nv = new.get(k, 0) - b * v
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            row = _primitive(new)
        return row

    def add(self, row: dict[int, int]) -> bool:
        """Insert a row; True when it increased the rank."""
        r = self.reduce(row)
        if r:
            self.pivots[min(r)] = r
            return True
        return False

    @property
    def rank(self) -> int:
        return len(self.pivots)


def rank_q(columns: Iterable[dict[int, int]]) -> int:
    ech = RationalEchelon()
    for c in columns:
        ech.add(c)
    return ech.rank


def kernel_q(columns: Sequence[dict[int, int]], nrows: int) -> list[dict[int, int]]:
    """Integer basis of the rational null space of a sparse matrix.

    Row-reduces [A^T | I]; rows whose A-part vanishes give kernel vectors.
    """
    ech = RationalEchelon()
    basis = []
    for j, col in enumerate(columns):
        row = dict(col)
        row[nrows + j] = 1
        r = ech.reduce(row, limit=nrows)
        if r and min(r) < nrows:
            ech.pivots[min(r)] = r
        else:
            basis.append({k - nrows: v for k, v in r.items()})
    return basis


def nonnegative_solution(A: Sequence[Sequence[int]], b: Sequence[int]) -> list[Fraction] | None:
    """Exact phase-1 simplex: some x >= 0 with A x = b, or None.

    Bland's rule keeps it cycle-free; meant for the handful of variables a
    pairwise cone-intersection test needs.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    rows = []
    for row, rhs in zip(A, b):
        s = -1 if rhs < 0 else 1
        rows.append([Fraction(s * x) for x in row] + [Fraction(int(i == len(rows))) for i in range(m)]
                    + [Fraction(s * rhs)])
    basis = [n + i for i in range(m)]
    width = n + m
    # objective: minimise the sum of artificials, kept as reduced costs
    cost = [Fraction(0)] * (width + 1)
    for r in rows:
        for j in range(width + 1):
            if j < n or j == width:
                cost[j] -= r[j]
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        ratios = [(rows[i][width] / rows[i][enter], basis[i], i)
                  for i in range(m) if rows[i][enter] > 0]
        if not ratios:
            break
        _, _, leave = min(ratios)
        p = rows[leave][enter]
        rows[leave] = [v / p for v in rows[leave]]
        for i in range(m):
            if i != leave and rows[i][enter]:
                f = rows[i][enter]
                rows[i] = [u - f * w for u, w in zip(rows[i], rows[leave])]
        f = cost[enter]
        cost = [u - f * w for u, w in zip(cost, rows[leave])]
        basis[leave] = enter
    if cost[width] != 0:
        return None
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = rows[i][width]
    return x
