"""Small exact-rational matrix helpers (row-major tuples of Fractions)."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

Matrix = Tuple[Tuple[Fraction, ...], ...]


def mat(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def eye(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def from_columns(cols: Sequence[Sequence]) -> Matrix:
    n = len(cols[0])
    return tuple(tuple(Fraction(c[i]) for c in cols) for i in range(n))


def columns(m: Matrix) -> List[Tuple[Fraction, ...]]:
    return [tuple(row[j] for row in m) for j in range(len(m[0]))]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    m = len(b[0])
    out = []
    for row in a:
        acc = [Fraction(0)] * m
        for x, brow in zip(row, b):
            if x:
                for j, y in enumerate(brow):
                    if y:
                        acc[j] += x * y
        out.append(tuple(acc))
    return tuple(out)


def diag(entries: Sequence) -> Matrix:
    n = len(entries)
    return tuple(
        tuple(Fraction(entries[i]) if i == j else Fraction(0) for j in range(n)) for i in range(n)
    )


def rank(m: Sequence[Sequence]) -> int:
    rows = [list(map(Fraction, r)) for r in m]
    if not rows:
        return 0
    r = 0
    ncols = len(rows[0])
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][c]:
                f = rows[i][c] / prow[c]
                rows[i] = [x - f * y if y else x for x, y in zip(rows[i], prow)]
        r += 1
        if r == len(rows):
            break
    return r


def canonical_columns(m: Matrix) -> Matrix:
    """Canonical representative of ``m`` modulo right multiplication by invertible
    upper-triangular matrices (``m`` of full column rank).

    Column ``j`` is reduced against earlier columns so that it vanishes on their
    pivot rows, then scaled so its lowest nonzero entry (its pivot) is 1.
    """
    cols = [list(c) for c in columns(m)]
    done: List[Tuple[int, List[Fraction]]] = []
    for v in cols:
        for p, c in sorted(done, key=lambda t: -t[0]):
            f = v[p]
            if f:
                v = [x - f * y for x, y in zip(v, c)]
        piv = max((i for i, x in enumerate(v) if x != 0), default=None)
        if piv is None:
            raise ValueError("matrix does not have full column rank")
        s = v[piv]
        v = [x / s for x in v]
        done.append((piv, v))
    return from_columns([c for _, c in done])


def pivot_rows(canon: Matrix) -> List[int]:
    """0-based pivot row of each column of a canonical matrix."""
    return [max(i for i, x in enumerate(c) if x != 0) for c in columns(canon)]


def format_matrix(m: Matrix) -> str:
    cells = [[str(x) for x in row] for row in m]
    width = max(len(c) for row in cells for c in row)
    return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)


def to_json(m: Matrix) -> List[List[str]]:
    return [[str(x) for x in row] for row in m]
