"""Dense exact linear algebra over a :class:`~invgalois.scalars.Field`.

Matrices are lists of rows. Everything is Gaussian elimination; the sizes
that show up here are a few hundred rows at most.
"""

from __future__ import annotations

from .scalars import QQ, Field


def _copy(rows, field):
    return [[field(x) for x in row] for row in rows]


def rref(rows, field: Field = QQ):
    """Reduced row echelon form. Returns ``(matrix, pivot_columns)``."""
    m = _copy(rows, field)
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.one / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows, field: Field = QQ) -> int:
    return len(rref(rows, field)[1])


def nullspace(rows, ncols: int, field: Field = QQ):
    """Basis of ``{x : rows @ x = 0}``."""
    if not rows:
        return [[field.one if i == j else field.zero for i in range(ncols)] for j in range(ncols)]
    m, pivots = rref(rows, field)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][f]
        basis.append(v)
    return basis


def solve(rows, rhs, field: Field = QQ):
    """One solution of ``rows @ x = rhs`` (free variables set to zero), or None."""
    if not rows:
        return []
    ncols = len(rows[0])
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    m, pivots = rref(aug, field)
    if ncols in pivots:
        return None
    x = [field.zero] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = m[r][ncols]
    return x


def matvec(rows, x):
    return [sum((a * b for a, b in zip(row, x)), 0 * x[0] if x else 0) for row in rows]


def transpose(rows):
    return [list(col) for col in zip(*rows)]


class RowSpace:
    """Incrementally grown span of vectors, kept in echelon form."""

    def __init__(self, ncols: int, field: Field = QQ):
        self.ncols = ncols
        self.field = field
        self._rows: list[list] = []
        self._pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self._rows)

    def _reduce(self, v):
        v = [self.field(x) for x in v]
        for row, pc in zip(self._rows, self._pivots):
            if v[pc] != 0:
                f = v[pc]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def add(self, v) -> bool:
        """Add ``v``; returns True if the span grew."""
        v = self._reduce(v)
        pc = next((i for i, x in enumerate(v) if x != 0), None)
        if pc is None:
            return False
        inv = self.field.one / v[pc]
        v = [x * inv for x in v]
        for i, row in enumerate(self._rows):
            if row[pc] != 0:
                f = row[pc]
                self._rows[i] = [a - f * b for a, b in zip(row, v)]
        self._rows.append(v)
        self._pivots.append(pc)
        return True

    def contains(self, v) -> bool:
        return all(x == 0 for x in self._reduce(v))

    def basis(self):
        return [list(r) for r in self._rows]
