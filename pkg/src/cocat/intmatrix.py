"""Exact integer matrices and their normal forms.

Everything here runs on Python's arbitrary-precision integers; the
normal-form kernels must never be fed fixed-width arithmetic because
intermediate entries can grow far beyond the inputs.

Conventions:

* ``hnf`` is column-style: only column operations are performed, so
  ``M @ U = H`` with ``U`` unimodular.  Pivots walk down and to the
  right, entries above and to the right of a pivot are zero, entries
  to its left are reduced into ``[0, pivot)``.  Column lattices (and
  hence membership tests) are therefore triangular solves.
* ``snf`` returns ``(D, U, V)`` with ``D = U @ M @ V`` diagonal,
  non-negative, each entry dividing the next.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    data: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimensions")
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ValueError("ragged or mismatched matrix data")

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        rows = [tuple(int(x) for x in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def from_cols(cls, cols: Sequence[Sequence[int]], rows: Optional[int] = None) -> "IntMatrix":
        cols = [tuple(int(x) for x in c) for c in cols]
        if rows is None:
            rows = len(cols[0]) if cols else 0
        return cls(rows, len(cols),
                   tuple(tuple(c[i] for c in cols) for i in range(rows)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    # -- views ----------------------------------------------------------

    def row(self, i: int) -> tuple[int, ...]:
        return self.data[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.col(j) for j in range(self.cols)]

    def select_cols(self, idx: Iterable[int]) -> "IntMatrix":
        idx = list(idx)
        return IntMatrix(self.rows, len(idx),
                         tuple(tuple(r[j] for j in idx) for r in self.data))

    def select_rows(self, idx: Iterable[int]) -> "IntMatrix":
        idx = list(idx)
        return IntMatrix(len(idx), self.cols, tuple(self.data[i] for i in idx))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(tuple(self.data[i][j] for i in range(self.rows))
                               for j in range(self.cols)))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    # -- arithmetic -------------------------------------------------------

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        ot = other.transpose().data
        return IntMatrix(self.rows, other.cols,
                         tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in ot)
                               for row in self.data))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols,
                         tuple(tuple(a + b for a, b in zip(r1, r2))
                               for r1, r2 in zip(self.data, other.data)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols,
                         tuple(tuple(-x for x in r) for r in self.data))

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols,
                         tuple(tuple(c * x for x in r) for r in self.data))

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.data)


def hstack(*ms: IntMatrix) -> IntMatrix:
    if not ms:
        raise ValueError("need at least one matrix")
    rows = ms[0].rows
    if any(m.rows != rows for m in ms):
        raise ValueError("row count mismatch")
    return IntMatrix(rows, sum(m.cols for m in ms),
                     tuple(tuple(x for m in ms for x in m.data[i]) for i in range(rows)))


def vstack(*ms: IntMatrix) -> IntMatrix:
    if not ms:
        raise ValueError("need at least one matrix")
    cols = ms[0].cols
    if any(m.cols != cols for m in ms):
        raise ValueError("column count mismatch")
    return IntMatrix(sum(m.rows for m in ms), cols,
                     tuple(r for m in ms for r in m.data))


def block_diag(*ms: IntMatrix) -> IntMatrix:
    rows = sum(m.rows for m in ms)
    cols = sum(m.cols for m in ms)
    out = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for m in ms:
        for i in range(m.rows):
            out[r0 + i][c0:c0 + m.cols] = list(m.data[i])
        r0 += m.rows
        c0 += m.cols
    return IntMatrix.from_rows(out, cols)


# ---------------------------------------------------------------------------
# Elementary operations on mutable list-of-list workspaces


def _col_addmul(ws, dst: int, src: int, c: int) -> None:
    for m in ws:
        for row in m:
            row[dst] += c * row[src]


def _col_swap(ws, a: int, b: int) -> None:
    for m in ws:
        for row in m:
            row[a], row[b] = row[b], row[a]


def _col_negate(ws, j: int) -> None:
    for m in ws:
        for row in m:
            row[j] = -row[j]


def _row_addmul(ws, dst: int, src: int, c: int) -> None:
    for m in ws:
        row_s = m[src]
        row_d = m[dst]
        for j in range(len(row_d)):
            row_d[j] += c * row_s[j]


def _row_swap(ws, a: int, b: int) -> None:
    for m in ws:
        m[a], m[b] = m[b], m[a]


def _row_negate(ws, i: int) -> None:
    for m in ws:
        m[i] = [-x for x in m[i]]


# ---------------------------------------------------------------------------
# Hermite normal form


def _hnf(m: IntMatrix):
    h = [list(r) for r in m.data]
    u = [[1 if i == j else 0 for j in range(m.cols)] for i in range(m.cols)]
    ws = [h, u]
    pivot_col = 0
    pivots: list[tuple[int, int]] = []
    for row in range(m.rows):
        if pivot_col >= m.cols:
            break
        while True:
            nz = [j for j in range(pivot_col, m.cols) if h[row][j] != 0]
            if len(nz) <= 1:
                break
            jmin = min(nz, key=lambda j: abs(h[row][j]))
            for j in nz:
                if j != jmin:
                    q = h[row][j] // h[row][jmin]
                    if q:
                        _col_addmul(ws, j, jmin, -q)
        nz = [j for j in range(pivot_col, m.cols) if h[row][j] != 0]
        if not nz:
            continue
        if nz[0] != pivot_col:
            _col_swap(ws, nz[0], pivot_col)
        if h[row][pivot_col] < 0:
            _col_negate(ws, pivot_col)
        p = h[row][pivot_col]
        for j in range(pivot_col):
            q = h[row][j] // p
            if q:
                _col_addmul(ws, j, pivot_col, -q)
        pivots.append((row, pivot_col))
        pivot_col += 1
    return (IntMatrix.from_rows(h, m.cols),
            IntMatrix.from_rows(u, m.cols),
            pivots)


def hnf(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Column-style Hermite normal form: ``m @ U = H``, U unimodular."""
    h, u, _ = _hnf(m)
    return h, u


def rank(m: IntMatrix) -> int:
    return len(_hnf(m)[2])


def kernel_basis(m: IntMatrix) -> IntMatrix:
    """Columns form a basis of the integer kernel of m."""
    h, u, _ = _hnf(m)
    zero_cols = [j for j in range(m.cols) if all(h.data[i][j] == 0 for i in range(m.rows))]
    return u.select_cols(zero_cols)


def lattice_contains(m: IntMatrix, vec: Sequence[int]) -> bool:
    """Is the vector in the column lattice of m?  Triangular solve
    against the Hermite form."""
    h, _, pivots = _hnf(m)
    return _hnf_contains(h, pivots, vec)


def _hnf_contains(h: IntMatrix, pivots, vec: Sequence[int]) -> bool:
    if len(vec) != h.rows:
        raise ValueError("vector length mismatch")
    v = list(vec)
    for prow, pcol in pivots:
        p = h.data[prow][pcol]
        if v[prow] % p != 0:
            return False
        c = v[prow] // p
        if c:
            for i in range(prow, h.rows):
                v[i] -= c * h.data[i][pcol]
    return all(x == 0 for x in v)


class Lattice:
    """A column lattice with its Hermite form cached for fast
    membership queries."""

    def __init__(self, m: IntMatrix):
        self.matrix = m
        self._h, self._u, self._pivots = _hnf(m)

    def __contains__(self, vec: Sequence[int]) -> bool:
        return _hnf_contains(self._h, self._pivots, vec)

    def contains_all_columns(self, m: IntMatrix) -> bool:
        return all(m.col(j) in self for j in range(m.cols))


# ---------------------------------------------------------------------------
# Smith normal form


def _clear_position(a, u, v, t: int) -> None:
    rows, cols = len(a), len(a[0]) if a else 0
    rws = [a, u]
    cws = [a, v]
    while True:
        # choose the smallest nonzero entry of the remaining block as pivot
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            return
        if best[0] != t:
            _row_swap(rws, best[0], t)
        if best[1] != t:
            _col_swap(cws, best[1], t)
        dirty = False
        for i in range(t + 1, rows):
            if a[i][t] != 0:
                q = a[i][t] // a[t][t]
                if q:
                    _row_addmul(rws, i, t, -q)
                if a[i][t] != 0:
                    dirty = True
        for j in range(t + 1, cols):
            if a[t][j] != 0:
                q = a[t][j] // a[t][t]
                if q:
                    _col_addmul(cws, j, t, -q)
                if a[t][j] != 0:
                    dirty = True
        if not dirty:
            return


def _fix_divisibility(a, u, v, k: int) -> None:
    # merge diag entries k, k+1 into (gcd, lcm) with a self-contained
    # 2x2 reduction; nothing outside rows/cols {k, k+1} is touched
    rws = [a, u]
    cws = [a, v]
    _col_addmul(cws, k, k + 1, 1)
    while a[k + 1][k] != 0 or a[k][k + 1] != 0:
        if a[k + 1][k] != 0:
            q = a[k + 1][k] // a[k][k]
            if q:
                _row_addmul(rws, k + 1, k, -q)
            if a[k + 1][k] != 0:
                _row_swap(rws, k, k + 1)
        if a[k][k + 1] != 0:
            q = a[k][k + 1] // a[k][k]
            if q:
                _col_addmul(cws, k + 1, k, -q)
            if a[k][k + 1] != 0:
                _col_swap(cws, k, k + 1)


def snf(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form: ``D = U @ m @ V`` with the divisibility chain."""
    a = [list(r) for r in m.data]
    u = [[1 if i == j else 0 for j in range(m.rows)] for i in range(m.rows)]
    v = [[1 if i == j else 0 for j in range(m.cols)] for i in range(m.cols)]
    n = min(m.rows, m.cols)
    t = 0
    while t < n:
        if all(a[i][j] == 0 for i in range(t, m.rows) for j in range(t, m.cols)):
            break
        _clear_position(a, u, v, t)
        t += 1
    r = t
    for k in range(r):
        if a[k][k] < 0:
            _row_negate([a, u], k)
    changed = True
    while changed:
        changed = False
        for k in range(r - 1):
            if a[k + 1][k + 1] % a[k][k] != 0:
                _fix_divisibility(a, u, v, k)
                changed = True
        for k in range(r):
            if a[k][k] < 0:
                _row_negate([a, u], k)
    return (IntMatrix.from_rows(a, m.cols),
            IntMatrix.from_rows(u, m.rows),
            IntMatrix.from_rows(v, m.cols))


def diagonal(m: IntMatrix) -> tuple[int, ...]:
    return tuple(m.data[k][k] for k in range(min(m.rows, m.cols)))


def invariant_factors(m: IntMatrix) -> tuple[int, ...]:
    d, _, _ = snf(m)
    return tuple(x for x in diagonal(d) if x != 0)


def cokernel(m: IntMatrix) -> tuple[int, ...]:
    """Nontrivial invariant factors of coker(m) = Z^rows / col-lattice;
    a 0 entry denotes a free Z summand."""
    d, _, _ = snf(m)
    diag = [x for x in diagonal(d) if x != 0]
    finite = tuple(x for x in diag if x != 1)
    return finite + (0,) * (m.rows - len(diag))


def solve(m: IntMatrix, b: Sequence[int]) -> Optional[tuple[int, ...]]:
    """An integer solution x of ``m @ x = b``, or None when there is
    none (the Smith form certifies unsolvability)."""
    if len(b) != m.rows:
        raise ValueError("vector length mismatch")
    d, u, v = snf(m)
    c = u.apply(b)
    y = [0] * m.cols
    diag = diagonal(d)
    for k in range(min(m.rows, m.cols)):
        if diag[k] != 0:
            if c[k] % diag[k] != 0:
                return None
            y[k] = c[k] // diag[k]
        elif c[k] != 0:
            return None
    for k in range(min(m.rows, m.cols), m.rows):
        if c[k] != 0:
            return None
    return v.apply(y)


def solve_matrix(m: IntMatrix, b: IntMatrix) -> Optional[IntMatrix]:
    """Columnwise integer solution X of ``m @ X = b``."""
    cols = []
    for j in range(b.cols):
        x = solve(m, b.col(j))
        if x is None:
            return None
        cols.append(x)
    return IntMatrix.from_cols(cols, rows=m.cols)


# ---------------------------------------------------------------------------
# Determinants and unimodular inverses


def det(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = [list(r) for r in m.data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def is_unimodular(m: IntMatrix) -> bool:
    return m.rows == m.cols and abs(det(m)) == 1


def invert_unimodular(m: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular matrix (its Hermite form is the identity,
    so the accumulated column transform is the inverse)."""
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    h, u = hnf(m)
    if h != IntMatrix.identity(m.rows):
        raise ValueError("matrix is not unimodular")
    return u
