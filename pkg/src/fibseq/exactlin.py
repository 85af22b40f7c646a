"""Exact integer linear algebra.

Dense arbitrary-precision integer matrices plus the four primitives the rest
of the engine is built on:

* ``snf`` — Smith normal form ``U·M·V = D`` with all four transforms
  (``U``, ``V`` and their inverses) tracked through the elimination.  The
  pivot is always the smallest nonzero entry in absolute value, ties broken
  by row index then column index, so the output is deterministic.
* ``kernel_basis`` / ``kernel_with_retraction`` — a Z-basis of the integer
  kernel, together with a retraction matrix that recovers coordinates in
  that basis (the kernel of an integer matrix is a saturated sublattice, so
  the retraction always exists).
* ``solve`` / ``solve_matrix`` — Diophantine solving; absence of an integer
  solution is a value, not an error.
* ``member_of_span`` — membership in the column lattice.

Entries are Python ints throughout; there is no magnitude bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .errors import MatrixShapeError


class IntMatrix:
    """Immutable dense matrix of arbitrary-precision integers.

    Stored row-major as a tuple of row tuples.  Zero-row or zero-column
    matrices are legal (pass ``cols`` explicitly when there are no rows).
    """

    __slots__ = ("rows", "cols", "data", "_hash")

    def __init__(self, data: Sequence[Sequence[int]], cols: Optional[int] = None):
        rows = tuple(tuple(int(x) for x in row) for row in data)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise MatrixShapeError("ragged rows in matrix data")
            if cols is not None and cols != width:
                raise MatrixShapeError(f"cols={cols} contradicts row width {width}")
            cols = width
        elif cols is None:
            cols = 0
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "data", rows)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zeros(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix([[0] * cols for _ in range(rows)], cols=cols)

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @staticmethod
    def column_vector(entries: Sequence[int]) -> "IntMatrix":
        return IntMatrix([[int(x)] for x in entries], cols=1)

    # -- basic queries ------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def entry(self, i: int, j: int) -> int:
        return self.data[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.data[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.data)

    def columns(self) -> Iterable[tuple[int, ...]]:
        for j in range(self.cols):
            yield self.column(j)

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.data]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.rows, self.cols, self.data))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        if self.rows == 0 or self.cols == 0:
            return f"IntMatrix(zeros {self.rows}x{self.cols})"
        body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
        return f"IntMatrix([{body}])"

    # -- arithmetic ----------------------------------------------------------

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise MatrixShapeError(f"cannot multiply {self.shape} by {other.shape}")
        ocols = other.cols
        odata = other.data
        out = []
        for row in self.data:
            acc = [0] * ocols
            for k, a in enumerate(row):
                if a:
                    orow = odata[k]
                    for j in range(ocols):
                        acc[j] += a * orow[j]
            out.append(acc)
        return IntMatrix(out, cols=ocols)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise MatrixShapeError(f"cannot add {self.shape} and {other.shape}")
        return IntMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)],
            cols=self.cols,
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __neg__(self) -> "IntMatrix":
        return self.scale(-1)

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix([[k * x for x in row] for row in self.data], cols=self.cols)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    def mul_vector(self, v: Sequence[int]) -> list[int]:
        if len(v) != self.cols:
            raise MatrixShapeError(f"vector length {len(v)} != cols {self.cols}")
        return [sum(a * x for a, x in zip(row, v)) for row in self.data]

    def take_columns(self, indices: Sequence[int]) -> "IntMatrix":
        return IntMatrix([[row[j] for j in indices] for row in self.data], cols=len(indices))

    def take_rows(self, indices: Sequence[int]) -> "IntMatrix":
        return IntMatrix([self.data[i] for i in indices], cols=self.cols)

    def kron(self, other: "IntMatrix") -> "IntMatrix":
        """Kronecker product; block (i, k) of the result is a_ik * other."""
        out = []
        for arow in self.data:
            for brow in other.data:
                out.append([a * b for a in arow for b in brow])
        return IntMatrix(out, cols=self.cols * other.cols)


def hstack(*mats: IntMatrix) -> IntMatrix:
    mats = tuple(m for m in mats)
    if not mats:
        raise MatrixShapeError("hstack of nothing")
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise MatrixShapeError("hstack row mismatch")
    data = [[x for m in mats for x in m.data[i]] for i in range(rows)]
    return IntMatrix(data, cols=sum(m.cols for m in mats))


def vstack(*mats: IntMatrix) -> IntMatrix:
    if not mats:
        raise MatrixShapeError("vstack of nothing")
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise MatrixShapeError("vstack column mismatch")
    data = [row for m in mats for row in m.data]
    return IntMatrix(data, cols=cols)


def block_matrix(blocks: Sequence[Sequence[IntMatrix]]) -> IntMatrix:
    """Assemble a matrix from a rectangular grid of blocks."""
    return vstack(*[hstack(*row) for row in blocks])


@dataclass(frozen=True)
class SnfDecomposition:
    """Smith normal form ``u @ m @ v == d`` with unimodular u, v.

    ``u_inv`` and ``v_inv`` are the exact integer inverses, tracked during
    elimination; downstream code uses ``v``/``v_inv`` for kernel bases and
    ``u_inv`` for column-span bases.
    """

    u: IntMatrix
    d: IntMatrix
    v: IntMatrix
    u_inv: IntMatrix
    v_inv: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        n = min(self.d.rows, self.d.cols)
        return tuple(self.d.data[i][i] for i in range(n))

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x != 0)


def _eye_lists(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


@lru_cache(maxsize=8192)
def snf(m: IntMatrix) -> SnfDecomposition:
    """Smith normal form with the pivot rule fixed for determinism.

    Pivot choice: the entry of smallest nonzero absolute value in the
    untouched submatrix, ties broken by row then column index.  Diagonal is
    normalized non-negative and satisfies the divisibility chain.
    """
    r, c = m.rows, m.cols
    a = [list(row) for row in m.data]
    u = _eye_lists(r)
    uinv = _eye_lists(r)
    v = _eye_lists(c)
    vinv = _eye_lists(c)

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]
        for row in uinv:
            row[i], row[j] = row[j], row[i]

    def row_add(i, j, k):
        # row_i += k * row_j
        ai, aj = a[i], a[j]
        for t in range(c):
            ai[t] += k * aj[t]
        ui, uj = u[i], u[j]
        for t in range(r):
            ui[t] += k * uj[t]
        for row in uinv:
            row[j] -= k * row[i]

    def row_neg(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]
        for row in uinv:
            row[i] = -row[i]

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    def col_add(j, i, k):
        # col_j += k * col_i
        for row in a:
            row[j] += k * row[i]
        for row in v:
            row[j] += k * row[i]
        vi, vj = vinv[i], vinv[j]
        for t in range(c):
            vi[t] -= k * vj[t]

    def find_pivot(t):
        best = None
        where = None
        for i in range(t, r):
            ai = a[i]
            for j in range(t, c):
                x = ai[j]
                if x and (best is None or abs(x) < best):
                    best = abs(x)
                    where = (i, j)
        return where

    t = 0
    limit = min(r, c)
    while t < limit:
        where = find_pivot(t)
        if where is None:
            break
        while True:
            pi, pj = where
            if pi != t:
                row_swap(t, pi)
            if pj != t:
                col_swap(t, pj)
            p = a[t][t]
            for i in range(t + 1, r):
                q = a[i][t] // p
                if q:
                    row_add(i, t, -q)
            for j in range(t + 1, c):
                q = a[t][j] // p
                if q:
                    col_add(j, t, -q)
            if all(a[i][t] == 0 for i in range(t + 1, r)) and all(
                a[t][j] == 0 for j in range(t + 1, c)
            ):
                p = a[t][t]
                bad = None
                for i in range(t + 1, r):
                    ai = a[i]
                    for j in range(t + 1, c):
                        if ai[j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                row_add(t, bad, 1)
            where = find_pivot(t)
        if a[t][t] < 0:
            row_neg(t)
        t += 1

    return SnfDecomposition(
        u=IntMatrix(u, cols=r),
        d=IntMatrix(a, cols=c),
        v=IntMatrix(v, cols=c),
        u_inv=IntMatrix(uinv, cols=r),
        v_inv=IntMatrix(vinv, cols=c),
    )


def rank(m: IntMatrix) -> int:
    return snf(m).rank


def is_unimodular(m: IntMatrix) -> bool:
    """True iff m is square with |det| = 1 (all invariant factors 1)."""
    if m.rows != m.cols:
        return False
    return all(x == 1 for x in snf(m).diagonal)


def kernel_with_retraction(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Basis K of {x : m x = 0} plus a retraction P with P @ K = I.

    The kernel is spanned by the trailing columns of V, so P is the matching
    rows of V^-1; P recovers kernel coordinates of any vector already known
    to lie in the kernel lattice (which is saturated, so this is exact).
    """
    dec = snf(m)
    idx = list(range(dec.rank, m.cols))
    return dec.v.take_columns(idx), dec.v_inv.take_rows(idx)


def kernel_basis(m: IntMatrix) -> IntMatrix:
    """Columns form a Z-basis of the integer kernel of m."""
    return kernel_with_retraction(m)[0]


def solve_matrix(m: IntMatrix, b: IntMatrix) -> Optional[IntMatrix]:
    """Integer solution X of m @ X = b, or None when none exists."""
    if b.rows != m.rows:
        raise MatrixShapeError(f"rhs has {b.rows} rows, matrix has {m.rows}")
    dec = snf(m)
    y = dec.u @ b
    diag = dec.diagonal
    xhat = []
    for i in range(m.cols):
        d = diag[i] if i < len(diag) else 0
        if d:
            row = []
            for j in range(b.cols):
                q, rem = divmod(y.data[i][j], d)
                if rem:
                    return None
                row.append(q)
            xhat.append(row)
        else:
            xhat.append([0] * b.cols)
    for i in range(m.rows):
        d = diag[i] if i < len(diag) else 0
        if d == 0 and any(y.data[i][j] != 0 for j in range(b.cols)):
            return None
    return dec.v @ IntMatrix(xhat, cols=b.cols)


def solve(m: IntMatrix, b: Sequence[int]) -> Optional[list[int]]:
    """Integer solution x of m x = b, or None.  Absence is a value."""
    x = solve_matrix(m, IntMatrix.column_vector(b))
    return None if x is None else [row[0] for row in x.data]


def member_of_span(g: IntMatrix, v: Sequence[int]) -> bool:
    """True iff v lies in the column lattice of g."""
    return solve(g, v) is not None


def columns_in_span(g: IntMatrix, m: IntMatrix) -> bool:
    """True iff every column of m lies in the column lattice of g."""
    return solve_matrix(g, m) is not None


def column_span_basis(m: IntMatrix) -> IntMatrix:
    """A Z-basis of the column lattice of m (deterministic via snf)."""
    dec = snf(m)
    diag = dec.diagonal
    cols = []
    for i in range(dec.rank):
        cols.append([diag[i] * dec.u_inv.data[k][i] for k in range(m.rows)])
    return IntMatrix([[col[k] for col in cols] for k in range(m.rows)], cols=len(cols))
