"""Dense exact matrices over a ring.

Matrices are immutable values. Entries are stored row-major as a tuple of
row tuples; every operation returns a new matrix.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .rings import Ring

ROW = "row"
COL = "col"


class Matrix:
    __slots__ = ("ring", "nrows", "ncols", "_rows")

    def __init__(self, ring: Ring, m: int, n: int, entries: Iterable = ()):
        entries = tuple(entries)
        if m < 0 or n < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(entries) != m * n:
            raise ValueError(f"expected {m * n} entries for a {m}x{n} matrix, "
                             f"got {len(entries)}")
        self.ring = ring
        self.nrows = m
        self.ncols = n
        self._rows = tuple(entries[i * n:(i + 1) * n] for i in range(m))

    @classmethod
    def from_rows(cls, ring, rows: Sequence[Sequence], ncols=None):
        rows = [tuple(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.nrows = len(rows)
        obj.ncols = ncols
        obj._rows = tuple(rows)
        return obj

    @classmethod
    def from_ints(cls, ring, rows, ncols=None):
        return cls.from_rows(ring, [[ring.from_int(x) for x in r] for r in rows], ncols)

    # -- access ---------------------------------------------------------------
    @property
    def shape(self):
        return self.nrows, self.ncols

    @property
    def entries(self):
        return tuple(x for r in self._rows for x in r)

    def __getitem__(self, ij):
        i, j = ij
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(f"index {ij} out of range for {self.nrows}x{self.ncols}")
        return self._rows[i][j]

    def row(self, i):
        return self._rows[i]

    def col(self, j):
        return tuple(r[j] for r in self._rows)

    def rows(self):
        return self._rows

    def tolist(self):
        return [list(r) for r in self._rows]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, self._rows))

    def __repr__(self):
        fmt = self.ring.format
        body = "; ".join(" ".join(fmt(x) for x in r) for r in self._rows)
        return f"Matrix({self.ring.name}, {self.nrows}x{self.ncols}, [{body}])"

    def is_zero(self):
        z = self.ring.is_zero
        return all(z(x) for r in self._rows for x in r)

    def is_square(self):
        return self.nrows == self.ncols

    # -- arithmetic -------------------------------------------------------------
    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        self._check_same_shape(other)
        add = self.ring.add
        return Matrix.from_rows(self.ring, [
            [add(x, y) for x, y in zip(r, s)] for r, s in zip(self._rows, other._rows)
        ], self.ncols)

    def __sub__(self, other):
        self._check_same_shape(other)
        sub = self.ring.sub
        return Matrix.from_rows(self.ring, [
            [sub(x, y) for x, y in zip(r, s)] for r, s in zip(self._rows, other._rows)
        ], self.ncols)

    def __neg__(self):
        neg = self.ring.neg
        return Matrix.from_rows(self.ring, [[neg(x) for x in r] for r in self._rows],
                                self.ncols)

    def scale(self, c):
        mul = self.ring.mul
        return Matrix.from_rows(self.ring, [[mul(c, x) for x in r] for r in self._rows],
                                self.ncols)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        ring = self.ring
        mul, add, zero = ring.mul, ring.add, ring.zero
        cols = list(zip(*other._rows)) if other.nrows else [()] * other.ncols
        out = []
        for r in self._rows:
            row = []
            for c in cols:
                acc = zero
                for x, y in zip(r, c):
                    if x != zero and y != zero:
                        acc = add(acc, mul(x, y))
                row.append(acc)
            out.append(row)
        return Matrix.from_rows(ring, out, other.ncols)

    def transpose(self):
        if not self.nrows:
            return Matrix(self.ring, self.ncols, 0)
        return Matrix.from_rows(self.ring, list(zip(*self._rows)), self.nrows)

    T = property(transpose)

    def map(self, f):
        return Matrix.from_rows(self.ring, [[f(x) for x in r] for r in self._rows],
                                self.ncols)

    # -- blocks -------------------------------------------------------------------
    def slice(self, r0, r1, c0, c1):
        return Matrix.from_rows(self.ring, [r[c0:c1] for r in self._rows[r0:r1]],
                                max(0, c1 - c0))

    def ulsub(self, i=1, j=1):
        return self.slice(0, i, 0, j)

    def ursub(self, i=1, j=1):
        return self.slice(0, i, j, self.ncols)

    def dlsub(self, i=1, j=1):
        return self.slice(i, self.nrows, 0, j)

    def drsub(self, i=1, j=1):
        return self.slice(i, self.nrows, j, self.ncols)

    def usub(self, i=1):
        return self.slice(0, i, 0, self.ncols)

    def dsub(self, i=1):
        return self.slice(i, self.nrows, 0, self.ncols)

    def lsub(self, j=1):
        return self.slice(0, self.nrows, 0, j)

    def rsub(self, j=1):
        return self.slice(0, self.nrows, j, self.ncols)

    def xrow(self, i, j):
        return apply_elementary(self, Swap(i, j), ROW)

    def xcol(self, i, j):
        return apply_elementary(self, Swap(i, j), COL)


# -- constructors -----------------------------------------------------------------

def zeros(ring, m, n):
    return Matrix(ring, m, n, [ring.zero] * (m * n))


def identity(ring, n):
    z, o = ring.zero, ring.one
    return Matrix.from_rows(ring, [[o if i == j else z for j in range(n)]
                                   for i in range(n)], n)


def const_mx(ring, m, n, c):
    return Matrix(ring, m, n, [c] * (m * n))


def diag_mx_seq(ring, m, n, s):
    """m x n matrix with ``s[i]`` at (i, i); missing entries are zero."""
    s = list(s)
    z = ring.zero
    return Matrix.from_rows(ring, [
        [s[i] if i == j and i < len(s) else z for j in range(n)] for i in range(m)
    ], n)


def col_mx(a: Matrix, b: Matrix):
    """Stack ``a`` on top of ``b``."""
    if a.ncols != b.ncols:
        raise ValueError("col_mx: column counts differ")
    return Matrix.from_rows(a.ring, a.rows() + b.rows(), a.ncols)


def row_mx(a: Matrix, b: Matrix):
    """Place ``a`` to the left of ``b``."""
    if a.nrows != b.nrows:
        raise ValueError("row_mx: row counts differ")
    return Matrix.from_rows(a.ring, [r + s for r, s in zip(a.rows(), b.rows())],
                            a.ncols + b.ncols)


def block_mx(a, b, c, d):
    return col_mx(row_mx(a, b), row_mx(c, d))


def lift0_mx(m: Matrix):
    """``block_mx(1, 0, 0, m)``."""
    ring = m.ring
    return block_mx(identity(ring, 1), zeros(ring, 1, m.ncols),
                    zeros(ring, m.nrows, 1), m)


# -- elementary operations ----------------------------------------------------------

@dataclass(frozen=True)
class Swap:
    i: int
    j: int


@dataclass(frozen=True)
class Scale:
    """Multiply line ``i`` by the unit ``u``."""
    i: int
    u: object


@dataclass(frozen=True)
class Axpy:
    """Line ``i`` += ``c`` * line ``j``."""
    i: int
    j: int
    c: object


@dataclass(frozen=True)
class Combine:
    """Line ``i`` <- a*line_i + b*line_j and line ``j`` <- c*line_i + d*line_j."""
    i: int
    j: int
    a: object
    b: object
    c: object
    d: object


def _check_line(k, size, what):
    if not 0 <= k < size:
        raise IndexError(f"{what} index {k} out of range (size {size})")


def _apply_rows(ring, rows, op):
    """Apply ``op`` to a list of row tuples, in place."""
    mul, add = ring.mul, ring.add
    if isinstance(op, Swap):
        rows[op.i], rows[op.j] = rows[op.j], rows[op.i]
    elif isinstance(op, Scale):
        if not ring.is_unit(op.u):
            raise ValueError(f"scale factor {ring.format(op.u)} is not a unit")
        rows[op.i] = tuple(mul(op.u, x) for x in rows[op.i])
    elif isinstance(op, Axpy):
        if op.i == op.j:
            raise ValueError("axpy needs two distinct lines")
        c = op.c
        rows[op.i] = tuple(add(x, mul(c, y)) for x, y in zip(rows[op.i], rows[op.j]))
    elif isinstance(op, Combine):
        if op.i == op.j:
            raise ValueError("combine needs two distinct lines")
        det = ring.sub(mul(op.a, op.d), mul(op.b, op.c))
        if not ring.is_unit(det):
            raise ValueError("combine coefficients do not form a unimodular 2x2 matrix")
        ri, rj = rows[op.i], rows[op.j]
        rows[op.i] = tuple(add(mul(op.a, x), mul(op.b, y)) for x, y in zip(ri, rj))
        rows[op.j] = tuple(add(mul(op.c, x), mul(op.d, y)) for x, y in zip(ri, rj))
    else:
        raise TypeError(f"unknown elementary operation {op!r}")


def _op_indices(op):
    if isinstance(op, Scale):
        return (op.i,)
    return (op.i, op.j)


def apply_elementary(m: Matrix, op, side=ROW) -> Matrix:
    """Apply an elementary operation to the rows (left) or columns (right).

    On rows this equals ``E @ m`` with ``E = apply_elementary(I, op, ROW)``; on
    columns it equals ``m @ E.T``.
    """
    if side == ROW:
        for k in _op_indices(op):
            _check_line(k, m.nrows, "row")
        rows = list(m.rows())
        _apply_rows(m.ring, rows, op)
        return Matrix.from_rows(m.ring, rows, m.ncols)
    if side == COL:
        for k in _op_indices(op):
            _check_line(k, m.ncols, "column")
        cols = [tuple(c) for c in zip(*m.rows())] if m.nrows else [()] * m.ncols
        _apply_rows(m.ring, cols, op)
        if not m.nrows:
            return m
        return Matrix.from_rows(m.ring, [list(r) for r in zip(*cols)], m.ncols)
    raise ValueError(f"side must be {ROW!r} or {COL!r}")


def elementary_matrix(ring, n, op, side=ROW):
    return apply_elementary(identity(ring, n), op, side)


# -- submatrices, minors, determinants ------------------------------------------------

@dataclass(frozen=True)
class IndexMap:
    """A map {0..p-1} -> {0..target-1} given by its list of images."""

    indices: tuple
    target: int

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(self.indices))
        for k in self.indices:
            if not 0 <= k < self.target:
                raise IndexError(f"index {k} out of range for target size {self.target}")

    @property
    def size(self):
        return len(self.indices)

    @property
    def strict(self):
        return all(a < b for a, b in zip(self.indices, self.indices[1:]))

    @property
    def injective(self):
        return len(set(self.indices)) == len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __len__(self):
        return len(self.indices)

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)), n)


def strict_maps(k, l):
    """All strictly increasing maps {0..k-1} -> {0..l-1}, lexicographically."""
    if k > l:
        return []
    return [IndexMap(c, l) for c in itertools.combinations(range(l), k)]


def submatrix(f: IndexMap, g: IndexMap, m: Matrix) -> Matrix:
    if f.target != m.nrows or g.target != m.ncols:
        raise ValueError("index maps do not match the matrix dimensions")
    rows = m.rows()
    return Matrix.from_rows(m.ring, [[rows[i][j] for j in g.indices] for i in f.indices],
                            g.size)


def det_cofactor(m: Matrix):
    """Determinant by Laplace expansion along the first row."""
    if not m.is_square():
        raise ValueError("determinant of a non-square matrix")
    return _laplace(m.ring, [list(r) for r in m.rows()])


def _laplace(ring, rows):
    n = len(rows)
    if n == 0:
        return ring.one
    if n == 1:
        return rows[0][0]
    if n == 2:
        return ring.sub(ring.mul(rows[0][0], rows[1][1]), ring.mul(rows[0][1], rows[1][0]))
    total = ring.zero
    for j, x in enumerate(rows[0]):
        if ring.is_zero(x):
            continue
        sub = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = ring.mul(x, _laplace(ring, sub))
        total = ring.add(total, term) if j % 2 == 0 else ring.sub(total, term)
    return total


def det_bareiss(m: Matrix):
    """Fraction-free Gaussian elimination; every interior division is exact."""
    if not m.is_square():
        raise ValueError("determinant of a non-square matrix")
    ring = m.ring
    n = m.nrows
    if n == 0:
        return ring.one
    a = [list(r) for r in m.rows()]
    negate = False
    prev = ring.one
    for k in range(n - 1):
        if ring.is_zero(a[k][k]):
            for i in range(k + 1, n):
                if not ring.is_zero(a[i][k]):
                    a[k], a[i] = a[i], a[k]
                    negate = not negate
                    break
            else:
                return ring.zero
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                num = ring.sub(ring.mul(akk, a[i][j]), ring.mul(aik, a[k][j]))
                a[i][j] = ring.div_exact(num, prev)
            a[i][k] = ring.zero
        prev = akk
    d = a[n - 1][n - 1]
    return ring.neg(d) if negate else d


def determinant(m: Matrix):
    if m.nrows <= 4:
        return det_cofactor(m)
    return det_bareiss(m)


def minor(f: IndexMap, g: IndexMap, m: Matrix):
    if f.size != g.size:
        raise ValueError("a minor needs index maps of equal size")
    return determinant(submatrix(f, g, m))
