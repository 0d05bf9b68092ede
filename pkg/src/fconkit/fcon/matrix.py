"""Exact matrices over Q(i): the skeletal model of FCon.

Objects are natural numbers (dimensions).  A morphism ``n -> m`` is an
``m x n`` matrix; ``A @ B`` is the composite "A after B".  Tensor is the
Kronecker product and direct sum is block-diagonal, so every coherence
isomorphism of the rig structure is a permutation matrix.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import DimensionMismatch, NotSquare
from ..scalars import Gauss, random_gauss


class Matrix:
    """Immutable ``rows x cols`` matrix of :class:`Gauss` entries, row-major."""

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, rows: int, cols: int, entries: Iterable = None):
        if rows < 0 or cols < 0:
            raise ValueError("dimensions must be non-negative")
        if entries is None:
            data = tuple(Gauss(0) for _ in range(rows * cols))
        else:
            data = tuple(Gauss.coerce(e) for e in entries)
        if len(data) != rows * cols:
            raise DimensionMismatch(f"{len(data)} entries for a {rows}x{cols} matrix")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", data)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # -- constructors ------------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(len(rows), cols, [e for r in rows for e in r])

    @classmethod
    def column(cls, values: Sequence) -> "Matrix":
        return cls(len(values), 1, values)

    @classmethod
    def row(cls, values: Sequence) -> "Matrix":
        return cls(1, len(values), values)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols)

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        n = len(values)
        return cls(n, n, [values[i] if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def scalar(cls, a) -> "Matrix":
        return cls(1, 1, [a])

    @classmethod
    def from_columns(cls, columns: Sequence["Matrix"], rows: int | None = None) -> "Matrix":
        if not columns:
            return cls(rows or 0, 0)
        return hstack(columns)

    # -- access ------------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def row_list(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self) -> list:
        return [self.row_list(i) for i in range(self.rows)]

    def col(self, j: int) -> "Matrix":
        return Matrix(self.rows, 1, [self[i, j] for i in range(self.rows)])

    def columns(self) -> list:
        return [self.col(j) for j in range(self.cols)]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(len(rows), len(cols), [self[i, j] for i in rows for j in cols])

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return not any(self.entries)

    # -- dagger rig structure ----------------------------------------------
    def dagger(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      [self[i, j].conj() for j in range(self.cols) for i in range(self.rows)])

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def conj(self) -> "Matrix":
        return Matrix(self.rows, self.cols, [e.conj() for e in self.entries])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot compose {self.shape} after {other.shape}")
        n, m, p = self.rows, self.cols, other.cols
        a, b = self.entries, other.entries
        out = []
        for i in range(n):
            base = i * m
            for j in range(p):
                acc_re = Fraction(0)
                acc_im = Fraction(0)
                for k in range(m):
                    x = a[base + k]
                    y = b[k * p + j]
                    if x.re or x.im:
                        acc_re += x.re * y.re - x.im * y.im
                        acc_im += x.re * y.im + x.im * y.re
                out.append(Gauss(acc_re, acc_im))
        return Matrix(n, p, out)

    def tensor(self, other: "Matrix") -> "Matrix":
        r, c = self.rows * other.rows, self.cols * other.cols
        out = []
        for i1 in range(self.rows):
            for i2 in range(other.rows):
                for j1 in range(self.cols):
                    a = self[i1, j1]
                    for j2 in range(other.cols):
                        out.append(a * other[i2, j2])
        return Matrix(r, c, out)

    def dsum(self, other: "Matrix") -> "Matrix":
        r, c = self.rows + other.rows, self.cols + other.cols
        out = [Gauss(0)] * (r * c)
        for i in range(self.rows):
            for j in range(self.cols):
                out[i * c + j] = self[i, j]
        for i in range(other.rows):
            for j in range(other.cols):
                out[(self.rows + i) * c + self.cols + j] = other[i, j]
        return Matrix(r, c, out)

    # -- linear structure --------------------------------------------------
    def _check_same(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, [-a for a in self.entries])

    def scale(self, a) -> "Matrix":
        a = Gauss.coerce(a)
        return Matrix(self.rows, self.cols, [a * e for e in self.entries])

    def __rmul__(self, a):
        if isinstance(a, (int, Fraction, Gauss)):
            return self.scale(a)
        return NotImplemented

    def trace(self) -> Gauss:
        if not self.is_square():
            raise NotSquare("trace of a non-square matrix")
        return sum((self[i, i] for i in range(self.rows)), Gauss(0))

    def is_hermitian(self) -> bool:
        return self.is_square() and self == self.dagger()

    # -- comparison --------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.rows, self.cols, self.entries))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        if self.rows * self.cols > 36:
            return f"Matrix({self.rows}x{self.cols})"
        body = "; ".join(", ".join(str(e) for e in self.row_list(i)) for i in range(self.rows))
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    # -- norms used for exact bounds ----------------------------------------
    def max_col_abs_sum(self) -> Fraction:
        """Max over columns of sum(|re| + |im|): an upper bound on the column 1-norm."""
        best = Fraction(0)
        for j in range(self.cols):
            s = sum((abs(self[i, j].re) + abs(self[i, j].im) for i in range(self.rows)), Fraction(0))
            best = max(best, s)
        return best

    def max_row_abs_sum(self) -> Fraction:
        best = Fraction(0)
        for i in range(self.rows):
            s = sum((abs(e.re) + abs(e.im) for e in self.row_list(i)), Fraction(0))
            best = max(best, s)
        return best

    def frobenius_sq(self) -> Fraction:
        return sum((e.norm_sq() for e in self.entries), Fraction(0))


# -- free functions mirroring the categorical vocabulary ---------------------

def dagger(a: Matrix) -> Matrix:
    return a.dagger()


def compose(a: Matrix, b: Matrix) -> Matrix:
    """``a`` after ``b``."""
    return a @ b


def tensor(a: Matrix, b: Matrix) -> Matrix:
    return a.tensor(b)


def dsum(a: Matrix, b: Matrix) -> Matrix:
    return a.dsum(b)


def hstack(blocks: Sequence[Matrix]) -> Matrix:
    rows = blocks[0].rows
    if any(b.rows != rows for b in blocks):
        raise DimensionMismatch("hstack needs equal row counts")
    cols = sum(b.cols for b in blocks)
    out = []
    for i in range(rows):
        for b in blocks:
            out.extend(b.row_list(i))
    return Matrix(rows, cols, out)


def vstack(blocks: Sequence[Matrix]) -> Matrix:
    cols = blocks[0].cols
    if any(b.cols != cols for b in blocks):
        raise DimensionMismatch("vstack needs equal column counts")
    out = []
    for b in blocks:
        out.extend(b.entries)
    return Matrix(sum(b.rows for b in blocks), cols, out)


def block(rows_of_blocks: Sequence[Sequence[Matrix]]) -> Matrix:
    return vstack([hstack(r) for r in rows_of_blocks])


def injection(dims: Sequence[int], k: int) -> Matrix:
    """The k-th biproduct injection ``dims[k] -> sum(dims)`` (0-based)."""
    total = sum(dims)
    offset = sum(dims[:k])
    n = dims[k]
    return Matrix(total, n, [1 if i == offset + j else 0 for i in range(total) for j in range(n)])


def projection(dims: Sequence[int], k: int) -> Matrix:
    return injection(dims, k).dagger()


def i1(x: int, y: int) -> Matrix:
    return injection([x, y], 0)


def i2(x: int, y: int) -> Matrix:
    return injection([x, y], 1)


def p1(x: int, y: int) -> Matrix:
    return projection([x, y], 0)


def p2(x: int, y: int) -> Matrix:
    return projection([x, y], 1)


def diagonal_map(n: int) -> Matrix:
    """Delta = (1, 1)^T : I -> I + I, generalised to n copies."""
    return Matrix.column([1] * n)


def symmetry_tensor(m: int, n: int) -> Matrix:
    """The swap isomorphism ``m (x) n -> n (x) m`` as a permutation matrix."""
    size = m * n
    out = [0] * (size * size)
    for a in range(m):
        for b in range(n):
            src = a * n + b
            dst = b * m + a
            out[dst * size + src] = 1
    return Matrix(size, size, out)


def permutation_matrix(perm: Sequence[int]) -> Matrix:
    n = len(perm)
    return Matrix(n, n, [1 if perm[j] == i else 0 for i in range(n) for j in range(n)])


# -- exact Gaussian elimination -------------------------------------------------

def rref(a: Matrix):
    """Reduced row echelon form with deterministic (first nonzero) pivoting.

    Returns ``(R, pivots)`` where ``pivots`` lists the pivot columns.
    """
    rows = [list(a.row_list(i)) for i in range(a.rows)]
    pivots = []
    r = 0
    for c in range(a.cols):
        if r >= a.rows:
            break
        p = next((i for i in range(r, a.rows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [inv * e for e in rows[r]]
        for i in range(a.rows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return Matrix.from_rows(rows, a.cols) if a.rows else Matrix(0, a.cols), pivots


def rank(a: Matrix) -> int:
    return len(rref(a)[1])


def nullspace(a: Matrix) -> list:
    """Exact basis (list of column matrices) of ``ker a``."""
    r, pivots = rref(a)
    free = [c for c in range(a.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Gauss(0)] * a.cols
        v[f] = Gauss(1)
        for k, pc in enumerate(pivots):
            v[pc] = -r[k, f]
        basis.append(Matrix.column(v))
    return basis


def column_space(a: Matrix) -> list:
    """Exact basis of the column space: the pivot columns of ``a``."""
    _, pivots = rref(a)
    return [a.col(c) for c in pivots]


def inverse(a: Matrix) -> Matrix:
    if not a.is_square():
        raise NotSquare("only square matrices are invertible")
    n = a.rows
    aug = hstack([a, Matrix.identity(n)]) if n else Matrix(0, 0)
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return r.submatrix(range(n), range(n, 2 * n))


def solve(a: Matrix, b: Matrix) -> Matrix | None:
    """Some exact solution ``x`` of ``a x = b`` (free variables set to 0), or None."""
    if a.rows != b.rows:
        raise DimensionMismatch("right-hand side has the wrong number of rows")
    aug = hstack([a, b])
    r, pivots = rref(aug)
    if any(p >= a.cols for p in pivots):
        return None
    x = [[Gauss(0)] * b.cols for _ in range(a.cols)]
    for k, pc in enumerate(pivots):
        for j in range(b.cols):
            x[pc][j] = r[k, a.cols + j]
    return Matrix.from_rows(x, b.cols) if a.cols else Matrix(0, b.cols)


def right_inverse(a: Matrix) -> Matrix:
    """Least-norm right inverse ``a^dagger (a a^dagger)^{-1}`` of a full-row-rank matrix."""
    ad = a.dagger()
    return ad @ inverse(a @ ad)


def left_inverse(a: Matrix) -> Matrix:
    ad = a.dagger()
    return inverse(ad @ a) @ ad


def orthogonal_projector(basis: Sequence[Matrix], dim: int) -> Matrix:
    """Exact orthogonal projection onto the span of linearly independent columns."""
    if not basis:
        return Matrix.zero(dim, dim)
    b = hstack(list(basis))
    return b @ inverse(b.dagger() @ b) @ b.dagger()


def gram_schmidt_exact(vectors: Sequence[Matrix], drop_dependent: bool = True) -> list:
    """Orthogonalise columns over Q(i) without normalising.

    Returns pairwise-orthogonal nonzero columns spanning the same space (linearly
    dependent inputs are dropped when ``drop_dependent``).
    """
    out = []
    for v in vectors:
        w = v
        for u in out:
            uu = (u.dagger() @ u)[0, 0]
            coeff = (u.dagger() @ w)[0, 0] / uu
            w = w - u.scale(coeff)
        if w.is_zero():
            if drop_dependent:
                continue
            raise ValueError("linearly dependent vectors")
        out.append(w)
    return out


def inner(x: Matrix, y: Matrix) -> Gauss:
    """<x|y> = x^dagger y for column vectors."""
    return (x.dagger() @ y)[0, 0]


def random_matrix(rng: random.Random, rows: int, cols: int, bound: int = 3, den: int = 4,
                  real: bool = False) -> Matrix:
    return Matrix(rows, cols, [random_gauss(rng, bound, den, real) for _ in range(rows * cols)])
