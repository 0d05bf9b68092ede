"""Approximate matrices for the few places where a square root is unavoidable.

Entries are :mod:`mpmath` complex numbers computed at a working precision well
above the requested one, so the stated tolerance ``2**-precision`` has slack
for the handful of products the callers perform afterwards.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import mpmath

from ..errors import DimensionMismatch
from ..scalars import BigReal, Gauss
from .matrix import Matrix


def working_precision(precision: int) -> int:
    return 2 * precision + 40


class ApproxMatrix:
    __slots__ = ("rows", "cols", "entries", "precision")

    def __init__(self, rows: int, cols: int, entries: Sequence, precision: int = 40):
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise DimensionMismatch(f"{len(entries)} entries for a {rows}x{cols} matrix")
        self.rows = rows
        self.cols = cols
        self.entries = entries
        self.precision = precision

    @property
    def wp(self) -> int:
        return working_precision(self.precision)

    @property
    def tolerance(self) -> BigReal:
        return BigReal(1, -self.precision, self.precision)

    @property
    def shape(self):
        return (self.rows, self.cols)

    @classmethod
    def from_exact(cls, m: Matrix, precision: int = 40) -> "ApproxMatrix":
        with mpmath.workprec(working_precision(precision)):
            return cls(m.rows, m.cols, [e.to_mpc() for e in m.entries], precision)

    @classmethod
    def identity(cls, n: int, precision: int = 40) -> "ApproxMatrix":
        return cls.from_exact(Matrix.identity(n), precision)

    @classmethod
    def from_columns(cls, cols: Sequence["ApproxMatrix"], rows: int, precision: int = 40):
        k = len(cols)
        data = [cols[j].entries[i] for i in range(rows) for j in range(k)]
        return cls(rows, k, data, precision)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def col(self, j: int) -> "ApproxMatrix":
        return ApproxMatrix(self.rows, 1, [self[i, j] for i in range(self.rows)], self.precision)

    def submatrix(self, rows, cols) -> "ApproxMatrix":
        return ApproxMatrix(len(rows), len(cols), [self[i, j] for i in rows for j in cols],
                            self.precision)

    def _other(self, other):
        if isinstance(other, Matrix):
            return ApproxMatrix.from_exact(other, self.precision)
        return other

    def _prec(self, other):
        return min(self.precision, other.precision)

    def __matmul__(self, other) -> "ApproxMatrix":
        other = self._other(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot compose {self.shape} after {other.shape}")
        p = self._prec(other)
        out = []
        with mpmath.workprec(working_precision(p)):
            for i in range(self.rows):
                row = self.entries[i * self.cols:(i + 1) * self.cols]
                for j in range(other.cols):
                    out.append(mpmath.fsum(row[k] * other.entries[k * other.cols + j]
                                           for k in range(self.cols)) if self.cols else mpmath.mpc(0))
        return ApproxMatrix(self.rows, other.cols, out, p)

    def __rmatmul__(self, other):
        if isinstance(other, Matrix):
            return ApproxMatrix.from_exact(other, self.precision) @ self
        return NotImplemented

    def _zip(self, other, op):
        other = self._other(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")
        p = self._prec(other)
        with mpmath.workprec(working_precision(p)):
            return ApproxMatrix(self.rows, self.cols,
                                [op(a, b) for a, b in zip(self.entries, other.entries)], p)

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self):
        return ApproxMatrix(self.rows, self.cols, [-e for e in self.entries], self.precision)

    def scale(self, a) -> "ApproxMatrix":
        with mpmath.workprec(self.wp):
            a = a.to_mpc() if isinstance(a, Gauss) else mpmath.mpmathify(a)
            return ApproxMatrix(self.rows, self.cols, [a * e for e in self.entries], self.precision)

    def dagger(self) -> "ApproxMatrix":
        return ApproxMatrix(self.cols, self.rows,
                            [mpmath.conj(self[i, j]) for j in range(self.cols) for i in range(self.rows)],
                            self.precision)

    def dsum(self, other: "ApproxMatrix") -> "ApproxMatrix":
        other = self._other(other)
        r, c = self.rows + other.rows, self.cols + other.cols
        out = [mpmath.mpc(0)] * (r * c)
        for i in range(self.rows):
            for j in range(self.cols):
                out[i * c + j] = self[i, j]
        for i in range(other.rows):
            for j in range(other.cols):
                out[(self.rows + i) * c + self.cols + j] = other[i, j]
        return ApproxMatrix(r, c, out, self._prec(other))

    def max_abs(self):
        """Largest entry modulus (an mpf); 0 for an empty matrix."""
        with mpmath.workprec(self.wp):
            return max((abs(e) for e in self.entries), default=mpmath.mpf(0))

    def distance(self, other) -> "mpmath.mpf":
        """Max entrywise distance to ``other`` (exact or approximate)."""
        return (self - other).max_abs()

    def close_to(self, other, tol_bits: int | None = None) -> bool:
        bits = self.precision if tol_bits is None else tol_bits
        return self.distance(other) <= mpmath.ldexp(1, -bits)

    def is_unitary(self, tol_bits: int | None = None) -> bool:
        if self.rows != self.cols:
            return False
        ident = Matrix.identity(self.rows)
        return (self.dagger() @ self).close_to(ident, tol_bits) and \
            (self @ self.dagger()).close_to(ident, tol_bits)

    def is_isometry(self, tol_bits: int | None = None) -> bool:
        return (self.dagger() @ self).close_to(Matrix.identity(self.cols), tol_bits)

    def round_to_exact(self, bits: int | None = None) -> Matrix:
        """Nearest dyadic-rational matrix; used only for display and exact cross checks."""
        bits = self.precision if bits is None else bits
        out = []
        for e in self.entries:
            re = BigReal.from_fraction(_mpf_to_fraction(e.real), bits).to_fraction()
            im = BigReal.from_fraction(_mpf_to_fraction(e.imag), bits).to_fraction()
            out.append(Gauss(re, im))
        return Matrix(self.rows, self.cols, out)

    def to_json(self, digits: int | None = None) -> dict:
        digits = digits or max(15, int(self.precision * 0.30103) + 3)
        return {"rows": self.rows, "cols": self.cols, "precision": self.precision,
                "tolerance": f"2^-{self.precision}",
                "entries": [[mpmath.nstr(e.real, digits), mpmath.nstr(e.imag, digits)]
                            for e in self.entries]}

    def __repr__(self):
        if self.rows * self.cols > 16:
            return f"ApproxMatrix({self.rows}x{self.cols})"
        body = "; ".join(", ".join(mpmath.nstr(self[i, j], 8) for j in range(self.cols))
                         for i in range(self.rows))
        return f"ApproxMatrix({self.rows}x{self.cols}: [{body}])"


def _mpf_to_fraction(x):
    man, exp = mpmath.mpf(x).man_exp
    if exp >= 0:
        return Fraction(int(man) << exp)
    return Fraction(int(man), 1 << -exp)
