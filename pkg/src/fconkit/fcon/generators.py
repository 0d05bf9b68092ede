"""Seeded generators of exact test morphisms: permutations, Pythagorean unitaries, contractions."""

from __future__ import annotations

import random
from fractions import Fraction

from ..scalars import Gauss
from .matrix import Matrix, permutation_matrix, random_matrix


def pythagorean_pair(rng: random.Random, limit: int = 6):
    """``(c, s)`` rational with ``c^2 + s^2 = 1`` from a random Euclid parametrisation."""
    p = rng.randint(1, limit)
    q = rng.randint(0, limit)
    d = p * p + q * q
    c, s = Fraction(p * p - q * q, d), Fraction(2 * p * q, d)
    if rng.random() < 0.5:
        c = -c
    return c, s


def unimodular(rng: random.Random) -> Gauss:
    c, s = pythagorean_pair(rng)
    return Gauss(c, s)


def random_permutation(rng: random.Random, n: int) -> Matrix:
    perm = list(range(n))
    rng.shuffle(perm)
    return permutation_matrix(perm)


def rotation(n: int, i: int, j: int, c, s, phase: Gauss = Gauss(1)) -> Matrix:
    """Unitary acting as ``[[c, -s conj(phase)], [s phase, c]]`` on coordinates ``i, j``."""
    rows = [[Gauss(1) if r == k else Gauss(0) for k in range(n)] for r in range(n)]
    rows[i][i] = Gauss(c)
    rows[j][j] = Gauss(c)
    rows[i][j] = -Gauss(s) * phase.conj()
    rows[j][i] = Gauss(s) * phase
    return Matrix.from_rows(rows, n)


def random_unitary(rng: random.Random, n: int, rotations: int = 3, real: bool = False) -> Matrix:
    """Exact unitary built from a permutation, Pythagorean rotations and unimodular phases."""
    u = random_permutation(rng, n)
    if n == 0:
        return u
    for _ in range(rotations if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        c, s = pythagorean_pair(rng)
        phase = Gauss(1) if real else unimodular(rng)
        u = rotation(n, i, j, c, s, phase) @ u
    if not real:
        u = Matrix.diag([unimodular(rng) for _ in range(n)]) @ u
    return u


def random_isometry(rng: random.Random, rows: int, cols: int, real: bool = False) -> Matrix:
    """Exact ``rows x cols`` isometry (``cols <= rows``): leading columns of a random unitary."""
    u = random_unitary(rng, rows, real=real)
    return u.submatrix(range(rows), range(cols))


def contraction_scale(a: Matrix) -> Fraction:
    """Rational ``c`` with ``c a`` a contraction: ``1 / max(1, max(row bound, column bound))``.

    The geometric mean of the max absolute row and column sums bounds the
    operator norm (Schur test), so the larger of the two certainly does.
    """
    b = max(a.max_col_abs_sum(), a.max_row_abs_sum())
    return Fraction(1) / max(Fraction(1), b)


def random_contraction(rng: random.Random, rows: int, cols: int, bound: int = 3, den: int = 4,
                       real: bool = False) -> Matrix:
    a = random_matrix(rng, rows, cols, bound, den, real)
    c = contraction_scale(a)
    shrink = Fraction(rng.randint(1, 8), 8)
    return a.scale(c * shrink)


def random_epi_contraction(rng: random.Random, rows: int, cols: int, real: bool = False) -> Matrix:
    """A full-row-rank contraction ``cols -> rows`` with ``rows <= cols``."""
    from .matrix import rank
    while True:
        a = random_contraction(rng, rows, cols, real=real)
        if rank(a) == rows:
            return a


def random_mono(rng: random.Random, rows: int, cols: int, real: bool = False) -> Matrix:
    """A full-column-rank contraction ``cols -> rows`` with ``cols <= rows``."""
    from .matrix import rank
    while True:
        a = random_contraction(rng, rows, cols, real=real)
        if rank(a) == cols:
            return a
