"""Concrete semifields: non-negative rationals, approximate reals, tropical, and pairs."""

from __future__ import annotations

import random
from fractions import Fraction

import mpmath

from ..scalars import as_fraction
from .base import Order, SemifieldInstance


def _cmp(a, b) -> Order:
    if a < b:
        return Order.LESS
    if a > b:
        return Order.GREATER
    return Order.EQUAL


def _random_rational(rng: random.Random, zero_rate: float = 0.1) -> Fraction:
    if rng.random() < zero_rate:
        return Fraction(0)
    return Fraction(rng.randint(1, 40), rng.randint(1, 12))


class QPlus(SemifieldInstance):
    """Non-negative rationals with the usual operations; every limit is exact."""

    name = "qplus"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return 1 / a

    def compare(self, a, b):
        return _cmp(a, b)

    def from_rational(self, q):
        return as_fraction(q)

    def contains(self, a):
        return isinstance(a, Fraction) and a >= 0

    def sample(self, rng):
        return _random_rational(rng)

    def difference(self, a, b):
        return a - b if a >= b else None

    def geometric_reciprocal_limit(self, u):
        """Limit of ``1 / (u^n + ... + u + 1)``: ``1 - u`` below one, else 0."""
        return 1 - u if u < 1 else Fraction(0)

    def power_limit(self, u):
        """Limit of ``u^n`` when it exists in the ambient space."""
        if u < 1:
            return Fraction(0)
        return Fraction(1) if u == 1 else None

    def to_json(self, a):
        return [str(a.numerator), str(a.denominator)]


class RPlusApprox(SemifieldInstance):
    """Non-negative reals as mpmath floats; equality means agreement within ``2**-precision``."""

    name = "rplus"
    exact = False

    def __init__(self, precision: int = 60):
        self.precision = precision
        self.wp = 2 * precision + 40

    def _f(self, x):
        with mpmath.workprec(self.wp):
            if isinstance(x, Fraction):
                return mpmath.mpf(x.numerator) / x.denominator
            return mpmath.mpf(x)

    def zero(self):
        return self._f(0)

    def one(self):
        return self._f(1)

    def add(self, a, b):
        with mpmath.workprec(self.wp):
            return a + b

    def mul(self, a, b):
        with mpmath.workprec(self.wp):
            return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        with mpmath.workprec(self.wp):
            return 1 / a

    def compare(self, a, b):
        with mpmath.workprec(self.wp):
            scale = max(mpmath.mpf(1), abs(a), abs(b))
            if abs(a - b) <= mpmath.ldexp(scale, -self.precision):
                return Order.EQUAL
        return _cmp(a, b)

    def is_zero(self, a):
        return a == 0 or abs(a) <= mpmath.ldexp(1, -self.precision)

    def from_rational(self, q):
        return self._f(as_fraction(q))

    def contains(self, a):
        return a >= 0

    def sample(self, rng):
        return self._f(_random_rational(rng))

    def difference(self, a, b):
        if self.compare(a, b) is Order.LESS:
            return None
        with mpmath.workprec(self.wp):
            return max(a - b, mpmath.mpf(0))

    def geometric_reciprocal_limit(self, u):
        with mpmath.workprec(self.wp):
            return 1 - u if u < 1 else mpmath.mpf(0)

    def power_limit(self, u):
        if self.compare(u, self.one()) is Order.EQUAL:
            return self.one()
        return self.zero() if u < 1 else None

    def sqrt(self, a):
        with mpmath.workprec(self.wp):
            return mpmath.sqrt(a)

    def to_json(self, a):
        return mpmath.nstr(a, int(self.precision * 0.30103) + 3)


class Tropical(SemifieldInstance):
    """Non-negative rationals with ``max`` as addition and ordinary multiplication."""

    name = "tropical"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return max(a, b)

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return 1 / a

    def compare(self, a, b):
        return _cmp(a, b)

    def from_rational(self, q):
        # n.1 = max(1, ..., 1) = 1: the rational cone collapses
        return Fraction(1) if as_fraction(q) > 0 else Fraction(0)

    def contains(self, a):
        return isinstance(a, Fraction) and a >= 0

    def sample(self, rng):
        return _random_rational(rng)

    def difference(self, a, b):
        if b < a:
            return a
        if b == a:
            return Fraction(0)
        return None

    rational_cone = False

    def power_limit(self, u):
        if u < 1:
            return Fraction(0)
        return Fraction(1) if u == 1 else None

    def geometric_reciprocal_limit(self, u):
        # s_n = max(1, u^n): bounded by 1 when u <= 1, unbounded otherwise
        return Fraction(1) if u <= 1 else Fraction(0)

    def to_json(self, a):
        return [str(a.numerator), str(a.denominator)]


class Pairs(SemifieldInstance):
    """Pairs ``(x, y)`` with both entries positive or both zero, ordered componentwise.

    Ambient values (used for limits) are arbitrary pairs of non-negative
    rationals; a limit with exactly one zero coordinate leaves the carrier
    and the extremum collapses to ``(0, 0)``.
    """

    name = "pairs"
    totally_ordered = False

    def zero(self):
        return (Fraction(0), Fraction(0))

    def one(self):
        return (Fraction(1), Fraction(1))

    @staticmethod
    def element(x, y):
        x, y = as_fraction(x), as_fraction(y)
        if not ((x > 0 and y > 0) or (x == 0 and y == 0)):
            raise ValueError(f"({x}, {y}) is not in the pair semifield")
        return (x, y)

    def add(self, a, b):
        return (a[0] + b[0], a[1] + b[1])

    def mul(self, a, b):
        return (a[0] * b[0], a[1] * b[1])

    def inv(self, a):
        if a[0] == 0 or a[1] == 0:
            raise ZeroDivisionError(f"{a} has no inverse")
        return (1 / a[0], 1 / a[1])

    def compare(self, a, b):
        c0, c1 = _cmp(a[0], b[0]), _cmp(a[1], b[1])
        if c0 is c1:
            return c0
        if c0 is Order.EQUAL:
            return c1
        if c1 is Order.EQUAL:
            return c0
        return Order.INCOMPARABLE

    def from_rational(self, q):
        q = as_fraction(q)
        return (q, q)

    def contains(self, a):
        x, y = a
        return (x > 0 and y > 0) or (x == 0 and y == 0)

    def sample(self, rng):
        if rng.random() < 0.1:
            return self.zero()
        return (Fraction(rng.randint(1, 40), rng.randint(1, 12)),
                Fraction(rng.randint(1, 40), rng.randint(1, 12)))

    def difference(self, a, b):
        c = (a[0] - b[0], a[1] - b[1])
        if c[0] < 0 or c[1] < 0 or not self.contains(c):
            return None
        return c

    def _collapse(self, ambient):
        x, y = ambient
        if x == 0 or y == 0:
            return self.zero()
        return (x, y)

    def inf_from_limit(self, ambient):
        return self._collapse(ambient)

    def sup_from_limit(self, ambient):
        return self._collapse(ambient)

    def power_limit(self, u):
        q = QPlus()
        x, y = q.power_limit(u[0]), q.power_limit(u[1])
        return None if x is None or y is None else (x, y)

    def geometric_reciprocal_limit(self, u):
        q = QPlus()
        return (q.geometric_reciprocal_limit(u[0]), q.geometric_reciprocal_limit(u[1]))

    def to_json(self, a):
        return [[str(a[0].numerator), str(a[0].denominator)],
                [str(a[1].numerator), str(a[1].denominator)]]
