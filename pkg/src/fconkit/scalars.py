"""Exact Gaussian-rational scalars and a small binary fixed-point real type.

Rationals are :class:`fractions.Fraction` (always in lowest terms, arbitrary
precision).  :class:`Gauss` is an element of Q(i) with conjugation as its
involution.  :class:`BigReal` is ``mantissa * 2**exponent`` and is only
produced where a square root or a limit leaves Q(i).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _Rational

import mpmath

from .errors import NegativeInput

Rational = Fraction


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


class Gauss:
    """Immutable element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", as_fraction(re))
        object.__setattr__(self, "im", as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("Gauss is immutable")

    @classmethod
    def coerce(cls, x) -> "Gauss":
        if isinstance(x, Gauss):
            return x
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        return cls(x)

    # -- field structure -------------------------------------------------
    def __add__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return Gauss(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return Gauss(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return Gauss(self.re * other.re - self.im * other.im,
                     self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __neg__(self):
        return Gauss(-self.re, -self.im)

    def __pos__(self):
        return self

    def inverse(self) -> "Gauss":
        n = self.norm_sq()
        if n == 0:
            raise ZeroDivisionError("0 has no inverse in Q(i)")
        return Gauss(self.re / n, -self.im / n)

    def __truediv__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = Gauss(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- involution and norm ---------------------------------------------
    def conj(self) -> "Gauss":
        return Gauss(self.re, -self.im)

    def norm_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def in_disk(self) -> bool:
        return self.norm_sq() <= 1

    # -- comparison / hashing --------------------------------------------
    def __eq__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def to_mpc(self):
        return mpmath.mpc(mpmath.mpf(self.re.numerator) / self.re.denominator,
                          mpmath.mpf(self.im.numerator) / self.im.denominator)

    def __repr__(self):
        if self.im == 0:
            return f"Gauss({self.re})"
        return f"Gauss({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    # -- JSON --------------------------------------------------------------
    def to_json(self) -> list:
        return [str(self.re.numerator), str(self.re.denominator),
                str(self.im.numerator), str(self.im.denominator)]

    @classmethod
    def from_json(cls, data) -> "Gauss":
        if not isinstance(data, (list, tuple)) or len(data) != 4:
            raise ValueError("a Gaussian rational is a list of four decimal strings")
        rn, rd, im_n, im_d = (_parse_int(x) for x in data)
        if rd <= 0 or im_d <= 0:
            raise ValueError("denominators must be positive")
        return cls(Fraction(rn, rd), Fraction(im_n, im_d))


def _parse_int(x) -> int:
    if isinstance(x, bool):
        raise ValueError("booleans are not integers")
    if isinstance(x, int):
        return x
    if isinstance(x, str) and x.strip().lstrip("+-").isdigit():
        return int(x)
    raise ValueError(f"expected a decimal integer string, got {x!r}")


def _maybe(x):
    if isinstance(x, Gauss):
        return x
    if isinstance(x, (int, Fraction)):
        return Gauss(x)
    return None


I = Gauss(0, 1)
ZERO = Gauss(0)
ONE = Gauss(1)


def conj(a) -> Gauss:
    return Gauss.coerce(a).conj()


def norm_sq(a) -> Fraction:
    return Gauss.coerce(a).norm_sq()


def in_disk(a) -> bool:
    return Gauss.coerce(a).in_disk()


def random_gauss(rng: random.Random, bound: int = 5, den: int = 6, real: bool = False) -> Gauss:
    re = Fraction(rng.randint(-bound * den, bound * den), rng.randint(1, den))
    if real:
        return Gauss(re)
    im = Fraction(rng.randint(-bound * den, bound * den), rng.randint(1, den))
    return Gauss(re, im)


@dataclass(frozen=True)
class BigReal:
    """``mantissa * 2**exponent``; ``precision`` records the bit budget it was made for.

    Arithmetic between BigReals is exact on the dyadic values; only
    constructors that approximate (``from_fraction``, ``sqrt_pos``) round, and
    each documents its error.
    """

    mantissa: int
    exponent: int
    precision: int = 64

    @classmethod
    def from_fraction(cls, x, precision: int) -> "BigReal":
        """Nearest dyadic with exponent ``-precision``: error at most 2**-(precision+1)."""
        x = as_fraction(x)
        scaled = x * (1 << precision)
        m = math.floor(scaled + Fraction(1, 2))
        return cls(m, -precision, precision)

    @classmethod
    def from_int(cls, n: int, precision: int = 64) -> "BigReal":
        return cls(n, 0, precision)

    def to_fraction(self) -> Fraction:
        if self.exponent >= 0:
            return Fraction(self.mantissa << self.exponent)
        return Fraction(self.mantissa, 1 << -self.exponent)

    def to_mpf(self):
        return mpmath.ldexp(mpmath.mpf(self.mantissa), self.exponent)

    def __float__(self):
        return math.ldexp(float(self.mantissa), self.exponent) if abs(self.mantissa) < 2**1000 \
            else float(self.to_fraction())

    def _align(self, other):
        other = other if isinstance(other, BigReal) else BigReal.from_fraction(other, self.precision)
        e = min(self.exponent, other.exponent)
        return (self.mantissa << (self.exponent - e), other.mantissa << (other.exponent - e), e,
                max(self.precision, other.precision))

    def __add__(self, other):
        a, b, e, p = self._align(other)
        return BigReal(a + b, e, p)

    __radd__ = __add__

    def __sub__(self, other):
        a, b, e, p = self._align(other)
        return BigReal(a - b, e, p)

    def __rsub__(self, other):
        a, b, e, p = self._align(other)
        return BigReal(b - a, e, p)

    def __neg__(self):
        return BigReal(-self.mantissa, self.exponent, self.precision)

    def __mul__(self, other):
        if not isinstance(other, BigReal):
            other = BigReal.from_fraction(other, self.precision)
        return BigReal(self.mantissa * other.mantissa, self.exponent + other.exponent,
                       max(self.precision, other.precision))

    __rmul__ = __mul__

    def __abs__(self):
        return BigReal(abs(self.mantissa), self.exponent, self.precision)

    def _cmp_key(self, other):
        other_f = other.to_fraction() if isinstance(other, BigReal) else as_fraction(other)
        return self.to_fraction(), other_f

    def __eq__(self, other):
        if not isinstance(other, (BigReal, int, Fraction)):
            return NotImplemented
        a, b = self._cmp_key(other)
        return a == b

    def __hash__(self):
        return hash(self.to_fraction())

    def __lt__(self, other):
        a, b = self._cmp_key(other)
        return a < b

    def __le__(self, other):
        a, b = self._cmp_key(other)
        return a <= b

    def __gt__(self, other):
        a, b = self._cmp_key(other)
        return a > b

    def __ge__(self, other):
        a, b = self._cmp_key(other)
        return a >= b

    def to_decimal_string(self, digits: int = 20) -> str:
        return mpmath.nstr(self.to_mpf(), digits)

    def __repr__(self):
        return f"BigReal({self.to_decimal_string(12)}, precision={self.precision})"

    def to_json(self):
        return {"mantissa": str(self.mantissa), "exponent": self.exponent,
                "precision": self.precision, "decimal": self.to_decimal_string(25)}


def sqrt_pos(r, precision: int = 40) -> BigReal:
    """Square root of a non-negative rational.

    The result ``s`` satisfies ``0 <= sqrt(r) - s < 2**-(precision+2)`` and
    hence ``|s*s - r| <= 2**-precision * max(1, r)``.
    """
    r = as_fraction(r)
    if r < 0:
        raise NegativeInput(f"square root of negative rational {r}")
    m = precision + 2
    scaled = (r.numerator << (2 * m)) // r.denominator
    return BigReal(math.isqrt(scaled), -m, precision)


def exact_sqrt(r) -> Fraction | None:
    """The rational square root of ``r`` when it exists."""
    r = as_fraction(r)
    if r < 0:
        return None
    n, d = math.isqrt(r.numerator), math.isqrt(r.denominator)
    if n * n == r.numerator and d * d == r.denominator:
        return Fraction(n, d)
    return None
