"""Localisation at the nonzero disk scalars: morphisms ``f/a`` and their calculus.

A fraction pairs a certified contraction ``f`` with a nonzero scalar ``a`` of
modulus at most one.  Two fractions are identified when ``b.f == a.g``.
Fractions are never normalised; :func:`resolve` evaluates ``f * a^-1`` when a
canonical representative is wanted.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction as Rat

from .errors import DimensionMismatch, FconError, NotContraction
from .fcon.generators import contraction_scale, random_contraction, unimodular
from .fcon.matrix import Matrix
from .fcon.ops import ConMorphism, as_matrix, is_contraction
from .report import Report
from .scalars import Gauss


class InvalidDenominator(FconError):
    pass


@dataclass(frozen=True)
class Fraction:
    """The localised morphism ``numerator / denominator``."""

    numerator: ConMorphism
    denominator: Gauss

    def __post_init__(self):
        if not isinstance(self.numerator, ConMorphism):
            object.__setattr__(self, "numerator", ConMorphism.certify(self.numerator))
        d = Gauss.coerce(self.denominator)
        if not d:
            raise InvalidDenominator("denominator must be nonzero")
        if not d.in_disk():
            raise InvalidDenominator(f"denominator {d} lies outside the unit disk")
        object.__setattr__(self, "denominator", d)

    @property
    def matrix(self) -> Matrix:
        return self.numerator.matrix

    @property
    def shape(self):
        return self.matrix.shape

    def __repr__(self):
        return f"Fraction({self.matrix!r} / {self.denominator})"

    def to_json(self) -> dict:
        from .serialize import matrix_to_json
        return {"numerator": matrix_to_json(self.matrix), "denominator": self.denominator.to_json()}


@dataclass(frozen=True)
class FieldMorphism:
    """A resolved morphism: an arbitrary matrix over Q(i)."""

    matrix: Matrix


def frac(f, a=1) -> Fraction:
    return Fraction(as_matrix(f) if not isinstance(f, ConMorphism) else f, Gauss.coerce(a))


def frac_equiv(p: Fraction, q: Fraction) -> bool:
    if p.shape != q.shape:
        raise DimensionMismatch(f"fractions of shapes {p.shape} and {q.shape}")
    return p.matrix.scale(q.denominator) == q.matrix.scale(p.denominator)


def frac_dagger(p: Fraction) -> Fraction:
    return Fraction(ConMorphism.certify(p.matrix.dagger()), p.denominator.conj())


def frac_compose(p: Fraction, q: Fraction) -> Fraction:
    """``p`` after ``q``."""
    if p.matrix.cols != q.matrix.rows:
        raise DimensionMismatch(f"cannot compose {p.shape} after {q.shape}")
    return Fraction(ConMorphism.certify(p.matrix @ q.matrix), p.denominator * q.denominator)


def frac_tensor(p: Fraction, q: Fraction) -> Fraction:
    return Fraction(ConMorphism.certify(p.matrix.tensor(q.matrix)), p.denominator * q.denominator)


def frac_dsum(p: Fraction, q: Fraction) -> Fraction:
    """``(b.f (+) a.g) / (ab)`` for ``p = f/a``, ``q = g/b``."""
    a, b = p.denominator, q.denominator
    num = p.matrix.scale(b).dsum(q.matrix.scale(a))
    return Fraction(ConMorphism.certify(num), a * b)


def embed(f) -> Fraction:
    """The functor ``f |-> f/1``."""
    return frac(f, 1)


def resolve(p: Fraction) -> FieldMorphism:
    return FieldMorphism(p.matrix.scale(p.denominator.inverse()))


def to_fraction(m) -> Fraction:
    """Representative ``(c M) / c`` with ``c = 1 / max(1, B)``.

    ``B`` is the larger of the max absolute column sum and max absolute row sum
    (entry size measured as ``|re| + |im|``), an exact rational upper bound on
    the operator norm.
    """
    mat = m.matrix if isinstance(m, FieldMorphism) else m
    c = contraction_scale(mat)
    return Fraction(ConMorphism.certify(mat.scale(c)), Gauss(c))


def comes_from_d(m) -> bool:
    mat = m.matrix if isinstance(m, FieldMorphism) else m
    if mat.cols == 1:
        return mat.frobenius_sq() <= 1
    return is_contraction(mat)


# -- seeded generators ------------------------------------------------------------------

def random_disk_scalar(rng: random.Random) -> Gauss:
    """Nonzero scalar in the closed unit disk with small denominators."""
    kind = rng.random()
    if kind < 0.25:
        return unimodular(rng)
    while True:
        g = Gauss(Rat(rng.randint(-6, 6), rng.randint(1, 6)), Rat(rng.randint(-6, 6), rng.randint(1, 6)))
        if g and g.in_disk():
            return g


def random_fraction(rng: random.Random, rows: int, cols: int) -> Fraction:
    return Fraction(ConMorphism.certify(random_contraction(rng, rows, cols)), random_disk_scalar(rng))


def equivalent_variant(rng: random.Random, p: Fraction) -> Fraction:
    """A different representative of the same class: ``(c f) / (c a)``."""
    c = random_disk_scalar(rng)
    return Fraction(ConMorphism.certify(p.matrix.scale(c)), p.denominator * c)


def congruence_check(samples: int = 1000, seed: int = 0, max_dim: int = 4) -> Report:
    """Equivalence is preserved by dagger, composition, tensor and direct sum.

    Each sample draws shape-compatible fractions ``p``, ``q`` and independent
    re-representatives ``p'``, ``q'``; every operation must send equivalent
    inputs to equivalent outputs, exactly.
    """
    rng = random.Random(seed)
    report = Report("fraction-congruence", samples=samples, seed=seed)
    bad = {k: None for k in ("variant", "dagger", "compose", "tensor", "dsum", "control")}

    def note(key, sample):
        if bad[key] is None:
            bad[key] = sample

    for t in range(samples):
        n, m, k = (rng.randint(1, max_dim) for _ in range(3))
        p, q = random_fraction(rng, m, n), random_fraction(rng, n, k)
        p2, q2 = equivalent_variant(rng, p), equivalent_variant(rng, q)
        if not (frac_equiv(p, p2) and frac_equiv(q, q2)):
            note("variant", t)
        if not frac_equiv(frac_dagger(p), frac_dagger(p2)):
            note("dagger", t)
        if not frac_equiv(frac_compose(p, q), frac_compose(p2, q2)):
            note("compose", t)
        # keep tensor factors small so products stay within 4 x 4
        r, r2 = _small_pair(rng)
        w, w2 = _small_pair(rng)
        if not frac_equiv(frac_tensor(r, w), frac_tensor(r2, w2)):
            note("tensor", t)
        if not frac_equiv(frac_dsum(p, q), frac_dsum(p2, q2)):
            note("dsum", t)
        # negative control: halving the denominator leaves the class unless the numerator is 0
        other = Fraction(p.numerator, p.denominator * Gauss(Rat(1, 2)))
        if not p.matrix.is_zero() and frac_equiv(p, other):
            note("control", t)
    for key, v in bad.items():
        report.add(key, v is None, None if v is None else {"sample": v})
    return report


def _small_pair(rng):
    a, b = rng.randint(1, 2), rng.randint(1, 2)
    f = random_fraction(rng, a, b)
    return f, equivalent_variant(rng, f)


__all__ = [
    "Fraction", "FieldMorphism", "InvalidDenominator", "frac", "frac_equiv", "frac_dagger",
    "frac_compose", "frac_tensor", "frac_dsum", "embed", "resolve", "to_fraction", "comes_from_d",
    "random_disk_scalar", "random_fraction", "equivalent_variant", "NotContraction",
    "congruence_check",
]
