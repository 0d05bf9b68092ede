"""Positive scalars ``x^dagger x`` carried by a witness vector.

The order is the categorical one: ``x^dagger x >= y^dagger y`` when some
contraction ``f`` has ``f x = y``.  :func:`dominates` decides it by building
the rank-one map ``y x^dagger / (x^dagger x)`` and certifying it exactly;
the value comparison is kept separately so the two can be cross-checked.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from ..fcon.matrix import Matrix, vstack
from ..fcon.ops import is_contraction
from ..scalars import Gauss, as_fraction, random_gauss
from ..report import Report
from ..errors import NoLimitWithinBudget, NotBounded, NotMonotone
from .base import Order, SemifieldInstance


@dataclass(frozen=True)
class PosScalar:
    witness: Matrix
    value: Fraction = field(init=False)

    def __post_init__(self):
        if self.witness.cols != 1:
            raise ValueError("a positive scalar is witnessed by a column vector")
        object.__setattr__(self, "value", self.witness.frobenius_sq())

    @property
    def dim(self) -> int:
        return self.witness.rows

    def is_zero(self) -> bool:
        return self.witness.is_zero()

    def __repr__(self):
        return f"PosScalar({self.value}, dim={self.dim})"


@dataclass(frozen=True)
class Domination:
    holds: bool
    witness: Matrix | None = None

    def __bool__(self):
        return self.holds


def squares_decomposition(n: int) -> list:
    """Greedy list of non-negative integers whose squares sum to ``n``.

    Each step leaves a remainder at most ``2 sqrt(n)``, so the list has
    length ``O(log log n)``.
    """
    if n < 0:
        raise ValueError("negative integer")
    out = []
    while n:
        r = math.isqrt(n)
        out.append(r)
        n -= r * r
    return out


def witness_for_value(r) -> Matrix:
    """A column ``x`` over Q(i) with ``x^dagger x == r`` exactly."""
    r = as_fraction(r)
    if r < 0:
        raise ValueError("positive scalars are non-negative")
    if r == 0:
        return Matrix(0, 1)
    d = r.denominator
    parts = squares_decomposition(r.numerator * d)
    if len(parts) % 2:
        parts.append(0)
    entries = [Gauss(Fraction(parts[k], d), Fraction(parts[k + 1], d)) for k in range(0, len(parts), 2)]
    return Matrix.column(entries)


def pos_scalar(r) -> PosScalar:
    return PosScalar(witness_for_value(r))


def dominates(p: PosScalar, q: PosScalar, certify: str = "ldl") -> Domination:
    """Whether ``p >= q``: some contraction maps ``p.witness`` to ``q.witness``.

    ``certify="ldl"`` builds ``f = y x^dagger / (x^dagger x)`` and checks
    ``f x == y`` and ``I - f^dagger f >= 0`` exactly.  ``certify="rank-one"``
    uses the exact identity ``||f||^2 = (y^dagger y) / (x^dagger x)`` for
    this rank-one map and skips building it (used for bulk comparisons).
    """
    x, y = p.witness, q.witness
    if x.is_zero():
        if y.is_zero():
            return Domination(True, Matrix.zero(y.rows, x.rows))
        return Domination(False)
    nx = p.value
    if certify == "rank-one":
        return Domination(q.value <= nx)
    if certify != "ldl":
        raise ValueError(f"unknown certification mode {certify!r}")
    if q.value > nx:
        return Domination(False)
    f = (y @ x.dagger()).scale(1 / nx)
    if f @ x != y or not is_contraction(f):
        return Domination(False)
    return Domination(True, f)


def pos_scalar_leq(p: PosScalar, q: PosScalar, certify: str = "ldl") -> Domination:
    """``p <= q`` in the witness order; the returned map sends ``q``'s witness to ``p``'s."""
    return dominates(q, p, certify)


def value_leq(p: PosScalar, q: PosScalar) -> bool:
    return p.value <= q.value


def ps_add(p: PosScalar, q: PosScalar) -> PosScalar:
    """Witness ``(x (+) y) Delta``: the stacked column ``[x; y]``."""
    return PosScalar(vstack([p.witness, q.witness]))


def ps_mul(p: PosScalar, q: PosScalar) -> PosScalar:
    return PosScalar(p.witness.tensor(q.witness))


def ps_inv(p: PosScalar) -> PosScalar:
    if p.value == 0:
        raise ZeroDivisionError("0 has no inverse")
    return PosScalar(p.witness.scale(1 / p.value))


def random_pos_scalar(rng: random.Random, max_dim: int = 3, zero_rate: float = 0.05) -> PosScalar:
    if rng.random() < zero_rate:
        return PosScalar(Matrix.zero(rng.randint(0, max_dim), 1))
    dim = rng.randint(1, max_dim)
    return PosScalar(Matrix.column([random_gauss(rng, 2, 4) for _ in range(dim)]))


def sup_bounded(seq, bound: PosScalar, certify: str = "rank-one") -> PosScalar:
    """Supremum of an increasing sequence of positive scalars bounded by ``bound``.

    Monotonicity and boundedness are decided in the witness order.  The
    value comes from the sequence's stabilisation or its closed-form limit
    (a positive scalar or a rational); the returned scalar carries a fresh
    witness realising that value.
    """
    from .sequences import INCREASING
    if seq.direction != INCREASING:
        raise NotMonotone("suprema are taken of increasing sequences")
    terms = seq.terms()
    for n in range(len(terms) - 1):
        if not pos_scalar_leq(terms[n], terms[n + 1], certify):
            raise NotMonotone(f"terms {n + 1} and {n + 2} are not increasing", index=n + 1)
    for n, t in enumerate(terms, start=1):
        if not pos_scalar_leq(t, bound, certify):
            raise NotBounded(f"term {n} exceeds the bound")
    if seq.stabilisation is not None and seq.stabilisation <= seq.budget:
        return pos_scalar(terms[seq.stabilisation - 1].value)
    if seq.limit is None:
        raise NoLimitWithinBudget("no stabilisation index and no closed-form limit")
    value = seq.limit.value if isinstance(seq.limit, PosScalar) else as_fraction(seq.limit)
    if value > bound.value or any(t.value > value for t in terms):
        raise NotBounded("the supplied limit is not a least bound between the terms and the bound")
    return pos_scalar(value)


def sup_add_check(a: PosScalar, seq, bound: PosScalar) -> Report:
    """``a + sup(b_n) = sup(a + b_n)``, compared by value and by witnesses both ways."""
    from dataclasses import replace
    from .sequences import seq_shift
    S = PositiveScalars()
    if seq.limit is not None and not isinstance(seq.limit, PosScalar):
        seq = replace(seq, limit=pos_scalar(as_fraction(seq.limit)))
    report = Report("sup-add", label=seq.label)
    lhs = ps_add(a, sup_bounded(seq, bound))
    rhs = sup_bounded(seq_shift(S, a, seq), ps_add(a, bound))
    report.add("values_equal", lhs.value == rhs.value,
               {"lhs": str(lhs.value), "rhs": str(rhs.value)})
    both = dominates(lhs, rhs, "ldl").holds and dominates(rhs, lhs, "ldl").holds
    report.add("witnesses_equivalent", both)
    return report


class PositiveScalars(SemifieldInstance):
    """The semifield of values ``x^dagger x`` with the contraction order."""

    name = "posscalars"

    def __init__(self, compact: bool = False):
        # compact: replace each sum/product witness by a short one of equal value
        # (an isomorphic representative), keeping long iterations small
        self.compact = compact

    def _c(self, p):
        return pos_scalar(p.value) if self.compact else p

    def zero(self):
        return PosScalar(Matrix(0, 1))

    def one(self):
        return PosScalar(Matrix.column([1]))

    def add(self, a, b):
        return self._c(ps_add(a, b))

    def mul(self, a, b):
        return self._c(ps_mul(a, b))

    def inv(self, a):
        return self._c(ps_inv(a))

    def compare(self, a, b):
        ge = dominates(a, b, "rank-one").holds
        le = dominates(b, a, "rank-one").holds
        if ge and le:
            return Order.EQUAL
        if ge:
            return Order.GREATER
        if le:
            return Order.LESS
        return Order.INCOMPARABLE

    def from_rational(self, q):
        return pos_scalar(q)

    def contains(self, a):
        return isinstance(a, PosScalar)

    def sample(self, rng):
        return random_pos_scalar(rng, max_dim=2)

    def difference(self, a, b):
        if a.value < b.value:
            return None
        return pos_scalar(a.value - b.value)

    def power_limit(self, u):
        if u.value < 1:
            return self.zero()
        return self.one() if u.value == 1 else None

    def geometric_reciprocal_limit(self, u):
        return pos_scalar(1 - u.value if u.value < 1 else 0)

    def to_json(self, a):
        from ..serialize import matrix_to_json
        return {"value": [str(a.value.numerator), str(a.value.denominator)],
                "witness": matrix_to_json(a.witness)}
