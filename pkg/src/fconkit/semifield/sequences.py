"""Monotone sequences in a semifield and their extrema.

Exact instances never guess a limit: a sequence either stabilises, carries a
closed-form ambient limit, or the extremum is reported as unavailable.  The
approximate real instance may also accept a sequence whose last two terms
agree at its tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Any, Callable, Sequence

from ..errors import FconError, NoLimitWithinBudget, NotBounded, NotMonotone
from .base import Order, SemifieldInstance

INCREASING = "increasing"
DECREASING = "decreasing"


class LimitMismatch(FconError):
    """A supplied closed-form limit is not a bound for the computed terms."""


@dataclass(frozen=True)
class MonotoneSequence:
    term: Callable[[int], Any]
    direction: str
    budget: int = 64
    stabilisation: int | None = None
    limit: Any = None
    label: str = ""

    def __post_init__(self):
        if self.direction not in (INCREASING, DECREASING):
            raise ValueError(f"unknown direction {self.direction!r}")
        if self.budget < 1:
            raise ValueError("budget must be positive")

    def __call__(self, n: int):
        return self.term(n)

    def terms(self) -> list:
        return [self.term(n) for n in range(1, self.budget + 1)]

    def with_budget(self, budget: int) -> "MonotoneSequence":
        return replace(self, budget=budget)


def explicit(values: Sequence, direction: str, budget: int | None = None, label: str = "") -> MonotoneSequence:
    """Finite list, extended by repeating its last element."""
    vals = list(values)
    if not vals:
        raise ValueError("an explicit sequence needs at least one term")
    k = len(vals)
    return MonotoneSequence(lambda n: vals[min(n, k) - 1], direction,
                            budget or max(k, 1), stabilisation=k, label=label or "explicit")


def constant(value, direction: str = DECREASING, budget: int = 8) -> MonotoneSequence:
    return MonotoneSequence(lambda n: value, direction, budget, stabilisation=1, limit=value,
                            label="constant")


def check_monotone(S: SemifieldInstance, seq: MonotoneSequence, terms: list | None = None) -> list:
    terms = terms if terms is not None else seq.terms()
    want = (Order.LESS, Order.EQUAL) if seq.direction == INCREASING else (Order.GREATER, Order.EQUAL)
    for n in range(len(terms) - 1):
        if S.compare(terms[n], terms[n + 1]) not in want:
            raise NotMonotone(f"terms {n + 1} and {n + 2} break {seq.direction} order", index=n + 1)
    return terms


def _extremum(S, seq, direction, from_limit, bound=None):
    if seq.direction != direction:
        raise NotMonotone(f"expected a {direction} sequence, got {seq.direction}")
    terms = check_monotone(S, seq)
    if bound is not None:
        ok = S.leq if direction == INCREASING else S.geq
        for n, t in enumerate(terms, start=1):
            if not ok(t, bound):
                raise NotBounded(f"term {n} exceeds the bound")
    side = S.geq if direction == INCREASING else S.leq
    if seq.stabilisation is not None and seq.stabilisation <= seq.budget:
        k = seq.stabilisation
        v = terms[k - 1]
        for n in range(k, len(terms)):
            if not S.eq(terms[n], v):
                raise NoLimitWithinBudget(f"sequence claimed to stabilise at {k} but term {n + 1} differs")
        return v
    if seq.limit is not None:
        v = from_limit(seq.limit)
        for n, t in enumerate(terms, start=1):
            if not side(v, t):
                raise LimitMismatch(f"supplied limit is not a {'upper' if direction == INCREASING else 'lower'} "
                                    f"bound at term {n}")
        return v
    if not S.exact and len(terms) >= 2 and S.cauchy_close(terms[-2], terms[-1]):
        return terms[-1]
    raise NoLimitWithinBudget(f"no limit detected within {seq.budget} terms")


def inf_decreasing(S: SemifieldInstance, seq: MonotoneSequence):
    return _extremum(S, seq, DECREASING, S.inf_from_limit)


def sup_increasing(S: SemifieldInstance, seq: MonotoneSequence, bound=None):
    return _extremum(S, seq, INCREASING, S.sup_from_limit, bound)


# -- combinators ------------------------------------------------------------------------

def _stab(a: MonotoneSequence, b: MonotoneSequence):
    if a.stabilisation is None or b.stabilisation is None:
        return None
    return max(a.stabilisation, b.stabilisation)


def combine(S: SemifieldInstance, op: Callable, a: MonotoneSequence, b: MonotoneSequence,
            label: str = "") -> MonotoneSequence:
    """Termwise ``op``; ambient limits combine by the same ``op``."""
    if a.direction != b.direction:
        raise NotMonotone("cannot combine sequences of opposite direction")
    limit = None
    if a.limit is not None and b.limit is not None:
        limit = op(a.limit, b.limit)
    return MonotoneSequence(lambda n: op(a.term(n), b.term(n)), a.direction, min(a.budget, b.budget),
                            _stab(a, b), limit, label)


def seq_add(S, a, b):
    return combine(S, S.add, a, b, f"({a.label} + {b.label})")


def seq_mul(S, a, b):
    return combine(S, S.mul, a, b, f"({a.label} * {b.label})")


def seq_shift(S, c, a: MonotoneSequence) -> MonotoneSequence:
    """``c + a_n``."""
    return MonotoneSequence(lambda n: S.add(c, a.term(n)), a.direction, a.budget, a.stabilisation,
                            S.add(c, a.limit) if a.limit is not None else None, f"(c + {a.label})")


def seq_scale(S, c, a: MonotoneSequence) -> MonotoneSequence:
    """``c * a_n``."""
    return MonotoneSequence(lambda n: S.mul(c, a.term(n)), a.direction, a.budget, a.stabilisation,
                            S.mul(c, a.limit) if a.limit is not None else None, f"(c * {a.label})")


def seq_inv(S, a: MonotoneSequence) -> MonotoneSequence:
    """``1 / a_n``; reverses the direction.  The ambient limit survives when invertible."""
    limit = None
    if a.limit is not None:
        try:
            limit = S.inv(a.limit)
        except ZeroDivisionError:
            limit = None
    flipped = INCREASING if a.direction == DECREASING else DECREASING
    return MonotoneSequence(lambda n: S.inv(a.term(n)), flipped, a.budget, a.stabilisation, limit,
                            f"1/{a.label}")
