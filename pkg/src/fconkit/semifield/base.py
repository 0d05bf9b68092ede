"""Interface for partially ordered strict semifields."""

from __future__ import annotations

import enum
import random
from abc import ABC, abstractmethod
from fractions import Fraction


class Order(enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"

    def flip(self) -> "Order":
        return {Order.LESS: Order.GREATER, Order.GREATER: Order.LESS}.get(self, self)


class SemifieldInstance(ABC):
    """A carrier with ``+``, ``*``, ``0``, ``1``, partial inverse and a partial order.

    Elements are plain Python values chosen by the instance.  Sequence limits
    are computed in an *ambient* space (for instance pairs of non-negative
    rationals) that contains the carrier; :meth:`inf_from_limit` and
    :meth:`sup_from_limit` turn an ambient limit into the extremum inside the
    carrier.
    """

    name: str = "abstract"
    exact: bool = True
    totally_ordered: bool = True

    @abstractmethod
    def zero(self): ...

    @abstractmethod
    def one(self): ...

    @abstractmethod
    def add(self, a, b): ...

    @abstractmethod
    def mul(self, a, b): ...

    @abstractmethod
    def inv(self, a): ...

    @abstractmethod
    def compare(self, a, b) -> Order: ...

    @abstractmethod
    def from_rational(self, q: Fraction):
        """The element ``q . 1`` (``q`` a non-negative rational)."""

    @abstractmethod
    def sample(self, rng: random.Random): ...

    @abstractmethod
    def to_json(self, a): ...

    def contains(self, a) -> bool:
        return True

    def is_zero(self, a) -> bool:
        return self.compare(a, self.zero()) is Order.EQUAL

    def eq(self, a, b) -> bool:
        return self.compare(a, b) is Order.EQUAL

    def leq(self, a, b) -> bool:
        return self.compare(a, b) in (Order.LESS, Order.EQUAL)

    def lt(self, a, b) -> bool:
        return self.compare(a, b) is Order.LESS

    def geq(self, a, b) -> bool:
        return self.leq(b, a)

    def power(self, a, n: int):
        out = self.one()
        for _ in range(n):
            out = self.mul(out, a)
        return out

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def difference(self, a, b):
        """Some ``c`` with ``b + c == a`` when the carrier has one, else None."""
        return None

    def inf_from_limit(self, ambient):
        return ambient

    def sup_from_limit(self, ambient):
        return ambient

    def cauchy_close(self, a, b) -> bool:
        """Whether two sequence terms are indistinguishable at the instance tolerance."""
        return self.eq(a, b)

    def sum_of_ones_is_one(self) -> bool:
        return self.eq(self.add(self.one(), self.one()), self.one())

    def describe(self) -> dict:
        return {"name": self.name, "exact": self.exact, "totally_ordered": self.totally_ordered}
