"""Reconstructing the real and complex numbers from a positive cone.

Given an order isomorphism ``phi`` from a cone of self-adjoint elements onto
the non-negative reals, the map

    psi(a) = (phi((a + 2)^2) - phi(a^2 + 4)) / 4

extends it to a ring homomorphism on all self-adjoint elements.  The two
polynomial identities that make ``psi`` additive and multiplicative are
checked exactly over Q; the homomorphism property itself is checked
numerically against the oracle.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import mpmath

from .errors import ConeViolation, SelfAdjointInput
from .report import Report
from .scalars import BigReal, Gauss, as_fraction, exact_sqrt, sqrt_pos


# -- involutive field models -----------------------------------------------------------

class GaussField:
    """Q(i) with complex conjugation; the self-adjoint subfield is Q."""

    name = "gaussian-rationals"
    exact = True

    def coerce(self, a) -> Gauss:
        return Gauss.coerce(a)

    def zero(self):
        return Gauss(0)

    def one(self):
        return Gauss(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return a.inverse()

    def conj(self, a):
        return a.conj()

    def is_self_adjoint(self, a) -> bool:
        return a.im == 0

    def eq(self, a, b) -> bool:
        return a == b

    def real_value(self, a) -> Fraction:
        """The rational a self-adjoint element stands for."""
        if a.im != 0:
            raise ValueError(f"{a} is not self-adjoint")
        return a.re

    def from_real(self, x) -> Gauss:
        return Gauss(as_fraction(x))


class ApproxComplexField:
    """Complex numbers at working precision; equality within ``2**-precision``."""

    name = "approx-complex"
    exact = False

    def __init__(self, precision: int = 60):
        self.precision = precision
        self.wp = 2 * precision + 40

    def coerce(self, a):
        with mpmath.workprec(self.wp):
            if isinstance(a, Gauss):
                return a.to_mpc()
            return mpmath.mpc(a)

    def zero(self):
        return mpmath.mpc(0)

    def one(self):
        return mpmath.mpc(1)

    def add(self, a, b):
        with mpmath.workprec(self.wp):
            return a + b

    def sub(self, a, b):
        with mpmath.workprec(self.wp):
            return a - b

    def mul(self, a, b):
        with mpmath.workprec(self.wp):
            return a * b

    def inv(self, a):
        with mpmath.workprec(self.wp):
            return 1 / a

    def conj(self, a):
        return mpmath.conj(a)

    def is_self_adjoint(self, a) -> bool:
        return abs(mpmath.im(a)) <= mpmath.ldexp(1, -self.precision)

    def eq(self, a, b) -> bool:
        with mpmath.workprec(self.wp):
            return abs(a - b) <= mpmath.ldexp(max(1, abs(a), abs(b)), -self.precision)

    def real_value(self, a):
        return mpmath.re(a)

    def from_real(self, x):
        with mpmath.workprec(self.wp):
            if isinstance(x, BigReal):
                x = x.to_mpf()
            elif isinstance(x, Fraction):
                x = mpmath.mpf(x.numerator) / x.denominator
            return mpmath.mpc(x)


# -- cone oracles -----------------------------------------------------------------------

@dataclass(frozen=True)
class PositiveConeOracle:
    """Membership in a cone of self-adjoint rationals plus the isomorphism onto R+."""

    membership: Callable[[Fraction], bool]
    phi: Callable[[Fraction], BigReal]
    phi_inv: Optional[Callable[[BigReal], Fraction]] = None
    name: str = "oracle"


def identity_oracle(precision: int = 64) -> PositiveConeOracle:
    """Cone Q+ with ``phi`` the inclusion, rounded to ``precision`` fractional bits."""
    return PositiveConeOracle(
        membership=lambda a: as_fraction(a) >= 0,
        phi=lambda a: BigReal.from_fraction(a, precision),
        phi_inv=lambda r: r.to_fraction() if isinstance(r, BigReal) else as_fraction(r),
        name=f"identity@{precision}",
    )


def semifield_oracle(precision: int = 40) -> PositiveConeOracle:
    """``phi`` = real evaluation of the positive scalar ``a`` in the witness semifield."""
    from .semifield.analysis import evaluate_to_real
    from .semifield.posscalars import PositiveScalars, pos_scalar
    S = PositiveScalars()
    return PositiveConeOracle(
        membership=lambda a: as_fraction(a) >= 0,
        phi=lambda a: evaluate_to_real(S, pos_scalar(a), precision),
        phi_inv=lambda r: r.to_fraction() if isinstance(r, BigReal) else as_fraction(r),
        name=f"posscalars@{precision}",
    )


# -- psi and upsilon ------------------------------------------------------------------------

def _quarter(x: BigReal) -> BigReal:
    return BigReal(x.mantissa, x.exponent - 2, x.precision)


class Psi:
    """The extension of ``phi`` to all self-adjoint rationals."""

    def __init__(self, oracle: PositiveConeOracle):
        self.oracle = oracle

    def __call__(self, a) -> BigReal:
        a = as_fraction(a)
        p, q = (a + 2) ** 2, a * a + 4
        for term in (p, q):
            if not self.oracle.membership(term):
                raise ConeViolation(f"{term} is not in the positive cone")
        return _quarter(self.oracle.phi(p) - self.oracle.phi(q))

    def upsilon(self, r):
        """Inverse map ``(phi^-1((r+2)^2) - phi^-1(r^2+4)) / 4``; needs ``phi_inv``."""
        if self.oracle.phi_inv is None:
            raise ValueError("upsilon needs the inverse oracle")
        r = r.to_fraction() if isinstance(r, BigReal) else as_fraction(r)
        return (self.oracle.phi_inv((r + 2) ** 2) - self.oracle.phi_inv(r * r + 4)) / 4


def build_psi(oracle: PositiveConeOracle) -> Psi:
    return Psi(oracle)


def additive_identity_sides(a, b):
    lhs = (a + b + 2) ** 2 + (a * a + 4) + (b * b + 4)
    rhs = (a + 2) ** 2 + (b + 2) ** 2 + (a + b) ** 2 + 4
    return lhs, rhs


def multiplicative_identity_sides(a, b):
    lhs = 4 * (a * b + 2) ** 2 + (a + 2) ** 2 * (b * b + 4) + (a * a + 4) * (b + 2) ** 2
    rhs = (a + 2) ** 2 * (b + 2) ** 2 + (a * a + 4) * (b * b + 4) + 4 * (a * a * b * b + 4)
    return lhs, rhs


def poly_identity_check(samples) -> Report:
    """Both identities behind additivity and multiplicativity of ``psi``, exactly over Q."""
    report = Report("poly-identities")
    add_bad = mul_bad = None
    n = 0
    for a, b in samples:
        a, b = as_fraction(a), as_fraction(b)
        n += 1
        l1, r1 = additive_identity_sides(a, b)
        if l1 != r1 and add_bad is None:
            add_bad = {"a": str(a), "b": str(b)}
        l2, r2 = multiplicative_identity_sides(a, b)
        if l2 != r2 and mul_bad is None:
            mul_bad = {"a": str(a), "b": str(b)}
    report.add("additive_identity", add_bad is None, add_bad, samples=n)
    report.add("multiplicative_identity", mul_bad is None, mul_bad, samples=n)
    return report


def random_rational_in(rng: random.Random, lo: int, hi: int, bits: int = 20) -> Fraction:
    den = 1 << rng.randint(0, bits)
    return Fraction(rng.randint(lo * den, hi * den), den)


def psi_homomorphism_check(psi: Psi, samples, tolerance_bits: int = 30) -> Report:
    """Max additive and multiplicative defects of ``psi`` over the sampled pairs."""
    report = Report("psi-homomorphism", oracle=psi.oracle.name, tolerance=f"2^-{tolerance_bits}")
    tol = Fraction(1, 1 << tolerance_bits)
    worst_add = worst_mul = worst_ext = Fraction(0)
    n = 0
    for a, b in samples:
        a, b = as_fraction(a), as_fraction(b)
        pa, pb = psi(a).to_fraction(), psi(b).to_fraction()
        worst_add = max(worst_add, abs(psi(a + b).to_fraction() - pa - pb))
        worst_mul = max(worst_mul, abs(psi(a * b).to_fraction() - pa * pb))
        worst_ext = max(worst_ext, abs(pa - a))
        n += 1
    report.add("additive", worst_add <= tol, {"max_error": float(worst_add)},
               max_error=float(worst_add), samples=n)
    report.add("multiplicative", worst_mul <= tol, {"max_error": float(worst_mul)},
               max_error=float(worst_mul), samples=n)
    report.add("extends_phi_identity", worst_ext <= tol, {"max_error": float(worst_ext)},
               max_error=float(worst_ext))
    zero, one = psi(0).to_fraction(), psi(1).to_fraction()
    report.add("psi_0_is_0", abs(zero) <= tol, str(zero))
    report.add("psi_1_is_1", abs(one - 1) <= tol, str(one))
    return report


# -- field order from a cone -----------------------------------------------------------------

class ConeOrder:
    """``a <= b`` iff ``b - a`` lies in the cone."""

    def __init__(self, membership: Callable):
        self.membership = membership

    def leq(self, a, b) -> bool:
        return self.membership(b - a)

    @staticmethod
    def decompose(a):
        """``a = (a + 1/2)^2 - (a^2 + 1/4)`` with both parts squares-plus-squares."""
        a = as_fraction(a)
        half = Fraction(1, 2)
        return (a + half) ** 2, a * a + Fraction(1, 4)


def field_order_from_cone(membership: Callable) -> ConeOrder:
    return ConeOrder(membership)


def field_order_check(order: ConeOrder, samples) -> Report:
    """Partial-order laws and the five partially-ordered-field axioms on sampled triples."""
    report = Report("field-order")
    fails = {k: None for k in ("reflexive", "antisymmetric", "transitive", "add", "mult", "one",
                               "inv", "difference")}
    leq = order.leq
    if not leq(Fraction(0), Fraction(1)):
        fails["one"] = "0 <= 1 fails"
    for a, b, c in samples:
        a, b, c = as_fraction(a), as_fraction(b), as_fraction(c)
        if not leq(a, a):
            fails["reflexive"] = fails["reflexive"] or [str(a)]
        if leq(a, b) and leq(b, a) and a != b:
            fails["antisymmetric"] = fails["antisymmetric"] or [str(a), str(b)]
        if leq(a, b) and leq(b, c) and not leq(a, c):
            fails["transitive"] = fails["transitive"] or [str(a), str(b), str(c)]
        if leq(a, b) and not leq(a + c, b + c):
            fails["add"] = fails["add"] or [str(a), str(b), str(c)]
        if leq(0, a) and leq(0, b) and not leq(0, a * b):
            fails["mult"] = fails["mult"] or [str(a), str(b)]
        if leq(0, a) and a != 0 and not leq(0, 1 / a):
            fails["inv"] = fails["inv"] or [str(a)]
        p, q = order.decompose(a)
        if p - q != a or not leq(0, p) or not leq(0, q):
            fails["difference"] = fails["difference"] or [str(a)]
    for k, v in fails.items():
        report.add(k, v is None, v)
    return report


def epsilon_closure_check(membership: Callable, samples, budget: int = 64) -> Report:
    """``a`` in the cone iff ``a + 2^-k`` is, for every ``k <= budget``.

    With finitely many ``k`` the test only separates ``a`` from the cone when
    ``|a| > 2^-budget``; smaller negative samples are reported as undecided.
    """
    report = Report("epsilon-closure", budget=budget)
    bad = None
    decided = undecided = 0
    for a in samples:
        a = as_fraction(a)
        inside = membership(a)
        shifted = all(membership(a + Fraction(1, 1 << k)) for k in range(budget + 1))
        if not inside and abs(a) <= Fraction(1, 1 << budget):
            undecided += 1
            continue
        decided += 1
        if inside != shifted:
            bad = bad or {"a": str(a), "in_cone": inside, "all_shifts_in_cone": shifted}
    report.add("closure", bad is None, bad, decided=decided, undecided=undecided)
    return report


# -- complexification ---------------------------------------------------------------------------

@dataclass
class Complexification:
    field: object
    r: object
    i: object
    exact: bool
    oracle: PositiveConeOracle

    def decompose(self, a):
        """Self-adjoint ``(p, q)`` with ``a = p + q i``."""
        F = self.field
        a = F.coerce(a)
        two = F.from_real(2)
        p = F.mul(F.add(a, F.conj(a)), F.inv(two))
        q = F.mul(F.sub(a, F.conj(a)), F.inv(F.mul(two, self.i)))
        return p, q

    def recompose(self, p, q):
        F = self.field
        return F.add(p, F.mul(q, self.i))

    def psi_c(self, a):
        """``phi(p) + phi(q) i`` as an mpmath complex number."""
        p, q = self.decompose(a)
        psi = Psi(self.oracle)
        F = self.field
        re = psi(F.real_value(p)) if self.exact else _mpf(F.real_value(p))
        im = psi(F.real_value(q)) if self.exact else _mpf(F.real_value(q))
        return mpmath.mpc(_mpf(re), _mpf(im))


def _mpf(x):
    if isinstance(x, BigReal):
        return x.to_mpf()
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def complexify(field, u, oracle: PositiveConeOracle | None = None, precision: int = 40) -> Complexification:
    """``r = phi^-1(sqrt(phi(w^dagger w)))`` and ``i = w / r`` for ``w = u - u^dagger``."""
    oracle = oracle or identity_oracle(max(64, precision + 24))
    u = field.coerce(u)
    w = field.sub(u, field.conj(u))
    if field.eq(w, field.zero()):
        raise SelfAdjointInput("u is self-adjoint; complexification needs u != u^dagger")
    norm = field.mul(field.conj(w), w)
    if field.exact:
        n = field.real_value(norm)
        root = exact_sqrt(n)
        if root is not None:
            r = field.from_real(root)
            return Complexification(field, r, field.mul(w, field.inv(r)), True, oracle)
        # the square root leaves Q: r stays a real number acting formally
        approx = ApproxComplexField(precision + 20)
        r_real = sqrt_pos(n, precision + 20)
        r = approx.from_real(r_real)
        i = approx.mul(approx.coerce(w), approx.inv(r))
        return Complexification(approx, r, i, False, oracle)
    with mpmath.workprec(field.wp):
        r = field.from_real(mpmath.sqrt(field.real_value(norm)))
    return Complexification(field, r, field.mul(w, field.inv(r)), False, oracle)
