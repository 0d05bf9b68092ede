"""Sequential colimits in the contraction model.

Two constructions live here.  A bounded chain of monos ``X1 -> X2 -> ...``
(finite, or constant after its last arrow) has the last object as apex; the
bound only certifies boundedness and caps the apex dimension.  A chain of
epis is handled by the quotient construction: ``x`` is identified with zero
when ``|f_n ... f_1 x| -> 0``, and the apex carries the limit inner product
``x^dagger G x`` with ``G = lim A_n^dagger A_n``.

Epi chains are infinite.  The listed arrows are followed either by copies of
the last (square) arrow or by identities.  For a repeated square contraction
``f`` the limit of ``(f^dagger)^k f^k`` is the orthogonal projector onto the
subspace where every power of ``f`` is isometric, which keeps ``G`` exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

import mpmath

from .errors import (DimensionMismatch, NoLimitWithinBudget, NotCocone, NotContraction, NotEpi,
                     NotMono, NotNatural)
from .fcon.approx import ApproxMatrix, working_precision
from .fcon.generators import random_contraction, random_mono
from .fcon.matrix import (Matrix, column_space, gram_schmidt_exact, hstack, i1, i2, inverse,
                          nullspace, orthogonal_projector, p1, p2, rank, right_inverse, vstack)
from .fcon.ops import is_contraction, matrix_sqrt_psd
from .fcon.psd import ldl_psd
from .report import Report
from .scalars import BigReal, Gauss

MONOS, EPIS = "monos", "epis"
REPEAT_LAST, IDENTITY = "repeat-last", "identity"


@dataclass(frozen=True)
class SequentialDiagram:
    objects: tuple
    morphisms: tuple
    kind: str = MONOS
    stabilisation: Optional[int] = None
    budget: int = 64
    tail: str = IDENTITY

    def __post_init__(self):
        objs, arrows = tuple(self.objects), tuple(self.morphisms)
        object.__setattr__(self, "objects", objs)
        object.__setattr__(self, "morphisms", arrows)
        if self.kind not in (MONOS, EPIS):
            raise ValueError(f"unknown diagram kind {self.kind!r}")
        if self.tail not in (REPEAT_LAST, IDENTITY):
            raise ValueError(f"unknown tail {self.tail!r}")
        if len(objs) != len(arrows) + 1:
            raise DimensionMismatch("a chain of n arrows has n + 1 objects")
        for k, f in enumerate(arrows):
            if f.shape != (objs[k + 1], objs[k]):
                raise DimensionMismatch(f"arrow {k} has shape {f.shape}, expected "
                                        f"{(objs[k + 1], objs[k])}")
            if self.kind == MONOS and rank(f) != f.cols:
                raise NotMono(f"arrow {k} is not injective")
            if self.kind == EPIS:
                if rank(f) != f.rows:
                    raise NotEpi(f"arrow {k} is not surjective")
                if not is_contraction(f):
                    raise NotContraction(f"arrow {k} is not a contraction")
        if self.tail == REPEAT_LAST and arrows and not arrows[-1].is_square():
            raise DimensionMismatch("a repeated tail arrow must be square")

    @classmethod
    def chain(cls, arrows: Sequence[Matrix], kind: str = MONOS, **kw) -> "SequentialDiagram":
        arrows = list(arrows)
        if not arrows:
            raise ValueError("give at least one arrow, or build the diagram from objects")
        objs = [arrows[0].cols] + [f.rows for f in arrows]
        return cls(tuple(objs), tuple(arrows), kind, **kw)

    @property
    def length(self) -> int:
        return len(self.morphisms)

    def composite(self, start: int, stop: int) -> Matrix:
        """``f_{stop-1} ... f_start``: object ``start`` to object ``stop`` (0-based)."""
        out = Matrix.identity(self.objects[start])
        for k in range(start, stop):
            out = self.morphisms[k] @ out
        return out


@dataclass(frozen=True)
class Cocone:
    apex: int
    legs: tuple

    def __post_init__(self):
        object.__setattr__(self, "legs", tuple(self.legs))

    def check(self, diag: SequentialDiagram) -> None:
        if len(self.legs) != len(diag.objects):
            raise NotCocone(f"{len(self.legs)} legs for {len(diag.objects)} objects")
        for k, c in enumerate(self.legs):
            if c.shape != (self.apex, diag.objects[k]):
                raise NotCocone(f"leg {k} has shape {c.shape}", index=k)
        for k, f in enumerate(diag.morphisms):
            if self.legs[k + 1] @ f != self.legs[k]:
                raise NotCocone(f"leg {k + 1} composed with arrow {k} differs from leg {k}",
                                index=k)


def cocone_from_last(diag: SequentialDiagram, last: Matrix) -> Cocone:
    """The cocone whose final leg is ``last`` and whose other legs are forced by it."""
    n = diag.length
    return Cocone(last.rows, [last @ diag.composite(k, n) for k in range(n + 1)])


@dataclass
class ColimitResult:
    apex: int
    legs: list                 # ApproxMatrix legs into orthonormal apex coordinates
    gram_limit: Matrix         # exact limit Gram matrix on the first object (epi chains)
    quotient_basis: list       # exact columns spanning a complement of N (epi chains)
    exact_legs: list = field(default_factory=list)   # legs into quotient coordinates
    apex_gram: Optional[Matrix] = None   # inner product in quotient coordinates
    exact: bool = True
    meta: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        from .serialize import matrix_to_json
        out = {"apex": self.apex, "exact": self.exact,
               "legs": [c.to_json() for c in self.legs]}
        if self.gram_limit is not None:
            out["gram_limit"] = matrix_to_json(self.gram_limit)
        if self.apex_gram is not None:
            out["apex_gram"] = matrix_to_json(self.apex_gram)
        if self.quotient_basis is not None:
            out["quotient_basis"] = [matrix_to_json(q) for q in self.quotient_basis]
        out.update(self.meta)
        return out


# -- bounded chains of monos ---------------------------------------------------------

def bounded_seq_colimit(diag: SequentialDiagram, bound: Cocone, precision: int = 40) -> ColimitResult:
    if diag.kind != MONOS:
        raise NotMono("bounded colimits are built from chains of monos")
    bound.check(diag)
    for k, a in enumerate(bound.legs):
        if rank(a) != a.cols:
            raise NotMono(f"bound leg {k} is not injective")
        if not is_contraction(a):
            raise NotContraction(f"bound leg {k} is not a contraction")
    n = diag.length
    legs = [diag.composite(k, n) for k in range(n + 1)]
    union = column_space(hstack(list(bound.legs)))
    apex = diag.objects[-1]
    if len(union) != apex:
        raise NotMono("image of the bound does not have the apex dimension")
    return ColimitResult(
        apex=apex,
        legs=[ApproxMatrix.from_exact(c, precision) for c in legs],
        gram_limit=None,
        quotient_basis=None,
        exact_legs=legs,
        apex_gram=Matrix.identity(apex),
        meta={"kind": MONOS, "union_dimension": len(union), "bound_apex": bound.apex},
    )


def mediating_morphism(result: ColimitResult, diag: SequentialDiagram, cocone: Cocone) -> Matrix:
    """The unique ``m`` with ``m c_k = b_k`` for the exact colimit legs ``c_k``."""
    cocone.check(diag)
    if diag.kind == MONOS:
        return cocone.legs[-1]
    # quotient coordinates: m = b_1 Q, and b_1 vanishes on N
    q = hstack(result.quotient_basis) if result.quotient_basis else Matrix(diag.objects[0], 0)
    return cocone.legs[0] @ q


def universal_property_check(result: ColimitResult, diag: SequentialDiagram,
                             cocones: Sequence[Cocone]) -> Report:
    """Existence, uniqueness and contractivity of mediating maps, all exact."""
    report = Report("universal-property", cocones=len(cocones))
    last = result.exact_legs[-1] if diag.kind == MONOS else result.exact_legs[0]
    # a map out of the apex is fixed by its composite with a surjective leg
    unique = rank(last) == result.apex
    report.add("legs_jointly_epic", unique, {"rank": rank(last), "apex": result.apex})
    bad_commute = bad_contract = None
    for t, b in enumerate(cocones):
        m = mediating_morphism(result, diag, b)
        if any(m @ c != bk for c, bk in zip(result.exact_legs, b.legs)):
            bad_commute = bad_commute or {"cocone": t}
        # contraction w.r.t. the apex inner product: H - m^dagger m >= 0
        if not ldl_psd(result.apex_gram - m.dagger() @ m).psd:
            bad_contract = bad_contract or {"cocone": t}
    report.add("mediating_commutes", bad_commute is None, bad_commute)
    report.add("mediating_contraction", bad_contract is None, bad_contract)
    return report


def random_bounded_diagram(rng: random.Random, max_length: int = 5, max_dim: int = 4,
                           real: bool = False):
    """A chain of injective contractions and a cocone of injective contractions bounding it."""
    length = rng.randint(1, max_length)
    dims = sorted(rng.randint(1, max_dim) for _ in range(length + 1))
    b = rng.randint(dims[-1], max_dim)
    arrows = [random_mono(rng, dims[k + 1], dims[k], real) for k in range(length)]
    diag = SequentialDiagram(tuple(dims), tuple(arrows), MONOS)
    return diag, cocone_from_last(diag, random_mono(rng, b, dims[-1], real))


def random_test_cocone(rng: random.Random, diag: SequentialDiagram, max_dim: int = 4,
                       real: bool = False) -> Cocone:
    z = rng.randint(1, max_dim)
    return cocone_from_last(diag, random_contraction(rng, z, diag.objects[-1], real=real))


# -- chains of epis ---------------------------------------------------------------------

def gram_sequence(diag: SequentialDiagram, steps: int):
    """Exact ``G_n = A_n^dagger A_n`` for the first ``steps`` arrows (tail included)."""
    a = Matrix.identity(diag.objects[0])
    out = [a.dagger() @ a]
    for n in range(steps):
        a = _arrow(diag, n) @ a
        out.append(a.dagger() @ a)
    return out


def _arrow(diag: SequentialDiagram, n: int) -> Matrix:
    if n < diag.length:
        return diag.morphisms[n]
    if diag.tail == REPEAT_LAST and diag.morphisms:
        return diag.morphisms[-1]
    return Matrix.identity(diag.objects[-1])


def unitary_part_projector(f: Matrix) -> Matrix:
    """``lim (f^dagger)^k f^k`` for a square contraction ``f``.

    That limit is the projector onto ``{x : |f^j x| = |x| for all j}``, an
    intersection of kernels of the PSD defects ``I - (f^j)^dagger f^j``; in
    dimension ``d`` the powers up to ``d`` already cut it out.
    """
    d = f.rows
    blocks, power = [], Matrix.identity(d)
    for _ in range(d):
        power = f @ power
        blocks.append(Matrix.identity(d) - power.dagger() @ power)
    if not blocks:
        return Matrix.identity(d)
    basis = nullspace(vstack(blocks))
    return orthogonal_projector(gram_schmidt_exact(basis), d)


def _gram_limit_exact(diag: SequentialDiagram) -> Matrix:
    a = diag.composite(0, diag.length)
    if diag.tail == REPEAT_LAST and diag.morphisms:
        p = unitary_part_projector(diag.morphisms[-1])
        return a.dagger() @ p @ a
    return a.dagger() @ a


def _gram_limit_cauchy(diag: SequentialDiagram, precision: int) -> Matrix:
    """Iterate ``G_n`` until consecutive terms agree entrywise within ``2^-precision``."""
    tol = mpmath.ldexp(1, -precision)
    seq_prev = None
    a = Matrix.identity(diag.objects[0])
    for n in range(diag.budget + 1):
        if n:
            a = _arrow(diag, n - 1) @ a
        g = a.dagger() @ a
        if seq_prev is not None:
            gap = max((abs((x - y).to_mpc()) for x, y in zip(g.entries, seq_prev.entries)),
                      default=0)
            if gap <= tol:
                # entries below the tolerance are limit zeros, not signal: round them away
                return _round_dyadic(g, precision // 2)
        seq_prev = g
    raise NoLimitWithinBudget(f"Gram matrices still moving after {diag.budget} arrows")


def _round_dyadic(g: Matrix, bits: int) -> Matrix:
    return Matrix(g.rows, g.cols, [Gauss(BigReal.from_fraction(e.re, bits).to_fraction(),
                                         BigReal.from_fraction(e.im, bits).to_fraction())
                                   for e in g.entries])


def epi_seq_colimit(diag: SequentialDiagram, precision: int = 40, method: str = "exact") -> ColimitResult:
    """Quotient of the first object by ``N = ker G`` with the limit inner product.

    ``method="exact"`` uses the closed-form tail limit; ``method="cauchy"``
    iterates the Gram matrices within the diagram's budget and reports the
    result as approximate (the stopping Gram stands in for the limit).
    """
    if diag.kind != EPIS:
        raise NotEpi("the quotient construction needs a chain of epis")
    if method == "exact":
        g = _gram_limit_exact(diag)
    elif method == "cauchy":
        g = _gram_limit_cauchy(diag, precision)
    else:
        raise ValueError(f"unknown method {method!r}")
    d1 = diag.objects[0]
    q_cols = column_space(g)          # complement of N = ker G: the row space of Hermitian G
    r = len(q_cols)
    q = hstack(q_cols) if q_cols else Matrix(d1, 0)
    # coordinates of the orthogonal projection onto span Q, which kills N
    coords = inverse(q.dagger() @ q) @ q.dagger() if r else Matrix(0, d1)
    h = q.dagger() @ g @ q if r else Matrix(0, 0)
    exact_legs = []
    for k in range(diag.length + 1):
        a = diag.composite(0, k)
        exact_legs.append(coords @ right_inverse(a) if r else Matrix(0, diag.objects[k]))
    root = matrix_sqrt_psd(h, precision) if r else ApproxMatrix(0, 0, [], precision)
    legs = [root @ c for c in exact_legs]
    return ColimitResult(
        apex=r, legs=legs, gram_limit=g, quotient_basis=q_cols, exact_legs=exact_legs,
        apex_gram=h, exact=(method == "exact"),
        meta={"kind": EPIS, "kernel_dimension": d1 - r, "method": method},
    )


def gram_monotone_check(diag: SequentialDiagram, steps: int | None = None) -> Report:
    """``G_n - G_{n+1}`` is PSD at every step, decided exactly."""
    steps = diag.length + 2 if steps is None else steps
    grams = gram_sequence(diag, steps)
    bad = None
    for n in range(steps):
        if not ldl_psd(grams[n] - grams[n + 1]).psd:
            bad = bad or {"index": n}
    report = Report("gram-monotone", steps=steps)
    report.add("decreasing", bad is None, bad)
    return report


def epi_cocone_check(result: ColimitResult, diag: SequentialDiagram) -> Report:
    report = Report("epi-colimit")
    bad = None
    for k, f in enumerate(diag.morphisms):
        if result.exact_legs[k + 1] @ f != result.exact_legs[k]:
            bad = bad or {"index": k}
    report.add("legs_form_cocone", bad is None, bad)
    h = result.apex_gram
    definite = h.rows == 0 or rank(h) == h.rows
    report.add("apex_inner_product_psd", ldl_psd(h).psd if h.rows else True)
    report.add("apex_inner_product_definite", definite)
    return report


# -- induced morphisms -------------------------------------------------------------------

@dataclass
class InducedMorphism:
    exact: Matrix              # quotient coordinates to quotient coordinates
    approx: ApproxMatrix       # orthonormal apex coordinates
    isometry: bool
    witness: Optional[Matrix]
    report: Report


def induced_morphism(diag_x: SequentialDiagram, diag_y: SequentialDiagram, nat: Sequence[Matrix],
                     precision: int = 40, tol_bits: int = 35) -> InducedMorphism:
    """``m_inf`` with ``m_inf c_n = d_n m_n`` between two epi-chain colimits.

    ``nat`` lists ``m_1, ..., m_{L+1}``; for repeated tails the last square
    must also commute with the repeated arrows.
    """
    if len(nat) != len(diag_x.objects) or len(diag_x.objects) != len(diag_y.objects):
        raise NotNatural("need one component per object of equal-length chains")
    for k, f in enumerate(diag_x.morphisms):
        if nat[k + 1] @ f != diag_y.morphisms[k] @ nat[k]:
            raise NotNatural(f"square {k} does not commute", index=k)
    if diag_x.tail != diag_y.tail:
        raise NotNatural("the two chains continue differently")
    if diag_x.tail == REPEAT_LAST and diag_x.morphisms:
        k = diag_x.length
        if nat[-1] @ diag_x.morphisms[-1] != diag_y.morphisms[-1] @ nat[-1]:
            raise NotNatural("the tail square does not commute", index=k)
    cx = epi_seq_colimit(diag_x, precision)
    cy = epi_seq_colimit(diag_y, precision)
    q = hstack(cx.quotient_basis) if cx.quotient_basis else Matrix(diag_x.objects[0], 0)
    m = cy.exact_legs[0] @ nat[0] @ q
    report = Report("induced-morphism", tolerance=f"2^-{tol_bits}")
    bad = None
    for k in range(len(nat)):
        if m @ cx.exact_legs[k] != cy.exact_legs[k] @ nat[k]:
            bad = bad or {"index": k}
    report.add("commutes_with_legs", bad is None, bad)
    rx = matrix_sqrt_psd(cx.apex_gram, precision) if cx.apex else ApproxMatrix(0, 0, [], precision)
    ry = matrix_sqrt_psd(cy.apex_gram, precision) if cy.apex else ApproxMatrix(0, 0, [], precision)
    approx = ry @ m @ _approx_inverse(rx)
    # isometry in quotient coordinates: m^dagger H_y m == H_x, decided exactly
    defect = cx.apex_gram - m.dagger() @ cy.apex_gram @ m
    witness = None
    if not defect.is_zero():
        witness = next(Matrix.identity(cx.apex).col(j) for j in range(cx.apex)
                       if not (defect @ Matrix.identity(cx.apex).col(j)).is_zero())
    isometric = witness is None
    approx_ok = approx.is_isometry(tol_bits) if cx.apex else True
    report.add("isometry_exact", isometric, None if witness is None else
               {"basis_vector": [str(e) for e in witness.entries]})
    if all(_is_dagger_mono(mk) for mk in nat):
        report.add("isometry_within_tolerance", approx_ok)
    else:
        report.skip("isometry_within_tolerance", "some component is not dagger monic",
                    observed=approx_ok)
    return InducedMorphism(m, approx, isometric and approx_ok, witness, report)


def _is_dagger_mono(m: Matrix) -> bool:
    return m.dagger() @ m == Matrix.identity(m.cols)


def _approx_inverse(a: ApproxMatrix) -> ApproxMatrix:
    n = a.rows
    if n == 0:
        return a
    with mpmath.workprec(working_precision(a.precision)):
        mat = mpmath.matrix(n, n)
        for i in range(n):
            for j in range(n):
                mat[i, j] = a[i, j]
        inv = mat ** -1
        return ApproxMatrix(n, n, [mpmath.mpc(inv[i, j]) for i in range(n) for j in range(n)],
                            a.precision)


# -- biproducts preserve bounded colimits ---------------------------------------------------

def biproduct_preservation_check(x: int, diag: SequentialDiagram, bound: Cocone,
                                 precision: int = 40, tol_bits: int = 35) -> Report:
    """Compare ``colim(X + Y_n)`` with ``X + colim Y_n`` through the structure maps."""
    report = Report("biproduct-preservation", x=x, tolerance=f"2^-{tol_bits}")
    ident = Matrix.identity(x)
    sdiag = SequentialDiagram(tuple(x + d for d in diag.objects),
                              tuple(ident.dsum(f) for f in diag.morphisms), MONOS)
    sbound = Cocone(x + bound.apex, [ident.dsum(a) for a in bound.legs])
    left = bounded_seq_colimit(sdiag, sbound, precision)
    right = bounded_seq_colimit(diag, bound, precision)
    top = len(diag.objects) - 1
    yl = diag.objects[-1]
    # r1, r2 mediate the cocones p1 and c_n p2; s1, s2 are legs composed with i1, i2
    r1 = mediating_morphism(left, sdiag, Cocone(x, [p1(x, d) for d in diag.objects]))
    r2 = mediating_morphism(left, sdiag, Cocone(right.apex, [c @ p2(x, d) for c, d in
                                                             zip(right.exact_legs, diag.objects)]))
    s1 = left.exact_legs[0] @ i1(x, diag.objects[0])
    s2 = left.exact_legs[top] @ i2(x, yl) @ right_inverse(right.exact_legs[top])
    report.add("r1_s1_identity", r1 @ s1 == Matrix.identity(x))
    report.add("r2_s2_identity", r2 @ s2 == Matrix.identity(right.apex))
    report.add("r1_s2_zero", (r1 @ s2).is_zero())
    report.add("r2_s1_zero", (r2 @ s1).is_zero())
    comparison = vstack([r1, r2])
    report.add("comparison_exactly_unitary",
               comparison.dagger() @ comparison == Matrix.identity(comparison.cols)
               and comparison @ comparison.dagger() == Matrix.identity(comparison.rows))
    approx = ApproxMatrix.from_exact(comparison, precision)
    report.add("comparison_unitary_within_tolerance", approx.is_unitary(tol_bits))
    report.meta["dimensions"] = [left.apex, x + right.apex]
    return report
