"""Deliberately broken models, one per axiom, plus two whole-model mutations.

Each mutant changes a single method of :class:`MatrixModel`; the axiom check
it targets has to fail on it with a serialisable witness.
"""

from __future__ import annotations

from ..fcon.matrix import Matrix, inverse
from ..fcon.ops import dagger_kernel
from ..fcon.psd import ldl_psd
from ..scalars import Gauss
from .model import MatrixModel


class BigZeroObject(MatrixModel):
    """The would-be zero object is one-dimensional."""
    name = "mutant-zero-object"
    zero_dim = 1


class CollapsedSecondInjection(MatrixModel):
    name = "mutant-jointly-epic"

    def i2(self, x, y):
        return Matrix.zero(x + y, y)


class DeadSecondProjection(MatrixModel):
    name = "mutant-nondegenerate"

    def p2(self, x, y):
        return Matrix.zero(y, x + y)


class WideUnit(MatrixModel):
    """Tensor unit of dimension two, so the unit has three dagger subobjects."""
    name = "mutant-dagger-simple"
    unit_dim = 2


class LossyTensor(MatrixModel):
    """Tensoring forgets the last coordinate, so one basis pair becomes zero."""
    name = "mutant-separator"

    def tensor(self, a, b):
        t = a.tensor(b)
        if t.cols != 1 or t.rows == 0:
            return t
        return Matrix(t.rows, 1, list(t.entries[:-1]) + [Gauss(0)])


class OneSidedEqualiser(MatrixModel):
    """Returns the kernel of the first map instead of the equaliser."""
    name = "mutant-equalisers"

    def equaliser(self, f, g, precision):
        return dagger_kernel(f, precision)


class TrivialCokernel(MatrixModel):
    name = "mutant-kernels"

    def cokernel(self, m):
        return Matrix(0, m.rows)


class ScalingPositivity(MatrixModel):
    """Accepts any ``y = f x`` as positive-equivalent, ignoring the norms."""
    name = "mutant-positivity"

    def positivity_witness(self, x, y):
        return y @ x.dagger() @ inverse(x @ x.dagger())


class LiteralUnionColimit(MatrixModel):
    """Takes the bound's apex as the colimit, legs included."""
    name = "mutant-colimits"

    def colimit(self, diag, bound, precision):
        res = super().colimit(diag, bound, precision)
        res.apex = bound.apex
        res.exact_legs = list(bound.legs)
        res.apex_gram = Matrix.identity(bound.apex)
        return res


class ShiftModel(MatrixModel):
    """Behaves like an infinite object: the truncated shift passes as dagger monic."""
    name = "mutant-dagger-finite"

    def is_dagger_mono(self, a):
        # only the first n-1 columns are tested, as if a further basis vector existed
        n = a.cols
        if n < 2:
            return super().is_dagger_mono(a)
        g = a.dagger() @ a
        return all(g[i, j] == (1 if i == j else 0) for i in range(n - 1) for j in range(n - 1))

    def square_isometry_candidates(self, rng, n, count):
        shift = Matrix(n, n, [Gauss(1 if i == j + 1 else 0) for i in range(n) for j in range(n)])
        return super().square_isometry_candidates(rng, n, count) + [shift]


class DoubledDisk(MatrixModel):
    """Scalars of modulus up to sqrt 2 count as contractions: ``2 - A^dagger A >= 0``."""
    name = "mutant-disk"

    def is_contraction(self, a):
        return ldl_psd(Matrix.identity(a.cols).scale(2) - a.dagger() @ a).psd


class TransposeDagger(MatrixModel):
    """Dagger without complex conjugation."""
    name = "mutant-transpose-dagger"

    def dagger(self, a):
        return a.transpose()


AXIOM_MUTANTS = {
    "1": BigZeroObject,
    "2": CollapsedSecondInjection,
    "3": DeadSecondProjection,
    "4": WideUnit,
    "5": LossyTensor,
    "6": OneSidedEqualiser,
    "7": TrivialCokernel,
    "8": ScalingPositivity,
    "9": LiteralUnionColimit,
    "10": ShiftModel,
}

MODEL_MUTANTS = {
    "disk": DoubledDisk,
    "transpose-dagger": TransposeDagger,
}
