"""The matrix model seen through a narrow interface, so checks can run on mutants.

Every axiom check talks to a :class:`MatrixModel`; a mutant overrides one
method and must be caught by the check for the axiom it breaks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from ..colimits import bounded_seq_colimit
from ..fcon.generators import (random_contraction, random_epi_contraction, random_permutation,
                               random_unitary, rotation)
from ..fcon.matrix import Matrix, i1, i2, p1, p2
from ..fcon.ops import (dagger_cokernel_exact, dagger_equaliser, is_contraction,
                        orthogonal_kernel_basis, positivity_witness)
from ..scalars import Gauss


class MatrixModel:
    """Finite-dimensional Hilbert spaces over Q(i) and contractions, as matrices."""

    name = "fcon"
    zero_dim = 0
    unit_dim = 1

    def identity(self, n: int) -> Matrix:
        return Matrix.identity(n)

    def dagger(self, a: Matrix) -> Matrix:
        return a.dagger()

    def compose(self, g: Matrix, f: Matrix) -> Matrix:
        return g @ f

    def tensor(self, a: Matrix, b: Matrix) -> Matrix:
        return a.tensor(b)

    def i1(self, x: int, y: int) -> Matrix:
        return i1(x, y)

    def i2(self, x: int, y: int) -> Matrix:
        return i2(x, y)

    def p1(self, x: int, y: int) -> Matrix:
        return p1(x, y)

    def p2(self, x: int, y: int) -> Matrix:
        return p2(x, y)

    def is_contraction(self, a: Matrix) -> bool:
        return is_contraction(a)

    def is_dagger_mono(self, a: Matrix) -> bool:
        return self.compose(self.dagger(a), a) == self.identity(a.cols)

    def is_dagger_epi(self, a: Matrix) -> bool:
        return self.compose(a, self.dagger(a)) == self.identity(a.rows)

    def equaliser(self, f: Matrix, g: Matrix, precision: int):
        return dagger_equaliser(f, g, precision)

    def cokernel(self, m: Matrix) -> Matrix:
        return dagger_cokernel_exact(m)

    def kernel_basis(self, a: Matrix) -> list:
        return orthogonal_kernel_basis(a)

    def positivity_witness(self, x: Matrix, y: Matrix):
        return positivity_witness(x, y)

    def colimit(self, diag, bound, precision: int):
        return bounded_seq_colimit(diag, bound, precision)

    def square_isometry_candidates(self, rng: random.Random, n: int, count: int) -> list:
        out = [self.identity(n), random_permutation(rng, n)]
        out += [random_unitary(rng, n) for _ in range(max(0, count - 2))]
        return out


@dataclass
class Fragment:
    """A finite test universe: object dimensions, generator morphisms and a sampling budget."""

    objects: list = field(default_factory=lambda: [0, 1, 2, 3])
    generators: list = field(default_factory=list)
    sample_budget: int = 12
    seed: int = 0

    def rng(self, salt: str) -> random.Random:
        # one stream per check, so adding a check never shifts another's samples
        return random.Random(f"{self.seed}:{salt}")

    def nonzero_objects(self) -> list:
        return [d for d in self.objects if d > 0] or [1]

    def to_json(self) -> dict:
        from ..serialize import matrix_to_json
        return {"objects": [str(d) for d in self.objects],
                "generators": [matrix_to_json(g) for g in self.generators],
                "sampleBudget": str(self.sample_budget), "seed": str(self.seed)}


def corner_cases(n: int, m: int | None = None) -> list:
    """The fixed adversarial list for ``m x n`` maps.

    Zero, the identity (or its truncation), a cyclic permutation, a real
    3-4-5 rotation, the same rotation with a unit phase, and the boundary
    contraction with every entry ``1/max(n, m)`` (norm exactly one on square
    shapes, where it is the rank-one averaging projector).
    """
    m = n if m is None else m
    out = [Matrix.zero(m, n)]
    out.append(Matrix(m, n, [Gauss(1 if i == j else 0) for i in range(m) for j in range(n)]))
    if n == m and n > 1:
        out.append(Matrix(n, n, [Gauss(1 if i == (j + 1) % n else 0)
                                 for i in range(n) for j in range(n)]))
        out.append(rotation(n, 0, 1, Fraction(3, 5), Fraction(4, 5)))
        out.append(rotation(n, 0, 1, Fraction(3, 5), Fraction(4, 5), Gauss(0, 1)))
    if n and m:
        k = max(n, m)
        out.append(Matrix(m, n, [Gauss(Fraction(1, k))] * (m * n)))
    return out


def default_fragment(seed: int = 0) -> Fragment:
    rng = random.Random(f"fragment:{seed}")
    gens = []
    for d in (1, 2, 3):
        gens += corner_cases(d)
        gens.append(random_contraction(rng, d, d))
    gens.append(random_epi_contraction(rng, 1, 2))
    return Fragment(objects=[0, 1, 2, 3], generators=gens, sample_budget=12, seed=seed)
