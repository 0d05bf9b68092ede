import random
from fractions import Fraction

import pytest

from fconkit.colimits import (EPIS, MONOS, REPEAT_LAST, Cocone, SequentialDiagram,
                              biproduct_preservation_check, bounded_seq_colimit, cocone_from_last,
                              epi_cocone_check, epi_seq_colimit, gram_monotone_check,
                              induced_morphism, mediating_morphism, random_bounded_diagram,
                              random_test_cocone, universal_property_check,
                              unitary_part_projector)
from fconkit.errors import DimensionMismatch, NotCocone, NotEpi, NotMono, NotNatural
from fconkit.fcon import Matrix
from fconkit.scalars import Gauss

half = Fraction(1, 2)


def half_diag_chain(tail=REPEAT_LAST):
    return SequentialDiagram.chain([Matrix.diag([1, half])], EPIS, tail=tail)


def test_diag_chain_keeps_one_dimension():
    res = epi_seq_colimit(half_diag_chain())
    assert res.apex == 1
    assert res.gram_limit == Matrix.diag([1, 0])
    assert res.apex_gram == Matrix.identity(1)
    assert epi_cocone_check(res, half_diag_chain()).passed


def test_cauchy_method_agrees():
    res = epi_seq_colimit(half_diag_chain(), precision=40, method="cauchy")
    assert res.apex == 1


def test_strict_contraction_chain_vanishes():
    res = epi_seq_colimit(SequentialDiagram.chain([Matrix.scalar(half)], EPIS, tail=REPEAT_LAST))
    assert res.apex == 0


def test_identity_chain_has_no_null_space():
    diag = SequentialDiagram.chain([Matrix.identity(2)] * 3, EPIS)
    res = epi_seq_colimit(diag)
    assert res.apex == 2 and res.gram_limit == Matrix.identity(2)


def test_gram_sequence_is_decreasing():
    assert gram_monotone_check(half_diag_chain(), 10).passed


def test_unitary_part_of_rotation_block():
    f = Matrix.from_rows([[0, 1, 0], [1, 0, 0], [0, 0, half]])
    assert unitary_part_projector(f) == Matrix.diag([1, 1, 0])


def test_chain_shape_and_kind_checks():
    with pytest.raises(DimensionMismatch):
        SequentialDiagram((1, 2), (Matrix.identity(2),), MONOS)
    with pytest.raises(NotMono):
        SequentialDiagram.chain([Matrix.row([1, 0])], MONOS)
    with pytest.raises(NotEpi):
        SequentialDiagram.chain([Matrix.column([1, 0])], EPIS)


def test_not_cocone_reports_index():
    diag = SequentialDiagram.chain([Matrix.column([1, 0]), Matrix.identity(2)], MONOS)
    legs = [Matrix.column([0, 1]), Matrix.identity(2), Matrix.identity(2)]
    with pytest.raises(NotCocone) as info:
        Cocone(2, legs).check(diag)
    assert info.value.index == 0


def test_bounded_colimit_and_mediating_map():
    diag = SequentialDiagram.chain([Matrix.column([1, 0])], MONOS)
    bound = cocone_from_last(diag, Matrix.from_rows([[1, 0], [0, 1], [0, 0]]))
    res = bounded_seq_colimit(diag, bound)
    assert res.apex == 2 and res.meta["union_dimension"] == 2
    test = cocone_from_last(diag, Matrix.row([half, half]))
    m = mediating_morphism(res, diag, test)
    assert m == Matrix.row([half, half])
    assert universal_property_check(res, diag, [test]).passed


def test_random_bounded_diagrams():
    rng = random.Random(9)
    for _ in range(10):
        diag, bound = random_bounded_diagram(rng)
        res = bounded_seq_colimit(diag, bound)
        cocones = [random_test_cocone(rng, diag) for _ in range(3)]
        assert universal_property_check(res, diag, cocones).passed
        assert biproduct_preservation_check(2, diag, bound).passed


def test_induced_morphism_unimodular_diagonal():
    u = Matrix.diag([Gauss(Fraction(3, 5), Fraction(4, 5)), Gauss(0, 1)])
    diag = half_diag_chain()
    ind = induced_morphism(diag, diag, [u, u])
    assert ind.isometry and ind.report.passed
    assert ind.exact == Matrix.scalar(Gauss(Fraction(3, 5), Fraction(4, 5)))


def test_induced_morphism_contraction_is_not_isometry():
    diag = half_diag_chain()
    m = Matrix.diag([half, half])
    ind = induced_morphism(diag, diag, [m, m])
    assert not ind.isometry
    assert ind.report.status_of("isometry_within_tolerance") == "skipped"


def test_induced_morphism_rejects_non_natural():
    diag = half_diag_chain()
    swap = Matrix.from_rows([[0, 1], [1, 0]])
    with pytest.raises(NotNatural):
        induced_morphism(diag, diag, [swap, Matrix.identity(2)])
