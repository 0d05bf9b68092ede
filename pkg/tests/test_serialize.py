from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fconkit.colimits import EPIS, REPEAT_LAST, SequentialDiagram
from fconkit.errors import ParseError
from fconkit.fcon import Matrix
from fconkit.localisation import frac
from fconkit.scalars import Gauss
from fconkit.serialize import (diagram_from_json, diagram_to_json, dumps_report, fraction_from_json,
                               fraction_to_json, loads_located, loads_report, matrix_from_json,
                               matrix_to_json, stringify_ints)

small = st.fractions(max_denominator=9).filter(lambda q: abs(q) < 5)


@given(st.lists(st.builds(Gauss, small, small), min_size=6, max_size=6))
def test_matrix_round_trip(entries):
    m = Matrix(2, 3, entries)
    data = matrix_to_json(m)
    assert data["rows"] == "2" and data["cols"] == "3"
    assert matrix_from_json(data) == m


def test_fraction_round_trip():
    p = frac(Matrix.column([Fraction(1, 3), Fraction(2, 3)]), Gauss(0, Fraction(1, 2)))
    q = fraction_from_json(fraction_to_json(p))
    assert q.matrix == p.matrix and q.denominator == p.denominator


def test_diagram_round_trip():
    d = SequentialDiagram.chain([Matrix.diag([1, Fraction(1, 2)])], EPIS, tail=REPEAT_LAST)
    back, bound = diagram_from_json(diagram_to_json(d))
    assert back == d and bound is None


def test_parse_error_carries_position():
    text = '{"rows": "1", "cols": "1",\n "entries": [["1", "2", "0"]]}'
    data, located = loads_located(text, "m.json")
    from fconkit.serialize import Reader
    with pytest.raises(ParseError) as info:
        Reader(located, "m.json").matrix(data)
    assert info.value.line == 2


def test_syntax_error_position():
    with pytest.raises(ParseError) as info:
        loads_located('{"a": [1,\n 2,,]}')
    assert info.value.line == 2


def test_stringify_ints():
    out = stringify_ints({"n": 10 ** 40, "ok": True, "q": Fraction(1, 3), "xs": (1, None)})
    assert out == {"n": str(10 ** 40), "ok": True, "q": ["1", "3"], "xs": ["1", None]}


def test_report_schema():
    text = dumps_report({"schema": "1", "status": "pass", "result": {"n": 3}})
    assert loads_report(text)["result"]["n"] == "3"
    with pytest.raises(ParseError):
        loads_report('{"schema": "99"}')
