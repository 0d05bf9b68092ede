"""JSON encodings for matrices, fractions, diagrams and reports.

Integers are emitted as decimal strings so that big numerators survive any
JSON consumer; the readers accept plain JSON integers as well.  Every
reader raises :class:`ParseError` carrying the line and column of the
offending value when the input came from text.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .errors import ParseError
from .fcon.matrix import Matrix
from .scalars import Gauss

SCHEMA_VERSION = "1"


# -- located JSON ---------------------------------------------------------------------------

class _Located:
    """Side table from ``id`` of parsed containers to their (line, column)."""

    def __init__(self, text: str):
        self.text = text
        self.positions: dict[int, tuple[int, int]] = {}
        self.keep: list = []   # keeps ids stable while the table is alive

    def where(self, offset: int) -> tuple[int, int]:
        line = self.text.count("\n", 0, offset) + 1
        col = offset - (self.text.rfind("\n", 0, offset) + 1) + 1
        return line, col

    def record(self, value, offset: int):
        self.positions[id(value)] = self.where(offset)
        self.keep.append(value)

    def lookup(self, value):
        return self.positions.get(id(value), (None, None))


def loads_located(text: str, path: str | None = None):
    """Parse JSON text; return ``(value, located)`` for later error positions."""
    located = _Located(text)
    decoder = json.JSONDecoder()
    parse_object, parse_array = decoder.parse_object, decoder.parse_array

    def on_object(s_and_end, strict, scan_once, object_hook, object_pairs_hook, memo=None,
                  _w=json.decoder.WHITESPACE.match):
        start = s_and_end[1] - 1
        value, end = parse_object(s_and_end, strict, scan_once, object_hook, object_pairs_hook,
                                  memo, _w)
        located.record(value, start)
        return value, end

    def on_array(s_and_end, scan_once, _w=json.decoder.WHITESPACE.match):
        start = s_and_end[1] - 1
        value, end = parse_array(s_and_end, scan_once, _w)
        located.record(value, start)
        return value, end

    decoder.parse_object = on_object
    decoder.parse_array = on_array
    decoder.scan_once = json.scanner.py_make_scanner(decoder)
    try:
        value = decoder.decode(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno, path) from None
    return value, located


def load_file(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read input: {exc.strerror}", path=path) from None
    return loads_located(text, path)


class Reader:
    """Schema readers that attach source positions to their errors."""

    def __init__(self, located: _Located | None = None, path: str | None = None):
        self.located = located
        self.path = path

    def fail(self, message: str, near=None):
        line, col = self.located.lookup(near) if self.located is not None else (None, None)
        raise ParseError(message, line, col, self.path)

    def integer(self, value, near=None) -> int:
        if isinstance(value, bool):
            self.fail("expected an integer, got a boolean", near)
        if isinstance(value, int):
            return value
        if isinstance(value, str):
            try:
                return int(value.strip(), 10)
            except ValueError:
                pass
        self.fail(f"expected an integer or decimal string, got {value!r}", near)

    def rational(self, value, near=None) -> Fraction:
        if isinstance(value, list) and len(value) == 2:
            num, den = (self.integer(v, value) for v in value)
            if den == 0:
                self.fail("zero denominator", value)
            return Fraction(num, den)
        if isinstance(value, (int, str)) and not isinstance(value, bool):
            try:
                return Fraction(value) if isinstance(value, int) else Fraction(value.strip())
            except (ValueError, ZeroDivisionError):
                pass
        self.fail(f"expected a rational, got {value!r}", near)

    def gauss(self, value, near=None) -> Gauss:
        if not isinstance(value, list) or len(value) != 4:
            self.fail("a Gaussian rational is four decimal-string integers", value if
                      isinstance(value, list) else near)
        rn, rd, im_n, im_d = (self.integer(v, value) for v in value)
        if rd <= 0 or im_d <= 0:
            self.fail("denominators must be positive", value)
        return Gauss(Fraction(rn, rd), Fraction(im_n, im_d))

    def matrix(self, value, near=None) -> Matrix:
        if not isinstance(value, dict):
            self.fail("a matrix is an object with rows, cols and entries", near)
        for key in ("rows", "cols", "entries"):
            if key not in value:
                self.fail(f"matrix is missing {key!r}", value)
        rows, cols = self.integer(value["rows"], value), self.integer(value["cols"], value)
        if rows < 0 or cols < 0:
            self.fail("negative dimension", value)
        entries = value["entries"]
        if not isinstance(entries, list) or len(entries) != rows * cols:
            self.fail(f"expected {rows * cols} entries", value)
        return Matrix(rows, cols, [self.gauss(e, entries) for e in entries])

    def fraction(self, value, near=None):
        from .localisation import Fraction as LocFraction, InvalidDenominator
        from .errors import NotContraction
        if not isinstance(value, dict) or "numerator" not in value or "denominator" not in value:
            self.fail("a fraction has numerator and denominator", value if isinstance(value, dict)
                      else near)
        try:
            return LocFraction(self.matrix(value["numerator"], value),
                               self.gauss(value["denominator"], value))
        except (InvalidDenominator, NotContraction) as exc:
            self.fail(str(exc), value)

    def diagram(self, value):
        from .colimits import Cocone, SequentialDiagram, EPIS, MONOS, IDENTITY, REPEAT_LAST
        if not isinstance(value, dict):
            self.fail("a diagram is a JSON object", value)
        kind = value.get("kind", MONOS)
        if kind not in (MONOS, EPIS):
            self.fail(f"unknown diagram kind {kind!r}", value)
        arrows = value.get("morphisms")
        if not isinstance(arrows, list) or not arrows:
            self.fail("a diagram needs a non-empty morphisms list", value)
        mats = [self.matrix(m, arrows) for m in arrows]
        objects = value.get("objects")
        if objects is None:
            objects = [mats[0].cols] + [m.rows for m in mats]
        elif isinstance(objects, list):
            objects = [self.integer(o, objects) for o in objects]
        else:
            self.fail("objects must be a list", value)
        tail = value.get("tail", REPEAT_LAST if kind == EPIS and mats[-1].is_square() else IDENTITY)
        stab = value.get("stabilisation")
        diag = SequentialDiagram(tuple(objects), tuple(mats), kind,
                                 None if stab is None else self.integer(stab, value),
                                 self.integer(value.get("budget", 64), value), tail)
        bound = None
        if value.get("bound") is not None:
            b = value["bound"]
            if not isinstance(b, dict) or "legs" not in b:
                self.fail("a bound is a cocone with legs", value)
            legs = [self.matrix(m, b["legs"]) for m in b["legs"]]
            apex = self.integer(b.get("apex", legs[0].rows if legs else 0), b)
            bound = Cocone(apex, legs)
        return diag, bound


# -- writers ------------------------------------------------------------------------------

def gauss_to_json(a) -> list:
    return Gauss.coerce(a).to_json()


def matrix_to_json(m: Matrix) -> dict:
    return {"rows": str(m.rows), "cols": str(m.cols), "entries": [e.to_json() for e in m.entries]}


def matrix_from_json(data) -> Matrix:
    return Reader().matrix(data)


def fraction_to_json(f) -> dict:
    return f.to_json()


def fraction_from_json(data):
    return Reader().fraction(data)


def diagram_to_json(diag, bound=None) -> dict:
    out = {"kind": diag.kind, "objects": [str(n) for n in diag.objects],
           "morphisms": [matrix_to_json(f) for f in diag.morphisms],
           "budget": str(diag.budget), "tail": diag.tail}
    if diag.stabilisation is not None:
        out["stabilisation"] = str(diag.stabilisation)
    if bound is not None:
        out["bound"] = {"apex": str(bound.apex), "legs": [matrix_to_json(c) for c in bound.legs]}
    return out


def diagram_from_json(data):
    return Reader().diagram(data)


def stringify_ints(value: Any):
    """Recursively render every integer as a decimal string; booleans stay booleans."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return [str(value.numerator), str(value.denominator)]
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, dict):
        return {str(k): stringify_ints(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [stringify_ints(v) for v in value]
    if hasattr(value, "to_json"):
        return stringify_ints(value.to_json())
    return str(value)


def dumps_report(report: dict) -> str:
    return json.dumps(stringify_ints(report), indent=2, sort_keys=False, ensure_ascii=False) + "\n"


def loads_report(text: str) -> dict:
    value, _ = loads_located(text)
    if not isinstance(value, dict) or "schema" not in value:
        raise ParseError("not a report: missing schema version")
    if value["schema"] != SCHEMA_VERSION:
        raise ParseError(f"unsupported report schema {value['schema']!r}")
    return value
