"""Text syntax for polynomials, forms and vector fields.

Polynomials::

    3/2*x^2*y - z

Forms multiply a polynomial coefficient with a wedge of differentials; ``dX``
is the differential of coordinate ``X`` and ``^`` between differentials is
the wedge::

    x * dy^dz + du^dx

Vector fields use ``d/dX`` for the coordinate field of ``X``::

    x * d/dy - y * d/dx

Parentheses group as usual.  ``/`` only appears inside rational literals.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from twoplectic.errors import RejectedInput
from twoplectic.exterior import Chart, DifferentialForm, VectorField, wedge
from twoplectic.polyring import Polynomial


class ParseError(RejectedInput):
    def __init__(self, message, text="", pos=0):
        self.text = text
        self.pos = pos
        self.column = pos + 1
        super().__init__(f"{message} at column {pos + 1}: {text!r}")


_TOKEN = re.compile(
    r"\s*(?:(?P<vec>d/d[A-Za-z_]\w*)|(?P<num>\d+)|(?P<ident>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text):
    pos = 0
    tokens = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError("unexpected character", text, pos)
        start = m.start(m.lastgroup)
        tokens.append((m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, chart: Chart):
        self.text = text
        self.chart = chart
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, self.text, tok[2])

    def parse(self):
        value = self.expr()
        if self.peek()[0] != "end":
            self.error("unexpected token")
        return value

    def expr(self):
        kind, val, _ = self.peek()
        negate = False
        if kind == "op" and val in "+-":
            self.take()
            negate = val == "-"
        value = self.term()
        if negate:
            value = -value
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "+-":
                tok = self.take()
                rhs = self.term()
                value = self.combine(value, rhs, val, tok)
            else:
                return value

    def combine(self, a, b, op, tok):
        a, b = self.promote(a, b, tok)
        try:
            return a + b if op == "+" else a - b
        except RejectedInput as exc:
            self.error(str(exc), tok)

    def promote(self, a, b, tok):
        if isinstance(a, Polynomial) and isinstance(b, DifferentialForm):
            a = DifferentialForm.function(self.chart, a)
        if isinstance(b, Polynomial) and isinstance(a, DifferentialForm):
            b = DifferentialForm.function(self.chart, b)
        if type(a) is not type(b):
            self.error("cannot add a {} and a {}".format(_kind(a), _kind(b)), tok)
        return a, b

    def term(self):
        value = self.power()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            tok = self.take()
            rhs = self.power()
            value = self.multiply(value, rhs, tok)
        return value

    def multiply(self, a, b, tok):
        if isinstance(a, DifferentialForm) and isinstance(b, DifferentialForm):
            return wedge(a, b)
        if isinstance(a, (DifferentialForm, VectorField)) and isinstance(b, Polynomial):
            return a * b
        if isinstance(a, Polynomial) and isinstance(b, (Polynomial, DifferentialForm, VectorField)):
            return b * a if not isinstance(b, Polynomial) else a * b
        self.error("cannot multiply a {} by a {}".format(_kind(a), _kind(b)), tok)

    def power(self):
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return -self.power()
        value = self.atom()
        while self.peek()[0] == "op" and self.peek()[1] == "^":
            tok = self.take()
            if isinstance(value, DifferentialForm):
                rhs = self.atom()
                if not isinstance(rhs, DifferentialForm):
                    self.error("expected a differential after '^'", tok)
                value = wedge(value, rhs)
            elif isinstance(value, Polynomial):
                k, v, _ = self.take()
                if k != "num":
                    self.error("expected an integer exponent", tok)
                value = value ** int(v)
            else:
                self.error("'^' applied to a vector field", tok)
        return value

    def atom(self):
        tok = self.take()
        kind, val, pos = tok
        chart = self.chart
        if kind == "num":
            num = int(val)
            if self.peek()[0] == "op" and self.peek()[1] == "/":
                self.take()
                k, v, p = self.take()
                if k != "num" or int(v) == 0:
                    self.error("expected a nonzero integer denominator", (k, v, p))
                return chart.const(Fraction(num, int(v)))
            return chart.const(num)
        if kind == "ident":
            if val in chart.names:
                return chart.coord(val)
            if val.startswith("d") and val[1:] in chart.names:
                return DifferentialForm.basis(chart, (chart.index(val[1:]),))
            self.error(f"unknown coordinate {val!r}", tok)
        if kind == "vec":
            name = val[3:]
            if name not in chart.names:
                self.error(f"unknown coordinate {name!r}", tok)
            return VectorField.coordinate(chart, name)
        if kind == "op" and val == "(":
            value = self.expr()
            if self.take()[1] != ")":
                self.error("expected ')'", tok)
            return value
        self.error("unexpected token", tok)


def _kind(v):
    if isinstance(v, Polynomial):
        return "function"
    if isinstance(v, DifferentialForm):
        return f"{v.degree}-form"
    return "vector field"


def _chart_for(names) -> Chart:
    return names if isinstance(names, Chart) else Chart(tuple(names))


def parse_polynomial(text: str, names: Sequence[str] | Chart) -> Polynomial:
    chart = _chart_for(names)
    value = _Parser(str(text), chart).parse()
    if isinstance(value, DifferentialForm) and value.degree == 0:
        value = value.as_function()
    if not isinstance(value, Polynomial):
        raise ParseError(f"expected a polynomial, got a {_kind(value)}", str(text), 0)
    return value


def parse_form(text: str, chart: Chart, degree: int | None = None) -> DifferentialForm:
    text = str(text)
    value = _Parser(text, chart).parse()
    if isinstance(value, Polynomial):
        if value.is_zero() and degree is not None:
            return DifferentialForm.zero(chart, degree)
        value = DifferentialForm.function(chart, value)
    if not isinstance(value, DifferentialForm):
        raise ParseError(f"expected a differential form, got a {_kind(value)}", text, 0)
    if degree is not None and value.degree != degree:
        if value.is_zero():
            return DifferentialForm.zero(chart, degree)
        raise ParseError(f"expected a {degree}-form, got a {value.degree}-form", text, 0)
    return value


def parse_vector_field(text: str, chart: Chart) -> VectorField:
    text = str(text)
    value = _Parser(text, chart).parse()
    if isinstance(value, Polynomial) and value.is_zero():
        return VectorField.zero(chart)
    if not isinstance(value, VectorField):
        raise ParseError(f"expected a vector field, got a {_kind(value)}", text, 0)
    return value
