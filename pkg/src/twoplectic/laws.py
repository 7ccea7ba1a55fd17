"""Randomized exact checks of the Cartan calculus identities."""

from __future__ import annotations

import random

from twoplectic.exterior import (
    Chart,
    DifferentialForm,
    VectorField,
    ext_d,
    interior,
    lie_derivative,
    random_field,
    random_form,
    vf_bracket,
    wedge,
)
from twoplectic.lie2 import tuple_rng
from twoplectic.report import SuiteReport

LAWS = (
    "d(d a) = 0",
    "a^b = (-1)^(kl) b^a",
    "d(a^b) = da^b + (-1)^k a^db",
    "i_X(a^b) = i_X a^b + (-1)^k a^i_X b",
    "i_X i_X a = 0",
    "Cartan: d i_X a + i_X d a = L_X a (coordinate formula)",
    "L_[X,Y] = L_X L_Y - L_Y L_X",
    "i_[X,Y] = L_X i_Y - i_Y L_X",
    "Jacobi for [X,Y]",
)


def coordinate_lie_derivative(X: VectorField, a: DifferentialForm) -> DifferentialForm:
    """L_X a from the coordinate formula, without Cartan's formula.

    (L_X a) = sum_I X(a_I) dx^I + sum_I a_I sum_m dx^i1 ^ .. ^ d(X^im) ^ .. ^ dx^ik
    """
    chart = a.chart
    out = DifferentialForm.zero(chart, a.degree)
    dX = [ext_d(DifferentialForm.function(chart, c)) for c in X.components]
    for I, c in a.components.items():
        out = out + DifferentialForm(chart, a.degree, {I: X(c)})
        for m in range(len(I)):
            piece = DifferentialForm.function(chart, c)
            for j, i in enumerate(I):
                piece = wedge(piece, dX[i] if j == m else DifferentialForm.basis(chart, (i,)))
            out = out + piece
    return out


def random_chart(rng: random.Random, max_dim: int = 5) -> Chart:
    n = rng.randint(1, max_dim)
    return Chart(tuple(f"x{i}" for i in range(n)))


def check_exterior_laws(count: int, seed: int = 0, chart: Chart | None = None, max_dim: int = 5,
                        max_degree: int = 3) -> SuiteReport:
    """Evaluate the Cartan calculus laws on ``count`` random tuples.

    Each tuple draws two forms and two vector fields, on ``chart`` or on a
    fresh random chart of dimension <= max_dim.  Coefficients have degree
    <= max_degree.
    """
    report = SuiteReport("exterior-laws")
    for name in LAWS:
        report.equation(name)
    kw = {"max_degree": max_degree, "max_terms": 3, "max_coeff": 100}
    forms = fields = 0
    for t in range(count):
        rng = tuple_rng(seed, t)
        ch = chart or random_chart(rng, max_dim)
        k = rng.randint(0, ch.dim)
        l = rng.randint(0, ch.dim)
        a = random_form(rng, ch, k, **kw)
        b = random_form(rng, ch, l, **kw)
        X = random_field(rng, ch, **kw)
        Y = random_field(rng, ch, **kw)
        Z = random_field(rng, ch, **kw)
        forms += 2
        fields += 3
        sign = -1 if (k * l) & 1 else 1
        sk = -1 if k & 1 else 1

        def inputs():
            return {"chart": str(ch), "a": a.to_text(), "b": b.to_text(), "X": X.to_text(), "Y": Y.to_text()}

        _law(report, LAWS[0], lambda: ext_d(ext_d(a)).is_zero(), t, inputs)
        _law(report, LAWS[1], lambda: wedge(a, b) == wedge(b, a) * sign, t, inputs)
        _law(report, LAWS[2],
             lambda: ext_d(wedge(a, b)) == wedge(ext_d(a), b) + wedge(a, ext_d(b)) * sk, t, inputs)
        if k > 0:
            _law(report, LAWS[3],
                 lambda: interior(X, wedge(a, b)) == wedge(interior(X, a), b) + _iw(a, X, b, sk), t, inputs)
        else:
            # i_X of a function vanishes, so the law reads i_X(f b) = f i_X b
            _law(report, LAWS[3],
                 lambda: b.degree == 0 or interior(X, wedge(a, b)) == wedge(a, interior(X, b)), t, inputs)
        if k >= 2:
            _law(report, LAWS[4], lambda: interior(X, interior(X, a)).is_zero(), t, inputs)
        _law(report, LAWS[5], lambda: _cartan(X, a) == coordinate_lie_derivative(X, a), t, inputs)
        _law(report, LAWS[6],
             lambda: lie_derivative(vf_bracket(X, Y), a)
             == lie_derivative(X, lie_derivative(Y, a)) - lie_derivative(Y, lie_derivative(X, a)), t, inputs)
        if k > 0:
            _law(report, LAWS[7],
                 lambda: interior(vf_bracket(X, Y), a)
                 == lie_derivative(X, interior(Y, a)) - interior(Y, lie_derivative(X, a)), t, inputs)
        _law(report, LAWS[8],
             lambda: (vf_bracket(X, vf_bracket(Y, Z)) + vf_bracket(Y, vf_bracket(Z, X))
                      + vf_bracket(Z, vf_bracket(X, Y))).is_zero(), t, inputs)
    report.notes.append(f"{forms} random forms and {fields} random vector fields")
    return report.finalize(count)


def _iw(a, X, b, sk):
    if b.degree == 0:
        return DifferentialForm.zero(a.chart, a.degree + b.degree - 1)
    return wedge(a, interior(X, b)) * sk


def _cartan(X, a):
    if a.degree == 0:
        return interior(X, ext_d(a))
    return ext_d(interior(X, a)) + interior(X, ext_d(a))


def _law(report, name, predicate, index, inputs):
    eqn = report.equation(name)
    if predicate():
        eqn.record_pass()
    else:
        eqn.record_fail({"tuple": index, **inputs()})
