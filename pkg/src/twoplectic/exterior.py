"""Differential forms and vector fields with polynomial coefficients.

Everything lives on a single global coordinate :class:`Chart`.  A k-form is
stored as a map from strictly increasing index tuples to coefficients, so
``x * dy^dz`` on the chart ``(x, y, z)`` is ``{(1, 2): x}``.

Slot convention: :func:`interior` inserts the vector field into the first
argument of the form.  Consequently ``interior(X, interior(Y, w))`` is
``w(Y, X, ...)`` and ``eval_on_fields(w, [X1, ..., Xk])`` equals
``interior(Xk, ... interior(X1, w))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from twoplectic.errors import RejectedInput
from twoplectic.polyring import Polynomial, sum_polys


@dataclass(frozen=True)
class Chart:
    names: tuple

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise RejectedInput("a chart needs at least one coordinate")
        if len(set(names)) != len(names):
            raise RejectedInput(f"duplicate coordinate names in {names}")
        for n in names:
            if not isinstance(n, str) or not n.isidentifier():
                raise RejectedInput(f"bad coordinate name {n!r}")

    @property
    def dim(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise RejectedInput(f"{name!r} is not a coordinate of {self.names}") from None

    def coord(self, name_or_index) -> Polynomial:
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        return Polynomial.variable(self.dim, i)

    def const(self, value) -> Polynomial:
        return Polynomial.constant(self.dim, value)

    def zero(self) -> Polynomial:
        return Polynomial.zero(self.dim)

    def poly(self, text: str) -> Polynomial:
        return Polynomial.parse(text, self.names)

    def form(self, text: str, degree: int | None = None) -> "DifferentialForm":
        from twoplectic.syntax import parse_form

        return parse_form(text, self, degree)

    def field(self, text: str) -> "VectorField":
        from twoplectic.syntax import parse_vector_field

        return parse_vector_field(text, self)

    def __str__(self):
        return "(" + ", ".join(self.names) + ")"


def _sorted_with_sign(indices):
    """Sort an index sequence; return (sign, tuple) or (0, None) on a repeat."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return 0, None
    sign = 1
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                sign = -sign
    return sign, tuple(sorted(idx))


def _add_into(acc: dict, key, poly: Polynomial):
    cur = acc.get(key)
    acc[key] = poly if cur is None else cur + poly


class DifferentialForm:
    """An immutable degree-k form with polynomial coefficients."""

    __slots__ = ("chart", "degree", "_comps", "_hash")

    def __init__(self, chart: Chart, degree: int, components: Mapping | None = None):
        if not isinstance(degree, int) or degree < 0:
            raise RejectedInput(f"form degree must be a non-negative integer, got {degree!r}")
        comps = {}
        for idx, coef in (components or {}).items():
            idx = tuple(idx)
            if len(idx) != degree:
                raise RejectedInput(f"index tuple {idx} does not match degree {degree}")
            if any(not 0 <= i < chart.dim for i in idx):
                raise RejectedInput(f"index tuple {idx} out of range for chart {chart}")
            if any(idx[i] >= idx[i + 1] for i in range(len(idx) - 1)):
                raise RejectedInput(f"index tuple {idx} is not strictly increasing")
            if not isinstance(coef, Polynomial):
                coef = Polynomial.constant(chart.dim, coef)
            if coef.nvars != chart.dim:
                raise RejectedInput("coefficient ring does not match chart")
            if coef:
                comps[idx] = coef
        self.chart = chart
        self.degree = degree
        self._comps = comps
        self._hash = None

    @classmethod
    def _raw(cls, chart, degree, comps):
        f = object.__new__(cls)
        f.chart = chart
        f.degree = degree
        f._comps = {k: v for k, v in comps.items() if v}
        f._hash = None
        return f

    @classmethod
    def zero(cls, chart: Chart, degree: int) -> "DifferentialForm":
        return cls(chart, degree)

    @classmethod
    def function(cls, chart: Chart, f) -> "DifferentialForm":
        if not isinstance(f, Polynomial):
            f = Polynomial.constant(chart.dim, f)
        return cls(chart, 0, {(): f})

    @classmethod
    def basis(cls, chart: Chart, indices: Sequence[int], coef=1) -> "DifferentialForm":
        sign, idx = _sorted_with_sign(indices)
        if not sign:
            return cls(chart, len(indices))
        if not isinstance(coef, Polynomial):
            coef = Polynomial.constant(chart.dim, coef)
        return cls(chart, len(idx), {idx: coef.scale(sign)})

    @property
    def components(self) -> dict:
        return dict(sorted(self._comps.items()))

    def component(self, indices: Sequence[int]) -> Polynomial:
        return self._comps.get(tuple(indices), self.chart.zero())

    def as_function(self) -> Polynomial:
        if self.degree != 0:
            raise RejectedInput("only 0-forms convert to functions")
        return self._comps.get((), self.chart.zero())

    def is_zero(self) -> bool:
        return not self._comps

    def __bool__(self):
        return bool(self._comps)

    def _check(self, other: "DifferentialForm"):
        if not isinstance(other, DifferentialForm):
            raise RejectedInput(f"expected a differential form, got {type(other).__name__}")
        if other.chart != self.chart:
            raise RejectedInput(f"chart mismatch: {self.chart} vs {other.chart}")

    def __add__(self, other):
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        self._check(other)
        if other.degree != self.degree:
            raise RejectedInput(f"cannot add forms of degree {self.degree} and {other.degree}")
        comps = dict(self._comps)
        for k, v in other._comps.items():
            _add_into(comps, k, v)
        return DifferentialForm._raw(self.chart, self.degree, comps)

    def __neg__(self):
        return DifferentialForm._raw(self.chart, self.degree, {k: -v for k, v in self._comps.items()})

    def __sub__(self, other):
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        """Multiply by a function (Polynomial) or rational scalar."""
        if isinstance(other, Polynomial):
            if other.nvars != self.chart.dim:
                raise RejectedInput("coefficient ring does not match chart")
            return DifferentialForm._raw(
                self.chart, self.degree, {k: v * other for k, v in self._comps.items()}
            )
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return DifferentialForm._raw(
                self.chart, self.degree, {k: v.scale(other) for k, v in self._comps.items()}
            )
        return NotImplemented

    __rmul__ = __mul__

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        if self.chart != other.chart:
            return False
        return self.degree == other.degree and self._comps == other._comps

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.chart, self.degree, frozenset(self._comps.items())))
        return self._hash

    def to_text(self) -> str:
        if not self._comps:
            return "0"
        names = self.chart.names
        return _join_terms(
            [(coef, "^".join("d" + names[i] for i in idx)) for idx, coef in sorted(self._comps.items())], names
        )

    def __repr__(self):
        return f"DifferentialForm[{self.degree}]({self.to_text()!r} on {self.chart})"


class VectorField:
    """An immutable polynomial vector field; ``X(f)`` is the derivative of f along X."""

    __slots__ = ("chart", "components", "_hash")

    def __init__(self, chart: Chart, components: Sequence):
        comps = []
        for c in components:
            if not isinstance(c, Polynomial):
                c = Polynomial.constant(chart.dim, c)
            if c.nvars != chart.dim:
                raise RejectedInput("coefficient ring does not match chart")
            comps.append(c)
        if len(comps) != chart.dim:
            raise RejectedInput(f"vector field needs {chart.dim} components, got {len(comps)}")
        self.chart = chart
        self.components = tuple(comps)
        self._hash = None

    @classmethod
    def zero(cls, chart: Chart) -> "VectorField":
        return cls(chart, [chart.zero()] * chart.dim)

    @classmethod
    def coordinate(cls, chart: Chart, index, coef=1) -> "VectorField":
        i = index if isinstance(index, int) else chart.index(index)
        comps = [chart.zero()] * chart.dim
        comps[i] = coef if isinstance(coef, Polynomial) else chart.const(coef)
        return cls(chart, comps)

    def is_zero(self) -> bool:
        return not any(self.components)

    def __bool__(self):
        return not self.is_zero()

    def _check(self, other):
        if not isinstance(other, VectorField):
            raise RejectedInput(f"expected a vector field, got {type(other).__name__}")
        if other.chart != self.chart:
            raise RejectedInput(f"chart mismatch: {self.chart} vs {other.chart}")

    def __add__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        self._check(other)
        return VectorField(self.chart, [a + b for a, b in zip(self.components, other.components)])

    def __neg__(self):
        return VectorField(self.chart, [-a for a in self.components])

    def __sub__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return VectorField(self.chart, [a * other for a in self.components])
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return VectorField(self.chart, [a.scale(other) for a in self.components])
        return NotImplemented

    __rmul__ = __mul__

    def __call__(self, f: Polynomial) -> Polynomial:
        """Directional derivative X(f)."""
        if isinstance(f, DifferentialForm):
            f = f.as_function()
        if f.nvars != self.chart.dim:
            raise RejectedInput("function ring does not match chart")
        return sum_polys(
            (c * f.diff(i) for i, c in enumerate(self.components) if c), self.chart.dim
        )

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.chart == other.chart and self.components == other.components

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.chart, self.components))
        return self._hash

    def to_text(self) -> str:
        names = self.chart.names
        terms = [(c, f"d/d{name}") for name, c in zip(names, self.components) if c]
        return _join_terms(terms, names) if terms else "0"

    def __repr__(self):
        return f"VectorField({self.to_text()!r} on {self.chart})"


def _join_terms(terms, names) -> str:
    """Render (coefficient, basis) pairs as ``c * basis - ...``; basis may be empty."""
    parts = []
    for coef, basis in terms:
        sign = "+"
        if len(coef) == 1 and next(iter(coef.terms.values())) < 0:
            sign, coef = "-", -coef
        ctext = coef.to_text(names)
        if len(coef) > 1:
            ctext = f"({ctext})" if basis else ctext
        if not basis:
            body = ctext
        elif coef == 1:
            body = basis
        else:
            body = f"{ctext} * {basis}"
        parts.append((sign, body))
    sign, body = parts[0]
    text = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def _same_chart(a, b):
    if a.chart != b.chart:
        raise RejectedInput(f"chart mismatch: {a.chart} vs {b.chart}")


def wedge(a: DifferentialForm, b: DifferentialForm) -> DifferentialForm:
    if not isinstance(a, DifferentialForm) or not isinstance(b, DifferentialForm):
        raise RejectedInput("wedge expects two differential forms")
    _same_chart(a, b)
    chart = a.chart
    degree = a.degree + b.degree
    out: dict = {}
    for I, p in a._comps.items():
        sI = set(I)
        for J, q in b._comps.items():
            if sI.intersection(J):
                continue
            # sign of the shuffle that sorts I + J
            inversions = sum(1 for i in I for j in J if i > j)
            prod = p * q
            _add_into(out, tuple(sorted(I + J)), -prod if inversions & 1 else prod)
    return DifferentialForm._raw(chart, degree, out)


def ext_d(a: DifferentialForm) -> DifferentialForm:
    """Exterior derivative."""
    if not isinstance(a, DifferentialForm):
        raise RejectedInput("ext_d expects a differential form")
    out: dict = {}
    for I, c in a._comps.items():
        for j in range(a.chart.dim):
            if j in I:
                continue
            dc = c.diff(j)
            if not dc:
                continue
            before = sum(1 for i in I if i < j)
            _add_into(out, tuple(sorted(I + (j,))), -dc if before & 1 else dc)
    return DifferentialForm._raw(a.chart, a.degree + 1, out)


def interior(X: VectorField, a: DifferentialForm) -> DifferentialForm:
    """Contraction of X into the first slot of a."""
    if not isinstance(X, VectorField) or not isinstance(a, DifferentialForm):
        raise RejectedInput("interior expects a vector field and a differential form")
    _same_chart(X, a)
    if a.degree == 0:
        raise RejectedInput("interior product of a 0-form is undefined")
    comps = X.components
    out: dict = {}
    for I, c in a._comps.items():
        for m, i in enumerate(I):
            xi = comps[i]
            if not xi:
                continue
            term = c * xi
            _add_into(out, I[:m] + I[m + 1:], -term if m & 1 else term)
    return DifferentialForm._raw(a.chart, a.degree - 1, out)


def lie_derivative(X: VectorField, a: DifferentialForm) -> DifferentialForm:
    """Lie derivative via Cartan's formula L_X = d i_X + i_X d."""
    if not isinstance(X, VectorField) or not isinstance(a, DifferentialForm):
        raise RejectedInput("lie_derivative expects a vector field and a differential form")
    _same_chart(X, a)
    if a.degree == 0:
        return DifferentialForm.function(a.chart, X(a.as_function()))
    return ext_d(interior(X, a)) + interior(X, ext_d(a))


def vf_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """[X, Y]^k = sum_j X^j d_j Y^k - Y^j d_j X^k."""
    if not isinstance(X, VectorField) or not isinstance(Y, VectorField):
        raise RejectedInput("vf_bracket expects two vector fields")
    _same_chart(X, Y)
    return VectorField(X.chart, [X(yk) - Y(xk) for xk, yk in zip(X.components, Y.components)])


def eval_on_fields(a: DifferentialForm, fields: Sequence[VectorField]) -> Polynomial:
    """Full multilinear evaluation a(X1, ..., Xk) as a polynomial."""
    if not isinstance(a, DifferentialForm):
        raise RejectedInput("eval_on_fields expects a differential form")
    if len(fields) != a.degree:
        raise RejectedInput(f"a {a.degree}-form needs {a.degree} vector fields, got {len(fields)}")
    for X in fields:
        if not isinstance(X, VectorField):
            raise RejectedInput("eval_on_fields expects vector fields")
        _same_chart(X, a)
    out = a
    for X in fields:
        out = interior(X, out)
    return out.as_function()


def pullback_projection(
    a: DifferentialForm, total: Chart, base_vars: Sequence[int] | Mapping[int, int]
) -> DifferentialForm:
    """Pull a form back along a coordinate projection total -> base.

    ``base_vars[i]`` is the index in ``total`` of base coordinate ``i``.
    """
    if isinstance(base_vars, Mapping):
        base_vars = [base_vars[i] for i in range(a.chart.dim)]
    base_vars = list(base_vars)
    if len(base_vars) != a.chart.dim:
        raise RejectedInput("base variable map must cover every base coordinate")
    if len(set(base_vars)) != len(base_vars) or any(not 0 <= j < total.dim for j in base_vars):
        raise RejectedInput(f"base variable map {base_vars} is not injective into {total}")
    out: dict = {}
    for I, c in a._comps.items():
        sign, J = _sorted_with_sign([base_vars[i] for i in I])
        p = c.reindex(total.dim, base_vars)
        _add_into(out, J, -p if sign < 0 else p)
    return DifferentialForm._raw(total, a.degree, out)


def standard_embedding(base: Chart, total: Chart) -> list:
    """Index map sending each base coordinate to the same-named total coordinate."""
    return [total.index(n) for n in base.names]


def descend_projection(a: DifferentialForm, base: Chart, base_vars: Sequence[int]):
    """Inverse of :func:`pullback_projection`, or ``None`` if a is not a pullback.

    A form is a pullback along a coordinate projection iff it has no legs
    along, and no coefficient dependence on, the non-base coordinates.
    """
    total = a.chart
    inv = {j: i for i, j in enumerate(base_vars)}
    fibre = [j for j in range(total.dim) if j not in inv]
    out: dict = {}
    for I, c in a._comps.items():
        if any(j not in inv for j in I):
            return None
        if any(c.depends_on(j) for j in fibre):
            return None
        sign, J = _sorted_with_sign([inv[j] for j in I])
        p = _restrict(c, base.dim, inv)
        _add_into(out, J, -p if sign < 0 else p)
    return DifferentialForm._raw(base, a.degree, out)


def _restrict(p: Polynomial, nvars: int, inv: Mapping[int, int]) -> Polynomial:
    terms = {}
    for mono, coef in p.terms.items():
        e = [0] * nvars
        for j, ej in enumerate(mono):
            if ej:
                e[inv[j]] = ej
        terms[tuple(e)] = coef
    return Polynomial(nvars, terms)


def lift_field(X: VectorField, total: Chart, base_vars: Sequence[int]) -> VectorField:
    """Trivial extension of a base field to the product chart (zero fibre part)."""
    comps = [total.zero()] * total.dim
    for i, j in enumerate(base_vars):
        comps[j] = X.components[i].reindex(total.dim, base_vars)
    return VectorField(total, comps)


def push_field(X: VectorField, base: Chart, base_vars: Sequence[int]):
    """Projection of a projectable field to the base, or ``None`` if not projectable."""
    inv = {j: i for i, j in enumerate(base_vars)}
    fibre = [j for j in range(X.chart.dim) if j not in inv]
    comps = []
    for j in base_vars:
        c = X.components[j]
        if any(c.depends_on(f) for f in fibre):
            return None
        comps.append(_restrict(c, base.dim, inv))
    return VectorField(base, comps)


def basis_forms(chart: Chart, degree: int) -> list:
    return list(combinations(range(chart.dim), degree))


def form_coordinates(a: DifferentialForm) -> dict:
    """Flatten to {(index tuple, packed monomial): coefficient} for linear algebra."""
    out = {}
    for I, c in a._comps.items():
        for k, v in c.coefficient_vector().items():
            out[(I, k)] = v
    return out


def field_coordinates(X: VectorField) -> dict:
    out = {}
    for i, c in enumerate(X.components):
        for k, v in c.coefficient_vector().items():
            out[(i, k)] = v
    return out


def random_form(rng, chart: Chart, degree: int, **poly_kwargs) -> DifferentialForm:
    from twoplectic.polyring import random_polynomial

    comps = {}
    for idx in basis_forms(chart, degree):
        if rng.random() < 0.6:
            comps[idx] = random_polynomial(rng, chart.dim, **poly_kwargs)
    return DifferentialForm(chart, degree, comps)


def random_field(rng, chart: Chart, **poly_kwargs) -> VectorField:
    from twoplectic.polyring import random_polynomial

    return VectorField(chart, [random_polynomial(rng, chart.dim, **poly_kwargs) for _ in range(chart.dim)])
