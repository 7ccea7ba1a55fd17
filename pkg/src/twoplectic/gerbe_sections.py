"""Sections and weak symmetries on a trivial surrogate bundle Y = M x F.

A multiplicative vector field is never built explicitly; it is stored as
its reduced data ``(X, g)`` with ``X`` projectable and ``g`` a function on
``Y``.  That data is only determined up to ``g -> g + (pullback of f)``, so
equality of :class:`MultVFData` and :class:`WeakSymmetryTriple` compares
``g`` modulo functions of the base variables.

Formulas (theta a 2-form on Y with d theta = pullback of omega)::

    [(Z,h), (Z',h')]      = ([Z,Z'], Z(h') - Z'(h) - theta(Z,Z'))
    eta(Z, h)             = ((Z, h), i_Z theta + dh)
    (X,g) . (Z,h)         = ([X,Z], X(h) - Z(g) - theta(X,Z))
    [(X,g,B), (X',g',B')] = ([X,X'], X(g') - X'(g) - theta(X,X'), L_X B' - L_X' B)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from twoplectic.errors import InternalConsistencyError, RejectedInput
from twoplectic.exterior import (
    Chart,
    DifferentialForm,
    VectorField,
    descend_projection,
    eval_on_fields,
    ext_d,
    field_coordinates,
    form_coordinates,
    interior,
    lie_derivative,
    lift_field,
    pullback_projection,
    push_field,
    vf_bracket,
)
from twoplectic.lie2 import CrossedModuleInstance, Sampler, VectorSpace
from twoplectic.plectic import PlecticStructure, random_hamiltonian
from twoplectic.polyring import Polynomial, random_polynomial

PERTURBATIONS = ("drop-theta-section", "drop-theta-action")


@dataclass(frozen=True)
class SurrogateBundle:
    base: Chart
    total: Chart
    base_vars: tuple
    omega: DifferentialForm
    theta: DifferentialForm
    ps: PlecticStructure | None = field(default=None, compare=False, repr=False)

    @classmethod
    def create(cls, base_names: Sequence[str], fiber_names: Sequence[str], omega, theta, ps=None):
        """Build Y = M x F and check d theta = pullback(omega) exactly.

        ``omega`` and ``theta`` may be given as text.  ``ps`` optionally
        supplies an already-certified structure on the base.
        """
        base = Chart(tuple(base_names))
        total = Chart(tuple(base_names) + tuple(fiber_names))
        if isinstance(omega, str):
            omega = base.form(omega, 3)
        if isinstance(theta, str):
            theta = total.form(theta, 2)
        if omega.chart != base or omega.degree != 3:
            raise RejectedInput("omega must be a 3-form on the base chart")
        if theta.chart != total or theta.degree != 2:
            raise RejectedInput("theta must be a 2-form on the total chart")
        if not ext_d(omega).is_zero():
            raise RejectedInput(f"d omega != 0; residual {ext_d(omega).to_text()}")
        base_vars = tuple(range(base.dim))
        residual = ext_d(theta) - pullback_projection(omega, total, base_vars)
        if not residual.is_zero():
            raise RejectedInput(f"d theta != pullback(omega); residual {residual.to_text()}")
        return cls(base, total, base_vars, omega, theta, ps)

    @property
    def fiber_dim(self) -> int:
        return self.total.dim - self.base.dim

    @property
    def fiber_vars(self) -> tuple:
        return tuple(range(self.base.dim, self.total.dim))

    def is_vertical(self, X: VectorField) -> bool:
        return all(X.components[i].is_zero() for i in self.base_vars)

    def is_projectable(self, X: VectorField) -> bool:
        return push_field(X, self.base, self.base_vars) is not None

    def is_base_function(self, f: Polynomial) -> bool:
        return not any(f.depends_on(j) for j in self.fiber_vars)

    def project(self, X: VectorField) -> VectorField:
        Xb = push_field(X, self.base, self.base_vars)
        if Xb is None:
            raise RejectedInput(f"vector field {X.to_text()} is not projectable")
        return Xb

    def pullback(self, a: DifferentialForm) -> DifferentialForm:
        return pullback_projection(a, self.total, self.base_vars)

    def descend(self, a: DifferentialForm):
        return descend_projection(a, self.base, self.base_vars)

    def fiber_part(self, g: Polynomial) -> Polynomial:
        """g with every base-only monomial removed (canonical representative mod base functions)."""
        fib = self.fiber_vars
        terms = {m: c for m, c in g.terms.items() if any(m[j] for j in fib)}
        return Polynomial(self.total.dim, terms)


@dataclass(frozen=True)
class SectionElement:
    Z: VectorField
    h: Polynomial

    def __add__(self, o):
        return SectionElement(self.Z + o.Z, self.h + o.h)

    def scale(self, c):
        return SectionElement(self.Z * c, self.h.scale(c))

    def to_text(self):
        names = self.Z.chart.names
        return f"(Z = {self.Z.to_text()}, h = {self.h.to_text(names)})"


@dataclass(frozen=True, eq=False)
class MultVFData:
    X: VectorField
    g: Polynomial

    def to_text(self):
        return f"(X = {self.X.to_text()}, g = {self.g.to_text(self.X.chart.names)})"


@dataclass(frozen=True, eq=False)
class WeakSymmetryTriple:
    data: MultVFData
    B: DifferentialForm

    @property
    def X(self) -> VectorField:
        return self.data.X

    @property
    def g(self) -> Polynomial:
        return self.data.g

    def __add__(self, o):
        return WeakSymmetryTriple(MultVFData(self.X + o.X, self.g + o.g), self.B + o.B)

    def scale(self, c):
        return WeakSymmetryTriple(MultVFData(self.X * c, self.g.scale(c)), self.B * c)

    def to_text(self):
        names = self.X.chart.names
        return f"(X = {self.X.to_text()}, g = {self.g.to_text(names)}, B = {self.B.to_text()})"


def section(sb: SurrogateBundle, Z, h) -> SectionElement:
    """Validated SectionElement; ``Z``/``h`` may be text."""
    if isinstance(Z, str):
        Z = sb.total.field(Z)
    if isinstance(h, str):
        h = sb.total.poly(h)
    if Z.chart != sb.total or h.nvars != sb.total.dim:
        raise RejectedInput("section lives on a different chart")
    if not sb.is_vertical(Z):
        raise RejectedInput(f"Z = {Z.to_text()} is not vertical")
    return SectionElement(Z, h)


def mult_data(sb: SurrogateBundle, X, g) -> MultVFData:
    if isinstance(X, str):
        X = sb.total.field(X)
    if isinstance(g, str):
        g = sb.total.poly(g)
    if X.chart != sb.total or g.nvars != sb.total.dim:
        raise RejectedInput("data lives on a different chart")
    if not sb.is_projectable(X):
        raise RejectedInput(f"X = {X.to_text()} is not projectable")
    return MultVFData(X, g)


def _check_section(sb, a):
    if not isinstance(a, SectionElement):
        raise RejectedInput(f"expected a SectionElement, got {type(a).__name__}")
    if a.Z.chart != sb.total:
        raise RejectedInput("section lives on a different chart")


def section_bracket(sb: SurrogateBundle, a: SectionElement, b: SectionElement, perturb=None) -> SectionElement:
    _check_section(sb, a)
    _check_section(sb, b)
    h = a.Z(b.h) - b.Z(a.h)
    if perturb != "drop-theta-section":
        h = h - eval_on_fields(sb.theta, [a.Z, b.Z])
    return SectionElement(vf_bracket(a.Z, b.Z), h)


def eta_map(sb: SurrogateBundle, a: SectionElement) -> WeakSymmetryTriple:
    _check_section(sb, a)
    total = sb.total
    B = interior(a.Z, sb.theta) + ext_d(DifferentialForm.function(total, a.h))
    t = WeakSymmetryTriple(MultVFData(a.Z, a.h), B)
    ok, _ = is_weak_symmetry(sb, t.data, t.B)
    if not ok:
        raise InternalConsistencyError("eta image is not a weak symmetry", t.to_text())
    return t


def mult_action(sb: SurrogateBundle, m: MultVFData, a: SectionElement, perturb=None) -> SectionElement:
    _check_section(sb, a)
    if not sb.is_projectable(m.X):
        raise RejectedInput(f"X = {m.X.to_text()} is not projectable")
    Z = vf_bracket(m.X, a.Z)
    if not sb.is_vertical(Z):
        raise InternalConsistencyError("bracket of projectable and vertical fields is not vertical", Z.to_text())
    h = m.X(a.h) - a.Z(m.g)
    if perturb != "drop-theta-action":
        h = h - eval_on_fields(sb.theta, [m.X, a.Z])
    return SectionElement(Z, h)


def is_weak_symmetry(sb: SurrogateBundle, m: MultVFData, B: DifferentialForm):
    """(ok, alpha) with alpha = B - i_X theta - dg descended to the base.

    ok is True iff alpha is a pullback and d alpha = i_{pi_* X} omega.  With
    X projectable this also gives L_X theta = dB.
    """
    Xb = push_field(m.X, sb.base, sb.base_vars)
    if Xb is None or B.degree != 1 or B.chart != sb.total:
        return False, None
    cand = B - interior(m.X, sb.theta) - ext_d(DifferentialForm.function(sb.total, m.g))
    alpha = sb.descend(cand)
    if alpha is None:
        return False, None
    if ext_d(alpha) != interior(Xb, sb.omega):
        return False, alpha
    return True, alpha


def satisfies_lie_condition(sb: SurrogateBundle, t: WeakSymmetryTriple) -> bool:
    """L_X theta = dB, checked directly."""
    return lie_derivative(t.X, sb.theta) == ext_d(t.B)


def wsym_bracket(sb: SurrogateBundle, p: WeakSymmetryTriple, q: WeakSymmetryTriple) -> WeakSymmetryTriple:
    X = vf_bracket(p.X, q.X)
    g = p.X(q.g) - q.X(p.g) - eval_on_fields(sb.theta, [p.X, q.X])
    B = lie_derivative(p.X, q.B) - lie_derivative(q.X, p.B)
    out = WeakSymmetryTriple(MultVFData(X, g), B)
    ok, _ = is_weak_symmetry(sb, out.data, out.B)
    if not ok:
        raise InternalConsistencyError("bracket of weak symmetries is not a weak symmetry", out.to_text())
    return out


def section_space(sb: SurrogateBundle) -> VectorSpace:
    total = sb.total

    def coords(a):
        out = {("Z",) + k: v for k, v in field_coordinates(a.Z).items()}
        out.update({("h", k): v for k, v in a.h.coefficient_vector().items()})
        return out

    return VectorSpace(
        name="sections",
        zero=lambda: SectionElement(VectorField.zero(total), total.zero()),
        add=lambda a, b: a + b,
        scale=lambda a, c: a.scale(c),
        eq=lambda a, b: a.Z == b.Z and a.h == b.h,
        show=lambda a: a.to_text(),
        valid=lambda a: isinstance(a, SectionElement) and sb.is_vertical(a.Z),
        coords=coords,
    )


def wsym_space(sb: SurrogateBundle) -> VectorSpace:
    total = sb.total

    def eq(p, q):
        if p.X != q.X or p.B != q.B:
            return False
        return sb.is_base_function(p.g - q.g)

    def coords(t):
        out = {("X",) + k: v for k, v in field_coordinates(t.X).items()}
        out.update({("B",) + k: v for k, v in form_coordinates(t.B).items()})
        out.update({("g", k): v for k, v in sb.fiber_part(t.g).coefficient_vector().items()})
        return out

    def valid(t):
        if not isinstance(t, WeakSymmetryTriple) or not sb.is_projectable(t.X):
            return False
        return is_weak_symmetry(sb, t.data, t.B)[0] and satisfies_lie_condition(sb, t)

    return VectorSpace(
        name="weak symmetries",
        zero=lambda: WeakSymmetryTriple(MultVFData(VectorField.zero(total), total.zero()),
                                        DifferentialForm.zero(total, 1)),
        add=lambda a, b: a + b,
        scale=lambda a, c: a.scale(c),
        eq=eq,
        show=lambda t: t.to_text(),
        valid=valid,
        coords=coords,
    )


def build_section_crossed_module(sb: SurrogateBundle, perturb: str | None = None) -> CrossedModuleInstance:
    """Sections -> weak symmetries, with eta and the action of (X, g) on (Z, h).

    Triples act through their (X, g) data only; B does not act.
    ``perturb`` drops one theta term to demonstrate checker sensitivity.
    """
    if perturb not in (None,) + PERTURBATIONS:
        raise RejectedInput(f"unknown perturbation {perturb!r} for sections")
    return CrossedModuleInstance(
        name="sections" + (f"+{perturb}" if perturb else ""),
        h=section_space(sb),
        g=wsym_space(sb),
        h_bracket=lambda a, b: section_bracket(sb, a, b, perturb),
        g_bracket=lambda p, q: wsym_bracket(sb, p, q),
        eta=lambda a: eta_map(sb, a),
        act=lambda t, a: mult_action(sb, t.data, a, perturb),
    )


def weak_symmetry_from(sb: SurrogateBundle, alpha: DifferentialForm, Xb: VectorField,
                       vertical: VectorField | None = None, g: Polynomial | None = None) -> WeakSymmetryTriple:
    """The triple (X, g, i_X theta + dg + pullback(alpha)) with X = lift(Xb) + vertical.

    ``(alpha, Xb)`` must be a Hamiltonian pair on the base.
    """
    total = sb.total
    X = lift_field(Xb, total, sb.base_vars)
    if vertical is not None:
        if not sb.is_vertical(vertical):
            raise RejectedInput("the vertical part must be vertical")
        X = X + vertical
    g = g if g is not None else total.zero()
    B = interior(X, sb.theta) + ext_d(DifferentialForm.function(total, g)) + sb.pullback(alpha)
    t = WeakSymmetryTriple(MultVFData(X, g), B)
    ok, _ = is_weak_symmetry(sb, t.data, t.B)
    if not ok:
        raise RejectedInput("(alpha, X) is not a Hamiltonian pair on the base")
    return t


def random_vertical(rng, sb: SurrogateBundle, **poly_kwargs) -> VectorField:
    total = sb.total
    comps = [total.zero()] * total.dim
    for j in sb.fiber_vars:
        comps[j] = random_polynomial(rng, total.dim, **poly_kwargs)
    return VectorField(total, comps)


def section_sampler(sb: SurrogateBundle, ps: PlecticStructure | None = None, degree_bound: int = 3,
                    **poly_kwargs) -> Sampler:
    """Random sections and random weak symmetries built from base Hamiltonian pairs."""
    ps = ps or sb.ps or PlecticStructure.create(sb.omega)
    n = sb.total.dim
    poly_kwargs.setdefault("max_degree", degree_bound)

    def low(rng):
        return SectionElement(random_vertical(rng, sb, **poly_kwargs), random_polynomial(rng, n, **poly_kwargs))

    def high(rng):
        pair = random_hamiltonian(rng, ps, degree_bound, **poly_kwargs)
        if pair is None:
            return None
        V = random_vertical(rng, sb, **poly_kwargs)
        g = random_polynomial(rng, n, **poly_kwargs)
        return weak_symmetry_from(sb, pair.alpha, pair.X, V, g)

    return Sampler(low=low, high=high)
