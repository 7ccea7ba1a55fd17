"""Prequantisation of an exact 2-plectic structure omega = d chi.

The target is the section crossed module with no fibre directions and
theta = chi, viewed as a strict Lie 2-algebra.  The morphism is

    Phi1(f)            = (Z = 0, h = f)
    Phi1(alpha, X)     = (X, g = 0, B = i_X chi + alpha)
    Phi2(a, b)         = (0, chi(X_a, X_b) + alpha(X_b) - beta(X_a))
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from twoplectic import linalg
from twoplectic.errors import InternalConsistencyError, NotAWeakSymmetry, RejectedInput
from twoplectic.exterior import (
    DifferentialForm,
    VectorField,
    basis_forms,
    eval_on_fields,
    ext_d,
    form_coordinates,
    interior,
    lie_derivative,
)
from twoplectic.gerbe_sections import (
    MultVFData,
    SectionElement,
    SurrogateBundle,
    WeakSymmetryTriple,
    build_section_crossed_module,
    eta_map,
    is_weak_symmetry,
)
from twoplectic.lie2 import GradedElement, Lie2Instance, Lie2Morphism, crossed_to_lie2
from twoplectic.observables import build_observables
from twoplectic.plectic import HamiltonianPair, PlecticStructure
from twoplectic.polyring import Polynomial, monomials_up_to

PERTURBATIONS = ("phi2-drop-pairing", "phi2-zero")


@dataclass(frozen=True)
class ExactScenario:
    ps: PlecticStructure
    chi: DifferentialForm
    bundle: SurrogateBundle = field(repr=False, compare=False, default=None)

    @classmethod
    def create(cls, ps: PlecticStructure, chi):
        if isinstance(chi, str):
            chi = ps.chart.form(chi, 2)
        if chi.chart != ps.chart or chi.degree != 2:
            raise RejectedInput("chi must be a 2-form on the chart of omega")
        residual = ext_d(chi) - ps.omega
        if not residual.is_zero():
            raise RejectedInput(f"d chi != omega; residual {residual.to_text()}")
        sb = SurrogateBundle.create(ps.chart.names, (), ps.omega, chi, ps=ps)
        return cls(ps, chi, sb)

    @property
    def chart(self):
        return self.ps.chart


def reduced_algebra(es: ExactScenario) -> Lie2Instance:
    return crossed_to_lie2(build_section_crossed_module(es.bundle))


def _phi1_low(es: ExactScenario, f: Polynomial) -> SectionElement:
    return SectionElement(VectorField.zero(es.chart), f)


def _phi1_high(es: ExactScenario, a: HamiltonianPair) -> WeakSymmetryTriple:
    a = es.ps.require(a)
    t = WeakSymmetryTriple(MultVFData(a.X, es.chart.zero()), interior(a.X, es.chi) + a.alpha)
    if lie_derivative(t.X, es.chi) != ext_d(t.B):
        raise InternalConsistencyError("Phi1 image violates L_X chi = dB", t.to_text())
    return t


def phi1(es: ExactScenario, e: GradedElement) -> GradedElement:
    if not isinstance(e, GradedElement):
        raise RejectedInput("phi1 expects a GradedElement")
    if e.degree == -1:
        if not isinstance(e.payload, Polynomial) or e.payload.nvars != es.chart.dim:
            raise RejectedInput("degree -1 element must be a polynomial on the base chart")
        return GradedElement(-1, _phi1_low(es, e.payload))
    return GradedElement(0, _phi1_high(es, e.payload))


def _phi2(es: ExactScenario, a: HamiltonianPair, b: HamiltonianPair, perturb=None) -> SectionElement:
    a, b = es.ps.require(a), es.ps.require(b)
    zero = VectorField.zero(es.chart)
    if perturb == "phi2-zero":
        return SectionElement(zero, es.chart.zero())
    h = eval_on_fields(es.chi, [a.X, b.X])
    if perturb != "phi2-drop-pairing":
        h = h + eval_on_fields(a.alpha, [b.X]) - eval_on_fields(b.alpha, [a.X])
    return SectionElement(zero, h)


def phi2(es: ExactScenario, a: GradedElement, b: GradedElement, perturb=None) -> GradedElement:
    if a.degree != 0 or b.degree != 0:
        raise RejectedInput("phi2 is only defined on degree-0 elements")
    return GradedElement(-1, _phi2(es, a.payload, b.payload, perturb))


def build_prequant_morphism(es: ExactScenario, perturb: str | None = None) -> Lie2Morphism:
    if perturb not in (None,) + PERTURBATIONS:
        raise RejectedInput(f"unknown perturbation {perturb!r} for the prequantisation map")
    return Lie2Morphism(
        source=build_observables(es.ps),
        target=reduced_algebra(es),
        phi1_low=lambda f: _phi1_low(es, f),
        phi1_high=lambda a: _phi1_high(es, a),
        phi2=lambda a, b: _phi2(es, a, b, perturb),
    )


def decompose_weak_symmetry(es: ExactScenario, t: WeakSymmetryTriple):
    """Split t as Phi1(alpha) + eta(0, h).

    Returns ``(pair, h)`` where ``pair`` is the Hamiltonian pair
    ``(B - i_X chi - dg, X)`` and ``h = g``.  Raises
    :class:`NotAWeakSymmetry` if d alpha != i_X omega.
    """
    if not isinstance(t, WeakSymmetryTriple) or t.X.chart != es.chart:
        raise RejectedInput("expected a weak symmetry on the base chart")
    chart = es.chart
    alpha = t.B - interior(t.X, es.chi) - ext_d(DifferentialForm.function(chart, t.g))
    if not es.ps.is_hamiltonian_pair(alpha, t.X):
        residual = ext_d(alpha) - interior(t.X, es.ps.omega)
        raise NotAWeakSymmetry(f"d alpha != i_X omega; residual {residual.to_text()}")
    return HamiltonianPair(alpha, t.X, es.ps.omega), t.g


def recompose(es: ExactScenario, pair: HamiltonianPair, h: Polynomial) -> WeakSymmetryTriple:
    """Phi1(pair) + eta(0, h)."""
    return _phi1_high(es, pair) + eta_map(es.bundle, SectionElement(VectorField.zero(es.chart), h))


def weak_symmetry_truncation(es: ExactScenario, cap: int) -> list:
    """Basis of the weak symmetries (X, 0, B) with X, B of coefficient degree <= cap.

    Computed as the exact nullspace of (X, B) -> dB - L_X chi, independently
    of the decomposition.  g is omitted since with no fibre directions it is
    identified with zero.
    """
    chart = es.chart
    n = chart.dim
    monos = monomials_up_to(n, cap)
    columns = []
    images = {}
    for i in range(n):
        for m in monos:
            X = VectorField.coordinate(chart, i, Polynomial.monomial(n, m))
            columns.append(("X", i, m))
            images[columns[-1]] = lie_derivative(X, es.chi) * -1
    for I in basis_forms(chart, 1):
        for m in monos:
            B = DifferentialForm(chart, 1, {I: Polynomial.monomial(n, m)})
            columns.append(("B", I, m))
            images[columns[-1]] = ext_d(B)
    rows: dict = {}
    for col, img in images.items():
        for key, v in form_coordinates(img).items():
            rows.setdefault(key, {})[col] = v
    kernel = linalg.nullspace([rows[k] for k in sorted(rows, key=repr)], columns)
    out = []
    for vec in kernel:
        xc = [dict() for _ in range(n)]
        bc: dict = {}
        for (kind, idx, m), v in vec.items():
            if kind == "X":
                xc[idx][m] = v
            else:
                bc.setdefault(idx, {})[m] = v
        X = VectorField(chart, [Polynomial(n, c) for c in xc])
        B = DifferentialForm(chart, 1, {I: Polynomial(n, c) for I, c in bc.items()})
        t = WeakSymmetryTriple(MultVFData(X, chart.zero()), B)
        if not is_weak_symmetry(es.bundle, t.data, t.B)[0]:
            raise InternalConsistencyError("truncation basis element is not a weak symmetry", t.to_text())
        out.append(t)
    return out


def function_truncation(chart, cap: int) -> list:
    n = chart.dim
    return [Polynomial.monomial(n, m) for m in monomials_up_to(n, cap)]


def section_truncation(es: ExactScenario, cap: int) -> list:
    zero = VectorField.zero(es.chart)
    return [SectionElement(zero, f) for f in function_truncation(es.chart, cap)]


def decomposition(es: ExactScenario):
    """decompose for :func:`twoplectic.lie2.kernel_cokernel_probe`."""
    zero = VectorField.zero(es.chart)

    def split(t):
        pair, h = decompose_weak_symmetry(es, t)
        return pair, SectionElement(zero, h)

    return split


def random_exact_pair(rng: random.Random, es: ExactScenario, degree_bound: int = 3, **poly_kwargs):
    from twoplectic.plectic import random_hamiltonian

    return random_hamiltonian(rng, es.ps, degree_bound, **poly_kwargs)
