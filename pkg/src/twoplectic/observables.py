"""The Lie 2-algebra of observables of a 2-plectic structure.

Degree -1 holds polynomial functions, degree 0 holds Hamiltonian pairs
``(alpha, X_alpha)``.  The brackets are

    l1(f) = (df, 0)
    l2(a, b) = (i_{X_a} i_{X_b} omega, [X_a, X_b]),   l2(a, f) = 0
    l3(a, b, c) = omega(X_a, X_b, X_c)
"""

from __future__ import annotations

from fractions import Fraction

from twoplectic.errors import RejectedInput
from twoplectic.exterior import field_coordinates, form_coordinates
from twoplectic.lie2 import GradedElement, Lie2Instance, Sampler, VectorSpace
from twoplectic.plectic import (
    HamiltonianPair,
    PlecticStructure,
    exact_pair,
    l2_bracket,
    l3_triple,
    random_hamiltonian,
    solve_hamiltonian,
)
from twoplectic.polyring import Polynomial, random_polynomial

PERTURBATIONS = ("l3-scaled-2",)


def function_space(ps: PlecticStructure) -> VectorSpace:
    n = ps.chart.dim
    names = ps.chart.names
    return VectorSpace(
        name="C(M)",
        zero=lambda: Polynomial.zero(n),
        add=lambda a, b: a + b,
        scale=lambda a, c: a.scale(c),
        show=lambda p: p.to_text(names),
        valid=lambda p: isinstance(p, Polynomial) and p.nvars == n,
        coords=lambda p: {("h", k): v for k, v in p.coefficient_vector().items()},
    )


def pair_coordinates(p: HamiltonianPair) -> dict:
    out = {("alpha",) + k: v for k, v in form_coordinates(p.alpha).items()}
    out.update({("X",) + k: v for k, v in field_coordinates(p.X).items()})
    return out


def hamiltonian_space(ps: PlecticStructure) -> VectorSpace:
    chart = ps.chart
    return VectorSpace(
        name="Ham(M)",
        zero=lambda: exact_pair(ps, chart.zero()),
        add=lambda a, b: a + b,
        scale=lambda a, c: a.scale(c),
        show=lambda p: p.to_text(),
        valid=lambda p: isinstance(p, HamiltonianPair) and ps.is_hamiltonian_pair(p.alpha, p.X),
        coords=pair_coordinates,
    )


def build_observables(ps: PlecticStructure, perturb: str | None = None) -> Lie2Instance:
    """The observables of (M, omega) as a :class:`Lie2Instance`.

    ``perturb="l3-scaled-2"`` replaces l3 by 2*l3, which must break the
    Jacobiator equation; it exists only to demonstrate checker sensitivity.
    """
    if not isinstance(ps, PlecticStructure):
        raise RejectedInput("build_observables needs a PlecticStructure")
    if perturb not in (None,) + PERTURBATIONS:
        raise RejectedInput(f"unknown perturbation {perturb!r} for observables")
    n = ps.chart.dim
    factor = Fraction(2) if perturb == "l3-scaled-2" else Fraction(1)

    def l3(a, b, c):
        v = l3_triple(ps, a, b, c)
        return v.scale(factor) if factor != 1 else v

    return Lie2Instance(
        name="observables" + (f"+{perturb}" if perturb else ""),
        low=function_space(ps),
        high=hamiltonian_space(ps),
        l1_map=lambda f: exact_pair(ps, f),
        bracket=lambda a, b: l2_bracket(ps, a, b),
        action=lambda a, f: Polynomial.zero(n),
        l3_map=l3,
    )


def ham_element(ps: PlecticStructure, alpha, degree_bound: int) -> GradedElement:
    """Degree-0 element for a Hamiltonian 1-form, with its solved field."""
    return GradedElement(0, solve_hamiltonian(ps, alpha, degree_bound))


def observables_sampler(ps: PlecticStructure, degree_bound: int = 3, fixtures=(), **poly_kwargs) -> Sampler:
    """Random functions and random Hamiltonian pairs.

    Random 1-forms of coefficient degree <= degree_bound are drawn until one
    is solvable with a field of degree <= degree_bound.  Fixture pairs, if
    given, are mixed in with probability 1/4 each draw.
    """
    n = ps.chart.dim
    fixtures = list(fixtures)
    poly_kwargs.setdefault("max_degree", degree_bound)

    def low(rng):
        return random_polynomial(rng, n, **poly_kwargs)

    def high(rng):
        if fixtures and rng.random() < 0.25:
            return rng.choice(fixtures)
        return random_hamiltonian(rng, ps, degree_bound, **poly_kwargs)

    return Sampler(low=low, high=high)
