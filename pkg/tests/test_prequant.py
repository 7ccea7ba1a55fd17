import random

import pytest
import sympy

from twoplectic.errors import NotAWeakSymmetry, RejectedInput
from twoplectic.exterior import DifferentialForm, VectorField
from twoplectic.gerbe_sections import MultVFData, SectionElement, WeakSymmetryTriple, eta_map
from twoplectic.lie2 import MORPHISM_EQUATIONS, GradedElement, check_morphism, kernel_cokernel_probe
from twoplectic.observables import ham_element, observables_sampler
from twoplectic.plectic import exact_pair
from twoplectic.prequant import (
    ExactScenario,
    build_prequant_morphism,
    decompose_weak_symmetry,
    decomposition,
    function_truncation,
    phi1,
    phi2,
    recompose,
    reduced_algebra,
    section_truncation,
    weak_symmetry_truncation,
)
from twoplectic.report import FAIL, PASS

from conftest import R3


def H(vol, text):
    return ham_element(vol, R3.form(text), 3)


def test_chi_must_be_primitive(vol):
    with pytest.raises(RejectedInput, match="d chi"):
        ExactScenario.create(vol, "y*dy^dz")


def test_phi1_values(exact, vol):
    t = phi1(exact, H(vol, "x*dy")).payload
    assert t.X == R3.field("d/dz") and t.g.is_zero() and t.B.is_zero()
    t = phi1(exact, H(vol, "y*dz")).payload
    # i_{d/dx}(x dy^dz) = 0
    assert t.X == R3.field("d/dx") and t.B == R3.form("y*dz")
    low = phi1(exact, GradedElement(-1, R3.poly("x*y"))).payload
    assert low.Z.is_zero() and low.h == R3.poly("x*y")
    with pytest.raises(RejectedInput):
        phi1(exact, H(vol, "x*dy").payload)


def test_phi2_value(exact, vol):
    # chi(d/dz, d/dx) = 0, (x dy)(d/dx) = 0, (y dz)(d/dz) = y
    out = phi2(exact, H(vol, "x*dy"), H(vol, "y*dz")).payload
    assert out.Z.is_zero() and out.h == R3.poly("-y")
    assert phi2(exact, H(vol, "y*dz"), H(vol, "x*dy")).payload.h == R3.poly("y")
    with pytest.raises(RejectedInput):
        phi2(exact, GradedElement(-1, R3.poly("x")), H(vol, "x*dy"))


def test_phi1_of_exact_pair_is_eta(exact, vol):
    T = reduced_algebra(exact)
    img = phi1(exact, GradedElement(0, exact_pair(vol, R3.poly("x")))).payload
    via_eta = eta_map(exact.bundle, SectionElement(VectorField.zero(R3), R3.poly("x")))
    # g differs by the base function x, which is invisible on a point fibre
    assert T.high.eq(img, via_eta)
    assert img.g != via_eta.g


def test_mixed_bracket_identity(exact, vol):
    # l2(f, a) = 0 in the source, so -Phi2(df, a) = [Phi1 f, Phi1 a]
    T = reduced_algebra(exact)
    m = build_prequant_morphism(exact)
    f = GradedElement(-1, R3.poly("x^2*z + y"))
    a = H(vol, "x^2*dy")
    lhs = T.low.neg(m.phi2_graded(GradedElement(0, exact_pair(vol, f.payload)), a).payload)
    rhs = T.l2(m.phi1(f), m.phi1(a)).payload
    assert T.low.eq(lhs, rhs)


def test_morphism_passes(exact, vol):
    r = check_morphism(build_prequant_morphism(exact), observables_sampler(vol, 2), 10, seed=2)
    assert r.status == PASS, r.lines()


def test_morphism_with_shifted_chi(vol):
    es = ExactScenario.create(vol, "x*dy^dz + dx^dy + z*dx^dz")
    r = check_morphism(build_prequant_morphism(es), observables_sampler(vol, 2), 8, seed=4)
    assert r.status == PASS, r.lines()


def test_phi2_perturbations(exact, vol):
    s = observables_sampler(vol, 2)
    drop = check_morphism(build_prequant_morphism(exact, "phi2-drop-pairing"), s, 8)
    assert drop[MORPHISM_EQUATIONS[1]].status == FAIL
    assert drop[MORPHISM_EQUATIONS[2]].status == FAIL
    # the pairing terms cancel out of the quadratic coherence equation
    assert drop[MORPHISM_EQUATIONS[3]].status == PASS
    zero = check_morphism(build_prequant_morphism(exact, "phi2-zero"), s, 8)
    assert zero[MORPHISM_EQUATIONS[1]].status == FAIL
    assert zero[MORPHISM_EQUATIONS[3]].status == FAIL
    with pytest.raises(RejectedInput):
        build_prequant_morphism(exact, "bogus")


def test_decompose_examples(exact, vol):
    T = R3
    t = WeakSymmetryTriple(MultVFData(T.field("d/dz"), T.zero()), DifferentialForm.zero(T, 1))
    pair, h = decompose_weak_symmetry(exact, t)
    assert pair.alpha == R3.form("x*dy") and pair.X == T.field("d/dz") and h.is_zero()
    t = WeakSymmetryTriple(MultVFData(T.field("d/dz"), T.poly("x*y")), T.form("y*dx + x*dy"))
    pair, h = decompose_weak_symmetry(exact, t)
    assert pair.alpha == R3.form("x*dy") and h == T.poly("x*y")
    bad = WeakSymmetryTriple(MultVFData(T.field("d/dx"), T.zero()), DifferentialForm.zero(T, 1))
    with pytest.raises(NotAWeakSymmetry):
        decompose_weak_symmetry(exact, bad)


def test_round_trip(exact, vol):
    from twoplectic.plectic import random_hamiltonian
    from twoplectic.polyring import random_polynomial

    rng = random.Random(11)
    for _ in range(10):
        pair = random_hamiltonian(rng, vol, 2, max_degree=2)
        h = random_polynomial(rng, 3, max_degree=2)
        got, got_h = decompose_weak_symmetry(exact, recompose(exact, pair, h))
        assert got == pair and got_h == h


def _weak_symmetry_dimension_oracle(cap):
    # dB = L_X chi for chi = x dy^dz; forms as vectors (dx, dy, dz) and 2-forms as (dy^dz, dz^dx, dx^dy)
    S = x, y, z = sympy.symbols("x y z")
    monos = [x**a * y**b * z**c for a in range(cap + 1) for b in range(cap + 1) for c in range(cap + 1)
             if a + b + c <= cap]
    unknowns = []

    def generic(tag):
        cs = sympy.symbols(f"{tag}0:{len(monos)}")
        unknowns.extend(cs)
        return sum(c * m for c, m in zip(cs, monos))

    X = [generic(f"X{i}_") for i in range(3)]
    B = [generic(f"B{i}_") for i in range(3)]

    def curl(v):
        return [sympy.diff(v[2], y) - sympy.diff(v[1], z), sympy.diff(v[0], z) - sympy.diff(v[2], x),
                sympy.diff(v[1], x) - sympy.diff(v[0], y)]

    i_x_chi = [0, -x * X[2], x * X[1]]
    # L_X chi = d i_X chi + i_X omega, and i_X (dx^dy^dz) corresponds to X itself
    eqs = [sympy.expand(a - b - c) for a, b, c in zip(curl(B), curl(i_x_chi), X)]
    rows = [co for e in eqs for co in sympy.Poly(e, *S).coeffs()]
    M = sympy.Matrix([[sympy.diff(r, u) for u in unknowns] for r in rows])
    return len(unknowns) - M.rank()


def test_weak_symmetry_truncation_dimension(exact):
    basis = weak_symmetry_truncation(exact, 3)
    assert len(basis) == _weak_symmetry_dimension_oracle(3) == 68


def test_kernel_probe_small_cap(exact):
    m = build_prequant_morphism(exact)
    r = kernel_cokernel_probe(m, function_truncation(R3, 2), section_truncation(exact, 2),
                              weak_symmetry_truncation(exact, 2), decomposition(exact))
    assert r.status == PASS, r.lines()
    # constants are the kernel on both sides
    assert "dim ker(l1) = 1, dim ker(l1') = 1" in r.notes
