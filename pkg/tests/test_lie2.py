"""Lie 2-algebra checkers on small hand-built algebras with known answers."""

from fractions import Fraction

import pytest

from twoplectic.errors import RejectedInput
from twoplectic.lie2 import (
    CROSSED_EQUATIONS,
    LIE2_EQUATIONS,
    MORPHISM_EQUATIONS,
    CrossedModuleInstance,
    GradedElement,
    Lie2Instance,
    Lie2Morphism,
    Sampler,
    VectorSpace,
    check_crossed_module,
    check_lie2_axioms,
    check_morphism,
    crossed_to_lie2,
    kernel_cokernel_probe,
    tuple_rng,
)
from twoplectic.report import FAIL, INCONCLUSIVE, PASS


def qspace(n, name="Q"):
    return VectorSpace(
        f"{name}^{n}",
        zero=lambda: (Fraction(0),) * n,
        add=lambda a, b: tuple(x + y for x, y in zip(a, b)),
        scale=lambda a, c: tuple(x * c for x in a),
        coords=lambda a: {i: x for i, x in enumerate(a) if x},
    )


def cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def det(a, b, c):
    return sum(x * y for x, y in zip(a, cross(b, c)))


def vec(n):
    return lambda rng: tuple(Fraction(rng.randint(-5, 5)) for _ in range(n))


V3, V1 = qspace(3), qspace(1)
SAMPLER3 = Sampler(low=vec(3), high=vec(3))


def so3_identity(eta_scale=1):
    return CrossedModuleInstance(
        "so3 -> so3",
        h=V3, g=V3, h_bracket=cross, g_bracket=cross,
        eta=lambda v: V3.scale(v, Fraction(eta_scale)), act=cross,
    )


def string_algebra(l3_scale=1, bracket=cross):
    # so(3) with the canonical 3-cocycle <x, [y, z]> as l3 and trivial L_{-1} = Q
    return Lie2Instance(
        "string(so3)", low=V1, high=V3,
        l1_map=lambda u: V3.zero(), bracket=bracket, action=lambda x, u: V1.zero(),
        l3_map=lambda x, y, z: (l3_scale * det(x, y, z),),
    )


STRING_SAMPLER = Sampler(low=vec(1), high=vec(3))


def test_tuple_rng_is_per_index():
    assert tuple_rng(3, 7).random() == tuple_rng(3, 7).random()
    assert tuple_rng(3, 7).random() != tuple_rng(3, 8).random()


def test_graded_element_degrees():
    with pytest.raises(RejectedInput):
        GradedElement(1, None)
    inst = string_algebra()
    with pytest.raises(RejectedInput):
        inst.l1(GradedElement(0, V3.zero()))
    with pytest.raises(RejectedInput):
        inst.l2(GradedElement(-1, V1.zero()), GradedElement(-1, V1.zero()))


def test_zero_algebra_passes():
    z = qspace(2)
    inst = Lie2Instance("zero", low=z, high=z, l1_map=lambda u: z.zero(), bracket=lambda a, b: z.zero(),
                        action=lambda a, u: z.zero(), l3_map=lambda a, b, c: z.zero())
    r = check_lie2_axioms(inst, Sampler(vec(2), vec(2)), 10)
    assert r.status == PASS
    assert [e.name for e in r.results[:5]] == list(LIE2_EQUATIONS)


def test_string_algebra_passes():
    r = check_lie2_axioms(string_algebra(), STRING_SAMPLER, 30, seed=1)
    assert r.status == PASS, r.lines()


def test_broken_bracket_fails_jacobiator():
    # [x, y] + (x0 y0, 0, 0) is bilinear but not antisymmetric nor Jacobi
    def bad(a, b):
        c = cross(a, b)
        return (c[0] + a[0] * b[1], c[1], c[2])

    r = check_lie2_axioms(string_algebra(bracket=bad), STRING_SAMPLER, 20)
    assert r["l2 antisymmetric"].status == FAIL
    assert r[LIE2_EQUATIONS[2]].status == FAIL
    assert r[LIE2_EQUATIONS[2]].witness["tuple"] == 0


def test_non_antisymmetric_l3_detected():
    inst = Lie2Instance("bad l3", low=V1, high=V3, l1_map=lambda u: V3.zero(), bracket=cross,
                        action=lambda x, u: V1.zero(), l3_map=lambda x, y, z: (x[0] * y[0] * z[0],))
    r = check_lie2_axioms(inst, STRING_SAMPLER, 10)
    assert r["l3 totally antisymmetric"].status == FAIL


def test_crossed_module_identity():
    r = check_crossed_module(so3_identity(), SAMPLER3, 20)
    assert r.status == PASS, r.lines()
    assert [e.name for e in r.results[:9]] == list(CROSSED_EQUATIONS)
    # its strict Lie 2-algebra satisfies every Lie 2-algebra equation
    assert check_lie2_axioms(crossed_to_lie2(so3_identity()), SAMPLER3, 20).status == PASS


def test_crossed_module_scaled_eta_breaks_a1():
    # act(2v, w) = 2[v, w] != [v, w]
    r = check_crossed_module(so3_identity(2), SAMPLER3, 10)
    assert r[CROSSED_EQUATIONS[0]].status == FAIL
    assert r[CROSSED_EQUATIONS[1]].status == PASS


def test_abelian_crossed_module():
    zero_br = lambda a, b: V1.zero()  # noqa: E731
    cm = CrossedModuleInstance("abelian", h=V1, g=V1, h_bracket=zero_br, g_bracket=zero_br,
                               eta=lambda v: v, act=zero_br)
    assert check_crossed_module(cm, Sampler(vec(1), vec(1)), 10).status == PASS


def test_exhausted_sampler_is_inconclusive():
    r = check_lie2_axioms(string_algebra(), Sampler(low=lambda rng: None, high=vec(3)), 5)
    assert r.incomplete
    assert r.status == INCONCLUSIVE


def identity_morphism(inst, phi2=None, scale=1):
    return Lie2Morphism(
        inst, inst,
        phi1_low=lambda u: inst.low.scale(u, Fraction(scale)),
        phi1_high=lambda x: inst.high.scale(x, Fraction(scale)),
        phi2=phi2 or (lambda a, b: inst.low.zero()),
    )


def test_identity_morphism_passes():
    inst = string_algebra()
    r = check_morphism(identity_morphism(inst), STRING_SAMPLER, 20)
    assert r.status == PASS
    assert [e.name for e in r.results[:4]] == list(MORPHISM_EQUATIONS)


def test_scaled_morphism_fails():
    # x -> 2x does not preserve a quadratic bracket
    r = check_morphism(identity_morphism(string_algebra(), scale=2), STRING_SAMPLER, 10)
    assert r[MORPHISM_EQUATIONS[1]].status == FAIL
    assert r[MORPHISM_EQUATIONS[0]].status == PASS


def test_morphism_between_different_l3():
    # id: string(l3) -> string(2 l3) needs Phi2 with d Phi2 = l3; none exists with Phi2 = 0
    src, tgt = string_algebra(), string_algebra(2)
    m = Lie2Morphism(src, tgt, lambda u: u, lambda x: x, lambda a, b: V1.zero())
    r = check_morphism(m, STRING_SAMPLER, 10)
    assert r[MORPHISM_EQUATIONS[3]].status == FAIL


def test_kernel_probe_identity_and_zero():
    cm = CrossedModuleInstance("Q -0-> Q", h=V1, g=V1, h_bracket=lambda a, b: V1.zero(),
                               g_bracket=lambda a, b: V1.zero(), eta=lambda v: V1.zero(),
                               act=lambda a, b: V1.zero())
    inst = crossed_to_lie2(cm)
    basis = [(Fraction(1),)]
    ok = kernel_cokernel_probe(identity_morphism(inst), basis, basis, basis, lambda t: (t, V1.zero()))
    assert ok.status == PASS
    bad = kernel_cokernel_probe(identity_morphism(inst, scale=0), basis, basis)
    assert bad["Phi1 maps ker(l1) bijectively onto ker(l1')"].status == FAIL
    assert bad["every degree-0 target element is Phi1(a) + l1'(h)"].status == INCONCLUSIVE


def test_kernel_probe_missing_bases_inconclusive():
    inst = string_algebra()
    r = kernel_cokernel_probe(identity_morphism(inst), [], [])
    assert r.status == INCONCLUSIVE
