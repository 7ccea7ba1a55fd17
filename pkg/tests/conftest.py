import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import strategies as st

from twoplectic.exterior import Chart
from twoplectic.plectic import PlecticStructure
from twoplectic.polyring import Polynomial, random_polynomial

R3 = Chart(("x", "y", "z"))


@pytest.fixture(scope="session")
def r3():
    return R3


@pytest.fixture(scope="session")
def vol(r3):
    return PlecticStructure.create(r3.form("dx^dy^dz"))


@pytest.fixture(scope="session")
def exact(vol):
    from twoplectic.prequant import ExactScenario

    return ExactScenario.create(vol, "x*dy^dz")


@pytest.fixture(scope="session")
def line_bundle():
    from twoplectic.gerbe_sections import SurrogateBundle

    return SurrogateBundle.create("xyz", "u", R3.form("dx^dy^dz"), "x*dy^dz + du^dx")


@pytest.fixture(scope="session")
def plane_bundle():
    from twoplectic.gerbe_sections import SurrogateBundle

    return SurrogateBundle.create("xyz", ("u", "v"), R3.form("dx^dy^dz"), "x*dy^dz + du^dx + du^dv")


# seeds drive the package's own generators so hypothesis shrinks over seeds
seeds = st.integers(min_value=0, max_value=2**32 - 1)


def rand_poly(seed, nvars=3, **kw):
    return random_polynomial(random.Random(seed), nvars, **kw)


def to_sympy(p: Polynomial, syms):
    expr = sympy.Integer(0)
    for mono, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(syms, mono):
            term *= s**e
        expr += term
    return sympy.expand(expr)


def from_sympy(expr, syms) -> Polynomial:
    poly = sympy.Poly(sympy.expand(expr), *syms)
    terms = {}
    for mono, c in poly.terms():
        c = sympy.Rational(c)
        terms[tuple(mono)] = Fraction(int(c.p), int(c.q))
    return Polynomial(len(syms), terms)


_ACCEPTANCE: dict = {}


@pytest.fixture
def record_criterion():
    """Record one acceptance line; printed again in the terminal summary."""

    def record(number, ok, detail=""):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip()
        _ACCEPTANCE[number] = line
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        terminalreporter.write_line(_ACCEPTANCE[n])
