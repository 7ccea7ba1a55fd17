import random
from fractions import Fraction

import sympy
from hypothesis import given, settings

from twoplectic import linalg

from conftest import seeds


def random_system(rng, nrows, ncols, density=0.5):
    rows = []
    for _ in range(nrows):
        rows.append({j: Fraction(rng.randint(-5, 5), rng.randint(1, 3))
                     for j in range(ncols) if rng.random() < density})
    return rows


def dense(rows, ncols):
    return sympy.Matrix([[sympy.Rational(r.get(j, 0).numerator, r.get(j, 0).denominator) if j in r else 0
                          for j in range(ncols)] for r in rows])


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_rank_and_nullspace_match_sympy(s):
    rng = random.Random(s)
    nr, nc = rng.randint(1, 7), rng.randint(1, 7)
    rows = random_system(rng, nr, nc)
    m = dense(rows, nc)
    cols = list(range(nc))
    assert linalg.rank(rows, cols) == m.rank()
    kernel = linalg.nullspace(rows, cols)
    assert len(kernel) == nc - m.rank()
    for v in kernel:
        for r in rows:
            assert sum(c * v.get(j, 0) for j, c in r.items()) == 0


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_solve_consistent_and_inconsistent(s):
    rng = random.Random(s)
    nr, nc = rng.randint(1, 6), rng.randint(1, 6)
    rows = random_system(rng, nr, nc)
    x = {j: Fraction(rng.randint(-4, 4)) for j in range(nc)}
    rhs = [sum(c * x[j] for j, c in r.items()) for r in rows]
    sol, kernel = linalg.solve(rows, rhs, list(range(nc)))
    assert sol is not None
    for r, b in zip(rows, rhs):
        assert sum(c * sol.get(j, 0) for j, c in r.items()) == b
    # 0 = 1 is inconsistent
    sol, _ = linalg.solve(rows + [{}], rhs + [1], list(range(nc)))
    assert sol is None


def test_hashable_columns():
    rows = [{("a", 1): Fraction(1), ("b", 2): Fraction(-1)}]
    k = linalg.nullspace(rows, [("a", 1), ("b", 2)])
    assert k == [{("b", 2): 1, ("a", 1): 1}]
