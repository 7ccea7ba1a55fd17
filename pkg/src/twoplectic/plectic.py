"""2-plectic structures, Hamiltonian pairs and the observable brackets."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from twoplectic import linalg
from twoplectic.errors import (
    InternalConsistencyError,
    NonUniqueSolution,
    NoSolution,
    RejectedInput,
)
from twoplectic.exterior import (
    Chart,
    DifferentialForm,
    VectorField,
    eval_on_fields,
    ext_d,
    form_coordinates,
    interior,
    vf_bracket,
)
from twoplectic.polyring import Polynomial, as_rational, monomials_up_to

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class NondegeneracyCertificate:
    point: tuple
    rank: int
    dim: int
    kernel_vector: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.rank == self.dim


@dataclass(frozen=True)
class NondegeneracyResult:
    ok: bool
    certificates: tuple
    offending_point: tuple | None = None
    kernel_vector: tuple | None = None

    def __bool__(self):
        return self.ok


def _require_three_form(omega):
    if not isinstance(omega, DifferentialForm):
        raise RejectedInput("expected a differential form")
    if omega.degree != 3:
        raise RejectedInput(f"a 2-plectic form has degree 3, got {omega.degree}")


def check_closed(omega: DifferentialForm) -> bool:
    _require_three_form(omega)
    return ext_d(omega).is_zero()


def contraction_matrix(omega: DifferentialForm, point: Sequence) -> list:
    """Rows of the map v -> i_v omega at a point, one row per 2-form component."""
    chart = omega.chart
    n = chart.dim
    pt = [as_rational(x) for x in point]
    if len(pt) != n:
        raise RejectedInput(f"sample point {tuple(point)} has wrong dimension for {chart}")
    rows: dict = {}
    for i in range(n):
        contracted = interior(VectorField.coordinate(chart, i), omega)
        for idx, c in contracted.components.items():
            val = c.evaluate(pt)
            if val:
                rows.setdefault(idx, {})[i] = val
    return [rows[k] for k in sorted(rows)]


def check_nondegenerate(omega: DifferentialForm, sample_points: Sequence[Sequence]) -> NondegeneracyResult:
    """Certify that i_v omega = 0 forces v = 0 at each sample point (exact rank)."""
    _require_three_form(omega)
    points = [tuple(as_rational(x) for x in p) for p in sample_points]
    if not points:
        raise RejectedInput("non-degeneracy needs at least one sample point")
    n = omega.chart.dim
    certs = []
    for pt in points:
        rows = contraction_matrix(omega, pt)
        kernel = linalg.nullspace(rows, range(n))
        if kernel:
            vec = tuple(kernel[0].get(i, Fraction(0)) for i in range(n))
            certs.append(NondegeneracyCertificate(pt, n - len(kernel), n, vec))
            return NondegeneracyResult(False, tuple(certs), pt, vec)
        certs.append(NondegeneracyCertificate(pt, n, n))
    return NondegeneracyResult(True, tuple(certs))


@dataclass(frozen=True)
class PlecticStructure:
    """A closed 3-form, certified non-degenerate at finitely many points.

    Non-degeneracy is pointwise evidence only; :attr:`witness` records the
    points at which it was checked.
    """

    omega: DifferentialForm
    witness: NondegeneracyResult = field(repr=False)

    @classmethod
    def create(cls, omega: DifferentialForm, sample_points: Sequence[Sequence] | None = None):
        _require_three_form(omega)
        if not check_closed(omega):
            raise RejectedInput(f"omega is not closed: d omega = {ext_d(omega).to_text()}")
        if sample_points is None:
            sample_points = default_sample_points(omega.chart.dim)
        witness = check_nondegenerate(omega, sample_points)
        if not witness.ok:
            raise RejectedInput(
                f"omega is degenerate at {_fmt_point(witness.offending_point)}; "
                f"kernel vector {_fmt_point(witness.kernel_vector)}"
            )
        return cls(omega, witness)

    @property
    def chart(self) -> Chart:
        return self.omega.chart

    def is_hamiltonian_pair(self, alpha: DifferentialForm, X: VectorField) -> bool:
        return ext_d(alpha) == interior(X, self.omega)

    def pair(self, alpha: DifferentialForm, X: VectorField) -> "HamiltonianPair":
        """Verify a caller-supplied (alpha, X) and certify it for this structure."""
        _check_one_form(alpha, self.chart)
        if X.chart != self.chart:
            raise RejectedInput("vector field is on a different chart")
        if not self.is_hamiltonian_pair(alpha, X):
            residual = ext_d(alpha) - interior(X, self.omega)
            raise RejectedInput(f"d alpha != i_X omega; residual {residual.to_text()}")
        return HamiltonianPair(alpha, X, self.omega)

    def require(self, pair: "HamiltonianPair") -> "HamiltonianPair":
        if not isinstance(pair, HamiltonianPair):
            raise RejectedInput(f"expected a HamiltonianPair, got {type(pair).__name__}")
        if pair.certified_for is not None and pair.certified_for == self.omega:
            return pair
        if pair.alpha.chart == self.chart and self.is_hamiltonian_pair(pair.alpha, pair.X):
            return HamiltonianPair(pair.alpha, pair.X, self.omega)
        raise RejectedInput("pair is not Hamiltonian for this 2-plectic structure")


def default_sample_points(dim: int) -> list:
    pts = [tuple([0] * dim), tuple(range(1, dim + 1)), tuple((-1) ** i * Fraction(1, i + 2) for i in range(dim))]
    return [tuple(Fraction(x) for x in p) for p in pts]


def _fmt_point(p):
    return "(" + ", ".join(str(x) for x in p) + ")" if p is not None else "-"


def _check_one_form(alpha, chart):
    if not isinstance(alpha, DifferentialForm) or alpha.degree != 1:
        raise RejectedInput("expected a 1-form")
    if alpha.chart != chart:
        raise RejectedInput(f"1-form lives on {alpha.chart}, expected {chart}")


@dataclass(frozen=True)
class HamiltonianPair:
    """A 1-form alpha together with its Hamiltonian vector field X."""

    alpha: DifferentialForm
    X: VectorField
    certified_for: DifferentialForm | None = field(default=None, compare=False, repr=False)

    def __add__(self, other):
        return HamiltonianPair(self.alpha + other.alpha, self.X + other.X, _common(self, other))

    def __sub__(self, other):
        return HamiltonianPair(self.alpha - other.alpha, self.X - other.X, _common(self, other))

    def __neg__(self):
        return HamiltonianPair(-self.alpha, -self.X, self.certified_for)

    def scale(self, c) -> "HamiltonianPair":
        c = as_rational(c)
        return HamiltonianPair(self.alpha * c, self.X * c, self.certified_for)

    def is_zero(self) -> bool:
        return self.alpha.is_zero() and self.X.is_zero()

    def to_text(self) -> str:
        return f"(alpha = {self.alpha.to_text()}, X = {self.X.to_text()})"


def _common(a: HamiltonianPair, b: HamiltonianPair):
    if a.certified_for is not None and a.certified_for == b.certified_for:
        return a.certified_for
    return None


def _solve_columns(ps: PlecticStructure, degree_bound: int):
    chart = ps.chart
    n = chart.dim
    monos = monomials_up_to(n, degree_bound)
    basis = [interior(VectorField.coordinate(chart, i), ps.omega) for i in range(n)]
    columns = []
    column_rows: dict = {}
    for i in range(n):
        for m in monos:
            col = (i, m)
            columns.append(col)
            contrib = basis[i] * Polynomial.monomial(n, m)
            for key, v in form_coordinates(contrib).items():
                column_rows.setdefault(key, {})[col] = v
    return columns, column_rows


def solve_hamiltonian(
    ps: PlecticStructure,
    alpha: DifferentialForm,
    degree_bound: int,
    require_unique: bool = False,
) -> HamiltonianPair:
    """Find X with d alpha = i_X omega among fields of total degree <= degree_bound.

    Raises :class:`NoSolution` if no such field exists.  The homogeneous
    system's kernel is checked; a nontrivial kernel means X is not unique
    within the ansatz, which is logged (or raised with ``require_unique``).
    """
    _check_one_form(alpha, ps.chart)
    if not isinstance(degree_bound, int) or degree_bound < 0:
        raise RejectedInput("degree_bound must be a non-negative integer")
    chart = ps.chart
    n = chart.dim
    columns, column_rows = _solve_columns(ps, degree_bound)
    target = form_coordinates(ext_d(alpha))
    keys = sorted(set(column_rows) | set(target))
    rows = [column_rows.get(k, {}) for k in keys]
    rhs = [target.get(k, 0) for k in keys]
    sol, kernel = linalg.solve(rows, rhs, columns)
    if sol is None:
        raise NoSolution(
            f"no Hamiltonian vector field of degree <= {degree_bound} for alpha = {alpha.to_text()}"
        )
    if kernel:
        msg = f"Hamiltonian field not unique: {len(kernel)}-dimensional polynomial kernel"
        if require_unique:
            raise NonUniqueSolution(msg)
        log.warning(msg)
    comps = [dict() for _ in range(n)]
    for (i, m), v in sol.items():
        comps[i][m] = v
    X = VectorField(chart, [Polynomial(n, c) for c in comps])
    if not ps.is_hamiltonian_pair(alpha, X):
        raise InternalConsistencyError("solver returned an unverified Hamiltonian field")
    return HamiltonianPair(alpha, X, ps.omega)


def homogeneous_kernel_dim(ps: PlecticStructure, degree_bound: int) -> int:
    """Dimension of {X of degree <= bound : i_X omega = 0}."""
    columns, column_rows = _solve_columns(ps, degree_bound)
    return len(linalg.nullspace([column_rows[k] for k in sorted(column_rows)], columns))


def l2_bracket(ps: PlecticStructure, a: HamiltonianPair, b: HamiltonianPair) -> HamiltonianPair:
    """({a, b}, [X_a, X_b]) with {a, b} = i_{X_a} i_{X_b} omega."""
    a = ps.require(a)
    b = ps.require(b)
    alpha = interior(a.X, interior(b.X, ps.omega))
    X = vf_bracket(a.X, b.X)
    if not ps.is_hamiltonian_pair(alpha, X):
        residual = ext_d(alpha) - interior(X, ps.omega)
        raise InternalConsistencyError(
            "bracket of Hamiltonian pairs is not Hamiltonian", residual.to_text()
        )
    return HamiltonianPair(alpha, X, ps.omega)


def l3_triple(ps: PlecticStructure, a: HamiltonianPair, b: HamiltonianPair, c: HamiltonianPair) -> Polynomial:
    """omega(X_a, X_b, X_c)."""
    a, b, c = ps.require(a), ps.require(b), ps.require(c)
    return eval_on_fields(ps.omega, [a.X, b.X, c.X])


def exact_pair(ps: PlecticStructure, f: Polynomial) -> HamiltonianPair:
    """(df, 0): exact forms are Hamiltonian with vanishing field."""
    chart = ps.chart
    return HamiltonianPair(ext_d(DifferentialForm.function(chart, f)), VectorField.zero(chart), ps.omega)


def random_hamiltonian(rng, ps: PlecticStructure, degree_bound: int = 3, attempts: int = 20, **poly_kwargs):
    """Random 1-form with a solvable Hamiltonian field; None if every attempt fails."""
    from twoplectic.exterior import random_form

    for _ in range(attempts):
        alpha = random_form(rng, ps.chart, 1, **poly_kwargs)
        try:
            return solve_hamiltonian(ps, alpha, degree_bound)
        except NoSolution:
            continue
    return None


