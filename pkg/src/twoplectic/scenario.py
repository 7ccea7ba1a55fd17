"""Scenario files: YAML documents holding charts, forms and fixtures.

Example::

    name: r3-volume
    base_vars: [x, y, z]
    omega: dx^dy^dz
    chi: x*dy^dz
    hamiltonian_forms: [x*dy, y*dz, z*dx]
    degree_bound: 3
    samples: 50
    seed: 0
    nondeg_points: [[0, 0, 0], [1, "1/2", -3]]

Fixtures are named elements, recognised by their keys::

    fixtures:
      f1: {function: x*y}
      a1: {alpha: x*dy, X: d/dz}
      s1: {Z: d/du, h: x*u}
      w1: {X: d/dz, g: 0, B: 0}

Values that fail to parse are reported with the line and column of the
offending YAML node.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import yaml

from twoplectic.errors import RejectedInput
from twoplectic.exterior import Chart, DifferentialForm, ext_d, pullback_projection
from twoplectic.gerbe_sections import SurrogateBundle, mult_data, section, WeakSymmetryTriple
from twoplectic.plectic import PlecticStructure, default_sample_points
from twoplectic.polyring import as_rational
from twoplectic.prequant import ExactScenario
from twoplectic.syntax import ParseError, parse_form, parse_polynomial, parse_vector_field

KEYS = (
    "name", "base_vars", "fiber_vars", "omega", "chi", "theta", "hamiltonian_forms",
    "fixtures", "degree_bound", "samples", "seed", "nondeg_points",
)
BUNDLED = Path(__file__).parent / "scenarios"


class ScenarioError(RejectedInput):
    def __init__(self, message, source="<scenario>", line=None, column=None):
        self.source = source
        self.line = line
        self.column = column
        where = source
        if line is not None:
            where += f":{line}"
            if column is not None:
                where += f":{column}"
        super().__init__(f"{where}: {message}")


@dataclass
class Scenario:
    name: str
    base: Chart
    fiber_vars: tuple
    omega: DifferentialForm
    ps: PlecticStructure
    chi: DifferentialForm | None = None
    theta: DifferentialForm | None = None
    hamiltonian_forms: list = field(default_factory=list)
    fixtures: dict = field(default_factory=dict)
    degree_bound: int = 3
    samples: int = 50
    seed: int = 0
    nondeg_points: list = field(default_factory=list)
    source: str = "<scenario>"

    @property
    def total(self) -> Chart:
        return Chart(self.base.names + self.fiber_vars)

    @property
    def mode(self) -> str:
        if self.fiber_vars:
            return "surrogate-bundle"
        return "exact" if self.chi is not None else "plectic"

    def exact(self) -> ExactScenario | None:
        if self.chi is None:
            return None
        return ExactScenario.create(self.ps, self.chi)

    def bundle(self) -> SurrogateBundle | None:
        if self.theta is not None:
            return SurrogateBundle.create(self.base.names, self.fiber_vars, self.omega, self.theta, ps=self.ps)
        if self.chi is not None:
            total = self.total
            theta = pullback_projection(self.chi, total, range(self.base.dim))
            return SurrogateBundle.create(self.base.names, self.fiber_vars, self.omega, theta, ps=self.ps)
        return None


def _construct(node):
    """Plain Python data from a YAML node, keeping positions for scalars."""
    if isinstance(node, yaml.MappingNode):
        out = {}
        for k, v in node.value:
            out[_scalar(k)] = _construct(v)
        return _Node(node, out)
    if isinstance(node, yaml.SequenceNode):
        return _Node(node, [_construct(v) for v in node.value])
    return _Node(node, _scalar(node))


class _Node:
    def __init__(self, node, value):
        self.value = value
        self.line = node.start_mark.line + 1
        self.column = node.start_mark.column + 1


def _scalar(node):
    if not isinstance(node, yaml.ScalarNode):
        raise ScenarioError("expected a scalar", line=node.start_mark.line + 1, column=node.start_mark.column + 1)
    tag = node.tag
    if tag.endswith(":int"):
        return int(node.value)
    if tag.endswith(":null"):
        return None
    if tag.endswith(":bool"):
        return node.value.lower() in ("true", "yes", "on")
    return node.value


def load_scenario_text(text: str, source: str = "<scenario>") -> Scenario:
    try:
        root = yaml.compose(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark
        raise ScenarioError(f"YAML error: {exc.problem}", source,
                            mark.line + 1 if mark else None, mark.column + 1 if mark else None) from None
    if root is None or not isinstance(root, yaml.MappingNode):
        raise ScenarioError("scenario must be a mapping", source, 1, 1)
    try:
        doc = _construct(root)
    except ScenarioError as exc:
        raise ScenarioError(str(exc).split(": ", 1)[-1], source, exc.line, exc.column) from None
    return _build(doc, source)


def parse_scenario(path) -> Scenario:
    """Load and validate a scenario; a bare name refers to a bundled scenario."""
    p = resolve(path)
    return load_scenario_text(p.read_text(), str(path))


def resolve(path) -> Path:
    p = Path(path)
    if p.exists():
        return p
    for cand in (BUNDLED / p.name, BUNDLED / f"{p.name}.scn"):
        if cand.exists():
            return cand
    raise ScenarioError("no such scenario file", str(path))


def bundled_scenarios() -> list:
    return sorted(BUNDLED.glob("*.scn"))


class _Builder:
    def __init__(self, doc: _Node, source: str):
        self.doc = doc.value
        self.node = doc
        self.source = source

    def fail(self, message, node=None):
        node = node or self.node
        raise ScenarioError(message, self.source, node.line, node.column)

    def get(self, key, default=None, required=False):
        if key in self.doc:
            return self.doc[key]
        if required:
            self.fail(f"missing required key {key!r}")
        return default

    def text(self, node: _Node, what: str) -> str:
        if isinstance(node.value, (list, dict)) or node.value is None:
            self.fail(f"{what} must be a string", node)
        return str(node.value)

    def parse(self, fn, node: _Node, what: str, *args):
        text = self.text(node, what)
        try:
            return fn(text, *args)
        except ParseError as exc:
            raise ScenarioError(f"{what}: {exc}", self.source, node.line, node.column + exc.pos) from None
        except RejectedInput as exc:
            self.fail(f"{what}: {exc}", node)

    def names(self, key, required=False) -> tuple:
        node = self.get(key, required=required)
        if node is None:
            return ()
        if not isinstance(node.value, list):
            self.fail(f"{key} must be a list of identifiers", node)
        return tuple(self.text(n, key) for n in node.value)

    def integer(self, key, default, minimum=0) -> int:
        node = self.get(key)
        if node is None:
            return default
        if not isinstance(node.value, int) or isinstance(node.value, bool) or node.value < minimum:
            self.fail(f"{key} must be an integer >= {minimum}", node)
        return node.value


def _build(doc: _Node, source: str) -> Scenario:
    b = _Builder(doc, source)
    if not isinstance(doc.value, dict):
        b.fail("scenario must be a mapping")
    for key, node in doc.value.items():
        if key not in KEYS:
            b.fail(f"unknown key {key!r}", node)
    name_node = b.get("name")
    name = b.text(name_node, "name") if name_node is not None else Path(source).stem
    base_names = b.names("base_vars", required=True)
    fiber_names = b.names("fiber_vars")
    try:
        base = Chart(base_names)
        total = Chart(base_names + fiber_names)
    except RejectedInput as exc:
        b.fail(str(exc), b.get("base_vars"))
    omega = b.parse(parse_form, b.get("omega", required=True), "omega", base, 3)
    if not ext_d(omega).is_zero():
        b.fail(f"d omega != 0; residual {ext_d(omega).to_text()}", b.get("omega"))

    points_node = b.get("nondeg_points")
    if points_node is None:
        points = default_sample_points(base.dim)
    else:
        if not isinstance(points_node.value, list) or not points_node.value:
            b.fail("nondeg_points must be a non-empty list of points", points_node)
        points = []
        for pn in points_node.value:
            if not isinstance(pn.value, list) or len(pn.value) != base.dim:
                b.fail(f"each point needs {base.dim} coordinates", pn)
            try:
                points.append(tuple(as_rational(_rational(c.value)) for c in pn.value))
            except (ValueError, ZeroDivisionError, TypeError):
                b.fail("coordinates must be integers or p/q strings", pn)
    try:
        ps = PlecticStructure.create(omega, points)
    except RejectedInput as exc:
        b.fail(str(exc), b.get("omega"))

    chi = theta = None
    if b.get("chi") is not None:
        chi = b.parse(parse_form, b.get("chi"), "chi", base, 2)
        residual = ext_d(chi) - omega
        if not residual.is_zero():
            b.fail(f"d chi != omega; residual {residual.to_text()}", b.get("chi"))
    if b.get("theta") is not None:
        theta = b.parse(parse_form, b.get("theta"), "theta", total, 2)
        residual = ext_d(theta) - pullback_projection(omega, total, range(base.dim))
        if not residual.is_zero():
            b.fail(f"d theta != pullback(omega); residual {residual.to_text()}", b.get("theta"))

    forms = []
    hf = b.get("hamiltonian_forms")
    if hf is not None:
        if not isinstance(hf.value, list):
            b.fail("hamiltonian_forms must be a list", hf)
        forms = [b.parse(parse_form, n, "hamiltonian form", base, 1) for n in hf.value]

    sc = Scenario(
        name=name,
        base=base,
        fiber_vars=fiber_names,
        omega=omega,
        ps=ps,
        chi=chi,
        theta=theta,
        hamiltonian_forms=forms,
        degree_bound=b.integer("degree_bound", 3),
        samples=b.integer("samples", 50),
        seed=b.integer("seed", 0),
        nondeg_points=points,
        source=source,
    )
    fx = b.get("fixtures")
    if fx is not None:
        if not isinstance(fx.value, dict):
            b.fail("fixtures must be a mapping of names to elements", fx)
        for fname, node in fx.value.items():
            sc.fixtures[fname] = _fixture(b, sc, fname, node)
    return sc


def _rational(v):
    if isinstance(v, int):
        return v
    return Fraction(str(v).strip())


def _fixture(b: _Builder, sc: Scenario, name, node: _Node):
    if not isinstance(node.value, dict):
        b.fail(f"fixture {name!r} must be a mapping", node)
    keys = set(node.value)
    v = node.value
    base, total = sc.base, sc.total
    try:
        if keys == {"function"}:
            return b.parse(parse_polynomial, v["function"], f"fixture {name}", base)
        if keys == {"alpha", "X"}:
            alpha = b.parse(parse_form, v["alpha"], f"fixture {name}", base, 1)
            X = b.parse(parse_vector_field, v["X"], f"fixture {name}", base)
            return sc.ps.pair(alpha, X)
        if keys == {"Z", "h"}:
            Z = b.parse(parse_vector_field, v["Z"], f"fixture {name}", total)
            h = b.parse(parse_polynomial, v["h"], f"fixture {name}", total)
            return section(_bundle_or_fail(b, sc, node), Z, h)
        if keys == {"X", "g", "B"}:
            sb = _bundle_or_fail(b, sc, node)
            X = b.parse(parse_vector_field, v["X"], f"fixture {name}", total)
            g = b.parse(parse_polynomial, v["g"], f"fixture {name}", total)
            B = b.parse(parse_form, v["B"], f"fixture {name}", total, 1)
            from twoplectic.gerbe_sections import is_weak_symmetry

            m = mult_data(sb, X, g)
            ok, _ = is_weak_symmetry(sb, m, B)
            if not ok:
                b.fail(f"fixture {name!r} is not a weak symmetry", node)
            return WeakSymmetryTriple(m, B)
    except ScenarioError:
        raise
    except RejectedInput as exc:
        b.fail(f"fixture {name!r}: {exc}", node)
    b.fail(f"fixture {name!r} has unrecognised keys {sorted(keys)}", node)


def _bundle_or_fail(b, sc, node):
    sb = sc.bundle()
    if sb is None:
        b.fail("section and weak-symmetry fixtures need theta or chi", node)
    return sb
