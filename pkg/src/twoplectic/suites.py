"""Suite orchestration: scenario in, :class:`Report` out."""

from __future__ import annotations

import logging
import time

from twoplectic import gerbe_sections, observables, prequant
from twoplectic.errors import NoSolution, RejectedInput
from twoplectic.laws import check_exterior_laws
from twoplectic.lie2 import (
    Sampler,
    check_crossed_module,
    check_lie2_axioms,
    check_morphism,
    crossed_to_lie2,
    kernel_cokernel_probe,
    tuple_rng,
)
from twoplectic.plectic import HamiltonianPair, random_hamiltonian, solve_hamiltonian
from twoplectic.polyring import random_polynomial
from twoplectic.report import INCONCLUSIVE, Report, SuiteReport
from twoplectic.scenario import Scenario

log = logging.getLogger(__name__)

SUITES = ("exterior-laws", "observables-axioms", "crossed-module", "prequant-morphism", "quasi-iso")
ALL = "all"

# which suite each perturbation knob belongs to
KNOBS = {
    "l3-scaled-2": "observables-axioms",
    "drop-theta-section": "crossed-module",
    "drop-theta-action": "crossed-module",
    "phi2-drop-pairing": "prequant-morphism",
    "phi2-zero": "prequant-morphism",
}


def _inconclusive(name: str, reason: str) -> SuiteReport:
    r = SuiteReport(name)
    eq = r.equation("suite")
    eq.status = INCONCLUSIVE
    eq.reason = reason
    return r


def _fixture_pairs(s: Scenario, degree_bound: int) -> list:
    pairs = [v for v in s.fixtures.values() if isinstance(v, HamiltonianPair)]
    for alpha in s.hamiltonian_forms:
        try:
            pairs.append(solve_hamiltonian(s.ps, alpha, degree_bound))
        except NoSolution as exc:
            log.warning("skipping hamiltonian form: %s", exc)
    return pairs


def _obs_sampler(s: Scenario, degree_bound: int) -> Sampler:
    return observables.observables_sampler(s.ps, degree_bound, _fixture_pairs(s, degree_bound))


def suite_exterior_laws(s: Scenario, samples, seed, degree_bound, perturb):
    r = check_exterior_laws(samples, seed, chart=s.total)
    r.name = f"exterior-laws on {s.total}"
    return r


def suite_observables(s: Scenario, samples, seed, degree_bound, perturb):
    inst = observables.build_observables(s.ps, perturb if KNOBS.get(perturb) == "observables-axioms" else None)
    return check_lie2_axioms(inst, _obs_sampler(s, degree_bound), samples, seed)


def suite_crossed_module(s: Scenario, samples, seed, degree_bound, perturb):
    sb = s.bundle()
    if sb is None:
        return [_inconclusive("crossed-module", "scenario provides neither theta nor chi")]
    knob = perturb if KNOBS.get(perturb) == "crossed-module" else None
    cm = gerbe_sections.build_section_crossed_module(sb, knob)
    sampler = gerbe_sections.section_sampler(sb, s.ps, degree_bound)
    reports = [check_crossed_module(cm, sampler, samples, seed)]
    strict = check_lie2_axioms(crossed_to_lie2(cm), sampler, samples, seed, structural=False)
    reports.append(strict)
    return reports


def suite_prequant(s: Scenario, samples, seed, degree_bound, perturb):
    es = s.exact()
    if es is None:
        return _inconclusive("prequant-morphism", "prequant-morphism needs chi with d chi = omega")
    knob = perturb if KNOBS.get(perturb) == "prequant-morphism" else None
    m = prequant.build_prequant_morphism(es, knob)
    r = check_morphism(m, _obs_sampler(s, degree_bound), samples, seed)
    r.name = "prequant-morphism"
    return r


def suite_quasi_iso(s: Scenario, samples, seed, degree_bound, perturb):
    es = s.exact()
    if es is None:
        return _inconclusive("quasi-isomorphism probe", "quasi-iso needs chi with d chi = omega")
    m = prequant.build_prequant_morphism(es)
    cap = degree_bound
    probe = kernel_cokernel_probe(
        m,
        prequant.function_truncation(s.base, cap),
        prequant.section_truncation(es, cap),
        prequant.weak_symmetry_truncation(es, cap),
        prequant.decomposition(es),
    )
    probe.name = f"quasi-isomorphism probe (degree cap {cap})"
    probe.notes.append("truncations are polynomial degree caps; evidence is finite-dimensional")
    return [probe, round_trip(es, samples, seed, degree_bound)]


def round_trip(es, samples: int, seed: int, degree_bound: int) -> SuiteReport:
    """decompose(Phi1(alpha) + eta(0, h)) == (alpha, h) on random pairs."""
    r = SuiteReport("decomposition round trip")
    eq = r.equation("decompose(Phi1(alpha) + eta(0,h)) = (alpha, h)")
    n = es.chart.dim
    for t in range(samples):
        rng = tuple_rng(seed, t)
        pair = random_hamiltonian(rng, es.ps, degree_bound, max_degree=degree_bound)
        if pair is None:
            r.incomplete = True
            break
        h = random_polynomial(rng, n, max_degree=degree_bound)
        try:
            got_pair, got_h = prequant.decompose_weak_symmetry(es, prequant.recompose(es, pair, h))
            ok = got_pair == pair and got_h == h
        except RejectedInput as exc:
            eq.record_fail({"tuple": t, "alpha": pair.alpha.to_text(), "error": str(exc)})
            continue
        if ok:
            eq.record_pass()
        else:
            eq.record_fail({"tuple": t, "alpha": pair.alpha.to_text(), "h": h.to_text(es.chart.names),
                            "recovered alpha": got_pair.alpha.to_text(),
                            "recovered h": got_h.to_text(es.chart.names)})
    return r.finalize(samples)


RUNNERS = {
    "exterior-laws": suite_exterior_laws,
    "observables-axioms": suite_observables,
    "crossed-module": suite_crossed_module,
    "prequant-morphism": suite_prequant,
    "quasi-iso": suite_quasi_iso,
}


def run_suite(s: Scenario, suite: str, samples: int | None = None, seed: int | None = None,
              degree_bound: int | None = None, perturb: str | None = None) -> Report:
    """Run one suite (or ``all``) and collect a deterministic report."""
    if suite != ALL and suite not in RUNNERS:
        raise RejectedInput(f"unknown suite {suite!r}; choose from {', '.join(SUITES + (ALL,))}")
    if perturb is not None and perturb not in KNOBS:
        raise RejectedInput(f"unknown perturbation {perturb!r}; choose from {', '.join(KNOBS)}")
    samples = s.samples if samples is None else samples
    seed = s.seed if seed is None else seed
    degree_bound = s.degree_bound if degree_bound is None else degree_bound
    if samples < 0 or degree_bound < 0:
        raise RejectedInput("samples and degree bound must be non-negative")
    settings = {
        "degree_bound": degree_bound,
        "mode": s.mode,
        "nondegeneracy": f"certified at {len(s.nondeg_points)} sample points (pointwise only)",
    }
    if perturb:
        settings["perturb"] = perturb
    report = Report(s.name, seed, samples, settings=settings)
    names = SUITES if suite == ALL else (suite,)
    for name in names:
        start = time.perf_counter()
        out = RUNNERS[name](s, samples, seed, degree_bound, perturb)
        elapsed = time.perf_counter() - start
        out = out if isinstance(out, list) else [out]
        report.suites.extend(out)
        # the runner's time is attributed to its first report
        report.timings[out[0].name] = elapsed
    return report
