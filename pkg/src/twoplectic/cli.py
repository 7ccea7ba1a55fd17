"""Command line entry point: ``verify --scenario PATH --suite NAME``.

Exit status: 0 all pass, 1 any failure, 2 usage or scenario error,
3 only inconclusive results.
"""

from __future__ import annotations

import logging
import sys

import click

from twoplectic.errors import RejectedInput
from twoplectic.polyring import KERNEL
from twoplectic.scenario import ScenarioError, bundled_scenarios, parse_scenario
from twoplectic.suites import ALL, KNOBS, SUITES, run_suite

EXIT_USAGE = 2


@click.command(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--scenario", "scenario_path", metavar="PATH",
              help="Scenario file, or the name of a bundled scenario.")
@click.option("--suite", type=click.Choice(SUITES + (ALL,)), default=ALL, show_default=True)
@click.option("--samples", type=click.IntRange(min=0), default=None, help="Random tuples per suite.")
@click.option("--seed", type=int, default=None, help="Seed (defaults to the scenario's).")
@click.option("--degree-bound", type=click.IntRange(min=0), default=None,
              help="Degree ansatz for Hamiltonian fields and truncations.")
@click.option("--format", "fmt", type=click.Choice(["text", "machine"]), default="text", show_default=True)
@click.option("--perturb", type=click.Choice(sorted(KNOBS)), default=None,
              help="Deliberately break one term to show checker sensitivity.")
@click.option("--list-scenarios", is_flag=True, help="List bundled scenarios and exit.")
@click.option("-v", "--verbose", is_flag=True, help="Log solver warnings to stderr.")
def main(scenario_path, suite, samples, seed, degree_bound, fmt, perturb, list_scenarios, verbose):
    """Verify the 2-plectic identities of a scenario exactly."""
    logging.basicConfig(level=logging.WARNING if verbose else logging.ERROR, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    if list_scenarios:
        for p in bundled_scenarios():
            click.echo(p.stem)
        sys.exit(0)
    if not scenario_path:
        raise click.UsageError("--scenario is required")
    try:
        sc = parse_scenario(scenario_path)
        report = run_suite(sc, suite, samples=samples, seed=seed, degree_bound=degree_bound, perturb=perturb)
    except ScenarioError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_USAGE)
    except RejectedInput as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_USAGE)
    if fmt == "machine":
        click.echo(report.to_machine(), nl=False)
    else:
        click.echo(report.to_text(), nl=False)
        click.echo(f"kernel: {KERNEL}")
    sys.exit(report.exit_code())


if __name__ == "__main__":  # pragma: no cover
    main()
