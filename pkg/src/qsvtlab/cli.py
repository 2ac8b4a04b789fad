"""Command-line harness.

Exit codes: 0 all checks pass, 1 at least one check failed, 2 configuration
or I/O error.  ``QSVTLAB_REPORT_PATH`` overrides the report path.
"""

from __future__ import annotations

import json
import os
import sys

import click
import numpy as np

from . import blocks, engine
from .defaults import EPS_UNIT
from .demos import demo_instance, demo_names
from .errors import ConfigInvalid, ParseError, QsvtLabError, UnknownDemo
from .linalg import frob
from .matio import load_matrix, load_schedule
from .reporting import Report
from .suite import SuiteConfig, run_suite

REPORT_ENV = "QSVTLAB_REPORT_PATH"


@click.group()
def main():
    """Verification harness for block-embedded singular value transforms."""


def _fail_config(message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(2)


def _load_config_file(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        _fail_config(f"cannot read config {path}: {exc}")
    if not isinstance(data, dict):
        _fail_config(f"config {path} must be a JSON object")
    return data


@main.command()
@click.option("--config", "config_path", type=click.Path(), default=None, help="JSON config file.")
@click.option("--seed", type=int, default=None)
@click.option("--trials", type=int, default=None)
@click.option("--max-dim", type=int, default=None)
@click.option("--max-n", type=int, default=None)
@click.option("--suites", type=str, default=None, help="Comma-separated suite names (default: all).")
@click.option("--report-path", type=click.Path(), default=None)
@click.option("--format", "fmt", type=click.Choice(["text", "machine"]), default="text")
def run(config_path, seed, trials, max_dim, max_n, suites, report_path, fmt):
    """Run verification suites over random instances."""
    data = _load_config_file(config_path) if config_path else {}
    if seed is not None:
        data["seed"] = seed
    if trials is not None:
        data["trials"] = trials
    if max_dim is not None:
        data["max_dim"] = max_dim
    if max_n is not None:
        data["max_n"] = max_n
    if suites is not None:
        data["suites"] = [s.strip() for s in suites.split(",") if s.strip()]
    if report_path is not None:
        data["report_path"] = report_path
    env_path = os.environ.get(REPORT_ENV)
    if env_path:
        data["report_path"] = env_path

    try:
        cfg = SuiteConfig.from_mapping(data)
        result = run_suite(cfg)
    except ConfigInvalid as exc:
        _fail_config(str(exc))
    except OSError as exc:
        _fail_config(f"I/O failure: {exc}")

    click.echo(result.to_json() if fmt == "machine" else result.to_text())
    sys.exit(0 if result.passed else 1)


@main.command()
@click.option("--name", required=True, help=f"One of: {', '.join(demo_names())}.")
@click.option("--format", "fmt", type=click.Choice(["text", "machine"]), default="text")
def demo(name, fmt):
    """Build a named demo instance and run the core checks on it."""
    try:
        bu, schedule = demo_instance(name)
    except UnknownDemo as exc:
        _fail_config(str(exc))

    report = _instance_report(bu, schedule)
    _emit_instance_report(name, bu, schedule, report, fmt)
    sys.exit(0 if report.passed else 1)


@main.command("check-file")
@click.option("--matrix", "matrix_path", required=True, type=click.Path(), help="Unitary matrix file.")
@click.option("--schedule", "schedule_path", type=click.Path(), default=None)
@click.option("--domain-dim", type=int, default=None, help="Domain subspace dim (default: N//2).")
@click.option("--codomain-dim", type=int, default=None, help="Codomain subspace dim (default: N//2).")
@click.option("--format", "fmt", type=click.Choice(["text", "machine"]), default="text")
def check_file(matrix_path, schedule_path, domain_dim, codomain_dim, fmt):
    """Verify a user-supplied unitary (and optional schedule) from files."""
    from .polynomials import PhaseSchedule

    try:
        u = load_matrix(matrix_path)
        schedule = load_schedule(schedule_path) if schedule_path else PhaseSchedule(())
    except (ParseError, OSError) as exc:
        _fail_config(str(exc))

    n = u.shape[0]
    if u.shape[0] != u.shape[1]:
        _fail_config(f"matrix must be square, got {u.shape}")
    dh = domain_dim if domain_dim is not None else n // 2
    dk = codomain_dim if codomain_dim is not None else n // 2
    try:
        bu = blocks.decompose(u, blocks.SubspaceSplit.coordinate(n, dh), blocks.SubspaceSplit.coordinate(n, dk))
    except QsvtLabError as exc:
        click.echo(f"verification failed: {exc}", err=True)
        sys.exit(1)

    report = _instance_report(bu, schedule)
    _emit_instance_report(matrix_path, bu, schedule, report, fmt)
    sys.exit(0 if report.passed else 1)


def _instance_report(bu, schedule) -> Report:
    """Core identity checks on one instance: block relations, coisometry,
    rotated projector, and (with a schedule) the product block forms."""
    parts = [
        blocks.unitarity_relations(bu),
        blocks.coisometry_check(bu),
        blocks.rotated_projector_check(bu, 1.234),
    ]
    if schedule.n:
        parts.append(engine.block_form_check(engine.even_product(bu, schedule)))
    if schedule.final_angle is not None:
        parts.append(engine.block_form_check(engine.odd_product(bu, schedule)))
    return Report.merged(*parts)


def _emit_instance_report(name, bu, schedule, report: Report, fmt: str):
    if fmt == "machine":
        payload = {
            "instance": str(name),
            "dims": list(bu.dims),
            "n": schedule.n,
            "records": [
                {"check": r.name, "residual": r.residual, "threshold": r.threshold, "passed": r.passed}
                for r in report
            ],
            "passed": report.passed,
        }
        click.echo(json.dumps(payload, indent=1, sort_keys=True))
        return
    n, dh, dk = bu.dims
    click.echo(f"instance {name}: dim {n}, domain sub-dim {dh}, codomain sub-dim {dk}, steps {schedule.n}")
    unit_residual = frob(bu.matrix.conj().T @ bu.matrix - np.eye(n))
    click.echo(f"unitarity residual: {unit_residual:.3e} (tol {EPS_UNIT:.1e})")
    for record in report:
        click.echo(str(record))
    click.echo("all checks passed" if report.passed else "CHECKS FAILED")


if __name__ == "__main__":
    main()
