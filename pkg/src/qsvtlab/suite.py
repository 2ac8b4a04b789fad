"""Verification suite: named check families over reproducible random instances.

Every suite draws its instances from a Philox stream seeded by
``(seed, suite index, trial index)``, so reports are deterministic per seed
and independent of execution order.  Each trial contributes one record: the
worst check of that trial's report.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from . import blocks, engine, polynomials, qsp, subspaces
from .defaults import EPS_EIG, EPS_POLY, EPS_UNIT
from .errors import ConfigInvalid
from .instances import random_block_unitary, random_schedule
from .reporting import Report

BOUNDARY_MAX_N = 50     # schedule length cap for the endpoint-identity suite
CHEBYSHEV_MAX_N = 50    # power cap for the homogeneous closed-form suite
QSP_MAX_N = 6           # schedule length cap for the 1e-10 2x2 consistency suite
SIGMA_GRID = 20         # sigma grid points per 2x2 consistency trial


@dataclass(frozen=True)
class SuiteConfig:
    """Configuration for :func:`run_suite`."""

    seed: int = 1
    trials: int = 100
    max_dim: int = 16
    max_n: int = 10
    tolerances: Mapping[str, float] = field(default_factory=dict)
    suites: tuple[str, ...] = ()  # empty means: all
    report_path: str | None = None

    def validate(self) -> "SuiteConfig":
        if self.trials < 1:
            raise ConfigInvalid(f"trials must be >= 1, got {self.trials}")
        if self.max_dim < 2:
            raise ConfigInvalid(f"max_dim must be >= 2, got {self.max_dim}")
        if self.max_n < 1:
            raise ConfigInvalid(f"max_n must be >= 1, got {self.max_n}")
        for name, value in self.tolerances.items():
            if name not in _TOLERANCE_NAMES:
                raise ConfigInvalid(f"unknown tolerance {name!r}; known: {sorted(_TOLERANCE_NAMES)}")
            if not value > 0:
                raise ConfigInvalid(f"tolerance {name!r} must be positive, got {value!r}")
        for name in self.suites:
            if name not in SUITES:
                raise ConfigInvalid(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
        return self

    @staticmethod
    def from_mapping(data: Mapping) -> "SuiteConfig":
        known = {"seed", "trials", "max_dim", "max_n", "tolerances", "suites", "report_path"}
        unknown = set(data) - known
        if unknown:
            raise ConfigInvalid(f"unknown config fields: {sorted(unknown)}")
        kwargs = dict(data)
        if "suites" in kwargs and kwargs["suites"] is not None:
            kwargs["suites"] = tuple(kwargs["suites"])
        return SuiteConfig(**kwargs).validate()

    def selected_suites(self) -> tuple[str, ...]:
        if not self.suites:
            return tuple(SUITES)
        # keep registry order regardless of how the user listed them
        chosen = set(self.suites)
        return tuple(name for name in SUITES if name in chosen)

    def tol(self, name: str, default: float) -> float:
        return float(self.tolerances.get(name, default))

    def echo(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "max_dim": self.max_dim,
            "max_n": self.max_n,
            "tolerances": dict(self.tolerances),
            "suites": list(self.selected_suites()),
            "report_path": self.report_path,
        }


_TOLERANCE_NAMES = {"eps_unit", "eps_poly", "eps_eig", "eps_vector"}


@dataclass(frozen=True)
class SuiteRecord:
    """One residual record; the report schema is stable across versions."""

    suite: str
    check: str
    instance: str
    seed: int
    dims: tuple[int, int, int]
    n: int
    residual: float
    threshold: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.threshold

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "check": self.check,
            "instance": self.instance,
            "seed": self.seed,
            "dims": list(self.dims),
            "n": self.n,
            "residual": self.residual,
            "threshold": self.threshold,
            "passed": self.passed,
        }


@dataclass
class SuiteReport:
    """All records of a run plus the config echo and wall time."""

    config: dict
    records: list[SuiteRecord]
    wall_time: float

    @property
    def total(self) -> int:
        return len(self.records)

    @property
    def passed_count(self) -> int:
        return sum(1 for r in self.records if r.passed)

    @property
    def failed_count(self) -> int:
        return self.total - self.passed_count

    @property
    def passed(self) -> bool:
        return self.failed_count == 0

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "records": [r.to_dict() for r in self.records],
            "summary": {"total": self.total, "passed": self.passed_count, "failed": self.failed_count},
            "wall_time_s": self.wall_time,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True)

    def to_text(self) -> str:
        lines = []
        by_suite: dict[str, list[SuiteRecord]] = {}
        for record in self.records:
            by_suite.setdefault(record.suite, []).append(record)
        for suite_name, records in by_suite.items():
            worst = max(records, key=lambda r: r.residual / r.threshold if r.threshold else 0.0)
            ok = all(r.passed for r in records)
            lines.append(
                f"{'PASS' if ok else 'FAIL'}  {suite_name:<18} trials={len(records):<4} "
                f"worst={worst.residual:.3e} (tol {worst.threshold:.1e}, {worst.check}, {worst.instance})"
            )
            for record in records:
                if not record.passed:
                    lines.append(
                        f"      failed trial: {record.check} on {record.instance}: "
                        f"{record.residual:.3e} > {record.threshold:.3e}"
                    )
        lines.append(
            f"{self.passed_count}/{self.total} checks passed in {self.wall_time:.2f}s"
            + ("" if self.passed else f" ({self.failed_count} FAILED)")
        )
        return "\n".join(lines)


# --------------------------------------------------------------------------
# suite runners: (config, rng, trial) -> (Report, instance descriptor, dims, n)
# --------------------------------------------------------------------------

Runner = Callable[[SuiteConfig, np.random.Generator, int], tuple[Report, str, tuple[int, int, int], int]]


def _describe(bu) -> str:
    n, dh, dk = bu.dims
    return f"N={n} dH={dh} dK={dk}"


def _run_relations(cfg, rng, trial):
    bu = random_block_unitary(rng, cfg.max_dim, trial=trial)
    report = blocks.unitarity_relations(bu, eps_unit=cfg.tol("eps_unit", EPS_UNIT))
    return report, _describe(bu), bu.dims, 0


def _run_coisometry(cfg, rng, trial):
    bu = random_block_unitary(rng, cfg.max_dim, trial=trial)
    report = blocks.coisometry_check(bu, eps_unit=cfg.tol("eps_unit", EPS_UNIT))
    return report, _describe(bu), bu.dims, 0


def _run_rotated_projector(cfg, rng, trial):
    bu = random_block_unitary(rng, cfg.max_dim, trial=trial)
    angle = float(rng.uniform(0.0, 2.0 * np.pi))
    report = blocks.rotated_projector_check(bu, angle, eps_unit=cfg.tol("eps_unit", EPS_UNIT))
    return report, _describe(bu), bu.dims, 0


def _run_block_even(cfg, rng, trial):
    bu = random_block_unitary(rng, cfg.max_dim, trial=trial)
    schedule = random_schedule(rng, int(rng.integers(0, cfg.max_n + 1)))
    prod = engine.even_product(bu, schedule)
    report = engine.block_form_check(prod, eps_poly=cfg.tol("eps_poly", EPS_POLY))
    return report, _describe(bu), bu.dims, schedule.n


def _run_block_odd(cfg, rng, trial):
    bu = random_block_unitary(rng, cfg.max_dim, trial=trial)
    schedule = random_schedule(rng, int(rng.integers(0, cfg.max_n + 1)), with_final=True)
    prod = engine.odd_product(bu, schedule)
    report = engine.block_form_check(prod, eps_poly=cfg.tol("eps_poly", EPS_POLY))
    return report, _describe(bu), bu.dims, schedule.n


def _run_boundary(cfg, rng, trial):
    n = int(rng.integers(0, BOUNDARY_MAX_N + 1))
    schedule = random_schedule(rng, n, with_final=True)
    report = polynomials.boundary_values(schedule, eps_poly=cfg.tol("eps_poly", EPS_POLY))
    return report, f"schedule n={n}", (0, 0, 0), n


def _run_transform_values(cfg, rng, trial):
    bu = random_block_unitary(rng, cfg.max_dim, trial=trial)
    triples = subspaces.singular_triples(bu)
    n = int(rng.integers(0, cfg.max_n + 1))
    even_schedule = random_schedule(rng, n)
    odd_schedule = random_schedule(rng, n, with_final=True)
    eps = cfg.tol("eps_poly", EPS_POLY)
    report = Report.merged(
        engine.svt_values(engine.even_product(bu, even_schedule), triples, eps_poly=eps),
        engine.svt_values(engine.odd_product(bu, odd_schedule), triples, eps_poly=eps),
    )
    return report, _describe(bu), bu.dims, n


def _run_mapping(cfg, rng, trial):
    bu = random_block_unitary(rng, cfg.max_dim, trial=trial)
    triples = subspaces.singular_triples(bu)
    bases = subspaces.build_subspaces(bu, triples)
    report = subspaces.u_mapping_check(bu, bases, eps_unit=cfg.tol("eps_unit", EPS_UNIT))
    return report, _describe(bu), bu.dims, 0


def _run_invariance(cfg, rng, trial):
    bu = random_block_unitary(rng, cfg.max_dim, trial=trial)
    triples = subspaces.singular_triples(bu)
    bases = subspaces.build_subspaces(bu, triples)
    theta, phi = rng.uniform(0.0, 2.0 * np.pi, size=2)
    report = subspaces.invariance_check(bu, float(theta), float(phi), bases, eps_unit=cfg.tol("eps_unit", EPS_UNIT))
    return report, _describe(bu), bu.dims, 1


def _run_evolution_even(cfg, rng, trial):
    bu = random_block_unitary(rng, cfg.max_dim, trial=trial)
    triples = subspaces.singular_triples(bu)
    n = int(rng.integers(0, cfg.max_n + 1))
    schedule = random_schedule(rng, n)
    report = subspaces.even_evolution_check(
        bu, schedule, triples, eps_poly=cfg.tol("eps_poly", EPS_POLY), eps_phase=cfg.tol("eps_unit", EPS_UNIT)
    )
    return report, _describe(bu), bu.dims, n


def _run_evolution_odd(cfg, rng, trial):
    bu = random_block_unitary(rng, cfg.max_dim, trial=trial)
    triples = subspaces.singular_triples(bu)
    n = int(rng.integers(0, cfg.max_n + 1))
    schedule = random_schedule(rng, n, with_final=True)
    report = subspaces.odd_evolution_check(bu, schedule, triples, eps_poly=cfg.tol("eps_poly", EPS_POLY))
    return report, _describe(bu), bu.dims, n


def _run_qsp_consistency(cfg, rng, trial):
    n = int(rng.integers(0, QSP_MAX_N + 1))
    schedule = random_schedule(rng, n, with_final=bool(trial % 2))
    reports = []
    for sigma in np.linspace(0.0, 1.0, SIGMA_GRID):
        inst = qsp.QspInstance.from_sigma(float(sigma), schedule)
        reports.append(qsp.qsp_check(inst, eps=cfg.tol("eps_unit", 1e-10)))
    return Report.merged(*reports), f"sigma-grid-{SIGMA_GRID} n={n}", (0, 0, 0), n


def _run_chebyshev(cfg, rng, trial):
    theta, phi = (float(x) for x in rng.uniform(0.0, 2.0 * np.pi, size=2))
    signal_angle = float(rng.uniform(0.0, np.pi / 2.0))
    n = int(rng.integers(1, CHEBYSHEV_MAX_N + 1))
    report = qsp.homogeneous_check(theta, phi, signal_angle, n)
    return report, f"theta={theta:.3f} phi={phi:.3f} k={signal_angle:.3f}", (0, 0, 0), n


def _run_spectral(cfg, rng, trial):
    bu = random_block_unitary(rng, cfg.max_dim, trial=trial)
    n = 1 if trial % 3 == 0 else int(rng.integers(0, cfg.max_n + 1))
    schedule = random_schedule(rng, n)
    report = subspaces.spectral_map_check(
        bu,
        schedule,
        eps_eig=cfg.tol("eps_eig", EPS_EIG),
        eps_vector=cfg.tol("eps_vector", 1e-8),
    )
    return report, _describe(bu), bu.dims, n


SUITES: dict[str, Runner] = {
    "relations": _run_relations,
    "coisometry": _run_coisometry,
    "rotated-projector": _run_rotated_projector,
    "block-even": _run_block_even,
    "block-odd": _run_block_odd,
    "boundary": _run_boundary,
    "transform-values": _run_transform_values,
    "mapping": _run_mapping,
    "invariance": _run_invariance,
    "evolution-even": _run_evolution_even,
    "evolution-odd": _run_evolution_odd,
    "qsp-consistency": _run_qsp_consistency,
    "chebyshev": _run_chebyshev,
    "spectral": _run_spectral,
}

_SUITE_INDEX = {name: i for i, name in enumerate(SUITES)}


def run_suite(cfg: SuiteConfig) -> SuiteReport:
    """Run the configured suites; deterministic per seed.

    Per-trial streams are derived from (seed, suite index, trial index), so
    determinism survives any execution order.  The report is also written to
    ``cfg.report_path`` when set.
    """
    cfg.validate()
    start = time.perf_counter()
    records: list[SuiteRecord] = []
    for name in cfg.selected_suites():
        runner = SUITES[name]
        for trial in range(cfg.trials):
            seq = np.random.SeedSequence(cfg.seed, spawn_key=(_SUITE_INDEX[name], trial))
            sub_seed = int(seq.generate_state(1, np.uint64)[0])
            rng = np.random.Generator(np.random.Philox(seq))
            report, descriptor, dims, n = runner(cfg, rng, trial)
            worst = report.worst()
            records.append(
                SuiteRecord(
                    suite=name,
                    check=worst.name,
                    instance=descriptor,
                    seed=sub_seed,
                    dims=dims,
                    n=n,
                    residual=float(worst.residual),
                    threshold=float(worst.threshold),
                )
            )
    wall = time.perf_counter() - start
    result = SuiteReport(cfg.echo(), records, wall)
    if cfg.report_path:
        with open(cfg.report_path, "w", encoding="utf-8") as handle:
            handle.write(result.to_json())
            handle.write("\n")
    return result
