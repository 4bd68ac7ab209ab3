"""Parameter sweeps over one-parameter-pair superposition families.

TWO_MODE, modes (a, b):      C_a = cos t, C_b = e^{i x} sin t
THREE_MODE, modes (a, b, c): C_a = cos t, C_b = C_c = e^{i x} sin t / sqrt(2)

with t on [0, pi/2) and x on [0, 2 pi), both half-open uniform grids, so an
even step count puts (pi/4, pi) exactly on the grid.
"""
from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from math import pi

import numpy as np

from .operators import boundary_value
from .specfile import SpecError, parse_key_values
from .state import GRID_FACTOR, FockState, Tolerances
from .uncertainty import CSV_COLUMNS, Classification, MomentReport, analyze, fmt, report_row


class Family(str, Enum):
    TWO_MODE = "TWO_MODE"
    THREE_MODE = "THREE_MODE"


MODE_COUNT = {Family.TWO_MODE: 2, Family.THREE_MODE: 3}


@dataclass(frozen=True)
class SweepConfig:
    family: Family = Family.TWO_MODE
    modes: tuple[int, ...] = (0, 1)
    theta_steps: int = 64
    chi_steps: int = 64
    dim: int = 16
    tolerances: Tolerances = field(default_factory=Tolerances)
    seed: int = 0
    grid: int | None = None
    naive: bool = False

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "modes", tuple(int(m) for m in self.modes))
        if self.theta_steps < 2 or self.chi_steps < 2:
            raise SpecError("theta_steps and chi_steps must be at least 2")
        if self.dim < 2:
            raise SpecError("dim must be at least 2")
        if len(self.modes) != MODE_COUNT[self.family]:
            raise SpecError(f"{self.family.value} needs {MODE_COUNT[self.family]} modes, got {len(self.modes)}")
        if len(set(self.modes)) != len(self.modes):
            raise SpecError(f"modes must be distinct: {self.modes}")
        if any(not 0 <= m < self.dim for m in self.modes):
            raise SpecError(f"modes {self.modes} must lie in 0..{self.dim - 1}")
        if self.grid is not None and self.grid < 2 * self.dim:
            raise SpecError(f"grid {self.grid} too small for dim {self.dim}")

    @property
    def m(self) -> int:
        return self.grid if self.grid is not None else GRID_FACTOR * self.dim

    @property
    def thetas(self) -> np.ndarray:
        return 0.5 * pi * np.arange(self.theta_steps) / self.theta_steps

    @property
    def chis(self) -> np.ndarray:
        return 2.0 * pi * np.arange(self.chi_steps) / self.chi_steps


def parse_sweep_config(text: str, **overrides) -> SweepConfig:
    kv = parse_key_values(text)
    known = {"family", "modes", "theta_steps", "chi_steps", "dim", "seed", "grid"}
    unknown = set(kv) - known
    if unknown:
        raise SpecError(f"unknown config keys: {sorted(unknown)}")
    args = {}
    try:
        if "family" in kv:
            args["family"] = Family(kv["family"].upper())
        if "modes" in kv:
            args["modes"] = tuple(int(s) for s in kv["modes"].replace(",", " ").split())
        for key in ("theta_steps", "chi_steps", "dim", "seed", "grid"):
            if key in kv:
                args[key] = int(kv[key])
    except ValueError as exc:
        raise SpecError(f"bad config value: {exc}") from None
    args.update({k: v for k, v in overrides.items() if v is not None})
    return SweepConfig(**args)


def family_state(config: SweepConfig, theta: float, chi: float) -> FockState:
    c = np.zeros(config.dim, dtype=complex)
    phase = np.exp(1j * chi)
    if config.family is Family.TWO_MODE:
        a, b = config.modes
        c[a] = np.cos(theta)
        c[b] = phase * np.sin(theta)
    else:
        a, b, d = config.modes
        c[a] = np.cos(theta)
        c[b] = c[d] = phase * np.sin(theta) / np.sqrt(2.0)
    # cos^2 + sin^2 can miss 1 by an ulp
    return FockState(c / np.linalg.norm(c))


@dataclass(frozen=True)
class SweepRow:
    theta: float
    chi: float
    report: MomentReport
    boundary: float


SWEEP_COLUMNS = ("theta", "chi") + CSV_COLUMNS + ("boundary",)


def _evaluate(args) -> SweepRow:
    config, j, k = args
    theta, chi = config.thetas[j], config.chis[k]
    state = family_state(config, theta, chi)
    report = analyze(state, m=config.m, tol=config.tolerances, naive=config.naive, state_id=f"t{j}c{k}")
    return SweepRow(float(theta), float(chi), report, boundary_value(state))


def run_sweep(config: SweepConfig, workers: int = 1) -> list[SweepRow]:
    """Evaluate the grid row-major (theta outer, chi inner)."""
    tasks = [(config, j, k) for j in range(config.theta_steps) for k in range(config.chi_steps)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_evaluate, tasks, chunksize=64))
    return [_evaluate(t) for t in tasks]


@dataclass(frozen=True)
class SweepSummary:
    counts: dict
    locus: list
    min_boundary: float
    argmin: tuple
    schwartz_violations: int
    rsur_violations: int


def summarize(rows: list[SweepRow], config: SweepConfig) -> SweepSummary:
    tol = config.tolerances
    counts = {c.value: 0 for c in Classification}
    locus = []
    schwartz_bad = rsur_bad = 0
    best = min(rows, key=lambda r: r.boundary)
    for row in rows:
        rep = row.report
        counts[rep.classification.value] += 1
        if row.boundary < tol.residual_tol:
            locus.append((row.theta, row.chi))
        if rep.schwartz_lhs < rep.schwartz_rhs - tol.eq_tol:
            schwartz_bad += 1
        if rep.max_residual < tol.residual_tol and rep.schwartz_lhs < rep.rsur_rhs - tol.eq_tol:
            rsur_bad += 1
    return SweepSummary(counts, locus, best.boundary, (best.theta, best.chi), schwartz_bad, rsur_bad)


def sweep_csv(rows: list[SweepRow], config: SweepConfig) -> str:
    buf = io.StringIO()
    buf.write(
        f"# sweep family={config.family.value} modes={','.join(map(str, config.modes))} "
        f"theta_steps={config.theta_steps} chi_steps={config.chi_steps} dim={config.dim} "
        f"grid={config.m} seed={config.seed}\n"
    )
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_COLUMNS)
    for row in rows:
        writer.writerow([fmt(row.theta), fmt(row.chi)] + report_row(row.report) + [fmt(row.boundary)])
    s = summarize(rows, config)
    buf.write("# counts " + " ".join(f"{k}={v}" for k, v in s.counts.items()) + "\n")
    buf.write(f"# schwartz_violations={s.schwartz_violations} conditional_rsur_violations={s.rsur_violations}\n")
    if s.locus:
        pts = " ".join(f"({fmt(t)},{fmt(x)})" for t, x in s.locus)
        buf.write(f"# locus B<{config.tolerances.residual_tol:g}: {pts}\n")
    else:
        buf.write(f"# locus B<{config.tolerances.residual_tol:g}: none\n")
    buf.write(f"# min_boundary={fmt(s.min_boundary)} at theta={fmt(s.argmin[0])} chi={fmt(s.argmin[1])}\n")
    return buf.getvalue()
