"""Numerical acceptance checks runnable from the command line.

Each check reports the measured value, the expected value, the tolerance it
was judged at, and a status.  ``tol_override`` replaces every tolerance
(useful to confirm the harness really fails when it should).
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from functools import lru_cache
from math import pi, sqrt

import numpy as np

from .operators import boundary_defect, build_operators
from .spectral import eigenfunction_overlaps, solve_eigen
from .state import INV_SQRT_2PI, eigenstate, inner_product, random_state, to_phase_wave
from .sweep import SweepConfig, run_sweep, summarize, sweep_csv
from .uncertainty import (
    covariance_product,
    delta_n_formula,
    moments,
    rsur_check,
    schwartz_check,
    wave_phase_moments,
)

PHASE_SPREAD = pi / sqrt(3.0)


@dataclass(frozen=True)
class Check:
    name: str
    measured: float
    expected: float
    tol: float
    status: str

    @property
    def ok(self) -> bool:
        return self.status in ("PASS", "EXPECTED-DIVERGENT")


def _judge(name, measured, expected, tol, extra_ok=True, divergent=False) -> Check:
    passed = extra_ok and abs(measured - expected) <= tol
    if passed:
        status = "PASS"
    else:
        status = "EXPECTED-DIVERGENT" if divergent else "FAIL"
    return Check(name, float(measured), float(expected), float(tol), status)


@lru_cache(maxsize=4)
def _legendre(nodes: int):
    return np.polynomial.legendre.leggauss(nodes)


def gauss_legendre_element(k: int, power: int, nodes: int = 256) -> complex:
    """``(1/2pi) int_0^{2pi} phi^power exp(i k phi) dphi`` by Gauss-Legendre."""
    x, w = _legendre(nodes)
    phi = pi * (x + 1.0)
    return complex(np.sum(w * pi * phi**power * np.exp(1j * k * phi)) / (2.0 * pi))


def _random_dims(rng, count, low=2, high=12):
    return rng.integers(low, high + 1, size=count)


def run_checks(seed: int = 0, tol_override: float | None = None, naive: bool = False) -> list[Check]:
    def t(x):
        return x if tol_override is None else tol_override

    checks = []
    levels = range(8)
    dim = 16

    moms = [moments(eigenstate(n, dim)) for n in levels]
    checks.append(_judge(
        "eigenstate dPhi (matrix path)",
        max(abs(mo.delta_phi - PHASE_SPREAD) for mo in moms), 0.0, t(1e-10)))
    quad = [wave_phase_moments(eigenstate(n, dim), 128)[2] for n in levels]
    checks.append(_judge(
        "eigenstate dPhi (quadrature, M=128)", max(abs(q - PHASE_SPREAD) for q in quad), 0.0, t(1e-6)))
    checks.append(_judge("eigenstate dN", max(mo.delta_n for mo in moms), 0.0, t(1e-12)))
    checks.append(_judge(
        "eigenstate |cov|", max(abs(covariance_product(eigenstate(n, dim))) for n in levels), 0.0, t(1e-10)))

    rs = [rsur_check(eigenstate(n, dim)) for n in levels]
    sw = [schwartz_check(eigenstate(n, dim)) for n in levels]
    checks.append(_judge(
        "eigenstate dN*dPhi (fails 1/2 bound, Schwartz 0=0)",
        max(max(s.lhs, s.rhs) for s in sw), 0.0, t(1e-10),
        extra_ok=all(not r.holds_eq4 for r in rs) and all(s.holds for s in sw)))

    reps = [boundary_defect(eigenstate(n, dim), naive=naive) for n in levels]
    checks.append(_judge(
        "eigenstate boundary gap magnitude",
        max(abs(abs(r.gap) - 1.0) for r in reps), 0.0, t(1e-10), divergent=naive))
    checks.append(_judge(
        "eigenstate boundary gap real part", max(abs(r.gap.real) for r in reps), 0.0, t(1e-10), divergent=naive))

    rng = np.random.default_rng(seed)
    worst_b = worst_q = 0.0
    for d in _random_dims(rng, 1000):
        state = random_state(int(d), rng)
        rep = boundary_defect(state, naive=naive)
        # direct quadrature of the boundary term: 2 pi |psi(0)|^2
        direct = 2.0 * pi * abs(to_phase_wave(state).samples[0]) ** 2
        worst_b = max(worst_b, abs(abs(rep.gap) - rep.boundary_value))
        worst_q = max(worst_q, abs(abs(rep.gap) - direct))
    checks.append(_judge("random |gap| vs |sum C|^2 (1000 states)", worst_b, 0.0, t(1e-10), divergent=naive))
    checks.append(_judge("random |gap| vs 2pi|psi(0)|^2 (1000 states)", worst_q, 0.0, t(1e-10), divergent=naive))

    cfg = SweepConfig(theta_steps=64, chi_steps=64, dim=2, seed=seed)
    summ = summarize(run_sweep(cfg), cfg)
    checks.append(_judge(
        "64x64 sweep conditional RSUR violations", summ.rsur_violations, 0, 0,
        extra_ok=bool(summ.locus)))
    cell = max(0.5 * pi / cfg.theta_steps, 2.0 * pi / cfg.chi_steps)
    far = [max(abs(th - pi / 4), abs(ch - pi)) for th, ch in summ.locus] or [np.inf]
    checks.append(_judge("B=0 locus distance from (pi/4, pi)", max(far), 0.0, t(cell)))

    worst = 0.0
    for d in _random_dims(rng, 1000):
        state = random_state(int(d), rng)
        worst = max(worst, abs(delta_n_formula(state) - moments(state).delta_n))
    checks.append(_judge("dN formula vs operator (1000 states)", worst, 0.0, t(1e-12)))

    eig = solve_eigen(8)
    checks.append(_judge(
        "spectrum n+1/2", float(np.max(np.abs(eig.energies - (np.arange(8) + 0.5)))), 0.0, t(1e-12)))
    checks.append(_judge(
        "eigenfunction overlap modulus", float(np.max(np.abs(eigenfunction_overlaps(eig) - 1.0))), 0.0, t(1e-10)))
    ground = to_phase_wave(eig.eigenstates[0]).samples
    checks.append(_judge(
        "ground amplitude 1/sqrt(2pi)", float(np.max(np.abs(np.abs(ground) - INV_SQRT_2PI))), 0.0, t(1e-12)))

    ops = build_operators(12)
    worst = 0.0
    for i in range(12):
        for j in range(12):
            worst = max(
                worst,
                abs(ops.phi_matrix[i, j] - gauss_legendre_element(i - j, 1)),
                abs(ops.phi2_matrix[i, j] - gauss_legendre_element(i - j, 2)),
            )
    checks.append(_judge("Phi, Phi^2 elements vs quadrature (D=12)", worst, 0.0, t(1e-10)))
    checks.append(_judge("Phi, Phi^2 Hermiticity", ops.hermiticity_error, 0.0, t(1e-12)))

    violations = 0
    for d in _random_dims(rng, 10_000):
        if not schwartz_check(random_state(int(d), rng)).holds:
            violations += 1
    checks.append(_judge("Schwartz violations (10000 states)", violations, 0, 0))

    worst = 0.0
    for d in _random_dims(rng, 200):
        psi = to_phase_wave(random_state(int(d), rng))
        worst = max(worst, abs(inner_product(psi, psi).real - 1.0))
    checks.append(_judge("phase-wave normalization (200 states)", worst, 0.0, t(1e-10)))

    small = SweepConfig(theta_steps=8, chi_steps=8, dim=4, seed=seed)
    same = sweep_csv(run_sweep(small), small) == sweep_csv(run_sweep(small), small)
    checks.append(_judge("sweep CSV determinism", 0.0 if same else 1.0, 0.0, 0.0))
    return checks


CHECK_COLUMNS = ("check", "measured", "expected", "tolerance", "status")


def checks_csv(checks: list[Check], seed: int = 0) -> str:
    buf = io.StringIO()
    buf.write(f"# selftest seed={seed}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CHECK_COLUMNS)
    for c in checks:
        writer.writerow([c.name, f"{c.measured:.17g}", f"{c.expected:.17g}", f"{c.tol:.17g}", c.status])
    return buf.getvalue()
