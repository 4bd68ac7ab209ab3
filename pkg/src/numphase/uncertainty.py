"""Uncertainty diagnostics for the number/phase pair.

For a state psi the module evaluates the deviations, the covariance scalar
product ``(dN psi, dPhi psi)``, both sides of the Schwartz bound
``dN * dPhi >= |(dN psi, dPhi psi)|`` and of the commutator bound
``dN * dPhi >= |<[N, Phi]>| / 2``, plus the residuals

    r_jk = (A_j psi, A_k psi) - (psi, A_j A_k psi),   A in {N, Phi}

whose vanishing is what allows the second bound to be derived from the
first.  Only ``r_NPhi`` can be nonzero; it equals ``-i |sum_n C_n|^2``.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from functools import cached_property
from math import sqrt

import numpy as np

from .operators import (
    OperatorRep,
    apply_number,
    apply_number_after_phase,
    apply_phase,
    build_operators,
)
from .state import FockState, Tolerances, inner_product, to_phase_wave

CHECK_TOL = 1e-10


class Classification(str, Enum):
    RSUR_VALID = "RSUR_VALID"
    RSUR_INVALID = "RSUR_INVALID"
    DEGENERATE = "DEGENERATE"


@dataclass(frozen=True)
class MomentReport:
    state_id: str
    mean_n: float
    mean_n2: float
    mean_phi: float
    mean_phi2: float
    delta_n: float
    delta_phi: float
    cov: complex
    schwartz_lhs: float
    schwartz_rhs: float
    rsur_rhs: float
    cond7_residuals: np.ndarray
    anticomm_part: complex
    comm_part: complex
    classification: Classification

    @property
    def boundary(self) -> float:
        return float(abs(self.cond7_residuals[0, 1]))

    @property
    def max_residual(self) -> float:
        return float(np.max(np.abs(self.cond7_residuals)))


CSV_COLUMNS = (
    "state_id",
    "mean_n",
    "delta_n",
    "mean_phi",
    "delta_phi",
    "re_cov",
    "im_cov",
    "schwartz_lhs",
    "schwartz_rhs",
    "rsur_rhs",
    "abs_r_NN",
    "abs_r_NPhi",
    "abs_r_PhiN",
    "abs_r_PhiPhi",
    "classification",
)


def fmt(x: float) -> str:
    return f"{float(x):.17g}"


def report_row(report: MomentReport) -> list:
    r = np.abs(report.cond7_residuals)
    values = [
        report.mean_n,
        report.delta_n,
        report.mean_phi,
        report.delta_phi,
        report.cov.real,
        report.cov.imag,
        report.schwartz_lhs,
        report.schwartz_rhs,
        report.rsur_rhs,
        r[0, 0],
        r[0, 1],
        r[1, 0],
        r[1, 1],
    ]
    return [report.state_id] + [fmt(v) for v in values] + [report.classification.value]


def _ops_for(state: FockState, ops: OperatorRep | None) -> OperatorRep:
    if ops is None:
        return build_operators(max(state.dim, 2))
    if ops.dim != state.dim:
        raise ValueError(f"state has dim {state.dim} but operators were built for dim {ops.dim}")
    return ops


def _deviation(mean: float, mean_sq: float) -> float:
    return sqrt(max(mean_sq - mean * mean, 0.0))


@dataclass(frozen=True)
class Moments:
    mean_n: float
    mean_n2: float
    mean_phi: float
    mean_phi2: float
    delta_n: float
    delta_phi: float


def moments(state: FockState, ops: OperatorRep | None = None) -> Moments:
    """Means and deviations; phase moments from the exact Fock matrices."""
    if state.dim == 1:
        state = state.padded(2)
    ops = _ops_for(state, ops)
    c = state.coeffs
    p = state.probabilities
    n = np.arange(state.dim)
    mean_n = float(p @ n)
    mean_n2 = float(p @ n**2)
    mean_phi = float(np.vdot(c, ops.phi_matrix @ c).real)
    mean_phi2 = float(np.vdot(c, ops.phi2_matrix @ c).real)
    return Moments(
        mean_n, mean_n2, mean_phi, mean_phi2,
        _deviation(mean_n, mean_n2), _deviation(mean_phi, mean_phi2),
    )


def wave_phase_moments(state: FockState, m: int | None = None) -> tuple[float, float, float]:
    """``<Phi>``, ``<Phi^2>`` and ``dPhi`` by quadrature on the phase grid."""
    psi = to_phase_wave(state, m)
    phi_psi = apply_phase(psi)
    mean_phi = inner_product(psi, phi_psi).real
    mean_phi2 = inner_product(phi_psi, phi_psi).real
    return mean_phi, mean_phi2, _deviation(mean_phi, mean_phi2)


def delta_n_formula(state: FockState) -> float:
    """Number spread straight from the occupation probabilities."""
    p = state.probabilities
    n = np.arange(state.dim)
    return _deviation(float(np.sum(p * n)), float(np.sum(p * n * n)))


class _Waves:
    """The handful of waves every diagnostic is assembled from."""

    def __init__(self, state: FockState, m: int | None = None, naive: bool = False):
        self.psi = to_phase_wave(state, m)
        self.naive = naive

    @cached_property
    def n(self):
        return apply_number(self.psi)

    @cached_property
    def phi(self):
        return apply_phase(self.psi)

    @cached_property
    def nn(self):
        return apply_number(self.n)

    @cached_property
    def n_phi(self):
        return apply_number_after_phase(self.psi, naive=self.naive)

    @cached_property
    def phi_n(self):
        return apply_phase(self.n)

    @cached_property
    def phi_phi(self):
        return apply_phase(self.phi)

    def ip(self, a: str, b: str) -> complex:
        return inner_product(getattr(self, a), getattr(self, b))


def _residuals(w: _Waves) -> np.ndarray:
    return np.array(
        [
            [w.ip("n", "n") - w.ip("psi", "nn"), w.ip("n", "phi") - w.ip("psi", "n_phi")],
            [w.ip("phi", "n") - w.ip("psi", "phi_n"), w.ip("phi", "phi") - w.ip("psi", "phi_phi")],
        ]
    )


def covariance_product(state: FockState, m: int | None = None) -> complex:
    """``(dN psi, dPhi psi) = (N psi, Phi psi) - <N><Phi>`` by quadrature."""
    w = _Waves(state, m)
    mean_n = w.ip("psi", "n").real
    mean_phi = w.ip("psi", "phi").real
    return w.ip("n", "phi") - mean_n * mean_phi


def covariance_matrix_path(state: FockState, ops: OperatorRep | None = None) -> complex:
    """Same scalar product from Fock matrices; exact because N psi stays in the span."""
    ops = _ops_for(state, ops)
    c = state.coeffs
    nc = ops.n_matrix @ c
    mom = moments(state, ops)
    return complex(np.vdot(nc, ops.phi_matrix @ c)) - mom.mean_n * mom.mean_phi


def condition7_residuals(state: FockState, m: int | None = None, naive: bool = False) -> np.ndarray:
    """2x2 matrix ``r[j, k]`` with index 0 for N and 1 for Phi."""
    return _residuals(_Waves(state, m, naive))


def _eq8_parts(w: _Waves, mean_n: float, mean_phi: float) -> tuple[complex, complex]:
    # <dN dPhi> = <N Phi> - <N><Phi>, and likewise for the reversed order
    n_phi = w.ip("psi", "n_phi")
    phi_n = w.ip("psi", "phi_n")
    anticomm = 0.5 * (n_phi + phi_n - 2.0 * mean_n * mean_phi)
    comm = 0.5 * 1j * (n_phi - phi_n)
    return anticomm, comm


def decompose_eq8(state: FockState, m: int | None = None) -> tuple[complex, complex, float]:
    """Split the covariance into anticommutator and commutator halves.

    Returns ``(anticomm_part, comm_part, reconstruction_error)`` where the
    error is ``|cov - (anticomm_part - i comm_part)|``.  It vanishes only when
    the condition residuals do; otherwise it equals ``|sum_n C_n|^2``.
    """
    w = _Waves(state, m)
    mean_n = w.ip("psi", "n").real
    mean_phi = w.ip("psi", "phi").real
    cov = w.ip("n", "phi") - mean_n * mean_phi
    anticomm, comm = _eq8_parts(w, mean_n, mean_phi)
    return anticomm, comm, float(abs(cov - (anticomm - 1j * comm)))


def classify(report: MomentReport, tol: Tolerances = Tolerances()) -> Classification:
    if report.delta_n * report.delta_phi < tol.degenerate_tol:
        return Classification.DEGENERATE
    if report.max_residual < tol.residual_tol:
        return Classification.RSUR_VALID
    return Classification.RSUR_INVALID


def analyze(
    state: FockState,
    m: int | None = None,
    tol: Tolerances = Tolerances(),
    naive: bool = False,
    state_id: str = "",
    ops: OperatorRep | None = None,
) -> MomentReport:
    """Full diagnostic record for one state."""
    if state.dim == 1:
        state = state.padded(2)
    mom = moments(state, ops)
    w = _Waves(state, m, naive)
    cov = w.ip("n", "phi") - mom.mean_n * mom.mean_phi
    bilinear = w.ip("n", "phi") - w.ip("phi", "n")
    anticomm, comm = _eq8_parts(w, mom.mean_n, mom.mean_phi)
    report = MomentReport(
        state_id=state_id,
        mean_n=mom.mean_n,
        mean_n2=mom.mean_n2,
        mean_phi=mom.mean_phi,
        mean_phi2=mom.mean_phi2,
        delta_n=mom.delta_n,
        delta_phi=mom.delta_phi,
        cov=cov,
        schwartz_lhs=mom.delta_n * mom.delta_phi,
        schwartz_rhs=abs(cov),
        rsur_rhs=0.5 * abs(bilinear),
        cond7_residuals=_residuals(w),
        anticomm_part=anticomm,
        comm_part=comm,
        classification=Classification.DEGENERATE,
    )
    return replace(report, classification=classify(report, tol))


@dataclass(frozen=True)
class SchwartzResult:
    lhs: float
    rhs: float
    holds: bool


@dataclass(frozen=True)
class RsurResult:
    lhs: float
    rhs: float
    rhs_half: float
    holds_eq3: bool
    holds_eq4: bool


def schwartz_check(state: FockState, m: int | None = None, tol: float = CHECK_TOL) -> SchwartzResult:
    mom = moments(state)
    lhs = mom.delta_n * mom.delta_phi
    rhs = abs(covariance_product(state, m))
    return SchwartzResult(lhs, rhs, lhs >= rhs - tol)


def rsur_check(state: FockState, m: int | None = None, tol: float = CHECK_TOL) -> RsurResult:
    """Commutator bound with the bilinear commutator and with the fixed 1/2."""
    mom = moments(state)
    w = _Waves(state, m)
    lhs = mom.delta_n * mom.delta_phi
    rhs = 0.5 * abs(w.ip("n", "phi") - w.ip("phi", "n"))
    return RsurResult(lhs, rhs, 0.5, lhs >= rhs - tol, lhs >= 0.5 - tol)
