"""Oscillator spectrum in the phase representation.

With ``N = i d/dphi`` the Hamiltonian is ``H = hbar*omega (N + 1/2)`` and
``H psi = E psi`` is a first-order equation with solutions
``exp(-i n phi)/sqrt(2 pi)``.  Periodicity on the circle forces integer n and
positivity of E restricts to n >= 0, so the basis is indexed by 0..dim-1 and
no negative Fourier mode is ever represented.  Energies are in units of
``hbar*omega``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .state import (
    FockState,
    Tolerances,
    basis_wave,
    eigenstate,
    inner_product,
    to_phase_wave,
)
from .uncertainty import MomentReport, analyze


def build_hamiltonian(dim: int) -> np.ndarray:
    if dim < 1:
        raise ValueError("dim must be at least 1")
    return np.diag(np.arange(dim) + 0.5).astype(complex)


@dataclass(frozen=True)
class EigenResult:
    levels: list[tuple[int, float]]
    eigenstates: list[FockState]
    unit: float = 1.0

    @property
    def energies(self) -> np.ndarray:
        return np.array([e for _, e in self.levels])

    def scaled_energies(self, hbar_omega: float) -> np.ndarray:
        return hbar_omega * self.energies


def _fix_phase(v: np.ndarray) -> np.ndarray:
    k = int(np.argmax(np.abs(v)))
    return v * (abs(v[k]) / v[k])


def solve_eigen(dim: int) -> EigenResult:
    """Diagonalize H densely and label each eigenvector by its level."""
    h = build_hamiltonian(dim)
    energies, vecs = np.linalg.eigh(h)
    levels, states = [], []
    for e, v in zip(energies, vecs.T):
        v = _fix_phase(v)
        n = int(np.argmax(np.abs(v)))
        levels.append((n, float(e)))
        states.append(FockState(v / np.linalg.norm(v)))
    order = np.argsort([n for n, _ in levels], kind="stable")
    return EigenResult([levels[i] for i in order], [states[i] for i in order])


def structural_spectrum(dim: int) -> np.ndarray:
    """Closed-form levels ``n + 1/2``."""
    return np.arange(dim) + 0.5


def eigenfunction_overlaps(result: EigenResult, m: int | None = None) -> np.ndarray:
    """``|(computed_n, exp(-i n phi)/sqrt(2 pi))|`` for every level."""
    out = []
    for (n, _), state in zip(result.levels, result.eigenstates):
        wave = to_phase_wave(state, m)
        out.append(abs(inner_product(basis_wave(n, wave.m), wave)))
    return np.array(out)


def eigenstate_report(n: int, dim: int, m: int | None = None, tol: Tolerances = Tolerances()) -> MomentReport:
    return analyze(eigenstate(n, dim), m=m, tol=tol, state_id=f"n={n}")
