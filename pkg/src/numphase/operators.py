"""Number, phase and ladder operators in the Fock and phase representations.

Conventions: ``psi_n = exp(-i n phi)/sqrt(2 pi)``, ``N = i d/dphi`` and
``Phi`` is multiplication by ``phi`` on [0, 2 pi).  Then ``N psi_n = n psi_n``
and ``N Phi - Phi N = i`` hold pointwise.  The composition ``N Phi psi`` is
evaluated with the product rule, never by spectrally differentiating the
sampled product ``phi * psi`` (which jumps at 2 pi); the latter is available
only as a diagnostic through ``naive=True``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import pi

import numpy as np

from .state import (
    AliasingError,
    FockState,
    PhaseWave,
    inner_product,
    mode_frequencies,
    to_phase_wave,
)


def phi_element(m: int, n: int) -> complex:
    """``(psi_m, Phi psi_n)`` in closed form."""
    if m == n:
        return complex(pi)
    return -1j / (m - n)


def phi2_element(m: int, n: int) -> complex:
    """``(psi_m, Phi^2 psi_n)`` in closed form."""
    if m == n:
        return complex(4.0 * pi**2 / 3.0)
    k = m - n
    return 2.0 / k**2 - 2j * pi / k


@dataclass(frozen=True)
class OperatorRep:
    """Truncated Fock-basis matrices.

    ``phi2_matrix`` holds the exact elements of ``Phi^2``; it is not the
    square of the truncated ``phi_matrix``.
    """

    dim: int
    n_matrix: np.ndarray
    phi_matrix: np.ndarray
    phi2_matrix: np.ndarray
    lower_matrix: np.ndarray

    @property
    def raise_matrix(self) -> np.ndarray:
        return self.lower_matrix.conj().T

    @property
    def shift_matrix(self) -> np.ndarray:
        """Truncated ``exp(i Phi)``: maps psi_n to psi_{n-1}, annihilates psi_0."""
        return np.eye(self.dim, k=1, dtype=complex)

    @property
    def sqrt_n_matrix(self) -> np.ndarray:
        return np.diag(np.sqrt(np.arange(self.dim, dtype=float))).astype(complex)

    @property
    def hermiticity_error(self) -> float:
        return max(
            float(np.max(np.abs(self.phi_matrix - self.phi_matrix.conj().T))),
            float(np.max(np.abs(self.phi2_matrix - self.phi2_matrix.conj().T))),
        )


@lru_cache(maxsize=64)
def build_operators(dim: int) -> OperatorRep:
    if dim < 2:
        raise ValueError(f"operator matrices need dim >= 2, got {dim}")
    idx = np.arange(dim)
    k = idx[:, None] - idx[None, :]
    off = k != 0
    ks = np.where(off, k, 1).astype(float)

    phi = np.where(off, -1j / ks, pi).astype(complex)
    phi2 = np.where(off, 2.0 / ks**2 - 2j * pi / ks, 4.0 * pi**2 / 3.0).astype(complex)
    lower = np.diag(np.sqrt(idx[1:].astype(float)), k=1).astype(complex)
    number = np.diag(idx.astype(float)).astype(complex)

    mats = [number, phi, phi2, lower]
    for a in mats:
        a.setflags(write=False)
    return OperatorRep(dim, *mats)


def _spectral_number(samples: np.ndarray, check: bool = True, tol: float = 1e-9) -> np.ndarray:
    """Apply ``i d/dphi`` to a periodic band-limited sample vector."""
    m = samples.size
    q = mode_frequencies(m)
    coeffs = np.fft.fft(samples) / m
    if check:
        # absolute floor: a nearly-zero part is all roundoff and cannot alias
        scale = max(float(np.max(np.abs(coeffs))), 1.0)
        bad = (q > 0) | (q == -(m // 2))
        if np.any(np.abs(coeffs[bad]) > tol * scale):
            raise AliasingError(
                "wave has content outside the resolved modes 0 <= n < m/2 (spectral derivative would alias)"
            )
    # i * d/dphi exp(i q phi) = -q exp(i q phi)
    return np.fft.ifft(-q * coeffs) * m


def apply_number(wave: PhaseWave, check: bool = True) -> PhaseWave:
    """``N = i d/dphi``; product rule across the explicit phi factors."""
    parts = [np.zeros(wave.m, dtype=complex) for _ in wave.parts]
    for p, part in enumerate(wave.parts):
        if not np.any(part):
            continue
        parts[p] = parts[p] + _spectral_number(part, check=check)
        if p > 0:
            parts[p - 1] = parts[p - 1] + 1j * p * part
    return PhaseWave(tuple(parts))


def apply_phase(wave: PhaseWave) -> PhaseWave:
    """Multiply by ``phi``.  ``samples`` of the result vanish at phi = 0."""
    return PhaseWave((np.zeros(wave.m, dtype=complex),) + wave.parts)


def apply_number_after_phase(wave: PhaseWave, naive: bool = False) -> PhaseWave:
    """``N Phi psi = i psi + phi * (i psi')``.

    With ``naive=True`` the sampled product ``phi * psi`` is differentiated
    spectrally as if it were periodic, which injects Gibbs error from the
    jump at 2 pi.
    """
    if naive:
        product = wave.grid * wave.samples
        return PhaseWave.from_samples(_spectral_number(product, check=False))
    return apply_number(apply_phase(wave))


def apply_lower(wave: PhaseWave) -> PhaseWave:
    """Ladder operator in the factorized form ``exp(i Phi) sqrt(N)``."""
    if not wave.is_periodic:
        raise ValueError("lowering is defined here only for periodic waves")
    m = wave.m
    q = mode_frequencies(m)
    coeffs = np.fft.fft(wave.parts[0]) / m
    # occupation of bin q is n = -q; positive q is outside the basis
    root_n = np.sqrt(np.clip(-q, 0.0, None))
    sqrt_n = np.fft.ifft(root_n * coeffs) * m
    return PhaseWave.from_samples(np.exp(1j * wave.grid) * sqrt_n)


@dataclass(frozen=True)
class CommutatorReport:
    """Two evaluations of ``<[N, Phi]>`` and the boundary term separating them.

    ``operator_form`` lets the composed operators act on psi,
    ``(psi, N Phi psi) - (psi, Phi N psi)``; ``bilinear_form`` moves each
    left factor onto the bra, ``(N psi, Phi psi) - (Phi psi, N psi)``.
    ``defect`` is their difference.  ``gap`` is the single scalar-product
    mismatch ``(N psi, Phi psi) - (psi, N Phi psi)``, equal to ``-defect``.
    """

    operator_form: complex
    bilinear_form: complex
    defect: complex
    gap: complex
    boundary_value: float


def boundary_value(state: FockState) -> float:
    """``B = |sum_n C_n|^2 = 2 pi |psi(0)|^2``."""
    return float(abs(np.sum(state.coeffs)) ** 2)


def boundary_defect(state: FockState, m: int | None = None, naive: bool = False) -> CommutatorReport:
    psi = to_phase_wave(state, m)
    n_psi = apply_number(psi)
    phi_psi = apply_phase(psi)
    n_phi_psi = apply_number_after_phase(psi, naive=naive)
    phi_n_psi = apply_phase(n_psi)

    np_pp = inner_product(n_psi, phi_psi)
    operator_form = inner_product(psi, n_phi_psi) - inner_product(psi, phi_n_psi)
    bilinear_form = np_pp - inner_product(phi_psi, n_psi)
    return CommutatorReport(
        operator_form=operator_form,
        bilinear_form=bilinear_form,
        defect=operator_form - bilinear_form,
        gap=np_pp - inner_product(psi, n_phi_psi),
        boundary_value=boundary_value(state),
    )


def matrix_commutator(ops: OperatorRep) -> np.ndarray:
    """Matrix-product ``N Phi - Phi N``; equals ``-i`` off the diagonal."""
    return ops.n_matrix @ ops.phi_matrix - ops.phi_matrix @ ops.n_matrix


def ladder_commutator(ops: OperatorRep) -> np.ndarray:
    """``[a, a^+]``; identity except the last diagonal entry, ``-(dim - 1)``."""
    a, ad = ops.lower_matrix, ops.raise_matrix
    return a @ ad - ad @ a

