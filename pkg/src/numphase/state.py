"""Oscillator states in the truncated Fock basis and on the phase circle.

A pure state is stored as its Fock coefficients ``C_n`` (``n = 0..D-1``).
In the phase representation the basis functions are

    psi_n(phi) = exp(-i n phi) / sqrt(2 pi),    phi in [0, 2 pi)

so a state becomes a trigonometric polynomial sampled on a uniform periodic
grid.  Waves may also carry explicit polynomial factors of ``phi`` (produced
by the phase operator); see :class:`PhaseWave`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import pi, sqrt

import numpy as np

TWO_PI = 2.0 * pi
INV_SQRT_2PI = 1.0 / sqrt(TWO_PI)

DEFAULT_DIM = 16
GRID_FACTOR = 8


class ZeroStateError(ValueError):
    pass


class AliasingError(ValueError):
    pass


class GridMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances shared by the checks and the classifier."""

    norm_tol: float = 1e-12
    herm_tol: float = 1e-12
    eq_tol: float = 1e-10
    degenerate_tol: float = 1e-10
    residual_tol: float = 1e-8

    def __post_init__(self):
        for name in ("norm_tol", "herm_tol", "eq_tol", "degenerate_tol", "residual_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"tolerance {name} must be strictly positive")


def _frozen(arr):
    arr = np.array(arr, dtype=complex)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class FockState:
    """Normalized coefficient vector over the oscillator eigenstates.

    ``scale`` is the factor that was applied to the raw input coefficients
    to bring them to unit norm.
    """

    coeffs: np.ndarray
    scale: float = 1.0

    def __post_init__(self):
        c = _frozen(self.coeffs)
        if c.ndim != 1 or c.size < 1:
            raise ValueError("coefficient vector must be one-dimensional and non-empty")
        norm2 = float(np.vdot(c, c).real)
        if abs(norm2 - 1.0) > 1e-12:
            raise ValueError(f"state is not normalized (norm^2 = {norm2!r})")
        object.__setattr__(self, "coeffs", c)

    @property
    def dim(self) -> int:
        return self.coeffs.size

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.coeffs) ** 2

    def padded(self, dim: int) -> "FockState":
        """Embed the state into a larger truncation."""
        if dim < self.dim:
            raise ValueError(f"cannot shrink a dim-{self.dim} state to {dim}")
        c = np.zeros(dim, dtype=complex)
        c[: self.dim] = self.coeffs
        return FockState(c, self.scale)


def make_fock_state(coeffs) -> FockState:
    """Normalize ``coeffs`` into a :class:`FockState`.

    Raises :class:`ZeroStateError` if every coefficient vanishes.
    """
    c = np.asarray(coeffs, dtype=complex).ravel()
    if c.size == 0:
        raise ZeroStateError("zero state: no coefficients given")
    norm = float(np.sqrt(np.vdot(c, c).real))
    if norm == 0.0:
        raise ZeroStateError("zero state: all coefficients vanish")
    return FockState(c / norm, scale=1.0 / norm)


def eigenstate(n: int, dim: int) -> FockState:
    if dim < 1:
        raise ValueError("dim must be at least 1")
    if not 0 <= n < dim:
        raise IndexError(f"level {n} outside 0..{dim - 1}")
    c = np.zeros(dim, dtype=complex)
    c[n] = 1.0
    return FockState(c)


def random_state(dim: int, rng: np.random.Generator) -> FockState:
    """Draw a state with i.i.d. standard complex Gaussian coefficients."""
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return make_fock_state(z)


def phase_grid(m: int) -> np.ndarray:
    """Uniform grid over [0, 2 pi): includes 0, excludes 2 pi."""
    return TWO_PI * np.arange(m) / m


def mode_frequencies(m: int) -> np.ndarray:
    """Signed integer frequencies ``q`` of ``exp(i q phi)`` for an FFT of length m."""
    return np.fft.fftfreq(m, d=1.0 / m)


@dataclass(frozen=True)
class PhaseWave:
    """Samples of a wave function on the periodic phase grid.

    The wave is stored as ``sum_p phi**p * parts[p]`` where every part is a
    periodic (band-limited) function.  Keeping the powers of ``phi``
    separate lets inner products integrate the non-periodic factor exactly
    instead of applying a periodic rule to a function with a jump at 2 pi.
    """

    parts: tuple = field(default=())

    def __post_init__(self):
        parts = tuple(_frozen(p) for p in self.parts)
        if not parts:
            raise ValueError("a wave needs at least one part")
        m = parts[0].size
        if m < 2 or any(p.shape != (m,) for p in parts):
            raise GridMismatchError("all parts must be 1-D samples on the same grid")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def from_samples(cls, samples) -> "PhaseWave":
        return cls((np.asarray(samples, dtype=complex),))

    @property
    def m(self) -> int:
        return self.parts[0].size

    @property
    def grid(self) -> np.ndarray:
        return phase_grid(self.m)

    @property
    def samples(self) -> np.ndarray:
        phi = self.grid
        out = np.zeros(self.m, dtype=complex)
        for p, part in enumerate(self.parts):
            out += phi**p * part
        return out

    @property
    def is_periodic(self) -> bool:
        return all(not np.any(part) for part in self.parts[1:])

    def __add__(self, other: "PhaseWave") -> "PhaseWave":
        if other.m != self.m:
            raise GridMismatchError(f"grid sizes differ: {self.m} vs {other.m}")
        n = max(len(self.parts), len(other.parts))
        zero = np.zeros(self.m, dtype=complex)
        a = self.parts + (zero,) * (n - len(self.parts))
        b = other.parts + (zero,) * (n - len(other.parts))
        return PhaseWave(tuple(x + y for x, y in zip(a, b)))

    def __sub__(self, other: "PhaseWave") -> "PhaseWave":
        return self + (-1.0) * other

    def __mul__(self, scalar) -> "PhaseWave":
        return PhaseWave(tuple(scalar * p for p in self.parts))

    __rmul__ = __mul__


@lru_cache(maxsize=128)
def _power_moments(m: int, power: int) -> np.ndarray:
    """Exact integrals of ``phi**power * exp(i q phi)`` over [0, 2 pi), q in FFT order."""
    q = mode_frequencies(m)
    out = np.zeros(q.size, dtype=complex)
    zero = q == 0
    out[zero] = TWO_PI ** (power + 1) / (power + 1)
    iq = 1j * q[~zero]
    acc = np.zeros(iq.size, dtype=complex)
    # integration by parts; exp(2 pi i q) = 1 for integer q
    for r in range(1, power + 1):
        acc = (TWO_PI**r - r * acc) / iq
    out[~zero] = acc
    out.setflags(write=False)
    return out


def weighted_integral(samples, power: int = 0) -> complex:
    """Integrate ``phi**power * h(phi)`` over [0, 2 pi) for sampled periodic h.

    Exact for trigonometric polynomials whose frequencies are all below m/2.
    With ``power == 0`` this is the periodic rectangle rule.
    """
    h = np.asarray(samples, dtype=complex)
    m = h.size
    if power == 0:
        return complex(TWO_PI / m * h.sum())
    coeffs = np.fft.fft(h) / m
    return complex(np.dot(coeffs, _power_moments(m, power)))


def inner_product(f: PhaseWave, g: PhaseWave) -> complex:
    """Scalar product ``(f, g) = integral conj(f) g dphi`` over the circle."""
    if f.m != g.m:
        raise GridMismatchError(f"grid sizes differ: {f.m} vs {g.m}")
    # group the integrand by total power of phi, one weighted integral each
    by_power = {}
    for p, fp in enumerate(f.parts):
        for q, gq in enumerate(g.parts):
            term = np.conj(fp) * gq
            by_power[p + q] = by_power[p + q] + term if p + q in by_power else term
    return sum(weighted_integral(h, r) for r, h in by_power.items())


def _check_grid(dim: int, m: int):
    if m < 2 * dim:
        raise AliasingError(f"grid of {m} points cannot resolve {dim} modes (need m >= {2 * dim})")


def basis_wave(n: int, m: int) -> PhaseWave:
    return PhaseWave.from_samples(np.exp(-1j * n * phase_grid(m)) * INV_SQRT_2PI)


def to_phase_wave(state: FockState, m: int | None = None) -> PhaseWave:
    """Render ``sum_n C_n exp(-i n phi) / sqrt(2 pi)`` on an m-point grid."""
    if m is None:
        m = GRID_FACTOR * state.dim
    _check_grid(state.dim, m)
    # forward FFT of bin n yields exp(-i n phi_k)
    spectrum = np.zeros(m, dtype=complex)
    spectrum[: state.dim] = state.coeffs
    samples = np.fft.fft(spectrum) * INV_SQRT_2PI
    return PhaseWave.from_samples(samples)


def fock_coefficients(wave: PhaseWave, dim: int) -> np.ndarray:
    """Projections ``(psi_n, wave)`` for n < dim (not renormalized)."""
    _check_grid(dim, wave.m)
    return np.array([inner_product(basis_wave(n, wave.m), wave) for n in range(dim)])


def from_phase_wave(wave: PhaseWave, dim: int, tol: float = 1e-10) -> FockState:
    """Fourier-analyse a periodic wave back into Fock coefficients."""
    _check_grid(dim, wave.m)
    if not wave.is_periodic:
        raise ValueError("wave carries non-periodic phi factors; use fock_coefficients")
    # ifft picks out exp(-i n phi) at bin n
    c = np.fft.ifft(wave.parts[0]) * sqrt(TWO_PI)
    coeffs = c[:dim]
    norm2 = float(np.vdot(coeffs, coeffs).real)
    if abs(norm2 - 1.0) > tol:
        raise ValueError(f"wave is not a normalized state within {dim} modes (norm^2 = {norm2!r})")
    return FockState(coeffs / sqrt(norm2))
