"""Text formats read by the command line.

State spec::

    # comment
    dim 4
    c 0 1.0 0.0        # c <n> <re> <im>
    c 1 -1.0 0.0

Unlisted coefficients are zero.  Sweep config is flat ``key=value`` lines
with keys family, modes, theta_steps, chi_steps, dim, seed (and optionally
grid).
"""
from __future__ import annotations

import numpy as np

from .state import FockState, make_fock_state


class SpecError(ValueError):
    pass


class SpecRangeError(SpecError):
    pass


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_state_spec(text: str) -> FockState:
    dim = None
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        tok = line.split()
        try:
            if tok[0] == "dim" and len(tok) == 2:
                if dim is not None:
                    raise SpecError(f"line {lineno}: duplicate dim")
                dim = int(tok[1])
                if dim < 1:
                    raise SpecError(f"line {lineno}: dim must be positive")
            elif tok[0] == "c" and len(tok) == 4:
                entries.append((lineno, int(tok[1]), complex(float(tok[2]), float(tok[3]))))
            else:
                raise SpecError(f"line {lineno}: cannot parse {raw.strip()!r}")
        except ValueError as exc:
            if isinstance(exc, SpecError):
                raise
            raise SpecError(f"line {lineno}: {exc}") from None
    if dim is None:
        raise SpecError("missing 'dim' line")
    coeffs = np.zeros(dim, dtype=complex)
    for lineno, n, value in entries:
        if not 0 <= n < dim:
            raise SpecRangeError(f"line {lineno}: level {n} outside 0..{dim - 1}")
        coeffs[n] += value
    return make_fock_state(coeffs)


def parse_key_values(text: str) -> dict[str, str]:
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        if "=" not in line:
            raise SpecError(f"line {lineno}: expected key=value, got {raw.strip()!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key in out:
            raise SpecError(f"line {lineno}: duplicate key {key!r}")
        out[key] = value
    return out
