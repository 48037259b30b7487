"""
Three-state Grover walk with a phase defect at the origin, on a finite window of Z.

Amplitudes live on a window ``[x_min, x_max]`` as a dense ``(n_sites, 3)``
complex array with columns ordered (L, O, R). The walk on the infinite line
is emulated by treating everything outside the window as zero and tracking
the interior ``[valid_lo, valid_hi]`` on which the state still equals the
infinite-lattice evolution. Each step moves both ends of that interior one
site inwards.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import WindowExhaustedError

__all__ = [
    "GROVER",
    "ChiralityAmplitude",
    "CoinConfig",
    "Measure",
    "WaveWindow",
    "coin_at",
    "evolve",
    "phi",
    "step",
]

GROVER = np.array([[-1.0, 2.0, 2.0],
                   [2.0, -1.0, 2.0],
                   [2.0, 2.0, -1.0]]) / 3.0
GROVER.setflags(write=False)


class ChiralityAmplitude(NamedTuple):
    """Amplitudes of the left, stay and right chiralities at one site."""

    l: complex
    o: complex
    r: complex


@dataclass(frozen=True)
class CoinConfig:
    """Defect phase ``theta`` in [0, 2*pi); the origin coin is ``exp(i theta) * GROVER``."""

    theta: float

    def __post_init__(self):
        theta = float(self.theta)
        if not (0.0 <= theta < 2.0 * np.pi):
            raise ValueError(f"theta must lie in [0, 2*pi), got {theta!r}")
        object.__setattr__(self, "theta", theta)

    @property
    def omega(self) -> complex:
        return complex(np.exp(1j * self.theta))

    @property
    def is_homogeneous(self) -> bool:
        return self.theta == 0.0


def coin_at(x: int, config: CoinConfig) -> np.ndarray:
    """Return the 3x3 coin used at site ``x``."""
    if x == 0:
        return config.omega * GROVER
    return GROVER.astype(complex)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class WaveWindow:
    """
    Amplitudes on the sites ``x_min .. x_min + len(amps) - 1``.

    Attributes
    ----------
    x_min : int
        Leftmost site of the window.
    amps : numpy.ndarray
        Complex array of shape ``(n_sites, 3)``, columns (L, O, R).
    valid_lo, valid_hi : int
        Interior on which the amplitudes are exact for the infinite lattice.
        Default to the full window.
    """

    x_min: int
    amps: np.ndarray
    valid_lo: int | None = None
    valid_hi: int | None = None

    def __post_init__(self):
        amps = _frozen(self.amps)
        if amps.ndim != 2 or amps.shape[1] != 3 or amps.shape[0] == 0:
            raise ValueError(f"amps must have shape (n_sites, 3), got {amps.shape}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        object.__setattr__(self, "amps", amps)
        object.__setattr__(self, "x_min", int(self.x_min))
        lo = self.x_min if self.valid_lo is None else int(self.valid_lo)
        hi = self.x_max if self.valid_hi is None else int(self.valid_hi)
        if not (self.x_min <= lo <= hi <= self.x_max):
            raise ValueError(
                f"need x_min <= valid_lo <= valid_hi <= x_max, got "
                f"{self.x_min}, {lo}, {hi}, {self.x_max}")
        object.__setattr__(self, "valid_lo", lo)
        object.__setattr__(self, "valid_hi", hi)

    @classmethod
    def zeros(cls, x_min: int, x_max: int) -> WaveWindow:
        return cls(x_min, np.zeros((x_max - x_min + 1, 3), dtype=complex))

    @classmethod
    def localized(cls, amplitude, half_width: int) -> WaveWindow:
        """State equal to ``amplitude`` at the origin and zero elsewhere on ``[-half_width, half_width]``."""
        amps = np.zeros((2 * half_width + 1, 3), dtype=complex)
        amps[half_width] = amplitude
        return cls(-half_width, amps)

    @property
    def x_max(self) -> int:
        return self.x_min + self.amps.shape[0] - 1

    @property
    def sites(self) -> np.ndarray:
        return np.arange(self.x_min, self.x_max + 1)

    def index(self, x: int) -> int:
        if not (self.x_min <= x <= self.x_max):
            raise IndexError(f"site {x} outside window [{self.x_min}, {self.x_max}]")
        return x - self.x_min

    def at(self, x: int) -> ChiralityAmplitude:
        return ChiralityAmplitude(*(complex(v) for v in self.amps[self.index(x)]))

    @property
    def interior(self) -> slice:
        """Index slice of the valid interior."""
        return slice(self.valid_lo - self.x_min, self.valid_hi - self.x_min + 1)

    def interior_norm2(self) -> float:
        return float(np.sum(np.abs(self.amps[self.interior]) ** 2))

    def with_amps(self, amps: np.ndarray) -> WaveWindow:
        """Same window and valid interior, new amplitudes."""
        return WaveWindow(self.x_min, amps, self.valid_lo, self.valid_hi)


@dataclass(frozen=True)
class Measure:
    """Nonnegative weights on the sites ``x_min .. x_min + len(values) - 1``."""

    x_min: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=float, copy=True)
        if values.ndim != 1 or values.size == 0:
            raise ValueError("values must be a non-empty 1-d array")
        if np.any(values < 0) or not np.all(np.isfinite(values)):
            raise ValueError("measure values must be finite and nonnegative")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "x_min", int(self.x_min))

    @property
    def x_max(self) -> int:
        return self.x_min + self.values.size - 1

    @property
    def sites(self) -> np.ndarray:
        return np.arange(self.x_min, self.x_max + 1)

    def at(self, x: int) -> float:
        if not (self.x_min <= x <= self.x_max):
            raise IndexError(f"site {x} outside measure support [{self.x_min}, {self.x_max}]")
        return float(self.values[x - self.x_min])

    def restrict(self, lo: int, hi: int) -> Measure:
        if not (self.x_min <= lo <= hi <= self.x_max):
            raise IndexError(f"[{lo}, {hi}] not inside [{self.x_min}, {self.x_max}]")
        return Measure(lo, self.values[lo - self.x_min:hi - self.x_min + 1])

    def is_zero(self) -> bool:
        return not np.any(self.values)


def step(psi: WaveWindow, config: CoinConfig) -> WaveWindow:
    """
    Apply one step of the defect walk.

    The new L amplitude at ``x`` is the first row of the coin at ``x + 1``
    applied to the state there, the new O amplitude is the second row of the
    coin at ``x`` and the new R amplitude is the third row of the coin at
    ``x - 1``. The valid interior shrinks by one site at each end.
    """
    if psi.valid_hi - psi.valid_lo < 2:
        raise WindowExhaustedError(
            f"valid interior [{psi.valid_lo}, {psi.valid_hi}] too small for another step")
    coined = psi.amps @ GROVER.T
    if psi.x_min <= 0 <= psi.x_max:
        coined[-psi.x_min] *= config.omega
    out = np.zeros_like(coined)
    out[:-1, 0] = coined[1:, 0]
    out[:, 1] = coined[:, 1]
    out[1:, 2] = coined[:-1, 2]
    return WaveWindow(psi.x_min, out, psi.valid_lo + 1, psi.valid_hi - 1)


def evolve(psi: WaveWindow, n: int, config: CoinConfig) -> WaveWindow:
    """Apply ``n`` steps; fails up front if the valid interior cannot survive them."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n and psi.valid_hi - psi.valid_lo < 2 * n:
        raise WindowExhaustedError(
            f"valid interior of width {psi.valid_hi - psi.valid_lo} cannot survive {n} steps")
    for _ in range(n):
        psi = step(psi, config)
    return psi


def phi(psi: WaveWindow) -> Measure:
    """Per-site sum of squared moduli of the three chirality amplitudes."""
    return Measure(psi.x_min, np.sum(np.abs(psi.amps) ** 2, axis=1))
