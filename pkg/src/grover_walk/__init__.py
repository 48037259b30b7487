"""Three-state Grover walk on the line with a phase defect at the origin."""

from .lattice import (GROVER, ChiralityAmplitude, CoinConfig, Measure, WaveWindow,
                      coin_at, evolve, phi, step)

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

__version__ = "0.1.0"
