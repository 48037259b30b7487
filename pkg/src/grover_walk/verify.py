"""
Numerical certificates for eigenvectors, stationary measures and limit measures.

Every check works on the valid interior of a window, so numbers reported here
are free of truncation artefacts.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .closed_form import (HOMOGENEOUS_DECAY, SCALING_FACTOR, SQRT6, homogeneous_limit_measure,
                          thm1_measure_theta0_limit)
from .errors import TailDivergentError, WindowExhaustedError
from .lattice import CoinConfig, Measure, WaveWindow, phi, step
from .spectral import EigenParams, a_minus, a_plus, common_ratio, matrix_A

__all__ = [
    "LimitEstimate",
    "TruncatedGenFun",
    "VerifyReport",
    "eigen_residual",
    "lemma1_check",
    "limit_estimate",
    "scaling_relation_check",
    "stationarity_deviation",
    "time_averaged_measure",
    "truncated_genfun",
    "verify_eigenvector",
]


@dataclass(frozen=True)
class VerifyReport:
    residual_inf: float
    steps_checked: int
    max_measure_drift: float
    notes: str = ""
    passed: bool = True

    def as_dict(self) -> dict:
        return asdict(self)


def eigen_residual(psi: WaveWindow, lam: complex, config: CoinConfig) -> float:
    """Max over the post-step valid interior of ``|| (U psi)(x) - lam psi(x) ||_2``."""
    moved = step(psi, config)
    sl = moved.interior
    diff = moved.amps[sl] - lam * psi.amps[sl]
    return float(np.max(np.linalg.norm(diff, axis=1)))


def stationarity_deviation(psi: WaveWindow, n: int, config: CoinConfig) -> float:
    """Max over k = 1..n and the surviving interior of ``|mu_k(x) - mu_0(x)|``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n and psi.valid_hi - psi.valid_lo < 2 * n:
        raise WindowExhaustedError(f"window margin too small for {n} steps")
    mu0 = phi(psi).values
    worst = 0.0
    for _ in range(n):
        psi = step(psi, config)
        sl = psi.interior
        worst = max(worst, float(np.max(np.abs(phi(psi).values[sl] - mu0[sl]))))
    return worst


def verify_eigenvector(psi: WaveWindow, lam: complex, config: CoinConfig,
                       n: int = 50, tol_residual: float = 1e-10,
                       tol_drift: float = 1e-9) -> VerifyReport:
    res = eigen_residual(psi, lam, config)
    drift = stationarity_deviation(psi, n, config)
    return VerifyReport(res, n, drift,
                        notes=f"lambda={complex(lam):.17g}",
                        passed=bool(res < tol_residual and drift < tol_drift))


@dataclass(frozen=True)
class TruncatedGenFun:
    """Partial sums of the one-sided generating functions with a bound on the omitted tail."""

    side: str
    z: complex
    x_max: int
    values: np.ndarray
    tail_bound: float


def truncated_genfun(psi: WaveWindow, side: str, z: complex, x_max: int,
                     theta_s: complex) -> TruncatedGenFun:
    """
    Sum ``Psi(x) z**x`` over ``1 <= x <= x_max`` (side "+") or
    ``-x_max <= x <= -1`` (side "-").

    The tail bound assumes the geometric form ``|Psi_j(x)| = C_j |theta_s|**|x|``
    with ``C_j`` read off at ``x = +-1``.
    """
    if side not in ("+", "-"):
        raise ValueError("side must be '+' or '-'")
    z = complex(z)
    sgn = 1 if side == "+" else -1
    rho = abs(theta_s * z) if sgn > 0 else abs(theta_s / z)
    if rho >= 1:
        raise TailDivergentError(f"|theta_s z^(+-1)| = {rho:.6g} >= 1 on side {side}")
    ks = np.arange(1, x_max + 1)
    idx = np.array([psi.index(sgn * k) for k in ks])
    weights = z ** (sgn * ks)
    values = weights @ psi.amps[idx]
    c = np.abs(psi.amps[psi.index(sgn)]) / abs(theta_s)
    tail = float(np.linalg.norm(c) * rho ** (x_max + 1) / (1 - rho))
    return TruncatedGenFun(side, z, x_max, values, tail)


def lemma1_check(psi: WaveWindow, p: EigenParams, z: complex, x_max: int,
                 side: str = "+") -> float:
    """
    Excess of ``||A f_trunc - a||_2`` over the propagated tail bound
    ``||A||_2 * tail_bound``, divided by ``max(1, ||A||_2 ||f_trunc||_2 + ||a||_2)``.

    The normalisation makes the rounding floor independent of the size of
    the terms; a value at most ~1e-12 means the identity holds up to the
    omitted tail.
    """
    theta_s = common_ratio(p)
    gf = truncated_genfun(psi, side, z, x_max, theta_s)
    A = matrix_A(p.lam, gf.z)
    rhs = a_plus(p, gf.z) if side == "+" else a_minus(p, gf.z)
    norm_A = float(np.linalg.norm(A, 2))
    resid = float(np.linalg.norm(A @ gf.values - rhs))
    scale = max(1.0, norm_A * float(np.linalg.norm(gf.values)) + float(np.linalg.norm(rhs)))
    return (resid - norm_A * gf.tail_bound) / scale


@dataclass(frozen=True)
class LimitEstimate:
    """Cesaro average of mu_n and the band [min, max] of mu_n over the last stretch of steps."""

    average: Measure
    band_lo: Measure
    band_hi: Measure
    steps: int


def limit_estimate(psi0: WaveWindow, big_n: int, config: CoinConfig,
                   band_fraction: float = 0.25) -> LimitEstimate:
    if big_n < 1:
        raise ValueError("big_n must be positive")
    if psi0.valid_hi - psi0.valid_lo < 2 * big_n:
        raise WindowExhaustedError(f"window margin too small for {big_n} steps")
    lo, hi = psi0.valid_lo + big_n, psi0.valid_hi - big_n
    sl = slice(lo - psi0.x_min, hi - psi0.x_min + 1)
    acc = np.zeros(hi - lo + 1)
    band_start = big_n - max(1, int(band_fraction * big_n)) + 1
    band_lo = np.full_like(acc, np.inf)
    band_hi = np.full_like(acc, -np.inf)
    psi = psi0
    for n in range(1, big_n + 1):
        psi = step(psi, config)
        mu = np.sum(np.abs(psi.amps[sl]) ** 2, axis=1)
        acc += mu
        if n >= band_start:
            np.minimum(band_lo, mu, out=band_lo)
            np.maximum(band_hi, mu, out=band_hi)
    return LimitEstimate(Measure(lo, acc / big_n), Measure(lo, band_lo), Measure(lo, band_hi), big_n)


def time_averaged_measure(psi0: WaveWindow, big_n: int, config: CoinConfig) -> Measure:
    """``(1/N) sum_{n=1..N} phi(U^n psi0)`` on the final valid interior."""
    return limit_estimate(psi0, big_n, config).average


def scaling_relation_check(max_x: int = 20, tol: float = 1e-12) -> VerifyReport:
    """
    Compare the theta -> 0 stationary measure, rescaled by |alpha|^2 = (2 - sqrt 6)^2,
    against the homogeneous limit measure from (1, 0, -1).
    """
    a2 = SCALING_FACTOR ** 2
    identities = [
        12 * a2 * (5 + 2 * SQRT6) - 24.0,
        2 * a2 - 4 * (5 - 2 * SQRT6),
        HOMOGENEOUS_DECAY - (49 - 20 * SQRT6),
    ]
    stationary = thm1_measure_theta0_limit(SCALING_FACTOR, half_width=max_x)
    limit = homogeneous_limit_measure(1.0, 0.0, -1.0, half_width=max_x)
    rel = np.abs(stationary.values - limit.values) / limit.values
    residual = float(np.max(np.abs(identities)))
    return VerifyReport(
        residual_inf=residual,
        steps_checked=0,
        max_measure_drift=float(np.max(rel)),
        notes=f"|x| <= {max_x}; identity residuals " + ", ".join(f"{r:.3e}" for r in identities),
        passed=bool(residual < tol and np.max(rel) < tol),
    )
