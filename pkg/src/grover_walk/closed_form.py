"""
Explicit eigenvectors and stationary measures of the defect Grover walk.

Three kinds of closed forms are provided:

* the antisymmetric family (Psi(0) = alpha (1, 0, -1)) with the two
  eigenvalues that depend on the defect phase, whose measure decays
  geometrically in |x|;
* the three families with eigenvalue -1, whose measures have flat tails;
* the time-averaged limit measure of the homogeneous walk started at the
  origin, quoted for comparison with the stationary measures.

Branch bookkeeping: ``sign`` always refers to the sign in front of the
``cos(theta/2)`` term of ``|theta_s|**2``. The matching eigenvalue is picked
among the two principal-branch roots by comparing decay ratios, never by
symbolic branch tracking.
"""

from __future__ import annotations

import functools
import itertools
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import NonDecayingWarning, ParameterError
from .lattice import CoinConfig, Measure, WaveWindow, phi
from .spectral import EigenParams, common_ratio, lambda_case_iia

__all__ = [
    "HOMOGENEOUS_DECAY",
    "SCALING_FACTOR",
    "THETA0_COEFFICIENT",
    "Thm1Branch",
    "Thm1MeasureParams",
    "branch_is_decaying",
    "homogeneous_limit_measure",
    "lambda_minus1_family",
    "measure_coefficient",
    "minus1_params",
    "resolve_measure_params",
    "theta_s_abs2",
    "thm1_columns",
    "thm1_eigenvector",
    "thm1_lambda",
    "thm1_measure",
    "thm1_measure_theta0_limit",
    "thm1_params",
]

SQRT6 = math.sqrt(6.0)
# 49 - 20 sqrt(6) written as a reciprocal to avoid cancellation
HOMOGENEOUS_DECAY = 1.0 / (49.0 + 20.0 * SQRT6)
THETA0_COEFFICIENT = 12.0 * (5.0 + 2.0 * SQRT6)
SCALING_FACTOR = 2.0 - SQRT6
DEFAULT_HALF_WIDTH = 64

_ARCCOS_THIRD = math.acos(1.0 / 3.0)


def _sign_value(sign) -> int:
    if sign in ("+", 1, +1.0):
        return 1
    if sign in ("-", -1, -1.0):
        return -1
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


def theta_s_abs2(theta: float, sign) -> float:
    """
    ``(37 + 12 cos(theta) +- 20 sqrt(6) cos(theta/2)) / (13 - 12 cos(theta))**2``.

    Emits NonDecayingWarning when the value exceeds one, i.e. outside the
    range where that branch gives a square-summable eigenvector.
    """
    s = _sign_value(sign)
    c = math.cos(theta)
    value = (37.0 + 12.0 * c + s * 20.0 * SQRT6 * math.cos(theta / 2)) / (13.0 - 12.0 * c) ** 2
    if value > 1.0 + 1e-12:
        warnings.warn(f"|theta_s|^2 = {value:.6g} > 1 for theta={theta!r}, sign={sign!r}",
                      NonDecayingWarning, stacklevel=2)
    return value


def branch_is_decaying(theta: float, sign) -> bool:
    """Whether ``theta`` (taken in [0, 2 pi)) is in the decaying range of the branch."""
    if _sign_value(sign) > 0:
        return theta >= _ARCCOS_THIRD
    return theta <= 2 * math.pi - _ARCCOS_THIRD


@dataclass(frozen=True)
class Thm1Branch:
    """Branch selector and free amplitude alpha (gamma = -alpha, beta = 0)."""

    sign: str
    alpha: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "sign", "+" if _sign_value(self.sign) > 0 else "-")
        object.__setattr__(self, "alpha", complex(self.alpha))
        if self.alpha == 0:
            raise ValueError("alpha must be nonzero")


def _antisymmetric(lam, omega, alpha=1.0) -> EigenParams:
    return EigenParams(lam, alpha, 0.0, -alpha, omega)


def thm1_lambda(config: CoinConfig, sign) -> complex:
    """
    Eigenvalue of the antisymmetric family on the requested branch.

    Both principal-branch candidates are tried; the one whose decay ratio
    has squared modulus closest to ``theta_s_abs2(theta, sign)`` wins. Ties
    (theta = pi) keep the candidate with the same principal label.
    """
    lam_p, lam_m = lambda_case_iia(config)
    candidates = (lam_p, lam_m) if _sign_value(sign) > 0 else (lam_m, lam_p)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonDecayingWarning)
        target = theta_s_abs2(config.theta, sign)
    best, best_err = None, math.inf
    for lam in candidates:
        ratio = common_ratio(_antisymmetric(lam, config.omega))
        err = abs(abs(ratio) ** 2 - target) / max(1.0, target)
        if err < best_err - 1e-12:
            best, best_err = lam, err
    return best


def thm1_params(config: CoinConfig, branch: Thm1Branch) -> EigenParams:
    return _antisymmetric(thm1_lambda(config, branch.sign), config.omega, branch.alpha)


def thm1_columns(omega: complex, lam: complex) -> tuple[np.ndarray, np.ndarray]:
    """Per-site amplitude shapes for x >= 1 and x <= -1, before the (-theta_s)**|x| factor."""
    k = ((3 * lam + 1) * omega - 2 * (lam + 1)) / (lam - 1)
    w = (omega - 1) / (lam - 1)
    return (np.array([1.0, -2 * w, -k], dtype=complex),
            np.array([k, 2 * w, -1.0], dtype=complex))


def thm1_eigenvector(config: CoinConfig, branch: Thm1Branch,
                     half_width: int = DEFAULT_HALF_WIDTH) -> tuple[WaveWindow, complex]:
    """Antisymmetric eigenvector on ``[-half_width, half_width]`` and its eigenvalue."""
    p = thm1_params(config, branch)
    theta_s = common_ratio(p)
    if abs(theta_s) > 1 + 1e-12:
        warnings.warn(f"branch {branch.sign} at theta={config.theta!r} has |theta_s| = "
                      f"{abs(theta_s):.6g} > 1", NonDecayingWarning, stacklevel=2)
    right, left = thm1_columns(config.omega, p.lam)
    xs = np.arange(-half_width, half_width + 1)
    decay = (-theta_s) ** np.abs(xs)
    amps = np.where((xs > 0)[:, None], right, left) * decay[:, None]
    amps[half_width] = (1.0, 0.0, -1.0)
    return WaveWindow(-half_width, branch.alpha * amps), p.lam


@dataclass(frozen=True)
class Thm1MeasureParams:
    """Decay, the three m_k constants and the bits n_k that select their signs."""

    theta: float
    theta_s_abs2: float
    m1: float
    m2: float
    m3: float
    n1: int
    n2: int
    n3: int

    def coefficient(self) -> float:
        """Bracket ``1 + (13 - 12 cos theta)(2/m1 + m2/m3)`` multiplying the tail."""
        return measure_coefficient(self.theta, (self.n1, self.n2, self.n3))


def _m(theta: float, n: int) -> float:
    return 5.0 + (-1) ** n * 2.0 * SQRT6 * math.cos(theta / 2)


def measure_coefficient(theta: float, bits: tuple[int, int, int]) -> float:
    m1, m2, m3 = (_m(theta, n) for n in bits)
    return 1.0 + (13.0 - 12.0 * math.cos(theta)) * (2.0 / m1 + m2 / m3)


_PREFERRED_BITS = {"+": (0, 1, 0), "-": (1, 0, 1)}


@functools.lru_cache(maxsize=4096)
def resolve_measure_params(theta: float, sign: str) -> Thm1MeasureParams:
    """
    Fix the bits (n1, n2, n3) for one branch by matching the closed-form
    coefficient to the measure of the explicit eigenvector at x = 1.
    """
    sign = "+" if _sign_value(sign) > 0 else "-"
    config = CoinConfig(theta)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonDecayingWarning)
        decay = theta_s_abs2(theta, sign)
        psi, _ = thm1_eigenvector(config, Thm1Branch(sign), half_width=1)
    target = phi(psi).at(1) / decay
    preferred = _PREFERRED_BITS[sign]
    order = [preferred] + [b for b in itertools.product((0, 1), repeat=3) if b != preferred]
    for bits in order:
        if abs(measure_coefficient(theta, bits) - target) <= 1e-9 * target:
            m1, m2, m3 = (_m(theta, n) for n in bits)
            return Thm1MeasureParams(theta, decay, m1, m2, m3, *bits)
    raise ArithmeticError(
        f"no choice of (n1, n2, n3) reproduces the eigenvector measure at theta={theta!r}")


def thm1_measure(config: CoinConfig, branch: Thm1Branch,
                 half_width: int = DEFAULT_HALF_WIDTH) -> Measure:
    """Closed-form stationary measure of the antisymmetric family (tail exponent 2|x|)."""
    params = resolve_measure_params(config.theta, branch.sign)
    if params.theta_s_abs2 > 1 + 1e-12:
        warnings.warn(f"branch {branch.sign} at theta={config.theta!r} does not decay",
                      NonDecayingWarning, stacklevel=2)
    xs = np.arange(-half_width, half_width + 1)
    values = params.coefficient() * params.theta_s_abs2 ** np.abs(xs)
    values[half_width] = 2.0
    return Measure(-half_width, abs(branch.alpha) ** 2 * values)


def thm1_measure_theta0_limit(alpha: complex = 1.0, half_width: int = DEFAULT_HALF_WIDTH) -> Measure:
    """Limit theta -> 0 of the decaying branch, with exact constants."""
    xs = np.arange(-half_width, half_width + 1)
    values = THETA0_COEFFICIENT * HOMOGENEOUS_DECAY ** np.abs(xs)
    values[half_width] = 2.0
    return Measure(-half_width, abs(alpha) ** 2 * values)


_MINUS1_CASES = ("i", "ii-a", "ii-b")


def lambda_minus1_family(case: str, config: CoinConfig, alpha: complex = 1.0,
                         gamma: complex | None = None,
                         half_width: int = DEFAULT_HALF_WIDTH) -> tuple[WaveWindow, Measure]:
    """
    Eigenvectors with eigenvalue -1 and their closed-form measures.

    ``case`` is ``"i"`` (alpha = gamma), ``"ii-a"`` (gamma = -alpha, beta = 0)
    or ``"ii-b"`` (beta = (alpha + gamma)/2, only at theta = pi).

    The origin weight of case ``"i"`` is ``6 |alpha|^2 (3 - cos theta) / (5 - 3 cos theta)``,
    the squared norm of the origin amplitudes.
    """
    if case not in _MINUS1_CASES:
        raise ParameterError(f"case must be one of {_MINUS1_CASES}, got {case!r}")
    alpha = complex(alpha)
    om = config.omega
    cos = math.cos(config.theta)
    a2 = abs(alpha) ** 2
    if case == "i":
        if gamma is not None and gamma != alpha:
            raise ParameterError("case i requires gamma == alpha")
        right = alpha * np.array([1.0, (3 * om**2 - 2 * om + 3) / (om - 3), om * (1 - 3 * om) / (om - 3)])
        left = right[::-1]
        origin = alpha * np.array([1.0, 4 * om / (om - 3), 1.0])
        tail = 6 * a2 * (3 * cos**2 - 3 * cos + 2) / (5 - 3 * cos)
        w_right = w_left = tail
        w0 = 6 * a2 * (3 - cos) / (5 - 3 * cos)
    elif case == "ii-a":
        if gamma is not None and gamma != -alpha:
            raise ParameterError("case ii-a requires gamma == -alpha")
        right = alpha * np.array([1.0, om - 1, -om])
        left = alpha * np.array([om, -(om - 1), -1.0])
        origin = alpha * np.array([1.0, 0.0, -1.0])
        w_right = w_left = 2 * a2 * (2 - cos)
        w0 = 2 * a2
    else:
        if abs(om + 1) > 1e-12:
            raise ParameterError(
                "case ii-b forces lambda = omega = -1; theta must equal pi")
        gamma = alpha if gamma is None else complex(gamma)
        if alpha == 0 and gamma == 0:
            raise ParameterError("alpha and gamma must not both vanish")
        right = alpha * np.array([1.0, -2.0, 1.0])
        left = gamma * np.array([1.0, -2.0, 1.0])
        origin = np.array([alpha, (alpha + gamma) / 2, gamma])
        w_right, w_left = 6 * a2, 6 * abs(gamma) ** 2
        w0 = 1.25 * (a2 + abs(gamma) ** 2) + 0.5 * (alpha * np.conj(gamma)).real
    xs = np.arange(-half_width, half_width + 1)
    amps = np.where((xs > 0)[:, None], right, left).astype(complex)
    amps[half_width] = origin
    values = np.where(xs > 0, w_right, w_left).astype(float)
    values[half_width] = w0
    return WaveWindow(-half_width, amps), Measure(-half_width, values)


def minus1_params(case: str, config: CoinConfig, alpha: complex = 1.0,
                  gamma: complex | None = None) -> EigenParams:
    """Origin amplitudes of a lambda = -1 family, packaged for the spectral routines."""
    psi, _ = lambda_minus1_family(case, config, alpha, gamma, half_width=1)
    a, b, c = psi.at(0)
    return EigenParams(-1.0, a, b, c, config.omega)


def homogeneous_limit_measure(a: complex, b: complex, c: complex,
                              half_width: int = DEFAULT_HALF_WIDTH) -> Measure:
    """
    Limit measure of the homogeneous Grover walk started from (a, b, c) at the origin.
    """
    p = abs(2 * a + b) ** 2
    q = abs(b + 2 * c) ** 2
    s = abs(a + b + c) ** 2
    right = (3 + SQRT6) * p + (3 - SQRT6) * q - 2 * s
    left = (3 - SQRT6) * p + (3 + SQRT6) * q - 2 * s
    xs = np.arange(-half_width, half_width + 1)
    values = np.where(xs > 0, right, left) * HOMOGENEOUS_DECAY ** np.abs(xs)
    values[half_width] = (5 - 2 * SQRT6) / 2 * (p + q)
    floor = -1e-12 * (p + q + s)
    if np.any(values < floor):
        raise ArithmeticError("homogeneous limit measure came out negative")
    return Measure(-half_width, np.maximum(values, 0.0))
