"""
Generating-function solution of the eigenvalue problem ``U Psi = lambda Psi``.

Away from the origin an eigenvector is geometric on each half line; the six
decay ratios below (one per chirality and side) must coincide for the two
halves to glue into a single eigenvector. The module provides the 3x3 system
obeyed by the one-sided generating functions, the quadratic whose roots give
the decay ratios, the ratio formulas themselves, the denominator-cleared
gluing conditions, and the eigenvalues of the two solvable families plus a
numerical treatment of the one that has no closed form.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import (NonDecayingWarning, RatioMismatchError, RootFindingError,
                     SpectralDomainError, DegenerateDefectError)
from .lattice import CoinConfig, WaveWindow

__all__ = [
    "EigenParams",
    "EigenSolution",
    "RatioSet",
    "ThetaPair",
    "a_minus",
    "a_plus",
    "build_eigenvector_lemma2",
    "case_ia_params",
    "case_ia_quintic_roots",
    "case_ia_solutions",
    "common_ratio",
    "det_A",
    "lambda_case_iia",
    "lemma2_coefficients",
    "lemma2_ratios",
    "lemma3_residuals",
    "lemma3_satisfied",
    "lemma3_scaled_residuals",
    "matrix_A",
    "polish_roots",
    "quartic_coefficients",
    "theta_roots",
]

UNIT_TOL = 1e-12
_SINGULAR_TOL = 1e-13


@dataclass(frozen=True)
class EigenParams:
    """Eigenvalue, origin amplitudes (alpha, beta, gamma) = Psi(0) and defect phase factor."""

    lam: complex
    alpha: complex
    beta: complex
    gamma: complex
    omega: complex

    def __post_init__(self):
        for name in ("lam", "alpha", "beta", "gamma", "omega"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        if self.scale == 0.0:
            raise ValueError("alpha, beta, gamma must not all vanish")
        if abs(abs(self.lam) - 1.0) > UNIT_TOL:
            raise ValueError(f"|lambda| must be 1, got {abs(self.lam)!r}")

    @property
    def delta_plus(self) -> complex:
        return 2 * self.alpha + 2 * self.beta - self.gamma

    @property
    def delta_minus(self) -> complex:
        return -self.alpha + 2 * self.beta + 2 * self.gamma

    @property
    def scale(self) -> float:
        return max(abs(self.alpha), abs(self.beta), abs(self.gamma))

    def mirrored(self) -> EigenParams:
        """Parameters of the reflected state x -> -x (alpha and gamma swapped)."""
        return EigenParams(self.lam, self.gamma, self.beta, self.alpha, self.omega)


class ThetaPair(NamedTuple):
    """Roots of the quadratic factor of det A, negated: small and large modulus."""

    theta_s: complex
    theta_l: complex


_RATIO_NAMES = ("l_plus", "o_plus", "r_plus", "l_minus", "o_minus", "r_minus")


@dataclass(frozen=True)
class RatioSet:
    """The six decay ratios; ``None`` marks a ratio whose denominator vanishes."""

    l_plus: complex | None
    o_plus: complex | None
    r_plus: complex | None
    l_minus: complex | None
    o_minus: complex | None
    r_minus: complex | None

    def values(self) -> tuple:
        return tuple(getattr(self, n) for n in _RATIO_NAMES)

    @property
    def singular(self) -> tuple[str, ...]:
        return tuple(n for n in _RATIO_NAMES if getattr(self, n) is None)

    def spread(self) -> float:
        """Largest pairwise distance between the six ratios; ``inf`` if any is singular."""
        if self.singular:
            return float("inf")
        return max(abs(a - b) for a, b in itertools.combinations(self.values(), 2))

    def common(self) -> complex | None:
        if self.singular:
            return None
        return complex(np.mean(self.values()))


def _check_domain(lam, z=None):
    if lam == 0:
        raise SpectralDomainError("lambda must be nonzero")
    if z is not None and z == 0:
        raise SpectralDomainError("z must be nonzero")


def matrix_A(lam: complex, z: complex) -> np.ndarray:
    """The 3x3 matrix with ``A f_pm(z) = a_pm(z)`` for the one-sided generating functions."""
    _check_domain(lam, z)
    return np.array([
        [lam + 1 / (3 * z), -2 / (3 * z), -2 / (3 * z)],
        [-2 / 3, lam + 1 / 3, -2 / 3],
        [-2 * z / 3, -2 * z / 3, lam + z / 3],
    ], dtype=complex)


def det_A(lam: complex, z: complex) -> complex:
    """Closed-form determinant ``lam (lam - 1) / (3 z) * (z**2 + 3 (lam + 4/3 + 1/lam) z + 1)``."""
    _check_domain(lam, z)
    return lam * (lam - 1) / (3 * z) * (z * z + (3 * lam + 4 + 3 / lam) * z + 1)


def a_plus(p: EigenParams, z: complex) -> np.ndarray:
    return np.array([-p.lam * p.alpha, 0.0, p.omega * z * p.delta_plus / 3], dtype=complex)


def a_minus(p: EigenParams, z: complex) -> np.ndarray:
    _check_domain(p.lam, z)
    return np.array([p.omega * p.delta_minus / (3 * z), 0.0, -p.lam * p.gamma], dtype=complex)


def theta_roots(lam: complex) -> ThetaPair:
    """
    Negated roots of ``z**2 + (3 lam + 4 + 3/lam) z + 1``, ordered by modulus.

    The larger root is computed without cancellation and the smaller one as
    its reciprocal, so ``theta_s * theta_l == 1`` up to a single rounding.
    """
    _check_domain(lam)
    lam = complex(lam)
    b = 3 * lam + 4 + 3 / lam
    disc = np.sqrt(complex(b * b - 4))
    z1, z2 = (-b - disc) / 2, (-b + disc) / 2
    big = z1 if abs(z1) >= abs(z2) else z2
    return ThetaPair(complex(-1 / big), complex(-big))


def _ratio_values(lam, alpha, beta, gamma, omega) -> RatioSet:
    lam, alpha, beta, gamma, omega = (complex(v) for v in (lam, alpha, beta, gamma, omega))
    dp = 2 * alpha + 2 * beta - gamma
    dm = -alpha + 2 * beta + 2 * gamma
    scale = max(abs(alpha), abs(beta), abs(gamma), 1e-300)

    def ratio(num, den):
        return None if abs(den) <= _SINGULAR_TOL * scale else complex(num / den)

    return RatioSet(
        l_plus=ratio(-(2 * (lam + 1) * dp * omega - 3 * lam**2 * (3 * lam + 1) * alpha),
                     3 * lam * (lam - 1) * alpha),
        o_plus=ratio(dp * omega - 3 * lam**2 * alpha, lam * (dp * omega - 3 * alpha)),
        r_plus=ratio((lam - 1) * dp * omega,
                     lam * ((3 * lam + 1) * dp * omega - 6 * (lam + 1) * alpha)),
        l_minus=ratio((lam - 1) * dm * omega,
                      lam * ((3 * lam + 1) * dm * omega - 6 * (lam + 1) * gamma)),
        o_minus=ratio(dm * omega - 3 * lam**2 * gamma, lam * (dm * omega - 3 * gamma)),
        r_minus=ratio(-(2 * (lam + 1) * dm * omega - 3 * lam**2 * (3 * lam + 1) * gamma),
                      3 * lam * (lam - 1) * gamma),
    )


def lemma2_ratios(p: EigenParams) -> RatioSet:
    """Decay ratios of the six chirality/side components of the candidate eigenvector."""
    return _ratio_values(p.lam, p.alpha, p.beta, p.gamma, p.omega)


def lemma2_coefficients(p: EigenParams) -> tuple[np.ndarray, np.ndarray]:
    """
    Prefactors of the geometric tails.

    Returns ``(plus, minus)``: ``Psi(x) = plus * (-ratio)**x`` for ``x >= 1`` and
    ``Psi(x) = minus * (-ratio)**(-x)`` for ``x <= -1``, componentwise (L, O, R).
    """
    lam, om, a, c = p.lam, p.omega, p.alpha, p.gamma
    dp, dm = p.delta_plus, p.delta_minus
    d = 3 * (lam - 1)
    plus = np.array([a,
                     -2 * (dp * om - 3 * a) / d,
                     -((3 * lam + 1) * dp * om - 6 * (lam + 1) * a) / d])
    minus = np.array([-((3 * lam + 1) * dm * om - 6 * (lam + 1) * c) / d,
                      -2 * (dm * om - 3 * c) / d,
                      c])
    return plus, minus


def lemma3_residuals(p: EigenParams) -> tuple[complex, complex, complex, complex]:
    """
    Denominator-cleared gluing conditions, each zero when satisfied.

    In order: the stay row at the origin ``beta (3 lam + omega) - 2 omega (alpha + gamma)``,
    the symmetry factor ``(alpha - gamma)(alpha + gamma - 2 beta)``, and the
    right and left tail-consistency polynomials.
    """
    lam, om, a, b, c = p.lam, p.omega, p.alpha, p.beta, p.gamma
    dp, dm = p.delta_plus, p.delta_minus

    def tail(s, d):
        return (lam + 1) * (9 * s * (om * d - 2 * s) * lam**2
                            - 6 * s * om * d * lam
                            - om * d * (2 * om * d - 9 * s))

    return (b * (3 * lam + om) - 2 * om * (a + c),
            (a - c) * (a + c - 2 * b),
            tail(a, dp),
            tail(c, dm))


def lemma3_scaled_residuals(p: EigenParams) -> np.ndarray:
    """Residual moduli divided by the matching power of the amplitude scale."""
    r = np.abs(lemma3_residuals(p))
    s = p.scale
    return r / np.array([s, s * s, s * s, s * s])


def lemma3_satisfied(p: EigenParams, tol: float = 1e-10) -> bool:
    return bool(np.all(lemma3_scaled_residuals(p) < tol))


def common_ratio(p: EigenParams, tol: float = 1e-8) -> complex:
    """The shared decay ratio, or RatioMismatchError if the six ratios disagree."""
    ratios = lemma2_ratios(p)
    if ratios.singular:
        raise RatioMismatchError(f"singular ratios: {', '.join(ratios.singular)}")
    common = ratios.common()
    if ratios.spread() > tol * max(1.0, abs(common)):
        raise RatioMismatchError(f"decay ratios differ by {ratios.spread():.3e}")
    return common


def build_eigenvector_lemma2(p: EigenParams, x_min: int = -64, x_max: int = 64,
                             tol: float = 1e-8) -> WaveWindow:
    """
    Assemble the eigenvector with origin amplitudes ``(alpha, beta, gamma)``.

    Raises RatioMismatchError when the ratios disagree or the origin condition
    fails; warns with NonDecayingWarning when the common ratio exceeds one in
    modulus (the vector is then not square summable).
    """
    if not (x_min <= 0 <= x_max):
        raise ValueError("window must contain the origin")
    theta_s = common_ratio(p, tol)
    if not lemma3_satisfied(p, tol):
        raise RatioMismatchError(
            "gluing conditions fail: scaled residuals "
            + ", ".join(f"{r:.3e}" for r in lemma3_scaled_residuals(p)))
    if abs(theta_s) > 1 + UNIT_TOL:
        warnings.warn(f"|theta_s| = {abs(theta_s):.6g} > 1: eigenvector grows away from the origin",
                      NonDecayingWarning, stacklevel=2)
    ratios = lemma2_ratios(p)
    plus, minus = lemma2_coefficients(p)
    r_plus = -np.array([ratios.l_plus, ratios.o_plus, ratios.r_plus])
    r_minus = -np.array([ratios.l_minus, ratios.o_minus, ratios.r_minus])
    xs = np.arange(x_min, x_max + 1)
    amps = np.zeros((xs.size, 3), dtype=complex)
    pos, neg = xs > 0, xs < 0
    amps[pos] = plus * r_plus ** xs[pos, None]
    amps[neg] = minus * r_minus ** (-xs[neg, None])
    amps[-x_min] = (p.alpha, p.beta, p.gamma)
    return WaveWindow(x_min, amps)


def lambda_case_iia(config: CoinConfig) -> tuple[complex, complex]:
    """
    Eigenvalues ``(omega +- sqrt(6 omega (omega - 1)**2)) / (3 omega - 2)`` of the
    antisymmetric family (alpha = -gamma, beta = 0), principal square root.
    """
    if config.is_homogeneous:
        raise DegenerateDefectError("the antisymmetric family needs theta != 0")
    om = config.omega
    root = np.sqrt(6 * om * (om - 1) ** 2)
    den = 3 * om - 2
    return complex((om + root) / den), complex((om - root) / den)


def quartic_coefficients(omega: complex) -> np.ndarray:
    """Coefficients (highest degree first) of the quartic left after dividing out lam + 1."""
    om = complex(omega)
    return np.array([
        3 * (om - 2),
        2 * (5 * om - 3) * om,
        (3 * om**2 - 8 * om + 3) * om,
        2 * (5 - 3 * om) * om**2,
        3 * om**3 * (1 - 2 * om),
    ])


def polish_roots(coeffs: np.ndarray, roots: np.ndarray, cluster_tol: float = 1e-6) -> np.ndarray:
    """
    One Newton step per root; clustered roots are re-centred on a root of the derivative.

    Newton on ``p`` stalls at ``sqrt(eps)`` accuracy for a double root, while
    the double root is a simple root of ``p'``, so pairs closer than
    ``cluster_tol`` are replaced by a Newton-refined zero of ``p'``.
    """
    p = np.polynomial.Polynomial(coeffs[::-1])
    dp = p.deriv()
    d2p = dp.deriv()
    roots = np.array(roots, dtype=complex)
    for i, r in enumerate(roots):
        d = dp(r)
        if d != 0:
            cand = r - p(r) / d
            if abs(p(cand)) <= abs(p(r)):
                roots[i] = cand
    for i, j in itertools.combinations(range(roots.size), 2):
        if abs(roots[i] - roots[j]) < cluster_tol * max(1.0, abs(roots[i])):
            c = 0.5 * (roots[i] + roots[j])
            for _ in range(8):
                d = d2p(c)
                if d == 0:
                    break
                c = c - dp(c) / d
            if abs(p(c)) <= max(abs(p(roots[i])), abs(p(roots[j]))):
                roots[i] = roots[j] = c
    return roots


def case_ia_quintic_roots(config: CoinConfig, tol: float = 1e-10) -> np.ndarray:
    """
    All five eigenvalue candidates of the symmetric family with alpha = gamma != beta.

    The first entry is the exact root -1; the remaining four are the quartic's
    roots from companion-matrix eigenvalues followed by Newton polishing.
    Raises RootFindingError if any polished residual is ``>= tol``.
    """
    if config.is_homogeneous:
        raise DegenerateDefectError("the symmetric family needs theta != 0")
    coeffs = quartic_coefficients(config.omega)
    monic = coeffs[1:] / coeffs[0]
    companion = np.zeros((4, 4), dtype=complex)
    companion[0, :] = -monic
    companion[1:, :-1] = np.eye(3)
    roots = polish_roots(coeffs, np.linalg.eigvals(companion))
    residual = np.abs(np.polyval(coeffs, roots))
    if np.any(residual >= tol):
        raise RootFindingError(f"quartic residual {residual.max():.3e} >= {tol:.1e}")
    roots = roots[np.lexsort((roots.imag, roots.real))]
    return np.concatenate([[-1.0 + 0.0j], roots])


@dataclass(frozen=True)
class EigenSolution:
    """One eigenvalue candidate with its origin amplitudes and decay ratio."""

    lam: complex
    alpha: complex
    beta: complex
    gamma: complex
    theta_s: complex | None
    case: str

    @property
    def on_unit_circle(self) -> bool:
        return abs(abs(self.lam) - 1.0) <= 1e-10

    @property
    def decaying(self) -> bool:
        """True when the candidate yields a bounded eigenvector (|lambda| = 1, |theta_s| <= 1)."""
        return (self.on_unit_circle and self.theta_s is not None
                and abs(self.theta_s) <= 1 + UNIT_TOL)

    def params(self, omega: complex) -> EigenParams:
        return EigenParams(self.lam, self.alpha, self.beta, self.gamma, omega)


def case_ia_params(lam: complex, omega: complex, alpha: complex = 1.0) -> tuple[complex, complex, complex]:
    """Origin amplitudes with alpha = gamma and beta fixed by the stay row at the origin."""
    beta = 2 * omega * (2 * alpha) / (3 * lam + omega)
    return complex(alpha), complex(beta), complex(alpha)


def case_ia_solutions(config: CoinConfig, alpha: complex = 1.0) -> list[EigenSolution]:
    """Report every quintic root together with the common decay ratio, if one exists."""
    om = config.omega
    out = []
    for lam in case_ia_quintic_roots(config):
        a, b, c = case_ia_params(lam, om, alpha)
        ratios = _ratio_values(lam, a, b, c, om)
        theta_s = ratios.common() if ratios.spread() <= 1e-8 * max(1.0, abs(ratios.common() or 0)) else None
        out.append(EigenSolution(complex(lam), a, b, c, theta_s, "i-a"))
    return out
