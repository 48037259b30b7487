"""
Exit criteria for the package, runnable from tests and from ``grover-walk verify``.

Each ``criterion_*`` function returns a CriterionResult carrying a one-line
detail string; tolerances are fixed here and nowhere else.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .closed_form import (HOMOGENEOUS_DECAY, SQRT6, Thm1Branch,
                          homogeneous_limit_measure, lambda_minus1_family, measure_coefficient,
                          minus1_params, resolve_measure_params, theta_s_abs2, thm1_eigenvector,
                          thm1_lambda, thm1_measure, thm1_params)
from .errors import NonDecayingWarning
from .lattice import CoinConfig, WaveWindow, phi
from .spectral import (EigenParams, build_eigenvector_lemma2, case_ia_params,
                       case_ia_quintic_roots, case_ia_solutions, common_ratio, det_A,
                       lambda_case_iia, lemma2_ratios, lemma3_scaled_residuals, matrix_A,
                       quartic_coefficients, theta_roots)
from .verify import (eigen_residual, lemma1_check, scaling_relation_check,
                     stationarity_deviation, time_averaged_measure)

THETA_GRID = tuple(k * math.pi / 25 for k in range(1, 50))
HALF_WIDTH = 64
SEED = 20160713


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] criterion {self.number}: {self.name} -- {self.detail}"


def decaying_branches(theta: float) -> list[str]:
    """Signs whose antisymmetric eigenvector decays at ``theta`` (by the actual ratio)."""
    config = CoinConfig(theta)
    out = []
    for sign in "+-":
        if abs(common_ratio(thm1_params(config, Thm1Branch(sign)))) <= 1.0:
            out.append(sign)
    return out


def criterion_1(tol: float = 1e-10) -> CriterionResult:
    worst, count = 0.0, 0
    for theta in THETA_GRID:
        config = CoinConfig(theta)
        for sign in decaying_branches(theta):
            psi, lam = thm1_eigenvector(config, Thm1Branch(sign), HALF_WIDTH)
            worst = max(worst, eigen_residual(psi, lam, config))
            count += 1
    return CriterionResult(1, "eigen-residual suite", worst < tol,
                           f"{count} decaying branches on the theta grid, max residual {worst:.3e} < {tol:.0e}")


def _stationary_families():
    for theta in THETA_GRID:
        config = CoinConfig(theta)
        for sign in decaying_branches(theta):
            psi, _ = thm1_eigenvector(config, Thm1Branch(sign), HALF_WIDTH)
            yield f"thm1{sign}", config, psi
        for case in ("i", "ii-a"):
            psi, _ = lambda_minus1_family(case, config, 1.0, half_width=HALF_WIDTH)
            yield case, config, psi
    config = CoinConfig(math.pi)
    for alpha, gamma in ((1.0, 1.0), (1.0, 1j), (0.5 - 0.25j, -1.5)):
        psi, _ = lambda_minus1_family("ii-b", config, alpha, gamma, half_width=HALF_WIDTH)
        yield "ii-b", config, psi


def criterion_2(n: int = 50, tol: float = 1e-9) -> CriterionResult:
    worst, count = 0.0, 0
    for _, config, psi in _stationary_families():
        worst = max(worst, stationarity_deviation(psi, n, config))
        count += 1
    return CriterionResult(2, "stationarity suite", worst < tol,
                           f"{count} eigenvectors over {n} steps, max |mu_n - mu_0| {worst:.3e} < {tol:.0e}")


def criterion_3(tol: float = 1e-9, max_x: int = 20, limit_tol: float = 1e-12) -> CriterionResult:
    worst, count = 0.0, 0
    for theta in THETA_GRID:
        config = CoinConfig(theta)
        for sign in decaying_branches(theta):
            branch = Thm1Branch(sign)
            closed = thm1_measure(config, branch, max_x).values
            psi, _ = thm1_eigenvector(config, branch, max_x)
            oracle = phi(psi).values
            worst = max(worst, float(np.max(np.abs(closed - oracle) / oracle)))
            count += 1
    coef_err = abs(measure_coefficient(0.0, (1, 0, 1)) - 12 * (5 + 2 * SQRT6))
    decay_err = abs(theta_s_abs2(0.0, "-") - (49 - 20 * SQRT6))
    bits_small = resolve_measure_params(THETA_GRID[0], "-")
    bits_ok = (bits_small.n1, bits_small.n2, bits_small.n3) == (1, 0, 1)
    passed = worst < tol and coef_err < limit_tol and decay_err < limit_tol and bits_ok
    return CriterionResult(
        3, "closed-form measure oracle", passed,
        f"{count} branches, |x| <= {max_x}, max rel dev {worst:.3e} < {tol:.0e}; theta->0 coefficient "
        f"err {coef_err:.1e}, decay err {decay_err:.1e}; small-theta bits (1,0,1): {bits_ok}")


def criterion_4(tol: float = 1e-12) -> CriterionResult:
    report = scaling_relation_check(20, tol)
    return CriterionResult(4, "scaling relation", report.passed,
                           f"identities {report.residual_inf:.1e}, pointwise rel {report.max_measure_drift:.1e} "
                           f"(tol {tol:.0e})")


def criterion_5(big_n: int = 2000, half_width: int = 2100, tol: float = 2e-3) -> CriterionResult:
    start = np.array([1.0, 0.0, -1.0]) / math.sqrt(2.0)
    psi0 = WaveWindow.localized(start, half_width)
    avg = time_averaged_measure(psi0, big_n, CoinConfig(0.0))
    quoted = homogeneous_limit_measure(*start, half_width=5)
    dev = max(abs(avg.at(x) - quoted.at(x)) for x in range(-5, 6))
    closed = homogeneous_limit_measure(*start, half_width=20)
    ratios = [closed.at(x + 1) / closed.at(x) for x in range(1, 20)]
    ratio_err = max(abs(r - (49 - 20 * SQRT6)) for r in ratios)
    passed = dev < tol and ratio_err < 1e-12
    return CriterionResult(5, "limit-measure simulation", passed,
                           f"N={big_n}, max |avg - mu_inf| at |x|<=5 {dev:.3e} < {tol:.0e}; "
                           f"decay ratio {HOMOGENEOUS_DECAY:.7f} (err {ratio_err:.1e})")


def produced_eigenvalues() -> list[tuple[str, float, complex]]:
    """Every eigenvalue of a bounded eigenvector the package constructs on the theta grid."""
    out = []
    for theta in THETA_GRID:
        config = CoinConfig(theta)
        lp, lm = lambda_case_iia(config)
        out += [("ii-a+", theta, lp), ("ii-a-", theta, lm), ("minus1", theta, -1.0 + 0j)]
        out += [("i-a", theta, s.lam) for s in case_ia_solutions(config) if s.decaying]
    return out


def criterion_6(tol: float = 1e-12, det_tol: float = 1e-11, samples: int = 100) -> CriterionResult:
    eig_err = prod_err = 0.0
    for _, _, lam in produced_eigenvalues():
        eig_err = max(eig_err, abs(abs(lam) - 1))
        pair = theta_roots(lam)
        prod_err = max(prod_err, abs(pair.theta_s * pair.theta_l - 1))
    rng = np.random.default_rng(SEED)
    det_err = 0.0
    for _ in range(samples):
        lam = np.exp(1j * rng.uniform(0, 2 * math.pi))
        z = complex(rng.normal(), rng.normal())
        ref = det_A(lam, z)
        det_err = max(det_err, abs(np.linalg.det(matrix_A(lam, z)) - ref) / abs(ref))
    abs2_err = 0.0
    for theta in THETA_GRID:
        for sign in decaying_branches(theta):
            lam = thm1_lambda(CoinConfig(theta), sign)
            abs2_err = max(abs2_err, abs(abs(theta_roots(lam).theta_s) ** 2 - theta_s_abs2(theta, sign)))
    passed = eig_err < tol and prod_err < tol and det_err < det_tol and abs2_err < det_tol
    return CriterionResult(
        6, "spectral identities", passed,
        f"||lambda|-1| {eig_err:.1e}, |theta_s theta_l - 1| {prod_err:.1e}, det rel {det_err:.1e} "
        f"({samples} samples), |theta_s|^2 formula {abs2_err:.1e}")


def _family_params(rng) -> EigenParams:
    """A random parameter set drawn from one of the constructed families."""
    kind = rng.integers(5)
    theta = rng.uniform(0.05, 2 * math.pi - 0.05)
    config = CoinConfig(theta)
    alpha = complex(rng.normal(), rng.normal())
    if kind == 0:
        lam = lambda_case_iia(config)[rng.integers(2)]
        return EigenParams(lam, alpha, 0.0, -alpha, config.omega)
    if kind == 1:
        return minus1_params("i", config, alpha)
    if kind == 2:
        return minus1_params("ii-a", config, alpha)
    if kind == 3:
        gamma = complex(rng.normal(), rng.normal())
        return minus1_params("ii-b", CoinConfig(math.pi), alpha, gamma)
    sols = [s for s in case_ia_solutions(config) if s.on_unit_circle and s.theta_s is not None]
    lam = sols[rng.integers(len(sols))].lam
    return EigenParams(lam, *case_ia_params(lam, config.omega, alpha), config.omega)


def _random_params(rng) -> EigenParams:
    lam = np.exp(1j * rng.uniform(0, 2 * math.pi))
    omega = np.exp(1j * rng.uniform(0, 2 * math.pi))
    a, b, c = rng.normal(size=3) + 1j * rng.normal(size=3)
    return EigenParams(lam, a, b, c, omega)


def lemma3_agreement(p: EigenParams, tol: float = 1e-10) -> tuple[bool, bool]:
    """(ratios coincide, gluing residuals vanish) for one parameter set."""
    ratios = lemma2_ratios(p)
    equal = ratios.spread() < tol * max(1.0, abs(ratios.common() or 0.0))
    vanish = bool(np.all(lemma3_scaled_residuals(p) < tol))
    return equal, vanish


def criterion_7(draws: int = 1000, tol: float = 1e-10) -> CriterionResult:
    rng = np.random.default_rng(SEED + 7)
    disagreements = positives = negatives = 0
    samples = [_random_params(rng) for _ in range(draws)]
    samples += [_family_params(rng) for _ in range(draws)]
    for p in samples:
        equal, vanish = lemma3_agreement(p, tol)
        disagreements += equal != vanish
        positives += equal and vanish
        negatives += not equal and not vanish
    return CriterionResult(7, "ratio and gluing-condition equivalence", disagreements == 0,
                           f"{len(samples)} draws: {positives} both hold, {negatives} both fail, "
                           f"{disagreements} disagree")


def criterion_8(tol: float = 1e-10) -> CriterionResult:
    poly_err = 0.0
    off_circle = []
    vec_err, built = 0.0, 0
    for theta in THETA_GRID:
        config = CoinConfig(theta)
        quintic = np.polymul([1.0, 1.0], quartic_coefficients(config.omega))
        roots = case_ia_quintic_roots(config)
        poly_err = max(poly_err, float(np.max(np.abs(np.polyval(quintic, roots)))))
        bad = [r for r in roots if abs(abs(r) - 1) > tol]
        if bad:
            off_circle.append((theta, max(abs(abs(r) - 1) for r in bad)))
        for sol in case_ia_solutions(config):
            if sol.decaying:
                psi = build_eigenvector_lemma2(sol.params(config.omega), -HALF_WIDTH, HALF_WIDTH)
                vec_err = max(vec_err, eigen_residual(psi, sol.lam, config))
                built += 1
    passed = poly_err < tol and not off_circle and vec_err < tol
    detail = (f"poly residual {poly_err:.1e}; {built} decaying roots, vector residual {vec_err:.1e}; "
              f"roots off the unit circle at {len(off_circle)}/{len(THETA_GRID)} grid angles")
    if off_circle:
        worst = max(off_circle, key=lambda t: t[1])
        detail += f" (worst ||lambda|-1| = {worst[1]:.3f} at theta={worst[0]:.4f})"
    return CriterionResult(8, "symmetric-family root exploration", passed, detail)


def _lemma1_families():
    for theta in THETA_GRID[::4]:
        config = CoinConfig(theta)
        for sign in decaying_branches(theta):
            psi, _ = thm1_eigenvector(config, Thm1Branch(sign), HALF_WIDTH)
            yield f"thm1{sign}@{theta:.3f}", psi, thm1_params(config, Thm1Branch(sign))
    for theta in (math.pi / 3, math.pi, 5 * math.pi / 3):
        config = CoinConfig(theta)
        for case in ("i", "ii-a"):
            psi, _ = lambda_minus1_family(case, config, 1.0, half_width=HALF_WIDTH)
            yield f"{case}@{theta:.3f}", psi, minus1_params(case, config, 1.0)
    config = CoinConfig(math.pi)
    psi, _ = lambda_minus1_family("ii-b", config, 1.0, 1j, half_width=HALF_WIDTH)
    yield "ii-b", psi, minus1_params("ii-b", config, 1.0, 1j)


def criterion_9(n_z: int = 10, x_max: int = 60, tol: float = 1e-12) -> CriterionResult:
    rng = np.random.default_rng(SEED + 9)
    worst, checks = -math.inf, 0
    for _, psi, p in _lemma1_families():
        rho_s = abs(common_ratio(p))
        for side in "+-":
            for _ in range(n_z):
                # keep |theta_s z^(+-1)| <= 0.8 so the tail bound is meaningful
                if side == "+":
                    r = rng.uniform(0.05, 0.8) / rho_s
                else:
                    r = rho_s / rng.uniform(0.05, 0.8)
                z = r * np.exp(1j * rng.uniform(0, 2 * math.pi))
                worst = max(worst, lemma1_check(psi, p, z, x_max, side))
                checks += 1
    return CriterionResult(9, "generating-function identity", worst <= tol,
                           f"{checks} (family, side, z) checks, max excess over tail bound {worst:.2e} <= {tol:.0e}")


CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9)


def run_all() -> list[CriterionResult]:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonDecayingWarning)
        return [c() for c in CRITERIA]
