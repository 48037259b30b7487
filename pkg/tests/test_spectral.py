import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from grover_walk.errors import DegenerateDefectError, RatioMismatchError, SpectralDomainError
from grover_walk.lattice import CoinConfig
from grover_walk.spectral import (EigenParams, a_minus, a_plus, build_eigenvector_lemma2,
                                  case_ia_quintic_roots, case_ia_solutions, common_ratio, det_A,
                                  lambda_case_iia, lemma2_coefficients, lemma2_ratios,
                                  lemma3_residuals, lemma3_satisfied, matrix_A, polish_roots,
                                  quartic_coefficients, theta_roots)
from grover_walk.verify import eigen_residual

SQRT6 = math.sqrt(6)
phases = st.floats(min_value=0.0, max_value=2 * math.pi, exclude_max=True, allow_nan=False)
moduli = st.floats(min_value=0.2, max_value=5.0)


@settings(max_examples=100, deadline=None)
@given(a=phases, r=moduli, b=phases, s=moduli)
def test_det_closed_form_matches_numeric(a, r, b, s):
    lam, z = r * cmath.exp(1j * a), s * cmath.exp(1j * b)
    expected = np.linalg.det(matrix_A(lam, z))
    assert abs(det_A(lam, z) - expected) <= 1e-12 * max(1.0, abs(expected), abs(lam) ** 2 * (abs(z) + 1 / abs(z)))


def test_domain_errors():
    with pytest.raises(SpectralDomainError):
        matrix_A(1.0, 0.0)
    with pytest.raises(SpectralDomainError):
        det_A(0.0, 1.0)
    with pytest.raises(SpectralDomainError):
        theta_roots(0.0)
    with pytest.raises(ValueError):
        EigenParams(1.5, 1.0, 0.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        EigenParams(1.0, 0.0, 0.0, 0.0, 1.0)


def test_a_plus_with_only_center_amplitude():
    om = cmath.exp(0.4j)
    p = EigenParams(1j, 0.0, 0.7 - 0.2j, 0.0, om)
    z = 0.3 + 0.1j
    assert np.allclose(a_plus(p, z), [0, 0, 2 * om * p.beta * z / 3], atol=1e-15)


def test_theta_roots_at_one():
    pair = theta_roots(1.0)
    assert pair.theta_s == pytest.approx(5 - 2 * SQRT6, rel=1e-13)
    assert pair.theta_l == pytest.approx(5 + 2 * SQRT6, rel=1e-13)


@settings(max_examples=100, deadline=None)
@given(a=phases)
def test_theta_roots_reciprocal_and_solve_quadratic(a):
    lam = cmath.exp(1j * a)
    s, l = theta_roots(lam)
    assert abs(s * l - 1) < 1e-13
    assert abs(s) <= abs(l) + 1e-12
    b = 3 * lam + 4 + 3 / lam
    for t in (s, l):
        assert abs(t * t - b * t + 1) < 1e-11 * max(1, abs(t) ** 2)


def test_lambda_iia_at_pi():
    lp, lm = lambda_case_iia(CoinConfig(math.pi))
    assert lp == pytest.approx((-1 + 2j * SQRT6) / -5, abs=1e-14)
    assert lm == pytest.approx((-1 - 2j * SQRT6) / -5, abs=1e-14)


@settings(max_examples=100, deadline=None)
@given(theta=st.floats(min_value=1e-3, max_value=2 * math.pi - 1e-3))
def test_lambda_iia_on_unit_circle(theta):
    for lam in lambda_case_iia(CoinConfig(theta)):
        assert abs(abs(lam) - 1) < 1e-12


def test_lambda_iia_degenerate_at_zero():
    with pytest.raises(DegenerateDefectError):
        lambda_case_iia(CoinConfig(0.0))


@pytest.mark.parametrize("theta", [0.3, 1.0, math.pi, 4.0, 5.9])
def test_quartic_vieta_product(theta):
    om = cmath.exp(1j * theta)
    roots = case_ia_quintic_roots(CoinConfig(theta))[1:]
    expected = 3 * om**3 * (1 - 2 * om) / (3 * (om - 2))
    assert np.prod(roots) == pytest.approx(expected, rel=1e-10)
    for r in np.roots(quartic_coefficients(om)):
        assert np.min(np.abs(roots - r)) < 1e-6


@pytest.mark.parametrize("theta", [0.3, 1.0, 2.0, 4.0, 5.4035])
def test_quartic_is_self_inversive(theta):
    # c_{4-k} = omega^4 conj(c_k): roots off the unit circle come in (r, 1/conj r) pairs
    om = cmath.exp(1j * theta)
    c = quartic_coefficients(om)
    assert np.allclose(c[::-1], om**4 * np.conj(c), atol=1e-13)
    roots = case_ia_quintic_roots(CoinConfig(theta))[1:]
    for r in roots:
        assert np.min(np.abs(roots - 1 / np.conj(r))) < 1e-8


def test_quintic_double_root_at_pi():
    roots = case_ia_quintic_roots(CoinConfig(math.pi))
    assert roots[0] == -1
    assert np.sum(np.abs(roots - 1) < 1e-10) == 2


def test_polish_improves_perturbed_roots():
    coeffs = np.array([1.0, -6.0, 11.0, -6.0], dtype=complex)
    rough = np.array([1.001, 2.002, 2.998])
    polished = polish_roots(coeffs, rough)
    assert np.all(np.abs(np.polyval(coeffs, polished)) < np.abs(np.polyval(coeffs, rough)))


@pytest.mark.parametrize("theta", [0.5, 2.5, math.pi, 3.5])
def test_decaying_case_ia_vectors_are_eigenvectors(theta):
    cfg = CoinConfig(theta)
    good = [s for s in case_ia_solutions(cfg) if s.decaying and abs(s.theta_s) < 0.9]
    assert good
    for sol in good:
        p = sol.params(cfg.omega)
        assert lemma3_satisfied(p, tol=1e-9)
        psi = build_eigenvector_lemma2(p, -40, 40)
        assert eigen_residual(psi, sol.lam, cfg) < 1e-10


@pytest.mark.parametrize("theta", [0.7, math.pi, 5.0])
def test_iia_ratios_coincide_and_build_eigenvector(theta):
    cfg = CoinConfig(theta)
    for lam in lambda_case_iia(cfg):
        p = EigenParams(lam, 1.0, 0.0, -1.0, cfg.omega)
        ratios = lemma2_ratios(p)
        assert ratios.spread() < 1e-12
        assert lemma3_satisfied(p)
        t = common_ratio(p)
        if abs(t) < 0.95:
            psi = build_eigenvector_lemma2(p, -50, 50)
            assert eigen_residual(psi, lam, cfg) < 1e-10


def test_coefficients_reproduce_origin_neighbours():
    cfg = CoinConfig(math.pi)
    lam = lambda_case_iia(cfg)[0]
    p = EigenParams(lam, 1.0, 0.0, -1.0, cfg.omega)
    plus, minus = lemma2_coefficients(p)
    psi = build_eigenvector_lemma2(p, -3, 3)
    t = common_ratio(p)
    assert np.allclose(psi.amps[psi.index(1)], -plus * t)
    assert np.allclose(psi.amps[psi.index(-1)], -minus * t)


def test_random_params_mismatch():
    p = EigenParams(cmath.exp(0.4j), 1.0, 0.3, 0.5j, cmath.exp(1.1j))
    assert not lemma3_satisfied(p)
    with pytest.raises(RatioMismatchError):
        common_ratio(p)


def test_equal_ratios_do_not_imply_origin_gluing():
    # alpha = gamma and beta chosen to kill the tail conditions: all six
    # ratios agree, yet the stay-row condition at the origin fails
    lam, om = cmath.exp(0.9j), cmath.exp(2.0j)
    # quadratic in d = 2 alpha + 2 beta - gamma with alpha = gamma = 1
    d = np.roots([-2 * om**2, om * (9 * lam**2 - 6 * lam + 9), -18 * lam**2])[0]
    p = EigenParams(lam, 1.0, (d - 1) / 2, 1.0, om)
    r = np.abs(lemma3_residuals(p))
    assert r[1] < 1e-14 and r[2] < 1e-12 and r[3] < 1e-12
    assert lemma2_ratios(p).spread() < 1e-12
    assert r[0] > 0.1
    assert not lemma3_satisfied(p)


def test_mirrored_params_swap_sides():
    p = EigenParams(cmath.exp(0.4j), 1.0, 0.3, 0.5j, cmath.exp(1.1j))
    q = p.mirrored()
    rp, rq = lemma2_ratios(p), lemma2_ratios(q)
    assert rp.l_plus == pytest.approx(rq.r_minus)
    assert rp.o_plus == pytest.approx(rq.o_minus)
    assert np.allclose(a_plus(p, 0.5), a_minus(q, 2.0)[::-1], atol=1e-15)
