import math

import numpy as np
import pytest

from grover_walk.closed_form import (Thm1Branch, homogeneous_limit_measure, lambda_minus1_family,
                                     thm1_eigenvector, thm1_params)
from grover_walk.errors import TailDivergentError, WindowExhaustedError
from grover_walk.lattice import CoinConfig, WaveWindow
from grover_walk.verify import (eigen_residual, lemma1_check, limit_estimate,
                                scaling_relation_check, stationarity_deviation,
                                time_averaged_measure, truncated_genfun, verify_eigenvector)


def test_delta_state_is_not_stationary():
    # mu_1(0) = 1/9, mu_0(0) = 1
    psi = WaveWindow.localized([0, 1, 0], 3)
    assert stationarity_deviation(psi, 1, CoinConfig(0.0)) == pytest.approx(8 / 9)
    psi = WaveWindow.localized([1, 0, 0], 3)
    assert stationarity_deviation(psi, 1, CoinConfig(0.0)) == pytest.approx(5 / 9)


def test_stationarity_needs_margin():
    with pytest.raises(WindowExhaustedError):
        stationarity_deviation(WaveWindow.localized([1, 0, 0], 3), 4, CoinConfig(0.0))
    with pytest.raises(ValueError):
        stationarity_deviation(WaveWindow.localized([1, 0, 0], 3), -1, CoinConfig(0.0))


def test_verify_eigenvector_report():
    cfg = CoinConfig(math.pi)
    psi, lam = thm1_eigenvector(cfg, Thm1Branch("+"), 64)
    rep = verify_eigenvector(psi, lam, cfg)
    assert rep.passed and rep.steps_checked == 50
    assert rep.residual_inf < 1e-10 and rep.max_measure_drift < 1e-9
    assert set(rep.as_dict()) == {"residual_inf", "steps_checked", "max_measure_drift", "notes", "passed"}
    bad = verify_eigenvector(psi, -lam, cfg, n=3)
    assert not bad.passed


def test_wrong_eigenvalue_has_large_residual():
    cfg = CoinConfig(2.0)
    psi, _ = lambda_minus1_family("ii-a", cfg, half_width=10)
    assert eigen_residual(psi, 1.0, cfg) > 1.0


@pytest.mark.parametrize("theta", [0.8, math.pi, 4.0])
def test_lemma1_identity(theta):
    cfg = CoinConfig(theta)
    branch = Thm1Branch("+" if theta > 1.5 else "-")
    psi, _ = thm1_eigenvector(cfg, branch, 80)
    p = thm1_params(cfg, branch)
    for z in (0.9, 1.2j, -1.5):
        for side in "+-":
            assert lemma1_check(psi, p, z, 70, side) <= 1e-12


def test_lemma1_detects_perturbed_vector():
    cfg = CoinConfig(math.pi)
    psi, _ = thm1_eigenvector(cfg, Thm1Branch("+"), 80)
    p = thm1_params(cfg, Thm1Branch("+"))
    amps = psi.amps.copy()
    amps[psi.index(2), 1] += 1e-6
    assert lemma1_check(psi.with_amps(amps), p, 1.0, 70) > 1e-8


def test_truncated_genfun_divergent_tail():
    cfg = CoinConfig(math.pi)
    psi, _ = thm1_eigenvector(cfg, Thm1Branch("+"), 20)
    with pytest.raises(TailDivergentError):
        truncated_genfun(psi, "+", 10.0, 10, 0.2)
    with pytest.raises(TailDivergentError):
        truncated_genfun(psi, "-", 0.1, 10, 0.2)
    with pytest.raises(ValueError):
        truncated_genfun(psi, "x", 1.0, 10, 0.2)


def test_truncated_genfun_partial_sum():
    amps = np.zeros((7, 3), dtype=complex)
    amps[4] = (1, 2, 3)
    amps[5] = (4, 5, 6)
    psi = WaveWindow(-3, amps)
    gf = truncated_genfun(psi, "+", 0.5, 2, 0.1)
    assert np.allclose(gf.values, 0.5 * np.array([1, 2, 3]) + 0.25 * np.array([4, 5, 6]))


def test_limit_estimate_shape_and_band():
    psi0 = WaveWindow.localized([1, 0, -1], 60)
    est = limit_estimate(psi0, 40, CoinConfig(0.0))
    assert est.average.x_min == -20 and est.average.x_max == 20
    assert np.all(est.band_lo.values <= est.band_hi.values)
    with pytest.raises(WindowExhaustedError):
        limit_estimate(psi0, 61, CoinConfig(0.0))


def test_time_average_approaches_limit():
    psi0 = WaveWindow.localized([1, 0, -1], 700)
    avg = time_averaged_measure(psi0, 600, CoinConfig(0.0)).restrict(-3, 3)
    lim = homogeneous_limit_measure(1, 0, -1, 3)
    assert np.max(np.abs(avg.values - lim.values)) < 1e-2


def test_time_average_shows_localization():
    psi0 = WaveWindow.localized(np.array([1, 0, -1]) / math.sqrt(2), 520)
    avg = time_averaged_measure(psi0, 500, CoinConfig(0.0))
    assert avg.at(0) > 0.15
    assert avg.at(0) == pytest.approx(2 * (5 - 2 * math.sqrt(6)), abs=5e-3)


def test_scaling_relation():
    rep = scaling_relation_check()
    assert rep.passed
    assert rep.residual_inf < 1e-12 and rep.max_measure_drift < 1e-12
