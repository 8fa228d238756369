"""Tests for the deterministic dissipative qubit: spectra, attractors,
closed-form steady magic and exact time evolution."""

import warnings

import numpy as np
import pytest

from nhmagic.dissipative import (
    COMPLEX_HOPPING,
    DQParams,
    ExceptionalPointWarning,
    NoAttractorError,
    REAL_HOPPING,
    attractor_check_bloch,
    evolve_density,
    evolve_pure,
    m2_analytic_broken,
    nh_spectrum,
    sre_asymptotic,
    sre_complex_hopping,
    sre_detuned,
    sre_real_hopping,
    steady_sre,
    steady_state_bloch,
)
from nhmagic.magic import M2_H, M2_T, m2_tilde_bloch
from nhmagic.states import PureState2, bloch_to_density, density_to_bloch, purity

SQ2 = np.sqrt(2.0)
SQ3 = np.sqrt(3.0)
GAMMA_H = 2.0 * SQ2
GAMMA_T = np.sqrt(6.0)


def test_spectrum_real_hopping_optimum():
    spec = nh_spectrum(DQParams(**REAL_HOPPING, gamma_decay=GAMMA_H))
    assert abs(spec.eps_plus - (-1j * (SQ2 - 1.0))) < 1e-12
    assert abs(spec.eps_minus - (-1j * (SQ2 + 1.0))) < 1e-12


def test_spectrum_exceptional_point():
    spec = nh_spectrum(DQParams(**REAL_HOPPING, gamma_decay=2.0))
    assert spec.is_exceptional
    assert abs(spec.eps_plus - (-1j)) < 1e-12
    assert abs(spec.eps_minus - (-1j)) < 1e-12


def test_spectrum_hermitian_limit():
    spec = nh_spectrum(DQParams(**REAL_HOPPING, gamma_decay=0.0))
    assert abs(spec.eps_plus - 1.0) < 1e-12
    assert abs(spec.eps_minus - (-1.0)) < 1e-12


def test_branch_ordering_and_eigen_residual():
    rng = np.random.default_rng(21)
    for _ in range(50):
        p = DQParams(
            jx=rng.standard_normal(),
            jy=rng.standard_normal(),
            delta=rng.standard_normal(),
            gamma_decay=3.0 * rng.random(),
        )
        spec = nh_spectrum(p)
        assert spec.eps_plus.imag >= spec.eps_minus.imag - 1e-12
        if not spec.is_exceptional:
            H = p.hamiltonian()
            for eps, psi in ((spec.eps_plus, spec.psi_plus), (spec.eps_minus, spec.psi_minus)):
                v = psi.as_array()
                assert np.abs(H @ v - eps * v).max() < 1e-10


def test_steady_bloch_examples():
    r = steady_state_bloch(DQParams(**REAL_HOPPING, gamma_decay=GAMMA_H))
    assert np.abs(r.as_array() - [0.0, -1.0 / SQ2, 1.0 / SQ2]).max() < 1e-10
    r = steady_state_bloch(DQParams(**COMPLEX_HOPPING, gamma_decay=GAMMA_T))
    assert np.abs(r.as_array() - np.array([1.0, -1.0, 1.0]) / SQ3).max() < 1e-10
    assert abs(r.norm() - 1.0) < 1e-10


def test_pt_unbroken_has_no_attractor():
    with pytest.raises(NoAttractorError):
        steady_state_bloch(DQParams(**REAL_HOPPING, gamma_decay=1.0))


def test_exceptional_point_warns_and_returns_coalesced_state():
    with pytest.warns(ExceptionalPointWarning):
        r = steady_state_bloch(DQParams(**REAL_HOPPING, gamma_decay=2.0))
    assert np.abs(r.as_array() - [0.0, -1.0, 0.0]).max() < 1e-9


def test_steady_sre_matches_bloch_measure():
    rng = np.random.default_rng(22)
    for _ in range(30):
        p = DQParams(
            jx=1.0, jy=0.0,
            delta=2.0 * rng.standard_normal(),
            gamma_decay=2.2 + 3.0 * rng.random(),
        )
        assert abs(steady_sre(p) - m2_tilde_bloch(steady_state_bloch(p))) < 1e-10


def test_closed_form_real_hopping():
    assert sre_real_hopping(GAMMA_H) == pytest.approx(float(M2_H), abs=1e-12)
    assert sre_real_hopping(2.0) == pytest.approx(0.0, abs=1e-12)
    for G in (2.5, 3.0, 5.0):
        p = DQParams(**REAL_HOPPING, gamma_decay=G)
        assert abs(sre_real_hopping(G) - steady_sre(p)) < 1e-10
    # maximum of the family sits at Gamma = 2 sqrt(2)
    grid = np.linspace(2.05, 8.0, 400)
    vals = [sre_real_hopping(G) for G in grid]
    assert abs(grid[int(np.argmax(vals))] - GAMMA_H) < 0.05


def test_closed_form_complex_hopping():
    assert sre_complex_hopping(GAMMA_T) == pytest.approx(float(M2_T), abs=1e-12)
    assert sre_complex_hopping(SQ3) == pytest.approx(0.0, abs=1e-12)
    for G in (2.0, 3.0, 4.0):
        p = DQParams(**COMPLEX_HOPPING, gamma_decay=G)
        assert abs(sre_complex_hopping(G) - steady_sre(p)) < 1e-10


def test_asymptotic_form():
    for G in (30.0, 100.0, 300.0):
        rel = abs(sre_real_hopping(G) - sre_asymptotic(G)) / sre_real_hopping(G)
        assert rel < 0.02


def test_detuned_closed_form_matches_spectrum_on_grid():
    # even node counts keep delta = 0 (PT-unbroken line) off the grid
    worst = 0.0
    for delta in np.linspace(-2.0, 2.0, 50):
        for G in np.linspace(0.08, 4.0, 50):
            p = DQParams(jx=1.0, jy=0.0, delta=delta, gamma_decay=G)
            worst = max(worst, abs(sre_detuned(delta, G) - steady_sre(p)))
    assert worst < 1e-8


def test_detuned_t_state_value():
    assert sre_detuned(1.0, SQ3) == pytest.approx(float(M2_T), abs=1e-10)


def test_evolve_pure_basics():
    p = DQParams(**REAL_HOPPING, gamma_decay=GAMMA_H)
    plus = PureState2.from_array([1.0, 1.0])
    psi0, sr0 = evolve_pure(p, plus, 0.0)
    assert np.abs(psi0.as_array() - plus.as_array()).max() < 1e-12
    assert sr0 == pytest.approx(1.0, abs=1e-12)


def test_evolve_pure_unitary_limit_preserves_norm():
    p = DQParams(**REAL_HOPPING, gamma_decay=0.0)
    plus = PureState2.from_array([1.0, 1.0])
    for t in (0.3, 1.0, 4.0):
        _, sr = evolve_pure(p, plus, t)
        assert sr == pytest.approx(1.0, abs=1e-12)


def test_success_rate_bounded_and_non_increasing():
    plus = PureState2.from_array([1.0, 1.0])
    for G in (1.0, 2.5, GAMMA_H):
        p = DQParams(**REAL_HOPPING, gamma_decay=G)
        last = 1.0 + 1e-12
        for t in np.linspace(0.0, 5.0, 60):
            _, sr = evolve_pure(p, plus, float(t))
            assert sr <= last + 1e-9
            last = sr


def test_evolve_density_basics():
    p = DQParams(**REAL_HOPPING, gamma_decay=GAMMA_H)
    rho0 = bloch_to_density([0.3, -0.2, 0.1])
    assert np.abs(evolve_density(p, rho0, 0.0) - rho0).max() < 1e-12
    pure0 = bloch_to_density([0.0, 1.0, 0.0])
    for t in (0.5, 2.0, 6.0):
        assert abs(purity(evolve_density(p, pure0, t)) - 1.0) < 1e-10


def test_evolve_density_reaches_attractor():
    p = DQParams(**REAL_HOPPING, gamma_decay=GAMMA_H)
    r_inf = attractor_check_bloch(p, bloch_to_density([1.0, 0.0, 0.0]), gaps=40.0)
    assert np.abs(r_inf.as_array() - [0.0, -1.0 / SQ2, 1.0 / SQ2]).max() < 1e-8


def test_propagation_smooth_through_exceptional_point():
    p = DQParams(**REAL_HOPPING, gamma_decay=2.0)
    rho_t = evolve_density(p, bloch_to_density([0.0, 0.0, -1.0]), 1.5)
    near = DQParams(**REAL_HOPPING, gamma_decay=2.0 + 1e-7)
    rho_near = evolve_density(near, bloch_to_density([0.0, 0.0, -1.0]), 1.5)
    assert np.abs(rho_t - rho_near).max() < 1e-5


def test_m2_analytic_broken_initial_condition_and_crosscheck():
    p = DQParams(**REAL_HOPPING, gamma_decay=3.0)
    r0 = np.array([0.0, 0.0, 1.0])
    assert m2_analytic_broken(p, r0, 0.0) == pytest.approx(m2_tilde_bloch(r0), abs=1e-12)
    rho_t = evolve_density(p, bloch_to_density(r0), 1.0)
    numeric = m2_tilde_bloch(density_to_bloch(rho_t))
    assert m2_analytic_broken(p, r0, 1.0) == pytest.approx(numeric, abs=1e-8)


def test_m2_analytic_broken_saturates_at_optimum():
    p = DQParams(**REAL_HOPPING, gamma_decay=GAMMA_H)
    assert m2_analytic_broken(p, [0.0, 0.0, 1.0], 40.0) == pytest.approx(float(M2_H), abs=1e-8)


def test_m2_analytic_broken_rejects_oscillatory_regime():
    with pytest.raises(ValueError):
        m2_analytic_broken(DQParams(**REAL_HOPPING, gamma_decay=1.0), [0, 0, 1], 1.0)
