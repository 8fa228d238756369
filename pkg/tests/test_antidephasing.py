"""Tests for the noise-averaged generator: matrix construction, analytic
spectrum, steady state and integration of the averaged Bloch equations."""

import numpy as np
import pytest

from nhmagic.antidephasing import (
    DegenerateSteadyStateError,
    SDQParams,
    build_liouvillian,
    cubic_roots,
    dissipative_gap,
    evolve_average,
    liouvillian_spectrum,
    steady_sre,
    steady_state,
)
from nhmagic.dissipative import (
    COMPLEX_HOPPING,
    DQParams,
    REAL_HOPPING,
    evolve_density,
    nh_spectrum,
)
from nhmagic.magic import M2_H, M2_T, m2_tilde_bloch
from nhmagic.states import bloch_to_density, density_to_bloch

SQ2 = np.sqrt(2.0)
SQ3 = np.sqrt(3.0)
GAMMA_H = 2.0 * SQ2
GAMMA_T = np.sqrt(6.0)


def test_params_constants():
    p = SDQParams("real", GAMMA_H, 0.0)
    assert p.liouville_A == pytest.approx(-GAMMA_H, abs=1e-12)
    assert p.liouville_B == pytest.approx(-2.0 * GAMMA_H, abs=1e-12)
    # drift constant is the negation of B
    assert p.drift_constant == pytest.approx(2.0 * GAMMA_H, abs=1e-12)


def test_build_liouvillian_unitary_limit():
    lams = np.linalg.eigvals(build_liouvillian(SDQParams("real", 0.0, 0.0)))
    expected = np.array([0.0, 0.0, 2j, -2j])
    pair = np.abs(np.sort_complex(lams)[:, None] - np.sort_complex(expected)[None, :])
    assert max(pair.min(axis=0).max(), pair.min(axis=1).max()) < 1e-12


def test_build_liouvillian_matches_superoperator_action():
    """The matrix must act as the non-Hermitian drain plus half the squared
    noise superoperator M[rho] = -sqrt(2 gamma) Gamma (Pi rho + rho Pi):

        L[rho] = -i(H rho - rho H^dag)
                 + 2 gamma Gamma^2 (Pi rho Pi + (Pi rho + rho Pi)/2),

    with Pi = |e><e| the excited-state projector."""
    pi = np.diag([0.0, 1.0]).astype(complex)
    for hop, kw in (("real", REAL_HOPPING), ("complex", COMPLEX_HOPPING)):
        for G, g in ((2.8, 0.0), (2.8, 0.05), (5.0, 0.12)):
            p = SDQParams(hop, G, g)
            dq = DQParams(**kw, gamma_decay=G)
            H = dq.hamiltonian()
            L = build_liouvillian(p)
            for k in range(4):
                e = np.zeros(4, dtype=complex)
                e[k] = 1.0
                rho = e.reshape(2, 2)
                action = -1j * (H @ rho - rho @ H.conj().T)
                action += 2.0 * g * G**2 * (
                    pi @ rho @ pi + 0.5 * (pi @ rho + rho @ pi)
                )
                assert np.abs((L @ e).reshape(2, 2) - action).max() < 1e-12


def test_spectrum_real_hopping_optimum():
    ana = liouvillian_spectrum(SDQParams("real", GAMMA_H, 0.0))
    expected = np.array([2.0 - 2.0 * SQ2, -2.0 * SQ2, -2.0 * SQ2, -2.0 - 2.0 * SQ2])
    lams = np.array(sorted(ana.lambdas, key=lambda l: -l.real))
    assert np.abs(lams - expected).max() < 1e-10
    assert ana.gap == pytest.approx(2.0, abs=1e-10)


def test_spectrum_quadruple_root_at_coalescence():
    ana = liouvillian_spectrum(SDQParams("real", 2.0, 0.0), check_numeric=False)
    assert np.abs(np.array(ana.lambdas) - (-2.0)).max() < 1e-9
    assert ana.gap == pytest.approx(0.0, abs=1e-9)


def test_spectrum_complex_hopping_optimum():
    ana = liouvillian_spectrum(SDQParams("complex", GAMMA_T, 0.0))
    lam0 = max(ana.lambdas, key=lambda l: l.real)
    assert abs(lam0 - (-(np.sqrt(6.0) - SQ2))) < 1e-10
    assert ana.gap == pytest.approx(SQ2, abs=1e-10)


def test_analytic_roots_match_numeric_eigensolve_on_grid():
    worst = 0.0
    for G in np.linspace(0.05, 8.0, 12):
        for g in np.linspace(0.0, 0.3, 12):
            p = SDQParams("real", G, g)
            lams = np.concatenate([cubic_roots(p), [complex(p.liouville_A)]])
            numeric = np.linalg.eigvals(build_liouvillian(p))
            pair = np.abs(lams[:, None] - numeric[None, :])
            worst = max(worst, float(max(pair.min(axis=0).max(), pair.min(axis=1).max())))
    assert worst < 1e-9


def test_real_and_complex_hopping_share_the_spectrum():
    for G in (1.0, 2.8, 6.0):
        for g in (0.0, 0.07, 0.2):
            r = cubic_roots(SDQParams("real", G, g))
            c = cubic_roots(SDQParams("complex", G, g))
            assert np.abs(r - c).max() < 1e-12


def test_dominant_eigenvalue_pins_to_zero_on_transition_line():
    for G in (2.0, 4.0, 7.0):
        p = SDQParams("real", G, 0.5 / G)  # B = 0
        lam0 = max(cubic_roots(p), key=lambda l: l.real)
        assert abs(lam0) < 1e-9


def test_noiseless_reduction_to_nh_decay_rate():
    for G in (2.5, 3.5, 6.0):
        lam0 = max(cubic_roots(SDQParams("real", G, 0.0)), key=lambda l: l.real)
        eps = nh_spectrum(DQParams(**REAL_HOPPING, gamma_decay=G)).eps_plus
        assert abs(lam0 - 2.0 * eps.imag) < 1e-10


def test_steady_state_examples():
    r = steady_state(SDQParams("real", GAMMA_H, 0.0))
    assert np.abs(r.as_array() - [0.0, -1.0 / SQ2, 1.0 / SQ2]).max() < 1e-10
    r = steady_state(SDQParams("complex", GAMMA_T, 0.0))
    assert np.abs(r.as_array() - np.array([1.0, -1.0, 1.0]) / SQ3).max() < 1e-10


def test_steady_state_mixed_on_transition_line():
    r = steady_state(SDQParams("real", 4.0, 0.125))  # gamma Gamma = 1/2
    assert r.norm() < 1.0 - 1e-6


def test_steady_state_degenerate_at_coalescence():
    with pytest.raises(DegenerateSteadyStateError):
        steady_state(SDQParams("real", 2.0, 0.0))


def test_steady_sre_closed_forms_match_bloch_measure():
    for hop in ("real", "complex"):
        for G in (2.5, 3.6, 5.0):
            for g in (0.0, 0.05, 0.12):
                p = SDQParams(hop, G, g)
                assert abs(steady_sre(p) - m2_tilde_bloch(steady_state(p))) < 1e-10


def test_steady_sre_noiseless_landmarks():
    assert steady_sre(SDQParams("real", GAMMA_H, 0.0)) == pytest.approx(float(M2_H), abs=1e-10)
    assert steady_sre(SDQParams("complex", GAMMA_T, 0.0)) == pytest.approx(float(M2_T), abs=1e-10)


def test_steady_sre_reported_noisy_optimum():
    assert steady_sre(SDQParams("real", 3.599, 0.065)) == pytest.approx(0.450, abs=0.005)


def test_evolve_average_noiseless_matches_exact_propagation():
    t_grid = np.linspace(0.0, 3.0, 61)
    for hop, kw in (("real", REAL_HOPPING), ("complex", COMPLEX_HOPPING)):
        p = SDQParams(hop, 2.8, 0.0)
        dq = DQParams(**kw, gamma_decay=2.8)
        path = evolve_average(p, np.zeros(3), t_grid)
        rho0 = bloch_to_density([0.0, 0.0, 0.0])
        worst = 0.0
        for t, r in zip(t_grid, path):
            exact = density_to_bloch(evolve_density(dq, rho0, float(t))).as_array()
            worst = max(worst, float(np.abs(r - exact).max()))
        assert worst < 1e-8


def test_evolve_average_fixed_point_is_stationary():
    p = SDQParams("real", 2.8, 0.01)
    r_ss = steady_state(p).as_array()
    horizon = 10.0 / dissipative_gap(p)
    path = evolve_average(p, r_ss, np.linspace(0.0, horizon, 50))
    assert np.abs(path - r_ss).max() < 1e-8


def test_evolve_average_converges_to_steady_state():
    p = SDQParams("real", 2.8, 0.01)
    horizon = 5.0 / dissipative_gap(p)
    path = evolve_average(p, np.zeros(3), np.linspace(0.0, horizon, 80))
    # the slowest mode decays like e^(-5) ~ 7e-3 over this horizon
    assert np.abs(path[-1] - steady_state(p).as_array()).max() < 1e-2
    longer = evolve_average(p, np.zeros(3), np.linspace(0.0, 4.0 * horizon, 80))
    assert np.abs(longer[-1] - steady_state(p).as_array()).max() < 1e-6


def test_evolve_average_rejects_bad_grid():
    p = SDQParams("real", 2.8, 0.01)
    with pytest.raises(ValueError):
        evolve_average(p, np.zeros(3), np.array([0.5, 1.0]))
    with pytest.raises(ValueError):
        evolve_average(p, np.zeros(3), np.array([0.0, 1.0, 0.5]))
