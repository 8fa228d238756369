"""Acceptance suite: the quantitative claims the package must reproduce.

Each criterion is a callable returning (passed, detail).  The suite backs
both ``nhmagic verify`` and the acceptance tests; the quick subset contains
only the analytic criteria and finishes in a few seconds.

Setting the environment variable NHMAGIC_VERIFY_CORRUPT to a nonempty value
perturbs a reference constant, which must turn the suite red; this guards
against a suite that cannot fail.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass

import numpy as np

from . import antidephasing, dissipative
from .antidephasing import SDQParams, build_liouvillian, cubic_roots, evolve_average
from .dissipative import COMPLEX_HOPPING, DQParams, REAL_HOPPING
from .magic import M2_H, M2_T, m2_tilde_bloch, m2_tilde_generic, renyi2, sre_upper_bounds
from .sde import SDESystem, NoiseIncrement, kp15_step, simulate_ensemble
from .states import PureState2, bloch_to_density, density_to_bloch
from .sweep import AxisSpec, GridSpec, locate_maximum

GAMMA_H = 2.0 * np.sqrt(2.0)  # decay maximizing the deterministic real-hopping magic
GAMMA_T = np.sqrt(6.0)  # decay maximizing the deterministic complex-hopping magic


def _m2_h_target() -> float:
    if os.environ.get("NHMAGIC_VERIFY_CORRUPT"):
        return float(M2_H) + 1e-3
    return float(M2_H)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def check_a1_h_state_optimum():
    """Deterministic real-hopping optimum reaches the H-state magic."""
    p = DQParams(**REAL_HOPPING, gamma_decay=GAMMA_H)
    sre = dissipative.steady_sre(p)
    r = dissipative.steady_state_bloch(p)
    target = np.array([0.0, -1.0 / np.sqrt(2.0), 1.0 / np.sqrt(2.0)])
    err_sre = abs(sre - _m2_h_target())
    err_r = np.abs(r.as_array() - target).max()
    ok = err_sre < 1e-10 and err_r < 1e-10
    return ok, f"|sre - log2(4/3)| = {err_sre:.2e}, Bloch error = {err_r:.2e}"


def check_a2_t_state_optimum():
    """Complex-hopping and detuned real-hopping optima reach the T-state magic.

    The printed detuned attractor carries sign typos (it is the Bloch vector
    of the fast-decaying eigenstate); the criterion checks the slow branch,
    cross-validated against long-time propagation.
    """
    p_c = DQParams(**COMPLEX_HOPPING, gamma_decay=GAMMA_T)
    err_c = abs(dissipative.steady_sre(p_c) - np.log2(1.5))

    p_d = DQParams(jx=1.0, jy=0.0, delta=1.0, gamma_decay=np.sqrt(3.0))
    err_d = abs(dissipative.steady_sre(p_d) - np.log2(1.5))
    r = dissipative.steady_state_bloch(p_d)
    expect = np.array([-1.0, -1.0, 1.0]) / np.sqrt(3.0)  # slow-branch signs
    err_r = np.abs(r.as_array() - expect).max()
    dyn = dissipative.attractor_check_bloch(p_d, bloch_to_density([0, 0, 1]), gaps=40.0)
    err_dyn = np.abs(dyn.as_array() - r.as_array()).max()
    ok = err_c < 1e-10 and err_d < 1e-10 and err_r < 1e-10 and err_dyn < 1e-6
    return ok, (
        f"complex |sre - log2(3/2)| = {err_c:.2e}, detuned = {err_d:.2e}, "
        f"Bloch error = {err_r:.2e}, propagation check = {err_dyn:.2e}"
    )


def check_a3_exceptional_point():
    """Coalescence at Gamma = 2J: eigenvalues, quadruple Liouvillian root,
    vanishing gap and the |-y> attractor with zero magic."""
    p = DQParams(**REAL_HOPPING, gamma_decay=2.0)
    spec = dissipative.nh_spectrum(p)
    err_eps = max(abs(spec.eps_plus - (-1j)), abs(spec.eps_minus - (-1j)))
    sp = SDQParams("real", 2.0, 0.0)
    lams = np.array(antidephasing.liouvillian_spectrum(sp, check_numeric=False).lambdas)
    err_lam = np.abs(lams - (-2.0)).max()
    gap = antidephasing.dissipative_gap(sp)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        r = dissipative.steady_state_bloch(p).as_array()
    err_r = np.abs(r - np.array([0.0, -1.0, 0.0])).max()
    m2 = m2_tilde_bloch([0.0, -1.0, 0.0])
    ok = max(err_eps, err_lam, gap, err_r, abs(m2)) < 1e-9
    return ok, (
        f"eps error = {err_eps:.2e}, quadruple-root error = {err_lam:.2e}, "
        f"gap = {gap:.2e}, Bloch error = {err_r:.2e}, M2 = {m2:.2e}"
    )


def check_a4_asymptotics():
    """Large-decay closed form approaches 4 J^2 / (ln 2 Gamma^2) within 2%."""
    worst = 0.0
    for G in (30.0, 100.0, 300.0):
        exact = dissipative.sre_real_hopping(G)
        asym = dissipative.sre_asymptotic(G)
        worst = max(worst, abs(exact - asym) / exact)
    return worst < 0.02, f"worst relative deviation = {worst:.4f}"


def check_a5_liouvillian_oracle():
    """Cardano spectrum matches the numeric eigensolve of the built matrix
    on a 40x40 grid (degeneracy-avoiding), both hoppings coinciding."""
    gammas = np.linspace(0.0, 0.3, 40)
    Gammas = np.linspace(0.05, 8.0, 40)  # avoids the exact coalescence point
    worst = 0.0
    worst_pair = 0.0
    for G in Gammas:
        for g in gammas:
            pr = SDQParams("real", G, g)
            pc = SDQParams("complex", G, g)
            roots_r = cubic_roots(pr)
            worst_pair = max(worst_pair, float(np.abs(roots_r - cubic_roots(pc)).max()))
            lams = np.concatenate([roots_r, [complex(pr.liouville_A)]])
            numeric = np.linalg.eigvals(build_liouvillian(pr))
            pair = np.abs(lams[:, None] - numeric[None, :])
            dist = max(pair.min(axis=0).max(), pair.min(axis=1).max())
            worst = max(worst, float(dist))
    ok = worst < 1e-9 and worst_pair < 1e-12
    return ok, f"worst analytic/numeric distance = {worst:.2e}, hopping mismatch = {worst_pair:.2e}"


def check_a6_noisy_optimum():
    """Located maximum of the noisy steady magic matches the reported one."""
    grid = GridSpec(AxisSpec(0.0, 0.15, 31), AxisSpec(2.0, 6.0, 41), "real")
    gam, G, val = locate_maximum(grid, "steady")
    ok = abs(gam - 0.065) <= 0.005 and abs(G - 3.599) <= 0.05 and abs(val - 0.450) <= 0.005
    return ok, f"located (gamma, Gamma, value) = ({gam:.4f}, {G:.4f}, {val:.5f})"


def check_a7_success_rates():
    """Post-selection success rates from |+> at the two optima.

    The reference values correspond to a half-rate decay convention and are
    not reachable with the decay written into the model Hamiltonian; the
    criterion is evaluated as stated and its failure is expected.
    """
    plus = PureState2.from_array([1.0, 1.0])
    targets = {
        ("real", GAMMA_H, 2.0): (0.61, 0.45),
        ("complex", GAMMA_T, np.sqrt(2.0)): (0.41, 0.16),
    }
    details = []
    ok = True
    for (hop, G, gap), (sr1_t, sr2_t) in targets.items():
        kw = REAL_HOPPING if hop == "real" else COMPLEX_HOPPING
        p = DQParams(**kw, gamma_decay=G)
        _, sr1 = dissipative.evolve_pure(p, plus, 1.0 / gap)
        _, sr2 = dissipative.evolve_pure(p, plus, 2.0 / gap)
        ok = ok and abs(sr1 - sr1_t) <= 0.01 and abs(sr2 - sr2_t) <= 0.01
        details.append(f"{hop}: SR = ({sr1:.4f}, {sr2:.4f}) vs ({sr1_t}, {sr2_t})")
    return ok, "; ".join(details)


def check_a8_sde_strong_order():
    """Strong convergence slope of the integrator on an exactly solvable SDE."""
    a, b = 1.0, 0.5
    n_paths = 200
    n_fine = 2**11
    T = 1.0
    dt_fine = T / n_fine
    rng = np.random.default_rng(314159)
    u1 = rng.standard_normal((n_paths, n_fine))
    u2 = rng.standard_normal((n_paths, n_fine))
    dw_f = u1 * np.sqrt(dt_fine)
    dz_f = 0.5 * dt_fine**1.5 * (u1 + u2 / np.sqrt(3.0))
    w_end = dw_f.sum(axis=1)
    exact = np.exp((a - b**2 / 2.0) * T + b * w_end)

    sys = SDESystem(1, lambda y: a * y, lambda y: b * y)
    errs, dts = [], []
    for k in range(6, 12):
        n_steps = 2**k
        m = n_fine // n_steps
        dt = T / n_steps
        dw = dw_f.reshape(n_paths, n_steps, m).sum(axis=2)
        # dZ over a block: sum of fine dZ plus the running fine W offsets
        w_rel = np.cumsum(dw_f.reshape(n_paths, n_steps, m), axis=2)
        w_start = np.concatenate(
            [np.zeros((n_paths, n_steps, 1)), w_rel[:, :, :-1]], axis=2
        )
        dz = dz_f.reshape(n_paths, n_steps, m).sum(axis=2) + dt_fine * w_start.sum(axis=2)
        y = np.ones((n_paths, 1))
        for n in range(n_steps):
            y = kp15_step(sys, y, dt, NoiseIncrement(dw=dw[:, n], dz=dz[:, n]))
        errs.append(np.mean(np.abs(y[:, 0] - exact)))
        dts.append(dt)
    slope = np.polyfit(np.log(dts), np.log(errs), 1)[0]
    return 1.3 <= slope <= 1.7, f"fitted strong-order slope = {slope:.3f} over {n_paths} shared paths"


def check_a9_trajectory_consistency():
    """Ensemble against the averaged equation, and late-time concentration.

    The trace-weighted trajectory mean is the consistent estimator of the
    averaged-equation state (plain averaging of normalized states is a
    different quantity at O(gamma)).  The concentration clause is evaluated
    as stated; the measured fraction sits a few points below the 0.80 mark.
    """
    details = []
    ok = True
    for hop, G, target in (("real", 2.8, _m2_h_target()), ("complex", GAMMA_T, float(M2_T))):
        p = SDQParams(hop, G, 0.01)
        T = 5.0 / antidephasing.dissipative_gap(p)
        ens = simulate_ensemble(p, np.zeros(3), T, 500, 1000, 7)
        ode = evolve_average(p, np.zeros(3), ens.t_grid)
        resid = np.abs(ens.weighted_mean_path() - ode)
        sem = np.maximum(ens.weighted_sem_path(), 1e-12)
        n_viol = int((resid > 3.0 * sem).sum())
        conc = float(np.mean(np.abs(ens.sre_paths[:, -1] - target) < 0.05))
        ok = ok and n_viol == 0 and conc >= 0.80
        details.append(f"{hop}: 3-sigma violations = {n_viol}, concentration = {conc:.3f}")
    return ok, "; ".join(details)


def check_a10_bounds():
    """Magic bound min(S2 + 1, log2(3/2)) over random states; tight at |T>."""
    rng = np.random.default_rng(20240815)
    v = rng.standard_normal((10_000, 3))
    radii = rng.random(10_000) ** (1.0 / 3.0)
    v *= (radii / np.linalg.norm(v, axis=1))[:, None]
    worst = -np.inf
    for r in v:
        rho = bloch_to_density(r)
        m2 = m2_tilde_generic(rho)
        bound = min(sre_upper_bounds(rho))
        worst = max(worst, m2 - bound)
    t_state = np.array([1.0, -1.0, 1.0]) / np.sqrt(3.0)
    rho_t = bloch_to_density(t_state)
    gap_t = abs(m2_tilde_generic(rho_t) - min(sre_upper_bounds(rho_t)))
    ok = worst <= 1e-12 and gap_t < 1e-12
    return ok, f"max bound excess = {worst:.2e}, |T> bound gap = {gap_t:.2e}"


def check_a11_analytic_evolution():
    """Closed-form magic along the decay-dominated evolution vs propagation."""
    rng = np.random.default_rng(99)
    worst = 0.0
    for _ in range(20):
        r0 = rng.standard_normal(3)
        r0 *= rng.random() ** (1.0 / 3.0) / np.linalg.norm(r0)
        G = 2.0 + 4.0 * rng.random()
        t = 3.0 * rng.random()
        p = DQParams(**REAL_HOPPING, gamma_decay=G)
        analytic = dissipative.m2_analytic_broken(p, r0, t)
        rho_t = dissipative.evolve_density(p, bloch_to_density(r0), t)
        numeric = m2_tilde_bloch(density_to_bloch(rho_t))
        worst = max(worst, abs(analytic - numeric))
    return worst < 1e-8, f"worst closed-form/propagation deviation = {worst:.2e}"


def _two_qubit_stabilizer_states():
    """The 60 stabilizer pure states on two qubits, as a Clifford orbit."""
    h = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2.0)
    s = np.diag([1.0, 1j])
    eye = np.eye(2, dtype=complex)
    cnot12 = np.eye(4, dtype=complex)[[0, 1, 3, 2]]
    cnot21 = np.eye(4, dtype=complex)[[0, 3, 2, 1]]
    gates = [
        np.kron(h, eye), np.kron(eye, h),
        np.kron(s, eye), np.kron(eye, s),
        cnot12, cnot21,
    ]

    def key(psi):
        i = int(np.argmax(np.abs(psi) > 1e-9))
        v = psi * np.exp(-1j * np.angle(psi[i]))
        return tuple(np.round(v, 9).view(float))

    start = np.zeros(4, dtype=complex)
    start[0] = 1.0
    seen = {key(start): start}
    frontier = [start]
    while frontier:
        nxt = []
        for psi in frontier:
            for gate in gates:
                phi = gate @ psi
                k = key(phi)
                if k not in seen:
                    seen[k] = phi
                    nxt.append(phi)
        frontier = nxt
    return list(seen.values())


def check_a12_generic_oracle():
    """Pauli-spectrum measure equals the Bloch form; stabilizer states give 0."""
    rng = np.random.default_rng(7777)
    v = rng.standard_normal((1000, 3))
    v *= (rng.random(1000) ** (1.0 / 3.0) / np.linalg.norm(v, axis=1))[:, None]
    worst = 0.0
    for r in v:
        worst = max(worst, abs(m2_tilde_generic(bloch_to_density(r)) - m2_tilde_bloch(r)))
    stabs = _two_qubit_stabilizer_states()
    n_stab = len(stabs)
    worst_stab = 0.0
    for psi in stabs:
        rho = np.outer(psi, psi.conj())
        worst_stab = max(worst_stab, abs(m2_tilde_generic(rho)))
    ok = worst < 1e-12 and n_stab == 60 and worst_stab < 1e-10
    return ok, (
        f"max Bloch mismatch = {worst:.2e}, stabilizer orbit size = {n_stab}, "
        f"max stabilizer magic = {worst_stab:.2e}"
    )


ALL_CHECKS = [
    ("A1", check_a1_h_state_optimum),
    ("A2", check_a2_t_state_optimum),
    ("A3", check_a3_exceptional_point),
    ("A4", check_a4_asymptotics),
    ("A5", check_a5_liouvillian_oracle),
    ("A6", check_a6_noisy_optimum),
    ("A7", check_a7_success_rates),
    ("A8", check_a8_sde_strong_order),
    ("A9", check_a9_trajectory_consistency),
    ("A10", check_a10_bounds),
    ("A11", check_a11_analytic_evolution),
    ("A12", check_a12_generic_oracle),
]

QUICK_NAMES = {"A1", "A2", "A3", "A4", "A7", "A10", "A11", "A12"}


def run_suite(quick: bool = False) -> list[CheckResult]:
    results = []
    for name, fn in ALL_CHECKS:
        if quick and name not in QUICK_NAMES:
            continue
        t0 = time.perf_counter()
        passed, detail = fn()
        results.append(CheckResult(name, bool(passed), detail, time.perf_counter() - t0))
    return results
