"""Deterministic dissipative qubit.

The qubit evolves under the non-Hermitian Hamiltonian (units of J, basis
(|f>, |e>)):

    H = [[0,       Ups   ],        Ups = J_x - i J_y,
         [conj(Ups), delta - i Gamma]]

whose eigenvalues are eps_pm = (delta - i Gamma)/2 +- sqrt(|Ups|^2 +
((delta - i Gamma)/2)^2).  In the PT-broken (or detuned) regime the
slowest-decaying right eigenstate |psi_+> is an attractor of the normalized
dynamics, and its Bloch vector determines the steady-state magic.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .magic import m2_tilde_bloch
from .states import (
    BlochVector,
    PureState2,
    SIGMA_X,
    SIGMA_Y,
    PROJ_E,
    density_to_bloch,
    validate_density,
)

EP_REL_TOL = 1e-8


class NoAttractorError(RuntimeError):
    """PT-unbroken regime: equal decay rates, the dynamics never settles."""


class ExceptionalPointWarning(UserWarning):
    """Eigenvalues and eigenvectors coalesce; the propagator is defective."""


@dataclass(frozen=True)
class DQParams:
    """Dissipative-qubit parameters, all rates in units of J."""

    jx: float = 1.0
    jy: float = 0.0
    delta: float = 0.0
    gamma_decay: float = 0.0  # Gamma >= 0

    def __post_init__(self):
        if self.gamma_decay < 0:
            raise ValueError(f"Gamma must be >= 0, got {self.gamma_decay}")

    @property
    def ups(self) -> complex:
        """Complex hopping amplitude Ups = J_x - i J_y."""
        return complex(self.jx, -self.jy)

    def hamiltonian(self) -> np.ndarray:
        return (
            self.jx * SIGMA_X
            + self.jy * SIGMA_Y
            + (self.delta - 1j * self.gamma_decay) * PROJ_E
        )


# the two hopping cases studied throughout: Ups = J and Ups = (1-i)J/sqrt(2)
REAL_HOPPING = dict(jx=1.0, jy=0.0)
COMPLEX_HOPPING = dict(jx=1.0 / np.sqrt(2.0), jy=1.0 / np.sqrt(2.0))


@dataclass(frozen=True)
class NHSpectrum:
    eps_plus: complex
    eps_minus: complex
    psi_plus: PureState2
    psi_minus: PureState2
    is_exceptional: bool

    @property
    def nh_gap(self) -> float:
        """Difference of decay rates Im(eps_+) - Im(eps_-) >= 0."""
        return float(self.eps_plus.imag - self.eps_minus.imag)


def _eigvec(p: DQParams, eps: complex) -> PureState2:
    ups = p.ups
    if abs(ups) == 0:
        # diagonal Hamiltonian: eigenvectors are the basis states
        if abs(eps) < abs(eps - (p.delta - 1j * p.gamma_decay)):
            return PureState2.from_array([1.0, 0.0])
        return PureState2.from_array([0.0, 1.0])
    return PureState2.from_array([ups, eps])


def nh_spectrum(p: DQParams) -> NHSpectrum:
    """Eigenvalues and right eigenvectors, slowest-decaying branch first."""
    s = 0.5 * (p.delta - 1j * p.gamma_decay)
    root = np.sqrt(abs(p.ups) ** 2 + s**2 + 0j)
    e1, e2 = s + root, s - root
    if e1.imag >= e2.imag:
        eps_p, eps_m = e1, e2
    else:
        eps_p, eps_m = e2, e1
    scale = max(abs(p.ups), p.gamma_decay, 1.0)
    is_ep = abs(eps_p - eps_m) < EP_REL_TOL * scale
    return NHSpectrum(
        eps_plus=complex(eps_p),
        eps_minus=complex(eps_m),
        psi_plus=_eigvec(p, eps_p),
        psi_minus=_eigvec(p, eps_m),
        is_exceptional=bool(is_ep),
    )


def _bloch_of_eps(ups: complex, eps: complex) -> BlochVector:
    # Bloch coordinates of (Ups, eps)^T / norm
    d = abs(ups) ** 2 + abs(eps) ** 2
    x = 2.0 * (np.conj(eps) * ups).real / d
    y = -2.0 * (np.conj(eps) * ups).imag / d
    z = (abs(ups) ** 2 - abs(eps) ** 2) / d
    return BlochVector(float(x), float(y), float(z))


def steady_state_bloch(p: DQParams) -> BlochVector:
    """Bloch vector of the attractor eigenstate |psi_+>.

    Raises NoAttractorError in the PT-unbroken regime (equal decay rates).
    At an exceptional point the coalesced eigenstate is returned with an
    ExceptionalPointWarning.
    """
    spec = nh_spectrum(p)
    scale = max(abs(p.ups), p.gamma_decay, 1.0)
    if spec.is_exceptional:
        warnings.warn(
            "exceptional point: returning the coalesced eigenstate",
            ExceptionalPointWarning,
            stacklevel=2,
        )
        eps = 0.5 * (spec.eps_plus + spec.eps_minus)
        return _bloch_of_eps(p.ups, eps)
    if abs(spec.eps_plus.imag - spec.eps_minus.imag) < 1e-12 * scale:
        raise NoAttractorError(
            "PT-unbroken regime: both eigenstates decay at the same rate"
        )
    return _bloch_of_eps(p.ups, spec.eps_plus)


def steady_sre(p: DQParams) -> float:
    """Steady-state magic of the attractor, from the spectral closed form."""
    spec = nh_spectrum(p)
    scale = max(abs(p.ups), p.gamma_decay, 1.0)
    if spec.is_exceptional:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ExceptionalPointWarning)
            return m2_tilde_bloch(steady_state_bloch(p))
    if abs(spec.eps_plus.imag - spec.eps_minus.imag) < 1e-12 * scale:
        raise NoAttractorError(
            "PT-unbroken regime: both eigenstates decay at the same rate"
        )
    ups, eps = p.ups, spec.eps_plus
    w = np.conj(eps) * ups
    d = abs(ups) ** 2 + abs(eps) ** 2
    num = 2**4 * (w.real**4 + w.imag**4) + (abs(ups) ** 2 - abs(eps) ** 2) ** 4
    return float(-np.log2(0.5 + num / (2.0 * d**4)))


def sre_real_hopping(gamma_decay: float) -> float:
    """Closed form for Ups = J, delta = 0 (H-state family)."""
    g = gamma_decay
    return float(-np.log2(1.0 - 4.0 * (g**2 - 4.0) / g**4))


def sre_complex_hopping(gamma_decay: float) -> float:
    """Closed form for Ups = (1-i)J/sqrt(2), delta = 0 (T-state family)."""
    g = gamma_decay
    return float(-np.log2(1.0 - 4.0 * (g**2 - 3.0) / g**4))


def sre_asymptotic(gamma_decay: float) -> float:
    """Large-decay asymptote 4 J^2 / (ln 2 Gamma^2) of the real-hopping case."""
    return float(4.0 / (np.log(2.0) * gamma_decay**2))


def sre_detuned(delta: float, gamma_decay: float) -> float:
    """Closed form for Ups = J, delta != 0.

    Uses Om = sqrt(4 J^2 - (Gamma + i delta)^2) on the branch Im(Om) >= 0,
    which selects the slowest-decaying eigenstate; validated against the
    spectral form of ``steady_sre``.  The printed expression carries the
    same global sign typo as the stochastic steady-state forms, fixed here.
    """
    g, d = gamma_decay, delta
    om = np.sqrt(4.0 - (g + 1j * d) ** 2 + 0j)
    if om.imag < 0:
        om = -om
    om_r, om_i = om.real, om.imag
    a = (g - om_i) ** 2
    b = (d + om_r) ** 2
    num = 128.0 * (
        (g - om_i) ** 4
        + (a - 4.0 + b) ** 4 / 256.0
        + (a + 4.0 + b) ** 4 / 256.0
        + (d + om_r) ** 4
    )
    den = (a + 4.0 + b) ** 4
    return float(-np.log2(num / den))


def _propagator(p: DQParams, t: float) -> np.ndarray:
    """exp(-i H t) via eigendecomposition, with a defective (Jordan) form
    inside the exceptional-point window to avoid catastrophic cancellation."""
    H = p.hamiltonian()
    spec = nh_spectrum(p)
    if spec.is_exceptional:
        eps = 0.5 * (spec.eps_plus + spec.eps_minus)
        N = H - eps * np.eye(2)  # nilpotent to the EP tolerance
        return np.exp(-1j * eps * t) * (np.eye(2) - 1j * t * N)
    v = np.column_stack([spec.psi_plus.as_array(), spec.psi_minus.as_array()])
    phases = np.exp(-1j * np.array([spec.eps_plus, spec.eps_minus]) * t)
    return v @ np.diag(phases) @ np.linalg.inv(v)


def evolve_pure(p: DQParams, psi0: PureState2, t: float) -> tuple[PureState2, float]:
    """Normalized non-Hermitian evolution of a pure state.

    Returns (psi_t, SR_t) where SR_t = <psi~_t|psi~_t> is the success rate,
    i.e. the probability of post-selecting the no-jump trajectory.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    psi = _propagator(p, t) @ psi0.as_array()
    sr = float(np.vdot(psi, psi).real)
    return PureState2.from_array(psi), sr


def evolve_density(p: DQParams, rho0, t: float) -> np.ndarray:
    """Normalized evolution rho_t = U rho0 U^dag / Tr(.) with U = exp(-iHt)."""
    if t < 0:
        raise ValueError("t must be >= 0")
    rho0 = validate_density(rho0)
    U = _propagator(p, t)
    rho = U @ rho0 @ U.conj().T
    tr = np.trace(rho).real
    if tr < 1e-300:
        raise FloatingPointError(
            f"trace underflow ({tr:.3g}) while renormalizing at t = {t}"
        )
    return rho / tr


def m2_analytic_broken(p: DQParams, r0, t: float) -> float:
    """Closed-form magic along the evolution for jy = 0, delta = 0, Gamma > 2J.

    Valid when om^2 = Gamma^2 - 4 J^2 > 0.  The Bloch path is encoded by the
    auxiliary functions f, h, k of the initial coordinates (x, y, z); the
    unnormalized x component evolves as x om^2.
    """
    if p.jy != 0 or p.delta != 0:
        raise ValueError("closed form requires jy = 0 and delta = 0")
    J, g = p.jx, p.gamma_decay
    om2 = g**2 - 4.0 * J**2
    if om2 <= 0:
        raise ValueError(f"requires Gamma > 2J (om^2 = {om2:.3g} <= 0)")
    om = np.sqrt(om2)
    if not isinstance(r0, BlochVector):
        r0 = BlochVector.from_array(r0)
    x, y, z = r0.x, r0.y, r0.z
    ch, sh = np.cosh(om * t), np.sinh(om * t)
    f = g * (g + 2 * J * y) * ch - 2 * J * (2 * J + g * y) + g * om * z * sh
    h = -2 * J * (g + 2 * J * y) * ch - 2 * J * om * z * sh + g * (2 * J + g * y)
    k = om * (g + 2 * J * y) * sh + om2 * z * ch
    num = f**4 + h**4 + k**4 + x**4 * om**8
    den = f**2 * (f**2 + h**2 + k**2 + x**2 * om**4)
    return float(-np.log2(num / den))


def time_to_settle(p: DQParams, gaps: float = 10.0) -> float:
    """Time horizon gaps/Delta_NH used for attractor convergence checks."""
    spec = nh_spectrum(p)
    gap = spec.nh_gap
    if gap <= 0:
        raise NoAttractorError("no spectral gap, the dynamics never settles")
    return gaps / gap


def attractor_check_bloch(p: DQParams, rho0, gaps: float = 10.0) -> BlochVector:
    """Bloch vector after propagating rho0 for gaps/Delta_NH."""
    return density_to_bloch(evolve_density(p, rho0, time_to_settle(p, gaps)))
