"""Noise-averaged dynamics of the stochastic dissipative qubit.

Averaging the no-jump evolution with Gaussian noise of strength gamma in the
decay rate yields a non-trace-preserving generator ("antidephasing
Liouvillian").  In the vectorized basis (rho_ff, rho_fe, rho_ef, rho_ee) and
units of J it is a 4x4 matrix built from the two constants

    A = Gamma (gamma Gamma - 1),     B = 2 Gamma (2 gamma Gamma - 1).

One eigenvalue is A exactly (a decoupled coherence mode); the other three are
the roots of lam^3 - (A+B) lam^2 + (4+AB) lam - 2B, shared by the real- and
complex-hopping cases.  The eigenvalue lam0 with the largest real part fixes
the steady state and the dissipative gap Delta = min_{k>0} Re(lam0 - lam_k).

The normalized average state follows the nonlinear Bloch ODE system with
drift constant b = 2 Gamma (1 - 2 gamma Gamma) = -B (the generator above acts
before renormalization, hence the sign flip).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .magic import m2_tilde_bloch
from .states import BlochVector

DEGENERACY_TOL = 1e-9
_OMEGA = np.exp(2j * np.pi / 3.0)


class DegenerateSteadyStateError(RuntimeError):
    """The dominant Liouvillian eigenvalue is not unique."""


class SpectrumMismatchError(RuntimeError):
    """Analytic cubic roots disagree with the numeric eigensolve."""


@dataclass(frozen=True)
class SDQParams:
    """Stochastic dissipative qubit: decay Gamma, noise strength gamma, and
    one of the two hopping cases ('real': Ups = J, 'complex':
    Ups = (1-i)J/sqrt(2))."""

    hopping: str
    gamma_decay: float  # Gamma, units of J
    noise_strength: float = 0.0  # gamma, units of 1/J

    def __post_init__(self):
        if self.hopping not in ("real", "complex"):
            raise ValueError(f"hopping must be 'real' or 'complex', got {self.hopping!r}")
        if self.gamma_decay < 0 or self.noise_strength < 0:
            raise ValueError("Gamma and gamma must be >= 0")

    @property
    def jx(self) -> float:
        return 1.0 if self.hopping == "real" else 1.0 / np.sqrt(2.0)

    @property
    def jy(self) -> float:
        return 0.0 if self.hopping == "real" else 1.0 / np.sqrt(2.0)

    @property
    def liouville_A(self) -> float:
        G, g = self.gamma_decay, self.noise_strength
        return G * (g * G - 1.0)

    @property
    def liouville_B(self) -> float:
        G, g = self.gamma_decay, self.noise_strength
        return 2.0 * G * (2.0 * g * G - 1.0)

    @property
    def drift_constant(self) -> float:
        """b = 2 Gamma (1 - 2 gamma Gamma), the Bloch-ODE drift constant."""
        return -self.liouville_B


@dataclass(frozen=True)
class LiouvillianAnalysis:
    lambdas: tuple  # (lam0, lam1, lam2, lam3); lam3 = A exactly
    gap: float
    steady_bloch: BlochVector | None
    liouville_A: float
    liouville_B: float
    degenerate: bool

    @property
    def lambda0(self) -> complex:
        return self.lambdas[0]


def build_liouvillian(p: SDQParams) -> np.ndarray:
    """4x4 antidephasing generator in the basis (rho_ff, rho_fe, rho_ef, rho_ee).

    Built by applying the superoperator
        L[.] = -i [H0, .] - {L, .} + gamma {L, {L, .}},   L = Gamma |e><e|,
    to the four matrix units, so the entries are derived, not transcribed.
    """
    from .states import PROJ_E, SIGMA_X, SIGMA_Y

    H0 = p.jx * SIGMA_X + p.jy * SIGMA_Y
    L = p.gamma_decay * PROJ_E
    g = p.noise_strength

    def superop(rho):
        anti = L @ rho + rho @ L
        return -1j * (H0 @ rho - rho @ H0) - anti + g * (L @ anti + anti @ L)

    # column k is the image of the k-th matrix unit, vectorized row-major
    M = np.zeros((4, 4), dtype=complex)
    for k in range(4):
        unit = np.zeros((2, 2), dtype=complex)
        unit[divmod(k, 2)] = 1.0
        M[:, k] = superop(unit).reshape(4)
    return M


def _cardano_cubic(b: float, c: float, d: float) -> np.ndarray:
    """Roots of lam^3 + b lam^2 + c lam + d via Cardano's method."""
    p = c - b**2 / 3.0
    q = 2.0 * b**3 / 27.0 - b * c / 3.0 + d
    if p == 0.0 and q == 0.0:
        return np.full(3, -b / 3.0, dtype=complex)
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
    s = np.sqrt(disc + 0j)
    u = (-q / 2.0 + s) ** (1.0 / 3.0)
    if abs(u) < 1e-14 * max(abs(p), abs(q), 1.0):
        u = (-q / 2.0 - s) ** (1.0 / 3.0)
    ws = u * _OMEGA ** np.arange(3)
    roots = ws - p / (3.0 * ws) - b / 3.0
    # polish with one Newton step to suppress branch-rounding noise
    for _ in range(2):
        f = roots**3 + b * roots**2 + c * roots + d
        df = 3.0 * roots**2 + 2.0 * b * roots + c
        ok = np.abs(df) > 0
        roots[ok] = roots[ok] - f[ok] / df[ok]
    return roots


def cubic_roots(p: SDQParams) -> np.ndarray:
    """Roots of the shared characteristic cubic, sorted by descending Re."""
    A, B = p.liouville_A, p.liouville_B
    roots = _cardano_cubic(-(A + B), 4.0 + A * B, -2.0 * B)
    order = np.lexsort((-roots.imag, -roots.real))
    return roots[order]


def _steady_bloch_from_lambda0(p: SDQParams, lam0: float) -> BlochVector:
    A, B = p.liouville_A, p.liouville_B
    if p.hopping == "real":
        den = 4.0 + lam0 * (lam0 - A)
        y = 2.0 * lam0 / den
        z = -lam0 * (lam0 - A) / den
        return BlochVector(0.0, float(y), float(z))
    w = (B - 2.0 * lam0) / (B * (lam0 - A))
    x = np.sqrt(2.0) * w
    z = (B - 2.0 * lam0) / B
    return BlochVector(float(x), float(-x), float(z))


def liouvillian_spectrum(p: SDQParams, check_numeric: bool = True) -> LiouvillianAnalysis:
    """Analytic spectrum, dissipative gap and steady state.

    The three cubic roots come from Cardano's method; each is checked against
    the characteristic quartic, and (optionally) the full analytic spectrum
    is checked against a numeric eigensolve of the built 4x4 matrix.
    A degenerate dominant eigenvalue is flagged, with gap = 0 and no steady
    Bloch vector.
    """
    A, B = p.liouville_A, p.liouville_B
    roots = cubic_roots(p)
    scale = max(1.0, abs(A), abs(B), float(np.abs(roots).max()))

    # residual of the quartic (A - lam) * cubic(lam) on each root
    quart = np.abs(
        (A - roots)
        * (roots**3 - (A + B) * roots**2 + (4.0 + A * B) * roots - 2.0 * B)
    )
    if quart.max() > 1e-9 * scale**4:
        raise SpectrumMismatchError(
            f"cubic root residual {quart.max():.3g} exceeds tolerance"
        )

    lambdas = np.concatenate([roots, [complex(A)]])
    if check_numeric:
        # defective (Jordan) points limit the numeric eigensolve to ~eps^(1/4)
        # accuracy, so this guard is loose; tight agreement away from the
        # degeneracies is asserted by the acceptance suite
        numeric = np.linalg.eigvals(build_liouvillian(p))
        dist = np.abs(numeric[:, None] - lambdas[None, :]).min(axis=1).max()
        if dist > 1e-4 * scale:
            raise SpectrumMismatchError(
                f"analytic spectrum disagrees with the numeric eigensolve by {dist:.3g}"
            )

    lam0 = roots[0]  # largest real part is always attained by a cubic root
    others = np.concatenate([roots[1:], [complex(A)]])
    gap = float(np.min(lam0.real - others.real))
    degenerate = gap < DEGENERACY_TOL * scale
    if degenerate:
        gap = 0.0
        steady = None
    else:
        steady = _steady_bloch_from_lambda0(p, lam0.real)
    return LiouvillianAnalysis(
        lambdas=tuple(np.concatenate([roots, [complex(A)]])),
        gap=gap,
        steady_bloch=steady,
        liouville_A=A,
        liouville_B=B,
        degenerate=degenerate,
    )


def dissipative_gap(p: SDQParams) -> float:
    return liouvillian_spectrum(p, check_numeric=False).gap


def steady_state(p: SDQParams) -> BlochVector:
    """Bloch vector of the trace-normalized dominant eigenvector."""
    ana = liouvillian_spectrum(p, check_numeric=False)
    if ana.degenerate:
        raise DegenerateSteadyStateError(
            f"dominant eigenvalue is degenerate at Gamma = {p.gamma_decay}, "
            f"gamma = {p.noise_strength}"
        )
    return ana.steady_bloch


def steady_sre(p: SDQParams) -> float:
    """Steady-state magic from the lam0 closed forms.

    Real hopping uses the (lam0, A) expression, complex hopping the
    (lam0, A, B) expression; both reduce to the corrected Bloch measure of
    the steady state (the printed forms carry a global sign typo, fixed
    here so the H/T-state optima come out positive).
    """
    ana = liouvillian_spectrum(p, check_numeric=False)
    if ana.degenerate:
        raise DegenerateSteadyStateError("dominant eigenvalue is degenerate")
    lam0 = ana.lambdas[0].real
    A, B = ana.liouville_A, ana.liouville_B
    if p.hopping == "real":
        den = 4.0 + lam0 * (lam0 - A)
        num4 = lam0**4 * ((lam0 - A) ** 4 + 2.0**4) / den**4
        num2 = lam0**2 * ((lam0 - A) ** 2 + 4.0) / den**2
    else:
        w = (B - 2.0 * lam0) / B
        num4 = w**4 * (1.0 + 8.0 / (lam0 - A) ** 4)
        num2 = w**2 * (1.0 + 4.0 / (lam0 - A) ** 2)
    return float(-np.log2((1.0 + num4) / (1.0 + num2)))


def bloch_drift(p: SDQParams):
    """Drift field of the averaged Bloch dynamics.

    Single trajectories carry an extra normalization drift on top of this
    field; see the sde module.  Vectorized over leading axes: accepts arrays
    of shape (..., 3).
    """
    jx, jy = p.jx, p.jy
    G, g = p.gamma_decay, p.noise_strength
    half_b = 0.5 * p.drift_constant
    gG2 = g * G**2

    def drift(r):
        r = np.asarray(r, dtype=float)
        x, y, z = r[..., 0], r[..., 1], r[..., 2]
        dx = 2.0 * jy * z - (gG2 + z * half_b) * x
        dy = -2.0 * jx * z - (gG2 + z * half_b) * y
        dz = 2.0 * (jx * y - jy * x) - half_b * (z**2 - 1.0)
        return np.stack([dx, dy, dz], axis=-1)

    return drift


def evolve_average(p: SDQParams, r0, t_grid) -> np.ndarray:
    """Integrate the averaged Bloch ODEs on t_grid with classic RK4.

    Substeps are capped at min(0.01, 0.1/max(Gamma, 1)) in units of 1/J.
    Returns an array of shape (len(t_grid), 3).
    """
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid[0] != 0.0 or np.any(np.diff(t_grid) <= 0):
        raise ValueError("t_grid must start at 0 and be strictly increasing")
    if isinstance(r0, BlochVector):
        r0 = r0.as_array()
    r = np.asarray(r0, dtype=float).copy()
    drift = bloch_drift(p)
    h_max = min(0.01, 0.1 / max(p.gamma_decay, 1.0))
    out = np.empty((len(t_grid), 3))
    out[0] = r
    for i in range(1, len(t_grid)):
        span = t_grid[i] - t_grid[i - 1]
        n_sub = max(1, int(np.ceil(span / h_max)))
        h = span / n_sub
        if h < 1e-15:
            raise FloatingPointError("RK4 step size underflow")
        for _ in range(n_sub):
            k1 = drift(r)
            k2 = drift(r + 0.5 * h * k1)
            k3 = drift(r + 0.5 * h * k2)
            k4 = drift(r + h * k3)
            r = r + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        if np.dot(r, r) > 1.0 + 1e-6:
            raise FloatingPointError(
                f"Bloch norm violation ||r|| = {np.linalg.norm(r):.8f} at "
                f"t = {t_grid[i]:.6g}: integration instability"
            )
        out[i] = r
    return out


def steady_sre_value(hopping: str, gamma_decay: float, noise_strength: float) -> float:
    """steady_sre on raw coordinates, NaN where the steady state is undefined."""
    try:
        return steady_sre(SDQParams(hopping, gamma_decay, noise_strength))
    except (DegenerateSteadyStateError, ValueError):
        return float("nan")
