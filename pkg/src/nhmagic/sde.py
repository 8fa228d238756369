"""Strong order-1.5 stochastic integration and trajectory ensembles.

The integrator is the explicit order 1.5 strong scheme of Kloeden and Platen
for a scalar-noise Ito SDE dY = a(Y) dt + b(Y) dW.  Each step consumes a
correlated pair of increments

    dW = U1 sqrt(dt),    dZ = dt^{3/2}/2 (U1 + U2/sqrt(3)),

with U1, U2 i.i.d. standard normal.  Trajectories are independent work
units: each draws its noise from its own PRNG stream, seeded from the
master seed and the trajectory index through the splitmix64 finalizer, so
ensembles are reproducible regardless of evaluation order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .antidephasing import SDQParams, bloch_drift
from .magic import M2_T

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

HISTOGRAM_BINS = 50
HISTOGRAM_RANGE = (0.0, float(M2_T))  # universal single-qubit magic range
NORM_ABORT_TOL = 1e-4


class StepDivergedError(RuntimeError):
    """The integrator produced a non-finite or unphysical state."""


def splitmix64(x: int) -> int:
    """splitmix64 finalizer; maps a 64-bit word to a well-mixed 64-bit word."""
    z = (x + _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def derive_seed(master_seed: int, index: int) -> int:
    """Per-stream seed: splitmix64 of the master seed advanced by index+1."""
    return splitmix64((master_seed + (index + 1) * _GOLDEN) & _MASK64)


@dataclass(frozen=True)
class SDESystem:
    """Ito SDE dY = a(Y) dt + b(Y) dW with one scalar Wiener process.

    Drift and diffusion must broadcast over leading axes of Y (shape (..., n)).
    """

    dimension: int
    drift: Callable[[np.ndarray], np.ndarray]
    diffusion: Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class NoiseIncrement:
    """One step's correlated pair (dW, dZ); scalars or arrays of equal shape."""

    dw: np.ndarray
    dz: np.ndarray

    @classmethod
    def draw(cls, rng: np.random.Generator, dt: float, size=None) -> "NoiseIncrement":
        u1 = rng.standard_normal(size)
        u2 = rng.standard_normal(size)
        dw = u1 * np.sqrt(dt)
        dz = 0.5 * dt**1.5 * (u1 + u2 / np.sqrt(3.0))
        return cls(dw=dw, dz=dz)


def kp15_step(sys: SDESystem, y, dt: float, noise: NoiseIncrement) -> np.ndarray:
    """One explicit order 1.5 strong step.

    Supporting values: Ups_pm = Y + a dt +- b sqrt(dt) and
    Phi_pm = Ups_+ +- b(Ups_+) sqrt(dt).
    """
    if dt <= 0:
        raise ValueError("dt must be > 0")
    y = np.asarray(y, dtype=float)
    dw = np.asarray(noise.dw)[..., None]
    dz = np.asarray(noise.dz)[..., None]
    sq = np.sqrt(dt)

    a = sys.drift(y)
    b = sys.diffusion(y)
    up = y + a * dt + b * sq
    um = y + a * dt - b * sq
    ap, am = sys.drift(up), sys.drift(um)
    bp, bm = sys.diffusion(up), sys.diffusion(um)
    php = up + bp * sq
    phm = up - bp * sq

    y1 = (
        y
        + b * dw
        + (ap - am) / (2.0 * sq) * dz
        + (ap + 2.0 * a + am) / 4.0 * dt
        + (bp - bm) / (4.0 * sq) * (dw**2 - dt)
        + (bp - 2.0 * b + bm) / (2.0 * dt) * (dw * dt - dz)
        + (sys.diffusion(php) - sys.diffusion(phm) - bp + bm)
        / (4.0 * dt)
        * (dw**2 / 3.0 - dt)
        * dw
    )
    if not np.all(np.isfinite(y1)):
        raise StepDivergedError("non-finite state after KP-1.5 step")
    return y1


def bloch_sde(p: SDQParams) -> SDESystem:
    """Single-trajectory Bloch SDE of the stochastic dissipative qubit.

    The trajectory state is the pathwise-normalized density matrix of the
    stochastic evolution.  Its Ito drift is the averaged ODE field plus the
    normalization correction -<M>(M[rho] - <M>rho), which in Bloch form is
    -2 gamma Gamma^2 (1 - z) (xz, yz, z^2 - 1); the correction vanishes with
    gamma, so the noiseless limit is the deterministic field.  The diffusion
    -sqrt(2 gamma) Gamma (xz, yz, z^2 - 1) vanishes at the poles and is
    tangent on the unit sphere, so the closed Bloch ball is invariant.
    """
    ode_field = bloch_drift(p)
    amp = -np.sqrt(2.0 * p.noise_strength) * p.gamma_decay

    def diffusion(r):
        r = np.asarray(r, dtype=float)
        x, y, z = r[..., 0], r[..., 1], r[..., 2]
        return amp * np.stack([x * z, y * z, z**2 - 1.0], axis=-1)

    def drift(r):
        r = np.asarray(r, dtype=float)
        # trace-noise coefficient <M> = -sqrt(2 gamma) Gamma (1 - z)
        m = amp * (1.0 - r[..., 2])
        return ode_field(r) - m[..., None] * diffusion(r)

    return SDESystem(dimension=3, drift=drift, diffusion=diffusion)


@dataclass
class TrajectoryEnsemble:
    """Ensemble of Bloch trajectories with derived magic statistics.

    ``mean_path`` is the plain average of the normalized trajectory states.
    ``weighted_mean_path`` reweights each trajectory by its surviving trace
    (the pathwise norm of the unnormalized state); by linearity this is the
    consistent estimator of the averaged-master-equation state, so it is the
    curve to compare against ``evolve_average``.  The two differ at O(gamma):
    averaging normalized states and normalizing the averaged state do not
    commute.
    """

    t_grid: np.ndarray  # (N_t + 1,)
    trajectories: np.ndarray  # (N_av, N_t + 1, 3)
    log_weights: np.ndarray  # (N_av, N_t + 1), log surviving trace per path
    master_seed: int
    trajectory_seeds: np.ndarray  # (N_av,), uint64
    params: SDQParams
    mean_path: np.ndarray = field(init=False)  # (N_t + 1, 3)
    sre_paths: np.ndarray = field(init=False)  # (N_av, N_t + 1)
    sre_of_mean: np.ndarray = field(init=False)  # (N_t + 1,)
    mean_of_sre: np.ndarray = field(init=False)  # (N_t + 1,)

    def __post_init__(self):
        self.mean_path = self.trajectories.mean(axis=0)
        self.sre_paths = _m2_tilde_array(self.trajectories)
        self.sre_of_mean = _m2_tilde_array(self.mean_path)
        self.mean_of_sre = self.sre_paths.mean(axis=0)

    def sem_path(self) -> np.ndarray:
        """Standard error of the ensemble mean, per time and component."""
        n = self.trajectories.shape[0]
        return self.trajectories.std(axis=0, ddof=1) / np.sqrt(n) if n > 1 else np.zeros_like(self.mean_path)

    def _normalized_weights(self) -> np.ndarray:
        lw = self.log_weights - self.log_weights.max(axis=0)
        w = np.exp(lw)
        return w / w.sum(axis=0)

    def weighted_mean_path(self) -> np.ndarray:
        """Trace-weighted mean path; estimates the averaged-equation state."""
        w = self._normalized_weights()
        return np.einsum("it,itc->tc", w, self.trajectories)

    def weighted_sem_path(self) -> np.ndarray:
        """Linearized standard error of the trace-weighted mean."""
        w = self._normalized_weights()
        centred = self.trajectories - self.weighted_mean_path()
        return np.sqrt(np.einsum("it,itc->tc", w**2, centred**2))

    def histogram(self, t: float) -> tuple[np.ndarray, np.ndarray, float]:
        """SRE histogram at the grid time closest to t.

        Returns (counts, bin_edges, snapshot_time); 50 uniform bins over the
        universal single-qubit range [0, log2(3/2)].
        """
        idx = int(np.argmin(np.abs(self.t_grid - t)))
        counts, edges = np.histogram(
            self.sre_paths[:, idx], bins=HISTOGRAM_BINS, range=HISTOGRAM_RANGE
        )
        return counts, edges, float(self.t_grid[idx])


def _m2_tilde_array(r: np.ndarray) -> np.ndarray:
    # vectorized corrected single-qubit measure over (..., 3) Bloch arrays
    s2 = np.sum(r**2, axis=-1)
    s4 = np.sum(r**4, axis=-1)
    return -np.log2((1.0 + s4) / (1.0 + s2))


def simulate_ensemble(
    p: SDQParams,
    r0,
    T: float,
    n_steps: int,
    n_trajectories: int,
    master_seed: int,
) -> TrajectoryEnsemble:
    """Integrate n_trajectories independent Bloch SDE paths from r0.

    All trajectories share the uniform grid dt = T / n_steps; trajectory i
    draws its normals from a PCG64 stream seeded by derive_seed(master_seed,
    i), so results do not depend on evaluation order.  A trajectory leaving
    the Bloch ball by more than NORM_ABORT_TOL aborts the whole run: that is
    an integration instability, not physics.
    """
    if T <= 0 or n_steps < 1 or n_trajectories < 1:
        raise ValueError("require T > 0, n_steps >= 1, n_trajectories >= 1")
    if hasattr(r0, "as_array"):
        r0 = r0.as_array()
    r0 = np.asarray(r0, dtype=float)
    dt = T / n_steps
    sys = bloch_sde(p)

    seeds = np.array(
        [derive_seed(master_seed, i) for i in range(n_trajectories)], dtype=np.uint64
    )
    # pre-draw every trajectory's normals from its own stream, then step the
    # whole ensemble at once (order-insensitive by construction)
    u = np.empty((n_trajectories, n_steps, 2))
    for i, s in enumerate(seeds):
        u[i] = np.random.Generator(np.random.PCG64(int(s))).standard_normal((n_steps, 2))
    dw_all = u[:, :, 0] * np.sqrt(dt)
    dz_all = 0.5 * dt**1.5 * (u[:, :, 0] + u[:, :, 1] / np.sqrt(3.0))

    paths = np.empty((n_trajectories, n_steps + 1, 3))
    paths[:, 0] = r0
    log_w = np.zeros((n_trajectories, n_steps + 1))
    y = np.broadcast_to(r0, (n_trajectories, 3)).copy()
    # log surviving trace: d(log T) = (ell - m^2/2) dt + m dW with
    # ell = -(1 - z) b/2 and m = -sqrt(2 gamma) Gamma (1 - z)
    amp = -np.sqrt(2.0 * p.noise_strength) * p.gamma_decay
    b_half = 0.5 * p.drift_constant
    for n in range(n_steps):
        one_mz = 1.0 - y[:, 2]
        m = amp * one_mz
        log_w[:, n + 1] = (
            log_w[:, n] + (-one_mz * b_half - 0.5 * m**2) * dt + m * dw_all[:, n]
        )
        y = kp15_step(sys, y, dt, NoiseIncrement(dw=dw_all[:, n], dz=dz_all[:, n]))
        norms2 = np.sum(y**2, axis=-1)
        if np.any(norms2 > (1.0 + NORM_ABORT_TOL) ** 2):
            bad = int(np.argmax(norms2))
            raise StepDivergedError(
                f"trajectory {bad} left the Bloch ball (||r|| = "
                f"{np.sqrt(norms2[bad]):.6f}) at step {n + 1}"
            )
        paths[:, n + 1] = y

    t_grid = np.linspace(0.0, T, n_steps + 1)
    return TrajectoryEnsemble(
        t_grid=t_grid,
        trajectories=paths,
        log_weights=log_w,
        master_seed=int(master_seed),
        trajectory_seeds=seeds,
        params=p,
    )
