"""Phase diagrams and extremum location over (gamma J, Gamma/J).

Diagrams are matrices indexed [Gamma, gamma] with NaN marking nodes where
the steady state is undefined (degenerate dominant eigenvalue); they must
complete rather than fail.  Stochastic diagrams derive one seed per node so
the result is independent of evaluation order and worker count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .antidephasing import (
    DegenerateSteadyStateError,
    SDQParams,
    liouvillian_spectrum,
    steady_sre,
)
from .sde import StepDivergedError, derive_seed, simulate_ensemble, _m2_tilde_array

GAP_HIGHLIGHT_LEVEL = 1.2  # magic-per-unit-time highlight threshold


@dataclass(frozen=True)
class AxisSpec:
    lo: float
    hi: float
    n: int
    scale: str = "linear"  # or "log"

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("axis needs n >= 2")
        if self.scale not in ("linear", "log"):
            raise ValueError(f"unknown axis scale {self.scale!r}")
        if self.scale == "log" and (self.lo <= 0 or self.hi <= 0):
            raise ValueError("log axis requires positive bounds")

    def values(self) -> np.ndarray:
        if self.scale == "log":
            return np.geomspace(self.lo, self.hi, self.n)
        return np.linspace(self.lo, self.hi, self.n)


@dataclass(frozen=True)
class GridSpec:
    """Sweep grid: noise strength (gamma J) x decay rate (Gamma/J)."""

    gamma_axis: AxisSpec
    Gamma_axis: AxisSpec
    hopping: str = "real"

    @classmethod
    def default(cls, hopping: str = "real") -> "GridSpec":
        # mirrors the figure ranges: gamma J in [0, 0.3], Gamma/J in (0, 8]
        return cls(
            gamma_axis=AxisSpec(0.0, 0.3, 60),
            Gamma_axis=AxisSpec(8.0 / 60.0, 8.0, 60),
            hopping=hopping,
        )


@dataclass
class PhaseDiagram:
    grid: GridSpec
    values: np.ndarray  # shape (n_Gamma, n_gamma), NaN = undefined
    quantity: str
    metadata: dict = field(default_factory=dict)

    @property
    def gamma_values(self) -> np.ndarray:
        return self.grid.gamma_axis.values()

    @property
    def Gamma_values(self) -> np.ndarray:
        return self.grid.Gamma_axis.values()


def _node_map(g: GridSpec, fn, threads: int = 0) -> np.ndarray:
    gammas = g.gamma_axis.values()
    Gammas = g.Gamma_axis.values()
    out = np.full((len(Gammas), len(gammas)), np.nan)

    def run_row(i):
        for j, gam in enumerate(gammas):
            out[i, j] = fn(gam, Gammas[i])

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            list(ex.map(run_row, range(len(Gammas))))
    else:
        for i in range(len(Gammas)):
            run_row(i)
    return out


def _steady_value(hopping: str, gamma: float, Gamma: float) -> float:
    try:
        return steady_sre(SDQParams(hopping, Gamma, gamma))
    except (DegenerateSteadyStateError, ValueError):
        return float("nan")


def steady_diagram(g: GridSpec, threads: int = 0) -> PhaseDiagram:
    """Analytic steady-state magic on every grid node."""
    values = _node_map(g, lambda gam, G: _steady_value(g.hopping, gam, G), threads)
    return PhaseDiagram(g, values, "steady_sre", {"hopping": g.hopping})


def gap_diagram(g: GridSpec, threads: int = 0) -> PhaseDiagram:
    def fn(gam, G):
        return liouvillian_spectrum(SDQParams(g.hopping, G, gam), check_numeric=False).gap

    return PhaseDiagram(g, _node_map(g, fn, threads), "gap", {"hopping": g.hopping})


def gap_weighted_diagram(g: GridSpec, threads: int = 0) -> PhaseDiagram:
    """Magic per unit time: steady magic times the dissipative gap.

    Metadata carries the mask of nodes at or above the highlight level 1.2.
    """

    def fn(gam, G):
        p = SDQParams(g.hopping, G, gam)
        ana = liouvillian_spectrum(p, check_numeric=False)
        if ana.degenerate:
            return 0.0  # gap vanishes at the degeneracy
        return steady_sre(p) * ana.gap

    values = _node_map(g, fn, threads)
    mask = values >= GAP_HIGHLIGHT_LEVEL
    return PhaseDiagram(
        g,
        values,
        "steady_sre_times_gap",
        {"hopping": g.hopping, "highlight_level": GAP_HIGHLIGHT_LEVEL,
         "highlight_mask": mask},
    )


def trajectory_diagram(
    g: GridSpec,
    horizon_gaps: float,
    n_steps: int,
    n_trajectories: int,
    seed: int,
    threads: int = 0,
) -> PhaseDiagram:
    """Finite-time magic of the ensemble-mean state at t = horizon_gaps/Delta.

    Starts every node from the maximally mixed state; node (i, j) uses a
    seed derived from (seed, i, j), so worker count does not matter.
    Aborted nodes become NaN with a logged reason in the metadata.
    """
    if horizon_gaps <= 0:
        raise ValueError("horizon_gaps must be > 0")
    gammas = g.gamma_axis.values()
    failures: dict = {}

    def fn(gam, G):
        p = SDQParams(g.hopping, G, gam)
        i = int(np.argmin(np.abs(g.Gamma_axis.values() - G)))
        j = int(np.argmin(np.abs(gammas - gam)))
        node_seed = derive_seed(seed, i * len(gammas) + j)
        try:
            ana = liouvillian_spectrum(p, check_numeric=False)
            if ana.degenerate or ana.gap <= 0:
                return float("nan")
            ens = simulate_ensemble(
                p, np.zeros(3), horizon_gaps / ana.gap, n_steps, n_trajectories,
                node_seed,
            )
            return float(ens.sre_of_mean[-1])
        except (StepDivergedError, FloatingPointError) as err:
            failures[(i, j)] = str(err)
            return float("nan")

    values = _node_map(g, fn, threads)
    return PhaseDiagram(
        g,
        values,
        "trajectory_sre",
        {
            "hopping": g.hopping,
            "horizon_gaps": horizon_gaps,
            "n_steps": n_steps,
            "n_trajectories": n_trajectories,
            "seed": seed,
            "failures": {f"{i},{j}": msg for (i, j), msg in failures.items()},
        },
    )


def locate_maximum(g: GridSpec, quantity: str = "steady") -> tuple[float, float, float]:
    """Grid argmax of the steady or gap-weighted magic, with local refinement.

    Two rounds of 10x zoomed sub-grids around the incumbent; deterministic.
    Ties resolve to the lexicographically lowest (gamma, Gamma) node.
    """
    if quantity == "steady":
        node = lambda gam, G: _steady_value(g.hopping, gam, G)
    elif quantity == "gap_weighted":
        def node(gam, G):
            p = SDQParams(g.hopping, G, gam)
            ana = liouvillian_spectrum(p, check_numeric=False)
            if ana.degenerate:
                return 0.0
            return steady_sre(p) * ana.gap
    else:
        raise ValueError(f"unknown quantity {quantity!r}")

    def argmax_on(gammas, Gammas):
        best = (-np.inf, np.inf, np.inf)  # (value, gamma, Gamma) with tie rule
        for gam in gammas:
            for G in Gammas:
                v = node(gam, G)
                if np.isnan(v):
                    continue
                if v > best[0] + 1e-15 or (
                    abs(v - best[0]) <= 1e-15 and (gam, G) < (best[1], best[2])
                ):
                    best = (v, gam, G)
        return best

    gammas = g.gamma_axis.values()
    Gammas = g.Gamma_axis.values()
    value, gam_best, G_best = argmax_on(gammas, Gammas)
    dgam = (gammas[-1] - gammas[0]) / (len(gammas) - 1)
    dG = (Gammas[-1] - Gammas[0]) / (len(Gammas) - 1)

    for _ in range(2):
        lo_g = max(g.gamma_axis.lo, gam_best - dgam)
        hi_g = min(g.gamma_axis.hi, gam_best + dgam)
        lo_G = max(g.Gamma_axis.lo, G_best - dG)
        hi_G = min(g.Gamma_axis.hi, G_best + dG)
        sub_g = np.linspace(lo_g, hi_g, 21)
        sub_G = np.linspace(lo_G, hi_G, 21)
        value, gam_best, G_best = argmax_on(sub_g, sub_G)
        dgam /= 10.0
        dG /= 10.0

    return float(gam_best), float(G_best), float(value)
