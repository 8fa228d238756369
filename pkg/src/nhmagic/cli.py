"""Command-line entry point.

Subcommands: spectrum, evolve, trajectories, sweep, verify.  Each run takes
a JSON config (``--config``), with ``--out``, ``--seed`` and ``--threads``
overriding config fields.  Every output file gets a JSON metadata sidecar
recording parameters, units, seed, package version and timestamp; CSV values
are written with 17 significant digits so they round-trip exactly.

Exit codes: 0 success, 2 config error, 3 numerical failure, 4 acceptance
failure.
"""

from __future__ import annotations

import argparse
import datetime
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__, antidephasing, dissipative
from .antidephasing import (
    DegenerateSteadyStateError,
    SDQParams,
    SpectrumMismatchError,
    evolve_average,
    liouvillian_spectrum,
)
from .dissipative import COMPLEX_HOPPING, DQParams, NoAttractorError, REAL_HOPPING
from .magic import m2_tilde_bloch
from .sde import StepDivergedError, simulate_ensemble
from .states import PureState2, bloch_to_density, density_to_bloch, purity
from .sweep import (
    AxisSpec,
    GridSpec,
    gap_diagram,
    gap_weighted_diagram,
    locate_maximum,
    steady_diagram,
    trajectory_diagram,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_ACCEPTANCE = 4

_NAMED_STATES = {
    "f": [1.0, 0.0],
    "e": [0.0, 1.0],
    "plus": [1.0 / np.sqrt(2.0), 1.0 / np.sqrt(2.0)],
    "minus": [1.0 / np.sqrt(2.0), -1.0 / np.sqrt(2.0)],
}


class ConfigError(ValueError):
    """Invalid or missing configuration field."""


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if np.isnan(x):
        return ""
    return format(float(x), ".17g")


def write_csv(path: Path, header: list[str], rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n")


def write_metadata(path: Path, command: str, params: dict, extra: dict | None = None) -> None:
    doc = {
        "command": command,
        "parameters": params,
        "units": "all rates in units of the hopping J; times in 1/J",
        "version": __version__,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }
    if extra:
        doc.update(extra)
    path.write_text(json.dumps(doc, indent=2, default=_json_default) + "\n")


def _json_default(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj)!r}")


def _require(cfg: dict, field: str):
    if field not in cfg:
        raise ConfigError(f"missing required config field '{field}'")
    return cfg[field]


def _get_float(cfg: dict, field: str, default=None) -> float:
    if field not in cfg:
        if default is None:
            raise ConfigError(f"missing required config field '{field}'")
        return float(default)
    try:
        return float(cfg[field])
    except (TypeError, ValueError):
        raise ConfigError(f"config field '{field}' must be a number, got {cfg[field]!r}")


def _hopping_kwargs(cfg: dict) -> dict:
    if "jx" in cfg or "jy" in cfg:
        return {"jx": _get_float(cfg, "jx", 1.0), "jy": _get_float(cfg, "jy", 0.0)}
    hop = cfg.get("hopping", "real")
    if hop not in ("real", "complex"):
        raise ConfigError(f"config field 'hopping' must be 'real' or 'complex', got {hop!r}")
    return dict(REAL_HOPPING if hop == "real" else COMPLEX_HOPPING)


def _parse_psi0(value) -> PureState2:
    if isinstance(value, str):
        if value not in _NAMED_STATES:
            raise ConfigError(
                f"config field 'psi0' names an unknown state {value!r}; "
                f"use one of {sorted(_NAMED_STATES)} or [[re,im],[re,im]]"
            )
        return PureState2.from_array(_NAMED_STATES[value])
    try:
        amps = [complex(c[0], c[1]) for c in value]
        return PureState2.from_array(amps)
    except (TypeError, IndexError):
        raise ConfigError("config field 'psi0' must be a state name or [[re,im],[re,im]]")


def _time_grid(cfg: dict) -> np.ndarray:
    t_max = _get_float(cfg, "t_max")
    n_times = int(cfg.get("n_times", 200))
    if t_max <= 0 or n_times < 1:
        raise ConfigError("config fields 't_max' must be > 0 and 'n_times' >= 1")
    return np.linspace(0.0, t_max, n_times + 1)


# ---------------------------------------------------------------- commands


def cmd_spectrum(cfg: dict, out: Path) -> None:
    """One-point spectral report: NH eigensystem and, at zero detuning,
    the averaged-generator spectrum, gap, steady state and magic."""
    G = _get_float(cfg, "Gamma")
    delta = _get_float(cfg, "delta", 0.0)
    g = _get_float(cfg, "gamma", 0.0)
    p = DQParams(**_hopping_kwargs(cfg), delta=delta, gamma_decay=G)
    spec = dissipative.nh_spectrum(p)
    doc: dict = {
        "eps_plus": [spec.eps_plus.real, spec.eps_plus.imag],
        "eps_minus": [spec.eps_minus.real, spec.eps_minus.imag],
        "nh_gap": spec.nh_gap,
        "exceptional": spec.is_exceptional,
    }
    if delta == 0.0:
        hop = "real" if p.jy == 0.0 else "complex"
        sp = SDQParams(hop, G, g)
        ana = liouvillian_spectrum(sp)
        doc["lambdas"] = [[l.real, l.imag] for l in ana.lambdas]
        doc["gap"] = ana.gap
        doc["degenerate"] = ana.degenerate
        if not ana.degenerate:
            doc["steady_bloch"] = list(ana.steady_bloch.as_array())
            doc["steady_sre"] = antidephasing.steady_sre(sp)
    out.mkdir(parents=True, exist_ok=True)
    (out / "spectrum.json").write_text(json.dumps(doc, indent=2, default=_json_default) + "\n")
    write_metadata(out / "spectrum.meta.json", "spectrum", cfg)
    print(f"wrote {out / 'spectrum.json'}")


def _evolve_one_case(cfg: dict, out: Path, label: str) -> None:
    mode = cfg.get("mode", "pure")
    t_grid = _time_grid(cfg)
    header = ["t", "x", "y", "z", "m2_tilde", "purity"]
    extra_meta: dict = {}
    if mode in ("pure", "density"):
        p = DQParams(
            **_hopping_kwargs(cfg),
            delta=_get_float(cfg, "delta", 0.0),
            gamma_decay=_get_float(cfg, "Gamma"),
        )
        if mode == "pure":
            psi0 = _parse_psi0(_require(cfg, "psi0"))
            header.append("success_rate")
            rows = []
            for t in t_grid:
                psi_t, sr = dissipative.evolve_pure(p, psi0, float(t))
                r = density_to_bloch(psi_t.density())
                rows.append([t, r.x, r.y, r.z, m2_tilde_bloch(r), 1.0, sr])
        else:
            rho0 = bloch_to_density(_require(cfg, "r0"))
            rows = []
            for t in t_grid:
                rho_t = dissipative.evolve_density(p, rho0, float(t))
                r = density_to_bloch(rho_t)
                rows.append([t, r.x, r.y, r.z, m2_tilde_bloch(r), purity(rho_t)])
    elif mode == "average":
        sp = SDQParams(
            cfg.get("hopping", "real"),
            _get_float(cfg, "Gamma"),
            _get_float(cfg, "gamma", 0.0),
        )
        path = evolve_average(sp, np.asarray(_require(cfg, "r0"), dtype=float), t_grid)
        rows = []
        for t, r in zip(t_grid, path):
            rho = bloch_to_density(r)
            rows.append([t, r[0], r[1], r[2], m2_tilde_bloch(r), purity(rho)])
    elif mode == "analytic":
        p = DQParams(**_hopping_kwargs(cfg), gamma_decay=_get_float(cfg, "Gamma"))
        r0 = np.asarray(_require(cfg, "r0"), dtype=float)
        rho0 = bloch_to_density(r0)
        header.append("m2_analytic")
        rows = []
        worst = 0.0
        for t in t_grid:
            rho_t = dissipative.evolve_density(p, rho0, float(t))
            r = density_to_bloch(rho_t)
            m2_num = m2_tilde_bloch(r)
            m2_ana = dissipative.m2_analytic_broken(p, r0, float(t))
            worst = max(worst, abs(m2_num - m2_ana))
            rows.append([t, r.x, r.y, r.z, m2_num, purity(rho_t), m2_ana])
        extra_meta["max_analytic_deviation"] = worst
    else:
        raise ConfigError(
            f"config field 'mode' must be pure, density, average or analytic, got {mode!r}"
        )
    write_csv(out / f"{label}.csv", header, rows)
    write_metadata(out / f"{label}.meta.json", "evolve", cfg, extra_meta)
    print(f"wrote {out / (label + '.csv')}")


def cmd_evolve(cfg: dict, out: Path) -> None:
    """Time evolution to CSV; a config may carry several labelled cases."""
    out.mkdir(parents=True, exist_ok=True)
    cases = cfg.get("cases")
    if cases is None:
        _evolve_one_case(cfg, out, cfg.get("label", "evolve"))
        return
    shared = {k: v for k, v in cfg.items() if k != "cases"}
    for i, case in enumerate(cases):
        merged = {**shared, **case}
        _evolve_one_case(merged, out, merged.get("label", f"case{i}"))


def cmd_trajectories(cfg: dict, out: Path, seed: int) -> None:
    """Stochastic ensemble: mean-path CSV, histogram CSV, optional long-format
    per-trajectory CSV, and a metadata sidecar with all derived seeds."""
    sp = SDQParams(
        cfg.get("hopping", "real"),
        _get_float(cfg, "Gamma"),
        _get_float(cfg, "gamma", 0.0),
    )
    n_t = int(cfg.get("N_t", 500))
    n_av = int(cfg.get("N_av", 1000))
    r0 = np.asarray(cfg.get("r0", [0.0, 0.0, 0.0]), dtype=float)
    if "T" in cfg:
        T = _get_float(cfg, "T")
    else:
        gaps = _get_float(cfg, "horizon_gaps", 5.0)
        T = gaps / antidephasing.dissipative_gap(sp)
    ens = simulate_ensemble(sp, r0, T, n_t, n_av, seed)

    out.mkdir(parents=True, exist_ok=True)
    wmean = ens.weighted_mean_path()
    rows = [
        [t, m[0], m[1], m[2], w[0], w[1], w[2], s_mean, mean_s]
        for t, m, w, s_mean, mean_s in zip(
            ens.t_grid, ens.mean_path, wmean, ens.sre_of_mean, ens.mean_of_sre
        )
    ]
    write_csv(
        out / "mean.csv",
        ["t", "x", "y", "z", "x_weighted", "y_weighted", "z_weighted",
         "sre_of_mean", "mean_of_sre"],
        rows,
    )

    snapshot_times = cfg.get("snapshot_times") or [0.1 * T, 0.3 * T, T]
    hist_rows = []
    for t_req in snapshot_times:
        counts, edges, t_snap = ens.histogram(float(t_req))
        for c, lo, hi in zip(counts, edges[:-1], edges[1:]):
            hist_rows.append([t_snap, lo, hi, c])
    write_csv(out / "histograms.csv", ["time", "bin_low", "bin_high", "count"], hist_rows)

    if cfg.get("per_trajectory"):
        stride = max(1, int(cfg.get("trajectory_stride", 1)))
        traj_rows = []
        for i in range(0, n_av, stride):
            for t, r in zip(ens.t_grid, ens.trajectories[i]):
                traj_rows.append([i, t, r[0], r[1], r[2]])
        write_csv(out / "trajectories.csv", ["trajectory", "t", "x", "y", "z"], traj_rows)

    write_metadata(
        out / "trajectories.meta.json",
        "trajectories",
        cfg,
        {
            "master_seed": seed,
            "trajectory_seeds": [int(s) for s in ens.trajectory_seeds],
            "T": T,
            "snapshot_times": [float(t) for t in snapshot_times],
        },
    )
    print(f"wrote {out / 'mean.csv'} ({n_av} trajectories, {n_t} steps)")


def cmd_sweep(cfg: dict, out: Path, seed: int, threads: int) -> None:
    """Phase diagram to matrix CSV + axes CSV + metadata with the maximum."""
    def axis(field: str, default: AxisSpec) -> AxisSpec:
        block = cfg.get(field)
        if block is None:
            return default
        return AxisSpec(
            _get_float(block, "lo"), _get_float(block, "hi"),
            int(block.get("n", 60)), block.get("scale", "linear"),
        )

    default = GridSpec.default(cfg.get("hopping", "real"))
    grid = GridSpec(
        gamma_axis=axis("gamma_axis", default.gamma_axis),
        Gamma_axis=axis("Gamma_axis", default.Gamma_axis),
        hopping=cfg.get("hopping", "real"),
    )
    quantity = cfg.get("quantity", "steady")
    extra: dict = {}
    if quantity == "steady":
        diagram = steady_diagram(grid, threads)
        extra["maximum"] = dict(zip(("gamma", "Gamma", "value"), locate_maximum(grid, "steady")))
    elif quantity == "gap":
        diagram = gap_diagram(grid, threads)
    elif quantity == "gap_weighted":
        diagram = gap_weighted_diagram(grid, threads)
        extra["maximum"] = dict(
            zip(("gamma", "Gamma", "value"), locate_maximum(grid, "gap_weighted"))
        )
    elif quantity == "trajectory":
        diagram = trajectory_diagram(
            grid,
            _get_float(cfg, "horizon_gaps", 5.0),
            int(cfg.get("N_t", 600)),
            int(cfg.get("N_av", 100)),
            seed,
            threads,
        )
    else:
        raise ConfigError(
            f"config field 'quantity' must be steady, gap, gap_weighted or "
            f"trajectory, got {quantity!r}"
        )

    out.mkdir(parents=True, exist_ok=True)
    gammas = diagram.gamma_values
    Gammas = diagram.Gamma_values
    write_csv(out / "matrix.csv", [f"g{j}" for j in range(len(gammas))], diagram.values)
    axes_rows = [["gamma", j, v] for j, v in enumerate(gammas)]
    axes_rows += [["Gamma", i, v] for i, v in enumerate(Gammas)]
    write_csv(out / "axes.csv", ["axis", "index", "value"], axes_rows)
    if "highlight_mask" in diagram.metadata:
        write_csv(
            out / "mask.csv",
            [f"g{j}" for j in range(len(gammas))],
            diagram.metadata["highlight_mask"].astype(float),
        )
    meta = {k: v for k, v in diagram.metadata.items() if k != "highlight_mask"}
    write_metadata(
        out / "sweep.meta.json", "sweep", cfg,
        {"quantity": diagram.quantity, "seed": seed, **meta, **extra},
    )
    print(f"wrote {out / 'matrix.csv'} ({len(Gammas)}x{len(gammas)} nodes)")


def cmd_verify(quick: bool) -> int:
    from .verify import run_suite

    results = run_suite(quick=quick)
    all_passed = True
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        print(f"{r.name:4s} {mark}  [{r.seconds:6.2f} s]  {r.detail}")
        all_passed = all_passed and r.passed
    print(f"{sum(r.passed for r in results)}/{len(results)} criteria passed")
    return EXIT_OK if all_passed else EXIT_ACCEPTANCE


# ---------------------------------------------------------------- entry


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nhmagic",
        description="Magic-state production in a (stochastic) dissipative qubit",
    )
    parser.add_argument("command", choices=["spectrum", "evolve", "trajectories", "sweep", "verify"])
    parser.add_argument("--config", type=Path, help="JSON run configuration")
    parser.add_argument("--out", type=Path, help="output directory (default: .)")
    parser.add_argument("--seed", type=int, help="master seed for stochastic runs")
    parser.add_argument("--threads", type=int, help="worker threads for sweeps (0 = serial)")
    parser.add_argument("--quick", action="store_true", help="verify: analytic subset only")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg: dict = {}
        if args.config is not None:
            try:
                cfg = json.loads(args.config.read_text())
            except FileNotFoundError:
                raise ConfigError(f"config file not found: {args.config}")
            except json.JSONDecodeError as err:
                raise ConfigError(f"config file is not valid JSON: {err}")
            if not isinstance(cfg, dict):
                raise ConfigError("config root must be a JSON object")
        out = args.out or Path(cfg.get("out", "."))
        seed = args.seed if args.seed is not None else int(cfg.get("seed", 0))
        threads = args.threads if args.threads is not None else int(cfg.get("threads", 0))

        if args.command == "verify":
            return cmd_verify(args.quick)
        if args.command == "spectrum":
            cmd_spectrum(cfg, out)
        elif args.command == "evolve":
            cmd_evolve(cfg, out)
        elif args.command == "trajectories":
            cmd_trajectories(cfg, out, seed)
        elif args.command == "sweep":
            cmd_sweep(cfg, out, seed, threads)
        return EXIT_OK
    except (ConfigError,) as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError,) as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except (
        StepDivergedError,
        SpectrumMismatchError,
        DegenerateSteadyStateError,
        NoAttractorError,
        FloatingPointError,
    ) as err:
        print(f"numerical failure: {err}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
