"""Experiment harness: tradeoff sweeps and beampattern sampling.

Subcommands::

    crbeam sweep --config cfg.json --schemes FDB-WCRB,APA --rho-grid 21 \
        --out results/ [--phase-averages N] [--seed S]
    crbeam beampattern --config cfg.json --scheme FDB-WCRB --rho 1.0 \
        --step-deg 1 --out results/

Each run writes CSV artifacts plus a JSON manifest describing every row.
Exit codes: 0 full success, 2 partial solver failures, 1 configuration
errors.  Environment overrides: ``CRBEAM_SOLVER_TOL`` (requested relative
gap) and ``CRBEAM_WORKERS`` (sweep worker pool size).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__, optimize
from .conic import DEFAULT_TOL
from .errors import ConfigurationError, CrbeamError
from .fim import FimWorkspace
from .scenario import Scenario, load_config, scenario_to_dict

SWEEP_CSV_HEADER = "scheme,rho,crb_bp_sqrt_m,crb_ms_sqrt_m,solve_time_s,status"
PATTERN_CSV_HEADER = "angle_deg,power_db"
PATTERN_FLOOR_DB = -300.0


def _fmt(value: float | None) -> str:
    return "" if value is None else f"{value:.17e}"


def _solver_tol() -> float:
    raw = os.environ.get("CRBEAM_SOLVER_TOL", "")
    if not raw:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError as exc:
        raise ConfigurationError(f"CRBEAM_SOLVER_TOL={raw!r} is not a float") from exc
    if not 0 < tol < 1:
        raise ConfigurationError("CRBEAM_SOLVER_TOL must lie in (0, 1)")
    return tol


def _workers() -> int:
    raw = os.environ.get("CRBEAM_WORKERS", "")
    if not raw:
        return 1
    try:
        count = int(raw)
    except ValueError as exc:
        raise ConfigurationError(f"CRBEAM_WORKERS={raw!r} is not an integer") from exc
    if count < 1:
        raise ConfigurationError("CRBEAM_WORKERS must be >= 1")
    return count


def parse_rho_grid(spec: str) -> list[float]:
    """Either a point count or an explicit comma-separated weight list."""
    spec = spec.strip()
    if "," not in spec and "." not in spec:
        try:
            return [float(r) for r in optimize.rho_grid(int(spec))]
        except ValueError as exc:
            raise ConfigurationError(f"bad --rho-grid {spec!r}") from exc
    try:
        values = [float(tok) for tok in spec.split(",") if tok.strip()]
    except ValueError as exc:
        raise ConfigurationError(f"bad --rho-grid {spec!r}") from exc
    if not values or any(not 0.0 <= v <= 1.0 for v in values):
        raise ConfigurationError("rho values must lie in [0, 1]")
    return values


def fold_to_front(angle_rad: float) -> float:
    """Alias an angle into the array's unambiguous front range [-pi/2, pi/2]."""
    return math.asin(math.sin(angle_rad))


def _mean_point(scheme: str, rho, entries: list[optimize.TradeoffPoint]
                ) -> optimize.TradeoffPoint:
    total_time = sum(e.solve_time_s for e in entries)
    bad = [e for e in entries if e.status != "ok"]
    if bad:
        return optimize.TradeoffPoint(scheme, rho, None, None, total_time,
                                      bad[0].status)
    return optimize.TradeoffPoint(
        scheme, rho,
        float(np.mean([e.crb_bp_sqrt_m for e in entries])),
        float(np.mean([e.crb_ms_sqrt_m for e in entries])),
        total_time, "ok")


def run_sweep(config_path, schemes, rho_values, out_dir, phase_averages: int = 1,
              seed: int | None = None) -> dict:
    """Run scheme x rho sweeps and write tradeoff.csv + manifest.json.

    Returns the manifest dict (also written to disk).  Rows are ordered by
    (scheme, rho) regardless of worker completion order; with
    ``phase_averages > 1`` each row reports the mean bound over fresh
    gain-phase draws seeded ``seed..seed+N-1``.
    """
    if not schemes:
        raise ConfigurationError("no schemes requested")
    for scheme in schemes:
        if scheme not in optimize.SCHEMES:
            raise ConfigurationError(
                f"unknown scheme {scheme!r}; expected one of {', '.join(optimize.SCHEMES)}")
    if phase_averages < 1:
        raise ConfigurationError("--phase-averages must be >= 1")
    scenario = load_config(config_path)
    if seed is None:
        seed = scenario.system.rng_seed
    tol = _solver_tol()
    workers = _workers()

    seeds = [seed + rep for rep in range(phase_averages)]
    workspaces = {s: FimWorkspace(scenario.with_seed(s)) for s in seeds}

    def scheme_task(scheme: str, rep_seed: int) -> list[optimize.TradeoffPoint]:
        rng = np.random.default_rng(rep_seed)
        rhos = [] if scheme == "APA" else rho_values
        return optimize.tradeoff_points(workspaces[rep_seed], scheme, rhos,
                                        tol=tol, rng=rng)

    tasks = [(scheme, rep_seed) for scheme in schemes for rep_seed in seeds]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda t: scheme_task(*t), tasks))
    else:
        results = [scheme_task(*t) for t in tasks]

    by_scheme: dict[str, list[list[optimize.TradeoffPoint]]] = {}
    for (scheme, _), points in zip(tasks, results):
        by_scheme.setdefault(scheme, []).append(points)

    rows: list[optimize.TradeoffPoint] = []
    for scheme in sorted(set(schemes)):
        reps = by_scheme[scheme]
        for idx in range(len(reps[0])):
            entries = [rep[idx] for rep in reps]
            rows.append(_mean_point(scheme, entries[0].rho, entries))
    rows.sort(key=lambda p: (p.scheme, -1.0 if p.rho is None else p.rho))

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / "tradeoff.csv"
    with open(csv_path, "w") as fh:
        fh.write(SWEEP_CSV_HEADER + "\n")
        for p in rows:
            rho_txt = "" if p.rho is None else f"{p.rho:.17e}"
            fh.write(f"{p.scheme},{rho_txt},{_fmt(p.crb_bp_sqrt_m)},"
                     f"{_fmt(p.crb_ms_sqrt_m)},{p.solve_time_s:.6e},{p.status}\n")

    manifest_path = out / "manifest.json"
    manifest = {
        "tool": "crbeam",
        "version": __version__,
        "command": "sweep",
        "config": scenario_to_dict(scenario),
        "seed": seed,
        "phase_averages": phase_averages,
        "schemes": list(schemes),
        "rho_grid": [float(r) for r in rho_values],
        "points": [
            {"scheme": p.scheme, "rho": p.rho, "status": p.status,
             "solve_time_s": p.solve_time_s}
            for p in rows
        ],
        "outputs": {"tradeoff_csv": str(csv_path),
                    "manifest": str(manifest_path)},
        "aod_markers_deg": _aod_markers(scenario),
    }
    save_manifest(manifest, manifest_path)
    return manifest


def _aod_markers(scenario: Scenario) -> list[dict]:
    from .scenario import derive_ms_params
    labels = ["UE"] + [f"target{k}" for k in
                       range(1, scenario.geometry.num_targets + 1)]
    params = derive_ms_params(scenario.geometry, scenario.system)
    return [
        {"label": label,
         "aod_deg": math.degrees(p.aod_rad),
         "aod_front_deg": math.degrees(fold_to_front(p.aod_rad))}
        for label, p in zip(labels, params)
    ]


def run_beampattern(config_path, scheme, rho, step_deg, out_dir) -> dict:
    """Sample one scheme's transmit pattern over [-90, 90] degrees."""
    if scheme not in optimize.SCHEMES:
        raise ConfigurationError(
            f"unknown scheme {scheme!r}; expected one of {', '.join(optimize.SCHEMES)}")
    if not 0.0 < step_deg <= 5.0:
        raise ConfigurationError("--step-deg must lie in (0, 5]")
    scenario = load_config(config_path)
    tol = _solver_tol()
    workspace = FimWorkspace(scenario)
    rng = np.random.default_rng(scenario.system.rng_seed)

    start = time.monotonic()
    rhos = [] if scheme == "APA" else [rho]
    points = optimize.scheme_covariances(workspace, scheme, rhos, tol=tol, rng=rng)
    point = points[0]
    if point.covariance is None:
        raise CrbeamError(f"scheme {scheme} failed: {point.error}")
    angles_deg = np.arange(-90.0, 90.0 + step_deg / 2, step_deg)
    powers = optimize.beampattern(point.covariance, np.radians(angles_deg),
                                  scenario.arrays.bs_tx)
    peak = float(powers.max())
    power_db = 10.0 * np.log10(np.maximum(powers / peak, 10 ** (PATTERN_FLOOR_DB / 10)))

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / "beampattern.csv"
    with open(csv_path, "w") as fh:
        fh.write(PATTERN_CSV_HEADER + "\n")
        for ang, pdb in zip(angles_deg, power_db):
            fh.write(f"{ang:.17e},{pdb:.17e}\n")

    manifest_path = out / "manifest.json"
    manifest = {
        "tool": "crbeam",
        "version": __version__,
        "command": "beampattern",
        "config": scenario_to_dict(scenario),
        "seed": scenario.system.rng_seed,
        "scheme": scheme,
        "rho": None if scheme == "APA" else float(rho),
        "step_deg": float(step_deg),
        "status": point.status,
        "solve_time_s": time.monotonic() - start,
        "outputs": {"beampattern_csv": str(csv_path),
                    "manifest": str(manifest_path)},
        "aod_markers_deg": _aod_markers(scenario),
    }
    save_manifest(manifest, manifest_path)
    return manifest


def save_manifest(manifest: dict, path) -> None:
    with open(path, "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_manifest(path) -> dict:
    with open(path) as fh:
        return json.load(fh)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crbeam",
        description="Positioning/sensing beamforming tradeoff experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="scheme x rho tradeoff sweep")
    sweep.add_argument("--config", required=True)
    sweep.add_argument("--schemes", required=True,
                       help="comma-separated subset of " + ",".join(optimize.SCHEMES))
    sweep.add_argument("--rho-grid", default="21",
                       help="point count or comma-separated weights in [0,1]")
    sweep.add_argument("--out", required=True)
    sweep.add_argument("--phase-averages", type=int, default=1, metavar="N",
                       help="average bounds over N fresh phase draws")
    sweep.add_argument("--seed", type=int, default=None)

    pattern = sub.add_parser("beampattern", help="transmit pattern of one scheme")
    pattern.add_argument("--config", required=True)
    pattern.add_argument("--scheme", required=True)
    pattern.add_argument("--rho", type=float, default=1.0)
    pattern.add_argument("--step-deg", type=float, default=1.0)
    pattern.add_argument("--out", required=True)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "sweep":
            schemes = [s.strip() for s in args.schemes.split(",") if s.strip()]
            manifest = run_sweep(args.config, schemes,
                                 parse_rho_grid(args.rho_grid), args.out,
                                 phase_averages=args.phase_averages,
                                 seed=args.seed)
            failures = [p for p in manifest["points"] if p["status"] != "ok"]
            for p in manifest["points"]:
                rho_txt = "" if p["rho"] is None else f" rho={p['rho']:.4f}"
                print(f"{p['scheme']}{rho_txt}: {p['status']}")
            print(f"wrote {manifest['outputs']['tradeoff_csv']}")
            return 2 if failures else 0
        manifest = run_beampattern(args.config, args.scheme, args.rho,
                                   args.step_deg, args.out)
        print(f"wrote {manifest['outputs']['beampattern_csv']}")
        return 0
    except (ConfigurationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except CrbeamError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
