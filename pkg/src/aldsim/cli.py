"""Command-line interface: simulate, kernel-table, noise-sample, fdr-check.

Exit codes: 0 success, 2 config error, 3 numerical abort, 4 FDR check failed.
Errors go to stderr with the machine-parsable prefix ``aldsim: error: <category>:``.
All outputs are byte-deterministic for a given (config, master seed),
independent of the worker count.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .config import (kernel_config_from_dict, load_config, output_components,
                     sim_config_from_dict)
from .dynamics import TrajectoryResult, run_paths
from .exceptions import ConfigError, SimulationError
from .fdr import fdr_check
from .kernels import (KernelConfig, effective_mass, g2_coefficient,
                      noise_kernel, retarded_kernel)
from .noise import derive_path_seed, sample_noise_path

_FMT = "%.17g"  # repr-faithful float formatting for reproducible files

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_FDR_FAIL = 4


def _fail(category: str, message: str) -> None:
    print(f"aldsim: error: {category}: {message}", file=sys.stderr)


def _out_dir(args) -> Path:
    out = args.out or os.environ.get("ALDSIM_OUT") or "out"
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _write_csv(path: Path, header_comment: str, columns: list[str],
               rows: np.ndarray) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(f"# {header_comment}\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_FMT % v for v in row) + "\n")


def _write_json(path: Path, payload: dict) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _manifest(out: Path, cfg_raw: dict, master_seed: int, path_seeds: list[int],
              files: list[Path], t0: float) -> None:
    payload = {
        "version": __version__,
        "config": cfg_raw,
        "master_seed": master_seed,
        "path_seeds": path_seeds,
        "outputs": [{"file": f.name, "sha256": _sha256(f)} for f in files],
        "wall_clock_s": time.perf_counter() - t0,
    }
    _write_json(out / "manifest.json", payload)


# ---------------------------------------------------------------------------
# simulate

_TRAJ_COLUMNS = ["tau", "t", "x", "y", "z", "ut", "ux", "uy", "uz",
                 "at", "ax", "ay", "az", "mass_shell_drift"]


def _trajectory_rows(result: TrajectoryResult) -> np.ndarray:
    traj = result.trajectory
    return np.column_stack([traj.tau, traj.position, traj.velocity,
                            traj.acceleration, traj.drift])


def _component_series(result: TrajectoryResult, name: str) -> np.ndarray:
    traj = result.trajectory
    table = {"t": traj.position[:, 0], "x": traj.position[:, 1],
             "y": traj.position[:, 2], "z": traj.position[:, 3],
             "ut": traj.velocity[:, 0], "ux": traj.velocity[:, 1],
             "uy": traj.velocity[:, 2], "uz": traj.velocity[:, 3],
             "at": traj.acceleration[:, 0], "ax": traj.acceleration[:, 1],
             "ay": traj.acceleration[:, 2], "az": traj.acceleration[:, 3],
             "mass_shell_drift": traj.drift}
    return table[name]


def _run_worker(payload):
    cfg_raw, seed, indices = payload
    config = sim_config_from_dict(cfg_raw, seed_override=seed)
    return run_paths(config, indices)


def cmd_simulate(args) -> int:
    t0 = time.perf_counter()
    cfg_raw = load_config(args.config)
    config = sim_config_from_dict(cfg_raw, seed_override=args.seed)
    components = output_components(cfg_raw)
    out = _out_dir(args)

    n_paths = config.ensemble_size if config.integrator == "ald_langevin" else 1
    indices = list(range(n_paths))
    workers = max(1, args.workers)
    if workers == 1 or n_paths == 1:
        results = run_paths(config, indices)
    else:
        shards = [indices[i::workers] for i in range(workers)]
        shards = [s for s in shards if s]
        payloads = [(cfg_raw, config.master_seed, shard) for shard in shards]
        with ProcessPoolExecutor(max_workers=len(shards)) as pool:
            chunks = list(pool.map(_run_worker, payloads))
        results = [r for chunk in chunks for r in chunk]
        results.sort(key=lambda r: r.diagnostics.get("path_index", 0))

    files = []
    for i, result in enumerate(results):
        fname = out / f"trajectory_{i:04d}.csv"
        seed_note = f" path_seed={result.noise_seed}" if result.noise_seed is not None else ""
        _write_csv(fname,
                   f"aldsim {__version__} integrator={config.integrator} "
                   f"master_seed={config.master_seed}{seed_note}",
                   _TRAJ_COLUMNS, _trajectory_rows(result))
        files.append(fname)

    tau = results[0].trajectory.tau
    summary = {
        "config": cfg_raw,
        "master_seed": config.master_seed,
        "path_seeds": [r.noise_seed for r in results],
        "tau": [float(v) for v in tau],
        "components": {},
        "diagnostics": [
            {k: (bool(v) if isinstance(v, (bool, np.bool_)) else v)
             for k, v in r.diagnostics.items()}
            for r in results],
    }
    for name in components:
        stacked = np.stack([_component_series(r, name) for r in results])
        summary["components"][name] = {
            "mean": [float(v) for v in stacked.mean(axis=0)],
            "variance": [float(v) for v in stacked.var(axis=0, ddof=0)],
        }
    sfile = out / "ensemble_summary.json"
    _write_json(sfile, summary)
    files.append(sfile)
    _manifest(out, cfg_raw, config.master_seed,
              [r.noise_seed for r in results if r.noise_seed is not None],
              files, t0)
    return EXIT_OK


# ---------------------------------------------------------------------------
# kernel-table

def _table_values(name: str, kconfig: KernelConfig, cfg_raw: dict,
                  grid: np.ndarray) -> np.ndarray:
    if name == "kr":
        return np.asarray(retarded_kernel(grid, kconfig))
    if name == "kh":
        return np.asarray(noise_kernel(grid, kconfig))
    if name == "g2":
        return np.asarray(g2_coefficient(grid, kconfig))
    if name == "mass":
        if "m0" not in cfg_raw:
            raise ConfigError("mass table requires 'm0' in the config")
        return np.asarray(effective_mass(grid, float(cfg_raw["m0"]), kconfig))
    raise ConfigError(f"unknown table {name!r}")


def cmd_kernel_table(args) -> int:
    t0 = time.perf_counter()
    cfg_raw = load_config(args.config)
    kconfig = kernel_config_from_dict(cfg_raw)
    if args.points < 2:
        raise ConfigError("kernel-table: --points must be >= 2")
    hi = args.max if args.max is not None else 100.0 / kconfig.lam
    if args.table == "kh":
        lo = args.min if args.min is not None else -hi
    else:
        lo = args.min if args.min is not None else 0.0
    if not hi > lo:
        raise ConfigError("kernel-table: --max must exceed --min")
    if args.table in ("g2", "mass", "kr") and lo < 0.0:
        raise ConfigError(f"kernel-table: {args.table} table requires min >= 0")
    grid = np.linspace(lo, hi, args.points)
    values = _table_values(args.table, kconfig, cfg_raw, grid)
    out = _out_dir(args)
    fname = out / f"kernel_{args.table}.csv"
    _write_csv(fname, f"aldsim {__version__} table={args.table} "
               f"scheme={kconfig.cutoff_scheme} lambda={_FMT % kconfig.lam}",
               ["s_or_omega", "value"], np.column_stack([grid, values]))
    _manifest(out, cfg_raw, 0, [], [fname], t0)
    return EXIT_OK


# ---------------------------------------------------------------------------
# noise-sample

def cmd_noise_sample(args) -> int:
    t0 = time.perf_counter()
    cfg_raw = load_config(args.config)
    kconfig = kernel_config_from_dict(cfg_raw)
    if "n_steps" not in cfg_raw or "dtau" not in cfg_raw:
        raise ConfigError("noise-sample requires 'n_steps' and 'dtau'")
    n = int(cfg_raw["n_steps"])
    dtau = float(cfg_raw["dtau"])
    master = args.seed if args.seed is not None else int(cfg_raw.get("master_seed", 0))
    count = int(cfg_raw.get("ensemble_size", 1))
    out = _out_dir(args)
    files = []
    seeds = []
    for k in range(count):
        seed = derive_path_seed(master, k)
        seeds.append(seed)
        path = sample_noise_path(kconfig, n, dtau, seed)
        fname = out / f"noise_{k:04d}.csv"
        rows = np.column_stack([path.tau, path.samples])
        _write_csv(fname, f"aldsim {__version__} seed={seed} master_seed={master}",
                   ["tau", "eta_t", "eta_x", "eta_y", "eta_z"], rows)
        files.append(fname)
    _manifest(out, cfg_raw, master, seeds, files, t0)
    return EXIT_OK


# ---------------------------------------------------------------------------
# fdr-check

def cmd_fdr_check(args) -> int:
    t0 = time.perf_counter()
    cfg_raw = load_config(args.config)
    kconfig = kernel_config_from_dict(cfg_raw)
    dcfg = None
    if args.dissipation_scheme and args.dissipation_scheme != kconfig.cutoff_scheme:
        # negative-control mode: deliberately mismatched dissipation window
        from dataclasses import replace
        dcfg = replace(kconfig, cutoff_scheme=args.dissipation_scheme)
    report = fdr_check(kconfig, dissipation_config=dcfg)
    out = _out_dir(args)
    fname = out / "fdr_report.json"
    _write_json(fname, report.as_dict())
    _manifest(out, cfg_raw, 0, [], [fname], t0)
    status = "PASS" if report.passed else "FAIL"
    print(f"fdr-check: {status} (max |ratio - 1| = {report.max_abs_deviation:.3e})")
    return EXIT_OK if report.passed else EXIT_FDR_FAIL


# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aldsim",
        description="Relativistic charged-particle simulator with radiation "
                    "reaction and colored quantum noise")
    parser.add_argument("--version", action="version", version=f"aldsim {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="YAML config file")
        p.add_argument("--seed", type=int, default=None,
                       help="override the config's master seed (u64)")
        p.add_argument("--workers", type=int, default=1,
                       help="ensemble worker processes")
        p.add_argument("--out", default=None,
                       help="output directory (default: $ALDSIM_OUT or ./out)")

    p = sub.add_parser("simulate", help="run a configured simulation")
    common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("kernel-table", help="export kernel/coefficient tables")
    common(p)
    p.add_argument("--table", required=True, choices=("kr", "kh", "g2", "mass"))
    p.add_argument("--min", type=float, default=None)
    p.add_argument("--max", type=float, default=None)
    p.add_argument("--points", type=int, default=1001)
    p.set_defaults(func=cmd_kernel_table)

    p = sub.add_parser("noise-sample", help="sample noise paths to CSV")
    common(p)
    p.set_defaults(func=cmd_noise_sample)

    p = sub.add_parser("fdr-check", help="fluctuation-dissipation consistency check")
    common(p)
    p.add_argument("--dissipation-scheme", choices=("exponential", "gaussian"),
                   default=None,
                   help="override the dissipation-side scheme (negative control)")
    p.set_defaults(func=cmd_fdr_check)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.seed is not None and not 0 <= args.seed < (1 << 64):
        _fail("config", "--seed must be a u64")
        return EXIT_CONFIG
    try:
        return args.func(args)
    except ConfigError as exc:
        _fail("config", str(exc))
        return EXIT_CONFIG
    except SimulationError as exc:
        _fail("numerical", str(exc))
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
