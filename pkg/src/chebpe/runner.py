"""
Engine orchestration: spectral marcher, FDM baseline and modal oracle.

Every engine produces the same pair of FieldGrids (full grid, receiver
slices) so they can be compared point by point.
"""

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .chebyshev import cgl_points
from .field import FieldGrid, materialize, reference_pressure
from .oracle import analytic_field, build_fdm_system, error_index, fdm_march
from .pade import compute_pade_series
from .solver import assemble_depth_operator, build_stepped_system, build_transfer_matrix, march
from .starter import starter_spectrum, starter_values


@dataclass
class EngineResult:
    engine: str
    grid: FieldGrid  # None when grid output is off
    slices: FieldGrid
    setup_time: float = 0.0
    march_time: float = 0.0


def _output_depths(cfg):
    grid_z = cfg.grid_depths() if cfg.grid else None
    return grid_z, np.asarray(cfg.slice_depths, dtype=float)


def pade_for(cfg):
    return compute_pade_series(cfg.env.k0, cfg.delta_r, cfg.n)


def run_csm(cfg, series=None, mode=None):
    mode = mode or cfg.mode
    env = cfg.env
    series = series or pade_for(cfg)
    grid = cgl_points(cfg.N)
    p0 = starter_spectrum(cfg.starter, env, grid, cfg.delta_r)
    t0 = time.perf_counter()
    system = build_stepped_system(assemble_depth_operator(env, cfg.N), series)
    T = build_transfer_matrix(system) if mode == "transfer" else None
    t1 = time.perf_counter()
    result = march(env, cfg.N, series, p0, cfg.r_max, cfg.delta_r, mode=mode, system=system, transfer=T)
    t2 = time.perf_counter()
    grid_z, slice_z = _output_depths(cfg)
    ref = reference_pressure(env)
    full = materialize(result, grid, env.depth, grid_z, ref) if grid_z is not None else None
    slices = materialize(result, grid, env.depth, slice_z, ref)
    return EngineResult("csm", full, slices, t1 - t0, t2 - t1)


def _interp_nodes(z_nodes, values, z_out):
    """Linear interpolation of nodal profiles (rows of ``values``) to ``z_out``."""
    return np.stack([np.interp(z_out, z_nodes, v.real) + 1j * np.interp(z_out, z_nodes, v.imag)
                     for v in values])


def run_fdm(cfg, series=None):
    env = cfg.env
    series = series or pade_for(cfg)
    nodes = np.linspace(0.0, env.depth, cfg.N_f + 1)
    start = starter_values(cfg.starter, env, nodes, cfg.delta_r)
    t0 = time.perf_counter()
    system = build_fdm_system(env, cfg.N_f, series)
    t1 = time.perf_counter()
    result = fdm_march(env, cfg.N_f, series, start, cfg.r_max, cfg.delta_r, system=system)
    t2 = time.perf_counter()
    grid_z, slice_z = _output_depths(cfg)
    ref = reference_pressure(env)
    sqrt_r = np.sqrt(result.ranges)[:, None]

    def at(z):
        vals = _interp_nodes(system.depths, result.spectra, z)
        return FieldGrid(result.ranges, np.asarray(z, dtype=float), vals / sqrt_r, ref)

    return EngineResult("fdm", at(grid_z) if grid_z is not None else None, at(slice_z), t1 - t0, t2 - t1)


def run_analytic(cfg):
    env = cfg.env
    ranges = cfg.delta_r * np.arange(1, int(np.floor(cfg.r_max / cfg.delta_r + 1e-9)) + 1)
    grid_z, slice_z = _output_depths(cfg)
    ref = reference_pressure(env)
    t0 = time.perf_counter()
    full = FieldGrid(ranges, grid_z, analytic_field(env, ranges, grid_z), ref) if grid_z is not None else None
    slices = FieldGrid(ranges, slice_z, analytic_field(env, ranges, slice_z), ref)
    return EngineResult("analytic", full, slices, 0.0, time.perf_counter() - t0)


def run_engine(cfg, engine, series=None):
    if engine == "csm":
        return run_csm(cfg, series)
    if engine == "fdm":
        return run_fdm(cfg, series)
    if engine == "analytic":
        return run_analytic(cfg)
    raise ValueError(f"unknown engine {engine!r}")


def run_engines(cfg):
    series = pade_for(cfg)
    with ThreadPoolExecutor(max_workers=len(cfg.engines)) as pool:
        futures = {e: pool.submit(run_engine, cfg, e, series) for e in cfg.engines}
        return {e: f.result() for e, f in futures.items()}


def reference_engine(engines):
    if "analytic" in engines:
        return "analytic"
    if "fdm" in engines:
        return "fdm"
    return None


def compare(results, cfg):
    """Error indices of every engine against the reference engine."""
    ref_name = reference_engine(list(results))
    out = {}
    if ref_name is None or len(results) < 2:
        return ref_name, out
    ref = results[ref_name]
    for name, res in results.items():
        if name == ref_name:
            continue
        entry = {"slice": error_index(res.slices, ref.slices, cfg.exclusion_radius)}
        if res.grid is not None:
            entry["grid"] = error_index(res.grid, ref.grid, cfg.exclusion_radius)
        out[name] = entry
    return ref_name, out


# ---- serialization -------------------------------------------------------

def _fmt(x):
    return repr(float(x))


def _write(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def write_grid(path, fg, dump_complex=False):
    tl = fg.tl
    if dump_complex:
        rows = ((_fmt(r), _fmt(z), _fmt(p.real), _fmt(p.imag))
                for r, prow in zip(fg.ranges, fg.pressure) for z, p in zip(fg.depths, prow))
        _write(path, "r,z,re,im", rows)
    else:
        rows = ((_fmt(r), _fmt(z), _fmt(t)) for r, trow in zip(fg.ranges, tl) for z, t in zip(fg.depths, trow))
        _write(path, "r,z,tl", rows)


def write_slice(path, fg, column):
    tl = fg.tl[:, column]
    _write(path, "r,tl", ((_fmt(r), _fmt(t)) for r, t in zip(fg.ranges, tl)))


def write_comparison(path, fg, ref, ref_name, exclusion, index):
    a, b = fg.tl, ref.tl
    header = f"# reference={ref_name} exclusion_radius_m={_fmt(exclusion)} error_index_db={_fmt(index)}\nr,z,tl,tl_ref,dtl"
    rows = ((_fmt(r), _fmt(z), _fmt(a[i, j]), _fmt(b[i, j]), _fmt(a[i, j] - b[i, j]))
            for i, r in enumerate(fg.ranges) for j, z in enumerate(fg.depths))
    _write(path, header, rows)


def _depth_tag(z):
    return f"{z:g}"


def run(cfg, output_dir=None):
    """Run every configured engine and write its output files. Returns a summary dict."""
    outdir = output_dir or cfg.output_dir
    os.makedirs(outdir, exist_ok=True)
    results = run_engines(cfg)
    files = []
    for name, res in results.items():
        if res.grid is not None:
            path = os.path.join(outdir, f"{name}_grid.csv")
            write_grid(path, res.grid, cfg.dump_complex)
            files.append(path)
        for j, z in enumerate(res.slices.depths):
            path = os.path.join(outdir, f"{name}_slice_z{_depth_tag(z)}.csv")
            write_slice(path, res.slices, j)
            files.append(path)
    ref_name, indices = compare(results, cfg)
    for name, entry in indices.items():
        use_grid = "grid" in entry
        fg = results[name].grid if use_grid else results[name].slices
        rg = results[ref_name].grid if use_grid else results[ref_name].slices
        path = os.path.join(outdir, f"compare_{name}_vs_{ref_name}.csv")
        write_comparison(path, fg, rg, ref_name, cfg.exclusion_radius, entry["grid" if use_grid else "slice"])
        files.append(path)
    return {"results": results, "reference": ref_name, "error_index": indices, "files": files}


SWEEPABLE = {"N": int, "n": int, "N_f": int, "delta_r": float, "width_scale": float}


def sweep(cfg, param, values):
    """
    Error index of each non-reference engine as ``param`` takes ``values``.

    Returns rows (value, engine, grid_or_slice_index).
    """
    if param not in SWEEPABLE:
        raise ValueError(f"cannot sweep {param!r}; choose from {', '.join(SWEEPABLE)}")
    ref_name = reference_engine(cfg.engines)
    if ref_name is None:
        raise ValueError("sweep needs a reference engine (analytic or fdm)")
    targets = ["fdm"] if param == "N_f" else [e for e in cfg.engines if e != ref_name]
    if param == "N_f" and ref_name == "fdm":
        raise ValueError("cannot sweep N_f against an FDM reference")
    rows = []
    fixed_ref = None
    for v in values:
        v = SWEEPABLE[param](v)
        if param == "width_scale":
            c = replace(cfg, starter=replace(cfg.starter, width_scale=v))
        else:
            c = replace(cfg, **{param: v})
        if fixed_ref is None or param in ("delta_r", "n", "width_scale"):
            fixed_ref = run_engine(c, ref_name)
        for e in targets:
            res = run_engine(c, e)
            idx = (error_index(res.grid, fixed_ref.grid, c.exclusion_radius) if res.grid is not None
                   else error_index(res.slices, fixed_ref.slices, c.exclusion_radius))
            rows.append((v, e, idx))
    return rows


def timing_harness(cfg, repetitions=10):
    """
    Mean setup and march wall time per engine and mode.

    CSM is timed in both modes; FDM and the oracle only when configured.
    """
    if repetitions < 3:
        raise ValueError("timing needs at least 3 repetitions")
    series = pade_for(cfg)
    plan = [("csm", "split"), ("csm", "transfer")]
    if "fdm" in cfg.engines:
        plan.append(("fdm", "split"))
        run_fdm(cfg, series)  # JIT warm-up
    report = []
    steps = int(np.floor(cfg.r_max / cfg.delta_r + 1e-9))
    for engine, mode in plan:
        setup, marching = [], []
        for _ in range(repetitions):
            res = run_csm(cfg, series, mode) if engine == "csm" else run_fdm(cfg, series)
            setup.append(res.setup_time)
            marching.append(res.march_time)
        report.append({"engine": engine, "mode": mode, "steps": steps,
                       "setup_s": float(np.mean(setup)), "march_s": float(np.mean(marching))})
    return report
