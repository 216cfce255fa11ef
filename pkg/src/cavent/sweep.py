"""Declarative parameter sweeps with parallel evaluation and CSV emission.

A sweep is a grid over one or two config-schema keys on top of a fixed flat
configuration, optionally with linear ties (e.g. d2 = L - d1 for the
symmetric cavity cut).  Every grid point is an independent entropy_at()
evaluation, so worker count never changes the result; rows are merged by
index and written with full float precision.

CSV layout: a block of '# key=value' provenance lines, then the fixed
header row 'axis1,axis2,S,born_ratio,tau_coh,skipped_nodes', then one
row-major row per grid point.  Failed points become NaN rows instead of
aborting the sweep.
"""

from __future__ import annotations

import math
import multiprocessing
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .config import ConfigError, config_from_flat, default_flat
from .entanglement import entropy_at

__all__ = [
    "Axis",
    "SweepSpec",
    "SweepResult",
    "run_sweep",
    "write_csv",
    "born_contour",
    "preset",
    "preset_names",
]

CSV_HEADER = "axis1,axis2,S,born_ratio,tau_coh,skipped_nodes"


@dataclass(frozen=True)
class Axis:
    name: str  # config schema key
    lo: float
    hi: float
    count: int
    spacing: str = "lin"  # "lin" | "log"

    def values(self) -> np.ndarray:
        if self.count < 2:
            raise ConfigError("axis count must be >= 2")
        if self.spacing == "lin":
            return np.linspace(self.lo, self.hi, self.count)
        if self.spacing == "log":
            if self.lo <= 0:
                raise ConfigError("log axis requires lo > 0")
            return np.geomspace(self.lo, self.hi, self.count)
        raise ConfigError(f"unknown spacing {self.spacing!r}")


@dataclass(frozen=True)
class SweepSpec:
    """axes: one or two Axis; fixed: flat config overrides on top of the
    defaults; ties: (target_key, a, source_key, b) meaning target = a*source + b,
    applied after the axis values at each grid point."""

    axes: tuple
    fixed: dict = field(default_factory=dict)
    ties: tuple = ()
    name: str = "custom"

    def validate(self):
        if not 1 <= len(self.axes) <= 2:
            raise ConfigError("sweep needs 1 or 2 axes")
        schema = set(default_flat())
        for ax in self.axes:
            if ax.name not in schema:
                raise ConfigError(f"unknown axis key {ax.name!r}")
            ax.values()  # range validation
        config_from_flat(self.fixed)  # key + invariant validation
        for target, _a, source, _b in self.ties:
            if target not in schema or source not in schema:
                raise ConfigError(f"tie references unknown key: {target!r} or {source!r}")
        return self


@dataclass
class SweepResult:
    spec: SweepSpec
    rows: list  # (axis1, axis2, S, born, tau_coh, skipped) tuples
    grid_shape: tuple
    metadata: dict
    wall_time: float


def _point_flat(spec: SweepSpec, axis_values) -> dict:
    flat = dict(spec.fixed)
    for ax, v in zip(spec.axes, axis_values):
        flat[ax.name] = v
    for target, a, source, b in spec.ties:
        flat[target] = a * flat[source] + b
    return flat


def _eval_point(args):
    spec, axis_values = args
    flat = _point_flat(spec, axis_values)
    try:
        cfg = config_from_flat(flat)
        res = entropy_at(cfg)
        s, born, skipped = res.S, res.born_ratio, res.diagnostics["skipped_nodes"]
    except Exception:
        s, born, skipped = math.nan, math.nan, -1
    sig_im = float(flat.get("sigma1_im_eV", default_flat()["sigma1_im_eV"]))
    tau = 1.0 / sig_im if sig_im > 0 else math.inf
    a1 = axis_values[0]
    a2 = axis_values[1] if len(axis_values) > 1 else math.nan
    return (a1, a2, s, born, tau, skipped)


def run_sweep(spec: SweepSpec, workers: int = 1) -> SweepResult:
    """Evaluate every grid point; deterministic regardless of worker count."""
    spec.validate()
    axes_vals = [ax.values() for ax in spec.axes]
    if len(axes_vals) == 1:
        grid = [(float(v),) for v in axes_vals[0]]
        shape = (len(grid),)
    else:
        grid = [(float(a), float(b)) for a in axes_vals[0] for b in axes_vals[1]]
        shape = (len(axes_vals[0]), len(axes_vals[1]))
    tasks = [(spec, g) for g in grid]
    t0 = time.perf_counter()
    if workers > 1:
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(workers) as pool:
            rows = pool.map(_eval_point, tasks, chunksize=max(1, len(tasks) // (8 * workers)))
    else:
        rows = [_eval_point(t) for t in tasks]
    wall = time.perf_counter() - t0

    base = default_flat()
    base.update(spec.fixed)
    d1 = float(base["d1_inv_eV"])
    d2 = float(base["d2_inv_eV"])
    meta = dict(base)
    meta["preset"] = spec.name
    meta["axis1_key"] = spec.axes[0].name
    meta["axis2_key"] = spec.axes[1].name if len(spec.axes) > 1 else ""
    meta["t_light_inv_eV"] = abs(d1 - d2)
    meta["code_version"] = __version__
    return SweepResult(spec=spec, rows=rows, grid_shape=shape, metadata=meta, wall_time=wall)


def _fmt(v) -> str:
    if isinstance(v, int):
        return str(v)
    if isinstance(v, complex):
        if v.imag == 0.0:
            return f"{v.real:.17g}"
        return format(v, ".17g").replace(" ", "")
    return f"{float(v):.17g}"


def write_csv(result: SweepResult, path) -> None:
    lines = [f"# {k}={_fmt(v) if not isinstance(v, str) else v}"
             for k, v in result.metadata.items()]
    lines.append(CSV_HEADER)
    for a1, a2, s, born, tau, skipped in result.rows:
        lines.append(f"{_fmt(a1)},{_fmt(a2)},{_fmt(s)},{_fmt(born)},{_fmt(tau)},{skipped}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# Born-validity contour (marching squares at born_ratio = 1)
# ---------------------------------------------------------------------------

def born_contour(result: SweepResult, level: float = 1.0):
    """Level-set segments of the born_ratio column over a 2-axis grid.

    Returns a list of ((x0, y0), (x1, y1)) segments in axis space; empty when
    the grid never crosses the level.
    """
    if len(result.grid_shape) != 2:
        raise ValueError("born_contour requires a 2-axis sweep")
    nx, ny = result.grid_shape
    xs = np.array([r[0] for r in result.rows]).reshape(nx, ny)
    ys = np.array([r[1] for r in result.rows]).reshape(nx, ny)
    zs = np.array([r[3] for r in result.rows]).reshape(nx, ny)

    def interp(pa, pb, va, vb):
        t = (level - va) / (vb - va)
        return (pa[0] + t * (pb[0] - pa[0]), pa[1] + t * (pb[1] - pa[1]))

    segments = []
    for i in range(nx - 1):
        for j in range(ny - 1):
            corners = [(i, j), (i, j + 1), (i + 1, j + 1), (i + 1, j)]
            vals = [zs[a, b] for a, b in corners]
            if any(math.isnan(v) for v in vals):
                continue
            pts = [(xs[a, b], ys[a, b]) for a, b in corners]
            crossings = []
            for k in range(4):
                va, vb = vals[k], vals[(k + 1) % 4]
                # sign-boundary convention so values exactly on the level
                # still produce a crossing on one side
                if (va >= level) != (vb >= level):
                    crossings.append(interp(pts[k], pts[(k + 1) % 4], va, vb))
            if len(crossings) >= 2:
                segments.append((crossings[0], crossings[1]))
                if len(crossings) == 4:  # saddle cell: join the second pair too
                    segments.append((crossings[2], crossings[3]))
    return segments


# ---------------------------------------------------------------------------
# named presets mirroring the published scan families
# ---------------------------------------------------------------------------

def _randphase_weights(seed: int = 12345) -> dict:
    rng = np.random.default_rng(seed)
    phases = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, size=4))
    keys = ("w_ee", "w_eh", "w_he", "w_hh")
    return {k: complex(p) for k, p in zip(keys, phases)}


def _presets() -> dict:
    grids2 = 64
    grids1 = 256
    specs = {}

    def dplane(name, n_max, extra_fixed=None):
        fixed = {"n_max": n_max}
        fixed.update(extra_fixed or {})
        return SweepSpec(
            axes=(Axis("d1_inv_eV", 0.05, 1.95, grids2),
                  Axis("d2_inv_eV", 0.05, 1.95, grids2)),
            fixed=fixed, name=name)

    specs["dplane"] = dplane("dplane", 50)
    for n in (5, 10, 20):
        specs[f"dplane-n{n}"] = dplane(f"dplane-n{n}", n)
    # channel-weight sensitivity variants of the distance map
    specs["dplane-eeheavy"] = dplane("dplane-eeheavy", 50, {"w_ee": 2.0 + 0j})
    specs["dplane-randphase"] = dplane("dplane-randphase", 50, _randphase_weights())

    specs["dcut"] = SweepSpec(
        axes=(Axis("d1_inv_eV", 0.05, 1.95, grids1),),
        ties=(("d2_inv_eV", -1.0, "d1_inv_eV", 2.0),),  # symmetric cut d2 = L - d1
        name="dcut")

    specs["sigmaplane"] = SweepSpec(
        axes=(Axis("sigma1_re_eV", 1e-5, 1e-1, grids2, "log"),
              Axis("sigma2_re_eV", 1e-5, 1e-1, grids2, "log")),
        name="sigmaplane")

    # coherence-time scan: sweep the common Im(sigma) = 1/tau
    specs["tauscan"] = SweepSpec(
        axes=(Axis("sigma1_im_eV", 5e-4, 50.0, grids1, "log"),),
        ties=(("sigma2_im_eV", 1.0, "sigma1_im_eV", 0.0),),
        name="tauscan")

    specs["pplane"] = SweepSpec(
        axes=(Axis("p1_eV", 0.01, 0.2, grids2),
              Axis("p2_eV", 0.01, 0.2, grids2)),
        name="pplane")

    specs["pcuts"] = SweepSpec(
        axes=(Axis("p2_eV", 0.01, 0.2, grids1),),
        fixed={"p1_eV": 0.10},  # cut at the midpoint of the scanned range
        name="pcuts")
    return specs


def preset_names():
    return sorted(_presets())


def preset(name: str) -> SweepSpec:
    try:
        return _presets()[name]
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; known: {', '.join(preset_names())}") from None
