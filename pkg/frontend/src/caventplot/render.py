"""Rendering of sweep CSVs into figure files.

Three kinds:
  heatmap  -- two-axis grid of S with a colorbar; optional red contour where
              born_ratio crosses 1 (perturbative validity boundary), a dashed
              diagonal guide when the two axes are a layer pair (e.g.
              sigma1/sigma2), and two line-cut side panels through the grid
              midpoint.
  cut      -- S versus the single sweep axis; a single row degenerates to a
              point marker.
  taucurve -- S versus the coherence time column, with the light-crossing
              time t_light marked when present in the metadata.

Rendering never mutates the data: the returned RenderResult exposes the
exact arrays that were drawn.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .csvio import SweepData, read_sweep_csv

__all__ = ["PlotError", "PlotJob", "RenderResult", "render"]

KINDS = ("heatmap", "cut", "taucurve")


class PlotError(ValueError):
    """Raised for jobs that cannot be rendered (wrong kind/shape/columns)."""


@dataclass(frozen=True)
class PlotJob:
    csv_path: str
    kind: str  # "heatmap" | "cut" | "taucurve"
    out_path: str
    logx: bool = False
    logy: bool = False
    contour: bool = False


@dataclass
class RenderResult:
    out_path: str
    arrays: dict = field(default_factory=dict)  # exactly what was drawn
    contour_segments: int = 0  # born_ratio = 1 segments actually plotted


def _entropy_label(data: SweepData) -> str:
    base = data.metadata.get("entropy_base", "e")
    return f"S (log base {base})"


def _is_layer_pair(key1: str, key2: str) -> bool:
    """True when the axes are the same quantity for layers 1 and 2."""
    return "1" in key1 and key1.replace("1", "2", 1) == key2


def _heatmap(data: SweepData, job: PlotJob) -> RenderResult:
    if not data.is_grid:
        raise PlotError("heatmap requires a two-axis sweep "
                        f"(axis2_key is empty in {job.csv_path})")
    shape = data.grid_shape()
    xs = data.grid("axis1")
    ys = data.grid("axis2")
    s = data.grid("S")
    born = data.grid("born_ratio")

    fig = plt.figure(figsize=(9.6, 5.4))
    gs = fig.add_gridspec(2, 2, width_ratios=(2.2, 1.0), hspace=0.45, wspace=0.3)
    ax = fig.add_subplot(gs[:, 0])
    mesh = ax.pcolormesh(xs, ys, np.ma.masked_invalid(s), shading="nearest")
    fig.colorbar(mesh, ax=ax, label=_entropy_label(data))
    ax.set_xlabel(data.axis1_key)
    ax.set_ylabel(data.axis2_key)
    ax.set_title(data.metadata.get("preset", "sweep"))
    if job.logx:
        ax.set_xscale("log")
    if job.logy:
        ax.set_yscale("log")

    n_segments = 0
    if job.contour:
        finite = np.isfinite(born)
        if finite.any() and np.nanmin(born) < 1.0 < np.nanmax(born):
            cs = ax.contour(xs, ys, np.ma.masked_invalid(born),
                            levels=[1.0], colors="red", linewidths=1.5)
            n_segments = sum(len(segs) for segs in cs.allsegs)
            if n_segments:
                ax.plot([], [], color="red", label="Born validity boundary")
                ax.legend(loc="upper right", fontsize=8)

    if _is_layer_pair(data.axis1_key, data.axis2_key):
        lo = max(xs.min(), ys.min())
        hi = min(xs.max(), ys.max())
        ax.plot([lo, hi], [lo, hi], "w--", linewidth=1.0)

    # line cuts through the grid midpoint, one per axis
    i_mid, j_mid = shape[0] // 2, shape[1] // 2
    ax_c1 = fig.add_subplot(gs[0, 1])
    ax_c1.plot(xs[:, j_mid], s[:, j_mid], marker=".", markersize=3)
    ax_c1.set_xlabel(data.axis1_key)
    ax_c1.set_ylabel("S")
    ax_c1.set_title(f"{data.axis2_key} = {ys[0, j_mid]:.4g}", fontsize=9)
    ax_c2 = fig.add_subplot(gs[1, 1])
    ax_c2.plot(ys[i_mid, :], s[i_mid, :], marker=".", markersize=3)
    ax_c2.set_xlabel(data.axis2_key)
    ax_c2.set_ylabel("S")
    ax_c2.set_title(f"{data.axis1_key} = {xs[i_mid, 0]:.4g}", fontsize=9)
    if job.logx:
        ax_c1.set_xscale("log")
        ax_c2.set_xscale("log")

    fig.savefig(job.out_path, dpi=150)
    plt.close(fig)
    return RenderResult(out_path=job.out_path,
                        arrays={"x": xs, "y": ys, "S": s, "born_ratio": born,
                                "cut1_x": xs[:, j_mid], "cut1_S": s[:, j_mid],
                                "cut2_x": ys[i_mid, :], "cut2_S": s[i_mid, :]},
                        contour_segments=n_segments)


def _cut(data: SweepData, job: PlotJob) -> RenderResult:
    if data.is_grid:
        raise PlotError("cut requires a one-axis sweep; "
                        f"{job.csv_path} has two axes (use kind=heatmap)")
    x = data.column("axis1")
    s = data.column("S")
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    if len(x) == 1:
        ax.plot(x, s, marker="o")  # single point degenerates to a marker
    else:
        ax.plot(x, s, marker=".", markersize=3)
    ax.set_xlabel(data.axis1_key)
    ax.set_ylabel(_entropy_label(data))
    ax.set_title(data.metadata.get("preset", "sweep"))
    if job.logx:
        ax.set_xscale("log")
    if job.logy:
        ax.set_yscale("log")
    fig.tight_layout()
    fig.savefig(job.out_path, dpi=150)
    plt.close(fig)
    return RenderResult(out_path=job.out_path, arrays={"x": x, "S": s})


def _taucurve(data: SweepData, job: PlotJob) -> RenderResult:
    if data.is_grid:
        raise PlotError("taucurve requires a one-axis sweep; "
                        f"{job.csv_path} has two axes")
    tau = data.column("tau_coh")
    s = data.column("S")
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    order = np.argsort(tau)
    ax.plot(tau[order], s[order], marker=".", markersize=3)
    ax.set_xlabel("tau_coh (1/eV)")
    ax.set_ylabel(_entropy_label(data))
    ax.set_title(data.metadata.get("preset", "sweep"))
    ax.set_xscale("log" if not job.logx else "log")  # tau spans decades
    if job.logy:
        ax.set_yscale("log")
    t_light = data.metadata.get("t_light_inv_eV")
    if t_light is not None and float(t_light) > 0:
        ax.axvline(float(t_light), color="gray", linestyle="--", linewidth=1.0)
        ax.annotate("t_light", (float(t_light), ax.get_ylim()[1]),
                    fontsize=8, ha="right", va="top", rotation=90)
    fig.tight_layout()
    fig.savefig(job.out_path, dpi=150)
    plt.close(fig)
    return RenderResult(out_path=job.out_path, arrays={"tau": tau, "S": s})


def render(job: PlotJob) -> RenderResult:
    """Render one job; writes the image and returns the drawn arrays."""
    if job.kind not in KINDS:
        raise PlotError(f"unknown kind {job.kind!r}; expected one of {', '.join(KINDS)}")
    data = read_sweep_csv(job.csv_path)
    if job.kind == "heatmap":
        return _heatmap(data, job)
    if job.kind == "cut":
        return _cut(data, job)
    return _taucurve(data, job)
