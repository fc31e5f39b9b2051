"""Render pivoted scan surfaces as heatmaps (or optional 3-D surfaces)."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")  # headless: never require a display
import matplotlib.pyplot as plt
import numpy as np

from .loader import SurfaceData

_LABELS = {"C0": "no-feedback concurrence", "Cfb": "optimized concurrence", "delta": "concurrence gain"}


@dataclass(frozen=True)
class RenderInfo:
    """Where a surface was written and the color scale it used."""

    path: Path
    vmin: float
    vmax: float


def _color_limits(which: str, grid: np.ndarray) -> tuple[float, float, str]:
    if which in ("C0", "Cfb"):
        return 0.0, 1.0, "viridis"  # fixed scale keeps separate runs comparable
    spread = float(np.nanmax(np.abs(grid))) if np.isfinite(grid).any() else 0.0
    spread = max(spread, 1e-12)
    return -spread, spread, "RdBu_r"


def render(
    data: SurfaceData,
    which: str,
    out_path: str | Path,
    *,
    surface: bool = False,
    dpi: int = 150,
) -> RenderInfo | None:
    """Write one surface as a PNG; returns None (with a warning) for empty grids.

    Heatmaps put alpha on the x axis and J on the y axis with a labeled
    colorbar; gaps from error rows render as blanks.  ``surface=True`` draws
    a 3-D surface instead, with the same color scaling.
    """
    grid = data.grid(which)
    out_path = Path(out_path)
    if not np.isfinite(grid).any():
        warnings.warn(f"surface {which!r} has no finite values; nothing rendered", stacklevel=2)
        return None

    vmin, vmax, cmap_name = _color_limits(which, grid)
    masked = np.ma.masked_invalid(grid.T)  # rows become J, columns alpha
    cmap = plt.get_cmap(cmap_name).copy()
    cmap.set_bad("lightgray")

    fig = plt.figure(figsize=(6.4, 4.8))
    if surface:
        ax = fig.add_subplot(projection="3d")
        alpha_mesh, j_mesh = np.meshgrid(data.alphas, data.Js)
        plot = ax.plot_surface(
            alpha_mesh, j_mesh, masked, cmap=cmap, vmin=vmin, vmax=vmax, linewidth=0
        )
        ax.set_zlim(vmin, vmax)
    else:
        ax = fig.add_subplot()
        extent = _cell_extent(data.alphas, data.Js)
        plot = ax.imshow(
            masked,
            origin="lower",
            aspect="auto",
            extent=extent,
            cmap=cmap,
            vmin=vmin,
            vmax=vmax,
            interpolation="nearest",
        )
    ax.set_xlabel("alpha")
    ax.set_ylabel("J")
    ax.set_title(f"{which}: {_LABELS[which]}")
    fig.colorbar(plot, ax=ax, label=which)
    fig.tight_layout()
    fig.savefig(out_path, dpi=dpi)
    plt.close(fig)
    return RenderInfo(path=out_path, vmin=vmin, vmax=vmax)


def _cell_extent(alphas: np.ndarray, Js: np.ndarray) -> list[float]:
    def pad(axis: np.ndarray) -> tuple[float, float]:
        half = (axis[1] - axis[0]) / 2 if len(axis) > 1 else 0.5
        return float(axis[0] - half), float(axis[-1] + half)

    x0, x1 = pad(alphas)
    y0, y1 = pad(Js)
    return [x0, x1, y0, y1]
