"""Rendering of the four figure kinds.

Color scales are fixed per metric so figures from different sweeps are
directly comparable: S_q (Sq) on [0, 1], E_D (ED) on [0, 0.5] with a contour
at the 0.25 entanglement bound, K on a diverging scale centered at 0.
Output is deterministic: no timestamps are embedded.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .recipe import FigureRecipe, RecipeError  # noqa: E402
from .table import Table, read_csv  # noqa: E402

_FIXED_SCALES = {
    "Sq": {"cmap": "viridis", "vmin": 0.0, "vmax": 1.0},
    "ED": {"cmap": "magma", "vmin": 0.0, "vmax": 0.5, "contour": 0.25},
    "K": {"cmap": "RdBu_r", "center": 0.0},
}

_SAVE_KWARGS = {"dpi": 150, "metadata": {"Date": None}}


def render(recipe: FigureRecipe) -> str:
    """Draw the figure described by the recipe; returns the output path."""
    tables = [read_csv(path) for path in recipe.inputs]
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    try:
        if recipe.kind == "phase_portrait":
            _phase_portrait(ax, tables, recipe)
        elif recipe.kind == "timeseries":
            _timeseries(ax, tables, recipe)
        elif recipe.kind == "sweep_1d":
            _sweep_1d(ax, tables, recipe)
        else:
            _heatmap(fig, ax, tables, recipe)
        if "title" in recipe.options:
            ax.set_title(str(recipe.options["title"]))
        fig.tight_layout()
        fig.savefig(recipe.output, **_SAVE_KWARGS)
    finally:
        plt.close(fig)
    return recipe.output


def _label(table: Table, name: str, n_tables: int, index: int) -> str:
    return name if n_tables == 1 else f"{name} [{index}]"


def _y_names(recipe: FigureRecipe) -> list[str]:
    y = recipe.axes["y"]
    if isinstance(y, str):
        return [y]
    if isinstance(y, list) and all(isinstance(v, str) for v in y):
        return list(y)
    raise RecipeError(f"axes.y must be a column or list of columns, got {y!r}")


def _tail_mask(t: np.ndarray, options: dict) -> np.ndarray:
    """Samples belonging to the trailing window (default: last 10% of span)."""
    window = float(options.get("tail_time",
                               0.1 * (float(t[-1]) - float(t[0]))))
    return t >= t[-1] - window - 1e-12


def _phase_portrait(ax, tables, recipe):
    pairs = recipe.axes.get("pairs", [["Q1", "P1"], ["Q2", "P2"]])
    if not (isinstance(pairs, list)
            and all(isinstance(p, list) and len(p) == 2 for p in pairs)):
        raise RecipeError(f"axes.pairs must be a list of [x, y] pairs, "
                          f"got {pairs!r}")
    for i, table in enumerate(tables):
        mask = _tail_mask(table["t"], recipe.options)
        for x_name, y_name in pairs:
            ax.plot(table[x_name][mask], table[y_name][mask], lw=0.8,
                    label=_label(table, f"{y_name} vs {x_name}",
                                 len(tables), i))
    ax.set_xlabel(" / ".join(p[0] for p in pairs))
    ax.set_ylabel(" / ".join(p[1] for p in pairs))
    ax.set_aspect("equal", adjustable="datalim")
    ax.legend(loc="upper right", fontsize=8)


def _timeseries(ax, tables, recipe):
    x_name = recipe.axes["x"]
    for i, table in enumerate(tables):
        x = table[x_name]
        for y_name in _y_names(recipe):
            ax.plot(x, table[y_name], lw=1.0,
                    label=_label(table, y_name, len(tables), i))
    ax.set_xlabel(x_name)
    ax.legend(loc="best", fontsize=8)
    ax.grid(True, alpha=0.3)


def _sweep_1d(ax, tables, recipe):
    x_name = recipe.axes["x"]
    for i, table in enumerate(tables):
        mask = table.ok_mask()
        x = table[x_name][mask]
        order = np.argsort(x, kind="stable")
        for y_name in _y_names(recipe):
            ax.plot(x[order], table[y_name][mask][order], marker="o", ms=3,
                    lw=1.0, label=_label(table, y_name, len(tables), i))
    ax.set_xlabel(x_name)
    ax.legend(loc="best", fontsize=8)
    ax.grid(True, alpha=0.3)


def _pivot(table: Table, x_name: str, y_name: str, z_name: str):
    """Arrange sweep rows on the (y, x) grid; failed points become NaN."""
    x, y, z = table[x_name], table[y_name], np.array(table[z_name], dtype=float)
    z = np.where(table.ok_mask(), z, np.nan)
    xs, ys = np.unique(x), np.unique(y)
    grid = np.full((len(ys), len(xs)), np.nan)
    xi = np.searchsorted(xs, x)
    yi = np.searchsorted(ys, y)
    grid[yi, xi] = z
    return xs, ys, grid


def _heatmap(fig, ax, tables, recipe):
    if len(tables) != 1:
        raise RecipeError("heatmap takes exactly one input CSV")
    x_name, y_name = recipe.axes["x"], recipe.axes["y"]
    z_name = recipe.axes["z"]
    xs, ys, grid = _pivot(tables[0], x_name, y_name, z_name)

    scale = dict(_FIXED_SCALES.get(z_name, {"cmap": "viridis"}))
    contour_at = scale.pop("contour", None)
    if "center" in scale:
        scale.pop("center")
        bound = float(np.nanmax(np.abs(grid))) or 1.0
        scale.update(vmin=-bound, vmax=bound)
    mesh = ax.pcolormesh(xs, ys, grid, shading="nearest", **scale)
    if contour_at is not None and np.nanmin(grid) < contour_at < np.nanmax(grid):
        ax.contour(xs, ys, grid, levels=[contour_at], colors="white",
                   linewidths=1.2)
    fig.colorbar(mesh, ax=ax, label=z_name)
    ax.set_xlabel(x_name)
    ax.set_ylabel(y_name)
