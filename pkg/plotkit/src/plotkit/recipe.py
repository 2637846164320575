"""Figure recipes: a small JSON description of what to draw from which CSV.

Example::

    {
      "kind": "heatmap",
      "input": "fig3.csv",
      "axes": {"x": "omega_d", "y": "eta_d", "z": "Sq"},
      "output": "fig3_sq.png"
    }

``input`` may be a single path or a list of paths (curves are overlaid for
the line-based kinds).  ``options`` carries kind-specific extras such as the
tail window of a phase portrait.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

KINDS = ("phase_portrait", "timeseries", "sweep_1d", "heatmap")

_REQUIRED_AXES = {
    "phase_portrait": set(),          # defaults to (Q1, P1) and (Q2, P2)
    "timeseries": {"x", "y"},
    "sweep_1d": {"x", "y"},
    "heatmap": {"x", "y", "z"},
}


class RecipeError(ValueError):
    """Malformed figure recipe."""


class ColumnError(KeyError):
    """A referenced column is missing from the input CSV."""

    def __str__(self):
        return self.args[0]


@dataclass(frozen=True)
class FigureRecipe:
    """One figure: input CSV path(s), kind, axis mappings, output path."""

    kind: str
    inputs: tuple[str, ...]
    output: str
    axes: dict = field(default_factory=dict)
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise RecipeError(
                f"unknown figure kind {self.kind!r}; choose from {KINDS}")
        if not self.inputs:
            raise RecipeError("recipe needs at least one input CSV")
        if not self.output:
            raise RecipeError("recipe needs an output image path")
        missing = _REQUIRED_AXES[self.kind] - self.axes.keys()
        if missing:
            raise RecipeError(
                f"{self.kind} recipe is missing axes {sorted(missing)}")


def _as_tuple(value) -> tuple[str, ...]:
    if isinstance(value, str):
        return (value,)
    if isinstance(value, list) and all(isinstance(v, str) for v in value):
        return tuple(value)
    raise RecipeError(f"input must be a path or list of paths, got {value!r}")


def parse_recipe(payload: dict) -> FigureRecipe:
    if not isinstance(payload, dict):
        raise RecipeError("recipe must be a JSON object")
    unknown = set(payload) - {"kind", "input", "output", "axes", "options"}
    if unknown:
        raise RecipeError(f"unknown recipe keys {sorted(unknown)}")
    for key in ("kind", "input", "output"):
        if key not in payload:
            raise RecipeError(f"recipe is missing {key!r}")
    axes = payload.get("axes", {})
    options = payload.get("options", {})
    if not isinstance(axes, dict) or not isinstance(options, dict):
        raise RecipeError("axes and options must be JSON objects")
    return FigureRecipe(kind=payload["kind"],
                        inputs=_as_tuple(payload["input"]),
                        output=payload["output"], axes=axes, options=options)


def load_recipe(path: str) -> FigureRecipe:
    try:
        with open(path) as fh:
            payload = json.load(fh)
    except OSError as exc:
        raise RecipeError(f"cannot read recipe {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise RecipeError(f"malformed JSON in {path}: {exc}") from exc
    return parse_recipe(payload)
