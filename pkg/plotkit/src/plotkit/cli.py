"""Entry point: ``plot <recipe.json> [more recipes...]``."""

from __future__ import annotations

import argparse
import sys

from .recipe import ColumnError, RecipeError, load_recipe
from .render import render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot",
        description="Render figures from simulation/sweep CSV outputs")
    parser.add_argument("recipes", nargs="+", metavar="recipe.json",
                        help="JSON figure recipe(s)")
    args = parser.parse_args(argv)
    for path in args.recipes:
        try:
            out = render(load_recipe(path))
        except (RecipeError, ColumnError, ValueError, OSError) as exc:
            print(f"error: {path}: {exc}", file=sys.stderr)
            return 1
        print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
