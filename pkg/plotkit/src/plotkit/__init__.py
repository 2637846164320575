"""Static figure regeneration from simulation and sweep CSV outputs."""

from .recipe import ColumnError, FigureRecipe, RecipeError, load_recipe
from .render import render
from .table import Table, read_csv

__version__ = "0.1.0"

__all__ = ["ColumnError", "FigureRecipe", "RecipeError", "Table",
           "load_recipe", "read_csv", "render"]
