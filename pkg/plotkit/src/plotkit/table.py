"""Column-oriented CSV reading for simulation and sweep outputs."""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .recipe import ColumnError


@dataclass
class Table:
    """Named columns; numeric where every cell parses as a number."""

    path: str
    columns: dict[str, np.ndarray]

    def __getitem__(self, name: str) -> np.ndarray:
        try:
            return self.columns[name]
        except KeyError:
            raise ColumnError(
                f"column {name!r} not found in {self.path}; available: "
                f"{sorted(self.columns)}") from None

    def __contains__(self, name: str) -> bool:
        return name in self.columns

    def ok_mask(self) -> np.ndarray:
        """True for rows whose status is 'ok' (all rows if no status column)."""
        if "status" not in self.columns:
            return np.ones(len(next(iter(self.columns.values()))), dtype=bool)
        return self.columns["status"] == "ok"


def read_csv(path: str) -> Table:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file") from None
        rows = list(reader)
    if not rows:
        raise ValueError(f"{path}: no data rows")
    columns = {}
    for j, name in enumerate(header):
        cells = [row[j] for row in rows]
        try:
            columns[name] = np.array([float(c) for c in cells])
        except ValueError:
            columns[name] = np.array(cells, dtype=object)
    return Table(path=path, columns=columns)
