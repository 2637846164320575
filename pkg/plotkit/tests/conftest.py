"""Synthetic CSV inputs matching the schemas of the simulation harness."""

import numpy as np
import pytest


def write_csv(path, columns, rows):
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(str(x) for x in row) + "\n")


@pytest.fixture
def simulate_csv(tmp_path):
    """Time-series file shaped like a `simulate` output."""
    path = tmp_path / "sim.csv"
    t = np.linspace(0.0, 100.0, 501)
    rows = []
    for ti in t:
        q1, p1 = np.cos(ti), -np.sin(ti)
        q2, p2 = np.cos(ti + 0.05), -np.sin(ti + 0.05)
        rows.append([ti, q1, p1, q2, p2, 10 * np.cos(ti), 10 * np.sin(ti),
                     0.9, 0.1, 0.8, 0.5])
    write_csv(path, ["t", "Q1", "P1", "Q2", "P2", "ReA", "ImA",
                     "Sq", "ED", "duan", "Sqm"], rows)
    return str(path)


@pytest.fixture
def sweep_1d_csv(tmp_path):
    """Single-axis sweep table with one failed point."""
    path = tmp_path / "sweep1.csv"
    rows = []
    for i, x in enumerate(np.linspace(1.0, 2.0, 6)):
        status = "ok" if i != 3 else "error: DivergenceError: blew up"
        sq = 1.0 / (1.0 + (x - 1.0) ** 2) if status == "ok" else float("nan")
        rows.append([x, sq, 0.3 * x, status])
    write_csv(path, ["omega_m2", "Sq", "ED", "status"], rows)
    return str(path)


@pytest.fixture
def sweep_2d_csv(tmp_path):
    """Two-axis sweep table on a 5 x 4 grid, row-major, one failed point."""
    path = tmp_path / "sweep2.csv"
    rows = []
    etas = np.linspace(0.0, 5.0, 5)
    omegas = np.linspace(0.8, 1.2, 4)
    for i, eta in enumerate(etas):
        for j, omega in enumerate(omegas):
            failed = (i, j) == (2, 1)
            status = "ok" if not failed else "error: boom"
            sq = np.nan if failed else np.exp(-(omega - 1.0) ** 2 * (6 - eta))
            ed = np.nan if failed else 0.5 - 0.4 * sq
            k = np.nan if failed else sq - 0.5
            rows.append([eta, omega, sq, ed, k, status])
    write_csv(path, ["eta_d", "omega_d", "Sq", "ED", "K", "status"], rows)
    return str(path)
