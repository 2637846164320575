"""Run scheduling: single simulations, time averages, and parameter sweeps.

The time-domain engine integrates the mean values and covariance together,
then time-averages the metrics over a trailing window of whole modulation
periods.  The analytic engine runs the harmonic-balance plus spectral-moment
pipeline, which is only valid for resonant modulation and identical
oscillators.  Sweep points are independent and may run in parallel; output
ordering is by grid index regardless of worker count.
"""

from __future__ import annotations

import math
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import covariance as cov
from . import floquet as flo
from . import spectrum as spec
from .meanfield import (DivergenceError, MeanState, MeanTrajectory,
                        StepControl, WindowError, integrate_mean,
                        limit_cycle_metrics)
from .params import ParameterError, SystemParams


@dataclass(frozen=True)
class RunSettings:
    """Horizon, output grid, and integrator settings for one simulation."""

    horizon: float = 500.0
    output_dt: float = 0.05
    window_periods: float = 10.0     # averaging window, in modulation periods
    rtol: float = 1e-8
    atol: float = 1e-10
    divergence_bound: float = 1e12

    def __post_init__(self):
        if self.horizon <= 0.0:
            raise ValueError("horizon must be positive")
        if self.output_dt <= 0.0:
            raise ValueError("output_dt must be positive")
        if self.window_periods < 3.0:
            raise ValueError("averaging window must span at least 3 periods")

    def control(self) -> StepControl:
        return StepControl(rtol=self.rtol, atol=self.atol,
                           divergence_bound=self.divergence_bound)

    def window(self, params: SystemParams) -> float:
        period = 2.0 * math.pi / params.omega_d if params.omega_d > 0 else 2.0 * math.pi
        return self.window_periods * period


@dataclass
class SimulationResult:
    """Mean trajectory, covariances, and metric series of one run."""

    traj: MeanTrajectory
    covs: np.ndarray                      # (n, 6, 6)
    metrics: list[cov.MetricSample]
    params: SystemParams
    run: RunSettings

    def metric_arrays(self) -> dict[str, np.ndarray]:
        return {
            "t": self.traj.t,
            "Sq": np.array([m.sync for m in self.metrics]),
            "ED": np.array([m.entanglement for m in self.metrics]),
            "duan": np.array([m.duan for m in self.metrics]),
            "Sqm": np.array([m.sync_mari for m in self.metrics]),
        }

    def epr_variance_arrays(self) -> dict[str, np.ndarray]:
        out = {"var_q_minus": [], "var_p_minus": [], "var_p_plus": []}
        for c in self.covs:
            vq, vpm, vpp = cov.epr_variances(c)
            out["var_q_minus"].append(vq)
            out["var_p_minus"].append(vpm)
            out["var_p_plus"].append(vpp)
        return {k: np.array(v) for k, v in out.items()}


def simulate(params: SystemParams, run: RunSettings = RunSettings(),
             initial: MeanState | None = None,
             c0: cov.CovarianceState | None = None) -> SimulationResult:
    """Integrate means and covariance from rest and evaluate all metrics."""
    if initial is None:
        initial = MeanState.zero()
    if c0 is None:
        c0 = cov.CovarianceState.vacuum()
    traj = integrate_mean(initial, params, run.horizon,
                          control=run.control(), output_dt=run.output_dt)
    t, covs = cov.propagate_covariance(c0, traj, params)
    metrics = cov.metric_series(traj, covs)
    return SimulationResult(traj=traj, covs=covs, metrics=metrics,
                            params=params, run=run)


def time_average(t: np.ndarray, values: np.ndarray, window: float) -> float:
    """Trapezoidal mean over the trailing `window` of the sampled series."""
    t = np.asarray(t, dtype=float)
    values = np.asarray(values, dtype=float)
    if window > t[-1] - t[0] + 1e-12:
        raise WindowError(f"window {window} exceeds series span {t[-1] - t[0]}")
    mask = t >= t[-1] - window - 1e-12
    if np.count_nonzero(mask) < 10:
        raise WindowError("averaging window contains fewer than 10 samples")
    tt, vv = t[mask], values[mask]
    return float(np.trapezoid(vv, tt) / (tt[-1] - tt[0]))


# ---------------------------------------------------------------------------
# sweeps

_SWEEPABLE = {"omega_m1", "omega_m2", "detuning", "gamma_m1", "gamma_m2",
              "kappa", "drive", "eta_d", "omega_d", "n_thermal"}
_DEFAULT_METRICS = ("Sq", "ED", "duan", "K", "stable")
_ENGINES = ("time", "analytic")


@dataclass(frozen=True)
class Axis:
    """One sweep axis: a uniformly spaced range of a parameter."""

    name: str
    start: float
    stop: float
    count: int

    def __post_init__(self):
        if self.name not in _SWEEPABLE:
            raise ValueError(
                f"unknown sweep parameter {self.name!r}; choose from "
                f"{sorted(_SWEEPABLE)}")
        if self.count < 2:
            raise ValueError("axis needs at least 2 points")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class SweepSpec:
    """Grid definition plus engine and metric selection."""

    axis1: Axis
    axis2: Axis | None = None
    engine: str = "time"
    metrics: tuple[str, ...] = _DEFAULT_METRICS
    overrides: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.engine not in _ENGINES:
            raise ValueError(f"engine must be one of {_ENGINES}")
        unknown = set(self.metrics) - set(_DEFAULT_METRICS)
        if unknown:
            raise ValueError(f"unknown metrics {sorted(unknown)}")

    def grid(self):
        """Ordered (index, {param: value}) pairs, row-major over (axis1, axis2)."""
        v1 = self.axis1.values()
        if self.axis2 is None:
            return [(i, {self.axis1.name: float(x)}) for i, x in enumerate(v1)]
        v2 = self.axis2.values()
        points = []
        idx = 0
        for x in v1:
            for y in v2:
                points.append((idx, {self.axis1.name: float(x),
                                     self.axis2.name: float(y)}))
                idx += 1
        return points


@dataclass
class SweepTable:
    """Rows of grid coordinates and metric values, with run metadata."""

    columns: list[str]
    rows: list[list]
    metadata: dict

    def to_csv(self, path: str):
        write_csv(path, self.columns, self.rows)

    def column(self, name: str) -> np.ndarray:
        j = self.columns.index(name)
        return np.array([row[j] for row in self.rows])


def _format_cell(x) -> str:
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def write_csv(path: str, columns: list[str], rows: list[list]):
    """Comma-separated, 17 significant digits, LF endings."""
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_format_cell(x) for x in row) + "\n")


def evaluate_time_point(params: SystemParams, run: RunSettings) -> dict:
    """Time-domain metrics at a single parameter point."""
    result = simulate(params, run)
    window = run.window(params)
    arrays = result.metric_arrays()
    variances = result.epr_variance_arrays()
    t = arrays["t"]
    var_p_plus = time_average(t, variances["var_p_plus"], window)
    var_p_minus = time_average(t, variances["var_p_minus"], window)
    return {
        "Sq": time_average(t, arrays["Sq"], window),
        "ED": time_average(t, arrays["ED"], window),
        "duan": time_average(t, arrays["duan"], window),
        "K": 1.0 / (4.0 * var_p_plus) + var_p_minus - 1.0,
        "stable": True,
    }


def evaluate_analytic_point(params: SystemParams,
                            quad: spec.QuadratureControl = spec.QuadratureControl()) -> dict:
    """Analytic-pipeline metrics at a single parameter point."""
    solution = flo.solve_floquet(params)
    report = flo.stability_check(solution.f0, solution.f1, solution.f2,
                                 solution.delta_eff, params)
    ctx = spec.SpectralContext.from_solution(solution, params)
    moments = spec.mean_square_fluctuations(ctx, quad)
    entanglement = moments.var_q_minus * moments.var_p_plus
    return {
        "Sq": spec.sync_from_entanglement(entanglement, moments.var_p_minus,
                                          moments.var_p_plus),
        "ED": entanglement,
        "duan": moments.var_q_minus + moments.var_p_plus,
        "K": spec.k_condition(moments),
        "stable": report.stable,
    }


def _point_task(args):
    index, values, params, run, engine = args
    try:
        point_params = params.replace(**values)
        if engine == "time":
            metrics = evaluate_time_point(point_params, run)
        else:
            metrics = evaluate_analytic_point(point_params)
        return index, "ok", metrics
    except (DivergenceError, spec.InstabilityError,
            spec.QuadratureToleranceError, flo.FloquetPreconditionError,
            flo.SingularSystemError, ParameterError, ValueError) as exc:
        return index, f"error: {type(exc).__name__}: {exc}", None
    except Exception:
        return index, "error: " + traceback.format_exc(limit=1).strip(), None


def run_sweep(sweep: SweepSpec, params: SystemParams,
              run: RunSettings = RunSettings(), workers: int = 1) -> SweepTable:
    """Evaluate every grid point; failures are recorded per row, never raised.

    Output row order follows the grid index, independent of worker count.
    """
    if sweep.overrides:
        params = params.replace(**sweep.overrides)
    grid = sweep.grid()
    tasks = [(i, values, params, run, sweep.engine) for i, values in grid]

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_point_task, tasks, chunksize=1))
    else:
        results = [_point_task(task) for task in tasks]
    results.sort(key=lambda r: r[0])

    axis_names = [sweep.axis1.name] + ([sweep.axis2.name] if sweep.axis2 else [])
    columns = axis_names + list(sweep.metrics) + ["status"]
    rows = []
    for (index, values), (_, status, metrics) in zip(grid, results):
        row = [values[name] for name in axis_names]
        for metric in sweep.metrics:
            row.append(metrics[metric] if metrics is not None else math.nan)
        row.append(status)
        rows.append(row)
    metadata = {"engine": sweep.engine, "rtol": run.rtol, "atol": run.atol,
                "horizon": run.horizon, "workers": workers}
    return SweepTable(columns=columns, rows=rows, metadata=metadata)


def simulation_csv(result: SimulationResult, path: str):
    """Time-series CSV with mean-field and metric columns."""
    traj = result.traj
    arrays = result.metric_arrays()
    columns = ["t", "Q1", "P1", "Q2", "P2", "ReA", "ImA",
               "Sq", "ED", "duan", "Sqm"]
    rows = []
    for i in range(len(traj.t)):
        rows.append([float(traj.t[i]), float(traj.q1[i]), float(traj.p1[i]),
                     float(traj.q2[i]), float(traj.p2[i]),
                     float(traj.states[i, 4]), float(traj.states[i, 5]),
                     float(arrays["Sq"][i]), float(arrays["ED"][i]),
                     float(arrays["duan"][i]), float(arrays["Sqm"][i])])
    write_csv(path, columns, rows)


def limit_cycle_report(result: SimulationResult):
    """Limit-cycle summary over the configured averaging window."""
    window = result.run.window(result.params)
    period = 2.0 * math.pi / result.params.omega_d \
        if result.params.omega_d > 0 else 2.0 * math.pi
    return limit_cycle_metrics(result.traj, window, modulation_period=period)
