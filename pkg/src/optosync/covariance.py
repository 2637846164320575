"""Covariance-matrix propagation and synchronization/entanglement metrics.

The Gaussian fluctuation state of (dq1, dp1, dq2, dp2, dx, dy) is fully
described by the symmetric 6x6 covariance matrix C with elements
C_ij = <M_i M_j + M_j M_i>/2.  Along a mean trajectory it obeys the Lyapunov
equation

    dC/dt = B(t) C + C B(t)^T + zeta

with the linearized drift B(t) evaluated at the instantaneous mean values and
the constant diffusion matrix zeta set by the thermal baths and cavity decay.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .meanfield import (DivergenceError, MeanState, MeanTrajectory,
                        StepControl, _drift)
from .params import SystemParams

_SQRT2 = np.sqrt(2.0)


class UnphysicalCovarianceError(ValueError):
    """A covariance matrix violates a positivity requirement of a metric."""


@dataclass
class CovarianceState:
    """Symmetric second moments of the six fluctuation quadratures."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.shape != (6, 6):
            raise ValueError(f"covariance must be 6x6, got {m.shape}")
        if np.max(np.abs(m - m.T)) > 1e-9:
            raise ValueError("covariance matrix is not symmetric")
        self.matrix = 0.5 * (m + m.T)

    @classmethod
    def vacuum(cls) -> "CovarianceState":
        """Minimum-uncertainty start: C = I/2."""
        return cls(0.5 * np.eye(6))

    @classmethod
    def thermal(cls, params: SystemParams) -> "CovarianceState":
        """Thermal mechanical occupations, vacuum cavity."""
        n = params.n_thermal
        d = np.array([2 * n + 1, 2 * n + 1, 2 * n + 1, 2 * n + 1, 1.0, 1.0]) / 2.0
        return cls(np.diag(d))

    def asymmetry(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.T)))


def _assemble_drift(y: np.ndarray, p: SystemParams, out: np.ndarray) -> np.ndarray:
    """Fill the 6x6 linearized drift for a mean state given as a real 6-vector."""
    g = p.couplings
    q1, _, q2, _, ar, ai = y
    n_phot = ar * ar + ai * ai
    g1_eff = g.g1_1 - 2.0 * g.g2_1 * q1 + g.g3 * q2
    g2_eff = g.g1_2 - 2.0 * g.g2_2 * q2 + g.g3 * q1
    det = (p.detuning - g.g1_1 * q1 - g.g1_2 * q2
           + g.g2_1 * q1 * q1 + g.g2_2 * q2 * q2 - g.g3 * q1 * q2)
    out[:] = 0.0
    out[0, 1] = p.omega_m1
    out[1, 0] = -p.omega_m1 - 2.0 * g.g2_1 * n_phot
    out[1, 1] = -p.gamma_m1
    out[1, 2] = g.g3 * n_phot
    out[1, 4] = _SQRT2 * g1_eff * ar
    out[1, 5] = _SQRT2 * g1_eff * ai
    out[2, 3] = p.omega_m2
    out[3, 0] = g.g3 * n_phot
    out[3, 2] = -p.omega_m2 - 2.0 * g.g2_2 * n_phot
    out[3, 3] = -p.gamma_m2
    out[3, 4] = _SQRT2 * g2_eff * ar
    out[3, 5] = _SQRT2 * g2_eff * ai
    out[4, 0] = -_SQRT2 * g1_eff * ai
    out[4, 2] = -_SQRT2 * g2_eff * ai
    out[4, 4] = -p.kappa
    out[4, 5] = det
    out[5, 0] = _SQRT2 * g1_eff * ar
    out[5, 2] = _SQRT2 * g2_eff * ar
    out[5, 4] = -det
    out[5, 5] = -p.kappa
    return out


def drift_matrix(mean: MeanState, params: SystemParams) -> np.ndarray:
    """Linearized drift B at the given mean state."""
    arr = mean.as_array()
    if not np.all(np.isfinite(arr)):
        raise ValueError("mean state must be finite")
    return _assemble_drift(arr, params, np.empty((6, 6)))


def diffusion_matrix(params: SystemParams) -> np.ndarray:
    """Diagonal diffusion from the thermal baths and the cavity input noise."""
    n = params.n_thermal
    return np.diag([0.0, (2 * n + 1) * params.gamma_m1,
                    0.0, (2 * n + 1) * params.gamma_m2,
                    params.kappa, params.kappa])


def _combined_rhs(t, y, p: SystemParams, zeta: np.ndarray, b_buf: np.ndarray):
    """Mean state and covariance co-integrated in one 42-dim vector."""
    dy = np.empty(42)
    dy[:6] = _drift(t, y[:6], p)
    b = _assemble_drift(y[:6], p, b_buf)
    c = y[6:].reshape(6, 6)
    dc = b @ c
    dc += dc.T
    dc += zeta
    dy[6:] = dc.ravel()
    return dy


def propagate_covariance(c0: CovarianceState, traj: MeanTrajectory,
                         params: SystemParams,
                         control: StepControl | None = None,
                         cov_bound: float = 1e12):
    """Propagate C along a mean trajectory; returns (t, covariances).

    The mean equations are re-integrated together with C from the trajectory's
    initial state in a single combined state vector, so B(t) is evaluated
    exactly at the stepper's internal mean rather than interpolated.  Output
    covariances are sampled on the trajectory grid and symmetrized.
    """
    if control is None:
        control = traj.control
    zeta = diffusion_matrix(params)
    b_buf = np.empty((6, 6))
    y0 = np.concatenate([traj.states[0], c0.matrix.ravel()])

    def event(t, y, *args):
        return cov_bound - float(np.max(np.abs(y[6:])))
    event.terminal = True
    event.direction = -1.0

    sol = solve_ivp(_combined_rhs, (traj.t[0], traj.t[-1]), y0,
                    args=(params, zeta, b_buf), method="RK45",
                    t_eval=traj.t, rtol=control.rtol, atol=control.atol,
                    max_step=control.max_step, events=[event])
    if sol.status == 1:
        raise DivergenceError(
            f"covariance norm exceeded {cov_bound:g} at t = {sol.t_events[0][0]:.3f}")
    if not sol.success:
        raise RuntimeError(f"covariance propagation failed: {sol.message}")
    covs = sol.y[6:].T.reshape(-1, 6, 6)
    covs = 0.5 * (covs + np.transpose(covs, (0, 2, 1)))
    return sol.t, covs


def epr_variances(c: np.ndarray) -> tuple[float, float, float]:
    """(<dq_->^2, <dp_->^2, <dp_+>^2) from a covariance matrix."""
    var_q_minus = 0.5 * (c[0, 0] + c[2, 2] - c[0, 2] - c[2, 0])
    var_p_minus = 0.5 * (c[1, 1] + c[3, 3] - c[1, 3] - c[3, 1])
    var_p_plus = 0.5 * (c[1, 1] + c[3, 3] + c[1, 3] + c[3, 1])
    return float(var_q_minus), float(var_p_minus), float(var_p_plus)


def sync_measure(c: np.ndarray | CovarianceState) -> float:
    """Quantum-synchronization measure 1 / (<dq_-^2> + <dp_-^2>)."""
    m = c.matrix if isinstance(c, CovarianceState) else np.asarray(c)
    bracket = 0.5 * (m[0, 0] + m[2, 2] - m[0, 2] - m[2, 0]
                     + m[1, 1] + m[3, 3] - m[1, 3] - m[3, 1])
    if bracket <= 0.0:
        raise UnphysicalCovarianceError(
            f"EPR variance sum must be positive, got {bracket}")
    return 1.0 / bracket


def entanglement_marker(c: np.ndarray | CovarianceState) -> float:
    """Product criterion <dq_-^2><dp_+^2>; entangled when below 1/4."""
    m = c.matrix if isinstance(c, CovarianceState) else np.asarray(c)
    return 0.25 * ((m[0, 0] + m[2, 2] - m[0, 2] - m[2, 0])
                   * (m[1, 1] + m[3, 3] + m[1, 3] + m[3, 1]))


def duan_sum(c: np.ndarray | CovarianceState) -> float:
    """Sum criterion <dq_-^2> + <dp_+^2>; entangled when below 1."""
    m = c.matrix if isinstance(c, CovarianceState) else np.asarray(c)
    var_q_minus, _, var_p_plus = epr_variances(m)
    return var_q_minus + var_p_plus


def mari_measure(mean: MeanState, c: np.ndarray | CovarianceState) -> float:
    """Synchronization measure including the mean-value mismatch."""
    m = c.matrix if isinstance(c, CovarianceState) else np.asarray(c)
    q_minus = (mean.q1 - mean.q2) / _SQRT2
    p_minus = (mean.p1 - mean.p2) / _SQRT2
    var_q_minus, var_p_minus, _ = epr_variances(m)
    total = q_minus ** 2 + p_minus ** 2 + var_q_minus + var_p_minus
    if total <= 0.0:
        raise UnphysicalCovarianceError(
            f"total quadrature mismatch must be positive, got {total}")
    return 1.0 / total


@dataclass(frozen=True)
class MetricSample:
    """All scalar markers evaluated at one output time."""

    t: float
    sync: float           # S_q
    entanglement: float   # E_D
    duan: float
    sync_mari: float      # S_qm


def metric_series(traj: MeanTrajectory, covs: np.ndarray) -> list[MetricSample]:
    """Evaluate every metric on each sample of a propagated covariance."""
    samples = []
    for i, t in enumerate(traj.t):
        c = covs[i]
        mean = traj.state_at(i)
        samples.append(MetricSample(
            t=float(t), sync=sync_measure(c),
            entanglement=entanglement_marker(c), duan=duan_sum(c),
            sync_mari=mari_measure(mean, c)))
    return samples
