"""Mean-value dynamics: five coupled nonlinear equations and limit-cycle analysis.

The first moments (Q1, P1, Q2, P2, A) obey

    dQj/dt = omega_mj Pj
    dPj/dt = -omega_mj Qj + (g1_j + g3 Q_{3-j}) |A|^2 - 2 g2_j Qj |A|^2 - gamma_mj Pj
    dA/dt  = -(kappa + i Delta) A + i [sum_j (g1_j Qj - g2_j Qj^2) + g3 Q1 Q2] A + E(t)

with the periodically modulated drive E(t).  Under sustained modulation the
solutions settle onto a limit cycle with the period of the modulation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .params import SystemParams, drive_amplitude


class DivergenceError(RuntimeError):
    """The mean values grew beyond the configured bound (unstable point)."""


class WindowError(ValueError):
    """The requested averaging window cannot be taken from the trajectory."""


@dataclass(frozen=True)
class MeanState:
    """Classical first moments of the two oscillators and the cavity field."""

    q1: float
    p1: float
    q2: float
    p2: float
    a: complex

    def as_array(self) -> np.ndarray:
        """Real state vector (Q1, P1, Q2, P2, Re A, Im A)."""
        return np.array([self.q1, self.p1, self.q2, self.p2,
                         self.a.real, self.a.imag])

    @classmethod
    def from_array(cls, y) -> "MeanState":
        return cls(q1=y[0], p1=y[1], q2=y[2], p2=y[3],
                   a=complex(y[4], y[5]))

    @classmethod
    def zero(cls) -> "MeanState":
        return cls(0.0, 0.0, 0.0, 0.0, 0j)

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.as_array())))


@dataclass(frozen=True)
class StepControl:
    """Adaptive integrator settings."""

    rtol: float = 1e-8
    atol: float = 1e-10
    max_step: float = np.inf
    divergence_bound: float = 1e12

    def __post_init__(self):
        if self.rtol <= 0.0 or self.atol <= 0.0:
            raise ValueError("tolerances must be positive")


@dataclass
class MeanTrajectory:
    """Mean states sampled on a uniform output grid."""

    t: np.ndarray                 # shape (n,)
    states: np.ndarray            # shape (n, 6): Q1, P1, Q2, P2, Re A, Im A
    control: StepControl
    horizon: float

    def __post_init__(self):
        if np.any(np.diff(self.t) <= 0.0):
            raise ValueError("trajectory time grid must be strictly increasing")

    @property
    def q1(self): return self.states[:, 0]

    @property
    def p1(self): return self.states[:, 1]

    @property
    def q2(self): return self.states[:, 2]

    @property
    def p2(self): return self.states[:, 3]

    @property
    def a(self): return self.states[:, 4] + 1j * self.states[:, 5]

    def state_at(self, i: int) -> MeanState:
        return MeanState.from_array(self.states[i])

    def tail(self, window: float) -> "MeanTrajectory":
        """Sub-trajectory covering the trailing `window` of time."""
        t_start = self.t[-1] - window
        if t_start < self.t[0] - 1e-12:
            raise WindowError(f"window {window} exceeds trajectory span")
        mask = self.t >= t_start - 1e-12
        return MeanTrajectory(t=self.t[mask], states=self.states[mask],
                              control=self.control, horizon=self.horizon)


def _drift(t: float, y: np.ndarray, p: SystemParams) -> np.ndarray:
    """Right-hand side on the real 6-vector (Q1, P1, Q2, P2, Re A, Im A)."""
    g = p.couplings
    q1, p1, q2, p2, ar, ai = y
    n_phot = ar * ar + ai * ai
    dq1 = p.omega_m1 * p1
    dq2 = p.omega_m2 * p2
    dp1 = (-p.omega_m1 * q1 + (g.g1_1 + g.g3 * q2) * n_phot
           - 2.0 * g.g2_1 * q1 * n_phot - p.gamma_m1 * p1)
    dp2 = (-p.omega_m2 * q2 + (g.g1_2 + g.g3 * q1) * n_phot
           - 2.0 * g.g2_2 * q2 * n_phot - p.gamma_m2 * p2)
    # effective detuning seen by the cavity, shifted by the mirror positions
    det = (p.detuning - g.g1_1 * q1 - g.g1_2 * q2
           + g.g2_1 * q1 * q1 + g.g2_2 * q2 * q2 - g.g3 * q1 * q2)
    e_t = drive_amplitude(t, p)
    dar = -p.kappa * ar + det * ai + e_t
    dai = -p.kappa * ai - det * ar
    return np.array([dq1, dp1, dq2, dp2, dar, dai])


def mean_drift(state: MeanState, t: float, params: SystemParams) -> MeanState:
    """Time derivative of the mean values at (state, t)."""
    return MeanState.from_array(_drift(t, state.as_array(), params))


def _divergence_event(bound: float):
    def event(t, y, *args):
        return bound - float(np.linalg.norm(y))
    event.terminal = True
    event.direction = -1.0
    return event


def integrate_mean(initial: MeanState, params: SystemParams, horizon: float,
                   control: StepControl = StepControl(),
                   output_dt: float = 0.05) -> MeanTrajectory:
    """Integrate the mean-value equations up to `horizon`.

    Output is sampled on a uniform grid of spacing `output_dt` (dense output
    of the adaptive stepper, so the grid does not constrain accuracy).
    """
    if horizon <= 0.0:
        raise ValueError("horizon must be positive")
    t_eval = np.arange(0.0, horizon + 0.5 * output_dt, output_dt)
    t_eval = t_eval[t_eval <= horizon + 1e-12]
    event = _divergence_event(control.divergence_bound)
    sol = solve_ivp(_drift, (0.0, horizon), initial.as_array(),
                    args=(params,), method="RK45", t_eval=t_eval,
                    rtol=control.rtol, atol=control.atol,
                    max_step=control.max_step, events=[event])
    if sol.status == 1:
        raise DivergenceError(
            f"mean state norm exceeded {control.divergence_bound:g} at "
            f"t = {sol.t_events[0][0]:.3f}")
    if not sol.success:
        raise RuntimeError(f"integration failed: {sol.message}")
    return MeanTrajectory(t=sol.t, states=sol.y.T, control=control,
                          horizon=horizon)


@dataclass(frozen=True)
class LimitCycleReport:
    """Summary of the asymptotic orbit over an averaging window."""

    rms_q_minus: float      # RMS of (Q1 - Q2)/sqrt(2)
    rms_p_minus: float
    rms_q_plus: float       # RMS of (Q1 + Q2)/sqrt(2)
    rms_p_plus: float
    dominant_period: float
    recurrence_error: float


def _dominant_period(t: np.ndarray, x: np.ndarray) -> float:
    """Period of the strongest oscillation via the first autocorrelation peak."""
    x = x - x.mean()
    if np.allclose(x, 0.0):
        return np.nan
    n = len(x)
    acf = np.correlate(x, x, mode="full")[n - 1:]
    # first local maximum after the zero-lag peak; grid-limited resolution
    peaks = np.flatnonzero((acf[1:-1] > acf[:-2]) & (acf[1:-1] >= acf[2:])) + 1
    if len(peaks) == 0:
        return np.nan
    dt = t[1] - t[0]
    return float(peaks[0] * dt)


def limit_cycle_metrics(traj: MeanTrajectory, window: float,
                        modulation_period: float | None = None) -> LimitCycleReport:
    """RMS of the difference/sum quadratures and orbit recurrence at the tail.

    `window` must span at least three modulation periods; the recurrence error
    compares the final state with the state one modulation period earlier,
    relative to the orbit scale.
    """
    if modulation_period is None:
        modulation_period = 2.0 * np.pi  # caller should pass 2 pi / omega_d
    if window < 3.0 * modulation_period:
        raise WindowError(
            f"window {window} shorter than three modulation periods "
            f"({3.0 * modulation_period})")
    tail = traj.tail(window)
    sqrt2 = np.sqrt(2.0)
    q_minus = (tail.q1 - tail.q2) / sqrt2
    p_minus = (tail.p1 - tail.p2) / sqrt2
    q_plus = (tail.q1 + tail.q2) / sqrt2
    p_plus = (tail.p1 + tail.p2) / sqrt2

    def rms(x):
        return float(np.sqrt(np.mean(x ** 2)))

    period = _dominant_period(tail.t, q_plus)

    # recurrence: compare last sample against one modulation period before
    i_last = len(tail.t) - 1
    dt = tail.t[1] - tail.t[0]
    lag = int(round(modulation_period / dt))
    scale = float(np.max(np.linalg.norm(tail.states, axis=1)))
    if lag <= 0 or lag > i_last or scale == 0.0:
        recurrence = np.nan
    else:
        diff = np.linalg.norm(tail.states[i_last] - tail.states[i_last - lag])
        recurrence = float(diff / scale)

    return LimitCycleReport(
        rms_q_minus=rms(q_minus), rms_p_minus=rms(p_minus),
        rms_q_plus=rms(q_plus), rms_p_plus=rms(p_plus),
        dominant_period=period, recurrence_error=recurrence)
