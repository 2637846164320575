"""Mean-value dynamics: symbolic right-hand-side oracle, closed-form linear
limits, forced-cavity steady state, divergence detection, and limit-cycle
summaries."""

import numpy as np
import pytest
import sympy as sp
from scipy.linalg import expm

from optosync import (CouplingCoefficients, MeanState, StepControl,
                      SystemParams, integrate_mean, limit_cycle_metrics,
                      mean_drift)
from optosync.meanfield import DivergenceError, MeanTrajectory, WindowError


def symbolic_drift():
    """Right-hand side rebuilt symbolically from the complex-field equations."""
    q1, p1, q2, p2, ar, ai, t = sp.symbols("q1 p1 q2 p2 ar ai t", real=True)
    (w1, w2, gam1, gam2, kap, det, e0, eta, wd,
     g11, g12, g21, g22, g3) = sp.symbols(
        "w1 w2 gam1 gam2 kap det e0 eta wd g11 g12 g21 g22 g3", real=True)
    a = ar + sp.I * ai
    n = a * sp.conjugate(a)
    drive = e0 * (1 + eta * sp.cos(wd * t))
    da = (-(kap + sp.I * det) * a
          + sp.I * ((g11 * q1 - g21 * q1 ** 2) + (g12 * q2 - g22 * q2 ** 2)
                    + g3 * q1 * q2) * a
          + drive)
    exprs = [
        w1 * p1,
        -w1 * q1 + (g11 + g3 * q2) * n - 2 * g21 * q1 * n - gam1 * p1,
        w2 * p2,
        -w2 * q2 + (g12 + g3 * q1) * n - 2 * g22 * q2 * n - gam2 * p2,
        sp.re(da),
        sp.im(da),
    ]
    args = (q1, p1, q2, p2, ar, ai, t, w1, w2, gam1, gam2, kap, det,
            e0, eta, wd, g11, g12, g21, g22, g3)
    return sp.lambdify(args, [sp.simplify(sp.expand(e)) for e in exprs], "numpy")


def test_drift_matches_symbolic_oracle():
    oracle = symbolic_drift()
    rng = np.random.default_rng(7)
    for _ in range(25):
        params = SystemParams(
            omega_m1=rng.uniform(0.5, 2.0), omega_m2=rng.uniform(0.5, 2.0),
            detuning=rng.uniform(-2.0, 2.0), gamma_m1=rng.uniform(1e-3, 0.1),
            gamma_m2=rng.uniform(1e-3, 0.1), kappa=rng.uniform(0.01, 1.0),
            drive=rng.uniform(0.0, 300.0), eta_d=rng.uniform(0.0, 5.0),
            omega_d=rng.uniform(0.5, 1.5), n_thermal=rng.uniform(0.0, 3.0),
            couplings=CouplingCoefficients(*(rng.uniform(-1e-3, 1e-3, 5))))
        y = rng.uniform(-50.0, 50.0, 6)
        t = rng.uniform(0.0, 20.0)
        state = MeanState.from_array(y)
        got = mean_drift(state, t, params).as_array()
        g = params.couplings
        want = oracle(*y, t, params.omega_m1, params.omega_m2,
                      params.gamma_m1, params.gamma_m2, params.kappa,
                      params.detuning, params.drive, params.eta_d,
                      params.omega_d, g.g1_1, g.g1_2, g.g2_1, g.g2_2, g.g3)
        np.testing.assert_allclose(got, np.asarray(want, dtype=float),
                                   rtol=1e-10, atol=1e-10)


def decoupled_params(**overrides):
    zero = CouplingCoefficients.symmetric(g1=0.0, g2=0.0, g3=0.0)
    defaults = dict(couplings=zero, drive=0.0, eta_d=0.0)
    defaults.update(overrides)
    return SystemParams(**defaults)


def test_damped_oscillator_closed_form():
    """With couplings and drive off, each oscillator is an exactly solvable
    damped harmonic oscillator; compare against the matrix exponential."""
    params = decoupled_params(omega_m1=1.0, omega_m2=1.3,
                              gamma_m1=0.02, gamma_m2=0.05)
    initial = MeanState(q1=1.0, p1=0.0, q2=-0.5, p2=0.7, a=0.4 - 0.2j)
    horizon = 100.0
    traj = integrate_mean(initial, params, horizon, output_dt=0.5)

    blocks = np.zeros((6, 6))
    blocks[0, 1] = params.omega_m1
    blocks[1, 0] = -params.omega_m1
    blocks[1, 1] = -params.gamma_m1
    blocks[2, 3] = params.omega_m2
    blocks[3, 2] = -params.omega_m2
    blocks[3, 3] = -params.gamma_m2
    blocks[4, 4] = blocks[5, 5] = -params.kappa
    blocks[4, 5] = params.detuning       # dRe = det * Im, dIm = -det * Re
    blocks[5, 4] = -params.detuning
    want = expm(blocks * horizon) @ initial.as_array()
    np.testing.assert_allclose(traj.states[-1], want, rtol=1e-6, atol=1e-9)


def test_origin_is_fixed_point_without_drive():
    params = decoupled_params()
    traj = integrate_mean(MeanState.zero(), params, 50.0)
    np.testing.assert_allclose(traj.states, 0.0, atol=1e-12)


def test_cavity_constant_drive_fixed_point():
    params = decoupled_params(drive=100.0)
    traj = integrate_mean(MeanState.zero(), params, 400.0)
    want = params.drive / (params.kappa + 1j * params.detuning)
    assert traj.a[-1] == pytest.approx(want, rel=1e-6)


def test_cavity_modulated_drive_steady_state():
    """With couplings off, the driven cavity has an exact periodic solution:
    each drive harmonic is filtered by its own Lorentzian response."""
    params = decoupled_params(drive=250.0, eta_d=4.0)
    traj = integrate_mean(MeanState.zero(), params, 300.0, output_dt=0.05)
    k = params.kappa
    for i in range(len(traj.t) - 200, len(traj.t)):
        t = traj.t[i]
        want = (params.drive / (k + 1j * params.detuning)
                + 0.5 * params.drive * params.eta_d
                * (np.exp(-1j * params.omega_d * t)
                   / (k + 1j * (params.detuning - params.omega_d))
                   + np.exp(1j * params.omega_d * t)
                   / (k + 1j * (params.detuning + params.omega_d))))
        assert traj.a[i] == pytest.approx(want, rel=1e-6)


def test_energy_decays_without_drive():
    params = decoupled_params(gamma_m1=0.05, gamma_m2=0.05)
    traj = integrate_mean(MeanState(q1=2.0, p1=-1.0, q2=0.3, p2=1.5, a=0j),
                          params, 200.0, output_dt=1.0)
    energy = traj.q1 ** 2 + traj.p1 ** 2 + traj.q2 ** 2 + traj.p2 ** 2
    assert np.all(np.diff(energy) <= 1e-10)
    assert energy[-1] < 1e-3 * energy[0]


def test_divergence_event_raises():
    params = SystemParams()   # strong drive pushes |A| to thousands
    with pytest.raises(DivergenceError):
        integrate_mean(MeanState.zero(), params, 100.0,
                       control=StepControl(divergence_bound=10.0))


def test_integrate_validation():
    with pytest.raises(ValueError):
        integrate_mean(MeanState.zero(), SystemParams(), -1.0)
    with pytest.raises(ValueError):
        StepControl(rtol=0.0)


def synthetic_trajectory(period=2 * np.pi, horizon=100.0, dt=None):
    # default grid commensurate with the period so the recurrence lag is exact
    if dt is None:
        dt = period / 512.0
    t = np.arange(0.0, horizon, dt)
    w = 2 * np.pi / period
    states = np.zeros((len(t), 6))
    states[:, 0] = np.cos(w * t)           # Q1
    states[:, 1] = -np.sin(w * t)          # P1
    states[:, 2] = np.cos(w * t)           # Q2 identical -> null minus mode
    states[:, 3] = -np.sin(w * t)
    return MeanTrajectory(t=t, states=states, control=StepControl(),
                          horizon=horizon)


def test_limit_cycle_metrics_synthetic():
    period = 2 * np.pi
    traj = synthetic_trajectory(period=period)
    report = limit_cycle_metrics(traj, window=10 * period,
                                 modulation_period=period)
    assert report.rms_q_minus == pytest.approx(0.0, abs=1e-12)
    assert report.rms_p_minus == pytest.approx(0.0, abs=1e-12)
    # RMS of sqrt(2) cos is 1 over whole periods
    assert report.rms_q_plus == pytest.approx(1.0, rel=1e-3)
    assert report.dominant_period == pytest.approx(period, rel=1e-2)
    assert report.recurrence_error < 1e-6


def test_limit_cycle_window_too_short():
    traj = synthetic_trajectory()
    with pytest.raises(WindowError):
        limit_cycle_metrics(traj, window=2.0, modulation_period=2 * np.pi)


def test_tail_window_exceeds_span():
    traj = synthetic_trajectory(horizon=50.0)
    with pytest.raises(WindowError):
        traj.tail(1000.0)


def test_mean_state_round_trip():
    state = MeanState(q1=1.0, p1=2.0, q2=3.0, p2=4.0, a=5.0 + 6.0j)
    again = MeanState.from_array(state.as_array())
    assert again == state
    assert state.is_finite()
    assert not MeanState(np.inf, 0, 0, 0, 0j).is_finite()
