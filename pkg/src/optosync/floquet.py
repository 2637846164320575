"""Analytic long-time solution at the first modulation harmonic.

With identical oscillators, symmetric couplings, and the modulation resonant
with the mechanical frequency, the asymptotic mean values admit a truncated
Fourier expansion at harmonics 0, +-omega_d.  The cavity coefficients follow
in closed form in the weak-coupling limit; the sum-mode mechanical
coefficients solve a 3x3 complex linear system; the difference mode is
identically zero (the synchronized solution).  The effective constants
(f0, f1, f2, delta_eff) feed the linearized sum-mode fluctuation dynamics and
its Routh-Hurwitz stability verdict.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .params import SystemParams, drive_fourier_components

_SQRT2 = np.sqrt(2.0)


class FloquetPreconditionError(ValueError):
    """The analytic path requires identical oscillators and resonant modulation."""


class SingularSystemError(RuntimeError):
    """The 3x3 harmonic-balance system could not be solved."""


def _require_symmetric_resonant(params: SystemParams):
    if abs(params.omega_m1 - params.omega_m2) > 1e-12 * max(1.0, params.omega_m1):
        raise FloquetPreconditionError(
            f"analytic solution needs omega_m1 == omega_m2, got "
            f"{params.omega_m1} and {params.omega_m2}")
    if not params.couplings.is_symmetric(tol=0.0):
        raise FloquetPreconditionError(
            "analytic solution needs identical couplings for both oscillators")
    if abs(params.gamma_m1 - params.gamma_m2) > 1e-12 * max(1.0, params.gamma_m1):
        raise FloquetPreconditionError(
            "analytic solution needs equal mechanical damping rates")
    if abs(params.omega_d - params.omega_m1) > 1e-9:
        raise FloquetPreconditionError(
            f"analytic solution is derived at omega_d == omega_m, got "
            f"omega_d = {params.omega_d}, omega_m = {params.omega_m1}")


def cavity_fourier_coefficients(params: SystemParams) -> tuple[complex, complex, complex]:
    """Cavity amplitudes (A_0, A_1, A_-1) at harmonics 0, -omega_d, +omega_d.

    Valid in the weak-coupling limit where the mechanically induced detuning
    shift of the cavity is neglected; a warning is issued outside that regime.
    """
    _require_symmetric_resonant(params)
    if not params.weak_coupling():
        warnings.warn("couplings are not small against omega_m and kappa; "
                      "the analytic cavity coefficients may be inaccurate",
                      stacklevel=2)
    e0, e_plus, e_minus = drive_fourier_components(params)
    omega_m = params.omega_m1
    a0 = e0 / complex(params.kappa, params.detuning)
    a1 = e_plus / complex(params.kappa, params.detuning - omega_m)
    am1 = e_minus / complex(params.kappa, params.detuning + omega_m)
    return a0, a1, am1


def _photon_sum(a0, a1, am1) -> float:
    return abs(a0) ** 2 + abs(a1) ** 2 + abs(am1) ** 2


def verify_minus_mode_null(a_coeffs, params: SystemParams,
                           q_minus=(0.0, 0.0, 0.0)) -> float:
    """Residual of the difference-mode harmonic-balance system at the given
    coefficients (Q-_0, Q-_1, Q-_-1); zero at the synchronized null solution."""
    a0, a1, am1 = a_coeffs
    g = params.couplings
    coupl = 2.0 * g.g2_1 + g.g3
    w = coupl * _photon_sum(a0, a1, am1)
    w0 = coupl * (a0 * np.conj(a1) + np.conj(a0) * am1)
    w1 = coupl * (np.conj(a1) * am1)
    omega_m = params.omega_m1
    gamma = params.gamma_m1
    q0, qp1, qm1 = q_minus
    r1 = (omega_m + w) * q0 + w0 * qp1 + np.conj(w0) * qm1
    r2 = w0 * q0 + w1 * qp1 + (1j * gamma + w) * qm1
    r3 = np.conj(w0) * q0 + (-1j * gamma + w) * qp1 + np.conj(w1) * qm1
    return float(max(abs(r1), abs(r2), abs(r3)))


def plus_mode_coefficients(a_coeffs, params: SystemParams,
                           conjugacy_tol: float = 1e-8):
    """Solve the sum-mode harmonic balance for (Q+_0, Q+_1, Q+_-1) and recover
    the momentum coefficients from dQ+/dt = omega_m P+.

    Raises SingularSystemError if the 3x3 system is singular; warns when its
    condition number exceeds 1e8.  Conjugacy Q+_-1 = conj(Q+_1) is checked and
    then enforced by symmetrization.
    """
    a0, a1, am1 = a_coeffs
    g = params.couplings
    coupl = 2.0 * g.g2_1 - g.g3
    v = coupl * _photon_sum(a0, a1, am1)
    v0 = coupl * (a0 * np.conj(a1) + np.conj(a0) * am1)
    v1 = coupl * (np.conj(a1) * am1)
    omega_m = params.omega_m1
    gamma = params.gamma_m1
    g1 = g.g1_1

    mat = np.array([
        [omega_m + v, v0, np.conj(v0)],
        [v0, v1, 1j * gamma + v],
        [np.conj(v0), -1j * gamma + v, np.conj(v1)],
    ], dtype=complex)
    rhs = _SQRT2 * g1 * np.array([
        _photon_sum(a0, a1, am1),
        a0 * np.conj(a1) + np.conj(a0) * am1,
        a0 * np.conj(am1) + np.conj(a0) * a1,
    ], dtype=complex)
    cond = np.linalg.cond(mat)
    if not np.isfinite(cond):
        raise SingularSystemError(
            f"sum-mode harmonic system is singular (condition number {cond})")
    if cond > 1e8:
        warnings.warn(f"sum-mode harmonic system is ill-conditioned "
                      f"(condition number {cond:.3g})", stacklevel=2)
    try:
        q0, qp1, qm1 = np.linalg.solve(mat, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(
            f"sum-mode harmonic system could not be solved "
            f"(condition number {cond:.3g})") from exc

    scale = max(abs(q0), abs(qp1), abs(qm1), 1.0)
    if abs(qm1 - np.conj(qp1)) > conjugacy_tol * scale or \
            abs(q0.imag) > conjugacy_tol * scale:
        raise SingularSystemError(
            "solution violates the conjugate-pair structure of a real signal; "
            f"residuals {abs(qm1 - np.conj(qp1)):.3g}, {abs(q0.imag):.3g}")
    qp1 = 0.5 * (qp1 + np.conj(qm1))
    qm1 = np.conj(qp1)
    q0 = complex(q0.real, 0.0)

    # P+_k from the k-th harmonic of dQ+/dt = omega_m P+
    ratio = params.omega_d / omega_m
    p0 = 0.0 + 0.0j
    pp1 = -1j * ratio * qp1
    pm1 = 1j * ratio * qm1
    return q0, qp1, qm1, p0, pp1, pm1


@dataclass(frozen=True)
class FloquetSolution:
    """Fourier coefficients of the asymptotic means and derived constants."""

    a0: complex
    a1: complex
    am1: complex
    q_plus_0: complex
    q_plus_1: complex
    q_plus_m1: complex
    p_plus_0: complex
    p_plus_1: complex
    p_plus_m1: complex
    f0: float
    f1: complex
    f2: complex
    delta_eff: float

    @property
    def photon_sum(self) -> float:
        return _photon_sum(self.a0, self.a1, self.am1)

    def cavity_amplitude(self, t: float, omega_d: float) -> complex:
        return (self.am1 * np.exp(1j * omega_d * t) + self.a0
                + self.a1 * np.exp(-1j * omega_d * t))


def effective_constants(a_coeffs, q_plus, params: SystemParams):
    """(f0, f1, f2, delta_eff) entering the sum-mode fluctuation equations."""
    a0, a1, am1 = a_coeffs
    q0, qp1, qm1 = q_plus
    g = params.couplings
    coupl = 2.0 * g.g2_1 - g.g3
    g1 = g.g1_1
    s = _photon_sum(a0, a1, am1)
    f0 = params.omega_m1 + coupl * s
    f1 = _SQRT2 * g1 * a0 - coupl * (q0 * a0 + qp1 * am1 + qm1 * a1)
    f2 = (_SQRT2 * g1 * np.conj(a0)
          - coupl * (q0 * np.conj(a0) + qp1 * np.conj(a1) + qm1 * np.conj(am1)))
    delta_eff = (params.detuning - _SQRT2 * g1 * q0
                 + 0.5 * coupl * (q0 ** 2 + 2.0 * qp1 * qm1))
    if abs(np.imag(f0)) > 1e-10 * max(1.0, abs(f0)) or \
            abs(np.imag(delta_eff)) > 1e-10 * max(1.0, abs(delta_eff)):
        warnings.warn("effective constants have unexpected imaginary parts",
                      stacklevel=2)
    return float(np.real(f0)), complex(f1), complex(f2), float(np.real(delta_eff))


def solve_floquet(params: SystemParams) -> FloquetSolution:
    """Full analytic pipeline: cavity harmonics, sum mode, effective constants."""
    a_coeffs = cavity_fourier_coefficients(params)
    q0, qp1, qm1, p0, pp1, pm1 = plus_mode_coefficients(a_coeffs, params)
    f0, f1, f2, delta_eff = effective_constants(a_coeffs, (q0, qp1, qm1), params)
    return FloquetSolution(
        a0=a_coeffs[0], a1=a_coeffs[1], am1=a_coeffs[2],
        q_plus_0=q0, q_plus_1=qp1, q_plus_m1=qm1,
        p_plus_0=p0, p_plus_1=pp1, p_plus_m1=pm1,
        f0=f0, f1=f1, f2=f2, delta_eff=delta_eff)


def _coupling_product(f1: complex, f2: complex) -> float:
    """Real radiation-pressure product f1*f2 (conjugate pair up to roundoff)."""
    prod = f1 * f2
    if abs(prod.imag) > 1e-10 * max(1.0, abs(prod)):
        warnings.warn(f"f1*f2 has a nonnegligible imaginary part "
                      f"({prod.imag:.3g}); using the real part", stacklevel=2)
    return float(prod.real)


def fluctuation_matrix(f0: float, f1: complex, f2: complex, delta_eff: float,
                       params: SystemParams) -> np.ndarray:
    """Real 4x4 drift of the sum-mode fluctuations (dq+, dp+, dx, dy)."""
    u = float(((f1 + f2) / _SQRT2).real)
    w = float((1j * (f2 - f1) / _SQRT2).real)
    gamma = params.gamma_m1
    kappa = params.kappa
    return np.array([
        [0.0, params.omega_m1, 0.0, 0.0],
        [-f0, -gamma, u, w],
        [-w, 0.0, -kappa, delta_eff],
        [u, 0.0, -delta_eff, -kappa],
    ])


@dataclass(frozen=True)
class StabilityReport:
    """Routh-Hurwitz verdict for the sum-mode fluctuation dynamics."""

    condition1_value: float
    condition2_value: float
    stable: bool
    eigenvalue_max_real_part: float


def stability_check(f0: float, f1: complex, f2: complex, delta_eff: float,
                    params: SystemParams) -> StabilityReport:
    """Evaluate both Routh-Hurwitz inequalities and cross-check against the
    eigenvalues of the 4x4 fluctuation drift."""
    for value in (f0, delta_eff):
        if not np.isfinite(value):
            raise ValueError("effective constants must be finite")
    gamma = params.gamma_m1
    kappa = params.kappa
    omega_m = params.omega_m1
    prod = _coupling_product(f1, f2)
    d2k2 = delta_eff ** 2 + kappa ** 2
    cond1 = (kappa * gamma * (d2k2 ** 2
                              + (f0 * omega_m + gamma * kappa) ** 2
                              + 2.0 * gamma * kappa * d2k2
                              + 2.0 * f0 * omega_m * (kappa ** 2 - delta_eff ** 2)
                              + gamma ** 2 * delta_eff ** 2)
             + prod * delta_eff * omega_m * (gamma + 2.0 * kappa) ** 2)
    cond2 = f0 * omega_m * d2k2 - 2.0 * prod * omega_m * delta_eff
    eigs = np.linalg.eigvals(fluctuation_matrix(f0, f1, f2, delta_eff, params))
    return StabilityReport(
        condition1_value=float(cond1),
        condition2_value=float(cond2),
        stable=bool(cond1 > 0.0 and cond2 > 0.0),
        eigenvalue_max_real_part=float(np.max(eigs.real)))


def report_dict(solution: FloquetSolution, report: StabilityReport) -> dict:
    """JSON-ready summary of the analytic solution and its stability."""
    def c(z):
        z = complex(z)
        return {"re": z.real, "im": z.imag}

    return {
        "cavity": {"a0": c(solution.a0), "a1": c(solution.a1),
                   "am1": c(solution.am1)},
        "q_plus": {"h0": c(solution.q_plus_0), "h1": c(solution.q_plus_1),
                   "hm1": c(solution.q_plus_m1)},
        "p_plus": {"h0": c(solution.p_plus_0), "h1": c(solution.p_plus_1),
                   "hm1": c(solution.p_plus_m1)},
        "f0": solution.f0,
        "f1": c(solution.f1),
        "f2": c(solution.f2),
        "delta_eff": solution.delta_eff,
        "stability": {
            "condition1_value": report.condition1_value,
            "condition2_value": report.condition2_value,
            "stable": report.stable,
            "eigenvalue_max_real_part": report.eigenvalue_max_real_part,
        },
    }
