"""Frequency-domain fluctuation moments of the EPR-like quadratures.

In the stable, synchronized regime the stationary variances of the relative
displacement, relative momentum, and total momentum follow from integrating
the corresponding spectral densities over all frequencies:

    <dq_-^2> = (1/2pi) int omega_m^2 mu(omega) domega
    <dp_-^2> = (1/2pi) int omega^2   mu(omega) domega
    <dp_+^2> = (1/2pi) int omega^2   nu(omega) domega

with mu a thermal Lorentzian of the shifted difference mode and nu combining
the radiation-pressure and thermal contributions of the sum mode.  These
moments determine the entanglement/synchronization overlap condition K and
the closed-form relation between the synchronization measure and the
entanglement marker.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .floquet import (FloquetSolution, StabilityReport, _coupling_product,
                      stability_check)
from .params import SystemParams


class InstabilityError(RuntimeError):
    """The fluctuation dynamics is unstable; the moment integrals diverge."""


class QuadratureToleranceError(RuntimeError):
    """The adaptive quadrature could not meet the requested tolerance."""


@dataclass(frozen=True)
class QuadratureControl:
    """Adaptive quadrature settings for the moment integrals."""

    rel_tol: float = 1e-8
    omega_max_factor: float = 50.0   # truncation in units of omega_m
    limit: int = 800                 # max subintervals per integral

    def __post_init__(self):
        if self.rel_tol <= 0.0:
            raise ValueError("quadrature tolerance must be positive")


@dataclass(frozen=True)
class SpectralContext:
    """Everything needed to evaluate the spectral densities pointwise."""

    omega_m: float
    gamma_m: float
    kappa: float
    n_thermal: float
    f0: float
    f1: complex
    f2: complex
    delta_eff: float
    shift_minus: float     # (2 g2 + g3) * sum |A_k|^2
    params: SystemParams = field(repr=False, default=None)

    @classmethod
    def from_solution(cls, solution: FloquetSolution,
                      params: SystemParams) -> "SpectralContext":
        g = params.couplings
        s = solution.photon_sum
        return cls(omega_m=params.omega_m1, gamma_m=params.gamma_m1,
                   kappa=params.kappa, n_thermal=params.n_thermal,
                   f0=solution.f0, f1=solution.f1, f2=solution.f2,
                   delta_eff=solution.delta_eff,
                   shift_minus=(2.0 * g.g2_1 + g.g3) * s,
                   params=params)

    def d_minus(self, omega: float) -> complex:
        """Difference-mode response denominator d(omega)."""
        return (omega ** 2 + 1j * omega * self.gamma_m - self.omega_m ** 2
                - self.omega_m * self.shift_minus)

    def d_plus(self, omega: float) -> complex:
        """Sum-mode response denominator D(omega), cavity factors included."""
        mech = omega ** 2 + 1j * omega * self.gamma_m - self.omega_m * self.f0
        cavity = (self.kappa - 1j * omega) ** 2 + self.delta_eff ** 2
        rp = 2.0 * self.delta_eff * self.omega_m * _coupling_product(self.f1, self.f2)
        return rp + mech * cavity

    def stability(self) -> StabilityReport:
        return stability_check(self.f0, self.f1, self.f2, self.delta_eff,
                               self.params)


def spectral_density_minus(omega: float, ctx: SpectralContext) -> tuple[float, float]:
    """Densities of dq_- and dp_- at a frequency: (omega_m^2 mu, omega^2 mu)."""
    mu = (ctx.gamma_m * (2.0 * ctx.n_thermal + 1.0)
          / abs(ctx.d_minus(omega)) ** 2)
    return ctx.omega_m ** 2 * mu, omega ** 2 * mu


def spectral_density_plus(omega: float, ctx: SpectralContext) -> float:
    """Density omega^2 nu of the total-momentum fluctuation."""
    prod = _coupling_product(ctx.f1, ctx.f2)
    radiation = (2.0 * ctx.kappa * prod
                 * (ctx.kappa ** 2 + (ctx.delta_eff + omega) ** 2))
    thermal = (ctx.gamma_m * (2.0 * ctx.n_thermal + 1.0)
               * ((ctx.delta_eff ** 2 + ctx.kappa ** 2 - omega ** 2) ** 2
                  + 4.0 * ctx.kappa ** 2 * omega ** 2))
    nu = (radiation + thermal) / abs(ctx.d_plus(omega)) ** 2
    return omega ** 2 * nu


@dataclass(frozen=True)
class FluctuationMoments:
    """Stationary EPR variances with per-integral quadrature error estimates."""

    var_q_minus: float
    var_p_minus: float
    var_p_plus: float
    errors: dict

    def __post_init__(self):
        for name in ("var_q_minus", "var_p_minus", "var_p_plus"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive")


def _resonance_points(ctx: SpectralContext, omega_max: float) -> dict:
    """Mandatory subdivision seeds: narrow mechanical peaks and cavity feature."""
    seeds_minus, seeds_plus = [], []
    w2 = ctx.omega_m ** 2 + ctx.omega_m * ctx.shift_minus
    if w2 > 0.0:
        seeds_minus.append(np.sqrt(w2))
    w2 = ctx.omega_m * ctx.f0
    if w2 > 0.0:
        seeds_plus.append(np.sqrt(w2))
    seeds_plus.append(abs(ctx.delta_eff))
    width = max(ctx.gamma_m, 1e-6)

    def expand(seeds):
        pts = []
        for s in seeds:
            for off in (-5.0 * width, 0.0, 5.0 * width):
                x = s + off
                if 0.0 < x < omega_max:
                    pts.append(x)
        return sorted(set(pts))

    return {"minus": expand(seeds_minus), "plus": expand(seeds_plus)}


def _halfline_integral(f, omega_max: float, points, control: QuadratureControl):
    """(1/2pi) * full-line integral via the even part of the integrand.

    The caller passes an already-symmetrized integrand.  The body
    [0, omega_max] is integrated directly with mandatory break points at the
    narrow resonances; the tail is mapped to a finite interval by
    u = 1/omega (the densities decay like 1/omega^2, so the mapped integrand
    is regular at u = 0).
    """
    body, body_err = quad(f, 0.0, omega_max, points=points or None,
                          limit=control.limit, epsrel=control.rel_tol / 10.0,
                          epsabs=0.0)
    tail, tail_err = quad(lambda u: f(1.0 / u) / u ** 2, 0.0, 1.0 / omega_max,
                          limit=control.limit, epsrel=control.rel_tol / 10.0,
                          epsabs=0.0)
    total = (body + tail) / np.pi
    est_err = (body_err + tail_err) / np.pi
    return total, est_err


def mean_square_fluctuations(ctx: SpectralContext,
                             control: QuadratureControl = QuadratureControl(),
                             check_stability: bool = True) -> FluctuationMoments:
    """Integrate the three spectral densities into stationary variances.

    Raises InstabilityError when the Routh-Hurwitz check fails (the integrals
    would not converge to stationary values) and QuadratureToleranceError when
    the quadrature error exceeds the requested relative tolerance.
    """
    if check_stability and ctx.params is not None:
        report = ctx.stability()
        if not report.stable:
            raise InstabilityError(
                f"fluctuation dynamics unstable (conditions "
                f"{report.condition1_value:.3g}, {report.condition2_value:.3g})")
    omega_max = control.omega_max_factor * ctx.omega_m
    seeds = _resonance_points(ctx, omega_max)

    # The radiation-pressure part of the plus-mode density carries a
    # component odd in omega; it cancels on the full line, so the half-line
    # reduction must integrate the even (symmetrized) part.
    var_q, err_q = _halfline_integral(
        lambda w: spectral_density_minus(w, ctx)[0], omega_max,
        seeds["minus"], control)
    var_pm, err_pm = _halfline_integral(
        lambda w: spectral_density_minus(w, ctx)[1], omega_max,
        seeds["minus"], control)
    var_pp, err_pp = _halfline_integral(
        lambda w: 0.5 * (spectral_density_plus(w, ctx)
                         + spectral_density_plus(-w, ctx)), omega_max,
        seeds["plus"], control)

    errors = {"var_q_minus": err_q, "var_p_minus": err_pm, "var_p_plus": err_pp}
    for (name, err), value in zip(errors.items(), (var_q, var_pm, var_pp)):
        if err > control.rel_tol * max(abs(value), 1e-300) * 10.0:
            raise QuadratureToleranceError(
                f"{name}: estimated error {err:.3g} exceeds tolerance for "
                f"value {value:.6g}")
    return FluctuationMoments(var_q_minus=var_q, var_p_minus=var_pm,
                              var_p_plus=var_pp, errors=errors)


def k_condition(moments: FluctuationMoments) -> float:
    """Overlap condition K = 1/(4<dp_+^2>) + <dp_-^2> - 1; positive K means the
    entanglement and synchronization windows for <dq_-^2> overlap."""
    return (1.0 / (4.0 * moments.var_p_plus) + moments.var_p_minus - 1.0)


def sync_from_entanglement(entanglement: float, var_p_minus: float,
                           var_p_plus: float) -> float:
    """Synchronization measure expressed through the entanglement marker."""
    denom = entanglement + var_p_minus * var_p_plus
    if denom <= 0.0:
        raise ValueError(f"denominator must be positive, got {denom}")
    return var_p_plus / denom
