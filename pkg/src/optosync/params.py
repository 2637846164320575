"""Model constants for the membrane-in-the-middle optomechanical system.

All quantities are stored dimensionless, normalized to the frequency of the
first mechanical oscillator (omega_m1 = 1 unless explicitly overridden).
Coupling coefficients can either be supplied directly or derived from the
cavity geometry via a second-order Taylor expansion of the cavity dispersion

    omega_cav(q1, q2) = c / (L + q1) * arccos(r_c * cos(4 pi q2 / lambda)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace


class ParameterError(ValueError):
    """An invariant on the model constants is violated."""


@dataclass(frozen=True)
class CavityGeometry:
    """Physical cavity layout from which the couplings are derived.

    Lengths may be in any consistent unit; frequencies come out in units of
    ``light_speed / length``.
    """

    length: float                 # cavity length L
    reflectivity: float           # membrane field reflectivity r_c, 0 <= r_c < 1
    wavelength: float             # driving laser wavelength
    membrane_equilibrium: float   # membrane rest position q20 inside the cavity
    light_speed: float = 299792458.0

    def __post_init__(self):
        if not (0.0 <= self.reflectivity < 1.0):
            raise ParameterError(
                f"membrane reflectivity must satisfy 0 <= r_c < 1, got {self.reflectivity}")
        if self.length <= 0.0:
            raise ParameterError(f"cavity length must be positive, got {self.length}")
        if self.wavelength <= 0.0:
            raise ParameterError(f"wavelength must be positive, got {self.wavelength}")


@dataclass(frozen=True)
class CouplingCoefficients:
    """Optomechanical coupling strengths (dimensionless after normalization).

    ``g1_*`` are the linear couplings of mirror/membrane displacement to the
    cavity frequency, ``g2_*`` the quadratic ones, and ``g3`` the cross term
    that mediates the indirect mirror-membrane interaction.
    """

    g1_1: float
    g1_2: float
    g2_1: float
    g2_2: float
    g3: float

    def __post_init__(self):
        for name in ("g1_1", "g1_2", "g2_1", "g2_2", "g3"):
            if not math.isfinite(getattr(self, name)):
                raise ParameterError(f"coupling {name} must be finite")

    @classmethod
    def symmetric(cls, g1: float, g2: float, g3: float) -> "CouplingCoefficients":
        """Same linear and quadratic coupling for both oscillators."""
        return cls(g1_1=g1, g1_2=g1, g2_1=g2, g2_2=g2, g3=g3)

    @property
    def max_coupling(self) -> float:
        return max(abs(self.g1_1), abs(self.g1_2), abs(self.g2_1),
                   abs(self.g2_2), abs(self.g3))

    def is_symmetric(self, tol: float = 0.0) -> bool:
        return (abs(self.g1_1 - self.g1_2) <= tol and
                abs(self.g2_1 - self.g2_2) <= tol)

    def weak_coupling(self, omega_m: float, kappa: float,
                      ratio: float = 1e-2) -> bool:
        """True when every |g| is small against both omega_m and kappa."""
        return self.max_coupling < ratio * min(omega_m, kappa)


def _dispersion_derivatives(geometry: CavityGeometry):
    """Value and partial derivatives of the cavity dispersion at (0, q20)."""
    c = geometry.light_speed
    big_l = geometry.length
    r_c = geometry.reflectivity
    k = 4.0 * math.pi / geometry.wavelength
    q20 = geometry.membrane_equilibrium

    u = r_c * math.cos(k * q20)
    one_minus = 1.0 - u * u
    if one_minus <= 1e-14:
        raise ParameterError(
            "arccos argument r_c*cos(4 pi q20 / lambda) too close to +-1; "
            "dispersion derivative is singular")
    theta = math.acos(u)
    root = math.sqrt(one_minus)
    # d/dq2 arccos(r_c cos(k q2)) and its second derivative
    dtheta = r_c * k * math.sin(k * q20) / root
    ddtheta = r_c * k * k * (math.cos(k * q20) / root
                             - r_c * math.sin(k * q20) ** 2 * u / root ** 3)

    value = c / big_l * theta
    d1 = -c / big_l ** 2 * theta
    d2 = c / big_l * dtheta
    d11 = 2.0 * c / big_l ** 3 * theta
    d12 = -c / big_l ** 2 * dtheta
    d22 = c / big_l * ddtheta
    return value, d1, d2, d11, d12, d22


def taylor_coefficients(geometry: CavityGeometry) -> tuple[CouplingCoefficients, float]:
    """Second-order expansion of the cavity dispersion about (0, q20).

    Returns the five coupling coefficients together with the effective bare
    cavity frequency omega_c (the constant term of the expansion, with the
    equilibrium offsets folded in).
    """
    value, d1, d2, d11, d12, d22 = _dispersion_derivatives(geometry)
    q20 = geometry.membrane_equilibrium
    couplings = CouplingCoefficients(
        g1_1=-d1 + 0.5 * d12 * q20,
        g1_2=-d2 + d22 * q20,
        g2_1=0.5 * d11,
        g2_2=0.5 * d22,
        g3=-0.5 * d12,
    )
    omega_c = value - d2 * q20 + 0.5 * d22 * q20 ** 2
    return couplings, omega_c


# Defaults follow the reference operating point used throughout: resonant
# red detuning, slightly mismatched oscillators, strong amplitude modulation.
_DEFAULT_COUPLINGS = CouplingCoefficients.symmetric(g1=5e-5, g2=5e-7, g3=1e-6)


@dataclass(frozen=True)
class SystemParams:
    """All dimensionless model constants, normalized so that omega_m1 = 1."""

    omega_m1: float = 1.0
    omega_m2: float = 1.005
    detuning: float = -1.0        # cavity detuning Delta = omega_c - omega_l
    gamma_m1: float = 0.009
    gamma_m2: float = 0.009
    kappa: float = 0.1
    drive: float = 250.0          # drive amplitude E
    eta_d: float = 4.0            # modulation amplitude
    omega_d: float = 1.0          # modulation frequency
    n_thermal: float = 0.5        # mean thermal phonon number of both baths
    couplings: CouplingCoefficients = field(default=_DEFAULT_COUPLINGS)

    def __post_init__(self):
        positive = {"omega_m1": self.omega_m1, "omega_m2": self.omega_m2,
                    "gamma_m1": self.gamma_m1, "gamma_m2": self.gamma_m2,
                    "kappa": self.kappa}
        for name, value in positive.items():
            if not (value > 0.0 and math.isfinite(value)):
                raise ParameterError(f"{name} must be positive and finite, got {value}")
        nonneg = {"n_thermal": self.n_thermal, "eta_d": self.eta_d}
        for name, value in nonneg.items():
            if not (value >= 0.0 and math.isfinite(value)):
                raise ParameterError(f"{name} must be nonnegative and finite, got {value}")
        for name, value in (("detuning", self.detuning), ("drive", self.drive),
                            ("omega_d", self.omega_d)):
            if not math.isfinite(value):
                raise ParameterError(f"{name} must be finite, got {value}")

    @classmethod
    def from_geometry(cls, geometry: CavityGeometry, normalization: float,
                      **overrides) -> "SystemParams":
        """Build params with geometry-derived couplings.

        ``normalization`` is the mechanical frequency omega_m1 in the same
        frequency units the geometry produces; all coupling coefficients are
        divided by it so the result is dimensionless.
        """
        if normalization <= 0.0:
            raise ParameterError("normalization frequency must be positive")
        raw, _ = taylor_coefficients(geometry)
        couplings = CouplingCoefficients(
            g1_1=raw.g1_1 / normalization,
            g1_2=raw.g1_2 / normalization,
            g2_1=raw.g2_1 / normalization,
            g2_2=raw.g2_2 / normalization,
            g3=raw.g3 / normalization,
        )
        return cls(couplings=couplings, **overrides)

    def replace(self, **changes) -> "SystemParams":
        return replace(self, **changes)

    def weak_coupling(self, ratio: float = 1e-2) -> bool:
        omega_min = min(self.omega_m1, self.omega_m2)
        return self.couplings.weak_coupling(omega_min, self.kappa, ratio=ratio)


def drive_amplitude(t: float, params: SystemParams) -> float:
    """Instantaneous drive E(t) = E [1 + eta_d cos(omega_d t)]."""
    return params.drive * (1.0 + params.eta_d * math.cos(params.omega_d * t))


def drive_fourier_components(params: SystemParams) -> tuple[float, float, float]:
    """Components (E_0, E_+1, E_-1) of the drive at harmonics 0, -omega_d, +omega_d."""
    sideband = params.drive * params.eta_d / 2.0
    return params.drive, sideband, sideband
