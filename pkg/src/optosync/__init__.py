"""Quantum synchronization and entanglement of two mechanical oscillators
coupled to one driven cavity: mean-field limit cycles, covariance dynamics,
analytic harmonic-balance steady states, spectral fluctuation moments, and
parameter sweeps."""

from .params import (CavityGeometry, CouplingCoefficients, ParameterError,
                     SystemParams, drive_amplitude, drive_fourier_components,
                     taylor_coefficients)
from .meanfield import (LimitCycleReport, MeanState, MeanTrajectory,
                        StepControl, integrate_mean, limit_cycle_metrics,
                        mean_drift)
from .covariance import (CovarianceState, MetricSample, diffusion_matrix,
                         drift_matrix, duan_sum, entanglement_marker,
                         epr_variances, mari_measure, metric_series,
                         propagate_covariance, sync_measure)
from .floquet import (FloquetSolution, StabilityReport,
                      cavity_fourier_coefficients, effective_constants,
                      plus_mode_coefficients, solve_floquet, stability_check,
                      verify_minus_mode_null)
from .spectrum import (FluctuationMoments, QuadratureControl, SpectralContext,
                       k_condition, mean_square_fluctuations,
                       spectral_density_minus, spectral_density_plus,
                       sync_from_entanglement)
from .harness import (Axis, RunSettings, SimulationResult, SweepSpec,
                      SweepTable, run_sweep, simulate, time_average)

__version__ = "0.1.0"
