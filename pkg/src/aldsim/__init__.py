"""Relativistic charged-particle dynamics with radiation reaction and noise.

A simulator for worldline motion of a point charge coupled to the quantum
electromagnetic field: cutoff-regularized self-force kernels, the classical
third-order self-force equation and its Landau-Lifshitz reduction, the
running-coefficient Langevin equation driven by colored Gaussian noise, and
fluctuation-dissipation / decoherence diagnostics. Natural units, metric
signature (+, -, -, -).
"""

__version__ = "0.1.0"

from .exceptions import (ConfigError, DomainError, GaugeViolationError,
                         GridMismatchError, MassShellError, SimulationError,
                         SingularFieldError, SpectrumError, UnphysicalMassError)
from .minkowski import FourVector, minkowski_dot, normalize_velocity
from .fields import ExternalField, field_tensor, lorentz_force
from .worldline import Trajectory, WorldlineState
from .kernels import (DissipationKernelTable, KernelConfig, NoiseKernelTable,
                      a0_constant, build_dissipation_table, build_noise_table,
                      cutoff_window, decoherence_exponent, dissipation_spectrum,
                      effective_mass, g2_coefficient, hadamard_spectrum,
                      noise_kernel, retarded_kernel)
from .noise import (AutocovarianceEstimate, NoisePath, autocovariance_estimate,
                    derive_path_seed, sample_noise_path,
                    sample_noise_path_along, splitmix64)
from .dynamics import (RunawayDiagnostic, SimConfig, TrajectoryResult, ald_force,
                       energy_audit, integrate_ald, integrate_landau_lifshitz,
                       integrate_langevin, preacceleration_reference,
                       run_simulation, runaway_diagnostic, step_ald,
                       step_landau_lifshitz)
from .fdr import FdrReport, SpectrumPair, build_spectrum_pair, fdr_check, fdr_check_pair, spectral_transform

__all__ = [
    "__version__",
    # errors
    "SimulationError", "GaugeViolationError", "SingularFieldError", "DomainError",
    "UnphysicalMassError", "GridMismatchError", "SpectrumError", "MassShellError",
    "ConfigError",
    # core
    "FourVector", "minkowski_dot", "normalize_velocity", "ExternalField",
    "field_tensor", "lorentz_force", "WorldlineState", "Trajectory",
    # kernels
    "KernelConfig", "DissipationKernelTable", "NoiseKernelTable",
    "retarded_kernel", "hadamard_spectrum", "dissipation_spectrum",
    "cutoff_window", "noise_kernel", "g2_coefficient", "effective_mass",
    "a0_constant", "build_dissipation_table", "build_noise_table",
    "decoherence_exponent",
    # noise
    "NoisePath", "AutocovarianceEstimate", "sample_noise_path",
    "sample_noise_path_along", "autocovariance_estimate", "derive_path_seed",
    "splitmix64",
    # dynamics
    "SimConfig", "TrajectoryResult", "RunawayDiagnostic", "ald_force",
    "step_ald", "step_landau_lifshitz", "integrate_ald",
    "integrate_landau_lifshitz", "integrate_langevin", "run_simulation",
    "runaway_diagnostic", "preacceleration_reference", "energy_audit",
    # fdr
    "SpectrumPair", "FdrReport", "build_spectrum_pair", "fdr_check",
    "fdr_check_pair", "spectral_transform",
]
