"""Cutoff-regularized dissipation and noise kernels on the worldline.

A :class:`KernelConfig` fixes one cutoff scheme and one scale ``lam`` for
*all* kernels it produces, so dissipation and noise are always regulated
consistently. Two schemes are provided, each built from a mollified-delta
family ``delta(s)`` supported on ``s >= 0`` and a frequency window ``C``:

==============  ================================  =====================
scheme          delta(s)                          C(omega / lam)
==============  ================================  =====================
exponential     lam * exp(-lam s)                 exp(-|omega| / lam)
gaussian        (2 lam / sqrt(pi)) exp(-(lam s)^2) exp(-(omega/lam)^2)
==============  ================================  =====================

Derived objects:

* retarded kernel ``k_R(s) = (lam / 2) * delta(s)``, so that
  ``int_0^inf k_R = lam / 2`` for every scheme;
* noise spectrum ``S(omega) = |omega| coth(beta |omega| / 2) C(omega/lam)``
  (``coth -> 1`` in vacuum), with time-domain kernel
  ``k_H(s) = (1/pi) int_0^inf S(omega) cos(omega s) d omega``;
* radiation-reaction coefficient ``g2(r)``: the normalized running first
  moment of ``k_R``, which starts at zero, saturates at ``kappa`` on the
  cutoff timescale, and multiplies the jerk-plus-curvature force structure;
* effective mass ``m(r) = m0 + e^2 * a0bar * lam * profile(r)`` where the
  saturation amplitude ``a0bar * lam`` is the coincidence self-energy
  ``(1/pi) int_0^inf C(omega/lam) d omega`` of the window (scheme
  dependent) and ``profile`` is the normalized running zeroth moment of
  ``k_R`` (so the transition happens on the same cutoff timescale and
  saturates exponentially fast).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special
from scipy.integrate import quad
from scipy.linalg import toeplitz

from .exceptions import ConfigError, DomainError, GridMismatchError, UnphysicalMassError
from .minkowski import mdot_arr
from .worldline import Trajectory

SCHEMES = ("exponential", "gaussian")


@dataclass(frozen=True)
class KernelConfig:
    """Cutoff scheme, scale, coupling, and initial field temperature.

    Parameters
    ----------
    cutoff_scheme : {"exponential", "gaussian"}
    lam : float
        High-frequency cutoff (inverse time), > 0.
    e_squared : float
        Coupling e^2, >= 0.
    beta : float
        Inverse temperature of the initial field state; ``math.inf`` = vacuum.
    kappa : float
        Late-time radiation-reaction prefactor; defaults to 1/(2 pi).
    """

    cutoff_scheme: str = "exponential"
    lam: float = 1.0
    e_squared: float = 1.0
    beta: float = math.inf
    kappa: float = 1.0 / (2.0 * math.pi)

    def __post_init__(self):
        if self.cutoff_scheme not in SCHEMES:
            raise ConfigError(f"unknown cutoff scheme {self.cutoff_scheme!r}")
        if not self.lam > 0.0:
            raise ConfigError("cutoff lam must be > 0")
        if self.e_squared < 0.0:
            raise ConfigError("e_squared must be >= 0")
        if not self.beta > 0.0:
            raise ConfigError("beta must be > 0 (math.inf for vacuum)")
        if not self.kappa > 0.0:
            raise ConfigError("rr prefactor kappa must be > 0")


def _shape_like(x, out):
    """Return a float for scalar input, else the array."""
    return float(out) if np.isscalar(x) or np.ndim(x) == 0 else out


def mollified_delta(s, config: KernelConfig):
    """Normalized retarded delta family: int_0^inf delta(s) ds = 1."""
    s_arr = np.asarray(s, dtype=float)
    lam = config.lam
    if config.cutoff_scheme == "exponential":
        out = np.where(s_arr >= 0.0, lam * np.exp(-lam * np.clip(s_arr, 0.0, None)), 0.0)
    else:
        out = np.where(s_arr >= 0.0,
                       (2.0 * lam / math.sqrt(math.pi)) * np.exp(-(lam * s_arr) ** 2), 0.0)
    return _shape_like(s, out)


def retarded_kernel(s, config: KernelConfig):
    """Regulated retarded kernel k_R(s); zero for s < 0, int_0^inf = lam/2."""
    out = 0.5 * config.lam * np.asarray(mollified_delta(s, config))
    return _shape_like(s, out)


def cutoff_window(omega, config: KernelConfig):
    """Frequency window C(omega/lam) shared by noise and dissipation spectra."""
    w = np.abs(np.asarray(omega, dtype=float)) / config.lam
    if config.cutoff_scheme == "exponential":
        out = np.exp(-w)
    else:
        out = np.exp(-(w ** 2))
    return _shape_like(omega, out)


def _omega_coth(omega, beta):
    """|omega| * coth(beta |omega| / 2), stable near 0 and for large arguments."""
    w0 = np.abs(np.asarray(omega, dtype=float))
    if math.isinf(beta):
        return w0
    w = np.atleast_1d(w0)
    x = 0.5 * beta * w
    out = np.empty_like(w)
    small = x < 1.0e-4
    big = x > 350.0
    mid = ~(small | big)
    # series: w coth(x) = 2/beta + beta w^2 / 6 + O(x^3 w)
    out[small] = 2.0 / beta + beta * w[small] ** 2 / 6.0
    out[big] = w[big]
    out[mid] = w[mid] * (1.0 + 2.0 / np.expm1(2.0 * x[mid]))
    return out.reshape(w0.shape)


def hadamard_spectrum(omega, config: KernelConfig):
    """Symmetric (anticommutator) noise spectrum S(omega) >= 0.

    ``S(omega) = |omega| coth(beta |omega|/2) C(omega/lam)``; in vacuum the
    coth factor is 1, and ``S(0) = 2/beta`` at finite temperature.
    """
    out = _omega_coth(omega, config.beta) * np.asarray(cutoff_window(omega, config))
    return _shape_like(omega, out)


def dissipation_spectrum(omega, config: KernelConfig):
    """Odd dissipation spectrum gamma(omega) = omega * C(omega/lam).

    This is the dissipative (odd-frequency) spectral function of the scheme's
    response kernel, built from the same window object as
    :func:`hadamard_spectrum` so that one config can never mix schemes.
    """
    w = np.asarray(omega, dtype=float)
    out = w * np.asarray(cutoff_window(omega, config))
    return _shape_like(omega, out)


def _noise_kernel_quad(s: float, config: KernelConfig) -> float:
    """k_H(s) by direct quadrature of the thermal spectrum (1/pi factor)."""
    beta, lam = config.beta, config.lam

    def f(w):
        return _omega_coth(np.array([w]), beta)[0] * float(cutoff_window(w, config))

    scale = lam ** 2 + (0.0 if math.isinf(beta) else 2.0 * lam / beta)
    s = abs(s)
    if s == 0.0:
        val, _ = quad(f, 0.0, np.inf, epsabs=1.0e-12 * scale, epsrel=1.0e-11, limit=400)
    else:
        val, _ = quad(f, 0.0, np.inf, weight="cos", wvar=s,
                      epsabs=1.0e-12 * scale, limit=400)
    return val / math.pi


def noise_kernel(s, config: KernelConfig):
    """Time-domain noise kernel k_H(s) = (1/pi) int_0^inf S cos(omega s) domega.

    Even in s. Vacuum kernels use closed forms; finite temperature falls back
    to adaptive Fourier quadrature per lag.
    """
    s_arr = np.abs(np.asarray(s, dtype=float))
    lam = config.lam
    if math.isinf(config.beta):
        if config.cutoff_scheme == "exponential":
            a = 1.0 / lam
            out = (a ** 2 - s_arr ** 2) / (a ** 2 + s_arr ** 2) ** 2 / math.pi
        else:
            x = lam * s_arr
            out = lam ** 2 / (2.0 * math.pi) * (1.0 - x * special.dawsn(0.5 * x))
    else:
        out = np.vectorize(lambda v: _noise_kernel_quad(v, config))(s_arr)
    return _shape_like(s, out)


# ---------------------------------------------------------------------------
# time-dependent radiation-reaction coefficient and effective mass

def _check_nonnegative(r):
    if np.any(np.asarray(r) < 0.0):
        raise DomainError("elapsed proper time r must be >= 0")


def g2_coefficient(r, config: KernelConfig):
    """Running coefficient of the (u a^2 + jerk) radiation-reaction structure.

    Normalized first moment of k_R: exactly 0 at r = 0, saturating at
    ``kappa`` on the cutoff timescale 1/lam, monotone nondecreasing, and with
    a late-time value independent of lam.
    """
    _check_nonnegative(r)
    x = config.lam * np.asarray(r, dtype=float)
    if config.cutoff_scheme == "exponential":
        out = config.kappa * (-np.expm1(-x) - x * np.exp(-x))
    else:
        out = config.kappa * (-np.expm1(-(x ** 2)))
    return _shape_like(r, out)


def g2_derivative(r, config: KernelConfig):
    """d g2 / dr, used by integrators that need the coefficient's slope."""
    _check_nonnegative(r)
    x = config.lam * np.asarray(r, dtype=float)
    if config.cutoff_scheme == "exponential":
        out = config.kappa * config.lam * x * np.exp(-x)
    else:
        out = config.kappa * config.lam * 2.0 * x * np.exp(-(x ** 2))
    return _shape_like(r, out)


def a0_constant(config: KernelConfig) -> float:
    """Late-time mass dressing per unit cutoff: m(inf) = m0 + a0 * lam.

    Equals ``e^2 / pi`` (exponential window) or ``e^2 / (2 sqrt(pi))``
    (gaussian window): the coincidence self-energy of the frequency window,
    ``(e^2 / pi) int_0^inf C(x) dx``.
    """
    if config.cutoff_scheme == "exponential":
        return config.e_squared / math.pi
    return config.e_squared / (2.0 * math.sqrt(math.pi))


def _mass_profile(r, config: KernelConfig):
    """Normalized running zeroth moment of k_R: 0 at r = 0, -> 1 on 1/lam."""
    x = config.lam * np.asarray(r, dtype=float)
    if config.cutoff_scheme == "exponential":
        return -np.expm1(-x)
    return special.erf(x)


def effective_mass(r, m0: float, config: KernelConfig):
    """Time-dependent dressed mass m(r) = m0 + e^2 a0bar lam profile(r).

    Exactly m0 at r = 0; monotone nondecreasing; saturates at m0 + a0 lam.

    Raises
    ------
    UnphysicalMassError
        If the mass is non-positive anywhere at the requested r.
    """
    _check_nonnegative(r)
    out = m0 + a0_constant(config) * config.lam * _mass_profile(r, config)
    if np.any(np.asarray(out) <= 0.0):
        raise UnphysicalMassError(
            f"effective mass non-positive (m0={m0}) on the requested range")
    return _shape_like(r, out)


def effective_mass_derivative(r, config: KernelConfig):
    """d m / dr for the dressed mass."""
    _check_nonnegative(r)
    x = config.lam * np.asarray(r, dtype=float)
    amp = a0_constant(config) * config.lam
    if config.cutoff_scheme == "exponential":
        out = amp * config.lam * np.exp(-x)
    else:
        out = amp * config.lam * (2.0 / math.sqrt(math.pi)) * np.exp(-(x ** 2))
    return _shape_like(r, out)


# ---------------------------------------------------------------------------
# kernel tables

@dataclass(frozen=True)
class DissipationKernelTable:
    """k_R sampled on a uniform grid of s >= 0."""

    s: np.ndarray
    values: np.ndarray
    config: KernelConfig


@dataclass(frozen=True)
class NoiseKernelTable:
    """k_H on a symmetric s grid plus its spectrum on an omega grid."""

    s: np.ndarray
    values: np.ndarray
    omega: np.ndarray
    spectrum: np.ndarray
    config: KernelConfig


def build_dissipation_table(config: KernelConfig, s_max: float, n: int = 1001) -> DissipationKernelTable:
    s = np.linspace(0.0, s_max, n)
    return DissipationKernelTable(s=s, values=np.asarray(retarded_kernel(s, config)), config=config)


def build_noise_table(config: KernelConfig, s_max: float, n: int = 1001) -> NoiseKernelTable:
    """Symmetric-lag noise kernel table; values are mirrored exactly in s -> -s."""
    half = np.linspace(0.0, s_max, n)
    vals_half = np.asarray(noise_kernel(half, config))
    s = np.concatenate([-half[:0:-1], half])
    values = np.concatenate([vals_half[:0:-1], vals_half])
    omega = np.linspace(-5.0 * config.lam, 5.0 * config.lam, 2 * n - 1)
    spectrum = np.asarray(hadamard_spectrum(omega, config))
    return NoiseKernelTable(s=s, values=values, omega=omega, spectrum=spectrum, config=config)


# ---------------------------------------------------------------------------
# decoherence

@lru_cache(maxsize=32)
def _thermal_kernel_interp(config: KernelConfig, s_max: float, n: int = 2049):
    grid = np.linspace(0.0, s_max, n)
    vals = np.asarray(noise_kernel(grid, config))
    return grid, vals


def _kernel_values(sep: np.ndarray, config: KernelConfig) -> np.ndarray:
    if math.isinf(config.beta):
        return np.asarray(noise_kernel(sep, config))
    s_max = float(np.max(sep)) if sep.size else 0.0
    grid, vals = _thermal_kernel_interp(config, s_max if s_max > 0 else 1.0)
    return np.interp(sep, grid, vals)


def decoherence_exponent(z: Trajectory, z_prime: Trajectory, config: KernelConfig,
                         kernel_argument: str = "proper_time") -> float:
    """Imaginary influence-action exponent for a pair of worldlines.

    Discretized double sum of the difference current against the regulated
    noise kernel, summed over the four components the noise generator treats
    as independent (the metric acts at force-application time, so this is the
    phase variance the sampled noise actually induces between the two
    histories). Nonnegative up to quadrature error; exactly zero for
    identical trajectories; quadratic in small separations.

    Parameters
    ----------
    kernel_argument : {"proper_time", "world_function"}
        Argument fed to k_H: the stationary proper-time lag (default), or the
        geodesic interval between mean-trajectory points.
    """
    if not z.same_grid(z_prime):
        raise GridMismatchError("trajectories must share the proper-time grid")
    du = z.velocity - z_prime.velocity
    if kernel_argument == "proper_time":
        lags = np.arange(len(z)) * z.dtau
        K = toeplitz(_kernel_values(lags, config))
    elif kernel_argument == "world_function":
        xm = 0.5 * (z.position + z_prime.position)
        dx = xm[:, None, :] - xm[None, :, :]
        sep = np.sqrt(np.clip(mdot_arr(dx, dx), 0.0, None))
        K = _kernel_values(sep, config)
    else:
        raise ValueError(f"unknown kernel_argument {kernel_argument!r}")
    q = float(np.einsum("ka,kl,la->", du, K, du))
    return config.e_squared * z.dtau ** 2 * q
