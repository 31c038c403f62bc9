"""Fluctuation-dissipation consistency checks between noise and dissipation.

The stationary relation tested here is ``S(omega) = gamma(omega) *
coth(beta omega / 2)`` on positive frequencies, with ``gamma`` the odd
dissipation spectrum and ``S`` the symmetric noise spectrum. Both sides are
built from the window object of a single :class:`KernelConfig`, so a passing
check validates the whole pipeline (grids, windows, temperature factors);
mixing schemes between the two sides is only possible by explicitly passing
a second config, which is the intended negative control.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError
from .kernels import KernelConfig, dissipation_spectrum, hadamard_spectrum

#: points with gamma below this are excluded from the ratio (and reported)
GAMMA_FLOOR = 1.0e-14

#: FDR pass tolerance on |ratio - 1|
FDR_TOL = 1.0e-6


@dataclass(frozen=True)
class SpectrumPair:
    """Dissipation spectrum gamma and noise spectrum S on one omega > 0 grid."""

    omega: np.ndarray
    gamma: np.ndarray
    noise: np.ndarray
    beta: float
    dissipation_scheme: str
    noise_scheme: str


@dataclass(frozen=True)
class FdrReport:
    scheme: str
    beta: float
    lam: float
    omega: np.ndarray
    ratio: np.ndarray
    excluded: np.ndarray
    max_abs_deviation: float
    passed: bool

    def as_dict(self) -> dict:
        return {
            "scheme": self.scheme,
            "beta": None if math.isinf(self.beta) else self.beta,
            "lambda": self.lam,
            "max_abs_deviation": self.max_abs_deviation,
            "pass": self.passed,
            "n_points": int(len(self.omega)),
            "n_excluded": int(self.excluded.sum()),
        }


def default_omega_grid(config: KernelConfig, n: int = 400) -> np.ndarray:
    """Log-spaced positive frequencies spanning the checked band."""
    return np.geomspace(config.lam / 100.0, 5.0 * config.lam, n)


def build_spectrum_pair(config: KernelConfig, omega_grid=None,
                        dissipation_config: KernelConfig | None = None) -> SpectrumPair:
    """Assemble the (gamma, S) pair on a positive-frequency grid.

    ``dissipation_config`` substitutes a different config for the gamma side;
    that breaks the single-config consistency on purpose and exists for
    negative-control validation only.
    """
    omega = default_omega_grid(config) if omega_grid is None else np.asarray(omega_grid, float)
    if np.any(omega <= 0.0):
        raise DomainError("fdr omega grid must be strictly positive")
    dcfg = dissipation_config if dissipation_config is not None else config
    return SpectrumPair(
        omega=omega,
        gamma=np.asarray(dissipation_spectrum(omega, dcfg)),
        noise=np.asarray(hadamard_spectrum(omega, config)),
        beta=config.beta,
        dissipation_scheme=dcfg.cutoff_scheme,
        noise_scheme=config.cutoff_scheme,
    )


def _coth(x: np.ndarray) -> np.ndarray:
    out = np.ones_like(x)
    mid = x < 350.0
    out[mid] = 1.0 + 2.0 / np.expm1(2.0 * x[mid])
    return out


def fdr_check_pair(pair: SpectrumPair, lam: float) -> FdrReport:
    """Ratio S / (gamma coth(beta omega / 2)) per grid point, with pass flag."""
    excluded = pair.gamma < GAMMA_FLOOR
    factor = np.ones_like(pair.omega) if math.isinf(pair.beta) \
        else _coth(0.5 * pair.beta * pair.omega)
    ratio = np.full_like(pair.omega, np.nan)
    ok = ~excluded
    ratio[ok] = pair.noise[ok] / (pair.gamma[ok] * factor[ok])
    if excluded.any():
        warnings.warn(f"fdr_check: {int(excluded.sum())} grid points excluded "
                      f"(gamma below {GAMMA_FLOOR:g})", RuntimeWarning, stacklevel=2)
    deviations = np.abs(ratio[ok] - 1.0)
    max_dev = float(deviations.max()) if deviations.size else math.inf
    passed = bool(deviations.size > 0 and max_dev <= FDR_TOL)
    return FdrReport(scheme=pair.noise_scheme if pair.noise_scheme == pair.dissipation_scheme
                     else f"{pair.noise_scheme}/{pair.dissipation_scheme}",
                     beta=pair.beta, lam=lam, omega=pair.omega, ratio=ratio,
                     excluded=excluded, max_abs_deviation=max_dev, passed=passed)


def fdr_check(config: KernelConfig, omega_grid=None,
              dissipation_config: KernelConfig | None = None) -> FdrReport:
    """Check fluctuation-dissipation consistency for one kernel config.

    PASS means every non-excluded ratio lies within 1 +/- 1e-6 over the
    default band [lam/100, 5 lam] (or the supplied grid).
    """
    pair = build_spectrum_pair(config, omega_grid, dissipation_config)
    return fdr_check_pair(pair, config.lam)


def spectral_transform(s_grid: np.ndarray, values: np.ndarray):
    """Discrete Fourier transform of a real kernel on a uniform symmetric grid.

    Normalization: ``S(omega) = integral k(s) exp(i omega s) ds``, discretized
    with spacing ``ds`` (the same convention the noise sampler assumes). Even
    real input maps to even real output; the imaginary part is discarded
    after an oddness sanity bound. Tails that have not decayed below 1e-10 of
    the peak trigger a windowing warning.

    Returns
    -------
    (omega, transform) : two ascending arrays
    """
    s = np.asarray(s_grid, dtype=float)
    v = np.asarray(values, dtype=float)
    if s.ndim != 1 or s.shape != v.shape or len(s) < 8:
        raise ValueError("need matching 1-d grids with at least 8 points")
    ds = s[1] - s[0]
    if not np.allclose(np.diff(s), ds, rtol=1.0e-12, atol=1.0e-12 * abs(ds)):
        raise ValueError("s grid must be uniform")
    peak = np.abs(v).max()
    if peak > 0 and max(abs(v[0]), abs(v[-1])) > 1.0e-10 * peak:
        warnings.warn("kernel tails not decayed at the grid boundary; "
                      "transform will be windowed", RuntimeWarning, stacklevel=2)
    n = len(s)
    omega = 2.0 * math.pi * np.fft.fftfreq(n, d=ds)
    # sum_j v_j exp(+i omega_k s_j) = n * ifft(v)_k * exp(i omega_k s_0)
    spec = n * np.fft.ifft(v) * ds * np.exp(1j * omega * s[0])
    order = np.argsort(omega)
    return omega[order], spec.real[order]
