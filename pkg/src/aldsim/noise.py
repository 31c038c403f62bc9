"""Stationary Gaussian colored-noise paths matching the regulated noise kernel.

Each of the four force components is sampled independently with the target
autocovariance ``k_H``; the metric structure of the correlator is realized
downstream when the force is applied (projection orthogonal to the
four-velocity). Sampling is by circulant embedding of the exact kernel values
on a zero-padded grid: embedding eigenvalues that come out (slightly)
negative are clipped to zero with a logged warning, which degrades the match
gracefully instead of failing.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .exceptions import GridMismatchError, SpectrumError
from .kernels import KernelConfig, noise_kernel
from .minkowski import FourVector

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    """One splitmix64 scrambling step (public-domain constants)."""
    x = (x + _GOLDEN) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_path_seed(master_seed: int, index: int) -> int:
    """Per-path seed rule: seed_k = splitmix64(master XOR (k+1)*golden).

    Pure function of (master seed, path index), so ensembles are reproducible
    for any worker partitioning.
    """
    return splitmix64((master_seed & _MASK64) ^ (((index + 1) * _GOLDEN) & _MASK64))


@dataclass(frozen=True)
class NoisePath:
    """One sampled noise history on a uniform proper-time grid.

    ``samples`` has shape (n, 4) holding the (t, x, y, z) force components.
    """

    dtau: float
    samples: np.ndarray
    seed: int
    spectrum_meta: dict

    def __len__(self) -> int:
        return len(self.samples)

    def sample(self, k: int) -> FourVector:
        return FourVector.from_array(self.samples[k])

    @property
    def tau(self) -> np.ndarray:
        return np.arange(len(self.samples)) * self.dtau


def _embedding_size(n_steps: int, pad_factor: int) -> int:
    m = pad_factor * n_steps
    return m + (m % 2)


@lru_cache(maxsize=64)
def _embedding_eigenvalues(config: KernelConfig, dtau: float, m: int) -> np.ndarray:
    """Eigenvalues of the circulant embedding of the lag-sampled kernel."""
    half = np.arange(m // 2 + 1) * dtau
    cov = np.asarray(noise_kernel(half, config))
    return circulant_eigenvalues(cov)


def circulant_eigenvalues(cov: np.ndarray) -> np.ndarray:
    """Clipped eigenvalues of the circulant extension of autocovariances.

    ``cov`` holds target autocovariance at lags 0..m/2. Negative eigenvalues
    (embedding failure) are clipped to zero and reported with a warning.
    """
    row = np.concatenate([cov, cov[-2:0:-1]])
    lam = np.fft.fft(row).real
    floor = -1.0e-10 * max(lam.max(), 1.0e-300)
    if lam.min() < floor:
        warnings.warn(
            "circulant embedding not nonnegative-definite "
            f"(min eigenvalue {lam.min():.3e}); falling back to spectral truncation",
            RuntimeWarning, stacklevel=2)
    return np.clip(lam, 0.0, None)


def _draw_paths(lam: np.ndarray, n: int, n_series: int, rng: np.random.Generator) -> np.ndarray:
    """Sample n_series independent stationary series of length n."""
    m = len(lam)
    w = rng.standard_normal((n_series, m)) + 1j * rng.standard_normal((n_series, m))
    y = math.sqrt(m) * np.fft.ifft(np.sqrt(lam) * w, axis=1)
    return y.real[:, :n]


def sample_stationary_gaussian(cov: np.ndarray, n_steps: int, n_series: int,
                               rng: np.random.Generator) -> np.ndarray:
    """Zero-mean stationary Gaussian series with given target autocovariance.

    Parameters
    ----------
    cov : array
        Target autocovariance at lags 0..m/2 of the embedding grid
        (``len(cov) = m/2 + 1``, m even); must come from a valid (pointwise
        nonnegative) spectrum.
    n_steps : int
        Number of grid samples to return per series (n_steps <= m).
    n_series : int
        Number of independent series.
    rng : numpy Generator
        Consumed in a fixed order; same state => bit-identical output.
    """
    lam = circulant_eigenvalues(np.asarray(cov, dtype=float))
    return _draw_paths(lam, n_steps, n_series, rng)


def sample_noise_path(config: KernelConfig, n_steps: int, dtau: float, seed: int,
                      pad_factor: int = 4) -> NoisePath:
    """Sample one four-component noise path of ``n_steps`` grid samples.

    Deterministic given (config, n_steps, dtau, seed, pad_factor). The
    embedding grid is the simulation grid zero-padded by ``pad_factor`` to
    suppress circular-correlation artifacts.
    """
    if n_steps < 2:
        raise ValueError("n_steps must be >= 2")
    if dtau <= 0.0:
        raise ValueError("dtau must be > 0")
    m = _embedding_size(n_steps, pad_factor)
    lam = _embedding_eigenvalues(config, float(dtau), m)
    rng = np.random.default_rng(seed)
    series = _draw_paths(lam, n_steps, 4, rng)
    meta = {"scheme": config.cutoff_scheme, "lambda": config.lam,
            "beta": config.beta, "pad_factor": pad_factor, "dtau": float(dtau)}
    return NoisePath(dtau=float(dtau), samples=series.T.copy(), seed=int(seed),
                     spectrum_meta=meta)


def sample_noise_path_from_spectrum(spectrum_values: np.ndarray, omega_step: float,
                                    n_steps: int, dtau: float, seed: int) -> NoisePath:
    """Sample a path from an explicit nonnegative spectrum on a uniform grid.

    ``spectrum_values[k] = S(k * omega_step)`` for k = 0..K. The target
    autocovariance is the cosine transform (1/pi) int S cos(omega s) domega,
    discretized by the trapezoid rule. Mostly useful for validation runs with
    synthetic (flat, zero, ...) spectra.
    """
    S = np.asarray(spectrum_values, dtype=float)
    if np.any(S < 0.0):
        raise SpectrumError("spectrum values must be nonnegative")
    m = _embedding_size(n_steps, 4)
    lags = np.arange(m // 2 + 1) * dtau
    weights = np.full(len(S), omega_step)
    weights[0] = weights[-1] = 0.5 * omega_step
    omega = np.arange(len(S)) * omega_step
    cov = (np.cos(np.outer(lags, omega)) @ (weights * S)) / math.pi
    rng = np.random.default_rng(seed)
    series = sample_stationary_gaussian(cov, n_steps, 4, rng)
    meta = {"scheme": "explicit", "omega_step": omega_step, "dtau": float(dtau),
            "pad_factor": 4}
    return NoisePath(dtau=float(dtau), samples=series.T.copy(), seed=int(seed),
                     spectrum_meta=meta)


def sample_noise_path_along(config: KernelConfig, trajectory, seed: int) -> NoisePath:
    """Sample noise with the kernel evaluated along a mean trajectory.

    The covariance matrix is ``k_H`` of the geodesic interval between
    trajectory points (world-function argument), sampled by eigenvalue
    factorization. Reduces to the stationary kernel for inertial histories.
    This is the optional self-consistent mode; the stationary sampler is the
    default elsewhere.
    """
    from .kernels import _kernel_values  # local import to keep module load light
    from .minkowski import mdot_arr

    x = trajectory.position
    dx = x[:, None, :] - x[None, :, :]
    sep = np.sqrt(np.clip(mdot_arr(dx, dx), 0.0, None))
    K = _kernel_values(sep, config)
    evals, evecs = np.linalg.eigh(K)
    floor = -1.0e-10 * max(evals.max(), 1.0e-300)
    if evals.min() < floor:
        warnings.warn("world-function covariance not nonnegative-definite; "
                      "clipping negative eigenvalues", RuntimeWarning, stacklevel=2)
    root = evecs * np.sqrt(np.clip(evals, 0.0, None))
    rng = np.random.default_rng(seed)
    xi = rng.standard_normal((4, len(x)))
    series = xi @ root.T
    meta = {"scheme": config.cutoff_scheme, "lambda": config.lam,
            "beta": config.beta, "mode": "world_function",
            "dtau": float(trajectory.dtau)}
    return NoisePath(dtau=float(trajectory.dtau), samples=series.T.copy(),
                     seed=int(seed), spectrum_meta=meta)


@dataclass(frozen=True)
class AutocovarianceEstimate:
    """Ensemble autocovariance per component with per-lag standard errors."""

    lags: np.ndarray
    values: np.ndarray   # (n_lags, 4)
    stderr: np.ndarray   # (n_lags, 4)
    n_paths: int


def autocovariance_estimate(paths: list[NoisePath], max_lag: int) -> AutocovarianceEstimate:
    """Unbiased ensemble estimator of the lag autocovariance per component.

    All paths must share the grid. The per-path estimator at lag l is
    ``sum_k x_k x_{k+l} / (n - l)`` (zero-mean process); the ensemble value is
    its average over paths and the standard error is the path-to-path spread.
    """
    if len(paths) < 2:
        raise ValueError("need at least 2 paths")
    n = len(paths[0])
    dtau = paths[0].dtau
    for p in paths[1:]:
        if len(p) != n or p.dtau != dtau:
            raise GridMismatchError("noise paths must share the proper-time grid")
    if not 0 <= max_lag < n:
        raise ValueError("max_lag must satisfy 0 <= max_lag < n_steps")
    nfft = 2 * n
    norm = (n - np.arange(max_lag + 1))[None, :, None]
    total = np.zeros((max_lag + 1, 4))
    total_sq = np.zeros((max_lag + 1, 4))
    for lo in range(0, len(paths), 512):         # chunked to bound FFT memory
        data = np.stack([p.samples for p in paths[lo:lo + 512]])
        spec = np.abs(np.fft.rfft(data, n=nfft, axis=1)) ** 2
        raw = np.fft.irfft(spec, n=nfft, axis=1)[:, :max_lag + 1, :] / norm
        total += raw.sum(axis=0)
        total_sq += (raw ** 2).sum(axis=0)
    m = len(paths)
    values = total / m
    var = (total_sq - m * values ** 2) / (m - 1)
    stderr = np.sqrt(np.clip(var, 0.0, None) / m)
    return AutocovarianceEstimate(lags=np.arange(max_lag + 1) * dtau,
                                  values=values, stderr=stderr, n_paths=m)
