"""Worldline integrators and pathology diagnostics.

Three equations of motion share one fixed-step RK4 engine operating on
batched state arrays:

``ald_direct``
    The classical third-order self-force equation, integrated as the
    extended system (z, u, a) with the jerk solved from the equation of
    motion. Needs initial-acceleration data and exhibits the classical
    runaway unless started exactly on the non-runaway branch.

``landau_lifshitz``
    Reduced-order baseline: the jerk is replaced by the proper-time
    derivative of the external Lorentz force along the trajectory. Second
    order in (z, u), no acceleration data needed, no runaways.

``ald_langevin``
    The time-dependent-coefficient stochastic equation
    ``m(r) a = f_ext + e^2 g2(r) (u a.a + jerk) + eta`` with ``r`` the
    elapsed proper time. The radiation-reaction term vanishes identically at
    r = 0, so position and velocity alone fix the evolution; any supplied
    initial-acceleration hint is ignored. The jerk structure is closed
    self-consistently at first order in the coupling (acceleration evaluated
    from the equation itself, Landau-Lifshitz style, with the running
    coefficients m(r) and g2(r)), which keeps the dynamics causal and free
    of runaway modes for any cutoff. Sampled noise is treated pathwise as a
    smooth force (colored noise with correlation time >= 1/lam) and is
    projected orthogonal to the four-velocity before application unless
    ``project_noise`` is disabled.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

from .exceptions import ConfigError, DomainError, GridMismatchError, MassShellError
from .fields import ExternalField, field_tensor_arr, field_tensor_gradient_arr
from .kernels import (KernelConfig, effective_mass, effective_mass_derivative,
                      g2_coefficient)
from .minkowski import (FourVector, lower_arr, mdot_arr,
                        normalize_velocity, project_orthogonal_arr)
from .noise import NoisePath, derive_path_seed, sample_noise_path
from .worldline import Trajectory, WorldlineState

_trapz = getattr(np, "trapezoid", None) or np.trapz

INTEGRATORS = ("ald_direct", "landau_lifshitz", "ald_langevin")

#: mass-shell policy thresholds on |u.u - 1|
RENORM_TOL = 1.0e-6
ABORT_TOL = 1.0e-3

_REST = WorldlineState(tau=0.0, position=FourVector(),
                       velocity=FourVector(1.0, 0.0, 0.0, 0.0))


@dataclass(frozen=True)
class SimConfig:
    """Full description of one simulation run."""

    integrator: str
    field: ExternalField
    kernel: KernelConfig
    m0: float
    n_steps: int
    dtau: float
    ensemble_size: int = 1
    master_seed: int = 0
    initial_state: WorldlineState = _REST
    project_noise: bool = True
    noise_enabled: bool | None = None
    pad_factor: int = 4

    def __post_init__(self):
        if self.integrator not in INTEGRATORS:
            raise ConfigError(f"unknown integrator {self.integrator!r}")
        if not self.m0 > 0.0:
            raise ConfigError("bare mass m0 must be > 0")
        if self.n_steps < 1:
            raise ConfigError("n_steps must be >= 1")
        if not self.dtau > 0.0:
            raise ConfigError("dtau must be > 0")
        if self.ensemble_size < 1:
            raise ConfigError("ensemble_size must be >= 1")
        if self.integrator == "ald_langevin" and not self.dtau * self.kernel.lam < 0.2:
            raise ConfigError(
                "grid resolution: dtau * lambda must be < 0.2 to resolve the "
                f"kernel transition (got {self.dtau * self.kernel.lam:.3g})")
        if self.integrator != "ald_langevin" and self.ensemble_size > 1:
            raise ConfigError("ensembles are only meaningful for ald_langevin")
        if self.integrator == "ald_direct" and not self.kernel.e_squared > 0.0:
            raise ConfigError("ald_direct requires e_squared > 0")

    @property
    def charge(self) -> float:
        """Charge entering the Lorentz force; positive square root of e^2."""
        return math.sqrt(self.kernel.e_squared)

    @property
    def with_noise(self) -> bool:
        if self.integrator != "ald_langevin":
            return False
        return self.noise_enabled if self.noise_enabled is not None else True


@dataclass
class TrajectoryResult:
    """Integrated trajectory plus run diagnostics."""

    trajectory: Trajectory
    diagnostics: dict
    config: SimConfig
    noise_seed: int | None = None


# ---------------------------------------------------------------------------
# force building blocks

def radiation_reaction_force_arr(u: np.ndarray, a: np.ndarray, jerk: np.ndarray,
                                 coefficient: float) -> np.ndarray:
    """coefficient * ((a.a) u + jerk) on (..., 4) arrays."""
    return coefficient * (mdot_arr(a, a)[..., None] * u + jerk)


def ald_force(u: FourVector, a: FourVector, jerk: FourVector,
              config: KernelConfig) -> FourVector:
    """Late-time self-force e^2 kappa ((a.a) u + jerk).

    Vanishes identically for inertial and uniformly accelerated motion, and
    is Minkowski-orthogonal to u on shell (u.a = 0, u.jerk = -a.a).
    """
    out = radiation_reaction_force_arr(u.as_array(), a.as_array(), jerk.as_array(),
                                       config.e_squared * config.kappa)
    return FourVector.from_array(out)


def _lorentz(e: float, fld: ExternalField, z: np.ndarray, u: np.ndarray) -> np.ndarray:
    F = field_tensor_arr(fld, z)
    return e * np.einsum("...mn,...n->...m", F, lower_arr(u))


def _lorentz_and_derivative(e: float, fld: ExternalField, z: np.ndarray,
                            u: np.ndarray, a: np.ndarray):
    """(f_ext, d f_ext / dtau) along the flow with du/dtau = a."""
    F = field_tensor_arr(fld, z)
    ul = lower_arr(u)
    fext = e * np.einsum("...mn,...n->...m", F, ul)
    gradF = field_tensor_gradient_arr(fld, z)
    dF = np.einsum("...amn,...a->...mn", gradF, u)
    dfext = e * (np.einsum("...mn,...n->...m", dF, ul)
                 + np.einsum("...mn,...n->...m", F, lower_arr(a)))
    return fext, dfext


def _ald_rhs(y: np.ndarray, config: SimConfig) -> np.ndarray:
    z, u, a = y[:, 0:4], y[:, 4:8], y[:, 8:12]
    fext = _lorentz(config.charge, config.field, z, u)
    e2k = config.kernel.e_squared * config.kernel.kappa
    jerk = (config.m0 * a - fext) / e2k - mdot_arr(a, a)[:, None] * u
    return np.concatenate([u, a, jerk], axis=1)


def _ll_acceleration(z: np.ndarray, u: np.ndarray, config: SimConfig) -> np.ndarray:
    m0 = config.m0
    fext = _lorentz(config.charge, config.field, z, u)
    a0 = fext / m0
    e2k = config.kernel.e_squared * config.kernel.kappa
    if e2k > 0.0:
        _, dfext = _lorentz_and_derivative(config.charge, config.field, z, u, a0)
        frr = radiation_reaction_force_arr(u, a0, dfext / m0, e2k)
        frr = project_orthogonal_arr(frr, u)
    else:
        frr = 0.0
    return (fext + frr) / m0


def _ll_rhs(y: np.ndarray, config: SimConfig) -> np.ndarray:
    z, u = y[:, 0:4], y[:, 4:8]
    return np.concatenate([u, _ll_acceleration(z, u, config)], axis=1)


def _langevin_acceleration(r: float, z: np.ndarray, u: np.ndarray,
                           eta: np.ndarray, deta: np.ndarray,
                           config: SimConfig) -> np.ndarray:
    """Self-consistent acceleration of the running-coefficient equation."""
    kc = config.kernel
    m = effective_mass(r, config.m0, kc)
    mp = effective_mass_derivative(r, kc)
    g2 = g2_coefficient(r, kc)
    if config.project_noise:
        eta_u = mdot_arr(eta, u)[:, None]
        eta_eff = eta - eta_u * u
    else:
        eta_eff = eta
    fext = _lorentz(config.charge, config.field, z, u)
    a0 = (fext + eta_eff) / m
    _, dfext0 = _lorentz_and_derivative(config.charge, config.field, z, u, a0)
    if config.project_noise:
        deta_eff = (deta - mdot_arr(deta, u)[:, None] * u
                    - mdot_arr(eta, a0)[:, None] * u - eta_u * a0)
    else:
        deta_eff = deta
    da0 = (dfext0 + deta_eff) / m - a0 * (mp / m)
    frr = radiation_reaction_force_arr(u, a0, da0, kc.e_squared * g2)
    frr = project_orthogonal_arr(frr, u)
    return (fext + eta_eff + frr) / m


# ---------------------------------------------------------------------------
# engine

def _shell_policy(u: np.ndarray, extra: list[np.ndarray], counter: dict) -> None:
    """Renormalize-and-warn above RENORM_TOL, abort above ABORT_TOL.

    ``extra`` arrays (e.g. accelerations) are re-orthogonalized against the
    renormalized velocities in place.
    """
    if not np.all(np.isfinite(u)):
        raise MassShellError("non-finite state encountered")
    n2 = mdot_arr(u, u)
    drift = np.abs(n2 - 1.0)
    worst = drift.max()
    if worst > ABORT_TOL:
        raise MassShellError(f"mass-shell drift {worst:.3e} above abort threshold")
    mask = drift > RENORM_TOL
    if np.any(mask):
        if counter["renormalizations"] == 0:
            warnings.warn("mass-shell drift above renormalization threshold; "
                          "renormalizing velocity", RuntimeWarning, stacklevel=3)
        counter["renormalizations"] += int(mask.sum())
        u[mask] /= np.sqrt(n2[mask])[:, None]
        for arr in extra:
            au = mdot_arr(arr[mask], u[mask])[:, None]
            arr[mask] = arr[mask] - au * u[mask]


def _initial_arrays(config: SimConfig, batch: int):
    st = config.initial_state
    u0 = normalize_velocity(st.velocity).as_array()
    z0 = st.position.as_array()
    z = np.tile(z0, (batch, 1))
    u = np.tile(u0, (batch, 1))
    return z, u


def _default_ald_acceleration(z: np.ndarray, u: np.ndarray, config: SimConfig) -> np.ndarray:
    # non-runaway branch selection: Landau-Lifshitz value
    return _ll_acceleration(z, u, config)


def _run_third_order(config: SimConfig, n_steps: int):
    """ald_direct engine; returns node arrays (z, u, a, jerk, drift, counter)."""
    z, u = _initial_arrays(config, 1)
    st = config.initial_state
    if st.acceleration is not None:
        a = np.tile(st.acceleration.as_array(), (1, 1))
        a = project_orthogonal_arr(a, u)  # keep u.a = 0 exactly at start
    else:
        a = _default_ald_acceleration(z, u, config)
    y = np.concatenate([z, u, a], axis=1)
    h = config.dtau
    counter = {"renormalizations": 0}
    pos = np.empty((n_steps + 1, 4))
    vel = np.empty((n_steps + 1, 4))
    acc = np.empty((n_steps + 1, 4))
    drift = np.empty(n_steps + 1)
    for k in range(n_steps + 1):
        pos[k], vel[k], acc[k] = y[0, 0:4], y[0, 4:8], y[0, 8:12]
        drift[k] = abs(mdot_arr(y[:, 4:8], y[:, 4:8])[0] - 1.0)
        if k == n_steps:
            break
        k1 = _ald_rhs(y, config)
        k2 = _ald_rhs(y + 0.5 * h * k1, config)
        k3 = _ald_rhs(y + 0.5 * h * k2, config)
        k4 = _ald_rhs(y + h * k3, config)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        _shell_policy(y[:, 4:8], [y[:, 8:12]], counter)
    return pos, vel, acc, drift, counter


def _run_second_order(config: SimConfig, n_steps: int, accel_fn):
    """Shared (z, u) engine for landau_lifshitz and deterministic rhs closures.

    ``accel_fn(r, z, u) -> a`` evaluates the acceleration; batching is over
    the leading axis of z/u.
    """
    batch = config.ensemble_size if config.integrator == "ald_langevin" else 1
    z, u = _initial_arrays(config, batch)
    y = np.concatenate([z, u], axis=1)
    h = config.dtau
    counter = {"renormalizations": 0}
    pos = np.empty((batch, n_steps + 1, 4))
    vel = np.empty((batch, n_steps + 1, 4))
    acc = np.empty((batch, n_steps + 1, 4))
    drift = np.empty((batch, n_steps + 1))

    def rhs(r, yy):
        a = accel_fn(r, yy[:, 0:4], yy[:, 4:8])
        return np.concatenate([yy[:, 4:8], a], axis=1)

    for k in range(n_steps + 1):
        r = k * h
        pos[:, k], vel[:, k] = y[:, 0:4], y[:, 4:8]
        acc[:, k] = accel_fn(r, y[:, 0:4], y[:, 4:8])
        drift[:, k] = np.abs(mdot_arr(y[:, 4:8], y[:, 4:8]) - 1.0)
        if k == n_steps:
            break
        k1 = rhs(r, y)
        k2 = rhs(r + 0.5 * h, y + 0.5 * h * k1)
        k3 = rhs(r + 0.5 * h, y + 0.5 * h * k2)
        k4 = rhs(r + h, y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        _shell_policy(y[:, 4:8], [], counter)
    return pos, vel, acc, drift, counter


def _run_langevin(config: SimConfig, eta: np.ndarray):
    """Batched langevin engine; eta has shape (batch, n_steps + 1, 4)."""
    n_steps = config.n_steps
    h = config.dtau
    batch = eta.shape[0]
    # pathwise derivative of the sampled noise (central differences)
    deta = np.gradient(eta, h, axis=1)
    z, u = _initial_arrays(config, batch)
    y = np.concatenate([z, u], axis=1)
    counter = {"renormalizations": 0}
    pos = np.empty((batch, n_steps + 1, 4))
    vel = np.empty((batch, n_steps + 1, 4))
    acc = np.empty((batch, n_steps + 1, 4))
    drift = np.empty((batch, n_steps + 1))

    def rhs(r, yy, e_val, de_val):
        a = _langevin_acceleration(r, yy[:, 0:4], yy[:, 4:8], e_val, de_val, config)
        return np.concatenate([yy[:, 4:8], a], axis=1)

    for k in range(n_steps + 1):
        r = k * h
        pos[:, k], vel[:, k] = y[:, 0:4], y[:, 4:8]
        acc[:, k] = _langevin_acceleration(r, y[:, 0:4], y[:, 4:8],
                                           eta[:, k], deta[:, k], config)
        drift[:, k] = np.abs(mdot_arr(y[:, 4:8], y[:, 4:8]) - 1.0)
        if k == n_steps:
            break
        e0, e1 = eta[:, k], eta[:, k + 1]
        de0, de1 = deta[:, k], deta[:, k + 1]
        em, dem = 0.5 * (e0 + e1), 0.5 * (de0 + de1)
        k1 = rhs(r, y, e0, de0)
        k2 = rhs(r + 0.5 * h, y + 0.5 * h * k1, em, dem)
        k3 = rhs(r + 0.5 * h, y + 0.5 * h * k2, em, dem)
        k4 = rhs(r + h, y + h * k3, e1, de1)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        _shell_policy(y[:, 4:8], [], counter)
    return pos, vel, acc, drift, counter


# ---------------------------------------------------------------------------
# public stepping / integration API

def _single_step(state: WorldlineState, config: SimConfig, third_order: bool) -> WorldlineState:
    cfg = _replace_initial(config, state)
    if third_order:
        pos, vel, acc, _, _ = _run_third_order(cfg, 1)
        jerk = _ald_rhs(np.concatenate([pos[1:2], vel[1:2], acc[1:2]], axis=1), cfg)[0, 8:12]
        return WorldlineState(tau=state.tau + config.dtau,
                              position=FourVector.from_array(pos[1]),
                              velocity=FourVector.from_array(vel[1]),
                              acceleration=FourVector.from_array(acc[1]),
                              jerk=FourVector.from_array(jerk))
    pos, vel, acc, _, _ = _run_second_order(
        cfg, 1, lambda r, z, u: _ll_acceleration(z, u, cfg))
    return WorldlineState(tau=state.tau + config.dtau,
                          position=FourVector.from_array(pos[0, 1]),
                          velocity=FourVector.from_array(vel[0, 1]),
                          acceleration=FourVector.from_array(acc[0, 1]))


def _replace_initial(config: SimConfig, state: WorldlineState) -> SimConfig:
    return replace(config, initial_state=state, n_steps=1, ensemble_size=1)


def step_ald(state: WorldlineState, config: SimConfig) -> WorldlineState:
    """One RK4 step of the third-order self-force system.

    Needs acceleration data in ``state`` (defaults to the Landau-Lifshitz
    value when absent). Mass-shell drift policy: renormalize-and-warn above
    1e-6, abort above 1e-3.
    """
    if not config.kernel.e_squared > 0.0:
        raise ConfigError("third-order stepping requires e_squared > 0")
    return _single_step(state, config, third_order=True)


def step_landau_lifshitz(state: WorldlineState, config: SimConfig) -> WorldlineState:
    """One RK4 step of the reduced-order system; no acceleration data needed."""
    return _single_step(state, config, third_order=False)


def _diagnostics(traj: Trajectory, config: SimConfig) -> dict:
    fext = _lorentz(config.charge, config.field, traj.position, traj.velocity)
    work = float(_trapz(fext[:, 0], dx=traj.dtau))
    e2k = config.kernel.e_squared * config.kernel.kappa
    radiated = float(e2k * _trapz(
        np.clip(-mdot_arr(traj.acceleration, traj.acceleration), 0.0, None),
        dx=traj.dtau))
    diag = {
        "mass_shell_drift_max": float(traj.drift.max()),
        "work_external": work,
        "energy_radiated": radiated,
        "runaway": False,
        "runaway_rate": 0.0,
    }
    if len(traj) >= 100:
        fit = _fit_runaway(traj)
        diag["runaway"] = fit.flag
        diag["runaway_rate"] = fit.efold_rate
    return diag


def integrate_ald(config: SimConfig) -> TrajectoryResult:
    """Integrate the classical third-order equation for config.n_steps steps."""
    pos, vel, acc, drift, counter = _run_third_order(config, config.n_steps)
    traj = Trajectory(config.dtau, config.initial_state.tau, pos, vel, acc, drift)
    diag = _diagnostics(traj, config)
    diag["renormalizations"] = counter["renormalizations"]
    return TrajectoryResult(trajectory=traj, diagnostics=diag, config=config)


def integrate_landau_lifshitz(config: SimConfig) -> TrajectoryResult:
    """Integrate the reduced-order baseline for config.n_steps steps."""
    pos, vel, acc, drift, counter = _run_second_order(
        config, config.n_steps, lambda r, z, u: _ll_acceleration(z, u, config))
    traj = Trajectory(config.dtau, config.initial_state.tau,
                      pos[0], vel[0], acc[0], drift[0])
    diag = _diagnostics(traj, config)
    diag["renormalizations"] = counter["renormalizations"]
    return TrajectoryResult(trajectory=traj, diagnostics=diag, config=config)


def integrate_langevin(config: SimConfig, noise: NoisePath) -> TrajectoryResult:
    """Integrate the running-coefficient equation against one noise path.

    Deterministic given (config, noise). The noise grid must match the run
    grid and provide at least n_steps + 1 samples. Any initial-acceleration
    hint in the config is ignored: at r = 0 the radiation-reaction term
    vanishes, so position and velocity alone determine the evolution.
    """
    if noise.dtau != config.dtau:
        raise GridMismatchError(
            f"noise dtau {noise.dtau} != run dtau {config.dtau}")
    if len(noise) < config.n_steps + 1:
        raise GridMismatchError("noise path shorter than the run grid")
    # refuse to run with a non-positive dressed mass anywhere on the range
    effective_mass(np.array([0.0, config.n_steps * config.dtau]), config.m0, config.kernel)
    eta = noise.samples[None, :config.n_steps + 1, :]
    pos, vel, acc, drift, counter = _run_langevin(config, eta)
    traj = Trajectory(config.dtau, config.initial_state.tau,
                      pos[0], vel[0], acc[0], drift[0])
    diag = _diagnostics(traj, config)
    diag["renormalizations"] = counter["renormalizations"]
    return TrajectoryResult(trajectory=traj, diagnostics=diag, config=config,
                            noise_seed=noise.seed)


def run_paths(config: SimConfig, indices: list[int] | None = None) -> list[TrajectoryResult]:
    """Run the configured simulation for the given ensemble path indices.

    Deterministic integrators ignore ``indices`` and return one result.
    Langevin ensembles derive one seed per path index from the master seed,
    so results are independent of how indices are partitioned across workers.
    """
    if config.integrator == "ald_direct":
        return [integrate_ald(config)]
    if config.integrator == "landau_lifshitz":
        return [integrate_landau_lifshitz(config)]
    if indices is None:
        indices = list(range(config.ensemble_size))
    n_grid = config.n_steps + 1
    seeds = [derive_path_seed(config.master_seed, i) for i in indices]
    if config.with_noise:
        paths = [sample_noise_path(config.kernel, n_grid, config.dtau, s,
                                   config.pad_factor) for s in seeds]
        eta = np.stack([p.samples for p in paths])
    else:
        eta = np.zeros((len(indices), n_grid, 4))
    pos, vel, acc, drift, counter = _run_langevin(config, eta)
    results = []
    for j, (idx, seed) in enumerate(zip(indices, seeds)):
        traj = Trajectory(config.dtau, config.initial_state.tau,
                          pos[j], vel[j], acc[j], drift[j])
        diag = _diagnostics(traj, config)
        diag["renormalizations"] = counter["renormalizations"]
        diag["path_index"] = idx
        results.append(TrajectoryResult(trajectory=traj, diagnostics=diag,
                                        config=config,
                                        noise_seed=seed if config.with_noise else None))
    return results


def run_simulation(config: SimConfig) -> list[TrajectoryResult]:
    """Run the full configured ensemble in-process."""
    return run_paths(config)


# ---------------------------------------------------------------------------
# diagnostics

@dataclass(frozen=True)
class RunawayDiagnostic:
    flag: bool
    efold_rate: float
    r_squared: float


def _fit_runaway(traj: Trajectory) -> RunawayDiagnostic:
    n = len(traj)
    lo = 2 * n // 3
    aa = np.clip(-mdot_arr(traj.acceleration[lo:], traj.acceleration[lo:]), 0.0, None)
    alpha = np.sqrt(aa)
    tau = traj.tau[lo:]
    mask = alpha > 1.0e-150
    if mask.sum() < max(10, len(alpha) // 2):
        return RunawayDiagnostic(False, 0.0, 0.0)
    t, y = tau[mask], np.log(alpha[mask])
    ss_tot = float(((y - y.mean()) ** 2).sum())
    if ss_tot < 1.0e-20:
        return RunawayDiagnostic(False, 0.0, 0.0)
    slope, intercept = np.polyfit(t, y, 1)
    resid = y - (slope * t + intercept)
    r2 = 1.0 - float((resid ** 2).sum()) / ss_tot
    return RunawayDiagnostic(bool(slope > 0.0 and r2 > 0.99), float(slope), r2)


def runaway_diagnostic(result: TrajectoryResult) -> RunawayDiagnostic:
    """Fit log proper acceleration over the final third of the run.

    flag is True when the fitted e-fold rate is positive with R^2 > 0.99;
    degenerate (vanishing-acceleration) trajectories report (False, 0).
    """
    if len(result.trajectory) < 100:
        raise ValueError("runaway diagnostic needs >= 100 samples")
    return _fit_runaway(result.trajectory)


def preacceleration_reference(F0: float, m: float, tau0: float, t) -> float | np.ndarray:
    """Non-runaway 1D nonrelativistic acceleration for a step force F0 theta(t).

    a(t) = (F0/m) exp(t/tau0) for t < 0 (acausal pre-acceleration) and F0/m
    afterwards.
    """
    if not tau0 > 0.0:
        raise DomainError("tau0 must be > 0")
    t_arr = np.asarray(t, dtype=float)
    out = np.where(t_arr < 0.0, (F0 / m) * np.exp(t_arr / tau0), F0 / m)
    return float(out) if np.ndim(t) == 0 else out


def energy_audit(result: TrajectoryResult) -> dict:
    """Work/energy bookkeeping for a deterministic run.

    Reports the proper-time integral of the external force's time component,
    the change in m (u^0 - 1) (energy above rest; uses the running mass for
    langevin runs so the rest-mass dressing does not enter), and the
    worst-node orthogonality residual of the radiation-reaction force,
    |f_RR . u| = |m (u.a) - f_ext.u|.
    """
    cfg = result.config
    traj = result.trajectory
    fext = _lorentz(cfg.charge, cfg.field, traj.position, traj.velocity)
    work = float(_trapz(fext[:, 0], dx=traj.dtau))
    if cfg.integrator == "ald_langevin":
        r = traj.tau - traj.tau0
        m = np.asarray(effective_mass(r, cfg.m0, cfg.kernel))
    else:
        m = np.full(len(traj), cfg.m0)
    kinetic = float(m[-1] * (traj.velocity[-1, 0] - 1.0)
                    - m[0] * (traj.velocity[0, 0] - 1.0))
    rr_dot_u = m * mdot_arr(traj.velocity, traj.acceleration) - mdot_arr(fext, traj.velocity)
    return {
        "work_external": work,
        "kinetic_change": kinetic,
        "max_rr_orthogonality": float(np.abs(rr_dot_u).max()),
    }
