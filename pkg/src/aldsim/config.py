"""YAML run-configuration parsing with fail-closed validation.

Unknown keys anywhere in the tree are rejected, every value is type- and
range-checked, and all physical quantities are plain numbers in natural
units. See README for the schema.
"""

from __future__ import annotations

import math
from pathlib import Path

import yaml

from .dynamics import INTEGRATORS, SimConfig
from .exceptions import ConfigError
from .fields import ExternalField
from .kernels import SCHEMES, KernelConfig
from .minkowski import FourVector
from .worldline import WorldlineState

TOP_KEYS = ("integrator", "m0", "n_steps", "dtau", "ensemble_size",
            "master_seed", "kernel", "field", "initial_state", "noise", "output")

COMPONENTS = ("t", "x", "y", "z", "ut", "ux", "uy", "uz",
              "at", "ax", "ay", "az", "mass_shell_drift")


def _require_map(d, where: str) -> dict:
    if d is None:
        return {}
    if not isinstance(d, dict):
        raise ConfigError(f"{where}: expected a mapping")
    return d


def _check_keys(d: dict, allowed, where: str) -> None:
    unknown = sorted(set(d) - set(allowed))
    if unknown:
        raise ConfigError(f"{where}: unknown keys {unknown}")


def _number(d: dict, key: str, where: str, default=None, positive=False,
            nonnegative=False, allow_inf=False):
    if key not in d:
        if default is None:
            raise ConfigError(f"{where}: missing required key '{key}'")
        return default
    v = d[key]
    if isinstance(v, str) and allow_inf and v.strip().lower() in ("inf", "infinity"):
        v = math.inf
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{where}.{key}: expected a number, got {v!r}")
    v = float(v)
    if math.isinf(v) and not allow_inf:
        raise ConfigError(f"{where}.{key}: must be finite")
    if positive and not v > 0.0:
        raise ConfigError(f"{where}.{key}: must be > 0")
    if nonnegative and v < 0.0:
        raise ConfigError(f"{where}.{key}: must be >= 0")
    return v


def _integer(d: dict, key: str, where: str, default=None, minimum=None, maximum=None):
    if key not in d:
        if default is None:
            raise ConfigError(f"{where}: missing required key '{key}'")
        return default
    v = d[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(f"{where}.{key}: expected an integer, got {v!r}")
    if minimum is not None and v < minimum:
        raise ConfigError(f"{where}.{key}: must be >= {minimum}")
    if maximum is not None and v > maximum:
        raise ConfigError(f"{where}.{key}: must be <= {maximum}")
    return v


def _boolean(d: dict, key: str, where: str, default: bool) -> bool:
    if key not in d:
        return default
    v = d[key]
    if not isinstance(v, bool):
        raise ConfigError(f"{where}.{key}: expected a boolean, got {v!r}")
    return v


def _vector(d: dict, key: str, n: int, where: str, default=None):
    if key not in d:
        if default is None:
            raise ConfigError(f"{where}: missing required key '{key}'")
        return list(default)
    v = d[key]
    if not isinstance(v, (list, tuple)) or len(v) != n:
        raise ConfigError(f"{where}.{key}: expected a list of {n} numbers")
    out = []
    for i, x in enumerate(v):
        if isinstance(x, bool) or not isinstance(x, (int, float)):
            raise ConfigError(f"{where}.{key}[{i}]: expected a number, got {x!r}")
        out.append(float(x))
    return out


def load_config(path) -> dict:
    """Read a YAML config file into a raw dict (top-level keys checked)."""
    try:
        raw = yaml.safe_load(Path(path).read_text())
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse config file {path}: {exc}") from exc
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    raw = _require_map(raw, "config")
    _check_keys(raw, TOP_KEYS, "config")
    return raw


def kernel_config_from_dict(cfg: dict) -> KernelConfig:
    if "kernel" not in cfg:
        raise ConfigError("config: missing required section 'kernel'")
    k = _require_map(cfg["kernel"], "kernel")
    _check_keys(k, ("cutoff_scheme", "lambda", "e_squared", "beta", "rr_prefactor"),
                "kernel")
    scheme = k.get("cutoff_scheme", "exponential")
    if scheme not in SCHEMES:
        raise ConfigError(f"kernel.cutoff_scheme: must be one of {SCHEMES}")
    return KernelConfig(
        cutoff_scheme=scheme,
        lam=_number(k, "lambda", "kernel", positive=True),
        e_squared=_number(k, "e_squared", "kernel", nonnegative=True),
        beta=_number(k, "beta", "kernel", default=math.inf, positive=True,
                     allow_inf=True),
        kappa=_number(k, "rr_prefactor", "kernel",
                      default=1.0 / (2.0 * math.pi), positive=True),
    )


def field_from_dict(cfg: dict) -> ExternalField:
    if "field" not in cfg or cfg["field"] is None:
        return ExternalField.none()
    f = _require_map(cfg["field"], "field")
    kind = f.get("type")
    if kind == "none" or kind is None:
        _check_keys(f, ("type",), "field")
        return ExternalField.none()
    if kind in ("constant_E", "constant_B"):
        _check_keys(f, ("type", "vector"), "field")
        vec = _vector(f, "vector", 3, "field")
        return (ExternalField.constant_e(vec) if kind == "constant_E"
                else ExternalField.constant_b(vec))
    if kind == "plane_wave":
        _check_keys(f, ("type", "amplitude", "wavevector", "polarization"), "field")
        return ExternalField.plane_wave(
            amplitude=_number(f, "amplitude", "field"),
            wavevector=_vector(f, "wavevector", 3, "field"),
            polarization=_vector(f, "polarization", 3, "field"))
    if kind == "coulomb":
        _check_keys(f, ("type", "charge_product"), "field")
        return ExternalField.coulomb(_number(f, "charge_product", "field"))
    raise ConfigError(f"field.type: unknown field type {kind!r}")


def initial_state_from_dict(cfg: dict) -> WorldlineState:
    s = _require_map(cfg.get("initial_state"), "initial_state")
    _check_keys(s, ("position", "velocity", "acceleration"), "initial_state")
    pos = _vector(s, "position", 4, "initial_state", default=(0.0, 0.0, 0.0, 0.0))
    vel = _vector(s, "velocity", 4, "initial_state", default=(1.0, 0.0, 0.0, 0.0))
    acc = None
    if "acceleration" in s:
        acc = FourVector.from_array(_vector(s, "acceleration", 4, "initial_state"))
    return WorldlineState(tau=0.0, position=FourVector.from_array(pos),
                          velocity=FourVector.from_array(vel), acceleration=acc)


def sim_config_from_dict(cfg: dict, seed_override: int | None = None) -> SimConfig:
    """Build a validated SimConfig from a raw config dict."""
    integrator = cfg.get("integrator")
    if integrator not in INTEGRATORS:
        raise ConfigError(f"config.integrator: must be one of {INTEGRATORS}")
    noise = _require_map(cfg.get("noise"), "noise")
    _check_keys(noise, ("enabled", "pad_factor", "project"), "noise")
    noise_enabled = _boolean(noise, "enabled", "noise", True)
    if integrator != "ald_langevin" and noise.get("enabled") is True:
        raise ConfigError("noise.enabled: noise only applies to ald_langevin")
    seed = _integer(cfg, "master_seed", "config", default=0, minimum=0,
                    maximum=(1 << 64) - 1)
    if seed_override is not None:
        seed = seed_override
    return SimConfig(
        integrator=integrator,
        field=field_from_dict(cfg),
        kernel=kernel_config_from_dict(cfg),
        m0=_number(cfg, "m0", "config", positive=True),
        n_steps=_integer(cfg, "n_steps", "config", minimum=1),
        dtau=_number(cfg, "dtau", "config", positive=True),
        ensemble_size=_integer(cfg, "ensemble_size", "config", default=1, minimum=1),
        master_seed=seed,
        initial_state=initial_state_from_dict(cfg),
        project_noise=_boolean(noise, "project", "noise", True),
        noise_enabled=noise_enabled if integrator == "ald_langevin" else False,
        pad_factor=_integer(noise, "pad_factor", "noise", default=4, minimum=1),
    )


def output_components(cfg: dict) -> list[str]:
    out = _require_map(cfg.get("output"), "output")
    _check_keys(out, ("components",), "output")
    comps = out.get("components", ["ut", "ux", "x"])
    if not isinstance(comps, list) or not comps:
        raise ConfigError("output.components: expected a non-empty list")
    for c in comps:
        if c not in COMPONENTS:
            raise ConfigError(f"output.components: unknown component {c!r} "
                              f"(allowed: {COMPONENTS})")
    return list(comps)
