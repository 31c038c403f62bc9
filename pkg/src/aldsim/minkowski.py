"""Minkowski geometry primitives and package-wide conventions.

Conventions
-----------
* Metric signature (+, -, -, -); natural units (hbar = c = 1).
* Four-velocities are unit timelike and future-directed (u.u = 1, u.t > 0),
  which fixes proper-time parametrization of the worldline.
* The electromagnetic field-tensor sign is fixed by requiring that a charge
  at rest in a constant electric field E feels the spatial force e*E
  (see :func:`aldsim.fields.lorentz_force`).

Hot loops operate on plain ``(..., 4)`` float arrays via the ``*_arr``
helpers; :class:`FourVector` is the value type used at API boundaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import GaugeViolationError

#: Diagonal of the metric tensor, signature (+, -, -, -).
METRIC_DIAG = np.array([1.0, -1.0, -1.0, -1.0])


@dataclass(frozen=True, slots=True)
class FourVector:
    """Minkowski four-vector with components (t, x, y, z)."""

    t: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    @classmethod
    def from_array(cls, arr) -> "FourVector":
        a = np.asarray(arr, dtype=float).reshape(4)
        return cls(float(a[0]), float(a[1]), float(a[2]), float(a[3]))

    def as_array(self) -> np.ndarray:
        return np.array([self.t, self.x, self.y, self.z])

    @property
    def spatial(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def __add__(self, other: "FourVector") -> "FourVector":
        return FourVector(self.t + other.t, self.x + other.x,
                          self.y + other.y, self.z + other.z)

    def __sub__(self, other: "FourVector") -> "FourVector":
        return FourVector(self.t - other.t, self.x - other.x,
                          self.y - other.y, self.z - other.z)

    def __mul__(self, c: float) -> "FourVector":
        return FourVector(self.t * c, self.x * c, self.y * c, self.z * c)

    __rmul__ = __mul__

    def __neg__(self) -> "FourVector":
        return self * -1.0


def minkowski_dot(a: FourVector, b: FourVector) -> float:
    """Inner product a.b with signature (+, -, -, -)."""
    return a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z


def mdot_arr(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Minkowski dot for ``(..., 4)`` arrays; returns ``(...)``."""
    return (a * b * METRIC_DIAG).sum(axis=-1)


def lower_arr(v: np.ndarray) -> np.ndarray:
    """Lower the index of a contravariant ``(..., 4)`` array."""
    return v * METRIC_DIAG


def project_orthogonal_arr(v: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Project v onto the subspace Minkowski-orthogonal to unit timelike u."""
    return v - mdot_arr(v, u)[..., None] * u


def normalize_velocity(u: FourVector) -> FourVector:
    """Rescale a timelike future-directed vector to unit Minkowski norm.

    Raises
    ------
    GaugeViolationError
        If the input is not timelike future-directed.
    """
    n2 = minkowski_dot(u, u)
    if n2 <= 0.0 or u.t <= 0.0:
        raise GaugeViolationError(
            f"velocity must be timelike future-directed, got u.u={n2!r}, u.t={u.t!r}")
    return u * (1.0 / math.sqrt(n2))


def normalize_velocity_arr(u: np.ndarray) -> np.ndarray:
    """Array version of :func:`normalize_velocity` for ``(..., 4)`` input."""
    n2 = mdot_arr(u, u)
    if np.any(n2 <= 0.0) or np.any(u[..., 0] <= 0.0):
        raise GaugeViolationError("velocity must be timelike future-directed")
    return u / np.sqrt(n2)[..., None]
