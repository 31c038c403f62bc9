"""Worldline state containers: single states and uniformly sampled histories."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .minkowski import FourVector, minkowski_dot


@dataclass(frozen=True)
class WorldlineState:
    """Snapshot of a worldline at one proper time.

    ``acceleration=None`` means "no initial-acceleration data supplied";
    integrators that need it pick their documented default, integrators that
    determine it from the equation of motion ignore it either way. ``jerk``
    is only populated by third-order integrators.
    """

    tau: float
    position: FourVector
    velocity: FourVector
    acceleration: FourVector | None = None
    jerk: FourVector | None = None

    @property
    def mass_shell_drift(self) -> float:
        """|u.u - 1| for the stored velocity."""
        return abs(minkowski_dot(self.velocity, self.velocity) - 1.0)


class Trajectory:
    """Worldline history on a uniform proper-time grid.

    Backed by ``(n, 4)`` arrays; ``samples()`` materializes
    :class:`WorldlineState` values on demand. Grid regularity
    ``tau[k] = tau[0] + k * dtau`` holds exactly by construction.
    """

    def __init__(self, dtau: float, tau0: float, position: np.ndarray,
                 velocity: np.ndarray, acceleration: np.ndarray,
                 drift: np.ndarray | None = None):
        n = len(position)
        if velocity.shape != (n, 4) or acceleration.shape != (n, 4) or position.shape != (n, 4):
            raise ValueError("trajectory arrays must share shape (n, 4)")
        self.dtau = float(dtau)
        self.tau0 = float(tau0)
        self.position = position
        self.velocity = velocity
        self.acceleration = acceleration
        self.drift = drift if drift is not None else np.abs(
            (velocity * velocity * np.array([1.0, -1.0, -1.0, -1.0])).sum(axis=1) - 1.0)

    @property
    def tau(self) -> np.ndarray:
        return self.tau0 + np.arange(len(self.position)) * self.dtau

    def __len__(self) -> int:
        return len(self.position)

    def state(self, k: int) -> WorldlineState:
        return WorldlineState(
            tau=self.tau0 + k * self.dtau,
            position=FourVector.from_array(self.position[k]),
            velocity=FourVector.from_array(self.velocity[k]),
            acceleration=FourVector.from_array(self.acceleration[k]),
        )

    def samples(self) -> list[WorldlineState]:
        return [self.state(k) for k in range(len(self))]

    def same_grid(self, other: "Trajectory") -> bool:
        return (len(self) == len(other)
                and self.dtau == other.dtau
                and self.tau0 == other.tau0)
