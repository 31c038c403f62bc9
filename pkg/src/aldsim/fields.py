"""External electromagnetic field variants and the Lorentz force.

The contravariant field tensor follows the convention

    F^{i0} = E^i,    F^{0i} = -E^i,    F^{ij} = -eps_{ijk} B^k,

so that ``f = e F u_lowered`` gives the spatial force ``e E`` on a charge at
rest and ``e (u_spatial x B)`` for the magnetic part.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ConfigError, SingularFieldError
from .minkowski import FourVector, lower_arr

_EPS = np.zeros((3, 3, 3))
_EPS[0, 1, 2] = _EPS[1, 2, 0] = _EPS[2, 0, 1] = 1.0
_EPS[0, 2, 1] = _EPS[2, 1, 0] = _EPS[1, 0, 2] = -1.0

FIELD_KINDS = ("none", "constant_E", "constant_B", "plane_wave", "coulomb")


@dataclass(frozen=True)
class ExternalField:
    """Tagged union of the supported background-field variants.

    Use the factory classmethods; the constructor does not validate.
    """

    kind: str = "none"
    vector: tuple = (0.0, 0.0, 0.0)
    amplitude: float = 0.0
    wavevector: tuple = (0.0, 0.0, 1.0)
    polarization: tuple = (1.0, 0.0, 0.0)
    charge_product: float = 0.0

    @classmethod
    def none(cls) -> "ExternalField":
        return cls(kind="none")

    @classmethod
    def constant_e(cls, vector) -> "ExternalField":
        return cls(kind="constant_E", vector=tuple(float(v) for v in vector))

    @classmethod
    def constant_b(cls, vector) -> "ExternalField":
        return cls(kind="constant_B", vector=tuple(float(v) for v in vector))

    @classmethod
    def plane_wave(cls, amplitude, wavevector, polarization) -> "ExternalField":
        k = np.asarray(wavevector, dtype=float)
        knorm = np.linalg.norm(k)
        if knorm == 0.0:
            raise ConfigError("plane_wave wavevector must be nonzero")
        pol = np.asarray(polarization, dtype=float)
        # enforce transversality: remove any longitudinal component
        pol = pol - (pol @ k) / knorm**2 * k
        pnorm = np.linalg.norm(pol)
        if pnorm == 0.0:
            raise ConfigError("plane_wave polarization parallel to wavevector")
        pol = pol / pnorm
        return cls(kind="plane_wave", amplitude=float(amplitude),
                   wavevector=tuple(k), polarization=tuple(pol))

    @classmethod
    def coulomb(cls, charge_product) -> "ExternalField":
        return cls(kind="coulomb", charge_product=float(charge_product))


def _eb_at(f: ExternalField, x: np.ndarray):
    """Return (E, B) three-vectors at spacetime points x of shape (..., 4)."""
    batch = x.shape[:-1]
    E = np.zeros(batch + (3,))
    B = np.zeros(batch + (3,))
    if f.kind == "none":
        pass
    elif f.kind == "constant_E":
        E = E + np.asarray(f.vector)
    elif f.kind == "constant_B":
        B = B + np.asarray(f.vector)
    elif f.kind == "plane_wave":
        k = np.asarray(f.wavevector)
        omega = np.linalg.norm(k)
        khat = k / omega
        pol = np.asarray(f.polarization)
        phase = omega * x[..., 0] - x[..., 1:] @ k
        E = f.amplitude * np.cos(phase)[..., None] * pol
        B = np.cross(khat, E)
    elif f.kind == "coulomb":
        r = x[..., 1:]
        rn = np.linalg.norm(r, axis=-1)
        if np.any(rn == 0.0):
            raise SingularFieldError("coulomb field evaluated at zero radius")
        E = f.charge_product / (4.0 * np.pi) * r / rn[..., None] ** 3
    else:
        raise ConfigError(f"unknown field kind {f.kind!r}")
    return E, B


def _tensor_from_eb(E: np.ndarray, B: np.ndarray) -> np.ndarray:
    batch = E.shape[:-1]
    F = np.zeros(batch + (4, 4))
    F[..., 1:, 0] = E
    F[..., 0, 1:] = -E
    F[..., 1:, 1:] = -np.einsum("ijk,...k->...ij", _EPS, B)
    return F


def field_tensor_arr(f: ExternalField, x: np.ndarray) -> np.ndarray:
    """Contravariant F^{mu nu} at points x of shape (..., 4); returns (..., 4, 4)."""
    E, B = _eb_at(f, np.asarray(x, dtype=float))
    return _tensor_from_eb(E, B)


def field_tensor(f: ExternalField, x: FourVector) -> np.ndarray:
    """Contravariant F^{mu nu} at a single spacetime point, shape (4, 4)."""
    return field_tensor_arr(f, x.as_array())


def field_tensor_gradient_arr(f: ExternalField, x: np.ndarray) -> np.ndarray:
    """Coordinate gradient d_alpha F^{mu nu}, shape (..., 4, 4, 4).

    Index order is (alpha, mu, nu). Analytic per variant so that integrators
    relying on the field's proper-time derivative keep their design order.
    """
    x = np.asarray(x, dtype=float)
    batch = x.shape[:-1]
    G = np.zeros(batch + (4, 4, 4))
    if f.kind in ("none", "constant_E", "constant_B"):
        return G
    if f.kind == "plane_wave":
        k = np.asarray(f.wavevector)
        omega = np.linalg.norm(k)
        khat = k / omega
        pol = np.asarray(f.polarization)
        E0 = f.amplitude * pol
        B0 = np.cross(khat, E0)
        Fhat = _tensor_from_eb(np.broadcast_to(E0, batch + (3,)),
                               np.broadcast_to(B0, batch + (3,)))
        phase = omega * x[..., 0] - x[..., 1:] @ k
        klow = np.concatenate(([omega], -k))  # d_alpha phase
        G = -np.sin(phase)[..., None, None, None] * klow[:, None, None] * Fhat[..., None, :, :]
        return G
    if f.kind == "coulomb":
        r = x[..., 1:]
        rn = np.linalg.norm(r, axis=-1)
        if np.any(rn == 0.0):
            raise SingularFieldError("coulomb field evaluated at zero radius")
        q = f.charge_product / (4.0 * np.pi)
        # dE_i/dx_j = q (delta_ij / r^3 - 3 r_i r_j / r^5)
        dE = q * (np.eye(3) / rn[..., None, None] ** 3
                  - 3.0 * r[..., :, None] * r[..., None, :] / rn[..., None, None] ** 5)
        # spatial alpha = j -> tensor assembled from dE[..., :, j]
        for j in range(3):
            G[..., 1 + j, 1:, 0] = dE[..., :, j]
            G[..., 1 + j, 0, 1:] = -dE[..., :, j]
        return G
    raise ConfigError(f"unknown field kind {f.kind!r}")


def lorentz_force_arr(e: float, f: ExternalField, x: np.ndarray, u: np.ndarray) -> np.ndarray:
    """f^mu = e F^{mu nu} u_nu for batched positions/velocities (..., 4)."""
    F = field_tensor_arr(f, x)
    return e * np.einsum("...mn,...n->...m", F, lower_arr(np.asarray(u, dtype=float)))


def lorentz_force(e: float, f: ExternalField, position: FourVector, u: FourVector) -> FourVector:
    """Lorentz four-force on a charge e at the given position and velocity.

    Minkowski-orthogonal to u by antisymmetry of the field tensor.
    """
    out = lorentz_force_arr(e, f, position.as_array(), u.as_array())
    return FourVector.from_array(out)
