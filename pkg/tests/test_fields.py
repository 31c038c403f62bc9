import math

import numpy as np
import pytest

from aldsim import ExternalField, FourVector, SingularFieldError, field_tensor, lorentz_force, minkowski_dot
from aldsim.fields import field_tensor_arr, field_tensor_gradient_arr, lorentz_force_arr
from aldsim.minkowski import mdot_arr


def _random_unit_velocity(rng):
    v = rng.uniform(-0.8, 0.8, size=3)
    gamma = 1.0 / math.sqrt(1.0 - v @ v)
    return FourVector(gamma, *(gamma * v))


ALL_FIELDS = [
    ExternalField.none(),
    ExternalField.constant_e([0.3, -0.2, 0.5]),
    ExternalField.constant_b([0.1, 0.7, -0.4]),
    ExternalField.plane_wave(0.8, [0.0, 0.0, 2.0], [1.0, 0.0, 0.0]),
    ExternalField.coulomb(2.5),
]


@pytest.mark.parametrize("fld", ALL_FIELDS, ids=lambda f: f.kind)
def test_field_tensor_antisymmetric(fld):
    rng = np.random.default_rng(5)
    for _ in range(20):
        x = FourVector.from_array(rng.normal(size=4) + np.array([0, 1.5, 0, 0]))
        F = field_tensor(fld, x)
        assert np.abs(F + F.T).max() < 1e-14


def test_rest_charge_feels_eE():
    fld = ExternalField.constant_e([1.0, 0.0, 0.0])
    f = lorentz_force(1.0, fld, FourVector(), FourVector(1, 0, 0, 0))
    assert f == FourVector(0.0, 1.0, 0.0, 0.0)


def test_rest_charge_ignores_B():
    fld = ExternalField.constant_b([0.4, -0.1, 0.9])
    f = lorentz_force(3.0, fld, FourVector(), FourVector(1, 0, 0, 0))
    assert f == FourVector(0.0, 0.0, 0.0, 0.0)


def test_boosted_charge_in_Bz():
    # expand F^{mu nu} u_nu by hand: spatial force = u_spatial x B
    u = FourVector(math.sqrt(2), 1, 0, 0)
    fld = ExternalField.constant_b([0, 0, 1.0])
    f = lorentz_force(1.0, fld, FourVector(), u)
    u_sp = np.array([1.0, 0.0, 0.0])
    expect = np.cross(u_sp, [0, 0, 1.0])
    assert f.t == pytest.approx(0.0, abs=1e-15)
    assert np.allclose([f.x, f.y, f.z], expect, atol=1e-15)
    assert minkowski_dot(f, u) == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("fld", ALL_FIELDS, ids=lambda f: f.kind)
def test_force_orthogonal_to_velocity(fld):
    rng = np.random.default_rng(23)
    for _ in range(50):
        u = _random_unit_velocity(rng)
        x = FourVector.from_array(rng.normal(size=4) + np.array([0, 2.0, 0, 0]))
        f = lorentz_force(1.3, fld, x, u)
        assert abs(minkowski_dot(f, u)) < 1e-13


def test_coulomb_singular_at_origin():
    fld = ExternalField.coulomb(1.0)
    with pytest.raises(SingularFieldError):
        lorentz_force(1.0, fld, FourVector(5.0, 0, 0, 0), FourVector(1, 0, 0, 0))


def test_plane_wave_transversality_enforced():
    fld = ExternalField.plane_wave(1.0, [0, 0, 3.0], [0.5, 0.0, 0.9])
    pol = np.asarray(fld.polarization)
    k = np.asarray(fld.wavevector)
    assert abs(pol @ k) < 1e-14
    assert np.linalg.norm(pol) == pytest.approx(1.0)


@pytest.mark.parametrize("fld", [ALL_FIELDS[3], ALL_FIELDS[4]], ids=lambda f: f.kind)
def test_field_gradient_matches_finite_differences(fld):
    rng = np.random.default_rng(31)
    h = 1e-6
    for _ in range(10):
        x = rng.normal(size=4) + np.array([0, 2.0, 0, 0])
        G = field_tensor_gradient_arr(fld, x)
        for alpha in range(4):
            dx = np.zeros(4)
            dx[alpha] = h
            fd = (field_tensor_arr(fld, x + dx) - field_tensor_arr(fld, x - dx)) / (2 * h)
            assert np.abs(G[alpha] - fd).max() < 5e-8


def test_batched_force_matches_single():
    fld = ExternalField.plane_wave(0.7, [1.0, 0, 0], [0, 1.0, 0])
    rng = np.random.default_rng(2)
    xs = rng.normal(size=(8, 4))
    us = np.stack([_random_unit_velocity(rng).as_array() for _ in range(8)])
    batch = lorentz_force_arr(1.1, fld, xs, us)
    for k in range(8):
        single = lorentz_force(1.1, fld, FourVector.from_array(xs[k]),
                               FourVector.from_array(us[k]))
        assert np.allclose(batch[k], single.as_array(), atol=1e-15)
    assert np.abs(mdot_arr(batch, us)).max() < 1e-13
