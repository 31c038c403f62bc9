import math

import numpy as np
import pytest

from aldsim import FourVector, GaugeViolationError, minkowski_dot, normalize_velocity
from aldsim.minkowski import mdot_arr, project_orthogonal_arr


def test_dot_timelike_unit():
    assert minkowski_dot(FourVector(1, 0, 0, 0), FourVector(1, 0, 0, 0)) == 1.0


def test_dot_null_vector():
    assert minkowski_dot(FourVector(1, 1, 0, 0), FourVector(1, 1, 0, 0)) == 0.0


def test_dot_direct_expansion():
    # 2*3 - 1*1 = 5
    assert minkowski_dot(FourVector(2, 1, 0, 0), FourVector(3, 1, 0, 0)) == 5.0


def test_dot_symmetric_bilinear():
    rng = np.random.default_rng(7)
    for _ in range(50):
        a, b, c = (FourVector.from_array(rng.normal(size=4)) for _ in range(3))
        lam = float(rng.normal())
        assert minkowski_dot(a, b) == pytest.approx(minkowski_dot(b, a), abs=0)
        lhs = minkowski_dot(a + lam * b, c)
        rhs = minkowski_dot(a, c) + lam * minkowski_dot(b, c)
        assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)


def test_mdot_arr_matches_scalar():
    rng = np.random.default_rng(11)
    a = rng.normal(size=(6, 4))
    b = rng.normal(size=(6, 4))
    got = mdot_arr(a, b)
    for k in range(6):
        want = minkowski_dot(FourVector.from_array(a[k]), FourVector.from_array(b[k]))
        assert got[k] == pytest.approx(want, rel=1e-14)


def test_normalize_identity_on_unit():
    u = normalize_velocity(FourVector(1, 0, 0, 0))
    assert u == FourVector(1, 0, 0, 0)


def test_normalize_rescales():
    u = normalize_velocity(FourVector(2, 0, 0, 0))
    assert u == FourVector(1, 0, 0, 0)


def test_normalize_leaves_unit_boost():
    u = normalize_velocity(FourVector(math.sqrt(2), 1, 0, 0))
    assert u.t == pytest.approx(math.sqrt(2))
    assert u.x == pytest.approx(1.0)


def test_normalize_idempotent():
    rng = np.random.default_rng(3)
    for _ in range(25):
        v = rng.uniform(-0.9, 0.9, size=3)
        gamma = 1.0 / math.sqrt(1.0 - v @ v)
        u = FourVector(gamma * rng.uniform(1.0, 5.0), *(gamma * v * rng.uniform(1.0, 5.0)))
        once = normalize_velocity(u)
        twice = normalize_velocity(once)
        assert abs(minkowski_dot(once, once) - 1.0) < 1e-12
        assert minkowski_dot(once - twice, once - twice) == pytest.approx(0.0, abs=1e-28)


@pytest.mark.parametrize("bad", [
    FourVector(0.5, 1, 0, 0),      # spacelike
    FourVector(1, 1, 0, 0),        # null
    FourVector(-2, 0, 0, 0),       # past-directed
])
def test_normalize_rejects_non_timelike(bad):
    with pytest.raises(GaugeViolationError):
        normalize_velocity(bad)


def test_project_orthogonal():
    rng = np.random.default_rng(19)
    v = rng.uniform(-0.8, 0.8, size=(20, 3))
    gamma = 1.0 / np.sqrt(1.0 - (v * v).sum(axis=1))
    u = np.column_stack([gamma, gamma[:, None] * v])
    w = rng.normal(size=(20, 4))
    proj = project_orthogonal_arr(w, u)
    assert np.abs(mdot_arr(proj, u)).max() < 1e-12
