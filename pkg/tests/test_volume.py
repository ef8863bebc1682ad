import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from picard.volume import (
    WEEKS_BOUND,
    WEEKS_VOLUME,
    ball_volume,
    collar_halfwidth,
    collar_halfwidth_general,
    collar_radius,
    contradiction_check,
    euler_volume,
    invert_v_of_r,
    tube_integral,
    tube_volume,
    v_of_r,
)

positive = st.floats(min_value=1e-3, max_value=30.0, allow_nan=False)


def test_collar_radius():
    mpmath.mp.dps = 40
    expected = float(mpmath.log(mpmath.coth(mpmath.mpf(1) / 2)))
    assert abs(collar_radius(1.0) - expected) < 1e-12
    assert abs(collar_radius(1.0) - 0.7719368329) < 1e-9
    assert collar_radius(20) < 1e-8
    with pytest.raises(ValueError):
        collar_radius(0)


@settings(max_examples=500, derandomize=True)
@given(st.floats(min_value=0.05, max_value=15.0))
def test_collar_radius_is_an_involution(x):
    assert math.isclose(collar_radius(collar_radius(x)), x, rel_tol=1e-9)


def test_ball_volume_against_quadrature():
    assert ball_volume(0) == 0
    for r in (1e-4, 0.01, 0.5, 1.0, 2.5):
        ref, _ = quad(lambda t: 4 * math.pi * math.sinh(t) ** 2, 0, r, epsabs=1e-14, epsrel=1e-13)
        assert math.isclose(ball_volume(r), ref, rel_tol=1e-10, abs_tol=1e-15)
    assert math.isclose(ball_volume(1), math.pi * (math.sinh(2) - 2), rel_tol=1e-14)
    assert abs(ball_volume(1) - 5.1109) < 1e-4
    r = 1e-5
    assert math.isclose(ball_volume(r) / (4 * math.pi / 3 * r ** 3), 1, rel_tol=1e-9)
    with pytest.raises(ValueError):
        ball_volume(-1)


def test_tube_integral_against_quadrature():
    for d in (0.0, 0.1, 0.7, 2.0):
        ref, _ = quad(lambda t: math.cosh(t) ** 3, 0, d, epsabs=1e-14)
        assert math.isclose(tube_integral(d), ref, rel_tol=1e-12, abs_tol=1e-15)


@settings(max_examples=300, derandomize=True)
@given(st.floats(min_value=0.01, max_value=50.0))
def test_inversion_round_trip(y):
    x = invert_v_of_r(y)
    assert math.isclose(v_of_r(x), y, rel_tol=1e-9, abs_tol=1e-11)


@settings(max_examples=300, derandomize=True)
@given(positive, positive)
def test_v_of_r_decreasing(x, y):
    if x < y:
        assert v_of_r(x) >= v_of_r(y)


def test_inversion_errors():
    with pytest.raises(ValueError):
        invert_v_of_r(1.0, tol=0)
    with pytest.raises(ValueError):
        invert_v_of_r(0.0)


def test_collar_widths():
    d = collar_halfwidth(WEEKS_BOUND)
    assert math.isclose(v_of_r(2 * d), WEEKS_BOUND / 2, rel_tol=1e-9)
    assert collar_halfwidth_general(WEEKS_BOUND) < d


def test_tube_volume():
    t = tube_volume(WEEKS_BOUND)
    assert math.isclose(t.tube_volume, 2 * WEEKS_BOUND * tube_integral(t.collar_halfwidth))
    assert 1.80 < t.tube_volume < 1.81
    assert 0 < tube_volume(1e-6).tube_volume < 1e-3
    with pytest.raises(ValueError):
        tube_volume(0)


def test_euler_volume():
    assert abs(euler_volume(2) - 26.3189) < 1e-4
    assert abs(euler_volume(1) - 13.1595) < 1e-4
    with pytest.raises(ValueError):
        euler_volume(0)


def test_contradiction_cases():
    r = contradiction_check(16, WEEKS_BOUND, 2)
    assert r.contradiction and abs(r.lhs - 28.9) < 0.05 and abs(r.rhs - 26.3) < 0.05
    assert not contradiction_check(1, WEEKS_BOUND, 2).contradiction
    assert not contradiction_check(16, WEEKS_BOUND, 1000).contradiction
    # the stored Weeks volume only strengthens the inequality
    assert contradiction_check(16, WEEKS_VOLUME, 2).lhs > r.lhs
