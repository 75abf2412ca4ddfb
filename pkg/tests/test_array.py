import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crbeam.array import steering, steering_derivative
from crbeam.scenario import ArraySpec

angles = st.floats(-math.pi, math.pi, allow_nan=False, allow_infinity=False)


def test_broadside_is_all_ones():
    for n in (1, 4, 16):
        assert np.allclose(steering(ArraySpec(n), 0.0), np.ones(n))


def test_first_element_is_reference():
    a = steering(ArraySpec(8), 0.7)
    assert a[0] == 1.0 + 0.0j


@settings(max_examples=50, deadline=None)
@given(theta=angles, n=st.integers(1, 32))
def test_norm_squared_equals_element_count(theta, n):
    a = steering(ArraySpec(n), theta)
    assert np.linalg.norm(a) ** 2 == pytest.approx(n, rel=1e-12)


def test_endfire_two_elements():
    a = steering(ArraySpec(2, 0.5), math.pi / 2)
    assert np.allclose(a, [1.0, -1.0], atol=1e-12)


@settings(max_examples=50, deadline=None)
@given(theta=angles)
def test_conjugate_symmetry(theta):
    spec = ArraySpec(9)
    assert np.allclose(steering(spec, -theta), steering(spec, theta).conj())


def test_derivative_first_element_zero():
    d = steering_derivative(ArraySpec(12), 0.43)
    assert d[0] == 0.0


def test_derivative_vanishes_at_endfire():
    d = steering_derivative(ArraySpec(10), math.pi / 2)
    assert np.allclose(d, 0.0, atol=1e-12)


def test_derivative_matches_finite_difference():
    spec = ArraySpec(16)
    theta, h = 0.3, 1e-6
    fd = (steering(spec, theta + h) - steering(spec, theta - h)) / (2 * h)
    analytic = steering_derivative(spec, theta)
    assert np.abs(fd - analytic).max() / np.abs(analytic).max() < 1e-6


@settings(max_examples=50, deadline=None)
@given(theta=angles, n=st.integers(2, 24))
def test_constant_modulus_orthogonality(theta, n):
    # |a|^2 constant in theta, so Re{a^H da/dtheta} = 0
    spec = ArraySpec(n)
    inner = steering(spec, theta).conj() @ steering_derivative(spec, theta)
    assert abs(inner.real) < 1e-9 * n
