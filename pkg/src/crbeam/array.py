"""Uniform linear array responses and their angle derivatives."""

from __future__ import annotations

import numpy as np

from .scenario import ArraySpec


def steering(spec: ArraySpec, theta: float) -> np.ndarray:
    """Array response at angle ``theta`` (radians from boresight).

    Element i carries phase 2*pi*spacing*i*sin(theta); the first element is
    the phase reference, so entry 0 is always 1.
    """
    idx = np.arange(spec.num_elements)
    return np.exp(2j * np.pi * spec.element_spacing_wavelengths * idx * np.sin(theta))


def steering_derivative(spec: ArraySpec, theta: float) -> np.ndarray:
    """Exact d/dtheta of :func:`steering` at ``theta``."""
    idx = np.arange(spec.num_elements)
    scale = 2j * np.pi * spec.element_spacing_wavelengths * idx * np.cos(theta)
    return scale * steering(spec, theta)
