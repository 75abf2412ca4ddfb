"""Per-subcarrier channel matrices and their analytic parameter derivatives.

The downlink channel at subcarrier m is

    H_m = sum_k gain_k * exp(-2j*pi*m*df*delay_k) * a_rx(aoa_k) a_tx(aod_k)^H

with the echo channel identical in form but with both array responses
evaluated at the departure angle.  Subcarriers are indexed m = 1..M.

Derivatives are reported for the stacked real parameter vector

    downlink: [aod; aoa; delay; Re gain; Im gain]   (5K+5 entries)
    echo:     [aod; delay; Re gain; Im gain]        (4K+4 entries)
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .array import steering, steering_derivative
from .scenario import (ArraySet, PathParamsBP, PathParamsMS, Scenario,
                       SystemConfig)

BP = "bp"
MS = "ms"


def pack_bp_params(params: list[PathParamsBP]) -> np.ndarray:
    """Stack downlink path parameters into the derivative ordering."""
    return np.concatenate([
        [p.aod_rad for p in params],
        [p.aoa_rad for p in params],
        [p.delay_s for p in params],
        [p.gain.real for p in params],
        [p.gain.imag for p in params],
    ])


def unpack_bp_params(xi: np.ndarray) -> list[PathParamsBP]:
    k1 = len(xi) // 5
    return [PathParamsBP(gain=complex(xi[3 * k1 + k], xi[4 * k1 + k]),
                         delay_s=float(xi[2 * k1 + k]),
                         aod_rad=float(xi[k]),
                         aoa_rad=float(xi[k1 + k]))
            for k in range(k1)]


def pack_ms_params(params: list[PathParamsMS]) -> np.ndarray:
    return np.concatenate([
        [p.aod_rad for p in params],
        [p.delay_s for p in params],
        [p.gain.real for p in params],
        [p.gain.imag for p in params],
    ])


def unpack_ms_params(xi: np.ndarray) -> list[PathParamsMS]:
    k1 = len(xi) // 4
    return [PathParamsMS(gain=complex(xi[2 * k1 + k], xi[3 * k1 + k]),
                         delay_s=float(xi[k1 + k]),
                         aod_rad=float(xi[k]))
            for k in range(k1)]


def _phase_ramp(system: SystemConfig, delay_s: float) -> np.ndarray:
    m = np.arange(1, system.num_subcarriers + 1)
    return np.exp(-2j * np.pi * m * system.subcarrier_spacing_hz * delay_s)


def bp_channel(params: list[PathParamsBP], system: SystemConfig, arrays: ArraySet,
               m: int) -> np.ndarray:
    """Downlink channel matrix (UE elements x BS tx elements) at subcarrier m."""
    if not 1 <= m <= system.num_subcarriers:
        raise ValueError(f"subcarrier index {m} outside 1..{system.num_subcarriers}")
    h = np.zeros((arrays.ue.num_elements, arrays.bs_tx.num_elements), dtype=complex)
    df = system.subcarrier_spacing_hz
    for p in params:
        phase = np.exp(-2j * np.pi * m * df * p.delay_s)
        h += p.gain * phase * np.outer(steering(arrays.ue, p.aoa_rad),
                                       steering(arrays.bs_tx, p.aod_rad).conj())
    return h


def ms_channel(params: list[PathParamsMS], system: SystemConfig, arrays: ArraySet,
               m: int) -> np.ndarray:
    """Echo channel matrix (BS rx elements x BS tx elements) at subcarrier m."""
    if not 1 <= m <= system.num_subcarriers:
        raise ValueError(f"subcarrier index {m} outside 1..{system.num_subcarriers}")
    h = np.zeros((arrays.bs_rx.num_elements, arrays.bs_tx.num_elements), dtype=complex)
    df = system.subcarrier_spacing_hz
    for p in params:
        phase = np.exp(-2j * np.pi * m * df * p.delay_s)
        h += p.gain * phase * np.outer(steering(arrays.bs_rx, p.aod_rad),
                                       steering(arrays.bs_tx, p.aod_rad).conj())
    return h


@dataclass(frozen=True)
class ChannelDerivativeSet:
    """Analytic partials dH_m/d xi_i, stored parameter-major.

    ``tensor`` has shape (n_params, M, n_rx, n_tx); ``tensor[i, m-1]`` is the
    partial of H_m with respect to parameter i.
    """
    mode: str                 # BP or MS
    tensor: np.ndarray
    num_paths: int

    @property
    def num_params(self) -> int:
        return self.tensor.shape[0]


def channel_derivatives(params, system: SystemConfig, arrays: ArraySet,
                        mode: str) -> ChannelDerivativeSet:
    """All analytic channel partials for one mode.

    Angle partials swap in the array-response derivative, the delay partial
    multiplies the path term by -2j*pi*m*df, and the two gain partials replace
    the complex gain by 1 and j respectively.
    """
    if mode not in (BP, MS):
        raise ValueError(f"mode must be '{BP}' or '{MS}'")
    m_count = system.num_subcarriers
    m_idx = np.arange(1, m_count + 1)
    df = system.subcarrier_spacing_hz
    k1 = len(params)
    delay_factor = (-2j * np.pi * m_idx * df)[:, None, None]

    if mode == BP:
        n_rx, n_tx = arrays.ue.num_elements, arrays.bs_tx.num_elements
        tensor = np.zeros((5 * k1, m_count, n_rx, n_tx), dtype=complex)
        for k, p in enumerate(params):
            a_t = steering(arrays.bs_tx, p.aod_rad)
            a_u = steering(arrays.ue, p.aoa_rad)
            da_t = steering_derivative(arrays.bs_tx, p.aod_rad)
            da_u = steering_derivative(arrays.ue, p.aoa_rad)
            ramp = _phase_ramp(system, p.delay_s)[:, None, None]
            base = np.outer(a_u, a_t.conj())
            tensor[k] = p.gain * ramp * np.outer(a_u, da_t.conj())
            tensor[k1 + k] = p.gain * ramp * np.outer(da_u, a_t.conj())
            tensor[2 * k1 + k] = p.gain * delay_factor * ramp * base
            tensor[3 * k1 + k] = ramp * base
            tensor[4 * k1 + k] = 1j * ramp * base
    else:
        n_rx, n_tx = arrays.bs_rx.num_elements, arrays.bs_tx.num_elements
        tensor = np.zeros((4 * k1, m_count, n_rx, n_tx), dtype=complex)
        for k, p in enumerate(params):
            a_t = steering(arrays.bs_tx, p.aod_rad)
            a_r = steering(arrays.bs_rx, p.aod_rad)
            da_t = steering_derivative(arrays.bs_tx, p.aod_rad)
            da_r = steering_derivative(arrays.bs_rx, p.aod_rad)
            ramp = _phase_ramp(system, p.delay_s)[:, None, None]
            base = np.outer(a_r, a_t.conj())
            tensor[k] = p.gain * ramp * (np.outer(da_r, a_t.conj())
                                         + np.outer(a_r, da_t.conj()))
            tensor[k1 + k] = p.gain * delay_factor * ramp * base
            tensor[2 * k1 + k] = ramp * base
            tensor[3 * k1 + k] = 1j * ramp * base
    return ChannelDerivativeSet(mode=mode, tensor=tensor, num_paths=k1)


def bp_derivatives(scenario: Scenario, params: list[PathParamsBP]) -> ChannelDerivativeSet:
    return channel_derivatives(params, scenario.system, scenario.arrays, BP)


def ms_derivatives(scenario: Scenario, params: list[PathParamsMS]) -> ChannelDerivativeSet:
    return channel_derivatives(params, scenario.system, scenario.arrays, MS)
