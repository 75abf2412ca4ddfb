import math

import numpy as np
import pytest

from crbeam.scenario import (ArraySet, ArraySpec, GeometryConfig, Scenario,
                             SystemConfig, TargetSpec, draw_phases)


def small_system(num_subcarriers=32, seed=7) -> SystemConfig:
    """Reduced waveform for fast unit tests; same spacing as the default."""
    return SystemConfig(
        carrier_frequency_hz=28e9,
        bandwidth_hz=117187.5 * num_subcarriers,
        num_subcarriers=num_subcarriers,
        num_symbols=10,
        num_slots=6,
        power_dbm=-20.0,
        noise_figure_db=10.0,
        noise_psd_dbm_per_hz=-173.855,
        rng_seed=seed,
    )


def small_geometry(num_targets=2, seed=7) -> GeometryConfig:
    rng = np.random.default_rng(seed)
    base_targets = [((-8.0, 12.0), 80.0), ((6.0, 14.0), 120.0)]
    targets = tuple(
        TargetSpec(position_m=pos, rcs_bp_m2=rcs, rcs_ms_m2=rcs)
        for pos, rcs in base_targets[:num_targets])
    return GeometryConfig(
        bs_position_m=(0.0, 0.0),
        ue_position_m=(-4.0, 18.0),
        ue_orientation_rad=0.8,
        clock_bias_s=1e-6,
        targets=targets,
        ue_rcs_ms_m2=10.0,
        phase_bp_rad=draw_phases(num_targets + 1, rng),
        phase_ms_rad=draw_phases(num_targets + 1, rng),
    )


def small_scenario(num_targets=2, num_subcarriers=32, seed=7,
                   elements=(6, 5, 4)) -> Scenario:
    arrays = ArraySet(bs_tx=ArraySpec(elements[0]),
                      bs_rx=ArraySpec(elements[1]),
                      ue=ArraySpec(elements[2]))
    return Scenario(system=small_system(num_subcarriers, seed),
                    geometry=small_geometry(num_targets, seed),
                    arrays=arrays)


def random_geometry(rng: np.random.Generator, num_targets=None) -> GeometryConfig:
    """Well-separated random scene in front of the transmitter."""
    if num_targets is None:
        num_targets = int(rng.integers(0, 4))
    while True:
        ue = (float(rng.uniform(-12, 12)), float(rng.uniform(8, 25)))
        tgts = [(float(rng.uniform(-14, 14)), float(rng.uniform(6, 22)))
                for _ in range(num_targets)]
        pts = [(0.0, 0.0), ue] + tgts
        ok = all(math.dist(pts[i], pts[j]) > 1.0
                 for i in range(len(pts)) for j in range(i + 1, len(pts)))
        if ok:
            break
    targets = tuple(
        TargetSpec(position_m=t,
                   rcs_bp_m2=float(rng.uniform(20, 150)),
                   rcs_ms_m2=float(rng.uniform(20, 150)))
        for t in tgts)
    return GeometryConfig(
        bs_position_m=(0.0, 0.0),
        ue_position_m=ue,
        ue_orientation_rad=float(rng.uniform(-math.pi, math.pi)),
        clock_bias_s=float(rng.uniform(0, 2e-6)),
        targets=targets,
        ue_rcs_ms_m2=float(rng.uniform(5, 20)),
        phase_bp_rad=draw_phases(num_targets + 1, rng),
        phase_ms_rad=draw_phases(num_targets + 1, rng),
    )


def random_psd(rng: np.random.Generator, n: int, trace: float) -> np.ndarray:
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    v = g @ g.conj().T
    return v * (trace / np.trace(v).real)


@pytest.fixture(scope="session")
def small_ws():
    from crbeam.fim import FimWorkspace
    return FimWorkspace(small_scenario())
