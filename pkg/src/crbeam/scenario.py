"""Scene configuration and channel-domain parameter derivation.

Holds the waveform/power constants and the 2-D geometry (base station,
user equipment, passive targets), and maps geometry to per-path channel
parameters: complex gains from free-space/radar-equation path loss,
propagation delays, and angles.

Angle convention: all bearings are measured from the +y axis (the array
boresight), ``bearing(v) = atan2(v_x, v_y)``, so that a uniform linear
array laid out along the x axis responds as ``exp(j*pi*i*sin(theta))``.
The UE-local angle of arrival is the global bearing minus the UE
orientation ``phi``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, asdict, replace

import numpy as np

from .errors import ConfigurationError, DegenerateGeometryError

SPEED_OF_LIGHT = 299_792_458.0  # m/s, exact


def noise_power(noise_figure_db: float, noise_psd_dbm_per_hz: float,
                subcarrier_spacing_hz: float) -> float:
    """Thermal noise power in watts over one subcarrier.

    dB arithmetic: sigma^2_dBm = F_dB + N0_dBm/Hz + 10*log10(delta_f).
    """
    if subcarrier_spacing_hz <= 0:
        raise ConfigurationError("subcarrier spacing must be positive")
    dbm = noise_figure_db + noise_psd_dbm_per_hz + 10.0 * math.log10(subcarrier_spacing_hz)
    return 10.0 ** ((dbm - 30.0) / 10.0)


def dbm_to_watts(dbm: float) -> float:
    return 10.0 ** ((dbm - 30.0) / 10.0)


@dataclass(frozen=True)
class SystemConfig:
    carrier_frequency_hz: float      # f_c
    bandwidth_hz: float              # occupied bandwidth, M * delta_f
    num_subcarriers: int             # M
    num_symbols: int                 # N, pilot symbols per slot
    num_slots: int                   # L
    power_dbm: float                 # total budget over all subcarriers
    noise_figure_db: float           # F
    noise_psd_dbm_per_hz: float      # N0, single-sided
    rng_seed: int = 1

    def __post_init__(self):
        if self.carrier_frequency_hz <= 0 or self.bandwidth_hz <= 0:
            raise ConfigurationError("carrier frequency and bandwidth must be positive")
        if self.num_subcarriers < 1 or self.num_symbols < 1 or self.num_slots < 1:
            raise ConfigurationError("subcarrier/symbol/slot counts must be >= 1")

    @property
    def subcarrier_spacing_hz(self) -> float:
        return self.bandwidth_hz / self.num_subcarriers

    @property
    def wavelength_m(self) -> float:
        return SPEED_OF_LIGHT / self.carrier_frequency_hz

    @property
    def total_power_watts(self) -> float:
        return dbm_to_watts(self.power_dbm)

    @property
    def power_per_subcarrier_watts(self) -> float:
        """Transmit covariance trace budget: total power split over M subcarriers."""
        return self.total_power_watts / self.num_subcarriers

    @property
    def noise_power_watts(self) -> float:
        return noise_power(self.noise_figure_db, self.noise_psd_dbm_per_hz,
                           self.subcarrier_spacing_hz)


@dataclass(frozen=True)
class TargetSpec:
    position_m: tuple[float, float]
    rcs_bp_m2: float   # cross-section seen on the downlink reflection
    rcs_ms_m2: float   # cross-section seen by the colocated radar


@dataclass(frozen=True)
class GeometryConfig:
    bs_position_m: tuple[float, float]
    ue_position_m: tuple[float, float]
    ue_orientation_rad: float                 # phi
    clock_bias_s: float                       # delta_t, downlink only
    targets: tuple[TargetSpec, ...]
    ue_rcs_ms_m2: float                       # UE echo cross-section in sensing
    phase_bp_rad: tuple[float, ...]           # zeta per downlink path, length K+1
    phase_ms_rad: tuple[float, ...]           # zeta per echo path, length K+1

    def __post_init__(self):
        k1 = len(self.targets) + 1
        if len(self.phase_bp_rad) != k1 or len(self.phase_ms_rad) != k1:
            raise ConfigurationError(
                f"need {k1} gain phases per mode, got "
                f"{len(self.phase_bp_rad)} / {len(self.phase_ms_rad)}")
        for ph in (*self.phase_bp_rad, *self.phase_ms_rad):
            if not -math.pi <= ph <= math.pi:
                raise ConfigurationError("gain phases must lie in [-pi, pi]")
        pts = [self.bs_position_m, self.ue_position_m] + [t.position_m for t in self.targets]
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if math.dist(pts[i], pts[j]) <= 0.0:
                    raise DegenerateGeometryError(
                        f"scene points {i} and {j} coincide at {pts[i]}")

    @property
    def num_targets(self) -> int:
        return len(self.targets)


@dataclass(frozen=True)
class PathParamsBP:
    """One downlink path: complex gain, delay (incl. clock bias), AoD, local AoA."""
    gain: complex
    delay_s: float
    aod_rad: float    # bearing from the BS, boresight-referenced
    aoa_rad: float    # bearing at the UE minus its orientation


@dataclass(frozen=True)
class PathParamsMS:
    """One round-trip echo path: complex gain, two-way delay, AoD (= AoA at BS)."""
    gain: complex
    delay_s: float
    aod_rad: float


def bearing(vec) -> float:
    """Bearing of a displacement measured from the +y boresight axis."""
    x, y = float(vec[0]), float(vec[1])
    if x == 0.0 and y == 0.0:
        raise DegenerateGeometryError("bearing of the zero vector is undefined")
    return math.atan2(x, y)


def draw_phases(num_paths: int, rng: np.random.Generator) -> tuple[float, ...]:
    """One uniform phase on [-pi, pi] per path."""
    return tuple(rng.uniform(-math.pi, math.pi, num_paths).tolist())


def derive_bp_params(geometry: GeometryConfig, system: SystemConfig) -> list[PathParamsBP]:
    """Channel parameters of the downlink: index 0 is the direct path.

    Direct-path amplitude follows the free-space law lambda/(4*pi*d); each
    reflected path uses the bistatic radar equation
    lambda*sqrt(rcs)/((4*pi)^(3/2)*d_tx*d_rx).  Delays include the clock bias.
    """
    lam = system.wavelength_m
    p_b = np.asarray(geometry.bs_position_m, dtype=float)
    p_u = np.asarray(geometry.ue_position_m, dtype=float)
    phi = geometry.ue_orientation_rad
    dt = geometry.clock_bias_s

    d_bu = float(np.linalg.norm(p_u - p_b))
    paths = [PathParamsBP(
        gain=np.exp(1j * geometry.phase_bp_rad[0]) * lam / (4.0 * math.pi * d_bu),
        delay_s=d_bu / SPEED_OF_LIGHT + dt,
        aod_rad=bearing(p_u - p_b),
        aoa_rad=bearing(p_b - p_u) - phi,
    )]
    for k, tgt in enumerate(geometry.targets, start=1):
        p_k = np.asarray(tgt.position_m, dtype=float)
        d_bk = float(np.linalg.norm(p_k - p_b))
        d_uk = float(np.linalg.norm(p_u - p_k))
        amp = lam * math.sqrt(tgt.rcs_bp_m2) / ((4.0 * math.pi) ** 1.5 * d_uk * d_bk)
        paths.append(PathParamsBP(
            gain=amp * np.exp(1j * geometry.phase_bp_rad[k]),
            delay_s=(d_bk + d_uk) / SPEED_OF_LIGHT + dt,
            aod_rad=bearing(p_k - p_b),
            aoa_rad=bearing(p_k - p_u) - phi,
        ))
    return paths


def derive_ms_params(geometry: GeometryConfig, system: SystemConfig) -> list[PathParamsMS]:
    """Round-trip echo parameters: index 0 is the UE acting as a target.

    Monostatic radar equation amplitude lambda*sqrt(rcs)/((4*pi)^(3/2)*d^2);
    two-way delays, no clock bias (colocated transmit/receive).
    """
    lam = system.wavelength_m
    p_b = np.asarray(geometry.bs_position_m, dtype=float)
    objects = [(geometry.ue_position_m, geometry.ue_rcs_ms_m2)]
    objects += [(t.position_m, t.rcs_ms_m2) for t in geometry.targets]

    paths = []
    for k, (pos, rcs) in enumerate(objects):
        p_k = np.asarray(pos, dtype=float)
        d = float(np.linalg.norm(p_k - p_b))
        amp = lam * math.sqrt(rcs) / ((4.0 * math.pi) ** 1.5 * d * d)
        paths.append(PathParamsMS(
            gain=amp * np.exp(1j * geometry.phase_ms_rad[k]),
            delay_s=2.0 * d / SPEED_OF_LIGHT,
            aod_rad=bearing(p_k - p_b),
        ))
    return paths


_DEFAULT_TARGETS = (
    TargetSpec(position_m=(-10.0, 15.0), rcs_bp_m2=100.0, rcs_ms_m2=100.0),
    TargetSpec(position_m=(5.0, 15.0), rcs_bp_m2=100.0, rcs_ms_m2=100.0),
    TargetSpec(position_m=(0.0, 17.0), rcs_bp_m2=100.0, rcs_ms_m2=100.0),
)


def default_scenario(seed: int = 1, num_targets: int = 3) -> tuple[SystemConfig, GeometryConfig]:
    """Reference 28 GHz scene: BS at the origin, UE at (-5, 20), up to 3 targets.

    ``num_targets=2`` keeps targets 1 and 2 only.  Gain phases are drawn
    once from ``seed`` and stored, so reruns are reproducible.
    """
    if not 0 <= num_targets <= len(_DEFAULT_TARGETS):
        raise ConfigurationError("num_targets must be between 0 and 3")
    system = SystemConfig(
        carrier_frequency_hz=28e9,
        bandwidth_hz=120e6,
        num_subcarriers=1024,
        num_symbols=100,
        num_slots=16,
        power_dbm=-20.0,
        noise_figure_db=10.0,
        noise_psd_dbm_per_hz=-173.855,
        rng_seed=seed,
    )
    rng = np.random.default_rng(seed)
    targets = _DEFAULT_TARGETS[:num_targets]
    geometry = GeometryConfig(
        bs_position_m=(0.0, 0.0),
        ue_position_m=(-5.0, 20.0),
        ue_orientation_rad=(110.0 / 180.0) * math.pi,
        clock_bias_s=1e-6,
        targets=targets,
        ue_rcs_ms_m2=10.0,
        phase_bp_rad=draw_phases(num_targets + 1, rng),
        phase_ms_rad=draw_phases(num_targets + 1, rng),
    )
    return system, geometry


def redraw_phases(geometry: GeometryConfig, seed: int) -> GeometryConfig:
    """Same scene with a fresh phase realization drawn from ``seed``."""
    rng = np.random.default_rng(seed)
    k1 = geometry.num_targets + 1
    return replace(geometry,
                   phase_bp_rad=draw_phases(k1, rng),
                   phase_ms_rad=draw_phases(k1, rng))


@dataclass(frozen=True)
class ArraySpec:
    num_elements: int
    element_spacing_wavelengths: float = 0.5

    def __post_init__(self):
        if self.num_elements < 1:
            raise ConfigurationError("arrays need at least one element")
        if self.element_spacing_wavelengths <= 0:
            raise ConfigurationError("element spacing must be positive")


@dataclass(frozen=True)
class ArraySet:
    bs_tx: ArraySpec
    bs_rx: ArraySpec
    ue: ArraySpec


def default_arrays() -> ArraySet:
    return ArraySet(bs_tx=ArraySpec(16), bs_rx=ArraySpec(16), ue=ArraySpec(16))


@dataclass(frozen=True)
class Scenario:
    """Everything one experiment needs: waveform, geometry, arrays."""
    system: SystemConfig
    geometry: GeometryConfig
    arrays: ArraySet = field(default_factory=default_arrays)

    @classmethod
    def default(cls, seed: int = 1, num_targets: int = 3) -> "Scenario":
        system, geometry = default_scenario(seed=seed, num_targets=num_targets)
        return cls(system=system, geometry=geometry)

    def with_seed(self, seed: int) -> "Scenario":
        return replace(self,
                       system=replace(self.system, rng_seed=seed),
                       geometry=redraw_phases(self.geometry, seed))


def scenario_to_dict(scenario: Scenario) -> dict:
    out = {
        "system": asdict(scenario.system),
        "geometry": {
            "bs_position_m": list(scenario.geometry.bs_position_m),
            "ue_position_m": list(scenario.geometry.ue_position_m),
            "ue_orientation_rad": scenario.geometry.ue_orientation_rad,
            "clock_bias_s": scenario.geometry.clock_bias_s,
            "ue_rcs_ms_m2": scenario.geometry.ue_rcs_ms_m2,
            "targets": [
                {"position_m": list(t.position_m),
                 "rcs_bp_m2": t.rcs_bp_m2,
                 "rcs_ms_m2": t.rcs_ms_m2}
                for t in scenario.geometry.targets
            ],
            "phase_bp_rad": list(scenario.geometry.phase_bp_rad),
            "phase_ms_rad": list(scenario.geometry.phase_ms_rad),
        },
        "arrays": {
            "bs_tx_elements": scenario.arrays.bs_tx.num_elements,
            "bs_rx_elements": scenario.arrays.bs_rx.num_elements,
            "ue_elements": scenario.arrays.ue.num_elements,
            "element_spacing_wavelengths": scenario.arrays.bs_tx.element_spacing_wavelengths,
        },
    }
    return out


def scenario_from_dict(data: dict) -> Scenario:
    try:
        sysd = dict(data["system"])
        geod = dict(data["geometry"])
        arrd = dict(data.get("arrays", {}))
    except (KeyError, TypeError) as exc:
        raise ConfigurationError(f"config missing section: {exc}") from exc
    try:
        system = SystemConfig(**sysd)
        spacing = arrd.get("element_spacing_wavelengths", 0.5)
        arrays = ArraySet(
            bs_tx=ArraySpec(arrd.get("bs_tx_elements", 16), spacing),
            bs_rx=ArraySpec(arrd.get("bs_rx_elements", 16), spacing),
            ue=ArraySpec(arrd.get("ue_elements", 16), spacing),
        )
        targets = tuple(
            TargetSpec(position_m=tuple(t["position_m"]),
                       rcs_bp_m2=t["rcs_bp_m2"],
                       rcs_ms_m2=t["rcs_ms_m2"])
            for t in geod.get("targets", ())
        )
        k1 = len(targets) + 1
        if "phase_bp_rad" in geod:
            phase_bp = tuple(geod["phase_bp_rad"])
            phase_ms = tuple(geod["phase_ms_rad"])
        else:
            rng = np.random.default_rng(system.rng_seed)
            phase_bp = draw_phases(k1, rng)
            phase_ms = draw_phases(k1, rng)
        geometry = GeometryConfig(
            bs_position_m=tuple(geod["bs_position_m"]),
            ue_position_m=tuple(geod["ue_position_m"]),
            ue_orientation_rad=geod["ue_orientation_rad"],
            clock_bias_s=geod["clock_bias_s"],
            targets=targets,
            ue_rcs_ms_m2=geod["ue_rcs_ms_m2"],
            phase_bp_rad=phase_bp,
            phase_ms_rad=phase_ms,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigurationError(f"bad config value: {exc}") from exc
    return Scenario(system=system, geometry=geometry, arrays=arrays)


def load_config(path) -> Scenario:
    """Read a scenario from a JSON config file."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigurationError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"config {path} is not valid JSON: {exc}") from exc
    return scenario_from_dict(data)


def save_config(scenario: Scenario, path) -> None:
    with open(path, "w") as fh:
        json.dump(scenario_to_dict(scenario), fh, indent=2)
        fh.write("\n")
