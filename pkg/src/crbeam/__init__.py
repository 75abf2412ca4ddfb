"""Beamforming tradeoffs between downlink positioning and monostatic sensing.

Position-error bounds for a MIMO-OFDM downlink (UE self-positioning with
clock bias and orientation unknowns) and for colocated-radar sensing of the
scene, as functions of the transmit covariance, plus convex designs that
trace the tradeoff between the two.
"""

__version__ = "0.1.0"

from .errors import (ConfigurationError, CrbeamError, DegenerateGeometryError,
                     DegenerateMismatchError, SolverFailure,
                     UnidentifiableParameterError)
from .scenario import (ArraySet, ArraySpec, GeometryConfig, Scenario,
                       SystemConfig, TargetSpec, default_scenario, load_config,
                       noise_power, save_config)
from .fim import FimWorkspace, crb, position_fim
from .optimize import (SCHEMES, Codebook, TradeoffPoint, apa, beampattern,
                       build_cpa_codebook, recover_beamformers, rho_grid,
                       solve_wbf, solve_wcrb_cpa, solve_wcrb_fdb, solve_wvm,
                       tradeoff_points)

__all__ = [
    "ArraySet", "ArraySpec", "Codebook", "ConfigurationError", "CrbeamError",
    "DegenerateGeometryError", "DegenerateMismatchError", "FimWorkspace",
    "GeometryConfig", "SCHEMES", "Scenario", "SolverFailure", "SystemConfig",
    "TargetSpec", "TradeoffPoint", "UnidentifiableParameterError", "apa",
    "beampattern", "build_cpa_codebook", "crb", "default_scenario",
    "load_config", "noise_power", "position_fim", "recover_beamformers",
    "rho_grid", "save_config", "solve_wbf", "solve_wcrb_cpa", "solve_wcrb_fdb",
    "solve_wvm", "tradeoff_points",
]
