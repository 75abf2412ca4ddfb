"""Fisher information assembly and position-error bounds.

Pipeline: channel-parameter information as a linear map of the transmit
covariance V, Jacobians into position-domain parameters, Schur-complement
reduction against nuisance parameters, and the scalar bound

    crb = tr( (F - G Z^{-1} G^T)^{-1} )

over the position block.  The linear maps are precomputed once per scene as
coefficient tensors so optimizers and sweeps can evaluate many V cheaply.

Position-parameter ordering:
    downlink: [ue position (2); orientation; target positions (2K);
               clock bias; Re gains; Im gains]            -> bound on first 2
    echo:     [ue position; target positions; Re gains; Im gains]
                                                          -> bound on first 2K+2
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import channel as chan
from .errors import ConfigurationError, CrbeamError, UnidentifiableParameterError
from .scenario import (SPEED_OF_LIGHT, GeometryConfig, Scenario, SystemConfig,
                       derive_bp_params, derive_ms_params)

COND_LIMIT = 1e12          # nuisance block treated singular beyond this
SCHUR_AGREEMENT_RTOL = 1e-8
PSD_EIG_RTOL = 1e-9        # eigenvalues below -rtol*trace violate PSD


def validate_variance_matrix(v: np.ndarray, power_budget: float,
                             rtol: float = 1e-6) -> np.ndarray:
    """Check Hermitian symmetry, positive semidefiniteness, and the trace cap."""
    v = np.asarray(v)
    if v.ndim != 2 or v.shape[0] != v.shape[1]:
        raise ConfigurationError(f"covariance must be square, got {v.shape}")
    herm_err = np.linalg.norm(v - v.conj().T) / max(np.linalg.norm(v), 1e-300)
    if herm_err > 1e-9:
        raise ConfigurationError(f"covariance not Hermitian (rel err {herm_err:.2e})")
    tr = float(np.trace(v).real)
    eigs = np.linalg.eigvalsh(v)
    if eigs.min() < -PSD_EIG_RTOL * max(tr, 1e-300):
        raise ConfigurationError(f"covariance not PSD (min eig {eigs.min():.3e})")
    if tr > power_budget * (1.0 + rtol):
        raise ConfigurationError(
            f"covariance trace {tr:.6e} exceeds budget {power_budget:.6e}")
    return v


def channel_fim(derivs: chan.ChannelDerivativeSet, v: np.ndarray,
                system: SystemConfig) -> np.ndarray:
    """Information over channel parameters, direct route over stored partials.

    Entry (i, j) = (2N/sigma^2) * sum_m Re tr(dH_m/dxi_j V dH_m/dxi_i^H).
    Slots enter through V itself (the sum of per-slot beamformer outer
    products), so the prefactor carries N only.
    """
    d = derivs.tensor
    if d.shape[-1] != v.shape[0]:
        raise ConfigurationError(
            f"covariance size {v.shape} does not match {d.shape[-1]} tx elements")
    prefactor = 2.0 * system.num_symbols / system.noise_power_watts
    dv = np.einsum("jmab,bc->jmac", d, v, optimize=True)
    out = prefactor * np.real(np.einsum("jmac,imac->ij", dv, d.conj(), optimize=True))
    return 0.5 * (out + out.T)


def _dbearing(vec: np.ndarray) -> np.ndarray:
    """Gradient of atan2(x, y) with respect to the displacement."""
    return np.array([vec[1], -vec[0]]) / float(vec @ vec)


def _unit(vec: np.ndarray) -> np.ndarray:
    return vec / float(np.linalg.norm(vec))


def bp_eta(geometry: GeometryConfig, params) -> np.ndarray:
    """Position-domain parameter vector matching :func:`jacobian_bp` columns."""
    gains = np.array([p.gain for p in params])
    return np.concatenate([
        geometry.ue_position_m,
        [geometry.ue_orientation_rad],
        np.ravel([t.position_m for t in geometry.targets]) if geometry.targets else [],
        [geometry.clock_bias_s],
        gains.real,
        gains.imag,
    ])


def bp_xi_of_eta(eta: np.ndarray, num_targets: int, bs_position) -> np.ndarray:
    """Channel parameters as a pure function of the position parameters."""
    k = num_targets
    p_b = np.asarray(bs_position, dtype=float)
    p_u = eta[0:2]
    phi = eta[2]
    p_t = eta[3:3 + 2 * k].reshape(k, 2)
    dt = eta[3 + 2 * k]
    g_re = eta[4 + 2 * k:5 + 3 * k]
    g_im = eta[5 + 3 * k:6 + 4 * k]

    def bear(vec):
        return np.arctan2(vec[0], vec[1])

    aod = [bear(p_u - p_b)] + [bear(pt - p_b) for pt in p_t]
    aoa = [bear(p_b - p_u) - phi] + [bear(pt - p_u) - phi for pt in p_t]
    dists = [np.linalg.norm(p_u - p_b)] + [
        np.linalg.norm(pt - p_b) + np.linalg.norm(pt - p_u) for pt in p_t]
    delays = [d / SPEED_OF_LIGHT + dt for d in dists]
    return np.concatenate([aod, aoa, delays, g_re, g_im])


def ms_eta(geometry: GeometryConfig, params) -> np.ndarray:
    gains = np.array([p.gain for p in params])
    return np.concatenate([
        geometry.ue_position_m,
        np.ravel([t.position_m for t in geometry.targets]) if geometry.targets else [],
        gains.real,
        gains.imag,
    ])


def ms_xi_of_eta(eta: np.ndarray, num_targets: int, bs_position) -> np.ndarray:
    k1 = num_targets + 1
    p_b = np.asarray(bs_position, dtype=float)
    pos = eta[0:2 * k1].reshape(k1, 2)
    g_re = eta[2 * k1:3 * k1]
    g_im = eta[3 * k1:4 * k1]
    aod = [np.arctan2(p[0] - p_b[0], p[1] - p_b[1]) for p in pos]
    delays = [2.0 * np.linalg.norm(p - p_b) / SPEED_OF_LIGHT for p in pos]
    return np.concatenate([aod, delays, g_re, g_im])


def jacobian_bp(geometry: GeometryConfig, system: SystemConfig) -> np.ndarray:
    """d(channel params)/d(position params) for the downlink, (5K+5) x (4K+6)."""
    k = geometry.num_targets
    p_b = np.asarray(geometry.bs_position_m, dtype=float)
    p_u = np.asarray(geometry.ue_position_m, dtype=float)
    tgts = [np.asarray(t.position_m, dtype=float) for t in geometry.targets]

    jac = np.zeros((5 * (k + 1), 4 * k + 6))
    col_ue = slice(0, 2)
    col_phi = 2
    col_tgt = lambda i: slice(3 + 2 * (i - 1), 5 + 2 * (i - 1))  # i = 1..K
    col_dt = 3 + 2 * k
    col_gr = slice(4 + 2 * k, 5 + 3 * k)
    col_gi = slice(5 + 3 * k, 6 + 4 * k)

    # departure angles
    jac[0, col_ue] = _dbearing(p_u - p_b)
    for i, pt in enumerate(tgts, start=1):
        jac[i, col_tgt(i)] = _dbearing(pt - p_b)
    # arrival angles (UE local frame)
    row = k + 1
    jac[row, col_ue] = -_dbearing(p_b - p_u)
    jac[row, col_phi] = -1.0
    for i, pt in enumerate(tgts, start=1):
        jac[row + i, col_ue] = -_dbearing(pt - p_u)
        jac[row + i, col_tgt(i)] = _dbearing(pt - p_u)
        jac[row + i, col_phi] = -1.0
    # delays
    row = 2 * (k + 1)
    jac[row, col_ue] = _unit(p_u - p_b) / SPEED_OF_LIGHT
    jac[row, col_dt] = 1.0
    for i, pt in enumerate(tgts, start=1):
        jac[row + i, col_tgt(i)] = (_unit(pt - p_b) + _unit(pt - p_u)) / SPEED_OF_LIGHT
        jac[row + i, col_ue] = _unit(p_u - pt) / SPEED_OF_LIGHT
        jac[row + i, col_dt] = 1.0
    # gains pass through unchanged
    row = 3 * (k + 1)
    jac[row:row + k + 1, col_gr] = np.eye(k + 1)
    jac[row + k + 1:, col_gi] = np.eye(k + 1)
    return jac


def jacobian_ms(geometry: GeometryConfig, system: SystemConfig) -> np.ndarray:
    """d(channel params)/d(position params) for the echo, (4K+4) x (4K+4)."""
    k = geometry.num_targets
    p_b = np.asarray(geometry.bs_position_m, dtype=float)
    objs = [np.asarray(geometry.ue_position_m, dtype=float)]
    objs += [np.asarray(t.position_m, dtype=float) for t in geometry.targets]

    jac = np.zeros((4 * (k + 1), 4 * k + 4))
    col_pos = lambda i: slice(2 * i, 2 * i + 2)  # i = 0..K, 0 is the UE
    col_gr = slice(2 * k + 2, 3 * k + 3)
    col_gi = slice(3 * k + 3, 4 * k + 4)

    for i, po in enumerate(objs):
        jac[i, col_pos(i)] = _dbearing(po - p_b)
        jac[k + 1 + i, col_pos(i)] = 2.0 * _unit(po - p_b) / SPEED_OF_LIGHT
    jac[2 * (k + 1):3 * (k + 1), col_gr] = np.eye(k + 1)
    jac[3 * (k + 1):, col_gi] = np.eye(k + 1)
    return jac


@dataclass(frozen=True)
class PositionFim:
    """Position-domain information matrix plus its block split."""
    matrix: np.ndarray
    n_position: int

    @property
    def f_block(self) -> np.ndarray:
        return self.matrix[:self.n_position, :self.n_position]

    @property
    def g_block(self) -> np.ndarray:
        return self.matrix[:self.n_position, self.n_position:]

    @property
    def z_block(self) -> np.ndarray:
        return self.matrix[self.n_position:, self.n_position:]


def position_fim(i_c: np.ndarray, jacobian: np.ndarray, n_position: int) -> PositionFim:
    """Congruence I_p = J^T I_c J with the position block leading."""
    if i_c.shape[0] != jacobian.shape[0]:
        raise ConfigurationError(
            f"channel FIM size {i_c.shape} does not match jacobian rows {jacobian.shape}")
    mat = jacobian.T @ i_c @ jacobian
    return PositionFim(matrix=0.5 * (mat + mat.T), n_position=n_position)


def _nuisance_scale(pfim: PositionFim) -> np.ndarray:
    diag = np.diag(pfim.z_block).copy()
    safe = diag > 0
    scale = np.ones_like(diag)
    scale[safe] = 1.0 / np.sqrt(diag[safe])
    return scale


def _check_invertible(mat: np.ndarray, label: str) -> None:
    cond = np.linalg.cond(mat)
    if not np.isfinite(cond) or cond >= COND_LIMIT:
        eigs = np.linalg.eigvalsh(mat)
        null_dim = int(np.sum(np.abs(eigs) < np.abs(eigs).max() / COND_LIMIT))
        raise UnidentifiableParameterError(
            f"{label} is numerically singular (cond {cond:.3e}); "
            f"approximate null-space dimension {null_dim}",
            null_space_dim=null_dim)


def crb(pfim: PositionFim) -> float:
    """Trace bound over the position block, via the Schur complement.

    Nuisance coordinates are diagonally rescaled first (an exact congruence
    that leaves the bound unchanged) so the reduction is well conditioned.
    The Schur route is cross-checked against inverting the full matrix.
    """
    npos = pfim.n_position
    scale = _nuisance_scale(pfim)
    f_blk = pfim.f_block
    g_blk = pfim.g_block * scale[None, :]
    z_blk = pfim.z_block * scale[:, None] * scale[None, :]
    if z_blk.size:
        _check_invertible(z_blk, "nuisance information block")
        efim = f_blk - g_blk @ np.linalg.solve(z_blk, g_blk.T)
    else:
        efim = f_blk
    efim = 0.5 * (efim + efim.T)
    _check_invertible(efim, "equivalent position information")
    value = float(np.trace(np.linalg.inv(efim)))

    t_full = np.concatenate([np.ones(npos), scale])
    scaled = pfim.matrix * t_full[:, None] * t_full[None, :]
    _check_invertible(scaled, "position information matrix")
    direct = float(np.trace(np.linalg.inv(scaled)[:npos, :npos]))
    denom = max(abs(value), abs(direct), 1e-300)
    if abs(value - direct) / denom > SCHUR_AGREEMENT_RTOL:
        raise CrbeamError(
            f"Schur and direct bound evaluations disagree: {value!r} vs {direct!r}")
    return value


@dataclass(frozen=True)
class FimCoefficients:
    """Linear map from the transmit covariance to the position information.

    ``q[u, v]`` is the complex coefficient matrix with
    I_p[u, v] = Re tr(q[u, v] @ V); built once per scene and reused by every
    covariance evaluation and by the conic problem builders.
    """
    mode: str
    q: np.ndarray              # (n_eta, n_eta, n_tx, n_tx)
    n_position: int

    @property
    def n_eta(self) -> int:
        return self.q.shape[0]

    @property
    def n_tx(self) -> int:
        return self.q.shape[-1]

    def evaluate(self, v: np.ndarray) -> PositionFim:
        mat = np.real(np.einsum("uvbc,cb->uv", self.q, v, optimize=True))
        return PositionFim(matrix=0.5 * (mat + mat.T), n_position=self.n_position)

    def crb(self, v: np.ndarray) -> float:
        return crb(self.evaluate(v))


def _pairwise_coefficients(derivs: chan.ChannelDerivativeSet,
                           system: SystemConfig) -> np.ndarray:
    """K[i, j] with channel-FIM entry (i, j) = Re tr(K[i, j] @ V)."""
    d = derivs.tensor
    n, m_count, n_rx, n_tx = d.shape
    flat = d.transpose(0, 3, 1, 2).reshape(n * n_tx, m_count * n_rx)
    gram = flat.conj() @ flat.T
    k4 = gram.reshape(n, n_tx, n, n_tx).transpose(0, 2, 1, 3)
    prefactor = 2.0 * system.num_symbols / system.noise_power_watts
    return prefactor * k4


def build_fim_coefficients(scenario: Scenario, mode: str) -> FimCoefficients:
    system, geometry = scenario.system, scenario.geometry
    if mode == chan.BP:
        params = derive_bp_params(geometry, system)
        jac = jacobian_bp(geometry, system)
        n_position = 2
    elif mode == chan.MS:
        params = derive_ms_params(geometry, system)
        jac = jacobian_ms(geometry, system)
        n_position = 2 * geometry.num_targets + 2
    else:
        raise ValueError(f"mode must be '{chan.BP}' or '{chan.MS}'")
    derivs = chan.channel_derivatives(params, system, scenario.arrays, mode)
    pairwise = _pairwise_coefficients(derivs, system)
    q = np.einsum("iu,ijbc,jv->uvbc", jac, pairwise, jac, optimize=True)
    return FimCoefficients(mode=mode, q=q, n_position=n_position)


@dataclass(frozen=True)
class SolverScaling:
    """Exact congruence bringing one mode's information maps to solver scale.

    ``nuisance`` rescales nuisance coordinates to unit diagonal and ``gain``
    normalizes the reduced position information; the true bound is
    gain * tr(U'^{-1}) at the scaled optimum.
    """
    nuisance: np.ndarray   # full-length diagonal, identity over positions
    gain: float

    def apply(self, q: np.ndarray) -> np.ndarray:
        t = self.nuisance
        return (q / self.gain) * t[:, None, None, None] * t[None, :, None, None]


def make_solver_scaling(coeffs: FimCoefficients, reference_v: np.ndarray) -> SolverScaling:
    pfim = coeffs.evaluate(reference_v)
    npos = coeffs.n_position
    scale = _nuisance_scale(pfim)
    g_blk = pfim.g_block * scale[None, :]
    z_blk = pfim.z_block * scale[:, None] * scale[None, :]
    efim = pfim.f_block - g_blk @ np.linalg.solve(z_blk, g_blk.T) if z_blk.size \
        else pfim.f_block
    gain = float(np.mean(np.diag(efim)))
    full = np.concatenate([np.ones(npos), scale])
    return SolverScaling(nuisance=full, gain=gain)


class FimWorkspace:
    """Both information maps for one scene, plus solver scalings.

    Immutable after construction; shared freely across concurrent solves.
    """

    def __init__(self, scenario: Scenario):
        self.scenario = scenario
        self.bp = build_fim_coefficients(scenario, chan.BP)
        self.ms = build_fim_coefficients(scenario, chan.MS)
        self.power_budget = scenario.system.power_per_subcarrier_watts
        self.n_tx = scenario.arrays.bs_tx.num_elements
        self.aod_rad = tuple(
            p.aod_rad for p in derive_ms_params(scenario.geometry, scenario.system))

    @cached_property
    def isotropic_v(self) -> np.ndarray:
        return self.power_budget / self.n_tx * np.eye(self.n_tx, dtype=complex)

    @cached_property
    def bp_scaling(self) -> SolverScaling:
        return make_solver_scaling(self.bp, self.isotropic_v)

    @cached_property
    def ms_scaling(self) -> SolverScaling:
        return make_solver_scaling(self.ms, self.isotropic_v)

    @cached_property
    def isotropic_crbs(self) -> tuple[float, float]:
        return self.bp.crb(self.isotropic_v), self.ms.crb(self.isotropic_v)

    def crb_pair(self, v: np.ndarray) -> tuple[float, float]:
        """(downlink bound, echo bound) in m^2 for one covariance."""
        return self.bp.crb(v), self.ms.crb(v)

    def sqrt_crb_pair(self, v: np.ndarray) -> tuple[float, float]:
        b, m = self.crb_pair(v)
        return float(np.sqrt(b)), float(np.sqrt(m))
