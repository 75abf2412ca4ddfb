"""Transmit-covariance designs trading downlink positioning against sensing.

Seven schemes: the weighted-bound semidefinite program over the full
covariance (FDB-WCRB) and over a steering/derivative codebook allocation
(CPA-WCRB); weighted beamformer-mismatch (WBF) and covariance-mismatch (WVM)
interpolants between the two single-objective endpoints, for both families;
and a non-adaptive equal allocation over the codebook (APA).
"""

from __future__ import annotations

import math
import time
import warnings
from dataclasses import dataclass

import cvxpy as cp
import numpy as np

from . import conic
from .array import steering, steering_derivative
from .errors import (ConfigurationError, DegenerateMismatchError,
                     SolverFailure)
from .fim import FimCoefficients, FimWorkspace, SolverScaling
from .scenario import Scenario

SCHEMES = ("FDB-WCRB", "FDB-WBF", "FDB-WVM",
           "CPA-WCRB", "CPA-WBF", "CPA-WVM", "APA")

RANK_EIG_RTOL = 1e-9   # eigenvalues below rtol*trace count as zero rank


@dataclass(frozen=True)
class TradeoffPoint:
    scheme: str
    rho: float | None             # None for the single APA point
    crb_bp_sqrt_m: float | None
    crb_ms_sqrt_m: float | None
    solve_time_s: float
    status: str


@dataclass(frozen=True)
class Codebook:
    """Steering and steering-derivative directions toward every scene object."""
    angles_rad: tuple[float, ...]
    raw_columns: np.ndarray        # n_tx x (2K+2), unnormalized
    column_norms: np.ndarray
    columns: np.ndarray            # unit-norm columns

    @property
    def num_columns(self) -> int:
        return self.raw_columns.shape[1]


def build_cpa_codebook(scenario: Scenario) -> Codebook:
    """Columns: response then response-derivative at each object bearing."""
    from .scenario import derive_ms_params
    spec = scenario.arrays.bs_tx
    angles = tuple(p.aod_rad for p in
                   derive_ms_params(scenario.geometry, scenario.system))
    cols = [steering(spec, th) for th in angles]
    cols += [steering_derivative(spec, th) for th in angles]
    raw = np.array(cols).T
    norms = np.linalg.norm(raw, axis=0)
    if norms.min() <= 0:
        raise ConfigurationError(
            "codebook contains a zero column (derivative at broadside-null angle)")
    return Codebook(angles_rad=angles, raw_columns=raw, column_norms=norms,
                    columns=raw / norms)


def rho_grid(num_points: int = 21) -> np.ndarray:
    """Symmetric cubic spacing, clustered toward both endpoints."""
    if num_points < 2:
        raise ConfigurationError("rho grid needs at least two points")
    t = np.linspace(0.0, 1.0, num_points)
    lo = 4.0 * t ** 3
    hi = 1.0 - 4.0 * (1.0 - t) ** 3
    return np.where(t <= 0.5, lo, hi)


def _project_psd(v: np.ndarray, label: str) -> np.ndarray:
    v = 0.5 * (v + v.conj().T)
    eigs, vecs = np.linalg.eigh(v)
    if eigs.min() >= 0:
        return v
    clipped = np.clip(eigs, 0.0, None)
    distance = float(np.linalg.norm(eigs - clipped))
    trace = float(np.trace(v).real)
    if distance > 1e-6 * max(trace, 1e-300):
        warnings.warn(f"{label}: projected onto the PSD cone by {distance:.3e} "
                      f"(trace {trace:.3e})", RuntimeWarning, stacklevel=3)
    return (vecs * clipped) @ vecs.conj().T


# ---------------------------------------------------------------------------
# weighted-bound program
# ---------------------------------------------------------------------------

def _sym_unit(n: int, i: int, j: int) -> np.ndarray:
    out = np.zeros((n, n))
    out[i, j] += 0.5
    out[j, i] += 0.5
    return out


def _bound_lmi(coeffs: FimCoefficients, scaling: SolverScaling, budget: float,
               u_name: str, var_name: str, codebook: Codebook | None) -> conic.LmiConstraint:
    """[[F' - U, G'], [G'^T, Z']] >= 0 with the information map affine in the variable."""
    q_scaled = scaling.apply(coeffs.q)
    n_eta = coeffs.n_eta
    npos = coeffs.n_position
    if codebook is None:
        two_n = 2 * coeffs.n_tx
        cov_t = np.empty((n_eta, n_eta, two_n, two_n))
        for u in range(n_eta):
            for v in range(n_eta):
                cov_t[u, v] = 0.5 * budget * conic.embed_hermitian(q_scaled[u, v])
    else:
        ncol = codebook.num_columns
        cov_t = np.zeros((n_eta, n_eta, ncol, ncol))
        cols = codebook.columns
        for r in range(ncol):
            u_r = cols[:, r]
            contrib = budget * np.real(
                np.einsum("b,uvbc,c->uv", u_r.conj(), q_scaled, u_r, optimize=True))
            cov_t[:, :, r, r] = contrib
    u_t = np.zeros((n_eta, n_eta, npos, npos))
    for u in range(npos):
        for v in range(npos):
            u_t[u, v] = -_sym_unit(npos, u, v)
    return conic.LmiConstraint(
        size=n_eta,
        const=np.zeros((n_eta, n_eta)),
        terms={var_name: cov_t, u_name: u_t},
    )


def _epigraph_lmi(npos: int, t_name: str, u_name: str) -> conic.LmiConstraint:
    """[[T, I], [I, U]] >= 0, so tr(T) upper-bounds tr(U^{-1})."""
    size = 2 * npos
    const = np.zeros((size, size))
    const[:npos, npos:] = np.eye(npos)
    const[npos:, :npos] = np.eye(npos)
    terms_t = np.zeros((size, size, npos, npos))
    terms_u = np.zeros((size, size, npos, npos))
    for i in range(npos):
        for j in range(npos):
            terms_t[i, j] = _sym_unit(npos, i, j)
            terms_u[npos + i, npos + j] = _sym_unit(npos, i, j)
    return conic.LmiConstraint(size=size, const=const,
                               terms={t_name: terms_t, u_name: terms_u})


@dataclass(frozen=True)
class _WcrbDecode:
    budget: float
    codebook: Codebook | None


def build_wcrb_problem(workspace: FimWorkspace, rho: float,
                       codebook: Codebook | None = None
                       ) -> tuple[conic.ConicProblem, _WcrbDecode]:
    """Weighted-bound program as a conic-contract instance.

    The covariance is solved in budget units (trace <= 1) and each mode's
    information map is congruence-rescaled (see :class:`SolverScaling`);
    both transformations are exact and undone when decoding.
    """
    if not 0.0 <= rho <= 1.0:
        raise ConfigurationError(f"rho must lie in [0, 1], got {rho}")
    budget = workspace.power_budget
    crb_iso_bp, crb_iso_ms = workspace.isotropic_crbs
    weight_norm = 1.0 / (rho * crb_iso_bp + (1.0 - rho) * crb_iso_ms)

    if codebook is None:
        var_block = conic.BlockSpec("cov", 2 * workspace.n_tx, hermitian_embedded=True)
        trace_term = {"cov": 0.5 * np.eye(2 * workspace.n_tx)}
    else:
        var_block = conic.BlockSpec("alloc", codebook.num_columns, diagonal=True)
        trace_term = {"alloc": np.eye(codebook.num_columns)}

    blocks = [var_block]
    lmis = []
    objective_terms: dict[str, np.ndarray] = {}
    # both modes stay in the program even at the endpoints: the inactive
    # LMIs are redundant but keep the primal-dual geometry well behaved
    for mode, coeffs, scaling, weight in (
            ("bp", workspace.bp, workspace.bp_scaling, rho),
            ("ms", workspace.ms, workspace.ms_scaling, 1.0 - rho)):
        npos = coeffs.n_position
        blocks.append(conic.BlockSpec(f"u_{mode}", npos))
        blocks.append(conic.BlockSpec(f"t_{mode}", npos))
        lmis.append(_bound_lmi(coeffs, scaling, budget,
                               f"u_{mode}", var_block.name, codebook))
        lmis.append(_epigraph_lmi(npos, f"t_{mode}", f"u_{mode}"))
        # scaled maps divide by `gain`, so tr(T') recovers gain * bound
        objective_terms[f"t_{mode}"] = (
            weight_norm * weight / scaling.gain * np.eye(npos))

    problem = conic.ConicProblem(
        blocks=tuple(blocks),
        objective=conic.LinearExpr(terms=objective_terms),
        lmis=tuple(lmis),
        constraints=(conic.LinearConstraint(
            expr=conic.LinearExpr(terms=trace_term), bound=1.0), ),
    )
    return problem, _WcrbDecode(budget=budget, codebook=codebook)


def _decode_wcrb(solution: conic.ConicSolution, decode: _WcrbDecode
                 ) -> tuple[np.ndarray, np.ndarray | None]:
    if decode.codebook is None:
        v = decode.budget * conic.unembed_hermitian(solution.blocks["cov"])
        return _project_psd(v, "weighted-bound covariance"), None
    alloc = decode.budget * np.diag(solution.blocks["alloc"]).copy()
    cols = decode.codebook.columns
    v = (cols * alloc) @ cols.conj().T
    return _project_psd(v, "codebook covariance"), alloc


def wcrb_covariance(workspace: FimWorkspace, rho: float,
                    codebook: Codebook | None = None,
                    tol: float = conic.DEFAULT_TOL,
                    accept_tol: float = 1e-7,
                    ) -> tuple[np.ndarray, np.ndarray | None, conic.ConicSolution]:
    """Solve the weighted-bound program, retrying at the accepted tolerance."""
    problem, decode = build_wcrb_problem(workspace, rho, codebook)
    solution = conic.solve(problem, tol=tol)
    if solution.status != conic.OPTIMAL and accept_tol > tol:
        solution = conic.solve(problem, tol=accept_tol)
    if solution.status in (conic.INFEASIBLE, conic.UNBOUNDED):
        raise ConfigurationError(
            f"weighted-bound program is {solution.status} at rho={rho}")
    if solution.status != conic.OPTIMAL:
        raise SolverFailure(
            f"weighted-bound program did not certify optimality at rho={rho}")
    v, alloc = _decode_wcrb(solution, decode)
    return v, alloc, solution


def solve_wcrb_fdb(workspace: FimWorkspace, rho: float,
                   tol: float = conic.DEFAULT_TOL) -> np.ndarray:
    """Optimal covariance for the weighted sum of the two position bounds."""
    v, _, _ = wcrb_covariance(workspace, rho, tol=tol)
    return v


def solve_wcrb_cpa(workspace: FimWorkspace, codebook: Codebook, rho: float,
                   tol: float = conic.DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal codebook power allocation; returns (per-column watts, covariance)."""
    v, alloc, _ = wcrb_covariance(workspace, rho, codebook=codebook, tol=tol)
    return alloc, v


# ---------------------------------------------------------------------------
# mismatch interpolants
# ---------------------------------------------------------------------------

def solve_wbf(w_bp: np.ndarray, w_ms: np.ndarray, rho: float,
              power_budget: float | None = None) -> np.ndarray:
    """Beamformer-mismatch minimizer on the full-power sphere.

    The stacked objective has unitary-normal-equations structure, so the
    optimum is the weighted average renormalized to the power budget.
    """
    if power_budget is None:
        power_budget = float(np.linalg.norm(w_bp, "fro") ** 2)
    blend = rho * w_bp + (1.0 - rho) * w_ms
    norm = np.linalg.norm(blend, "fro")
    ref = max(np.linalg.norm(w_bp, "fro"), np.linalg.norm(w_ms, "fro"), 1e-300)
    if norm <= 1e-12 * ref:
        raise DegenerateMismatchError(
            "weighted endpoint average is numerically zero; "
            "the full-power mismatch problem has no unique minimizer")
    return math.sqrt(power_budget) * blend / norm


def wbf_objective(w: np.ndarray, w_bp: np.ndarray, w_ms: np.ndarray,
                  rho: float) -> float:
    return float(rho * np.linalg.norm(w - w_bp, "fro") ** 2
                 + (1.0 - rho) * np.linalg.norm(w - w_ms, "fro") ** 2)


def build_wbf_lift_problem(w_bp: np.ndarray, w_ms: np.ndarray, rho: float,
                           power_budget: float) -> tuple[conic.ConicProblem, float]:
    """Per-slot rank-one lift of the sphere-constrained mismatch problem.

    Each slot beamformer w_l is lifted through [1; w_l][1; w_l]^H with the
    unit corner pinned and a single trace budget shared across slots.  Slots
    are solved in units of sqrt(budget/L) so the lifted blocks are O(1).
    """
    n_tx, n_slots = w_bp.shape
    blend = rho * w_bp + (1.0 - rho) * w_ms
    unit2 = power_budget / n_slots
    scale = math.sqrt(unit2)
    blocks = []
    constraints = []
    objective_terms: dict[str, np.ndarray] = {}
    dim = n_tx + 1
    for l in range(n_slots):
        name = f"slot{l}"
        blocks.append(conic.BlockSpec(name, 2 * dim, hermitian_embedded=True))
        cost = np.zeros((dim, dim), dtype=complex)
        cost[0, 1:] = -blend[:, l].conj() / scale
        cost[1:, 0] = -blend[:, l] / scale
        cost[1:, 1:] = np.eye(n_tx)
        objective_terms[name] = 0.5 * conic.embed_hermitian(cost)
        corner = np.zeros((2 * dim, 2 * dim))
        corner[0, 0] = 0.5
        corner[dim, dim] = 0.5
        constraints.append(conic.LinearConstraint(
            expr=conic.LinearExpr(terms={name: corner}), bound=1.0, equality=True))
    shared = {f"slot{l}": 0.5 * np.eye(2 * dim) for l in range(n_slots)}
    constraints.append(conic.LinearConstraint(
        expr=conic.LinearExpr(terms=shared),
        bound=power_budget / unit2 + n_slots, equality=True))
    problem = conic.ConicProblem(
        blocks=tuple(blocks),
        objective=conic.LinearExpr(terms=objective_terms),
        lmis=(),
        constraints=tuple(constraints),
    )
    return problem, scale


def solve_wbf_lifted(w_bp: np.ndarray, w_ms: np.ndarray, rho: float,
                     power_budget: float | None = None,
                     tol: float = 1e-9) -> tuple[np.ndarray, float]:
    """Solve the lifted mismatch program; returns (beamformers, objective).

    The lift has trust-region structure with zero duality gap, so the blocks
    come back rank one and the slot beamformers are read off the first
    column.  The reported objective is the mismatch value of the lift.
    """
    if power_budget is None:
        power_budget = float(np.linalg.norm(w_bp, "fro") ** 2)
    problem, scale = build_wbf_lift_problem(w_bp, w_ms, rho, power_budget)
    solution = conic.solve(problem, tol=tol)
    if solution.status not in (conic.OPTIMAL, conic.INACCURATE):
        raise SolverFailure(f"lifted mismatch program ended {solution.status}")
    n_tx, n_slots = w_bp.shape
    cols = []
    for l in range(n_slots):
        lifted = conic.unembed_hermitian(solution.blocks[f"slot{l}"])
        cols.append(scale * lifted[1:, 0] / lifted[0, 0].real)
    w = np.column_stack(cols)
    const = (rho * np.linalg.norm(w_bp, "fro") ** 2
             + (1.0 - rho) * np.linalg.norm(w_ms, "fro") ** 2)
    objective = scale ** 2 * solution.objective + const
    return w, float(objective)


def solve_wvm(v_bp: np.ndarray, v_ms: np.ndarray, rho: float,
              power_budget: float | None = None,
              via_sdp: bool = False) -> np.ndarray:
    """Covariance-mismatch minimizer over the fixed-power PSD set.

    Completing the square shows the objective is the squared distance to the
    weighted average of the endpoints, which is itself feasible, so the
    average is returned directly; ``via_sdp`` runs the equivalent conic
    projection instead (used for cross-validation).
    """
    tr_bp = float(np.trace(v_bp).real)
    tr_ms = float(np.trace(v_ms).real)
    if abs(tr_bp - tr_ms) > 1e-6 * max(abs(tr_bp), abs(tr_ms), 1e-300):
        raise ConfigurationError(
            f"endpoint covariances carry different power: {tr_bp!r} vs {tr_ms!r}")
    if power_budget is None:
        power_budget = tr_bp
    blend = rho * v_bp + (1.0 - rho) * v_ms
    if not via_sdp:
        return 0.5 * (blend + blend.conj().T)
    n = v_bp.shape[0]
    target = blend / power_budget
    v_t = cp.Variable((n, n), hermitian=True)
    objective = cp.Minimize(cp.norm(v_t - target, "fro"))
    prob = cp.Problem(objective, [cp.real(cp.trace(v_t)) == 1.0, v_t >> 0])
    prob.solve(solver=cp.CLARABEL)
    if prob.status not in (cp.OPTIMAL, cp.OPTIMAL_INACCURATE):
        raise SolverFailure(f"covariance projection ended {prob.status}")
    v = power_budget * np.asarray(v_t.value)
    return _project_psd(v, "covariance mismatch solution")


def wvm_objective(v: np.ndarray, v_bp: np.ndarray, v_ms: np.ndarray,
                  rho: float) -> float:
    return float(rho * np.linalg.norm(v - v_bp, "fro") ** 2
                 + (1.0 - rho) * np.linalg.norm(v - v_ms, "fro") ** 2)


# ---------------------------------------------------------------------------
# codebook baselines, recovery, patterns
# ---------------------------------------------------------------------------

def apa(codebook: Codebook, power_budget: float) -> np.ndarray:
    """Equal diagonal loading across the raw codebook, scaled to the budget.

    Each raw column gets the same diagonal weight, so transmitted power per
    direction is proportional to the squared column norm.
    """
    raw = codebook.raw_columns
    gram = raw @ raw.conj().T
    v = power_budget / float(np.trace(gram).real) * gram
    return 0.5 * (v + v.conj().T)


def recover_beamformers(v: np.ndarray, num_slots: int,
                        objective=None, trials: int = 1,
                        rng: np.random.Generator | None = None) -> np.ndarray:
    """Slot beamformers W with W W^H matching (or approximating) V.

    If V has rank at most the slot count, an eigendecomposition gives an
    exact factor padded with zero columns.  Otherwise Gaussian candidates
    V^{1/2} G are drawn, rescaled to the trace of V, and the one minimizing
    ``objective`` wins (first minimum on ties).
    """
    if trials < 1:
        raise ConfigurationError("need at least one recovery trial")
    v = 0.5 * (v + v.conj().T)
    eigs, vecs = np.linalg.eigh(v)
    trace = float(np.trace(v).real)
    keep = eigs > RANK_EIG_RTOL * max(trace, 1e-300)
    rank = int(np.sum(keep))
    n = v.shape[0]
    if rank <= num_slots:
        w = np.zeros((n, num_slots), dtype=complex)
        sel = np.nonzero(keep)[0][::-1]           # strongest first
        w[:, :rank] = vecs[:, sel] * np.sqrt(eigs[sel])
        return w
    if objective is None:
        raise ConfigurationError(
            f"rank {rank} exceeds {num_slots} slots: randomized recovery "
            "needs an objective to rank candidates")
    if rng is None:
        rng = np.random.default_rng(0)
    root = (vecs * np.sqrt(np.clip(eigs, 0.0, None))) @ vecs.conj().T
    best_w, best_val = None, np.inf
    for _ in range(trials):
        g = rng.normal(size=(n, num_slots)) + 1j * rng.normal(size=(n, num_slots))
        cand = root @ (g / math.sqrt(2.0))
        power = float(np.linalg.norm(cand, "fro") ** 2)
        cand *= math.sqrt(trace / power)
        val = float(objective(cand))
        if val < best_val:
            best_w, best_val = cand, val
    return best_w


def beampattern(v: np.ndarray, angles_rad, array_spec) -> np.ndarray:
    """Transmit power density a(theta)^H V a(theta) over the angle grid."""
    angles = np.atleast_1d(np.asarray(angles_rad, dtype=float))
    if angles.size == 0:
        raise ConfigurationError("beampattern needs a non-empty angle grid")
    responses = np.array([steering(array_spec, th) for th in angles])
    return np.real(np.einsum("gt,ts,gs->g", responses.conj(), v, responses,
                             optimize=True))


# ---------------------------------------------------------------------------
# scheme orchestration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SchemePoint:
    rho: float | None
    covariance: np.ndarray | None
    solve_time_s: float
    status: str
    error: str = ""


def _endpoint_covariances(workspace: FimWorkspace, family: str,
                          tol: float) -> tuple[np.ndarray, np.ndarray, float]:
    start = time.monotonic()
    if family == "FDB":
        v_bp, _, _ = wcrb_covariance(workspace, 1.0, tol=tol)
        v_ms, _, _ = wcrb_covariance(workspace, 0.0, tol=tol)
    else:
        codebook = build_cpa_codebook(workspace.scenario)
        _, v_bp = solve_wcrb_cpa(workspace, codebook, 1.0, tol=tol)
        _, v_ms = solve_wcrb_cpa(workspace, codebook, 0.0, tol=tol)
    return v_bp, v_ms, time.monotonic() - start


def scheme_covariances(workspace: FimWorkspace, scheme: str, rhos,
                       tol: float = conic.DEFAULT_TOL,
                       rng: np.random.Generator | None = None) -> list[SchemePoint]:
    """Covariances for one scheme over a weight grid; APA yields one point.

    Per-point failures are captured in the point status so a sweep can
    continue past them.
    """
    if scheme not in SCHEMES:
        raise ConfigurationError(
            f"unknown scheme {scheme!r}; expected one of {', '.join(SCHEMES)}")
    num_slots = workspace.scenario.system.num_slots
    points: list[SchemePoint] = []

    if scheme == "APA":
        start = time.monotonic()
        codebook = build_cpa_codebook(workspace.scenario)
        v = apa(codebook, workspace.power_budget)
        return [SchemePoint(rho=None, covariance=v,
                            solve_time_s=time.monotonic() - start, status="ok")]

    family, kind = scheme.split("-")
    codebook = build_cpa_codebook(workspace.scenario) if family == "CPA" else None

    if kind == "WCRB":
        for rho in rhos:
            start = time.monotonic()
            try:
                v, _, _ = wcrb_covariance(workspace, float(rho),
                                          codebook=codebook, tol=tol)
                points.append(SchemePoint(float(rho), v,
                                          time.monotonic() - start, "ok"))
            except (ConfigurationError, SolverFailure) as exc:
                points.append(SchemePoint(float(rho), None,
                                          time.monotonic() - start,
                                          "solver_failed", str(exc)))
        return points

    v_bp, v_ms, endpoint_time = _endpoint_covariances(workspace, family, tol)
    if kind == "WBF":
        def bp_objective(w):
            return workspace.bp.crb(w @ w.conj().T)

        def ms_objective(w):
            return workspace.ms.crb(w @ w.conj().T)

        w_bp = recover_beamformers(v_bp, num_slots, objective=bp_objective,
                                   trials=32, rng=rng)
        w_ms = recover_beamformers(v_ms, num_slots, objective=ms_objective,
                                   trials=32, rng=rng)
        for rho in rhos:
            start = time.monotonic()
            try:
                w = solve_wbf(w_bp, w_ms, float(rho), workspace.power_budget)
                points.append(SchemePoint(float(rho), w @ w.conj().T,
                                          time.monotonic() - start, "ok"))
            except DegenerateMismatchError as exc:
                points.append(SchemePoint(float(rho), None,
                                          time.monotonic() - start,
                                          "degenerate", str(exc)))
    else:  # WVM
        for rho in rhos:
            start = time.monotonic()
            v = solve_wvm(v_bp, v_ms, float(rho), workspace.power_budget)
            points.append(SchemePoint(float(rho), v,
                                      time.monotonic() - start, "ok"))
    if points:
        # book the shared endpoint solves on the first emitted point
        first = points[0]
        points[0] = SchemePoint(first.rho, first.covariance,
                                first.solve_time_s + endpoint_time,
                                first.status, first.error)
    return points


def tradeoff_points(workspace: FimWorkspace, scheme: str, rhos,
                    tol: float = conic.DEFAULT_TOL,
                    rng: np.random.Generator | None = None) -> list[TradeoffPoint]:
    """Evaluate one scheme's sweep into bound coordinates (meters)."""
    from .errors import UnidentifiableParameterError
    out = []
    for point in scheme_covariances(workspace, scheme, rhos, tol=tol, rng=rng):
        if point.covariance is None:
            out.append(TradeoffPoint(scheme, point.rho, None, None,
                                     point.solve_time_s, point.status))
            continue
        try:
            sqrt_bp, sqrt_ms = workspace.sqrt_crb_pair(point.covariance)
        except UnidentifiableParameterError:
            out.append(TradeoffPoint(scheme, point.rho, None, None,
                                     point.solve_time_s, "unidentifiable"))
            continue
        out.append(TradeoffPoint(scheme, point.rho, sqrt_bp, sqrt_ms,
                                 point.solve_time_s, point.status))
    return out
