"""Conic-solver contract: PSD block problems with affine maps.

A :class:`ConicProblem` is the package's internal boundary for semidefinite
solves: named PSD decision blocks, a linear objective, linear matrix
inequalities affine in the blocks, and scalar trace (in)equalities.  Complex
Hermitian decision data is carried in its real symmetric embedding

    embed(H) = [[Re H, -Im H], [Im H, Re H]],

which is PSD exactly when H is.  Any backend that can solve PSD-cone
programs can sit behind :func:`solve`; the bundled backend uses cvxpy with a
solver fallback chain.  For blocks flagged as embeddings the backend reduces
the embedded coefficients to an equivalent complex Hermitian variable, which
conditions much better than solving the doubled real block directly.
"""

from __future__ import annotations

import time
import warnings
from dataclasses import dataclass

import cvxpy as cp
import numpy as np

from .errors import ConfigurationError, SolverFailure

DEFAULT_TOL = 1e-8

OPTIMAL = "optimal"
INACCURATE = "inaccurate"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


def embed_hermitian(h: np.ndarray) -> np.ndarray:
    """Real symmetric embedding of a complex Hermitian matrix."""
    return np.block([[h.real, -h.imag], [h.imag, h.real]])


def unembed_hermitian(e: np.ndarray) -> np.ndarray:
    """Inverse of :func:`embed_hermitian`, averaging the redundant copies."""
    n = e.shape[0] // 2
    re = 0.5 * (e[:n, :n] + e[n:, n:])
    im = 0.5 * (e[n:, :n] - e[:n, n:])
    return re + 1j * im


@dataclass(frozen=True)
class BlockSpec:
    """One PSD decision block.

    ``hermitian_embedded`` marks a block whose real symmetric data of size
    2n x 2n encodes an n x n complex Hermitian matrix; ``diagonal`` restricts
    the block to a nonnegative diagonal.
    """
    name: str
    size: int
    hermitian_embedded: bool = False
    diagonal: bool = False

    def __post_init__(self):
        if self.size < 1:
            raise ConfigurationError(f"block {self.name} has size {self.size}")
        if self.hermitian_embedded and self.size % 2:
            raise ConfigurationError(
                f"embedded block {self.name} must have even size")
        if self.hermitian_embedded and self.diagonal:
            raise ConfigurationError(
                f"block {self.name} cannot be both embedded and diagonal")


@dataclass(frozen=True)
class LinearExpr:
    """Scalar affine functional: sum over blocks of tr(M_b @ X_b) + offset."""
    terms: dict[str, np.ndarray]
    offset: float = 0.0

    def value(self, blocks: dict[str, np.ndarray]) -> float:
        total = self.offset
        for name, mat in self.terms.items():
            total += float(np.trace(mat @ blocks[name]).real)
        return total


@dataclass(frozen=True)
class LinearConstraint:
    expr: LinearExpr
    bound: float
    equality: bool = False


@dataclass(frozen=True)
class LmiConstraint:
    """Affine matrix inequality: const + sum_b map_b(X_b) >= 0 (PSD).

    ``terms[name][i, j]`` is the coefficient matrix M with entry (i, j) of
    the LMI picking up tr(M @ X_name).
    """
    size: int
    const: np.ndarray
    terms: dict[str, np.ndarray]


@dataclass(frozen=True)
class ConicProblem:
    blocks: tuple[BlockSpec, ...]
    objective: LinearExpr
    lmis: tuple[LmiConstraint, ...] = ()
    constraints: tuple[LinearConstraint, ...] = ()


@dataclass(frozen=True)
class ConicSolution:
    status: str
    blocks: dict[str, np.ndarray]     # embedded blocks returned in embedded form
    objective: float
    gap: float | None                 # achieved relative-gap tolerance, when certified
    solver: str = ""
    solve_time_s: float = 0.0


def _scalar_expr(mat: np.ndarray, spec: BlockSpec, var) -> cp.Expression:
    """cvxpy expression for tr(mat @ X_block)."""
    if spec.diagonal:
        return cp.sum(cp.multiply(np.diag(mat), var))
    if spec.hermitian_embedded:
        n = spec.size // 2
        m11, m12 = mat[:n, :n], mat[:n, n:]
        m21, m22 = mat[n:, :n], mat[n:, n:]
        # tr(M @ embed(H)) = tr((M11+M22) Re H) + tr((M12-M21) Im H)
        expr = cp.sum(cp.multiply((m11 + m22).T, cp.real(var)))
        expr = expr + cp.sum(cp.multiply((m12 - m21).T, cp.imag(var)))
        return expr
    return cp.sum(cp.multiply(mat.T, var))


def _lmi_expr(lmi: LmiConstraint, specs: dict[str, BlockSpec], vars_: dict) -> cp.Expression:
    d = lmi.size
    pieces = [cp.Constant(lmi.const.reshape(d * d))]
    for name, tensor in lmi.terms.items():
        spec = specs[name]
        var = vars_[name]
        if spec.diagonal:
            flat = np.stack([np.diagonal(tensor[i, j])
                             for i in range(d) for j in range(d)])
            pieces.append(flat @ var)
        elif spec.hermitian_embedded:
            n = spec.size // 2
            a_re = np.empty((d * d, n * n))
            a_im = np.empty((d * d, n * n))
            for i in range(d):
                for j in range(d):
                    mat = tensor[i, j]
                    a_re[i * d + j] = (mat[:n, :n] + mat[n:, n:]).T.reshape(-1)
                    a_im[i * d + j] = (mat[:n, n:] - mat[n:, :n]).T.reshape(-1)
            pieces.append(a_re @ cp.vec(cp.real(var), order="C")
                          + a_im @ cp.vec(cp.imag(var), order="C"))
        else:
            nb = spec.size
            a_mat = np.empty((d * d, nb * nb))
            for i in range(d):
                for j in range(d):
                    a_mat[i * d + j] = tensor[i, j].T.reshape(-1)
            pieces.append(a_mat @ cp.vec(var, order="C"))
    total = pieces[0]
    for piece in pieces[1:]:
        total = total + piece
    mat = cp.reshape(total, (d, d), order="C")
    return 0.5 * (mat + mat.T)


def _solver_attempts(tol: float) -> list[tuple[str, dict]]:
    return [
        (cp.CLARABEL, {"tol_gap_rel": tol, "tol_gap_abs": tol, "tol_feas": tol,
                       "max_iter": 400}),
        (cp.CVXOPT, {"reltol": tol, "abstol": tol, "feastol": max(tol, 1e-9)}),
        (cp.SCS, {"eps": max(tol, 1e-10), "max_iters": 200_000}),
    ]


def solve(problem: ConicProblem, tol: float = DEFAULT_TOL,
          solver: str | None = None) -> ConicSolution:
    """Solve the conic program, falling back across backends.

    Returns the first certified-optimal solution; if every backend stops at
    reduced accuracy, the first such solution is returned with status
    ``inaccurate`` and no gap certificate.
    """
    specs = {b.name: b for b in problem.blocks}
    vars_: dict[str, cp.Variable] = {}
    constraints = []
    for spec in problem.blocks:
        if spec.diagonal:
            vars_[spec.name] = cp.Variable(spec.size, nonneg=True)
        elif spec.hermitian_embedded:
            var = cp.Variable((spec.size // 2, spec.size // 2), hermitian=True)
            vars_[spec.name] = var
            constraints.append(var >> 0)
        else:
            var = cp.Variable((spec.size, spec.size), symmetric=True)
            vars_[spec.name] = var
            constraints.append(var >> 0)

    for lmi in problem.lmis:
        constraints.append(_lmi_expr(lmi, specs, vars_) >> 0)
    for lin in problem.constraints:
        expr = lin.expr.offset
        for name, mat in lin.expr.terms.items():
            expr = expr + _scalar_expr(mat, specs[name], vars_[name])
        constraints.append(expr == lin.bound if lin.equality else expr <= lin.bound)

    objective = problem.objective.offset
    for name, mat in problem.objective.terms.items():
        objective = objective + _scalar_expr(mat, specs[name], vars_[name])
    prob = cp.Problem(cp.Minimize(objective), constraints)

    attempts = [(solver, {})] if solver else _solver_attempts(tol)
    fallback: ConicSolution | None = None
    errors = []
    for name, opts in attempts:
        start = time.monotonic()
        try:
            with warnings.catch_warnings():
                warnings.filterwarnings("ignore", message="Solution may be inaccurate")
                prob.solve(solver=name, **opts)
        except (cp.error.SolverError, ValueError, ArithmeticError) as exc:
            errors.append(f"{name}: {exc}")
            continue
        elapsed = time.monotonic() - start
        status = prob.status
        if status in (cp.INFEASIBLE, cp.INFEASIBLE_INACCURATE):
            return ConicSolution(INFEASIBLE, {}, float("nan"), None, str(name), elapsed)
        if status in (cp.UNBOUNDED, cp.UNBOUNDED_INACCURATE):
            return ConicSolution(UNBOUNDED, {}, float("nan"), None, str(name), elapsed)
        if status not in (cp.OPTIMAL, cp.OPTIMAL_INACCURATE):
            errors.append(f"{name}: status {status}")
            continue
        blocks = {}
        for spec in problem.blocks:
            val = vars_[spec.name].value
            if val is None:
                blocks = None
                break
            if spec.diagonal:
                blocks[spec.name] = np.diag(np.maximum(np.asarray(val, float), 0.0))
            elif spec.hermitian_embedded:
                h = np.asarray(val)
                h = 0.5 * (h + h.conj().T)
                blocks[spec.name] = embed_hermitian(h)
            else:
                s = np.asarray(val, float)
                blocks[spec.name] = 0.5 * (s + s.T)
        if blocks is None:
            errors.append(f"{name}: empty primal")
            continue
        sol = ConicSolution(
            status=OPTIMAL if status == cp.OPTIMAL else INACCURATE,
            blocks=blocks,
            objective=float(prob.value),
            gap=tol if status == cp.OPTIMAL else None,
            solver=str(name),
            solve_time_s=elapsed,
        )
        if sol.status == OPTIMAL:
            return sol
        fallback = fallback or sol
    if fallback is not None:
        return fallback
    raise SolverFailure("all conic backends failed: " + "; ".join(errors))
