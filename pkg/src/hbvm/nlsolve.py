"""Per-step stage equations F(gamma) = 0 and the three solution strategies.

The unknown is the block vector gamma = (gamma_0, ..., gamma_{s-1}) of
coefficients of the degree-s stage polynomial, stored as an (s, 2m) array.
The stages are Y = y0 + h (P_{s+1} Xhat) gamma and the residual is

    F(gamma) = gamma - (P_s^T Omega) [J grad H(Y_i)]_i.

Solvers:
  * fixed_point_solve      -- plain functional iteration (nonstiff only)
  * simplified_newton_solve -- full simplified Newton, factoring the
    2sm x 2sm matrix I - h X_s (x) J hess H(y0) once per step; serves as
    the convergence oracle for the splitting
  * splitting_solve        -- the inner-outer iteration in the transformed
    unknowns gammahat = Phat gamma, where every inner sweep is a block
    forward substitution against a single factored 2m x 2m matrix
    I - h d_s J hess H(y0).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from .hamiltonian import HamiltonianSystem, apply_J
from .splitting import SplittingData
from .tableau import HbvmTableau

__all__ = [
    "StageProblem",
    "SolveOptions",
    "SolveResult",
    "stages_from_gamma",
    "residual_F",
    "fixed_point_solve",
    "simplified_newton_solve",
    "factor_step_matrix",
    "splitting_solve",
]


@dataclass(frozen=True)
class StageProblem:
    tableau: HbvmTableau
    system: HamiltonianSystem
    y0_step: np.ndarray
    h: float

    def __post_init__(self):
        if self.h <= 0:
            raise ValueError(f"stepsize must be positive, got {self.h}")
        if len(self.y0_step) != self.system.dim:
            raise ValueError("state dimension mismatch")


@dataclass(frozen=True)
class SolveOptions:
    tol: float = 1e-13
    max_outer: int = 100
    mu: int = 2
    solver: str = "splitting"  # fixed_point | simplified_newton | splitting

    def __post_init__(self):
        if self.tol <= 0 or self.mu < 1:
            raise ValueError("require tol > 0 and mu >= 1")


@dataclass
class SolveResult:
    gamma: np.ndarray
    outer_iterations: int
    inner_iterations_total: int
    converged: bool
    residual_norm: float
    residual_evaluations: int = 0


def _stage_map(p):
    """W = P_{s+1} Xhat (k x s) and M = P_s^T Omega (s x k)."""
    t = p.tableau
    W = t.Ps1 @ t.Xhat
    M = t.Ps.T * t.rule.weights  # == Ps.T @ diag(b)
    return W, M


def stages_from_gamma(p, gamma):
    """Stage values Y_i = y0 + h sum_j (P_{s+1} Xhat)_{ij} gamma_j, (k, 2m)."""
    W, _ = _stage_map(p)
    return p.y0_step + p.h * (W @ gamma)


def _gamma_image(p, gamma):
    """(P_s^T Omega) [J grad H(Y_i)]_i: the fixed-point map of gamma."""
    W, M = _stage_map(p)
    Y = p.y0_step + p.h * (W @ gamma)
    G = np.array([apply_J(p.system.grad(Y[i])) for i in range(p.tableau.k)])
    return M @ G


def residual_F(p, gamma):
    """F(gamma) = gamma - (P_s^T Omega) J grad H(stages(gamma))."""
    return gamma - _gamma_image(p, gamma)


def _stop(delta, gamma, tol):
    return np.max(np.abs(delta)) <= tol * (1.0 + np.max(np.abs(gamma)))


def fixed_point_solve(p, opts=SolveOptions()):
    """Functional iteration gamma <- map(gamma) from gamma = 0.

    Gets a 10x larger iteration cap than the Newton-type solvers;
    non-convergence is reported via converged=False, not an exception.
    """
    s, n = p.tableau.s, p.system.dim
    gamma = np.zeros((s, n))
    cap = opts.max_outer * 10
    # divergence shows up as overflow before the finiteness check trips;
    # it is data (a *** table entry), not an arithmetic error
    with np.errstate(over="ignore", invalid="ignore"):
        return _fixed_point_loop(p, opts, gamma, cap)


def _fixed_point_loop(p, opts, gamma, cap):
    for it in range(1, cap + 1):
        new = _gamma_image(p, gamma)
        delta = new - gamma
        gamma = new
        if not np.all(np.isfinite(gamma)):
            return SolveResult(gamma, it, 0, False, np.inf, it)
        if _stop(delta, gamma, opts.tol):
            return SolveResult(gamma, it, 0, True, float(np.max(np.abs(delta))), it)
    return SolveResult(gamma, cap, 0, False, float(np.max(np.abs(delta))), cap)


def _J_times(M):
    """J @ M for the canonical J, without forming J."""
    m = M.shape[0] // 2
    return np.vstack([M[m:], -M[:m]])


def simplified_newton_solve(p, opts=SolveOptions()):
    """Full simplified Newton: [I - h X_s (x) J hess H(y0)] Delta = -F."""
    from .tableau import leading_Xs

    s, n = p.tableau.s, p.system.dim
    B = _J_times(p.system.hess(p.y0_step))
    M0 = np.eye(s * n) - p.h * np.kron(leading_Xs(s), B)
    fac = lu_factor(M0)
    gamma = np.zeros((s, n))
    with np.errstate(over="ignore", invalid="ignore"):
        return _newton_loop(p, opts, fac, gamma)


def _newton_loop(p, opts, fac, gamma):
    s, n = gamma.shape
    for it in range(1, opts.max_outer + 1):
        F = residual_F(p, gamma)
        delta = lu_solve(fac, -F.ravel()).reshape(s, n)
        gamma = gamma + delta
        if not np.all(np.isfinite(gamma)):
            return SolveResult(gamma, it, 0, False, np.inf, it)
        if _stop(delta, gamma, opts.tol):
            return SolveResult(gamma, it, 0, True, float(np.max(np.abs(delta))), it)
    return SolveResult(gamma, opts.max_outer, 0, False, float(np.max(np.abs(delta))), opts.max_outer)


def factor_step_matrix(h, d, hess0):
    """Reusable LU factorization of I - h d J hess0 (2m x 2m, row pivoting)."""
    n = hess0.shape[0]
    return lu_factor(np.eye(n) - h * d * _J_times(hess0))


def splitting_solve(p, data, opts=SolveOptions()):
    """Inner-outer triangular-splitting iteration in gammahat = Phat gamma.

    Each outer step evaluates eta = -Phat F(Phat^{-1} gammahat), then runs mu
    inner sweeps; an inner sweep solves [I - h L (x) B] Dnew = h L(U-I) (x) B D
    + eta by block forward substitution, every diagonal block sharing the one
    factored matrix I - h d_s B with B = J hess H(y0). The new step value is
    y1 = y0 + h gamma_0.
    """
    s, n = p.tableau.s, p.system.dim
    if data.s != s:
        raise ValueError(f"splitting data is for s={data.s}, tableau has s={s}")
    B = _J_times(p.system.hess(p.y0_step))
    fac = factor_step_matrix(p.h, data.d, p.system.hess(p.y0_step))
    L, U, Phat = data.L, data.U, data.Phat
    T = L @ (U - np.eye(s))
    h = p.h
    with np.errstate(over="ignore", invalid="ignore"):
        return _splitting_loop(p, opts, fac, B, L, U, T, Phat, h)


def _splitting_loop(p, opts, fac, B, L, U, T, Phat, h):
    s, n = p.tableau.s, p.system.dim
    ghat = np.zeros((s, n))
    inner_total = 0
    for it in range(1, opts.max_outer + 1):
        gamma = np.linalg.solve(Phat, ghat)
        eta = -(Phat @ residual_F(p, gamma))
        D = np.zeros((s, n))
        for _ in range(opts.mu):
            rhs = h * ((T @ D) @ B.T) + eta
            Dnew = np.empty((s, n))
            for i in range(s):
                r = rhs[i] + h * sum(L[i, j] * (B @ Dnew[j]) for j in range(i))
                Dnew[i] = lu_solve(fac, r)
            D = Dnew
            inner_total += 1
        ghat = ghat + D
        if not np.all(np.isfinite(ghat)):
            return SolveResult(np.linalg.solve(Phat, ghat), it, inner_total, False, np.inf, it)
        if _stop(D, ghat, opts.tol):
            gamma = np.linalg.solve(Phat, ghat)
            return SolveResult(gamma, it, inner_total, True, float(np.max(np.abs(D))), it)
    gamma = np.linalg.solve(Phat, ghat)
    return SolveResult(gamma, opts.max_outer, inner_total, False, float(np.max(np.abs(D))), opts.max_outer)


def solve(p, opts=SolveOptions(), data=None):
    """Dispatch on opts.solver; builds SplittingData on demand."""
    from .splitting import build_splitting

    if opts.solver == "fixed_point":
        return fixed_point_solve(p, opts)
    if opts.solver == "simplified_newton":
        return simplified_newton_solve(p, opts)
    if opts.solver == "splitting":
        if data is None:
            data = build_splitting(p.tableau.s)
        return splitting_solve(p, data, opts)
    raise ValueError(f"unknown solver {opts.solver!r}")
