"""Constant-stepsize time stepping with per-run statistics.

Also provides the explicit baseline: an order-6 symmetric composition of the
Stoermer-Verlet map (9 substeps, 18 force evaluations per step) for separable
Hamiltonians H = T(p) + V(q) with T = 1/2 |p|^2.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .hamiltonian import HamiltonianSystem
from .nlsolve import SolveOptions, StageProblem, solve
from .splitting import build_splitting
from .tableau import build_tableau

__all__ = [
    "RunConfig",
    "RunStats",
    "Trajectory",
    "integrate",
    "solution_error",
    "order_study",
    "composition6_stormer_verlet",
]

DIVERGENCE_THRESHOLD = 1e10


@dataclass(frozen=True)
class RunConfig:
    system: HamiltonianSystem
    k: int
    s: int
    h: float
    t_end: float
    options: SolveOptions = field(default_factory=SolveOptions)
    store_every: int = 1  # 0: keep only the endpoints

    def __post_init__(self):
        if self.h <= 0 or self.t_end <= 0:
            raise ValueError("require h > 0 and t_end > 0")
        if self.k < self.s or self.s < 1:
            raise ValueError("require k >= s >= 1")


@dataclass
class RunStats:
    steps: int = 0
    total_outer_iterations: int = 0
    total_inner_iterations: int = 0
    gradient_evaluations: int = 0
    hessian_evaluations: int = 0
    factorizations: int = 0
    max_hamiltonian_error: float = 0.0
    solution_error: float | None = None
    all_converged: bool = True
    diverged: bool = False
    failed_at: float | None = None


@dataclass
class Trajectory:
    times: np.ndarray
    states: np.ndarray  # (len(times), 2m)


def integrate(cfg):
    """Advance ceil(t_end / h) steps of HBVM(k,s) with the configured solver.

    On solver non-convergence the run is truncated, all_converged is set to
    False and the failure time is recorded; this mirrors the way benchmark
    tables report '***' entries.
    """
    sysm = cfg.system
    tab = build_tableau(cfg.k, cfg.s)
    opts = cfg.options
    data = build_splitting(cfg.s) if opts.solver == "splitting" else None
    newton_like = opts.solver in ("simplified_newton", "splitting")

    n_steps = int(np.ceil(cfg.t_end / cfg.h - 1e-12))
    y = np.array(sysm.y0, dtype=float)
    comp = np.zeros_like(y)  # Kahan compensation for the state update
    H0 = sysm.H(y)
    stats = RunStats()
    times = [0.0]
    states = [y.copy()]
    for n in range(1, n_steps + 1):
        prob = StageProblem(tab, sysm, y, cfg.h)
        res = solve(prob, opts, data=data)
        stats.total_outer_iterations += res.outer_iterations
        stats.total_inner_iterations += res.inner_iterations_total
        stats.gradient_evaluations += cfg.k * res.residual_evaluations
        if newton_like:
            stats.hessian_evaluations += 1
            stats.factorizations += 1
        if not res.converged:
            stats.all_converged = False
            stats.failed_at = (n - 1) * cfg.h
            break
        # compensated update: y += h*gamma_0 accumulates over many steps
        incr = cfg.h * res.gamma[0] - comp
        y_new = y + incr
        comp = (y_new - y) - incr
        y = y_new
        stats.steps += 1
        stats.max_hamiltonian_error = max(stats.max_hamiltonian_error,
                                          abs(sysm.H(y) - H0))
        if cfg.store_every and n % cfg.store_every == 0:
            times.append(n * cfg.h)
            states.append(y.copy())
    if not cfg.store_every:
        times.append(stats.steps * cfg.h)
        states.append(y.copy())
    return Trajectory(np.array(times), np.array(states)), stats


def solution_error(traj, reference):
    """Max over shared times of |y - y_ref| / (1 + |y_ref|), Euclidean norm.

    The reference may be on a finer grid, provided its step divides the
    trajectory's and the endpoints align.
    """
    nt, nr = len(traj.times) - 1, len(reference.times) - 1
    if nr % max(nt, 1) != 0:
        raise ValueError("reference grid does not refine the trajectory grid")
    stride = nr // max(nt, 1)
    ref_states = reference.states[::stride]
    if not np.allclose(reference.times[::stride], traj.times, rtol=0, atol=1e-9 * max(1.0, traj.times[-1])):
        raise ValueError("time grids are not aligned")
    diffs = np.linalg.norm(traj.states - ref_states, axis=1)
    scale = 1.0 + np.linalg.norm(ref_states, axis=1)
    return float(np.max(diffs / scale))


def order_study(system, k, s, h_list, t_end, reference, options=None):
    """Global errors at t_end for each h; ratios under halving ~ 2^(2s).

    reference is a callable t -> exact state (closed form).
    """
    opts = options or SolveOptions(solver="splitting", mu=10)
    out = []
    for h in h_list:
        cfg = RunConfig(system=system, k=k, s=s, h=h, t_end=t_end,
                        options=opts, store_every=0)
        traj, stats = integrate(cfg)
        if not stats.all_converged:
            raise RuntimeError(f"solver failed during order study at h={h}")
        # the constant-stepsize run ends at steps*h, which may overshoot
        # t_end when h does not divide it; compare at the reached time
        y_ref = reference(traj.times[-1])
        out.append((h, float(np.linalg.norm(traj.states[-1] - y_ref))))
    return out


def _triple_jump_6():
    """9-stage order-6 symmetric composition by the triple-jump construction:
    order 2 -> 4 with (a, b, a), a = 1/(2 - 2^(1/3)), b = 1 - 2a, then
    4 -> 6 with (c, d, c), c = 1/(2 - 2^(1/5)), d = 1 - 2c."""
    a = 1.0 / (2.0 - 2.0 ** (1.0 / 3.0))
    b = 1.0 - 2.0 * a
    c = 1.0 / (2.0 - 2.0 ** (1.0 / 5.0))
    d = 1.0 - 2.0 * c
    return np.array([c * a, c * b, c * a, d * a, d * b, d * a, c * a, c * b, c * a])


_COMPOSITION6 = _triple_jump_6()


def composition6_stormer_verlet(system, h, t_end, store_every=1):
    """Order-6 explicit composition of Stoermer-Verlet for separable H.

    Requires H = 1/2 |p|^2 + V(q); a cheap separability probe at the initial
    state rejects systems with position-momentum coupling. Each of the 9
    substeps is one velocity-Verlet step, 2 force evaluations each, 18 per
    step. Divergence (state norm above 1e10) marks the run and stops.
    """
    m = system.m
    g_full = system.grad(np.asarray(system.y0, dtype=float))
    g_frozen = system.grad(np.concatenate([system.y0[:m], np.zeros(m)]))
    if (np.max(np.abs(g_full[:m] - g_frozen[:m])) >
            1e-12 * (1.0 + np.max(np.abs(g_full)))) or \
            np.max(np.abs(g_full[m:] - system.y0[m:])) > 1e-12 * (1.0 + np.max(np.abs(g_full))):
        raise ValueError("composition method requires a separable Hamiltonian "
                         "H = |p|^2/2 + V(q)")
    n_steps = int(np.ceil(t_end / h - 1e-12))
    y = np.array(system.y0, dtype=float)
    q, p = y[:m].copy(), y[m:].copy()
    H0 = system.H(y)
    stats = RunStats()
    times = [0.0]
    states = [y.copy()]

    def force(q):
        # dV/dq = grad H wrt q; independent of p for separable H
        return system.grad(np.concatenate([q, np.zeros(m)]))[:m]

    for n in range(1, n_steps + 1):
        # blowup overflows before the norm check below; it is recorded as
        # divergence, not raised as an arithmetic error
        with np.errstate(over="ignore", invalid="ignore"):
            for g in _COMPOSITION6:
                hg = g * h
                p = p - 0.5 * hg * force(q)
                q = q + hg * p
                p = p - 0.5 * hg * force(q)
                stats.gradient_evaluations += 2
        y = np.concatenate([q, p])
        if not np.all(np.isfinite(y)) or np.linalg.norm(y) > DIVERGENCE_THRESHOLD:
            stats.diverged = True
            stats.all_converged = False
            stats.failed_at = (n - 1) * h
            break
        stats.steps += 1
        stats.max_hamiltonian_error = max(stats.max_hamiltonian_error,
                                          abs(system.H(y) - H0))
        if store_every and n % store_every == 0:
            times.append(n * h)
            states.append(y.copy())
    if not store_every:
        times.append(stats.steps * h)
        states.append(y.copy())
    return Trajectory(np.array(times), np.array(states)), stats
