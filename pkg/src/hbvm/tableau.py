"""HBVM(k,s) Butcher tableau via the generalized W-transformation.

The Runge-Kutta matrix is A = P_{s+1} Xhat_s P_s^T Omega, where P_r collects
the orthonormal Legendre basis evaluated at the k Gauss nodes, Xhat_s is a
tridiagonal-plus-last-row matrix built from the xi_i coefficients and Omega
is the diagonal matrix of quadrature weights. For k = s this reduces to the
classical s-stage Gauss-Legendre collocation method.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .polybasis import QuadratureRule, gauss_rule, legendre_eval, xi

__all__ = ["HbvmTableau", "xi", "build_Xhat", "leading_Xs", "det_Xs", "build_tableau"]


@dataclass(frozen=True)
class HbvmTableau:
    k: int
    s: int
    rule: QuadratureRule
    A: np.ndarray      # k x k
    Ps: np.ndarray     # k x s
    Ps1: np.ndarray    # k x (s+1)
    Xhat: np.ndarray   # (s+1) x s
    Omega: np.ndarray  # k x k diagonal

    @property
    def c(self):
        return self.rule.nodes

    @property
    def b(self):
        return self.rule.weights


def build_Xhat(s):
    """The (s+1) x s matrix Xhat_s: entry (0,0) = 1/2, subdiagonal xi_1..xi_s,
    superdiagonal -xi_1..-xi_{s-1}."""
    if s < 1:
        raise ValueError(f"s must be positive, got {s}")
    X = np.zeros((s + 1, s))
    X[0, 0] = 0.5
    for i in range(1, s + 1):
        X[i, i - 1] = xi(i)
    for i in range(1, s):
        X[i - 1, i] = -xi(i)
    return X


def leading_Xs(s):
    """Leading s x s block X_s of Xhat_s."""
    return build_Xhat(s)[:s, :]


def det_Xs(s):
    """Closed-form determinant of X_s (Laplace expansion):
    prod xi_{2i-1}^2 for even s, (1/2) prod xi_{2i}^2 for odd s."""
    if s < 1:
        raise ValueError(f"s must be positive, got {s}")
    if s % 2 == 0:
        return float(np.prod([xi(2 * i - 1) ** 2 for i in range(1, s // 2 + 1)]))
    return float(0.5 * np.prod([xi(2 * i) ** 2 for i in range(1, s // 2 + 1)]))


def _basis_matrix(c, r):
    """k x r matrix with entries P_{j}(c_i), j = 0..r-1."""
    return np.column_stack([legendre_eval(j, c) for j in range(r)])


def build_tableau(k, s):
    """Assemble the HBVM(k,s) tableau at the k Gaussian abscissae."""
    if s < 1 or k < s:
        raise ValueError(f"require k >= s >= 1, got k={k}, s={s}")
    rule = gauss_rule(k)
    Ps = _basis_matrix(rule.nodes, s)
    Ps1 = _basis_matrix(rule.nodes, s + 1)
    Xhat = build_Xhat(s)
    Omega = np.diag(rule.weights)
    A = Ps1 @ Xhat @ Ps.T @ Omega
    return HbvmTableau(k=k, s=s, rule=rule, A=A, Ps=Ps, Ps1=Ps1, Xhat=Xhat, Omega=Omega)
