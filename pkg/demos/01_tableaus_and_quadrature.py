"""Build HBVM(k,s) Butcher tableaus and inspect their structure.

The coefficient matrix factors as A = P_{s+1} Xhat P_s^T Omega, where the P
matrices evaluate orthonormal shifted Legendre polynomials at the Gauss nodes
and Xhat is a sparse tridiagonal-plus-last-row matrix. For k = s the
construction collapses to the classical s-stage Gauss collocation method; for
k > s the method keeps order 2s but gains exact conservation of polynomial
Hamiltonians of degree up to 2k/s.
"""
import numpy as np

from hbvm import build_tableau, gauss_rule

np.set_printoptions(precision=6, suppress=True)

# --- Gauss-Legendre quadrature on [0, 1] ----------------------------------
rule = gauss_rule(4)
print("4-point Gauss nodes:  ", rule.nodes)
print("4-point Gauss weights:", rule.weights)
# degree-7 polynomials are integrated exactly
exact = 1.0 / 8.0
print("sum w c^7 = %.16f (exact %.16f)" % (np.sum(rule.weights * rule.nodes**7), exact))
print()

# --- k = s: Gauss collocation ----------------------------------------------
tab = build_tableau(2, 2)
print("HBVM(2,2) = 2-stage Gauss method, A =")
print(tab.A)
print()

# --- k > s: same order, larger quadrature ----------------------------------
tab = build_tableau(6, 3)
print("HBVM(6,3): 6 stages, polynomial degree 3, order 6")
print("abscissae c:", tab.c)
print("row sums A 1 == c:", np.max(np.abs(tab.A @ np.ones(6) - tab.c)))
sv = np.linalg.svd(tab.A, compute_uv=False)
print("singular values of A (rank s = 3):", sv)
print()

# the sparse core: only 2s + 1 nonzero entries
print("Xhat =")
print(tab.Xhat)
