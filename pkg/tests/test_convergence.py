import numpy as np
import pytest

from hbvm.convergence import (
    amplification_report,
    averaged_factors,
    iteration_matrix,
    rho_inf,
    rho_star,
    rho_tilde,
    spectral_radius,
)

# printed to 4 decimals; tolerance 5e-4 absorbs the rounding
TABLE2 = {2: (0.1340, 0.0774), 3: (0.2536, 0.0870), 4: (0.3291, 0.0859),
          5: (0.3709, 0.0654), 6: (0.4353, 0.0650)}

TABLE3 = {
    2: {1: (0.1340, 0.0774, 0.0981), 2: (0.1340, 0.0774, 0.0), 3: (0.1340, 0.0774, 0.0)},
    3: {1: (0.4492, 0.0874, 0.2606), 2: (0.3423, 0.0873, 0.1091), 3: (0.3087, 0.0872, 0.0)},
    4: {1: (0.4751, 0.1459, 0.4751), 2: (0.4098, 0.1200, 0.1757), 3: (0.3848, 0.1091, 0.1294)},
    5: {1: (0.8625, 0.2045, 0.7471), 2: (0.6775, 0.1385, 0.2872), 3: (0.5874, 0.1154, 0.1747)},
    6: {1: (3.0797, 0.2747, 1.4988), 2: (1.2780, 0.1356, 0.4929), 3: (0.9451, 0.1121, 0.2697)},
}


def test_iteration_matrix_at_zero(splittings):
    Z = iteration_matrix(0.0, splittings[3])
    assert np.max(np.abs(Z)) == 0.0


@pytest.mark.parametrize("s", range(2, 7))
def test_iteration_matrix_stiff_limit(s, splittings):
    # q (I - qL)^{-1} L -> -I as |q| -> inf, so Z(q) -> -(U - I)
    data = splittings[s]
    Z = iteration_matrix(1e10j, data)
    assert np.max(np.abs(Z + (data.U - np.eye(s)))) < 1e-6


def test_iteration_matrix_bounded_by_rho_star(splittings):
    Z = iteration_matrix(1j, splittings[2])
    assert spectral_radius(Z) <= 0.1340 + 5e-4


def test_spectral_radius_identity():
    assert spectral_radius(np.eye(3)) == pytest.approx(1.0)


def test_spectral_radius_nilpotent():
    M = np.triu(np.ones((4, 4)), k=1)
    assert spectral_radius(M) < 1e-12


def test_spectral_radius_companion():
    # roots of z^2 - z - 1: golden ratio and its conjugate
    M = np.array([[1.0, 1.0], [1.0, 0.0]])
    assert spectral_radius(M) == pytest.approx((1 + np.sqrt(5)) / 2, abs=1e-12)


@pytest.mark.parametrize("s", range(2, 7))
def test_rho_star_matches_table2(s, splittings):
    star, xstar = rho_star(splittings[s])
    assert star == pytest.approx(TABLE2[s][0], abs=5e-4)
    assert xstar > 0


@pytest.mark.parametrize("s", range(2, 7))
def test_rho_tilde_matches_table2(s, splittings):
    assert rho_tilde(splittings[s]) == pytest.approx(TABLE2[s][1], abs=5e-4)


def test_rho_tilde_small_q_expansion(splittings):
    data = splittings[4]
    x = 1e-6
    r = spectral_radius(iteration_matrix(1j * x, data))
    assert abs(r / x - rho_tilde(data)) < 1e-4


@pytest.mark.parametrize("s", range(2, 7))
def test_rho_inf_vanishes(s, splittings):
    assert rho_inf(splittings[s]) < 1e-12


@pytest.mark.parametrize("s", range(2, 7))
@pytest.mark.parametrize("mu", [1, 2, 3])
def test_averaged_factors_match_table3(s, mu, splittings):
    got = averaged_factors(splittings[s], mu)
    exp = TABLE3[s][mu]
    for g, e in zip(got, exp):
        if e == 0.0:
            assert g < 1e-12
        else:
            assert g == pytest.approx(e, abs=5e-4)


def test_averaged_stiff_factor_zero_for_mu_ge_s(splittings):
    _, _, stiff = averaged_factors(splittings[2], 2)
    assert stiff < 1e-12


@pytest.mark.parametrize("s", range(2, 7))
def test_a_convergence(s, splittings):
    star, _ = rho_star(splittings[s])
    assert star < 1.0


@pytest.mark.parametrize("s", [2, 3])
def test_averaged_converges_to_asymptotic(s, splittings):
    star, _ = rho_star(splittings[s])
    star64, _, _ = averaged_factors(splittings[s], 64)
    assert abs(star64 - star) < 5e-3


def test_s6_needs_three_inner_iterations(splittings):
    star1, _, _ = averaged_factors(splittings[6], 1)
    star3, _, _ = averaged_factors(splittings[6], 3)
    assert star1 > 1.0
    assert star3 < 1.0


def test_conjugate_symmetry(splittings):
    data = splittings[5]
    for x in np.logspace(-2, 3, 10):
        rp = spectral_radius(iteration_matrix(1j * x, data))
        rm = spectral_radius(iteration_matrix(-1j * x, data))
        assert abs(rp - rm) < 1e-12


def test_report_assembles(splittings):
    rep = amplification_report(splittings[3], mus=(1, 2, 3))
    assert rep.s == 3
    assert rep.rho_star == pytest.approx(0.2536, abs=5e-4)
    assert rep.rho_inf < 1e-12
    assert [mu for mu, *_ in rep.averaged] == [1, 2, 3]
