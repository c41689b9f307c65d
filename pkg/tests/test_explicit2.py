import pytest

from tsyslab import laurent as L
from tsyslab.explicit2 import (Omega, P_B, Q_B, R_B, _beta, eta_B, init_vars, tau_A, verify_support_lemmas,
                               verify_tau_equals_evolution, verify_tau_solves, xi_B, IndexOutOfRange)


def test_tau_a_spot_values():
    X = init_vars("A", 2)
    x1, x2 = L.var("x1"), L.var("x2")
    assert tau_A(1, 0, X) == x1
    assert tau_A(2, 1, X) == x2


@pytest.mark.parametrize("family,r", [("A", 1), ("A", 3), ("D", 4), ("B", 2), ("B", 3)])
def test_lemmas_and_tau(family, r):
    rep = verify_support_lemmas(family, r)
    verify_tau_solves(family, r, rep)
    verify_tau_equals_evolution(family, r, rep)
    assert rep.ok, rep.summary()


def test_omega_zero_has_squared_beta():
    X = init_vars("D", 4)
    b1 = _beta(X, 1)
    for j in range(1, 3):
        squared = L.exact_div(_beta(X, j) ** 2 * (1 + b1) ** 2, b1 ** 2)
        printed = L.exact_div(_beta(X, j) * (1 + b1) ** 2, b1 ** 2)
        assert Omega(X, j, 0) == squared
        assert Omega(X, j, 0) != printed


@pytest.mark.parametrize("r", [2, 3])
def test_boundary_identity_pairs_k_with_k_minus_1(r):
    X = init_vars("B", r)
    P = lambda j, k: P_B(X, j, k)
    Q = lambda j, k: Q_B(X, j, k)
    R = lambda j, k: R_B(X, j, k)

    def rhs(k):
        return xi_B(X, k) * X.hat(xi_B(X, k)) if k % 2 else eta_B(X, k) * X.hat(eta_B(X, k))

    def residual(k, qq):
        return (P(0, k) * R(0, k + 1) + P(0, k + 1) * R(0, k) - P(1, k) * R(1, k - 1) - P(1, k - 1) * R(1, k)
                + Q(0, k) * Q(0, k + 1) - qq - rhs(k))

    printed_fails = False
    for k in range(1, 2 * r + 1):
        assert residual(k, Q(1, k) * Q(1, k - 1)).is_zero(), k
        try:
            printed_fails |= not residual(k, Q(1, k + 1) * Q(1, k)).is_zero()
        except IndexOutOfRange:
            pass
    assert printed_fails


def test_out_of_range_raises():
    X = init_vars("B", 2)
    with pytest.raises(IndexOutOfRange):
        P_B(X, 0, 99)
