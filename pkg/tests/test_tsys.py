from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tsyslab import laurent as L
from tsyslab.tsys import (SpiralSystem, TSystem, Underdetermined, WindowTooSmall, full_period_claim,
                          half_period_claim, slab_initial, solve, spiral_half_period_claim, verify_identity)
from oracles import same, type_a_evolution


def evaluate(p: L.LaurentPoly, point) -> Fraction:
    total = Fraction(0)
    for mono, c in p.terms.items():
        term = Fraction(c)
        for v, e in mono:
            term *= Fraction(point[L.var_name(v)]) ** e
        total += term
    return total


@pytest.mark.parametrize("r,level", [(1, 3), (2, 2), (2, 3)])
def test_type_a_matches_rational_oracle(r, level):
    S = TSystem(f"A{r}", level)
    sol = solve(S, slab_initial(S), (0, 8))
    ref = type_a_evolution(r, level, 8)
    for (a, m, n), expr in ref.items():
        assert same(sol.T(a, m, n), expr), (a, m, n)


def test_a1_level2_values():
    S = TSystem("A1", 2)
    sol = solve(S, slab_initial(S), (0, 6))
    x0, x1 = L.var("T.a1.m1.u0"), L.var("T.a1.m1.u1")
    assert sol.T(1, 1, 2) == 2 * x0 ** -1
    assert sol.T(1, 1, 3) == 2 * x1 ** -1
    assert sol.T(1, 1, 4) == x0


@pytest.mark.parametrize("typ,level", [("A3", 2), ("C2", 2), ("B2", 2), ("G2", 2), ("D4", 2)])
def test_half_and_full_periodicity(typ, level):
    S = TSystem(typ, level)
    dd = S.dd
    H = (dd.hdual + level) * dd.t
    sol = solve(S, slab_initial(S), (0, 3 * H))
    rep = verify_identity(sol, half_period_claim(S, 0, H))
    verify_identity(sol, full_period_claim(S, 2 * H, 0, H // 2), rep)
    assert rep.ok, rep.summary()


def test_wrong_shift_is_rejected():
    S = TSystem("A2", 2)
    sol = solve(S, slab_initial(S), (0, 20))
    claim = full_period_claim(S, 9, 0, 5)
    assert not verify_identity(sol, claim).ok


def test_spiral_half_period():
    S = SpiralSystem(2, 2)
    sol = solve(S, S.initial(), (0, 2 * S.period))
    assert verify_identity(sol, spiral_half_period_claim(S, 0, S.period)).ok


def test_quasi_unit_c2_sign_factor():
    S = TSystem("C2", 2, top="quasi-unit")
    sol = solve(S, slab_initial(S), (0, 24))
    assert verify_identity(sol, half_period_claim(S, 2, 12, sign_factor=True)).ok
    # without the factor the plain claim fails
    assert not verify_identity(sol, half_period_claim(S, 2, 12)).ok


def test_underdetermined():
    S = TSystem("A2", 2)
    init = slab_initial(S)
    init.pop(("T", 1, 1, 0))
    with pytest.raises(Underdetermined):
        solve(S, init, (0, 6))


def test_window_too_small_is_reported():
    S = TSystem("A2", 2)
    sol = solve(S, slab_initial(S), (0, 4))
    with pytest.raises(WindowTooSmall):
        verify_identity(sol, half_period_claim(S, 0, 4))


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(1, 9), min_size=4, max_size=4))
def test_specialization_commutes_with_evolution(vals):
    """Evaluating the symbolic solution equals evolving the numbers directly."""
    S = TSystem("A2", 2)
    init = slab_initial(S)
    names = sorted(str(v) for v in init.values())
    point = dict(zip(names, vals))
    sol = solve(S, init, (0, 10))
    num = {k: Fraction(point[str(v)]) for k, v in init.items()}

    def g(a, n):
        return Fraction(1) if a in (0, 3) else num[("T", a, 1, n)]
    for n in range(1, 10):
        for a in (1, 2):
            num[("T", a, 1, n + 1)] = (1 + g(a - 1, n) * g(a + 1, n)) / g(a, n - 1)
    for k, v in num.items():
        assert evaluate(sol.get(k), point) == v
