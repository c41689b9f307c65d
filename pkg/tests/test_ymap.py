from tsyslab import laurent as L
from tsyslab.tsys import TSystem, slab_initial, solve
from tsyslab.ymap import Fraction, phi, verify_y_periodicity, verify_y_system


def _sol(typ, level, hi=14):
    S = TSystem(typ, level)
    return solve(S, slab_initial(S), (0, hi))


def test_a2_level2_images():
    sol = _sol("A2", 2)
    for n in range(2, 12):
        assert phi(sol, 1, 1, n) == Fraction(sol.T(2, 1, n), L.ONE)
        assert phi(sol, 2, 1, n) == Fraction(sol.T(1, 1, n), L.ONE)


def test_c2_image_has_denominator():
    sol = _sol("C2", 2, 10)
    assert phi(sol, 1, 1, 3) == Fraction(sol.T(2, 1, 3), sol.T(1, 2, 3))


def test_fraction_equality_is_cross_multiplied():
    x = L.var("p")
    assert Fraction(x * x, x) == Fraction(x, L.ONE)
    assert Fraction(x, L.ONE).one_plus() == Fraction(x + 1, L.ONE)


def test_y_system_and_twist_a3():
    sol = _sol("A3", 2, 16)
    rep = verify_y_system(sol, 2, 12)
    verify_y_periodicity(sol, 2, 6, report=rep)
    assert rep.ok, rep.summary()
