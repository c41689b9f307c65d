import pytest

from tsyslab.dynkin import data_for
from tsyslab.levels01 import (LEVEL0_TYPES, SimplyLacedInput, coxeter_check, level0_evolve, level0_verify,
                              level1_reduce, mat_mul, minimal_period, one_step_matrix, reflection, tau,
                              verify_level1)

SIMPLY_LACED = [t for t in LEVEL0_TYPES if data_for(t).ftype.simply_laced]


@pytest.mark.parametrize("ty", LEVEL0_TYPES)
def test_level0(ty):
    rep = level0_verify(ty)
    assert rep.ok, rep.summary()


@pytest.mark.parametrize("ty,period", [("A1", 4), ("A4", 10), ("D4", 12), ("E6", 24), ("E7", 36), ("E8", 60),
                                       ("B3", 20), ("C3", 16), ("F4", 36), ("G2", 24)])
def test_level0_minimal_period(ty, period):
    # 2 t h^vee in time steps of 1/t
    st = level0_evolve(ty)
    assert minimal_period(one_step_matrix(st), period) == period


@pytest.mark.parametrize("ty", SIMPLY_LACED)
def test_coxeter_route(ty):
    assert coxeter_check(ty).ok


def test_reflections_square_to_identity():
    dd = data_for("E6")
    for b in dd.nodes:
        s = reflection(dd, b)
        assert mat_mul(s, s) == [[int(i == j) for j in range(6)] for i in range(6)]


def test_coxeter_element_order_is_h():
    dd = data_for("D5")
    c = mat_mul(tau(dd, 1), tau(dd, -1))
    assert minimal_period(c, 20) == dd.coxeter


def test_level1_reduction_table():
    assert (level1_reduce("B3").target, level1_reduce("B3").t) == ("A1", 2)
    assert level1_reduce("C3").target == "A2"
    assert level1_reduce("F4").target == "A2" and level1_reduce("G2").t == 3
    with pytest.raises(SimplyLacedInput):
        level1_reduce("A3")


@pytest.mark.parametrize("ty", ["B2", "C2", "B3", "C3", "G2"])
def test_level1(ty):
    rep = verify_level1(ty)
    assert rep.ok, rep.summary()
