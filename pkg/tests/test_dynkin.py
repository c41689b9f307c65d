import pytest

from tsyslab.dynkin import data_for, parse_any, twisted_data_for
from tsyslab.levels01 import LEVEL0_TYPES
from oracles import coxeter_and_dual


@pytest.mark.parametrize("name", LEVEL0_TYPES)
def test_coxeter_numbers_match_root_count(name):
    dd = data_for(name)
    assert (dd.coxeter, dd.hdual) == coxeter_and_dual(dd.cartan, dd.t_a)


@pytest.mark.parametrize("name", LEVEL0_TYPES)
def test_cartan_symmetrizable(name):
    dd = data_for(name)
    # d_a C_ab symmetric with d_a = 1 / t_a
    for a in dd.nodes:
        for b in dd.nodes:
            assert dd.C(a, b) * dd.t_a[b] == dd.C(b, a) * dd.t_a[a]


@pytest.mark.parametrize("name", LEVEL0_TYPES)
def test_bipartite_and_omega_involution(name):
    dd = data_for(name)
    for a in dd.nodes:
        assert dd.omega[dd.omega[a]] == a
        for b in dd.neighbors[a]:
            assert dd.eps[a] == -dd.eps[b]


def test_t_values():
    assert data_for("B3").t == 2 and data_for("B3").t_a == {1: 1, 2: 1, 3: 2}
    assert data_for("C3").t_a == {1: 2, 2: 2, 3: 1}
    assert data_for("G2").t == 3
    assert data_for("F4").t_a == {1: 1, 2: 1, 3: 2, 4: 2}


def test_twisted_parse():
    tw = parse_any("A3~2")
    assert tw.i_sigma == (1, 2) and tw.kappa_a == {1: 1, 2: 2}
    assert twisted_data_for("D4", 3).i_sigma == (1, 2)
    with pytest.raises(Exception):
        twisted_data_for("B3", 2)
