import pytest
import sympy as sp

from tsyslab import laurent as L
from tsyslab.dynkin import data_for
from tsyslab.qsystem import q_evolve, q_from_t, tables_agree, translation_invariant_solution, verify_q_system
from oracles import elementary, schur_rectangle, to_sympy


def test_a1_chebyshev():
    st = q_evolve("A1", 5)
    x = sp.Symbol("Q1")
    for m in range(1, 6):
        # characters of sl2: U_m(x/2)
        assert sp.expand(to_sympy(st.Q(1, m)) - sp.chebyshevu(m, x / 2)) == 0


@pytest.mark.parametrize("r", [2, 3])
def test_type_a_values_are_rectangle_characters(r):
    st = q_evolve(f"A{r}", 3)
    xs = sp.symbols(f"x1:{r + 2}")
    sub = {sp.Symbol(f"Q{a}"): elementary(xs, a) for a in range(1, r + 1)}
    last = {xs[-1]: 1 / sp.prod(xs[:-1])}
    for a in range(1, r + 1):
        for m in range(1, 4):
            lhs = to_sympy(st.Q(a, m)).subs(sub).subs(last)
            rhs = schur_rectangle(r + 1, a, m, xs).subs(last)
            assert sp.simplify(lhs - rhs) == 0, (a, m)


def test_a2_spot_value():
    assert q_evolve("A2", 2).Q(1, 2) == L.var("Q1") ** 2 - L.var("Q2")


@pytest.mark.parametrize("ty", ["A2", "B2", "C2", "G2", "A3~2", "D4~3"])
def test_q_system_evolution(ty):
    assert verify_q_system(q_evolve(ty, 6)).ok


@pytest.mark.parametrize("ty", ["A1", "A3", "B3", "C3", "D4", "F4", "G2", "E6"])
def test_mixing_tables_agree_with_collapsed_t_system(ty):
    assert tables_agree(data_for(ty))


@pytest.mark.parametrize("ty", ["A2", "B2", "C2", "A3~2"])
def test_translation_invariant_collapse(ty):
    assert q_from_t(translation_invariant_solution(ty, 4)).ok
