import pytest
import sympy as sp

from tsyslab import laurent as L
from tsyslab.qchar import (chi_jacobi_trudi, chi_row, chi_tableau, extended_vanishing, oracle_matches_tsys,
                           oracle_t_system, restricted_solution, verify_base_identities, verify_box_recursions,
                           verify_jacobi_trudi, verify_pi1)
from oracles import schur_rectangle, to_sympy


def test_sl2_fundamental():
    assert chi_row(1, 1, 0) == L.var("Y1.q0") + L.var("Y1.q2") ** -1


def test_a2_fundamental_has_three_terms():
    assert len(chi_row(2, 1, 0)) == 3


@pytest.mark.parametrize("r,a,m", [(1, 1, 3), (2, 1, 2), (2, 2, 2), (3, 2, 2)])
def test_classical_limit_is_schur(r, a, m):
    """Forgetting the spectral shift gives the rectangle Schur function."""
    p = to_sympy(chi_jacobi_trudi(r, a, m, 0))
    ys = {s: sp.Symbol(f"y{str(s)[1:].split('.')[0]}") for s in p.free_symbols}
    y = [sp.Integer(1)] + [sp.Symbol(f"y{i}") for i in range(1, r + 1)] + [sp.Integer(1)]
    xs = [y[i] / y[i - 1] for i in range(1, r + 2)]
    assert sp.simplify(p.subs(ys) - schur_rectangle(r + 1, a, m, xs)) == 0


@pytest.mark.parametrize("r,a,m", [(2, 2, 2), (3, 2, 2), (3, 3, 1)])
def test_tableau_equals_jacobi_trudi(r, a, m):
    assert chi_tableau(r, a, m, 0) == chi_jacobi_trudi(r, a, m, 0)


def test_identity_checks():
    rep = verify_box_recursions(3, 4)
    for r in (1, 2):
        verify_jacobi_trudi(r, 3, rep)
        verify_pi1(r, 3, rep)
        oracle_t_system(r, 3, rep)
    verify_base_identities(2, 2, rep)
    oracle_matches_tsys(1, 3, rep)
    assert rep.ok, rep.summary()


@pytest.mark.parametrize("r", [2, 3])
def test_extended_vanishing(r):
    assert extended_vanishing(restricted_solution(r, 2), r, 2, range(0, 6)).ok
