import random

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from tsyslab import laurent as L
from tsyslab.determinant import (_det_bareiss, _det_laplace, columns_from_tsolution, compare_minors_with_solution,
                                 det, minor_columns, random_integer_matrix, symbolic_matrix,
                                 verify_minor_relations_a, verify_minor_relations_c, IndexOutOfRange)
from tsyslab.tsys import SpiralSystem, TSystem, slab_initial, solve
from oracles import to_sympy


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
def test_integer_det_matches_sympy(rows):
    M = [[L.const(x) for x in row] for row in rows]
    assert det(M) == L.const(int(sp.Matrix(rows).det()))


def test_symbolic_det_matches_sympy_and_both_algorithms_agree():
    xs = [[L.var(f"d{i}{j}") + (1 if i == j else 0) for j in range(3)] for i in range(3)]
    ref = sp.Matrix(3, 3, lambda i, j: to_sympy(xs[i][j])).det()
    assert sp.expand(to_sympy(det(xs)) - ref) == 0
    assert _det_laplace(xs) == _det_bareiss(xs)


def test_minor_parity():
    with pytest.raises(IndexOutOfRange):
        minor_columns(1, 1, 1, 2)
    assert minor_columns(1, 1, 0, 2) == [-1, 1]


@pytest.mark.parametrize("r,l", [(1, 2), (2, 2), (1, 3)])
def test_minor_relations_symbolic(r, l):
    M = symbolic_matrix(l, r + 1 + l, (-1) ** (l - 1), prefix=f"z{r}{l}.")
    assert verify_minor_relations_a(M, r, -3, 3).ok


def test_random_matrices_seeded():
    rng = random.Random(7)
    for _ in range(5):
        assert verify_minor_relations_a(random_integer_matrix(2, 5, -1, rng), 2).ok
        M = random_integer_matrix(4, 10, 1, rng)
        assert verify_minor_relations_c(M, 2, zero_odd_middle=False).ok


def test_odd_vanishing_fails_for_random_matrix():
    M = random_integer_matrix(4, 10, 1, random.Random(3))
    assert not verify_minor_relations_c(M, 2).ok


@pytest.mark.parametrize("r,l", [(1, 2), (2, 2), (2, 3)])
def test_minors_reproduce_unit_solution(r, l):
    S = TSystem(f"A{r}", l)
    sol = solve(S, slab_initial(S), (-12, 12))
    M = columns_from_tsolution(sol)
    pts = [k for k in S.points(-6, 6) if (k[1] + k[2] + k[3]) % 2 == 0]
    assert compare_minors_with_solution(M, sol, pts).ok


def test_minors_reproduce_spiral_solution():
    S = SpiralSystem(2, 2)
    sol = solve(S, S.initial(), (-10, 10))
    M = columns_from_tsolution(sol)
    assert compare_minors_with_solution(M, sol, S.points(-6, 6)).ok
