import json

import pytest
from hypothesis import given, settings, strategies as st

from tsyslab import laurent as L
from tsyslab.cluster import (Quiver, Seed, alternating_quiver, belt, check_belt_t_system,
                             check_cluster_t_correspondence, check_seed_periodicity, check_tensor_periodicity,
                             distinct_cluster_variables, quiver_from_json, quiver_to_json)


@st.composite
def quivers(draw):
    n = draw(st.integers(1, 5))
    arrows = []
    for i in range(n):
        for j in range(i + 1, n):
            k = draw(st.integers(-2, 2))
            arrows += [(i, j)] * k if k > 0 else [(j, i)] * -k
    return Quiver.from_arrows(n, arrows)


@settings(max_examples=80, deadline=None)
@given(quivers(), st.data())
def test_mutation_is_involution(q, data):
    k = data.draw(st.integers(0, q.n - 1))
    seed = Seed(q, tuple(L.var(f"c{i}") for i in range(q.n)))
    assert q.mutate(k).mutate(k) == q
    assert seed.mutate(k).mutate(k) == seed


@settings(max_examples=50, deadline=None)
@given(quivers())
def test_quiver_json_round_trip(q):
    s = quiver_to_json(q)
    assert quiver_from_json(s).b == q.b
    assert json.loads(s)["n"] == q.n


def test_a2_exchange_by_hand():
    q = Quiver.from_arrows(2, [(0, 1)])
    x, y = L.var("c0"), L.var("c1")
    s = Seed(q, (x, y)).mutate(0)
    assert s.cluster[0] == (1 + y) * x ** -1
    assert s.quiver.b == ((0, -1), (1, 0))


def test_bad_quiver():
    with pytest.raises(ValueError):
        Quiver(((0, 1), (1, 0)))


@pytest.mark.parametrize("typ,n", [("A1", 1), ("A2", 2), ("A3", 3), ("A4", 4)])
def test_type_a_cluster_variable_count(typ, n):
    # the cluster algebra of type A_n has n(n+3)/2 cluster variables
    assert distinct_cluster_variables(belt(typ, 2 * n + 6)) == n * (n + 3) // 2


@pytest.mark.parametrize("typ", ["A2", "A3", "D4"])
def test_belt_checks(typ):
    bt = belt(typ, 10, back=2)
    rep = check_belt_t_system(bt, typ)
    check_cluster_t_correspondence(bt, typ, report=rep)
    check_seed_periodicity(typ, rep)
    assert rep.ok, rep.summary()


def test_alternating_quiver_arrows_follow_signs():
    q = alternating_quiver("A3")
    for i, j in q.arrows():
        assert q.labels[i] in (1, 3) and q.labels[j] == 2 or q.labels[i] == 2 and q.labels[j] in (1, 3)


def test_box_product_periodicity():
    assert check_tensor_periodicity("A1", "A2").ok
