import pytest

from tsyslab.twisted import (TwistedSystem, _as_twisted, copies_claim_values, omega_shift, quotient_check,
                             tables_agree, twisted_half_period_claim, twisted_key_name, twisted_solve,
                             untwisted_copies, verify_twisted)
from tsyslab.tsys import PeriodicityClaim, verify_identity

ALL = ["A2~2", "A3~2", "A4~2", "A5~2", "D4~2", "D5~2", "E6~2", "D4~3"]


@pytest.mark.parametrize("tw", ALL)
def test_derived_table_matches_explicit(tw):
    assert tables_agree(tw)


@pytest.mark.parametrize("tw", ["A2~2", "A3~2", "D4~2", "D4~3"])
def test_twisted_routes(tw):
    rep = verify_twisted(tw)
    assert rep.ok, rep.summary()


def test_omega_shift_table():
    assert [omega_shift(_as_twisted(t)) for t in ALL] == [1, 1, 1, 1, 0, 1, 1, 0]


def test_wrong_omega_shift_fails():
    tw = _as_twisted("A3~2")
    sol = twisted_solve(tw, 2, (0, 20))
    claim = twisted_half_period_claim(sol.system, 0, 6)
    wrong = PeriodicityClaim("no twist", claim.points, claim.lhs,
                             lambda s, k: s.get(("T", k[1], 2 - k[2], k[3], k[4])))
    assert verify_identity(sol, claim).ok
    assert not verify_identity(sol, wrong).ok


def test_key_names():
    assert twisted_key_name(("T", 1, 1, 1, -2)) == "a1.m1.u-2w1"


def test_fixed_nodes_drop_the_shift():
    S = TwistedSystem(_as_twisted("A3~2"), 2)
    assert S.canon(("T", 2, 1, 1, 0)) == (1, ("T", 2, 1, 0, 0))
    assert S.canon(("T", 1, 1, 1, 0)) == (1, ("T", 1, 1, 1, 0))
