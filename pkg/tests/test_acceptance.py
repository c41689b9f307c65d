"""The fifteen acceptance criteria, exact equality throughout, each with its time bound."""

import time

import pytest

from tsyslab import suites
from conftest import ACCEPTANCE_LINES


def _run(number, name, required=()):
    _, fn, bound = suites.ACCEPTANCE[name]
    t0 = time.perf_counter()
    report = fn()
    elapsed = time.perf_counter() - t0
    names = {c.name: c.status for c in report.checks}
    missing = [r for r in required if names.get(r) != "pass"]
    ok = report.ok and not missing and elapsed < bound
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} {name} ({elapsed:.2f} s, bound {bound} s)"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert report.ok, report.summary()
    assert not missing, f"required checks not passing: {missing}"
    assert elapsed < bound, f"{elapsed:.1f} s exceeds {bound} s"
    assert all(c.count > 0 for c in report.checks if c.status == "pass")
    return report


def test_criterion_01_type_a_periodicity():
    _run(1, "type-a-periodicity", [f"half-periodicity A{r} l={l} shift u+{r + 1 + l}"
                                   for r, l in [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (3, 2)]])


def test_criterion_02_spiral():
    _run(2, "spiral", ["spiral half-periodicity A2 l=2 shift u+5"])


def test_criterion_03_c2_determinant_route():
    _run(3, "C2-level2-det", ["half-periodicity C2 l=2 shift u+5", "periodicity T(C2,l=2,quasi-unit) shift 20",
                              "D = rho(S)"])


def test_criterion_04_d4_b2():
    _run(4, "D4-B2-level2", ["evolution half-periodicity D4 shift u+8 (omega)", "periodicity evolution D4 l=2 shift 16",
                             "evolution equals tau on a full period (D4)",
                             "evolution half-periodicity B2 shift u+5 (hat)", "periodicity evolution B2 l=2 shift 20",
                             "evolution equals tau on a full period (B2)"])


def test_criterion_05_closed_forms():
    rep = _run(5, "explicit-level2", ["Omega_0 = beta^2 ((1+beta_1)/beta_1)^2", "PR + QQ boundary identity"])
    for fam, ranks in suites.EXPLICIT_RANKS:
        for r in ranks:
            assert f"evolution equals tau on a full period ({fam}{r})" in {c.name for c in rep.checks}


def test_criterion_06_cluster():
    _run(6, "cluster", ["distinct cluster variables A2 = 5", "distinct cluster variables A3 = 9",
                        "mu_+ mu^2 seed = omega(seed)", "mu^3 seed = omega(seed)",
                        "belt variables are Laurent with monomial denominators"])


def test_criterion_07_box_product():
    _run(7, "box-product", ["box belt satisfies T(X, X')", "mu_tensor^6 seed = seed"])


def test_criterion_08_determinants():
    _run(8, "determinants", ["minor relations A1 l=2 on 20 random integer matrices",
                             "minor relations A2 l=2 on 20 random integer matrices",
                             "minor relations A1 l=3 on 20 random integer matrices",
                             "D^{(r+1)}_{odd} = 0", "Plucker T-system (half steps)"])


def test_criterion_09_y_map():
    _run(9, "y-system", ["phi(Y1_1(u)) = T2_1(u) for A2 l=2", "phi(Y2_1(u)) = T1_1(u) for A2 l=2",
                         "Y-relations T(A3,l=2,unit) (via phi)", "Y-relations T(B2,l=2,unit) (via phi)",
                         "Y half-periodicity T(A2,l=2,unit) shift u+5 (via phi)"])


def test_criterion_10_level0():
    _run(10, "level0", ["level 0 E8 period 60", "Coxeter E8 alternating word of length 30 is w0"])


def test_criterion_11_level1():
    _run(11, "level1", ["level 1 B2 equals T'_2(A1)", "level 1 C2 equals T'_2(A1)", "level 1 F4 equals T'_2(A2)",
                        "level 1 G2 equals T'_3(A1)"])


def test_criterion_12_twisted():
    _run(12, "twisted", ["twisted half-periodicity A3~2 l=2 shift u+6 +Omega (direct)",
                         "twisted half-periodicity A3~2 l=2 shift u+6 +Omega (quotient)",
                         "twisted half-periodicity D4~3 l=2 shift u+8 (direct)",
                         "twisted half-periodicity D4~3 l=2 shift u+8 (quotient)",
                         "twisted A3~2 l=2 equals untwisted quotient", "twisted D4~3 l=2 equals untwisted quotient"])


def test_criterion_13_q_systems():
    _run(13, "q-system", [f"Q({t}) {what}" for t in ("A2", "B2", "C2", "A3~2")
                          for what in ("zero residual up to m=6", "values are polynomials in Q_1")])


def test_criterion_14_qchar():
    _run(14, "qchar", ["A3 peel first box (m<=4)", "A3 peel last box (m<=4)",
                       "A2 q-characters satisfy T-system (m<=3)", "A2 alternating row-column sum (m<=3)",
                       "A2 l=2 S_(l+k) = 0 for 1 <= k <= 2", "A3 l=2 S_(l+k) = 0 for 1 <= k <= 3"])


def test_criterion_15_kernel():
    _run(15, "kernel", ["exact_div(p*q, q) = p on 10000 random pairs", "mutation is an involution on 200 random seeds",
                        "canonical serialization round trips"])
