"""Named verification suites, one per acceptance criterion plus a few shortcuts.

Every suite is a function taking no arguments and returning a Report.
Nothing here draws unseeded randomness, so reruns give identical reports.
"""

from __future__ import annotations

import json
import random
import time
from typing import Callable, Dict, List, Tuple

from . import laurent as L
from .cluster import (Quiver, Seed, belt, check_belt_t_system, check_box_shapes, check_cluster_t_correspondence,
                      check_laurent, check_seed_periodicity, check_stationary, check_tensor_periodicity,
                      distinct_cluster_variables, quiver_from_json, quiver_to_json)
from .determinant import (RhoMap, columns_from_s_values, compare_minors_with_solution, random_integer_matrix,
                          verify_minor_relations_a, verify_minor_relations_c, verify_rho)
from .dynkin import data_for
from .explicit2 import (_omega_D, init_vars, verify_support_lemmas, verify_tau_equals_evolution,
                        verify_tau_solves)
from .levels01 import LEVEL0_TYPES, LEVEL1_TYPES, coxeter_check, level0_verify, verify_level1
from .qchar import (extended_vanishing, oracle_t_system, restricted_solution, verify_box_recursions,
                    verify_jacobi_trudi, verify_pi1)
from .qsystem import q_evolve, verify_q_system
from .report import Report
from .tsys import (PeriodicityClaim, SpiralSystem, TSystem, full_period_claim, half_period_claim, slab_initial,
                   solve, spiral_half_period_claim, verify_identity)
from .twisted import verify_twisted
from .ymap import Fraction, phi, verify_y_periodicity, verify_y_system


class _Timer:
    """Stamp the checks added inside a ``with`` block with its wall time."""

    def __init__(self, report: Report):
        self.report = report

    def __enter__(self):
        self.start = len(self.report.checks)
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        dt = time.perf_counter() - self.t0
        for c in self.report.checks[self.start:]:
            c.wall_time = dt
        return False


# ---------------------------------------------------------------- 1, 2

TYPE_A_CASES = [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (3, 2)]


def type_a_periodicity(r: int, level: int, report: Report) -> Report:
    S = TSystem(f"A{r}", level)
    half = r + 1 + level
    full = 2 * half
    sol = solve(S, slab_initial(S), (0, 2 * full + full))
    verify_identity(sol, half_period_claim(S, 0, 2 * full), report)
    verify_identity(sol, full_period_claim(S, full, 0, 2 * full), report)
    return report


def crit01_type_a() -> Report:
    report = Report("type A periodicity")
    for r, l in TYPE_A_CASES:
        with _Timer(report):
            type_a_periodicity(r, l, report)
    return report


def crit02_spiral() -> Report:
    report = Report("spiral boundary A2 l=2")
    with _Timer(report):
        S = SpiralSystem(2, 2)
        full = S.period
        sol = solve(S, S.initial(), (0, 2 * full + full))
        verify_identity(sol, spiral_half_period_claim(S, 0, 2 * full), report)
        verify_identity(sol, full_period_claim(S, full, 0, 2 * full, in_class=S.in_class), report)
    return report


# ---------------------------------------------------------------- 3, 8

def c_route(report: Report, minor_checks: bool = True) -> Report:
    """C2 l=2 with quasi-unit boundary: periodicity, rho, and the S-minor route."""
    S = TSystem("C2", 2, top="quasi-unit")
    H = (S.dd.hdual + 2) * S.dd.t
    with _Timer(report):
        sol = solve(S, slab_initial(S), (-30, 30))
        verify_identity(sol, half_period_claim(S, -10, 10, sign_factor=True), report)
        verify_identity(sol, full_period_claim(S, 2 * H, -10, 10), report)
    with _Timer(report):
        rho = RhoMap(sol)
        verify_rho(rho, -10, 10, report)
        M = columns_from_s_values(rho.forward, 2, 2)
        pts = [("S", a, m, n) for a in range(0, 7) for m in range(0, 5) for n in range(-10, 11)
               if (a + m + n) % 2 == 0]
        compare_minors_with_solution(M, sol, pts, "D = rho(S)", report=report,
                                     getter=lambda k: rho.forward(k[1], k[2], k[3]))
    if minor_checks:
        with _Timer(report):
            verify_minor_relations_c(M, 2, -10, 10, report=report)
    return report


def crit03_c2_det() -> Report:
    return c_route(Report("C2 l=2 via the determinant route"))


DM1_CASES = [(1, 2), (2, 2), (1, 3)]


def crit08_determinants() -> Report:
    report = Report("determinant identities")
    for r, l in DM1_CASES:
        with _Timer(report):
            rng = random.Random(1000 * r + l)
            bad = []
            for i in range(20):
                M = random_integer_matrix(l, r + 1 + l, (-1) ** (l - 1), rng)
                if not verify_minor_relations_a(M, r).ok:
                    bad.append(i)
            report.add(f"minor relations A{r} l={l} on 20 random integer matrices", not bad, 20, bad or None)
    with _Timer(report):
        rng = random.Random(2022)
        bad = []
        for i in range(20):
            M = random_integer_matrix(4, 2 * 2 + 2 + 4, 1, rng)
            if not verify_minor_relations_c(M, 2, zero_odd_middle=False).ok:
                bad.append(i)
        report.add("minor relations C2 l=2 on 20 random integer matrices", not bad, 20, bad or None)
    c_route(report)
    return report


# ---------------------------------------------------------------- 4, 5

def _tau_direct_periodicity(family: str, r: int, sol, report: Report) -> Report:
    """Half and full periodicity of the direct evolution returned with the closed-form check."""
    S: TSystem = sol.system.inner
    in_class = sol.system.in_class
    dd = S.dd
    H = (dd.hdual + 2) * dd.t
    lo = sol.window[0]
    X = init_vars(family, r)
    if family == "B":
        twist, name = (lambda a, m, n: X.hat(sol.T(a, m, n))), "hat"
    else:
        twist, name = (lambda a, m, n: sol.T(_omega_D(r, a) if family == "D" else r + 1 - a, m, n)), "omega"
    pts = [k for k in S.points(lo, lo + H + dd.t) if in_class(k)]
    claim = PeriodicityClaim(f"evolution half-periodicity {family}{r} shift u+{dd.hdual + 2} ({name})", pts,
                             lambda s, k: s.T(k[1], k[2], k[3] + H), lambda s, k: twist(k[1], k[2], k[3]))
    verify_identity(sol, claim, report)
    verify_identity(sol, full_period_claim(S, 2 * H, lo, lo + dd.t, in_class=in_class,
                                           label=f"evolution {family}{r} l=2"), report)
    return report


def crit04_d4_b2() -> Report:
    report = Report("D4 and B2 at level 2")
    for family, r in (("D", 4), ("B", 2)):
        with _Timer(report):
            verify_tau_solves(family, r, report)
            _, sol = verify_tau_equals_evolution(family, r, report)
            _tau_direct_periodicity(family, r, sol, report)
    return report


EXPLICIT_RANKS = [("A", range(1, 7)), ("D", range(4, 6)), ("B", range(2, 5))]


def crit05_explicit() -> Report:
    report = Report("closed-form level-2 solutions")
    for family, ranks in EXPLICIT_RANKS:
        for r in ranks:
            with _Timer(report):
                verify_support_lemmas(family, r, report)
                verify_tau_solves(family, r, report)
                verify_tau_equals_evolution(family, r, report)
    return report


# ---------------------------------------------------------------- 6, 7

CLUSTER_COUNTS = {"A2": 5, "A3": 9}


def crit06_cluster() -> Report:
    report = Report("cluster belts")
    for typ, expected in CLUSTER_COUNTS.items():
        with _Timer(report):
            bt = belt(typ, 12, back=4)
            check_belt_t_system(bt, typ, report=report)
            check_stationary(bt, typ, report=report)
            check_laurent(bt, report)
            check_cluster_t_correspondence(bt, typ, report=report)
            check_seed_periodicity(typ, report)
            count = distinct_cluster_variables(belt(typ, 12))
            report.add(f"distinct cluster variables {typ} = {expected}", count == expected, count)
    return report


def crit07_box_product() -> Report:
    report = Report("box product A2 x A2")
    with _Timer(report):
        bt = belt("A2", 8, dd2="A2", back=2)
        check_belt_t_system(bt, "A2", "A2", report)
        check_stationary(bt, "A2", "A2", report)
        check_laurent(bt, report)
        check_box_shapes("A2", "A2", report)
        check_cluster_t_correspondence(bt, "A2", level=3, dd2="A2", report=report)
    with _Timer(report):
        check_tensor_periodicity("A2", "A2", report)
    return report


# ---------------------------------------------------------------- 9

Y_CASES = [("A3", 2), ("B2", 2)]


def crit09_y_map() -> Report:
    report = Report("Y-systems through phi")
    with _Timer(report):
        S = TSystem("A2", 2)
        H = S.dd.hdual + 2
        sol = solve(S, slab_initial(S), (0, 2 * H + 4))
        pts = list(range(2, 2 * H + 2))
        bad1 = [n for n in pts if phi(sol, 1, 1, n) != Fraction(sol.T(2, 1, n), L.ONE)]
        bad2 = [n for n in pts if phi(sol, 2, 1, n) != Fraction(sol.T(1, 1, n), L.ONE)]
        report.add("phi(Y1_1(u)) = T2_1(u) for A2 l=2", not bad1, len(pts), bad1 or None)
        report.add("phi(Y2_1(u)) = T1_1(u) for A2 l=2", not bad2, len(pts), bad2 or None)
        verify_y_system(sol, 2, 2 * H, report=report)
        verify_y_periodicity(sol, 2, H, report=report)
    for typ, l in Y_CASES:
        with _Timer(report):
            S = TSystem(typ, l)
            H = (S.dd.hdual + l) * S.dd.t
            sol = solve(S, slab_initial(S), (0, 2 * H + 4))
            verify_y_system(sol, 2, 2 * H, report=report)
            verify_y_periodicity(sol, 2, H, report=report)
    return report


# ---------------------------------------------------------------- 10 - 13

def crit10_level0() -> Report:
    report = Report("level 0")
    for ty in LEVEL0_TYPES:
        with _Timer(report):
            level0_verify(ty, report)
            if data_for(ty).ftype.simply_laced:
                coxeter_check(ty, report)
    return report


def crit11_level1() -> Report:
    report = Report("level 1")
    for ty in LEVEL1_TYPES:
        with _Timer(report):
            verify_level1(ty, report)
    return report


TWISTED_CASES = ["A3~2", "D4~3"]


def crit12_twisted() -> Report:
    report = Report("twisted level 2")
    for tw in TWISTED_CASES:
        with _Timer(report):
            verify_twisted(tw, 2, report)
    return report


Q_TYPES = ["A2", "B2", "C2", "A3~2"]


def crit13_q_system() -> Report:
    report = Report("Q-systems")
    for ty in Q_TYPES:
        with _Timer(report):
            verify_q_system(q_evolve(ty, 6), report)
    return report


# ---------------------------------------------------------------- 14

def crit14_qchar() -> Report:
    report = Report("q-characters")
    with _Timer(report):
        for r in (1, 2, 3):
            verify_box_recursions(r, 4, report)
    for r in (1, 2):
        with _Timer(report):
            verify_jacobi_trudi(r, 3, report)
            verify_pi1(r, 3, report)
            oracle_t_system(r, 3, report)
    for r in (2, 3):
        with _Timer(report):
            extended_vanishing(restricted_solution(r, 2), r, 2, range(0, 6), report)
    return report


# ---------------------------------------------------------------- 15

def _random_poly(rng: random.Random, names: List[str], terms: int = 4, bound: int = 3) -> L.LaurentPoly:
    p = L.const(0)
    for _ in range(terms):
        mono = L.const(rng.randint(-bound, bound) or 1)
        for nm in names:
            e = rng.randint(-2, 2)
            if e:
                mono = mono * L.var(nm, involutive=nm.startswith("e")) ** e
        p = p + mono
    return p


def _zero_divisor(q: L.LaurentPoly) -> bool:
    """q vanishes at eps = 1 or eps = -1, so it is not invertible-cancellable."""
    return any(L.substitute(q, {"eps": L.const(e)}).is_zero() for e in (1, -1))


def _random_quiver(rng: random.Random, n: int) -> Quiver:
    arrows = [(i, j) if rng.random() < 0.5 else (j, i)
              for i in range(n) for j in range(i + 1, n) for _ in range(rng.randint(0, 2))]
    return Quiver.from_arrows(n, arrows)


def crit15_kernel(trials: int = 10_000) -> Report:
    report = Report("Laurent kernel")
    names = ["x", "y", "z", "eps"]
    with _Timer(report):
        rng = random.Random(15)
        bad = []
        for i in range(trials):
            p = _random_poly(rng, names)
            q = _random_poly(rng, names, terms=rng.randint(1, 3))
            while _zero_divisor(q):
                q = _random_poly(rng, names, terms=rng.randint(1, 3))
            if L.exact_div(p * q, q) != p:
                bad.append(i)
        report.add(f"exact_div(p*q, q) = p on {trials} random pairs", not bad, trials, bad[:5] or None)
    with _Timer(report):
        rng = random.Random(151)
        bad = []
        for i in range(200):
            n = rng.randint(2, 5)
            q = _random_quiver(rng, n)
            seed = Seed(q, tuple(L.var(f"c{j}") for j in range(n)))
            k = rng.randrange(n)
            if q.mutate(k).mutate(k) != q or seed.mutate(k).mutate(k) != seed:
                bad.append(i)
        report.add("mutation is an involution on 200 random seeds", not bad, 200, bad[:5] or None)
    with _Timer(report):
        rng = random.Random(152)
        bad = []
        for i in range(1000):
            p = _random_poly(rng, names)
            s = L.serialize(p)
            obj = L.to_json_obj(p)
            if (L.parse(s) != p or L.serialize(L.parse(s)) != s
                    or L.from_json_obj(json.loads(json.dumps(obj, sort_keys=True))) != p):
                bad.append(i)
        for i in range(100):
            q = _random_quiver(rng, rng.randint(1, 5))
            if quiver_from_json(quiver_to_json(q)).b != q.b:
                bad.append(("quiver", i))
        report.add("canonical serialization round trips", not bad, 1100, bad[:5] or None)
    return report


# ---------------------------------------------------------------- registry

ACCEPTANCE: Dict[str, Tuple[str, Callable[[], Report], float]] = {
    "type-a-periodicity": ("1", crit01_type_a, 60),
    "spiral": ("2", crit02_spiral, 30),
    "C2-level2-det": ("3", crit03_c2_det, 300),
    "D4-B2-level2": ("4", crit04_d4_b2, 600),
    "explicit-level2": ("5", crit05_explicit, 600),
    "cluster": ("6", crit06_cluster, 120),
    "box-product": ("7", crit07_box_product, 300),
    "determinants": ("8", crit08_determinants, 300),
    "y-system": ("9", crit09_y_map, 120),
    "level0": ("10", crit10_level0, 10),
    "level1": ("11", crit11_level1, 30),
    "twisted": ("12", crit12_twisted, 600),
    "q-system": ("13", crit13_q_system, 60),
    "qchar": ("14", crit14_qchar, 300),
    "kernel": ("15", crit15_kernel, 60),
}


def a2_level2() -> Report:
    report = Report("A2 l=2")
    with _Timer(report):
        type_a_periodicity(2, 2, report)
    return report


EXTRA: Dict[str, Callable[[], Report]] = {"A2-level2": a2_level2}


def suite_names() -> List[str]:
    return sorted(set(ACCEPTANCE) | set(EXTRA))


def run_suite(name: str) -> Report:
    if name in ACCEPTANCE:
        number, fn, bound = ACCEPTANCE[name]
        report = fn()
        report.spec = {"suite": name, "criterion": number, "time_bound_s": bound}
        return report
    if name in EXTRA:
        report = EXTRA[name]()
        report.spec = {"suite": name}
        return report
    raise KeyError(name)
