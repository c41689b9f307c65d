"""Twisted T-systems on the lattice Z x Z_kappa.

A point (n, b) stands for u = n + b*Omega.  Keys are ("T", a, m, b, n)
with a in I_sigma; nodes fixed by sigma carry b = 0 only.  The relations
are read off from the untwisted diagram through the identification
T^(c)(u, b) = T^(sigma c)(u, b + 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from . import laurent as L
from .dynkin import TwistedType, data_for, twisted_data_for
from .laurent import LaurentPoly
from .report import Report
from .tsys import (Key, PeriodicityClaim, RelationSystem, TSolution, TSystem, full_period_claim, make_relation,
                   slab_initial, solve, verify_identity)


class Mismatch(AssertionError):
    pass


@dataclass(frozen=True)
class TwistedTime:
    n: int
    b: int

    def name(self) -> str:
        return f"u{self.n}w{self.b}"


def twisted_key_name(key: Key) -> str:
    _, a, m, b, n = key
    return f"a{a}.m{m}.{TwistedTime(n, b).name()}"


def representative(tw: TwistedType, c: int) -> Tuple[int, int]:
    """(a, j) with a = sigma^j(c) in I_sigma, the smallest such j."""
    for j in range(tw.kappa):
        a = tw.sigma_pow(c, j)
        if a in tw.i_sigma:
            return a, j
    raise ValueError(f"node {c} has no representative")


def derived_mixing(tw: TwistedType, a: int, b: int) -> List[Tuple[int, int]]:
    """Mixing factors (a', b') of the twisted relation at node a, shift b."""
    dd = data_for(tw.base)
    out = []
    for c in dd.neighbors[a]:
        rep, j = representative(tw, c)
        out.append((rep, (b + j) % tw.kappa))
    return out


def explicit_mixing(tw: TwistedType, a: int, b: int) -> List[Tuple[int, int]]:
    """The same table written out family by family, for cross-checking."""
    f, n, k = tw.base.family, tw.base.rank, tw.kappa
    r = len(tw.i_sigma)
    nb = (b + 1) % k
    same = [(a - 1, b), (a + 1, b)]
    if f == "A" and n % 2:  # A^(2)_{2r-1}
        if a < r:
            out = same
        else:
            out = [(r - 1, b), (r - 1, nb)]
    elif f == "A":  # A^(2)_{2r}
        if a < r:
            out = same
        else:
            out = [(r - 1, b), (r, nb)]
    elif f == "D" and k == 2:  # D^(2)_{r+1}
        if a <= r - 2:
            out = same
        elif a == r - 1:
            out = [(r - 2, b), (r, b), (r, nb)]
        else:
            out = [(r - 1, b)]
    elif f == "E":
        out = {1: [(2, b)], 2: [(1, b), (3, b)], 3: [(2, b), (2, nb), (4, b)], 4: [(3, b)]}[a]
    else:  # D^(3)_4
        out = [(2, b)] if a == 1 else [(1, b), (1, (b - 1) % 3), (1, nb)]
    return [(c, bb) for c, bb in out if c != 0]


class TwistedSystem(RelationSystem):
    """Level-l restricted twisted T-system with the unit boundary.

    With ``level=None`` the system is unrestricted and m runs up to
    ``m_max``; relations centered at m = m_max are dropped.
    """

    def __init__(self, tw: TwistedType, level: Optional[int] = None, m_max: Optional[int] = None):
        if level is None and m_max is None:
            raise ValueError("unrestricted system needs m_max")
        self.tw = tw
        self.level = level
        self.m_max = m_max
        self.name = f"T({tw}" + (f",l={level})" if level is not None else ")")

    @property
    def m_limit(self) -> int:
        return self.level - 1 if self.level is not None else self.m_max

    def canon(self, key):
        _, a, m, b, n = key
        if a == 0 or m == 0 or m == self.level:
            return 1, None
        if self.tw.kappa_a[a] == self.tw.kappa:
            b = 0
        return 1, ("T", a, m, b % self.tw.kappa, n)

    def shifts(self, a: int) -> range:
        return range(1) if self.tw.kappa_a[a] == self.tw.kappa else range(self.tw.kappa)

    def relations(self, lo, hi):
        out = []
        top = self.level if self.level is not None else self.m_max
        for a in self.tw.i_sigma:
            for m in range(1, top):
                for b in self.shifts(a):
                    mix = derived_mixing(self.tw, a, b)
                    for n in range(lo, hi + 1):
                        out.append(make_relation(
                            self.canon, ("W", a, m, b, n),
                            [("T", a, m, b, n - 1), ("T", a, m, b, n + 1)],
                            [[("T", a, m - 1, b, n), ("T", a, m + 1, b, n)],
                             [("T", c, m, bb, n) for c, bb in mix]]))
        return out

    def points(self, lo, hi):
        return [("T", a, m, b, n) for a in self.tw.i_sigma for m in range(1, self.m_limit + 1)
                for b in self.shifts(a) for n in range(lo, hi + 1)]

    def default_pad(self):
        return 3


def twisted_initial(system: TwistedSystem, n0: int = 0, prefix: str = "W") -> Dict[Key, LaurentPoly]:
    """Fresh variables on the two time slices n0, n0 + 1."""
    return {k: L.var(f"{prefix}.{twisted_key_name(k)}") for k in system.points(n0, n0 + 1)}


def twisted_solve(tw, level: int, window: Tuple[int, int], n0: int = 0) -> TSolution:
    tw = _as_twisted(tw)
    system = TwistedSystem(tw, level)
    return solve(system, twisted_initial(system, n0), window)


def _as_twisted(tw) -> TwistedType:
    if isinstance(tw, TwistedType):
        return tw
    base, k = str(tw).split("~")
    return twisted_data_for(base, int(k))


# ---------------------------------------------------------------- quotient route

def symmetrized_initial(tw: TwistedType, system: TSystem, twisted_init: Dict[Key, LaurentPoly],
                        b: int) -> Dict[Key, LaurentPoly]:
    """Initial data of untwisted copy b: T^(c)(u, b) := T^(rep c)(u, b + j)."""
    twsys = TwistedSystem(tw, system.level)
    out = {}
    for key in slab_initial(system):
        _, c, m, n = key
        rep, j = representative(tw, c)
        _, k = twsys.canon(("T", rep, m, b + j, n))
        out[key] = twisted_init[k]
    return out


def untwisted_copies(tw, level: int, window: Tuple[int, int], n0: int = 0) -> Dict[int, TSolution]:
    tw = _as_twisted(tw)
    system = TSystem(data_for(tw.base), level=level)
    twinit = twisted_initial(TwistedSystem(tw, level), n0)
    return {b: solve(system, symmetrized_initial(tw, system, twinit, b), window) for b in range(tw.kappa)}


def quotient_check(twisted_sol: TSolution, copies: Dict[int, TSolution], lo: int, hi: int,
                   report: Optional[Report] = None) -> Report:
    """sigma-identification on the copies, then agreement on I_sigma."""
    system: TwistedSystem = twisted_sol.system
    tw = system.tw
    report = report or Report(f"quotient {tw}")
    dd = data_for(tw.base)
    count, bad = 0, []
    for b, sol in copies.items():
        nxt = copies[(b + 1) % tw.kappa]
        for c in dd.nodes:
            for m in range(1, system.level):
                for n in range(lo, hi + 1):
                    count += 1
                    if sol.T(c, m, n) != nxt.T(tw.sigma[c], m, n):
                        bad.append((c, m, b, n))
    report.add(f"sigma-identification propagates {tw} l={system.level}", count > 0 and not bad, count, bad[:5] or None)
    count, bad = 0, []
    for key in system.points(lo, hi):
        _, a, m, b, n = key
        for bb in range(tw.kappa) if b == 0 and tw.kappa_a[a] == tw.kappa else (b,):
            count += 1
            if twisted_sol.get(key) != copies[bb].T(a, m, n):
                bad.append(key)
    report.add(f"twisted {tw} l={system.level} equals untwisted quotient", count > 0 and not bad, count, bad[:5] or None)
    return report


# ---------------------------------------------------------------- periodicity

def omega_shift(tw: TwistedType) -> int:
    """Omega shift in the half-periodicity: none for D^(2)_{r+1} with r+1 even and D^(3)_4."""
    f, n = tw.base.family, tw.base.rank
    if (f == "D" and tw.kappa == 2 and n % 2 == 0) or (f == "D" and tw.kappa == 3):
        return 0
    return 1


def twisted_half_period_claim(system: TwistedSystem, lo: int, hi: int) -> PeriodicityClaim:
    tw, l = system.tw, system.level
    shift, d = tw.hdual + l, omega_shift(tw)

    def lhs(sol, k):
        _, a, m, b, n = k
        return sol.get(("T", a, m, b, n + shift))

    def rhs(sol, k):
        _, a, m, b, n = k
        return sol.get(("T", a, l - m, b + d, n))

    twist = " +Omega" if d else ""
    return PeriodicityClaim(f"twisted half-periodicity {tw} l={l} shift u+{shift}{twist}",
                            system.points(lo, hi), lhs, rhs)


def copies_claim_values(copies: Dict[int, TSolution], tw: TwistedType) -> TSolution:
    """A TSolution view of the copies indexed by twisted keys."""
    level = next(iter(copies.values())).system.level
    system = TwistedSystem(tw, level)
    values = {}
    for b, sol in copies.items():
        for k, v in sol.values.items():
            if k[0] == "T" and k[1] in tw.i_sigma:
                _, ck = system.canon(("T", k[1], k[2], b, k[3]))
                values.setdefault(ck, v)
    window = next(iter(copies.values())).window
    return TSolution(system, values, {}, window)


def twisted_periodicity(sol: TSolution, lo: int, hi: int, report: Optional[Report] = None,
                        label: str = "") -> Report:
    system: TwistedSystem = sol.system
    tw, l = system.tw, system.level
    report = report or Report(f"twisted periodicity {tw}")
    for claim in (twisted_half_period_claim(system, lo, hi),
                  full_period_claim(system, 2 * (tw.hdual + l), lo, hi, label=f"{tw} l={l}")):
        if label:
            claim.name = f"{claim.name} ({label})"
        verify_identity(sol, claim, report)
    return report


def verify_twisted(tw, level: int = 2, report: Optional[Report] = None) -> Report:
    """Both routes over two periods, their agreement, and the periodicities."""
    tw = _as_twisted(tw)
    report = report or Report(f"twisted {tw} l={level}")
    full = 2 * (tw.hdual + level)
    lo, hi = 0, full
    window = (lo, hi + full // 2 + 1)
    direct = twisted_solve(tw, level, window)
    copies = untwisted_copies(tw, level, window)
    quotient_check(direct, copies, lo, window[1], report)
    twisted_periodicity(direct, lo, hi - full // 2, report, "direct")
    twisted_periodicity(copies_claim_values(copies, tw), lo, hi - full // 2, report, "quotient")
    return report


def tables_agree(tw) -> bool:
    tw = _as_twisted(tw)
    return all(sorted(derived_mixing(tw, a, b)) == sorted(explicit_mixing(tw, a, b))
               for a in tw.i_sigma for b in range(tw.kappa))
