"""Q-systems: T-systems with the spectral parameter forgotten.

Values are polynomials in the formal Q^{(a)}_1, resolved in m by the
unique-unknown rule of ``tsys.solve``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

from . import laurent as L
from .dynkin import DynkinData, TwistedType, data_for, parse_any
from .laurent import LaurentPoly
from .report import Report
from .tsys import RelationSystem, TSolution, TSystem, make_relation, mixing_factors, residual_of, solve


class Mismatch(AssertionError):
    pass


QType = Union[DynkinData, TwistedType]


def _resolve(xtype) -> QType:
    return parse_any(xtype) if isinstance(xtype, str) else xtype


def nodes_of(xt: QType) -> Tuple[int, ...]:
    return tuple(xt.i_sigma) if isinstance(xt, TwistedType) else tuple(xt.nodes)


def index_scale(xt: QType, a: int) -> int:
    """t_a: node a carries Q^{(a)}_m for m up to t_a * m_max."""
    return 1 if isinstance(xt, TwistedType) else xt.t_a[a]


def q_mixing(xt: QType, a: int, m: int) -> List[Tuple[int, int]]:
    """Factors (b, k) of the mixing term in the relation for (Q^{(a)}_m)^2."""
    if isinstance(xt, TwistedType):
        return _twisted_mixing(xt, a, m)
    f, r = xt.ftype.family, xt.rank
    if f in "ADE":
        out = [(b, m) for b in xt.neighbors[a]]
    elif f == "B":
        if a <= r - 2:
            out = [(a - 1, m), (a + 1, m)]
        elif a == r - 1:
            out = [(r - 2, m), (r, 2 * m)]
        else:
            k, odd = divmod(m, 2)
            out = [(r - 1, k), (r - 1, k + 1)] if odd else [(r - 1, k), (r - 1, k)]
    elif f == "C":
        if a <= r - 2:
            out = [(a - 1, m), (a + 1, m)]
        elif a == r - 1:
            k, odd = divmod(m, 2)
            out = [(r - 2, m), (r, k), (r, k + 1)] if odd else [(r - 2, m), (r, k), (r, k)]
        else:
            out = [(r - 1, 2 * m)]
    elif f == "F":
        if a == 1:
            out = [(2, m)]
        elif a == 2:
            out = [(1, m), (3, 2 * m)]
        elif a == 3:
            k, odd = divmod(m, 2)
            out = ([(2, k), (2, k + 1)] if odd else [(2, k), (2, k)]) + [(4, m)]
        else:
            out = [(3, m)]
    else:  # G2
        if a == 1:
            out = [(2, 3 * m)]
        else:
            k, res = divmod(m, 3)
            out = [(1, k)] * (3 - res) + [(1, k + 1)] * res
    return [p for p in out if p[0] != 0]


def _twisted_mixing(tw: TwistedType, a: int, m: int) -> List[Tuple[int, int]]:
    f, n, kappa = tw.base.family, tw.base.rank, tw.kappa
    r = len(tw.i_sigma)
    same = [(a - 1, m), (a + 1, m)]
    if f == "A" and n % 2:
        out = same if a < r else [(r - 1, m), (r - 1, m)]
    elif f == "A":
        out = same if a < r else [(r - 1, m), (r, m)]
    elif f == "D" and kappa == 2:
        if a <= r - 2:
            out = same
        elif a == r - 1:
            out = [(r - 2, m), (r, m), (r, m)]
        else:
            out = [(r - 1, m)]
    elif f == "E":
        out = {1: [(2, m)], 2: [(1, m), (3, m)], 3: [(2, m), (2, m), (4, m)], 4: [(3, m)]}[a]
    else:
        out = [(2, m)] if a == 1 else [(1, m)] * 3
    return [p for p in out if p[0] != 0]


class QSystem(RelationSystem):
    """Relations (Q_m)^2 = Q_{m-1} Q_{m+1} + mixing for 1 <= m < t_a * m_max.

    The window passed to ``solve`` is ignored; m_max fixes the range.
    """

    def __init__(self, xtype, m_max: int):
        self.xt = _resolve(xtype)
        self.m_max = m_max
        self.name = f"Q({self.xt.ftype if isinstance(self.xt, DynkinData) else self.xt})"

    def canon(self, key):
        _, a, m = key
        if a == 0 or m == 0:
            return 1, None
        return 1, key

    def top(self, a: int) -> int:
        return index_scale(self.xt, a) * self.m_max

    def relations(self, lo, hi):
        out = []
        for a in nodes_of(self.xt):
            for m in range(1, self.top(a)):
                out.append(make_relation(
                    self.canon, ("Q", a, m), [("Q", a, m), ("Q", a, m)],
                    [[("Q", a, m - 1), ("Q", a, m + 1)],
                     [("Q", b, k) for b, k in q_mixing(self.xt, a, m)]]))
        return out

    def points(self, lo, hi):
        return [("Q", a, m) for a in nodes_of(self.xt) for m in range(1, self.top(a) + 1)]

    def default_pad(self):
        return 0


@dataclass
class QState:
    system: QSystem
    solution: TSolution

    def Q(self, a: int, m: int) -> LaurentPoly:
        return self.solution.get(("Q", a, m))

    @property
    def values(self) -> Dict[Tuple[int, int], LaurentPoly]:
        return {(k[1], k[2]): v for k, v in self.solution.values.items()}


def q_initial(xt: QType, prefix: str = "Q") -> Dict:
    return {("Q", a, 1): L.var(f"{prefix}{a}") for a in nodes_of(xt)}


def q_evolve(xtype, m_max: int) -> QState:
    """Q^{(a)}_{m+1} = ((Q^{(a)}_m)^2 - M) / Q^{(a)}_{m-1} by exact division."""
    system = QSystem(xtype, m_max)
    init = q_initial(system.xt)
    sol = solve(system, init, (0, 0), pad=0)
    return QState(system, sol)


def verify_q_system(state: QState, report: Optional[Report] = None) -> Report:
    system = state.system
    report = report or Report(system.name)
    done, bad = state.solution.verify_relations()
    report.add(f"{system.name} zero residual up to m={system.m_max}", done > 0 and not bad, done, bad[:5] or None)
    nonpoly = [k for k, v in state.values.items()
               if any(e < 0 for mono in v.terms for _, e in mono)]
    report.add(f"{system.name} values are polynomials in Q_1", not nonpoly, len(state.values), nonpoly[:5] or None)
    return report


# ---------------------------------------------------------------- collapse of T

def translation_invariant_solution(xtype, m_max: int, window: Tuple[int, int] = (0, 6)) -> TSolution:
    """Unrestricted T-solution started from T^{(a)}_m(u) := Q^{(a)}_m on the slab."""
    from .tsys import slab_initial
    from .twisted import TwistedSystem
    xt = _resolve(xtype)
    q = q_evolve(xt, m_max)
    if isinstance(xt, TwistedType):
        system = TwistedSystem(xt, m_max=m_max)
        init = {k: q.Q(k[1], k[2]) for k in system.points(window[0], window[0] + 1)}
    else:
        system = TSystem(xt, m_max=m_max)
        init = {k: q.Q(k[1], k[2]) for k in slab_initial(system, n0=window[0])}
    return solve(system, init, window, required=[])


def q_from_t(sol: TSolution, report: Optional[Report] = None) -> Report:
    """The u-forgotten values of an invariant T-solution satisfy the Q-system."""
    system = sol.system
    xt = getattr(system, "tw", None) or system.dd
    report = report or Report(f"collapse {system.name}")
    collapsed: Dict[Tuple[int, int], LaurentPoly] = {}
    for key, v in sol.values.items():
        if key[0] != "T":
            continue
        a, m = key[1], key[2]
        if collapsed.setdefault((a, m), v) != v:
            raise Mismatch(f"T^({a})_{m} depends on u")
    m_max = min(max(m for b, m in collapsed if b == a) // index_scale(xt, a) for a in nodes_of(xt))
    qsys = QSystem(xt, m_max)
    values = {("Q", a, m): v for (a, m), v in collapsed.items()}
    count, bad = 0, []
    for rel in qsys.relations(0, 0):
        if all(k in values for k in rel.keys()):
            count += 1
            if not residual_of(rel, values).is_zero():
                bad.append(rel.label)
    report.add(f"collapse of {system.name} satisfies {qsys.name}", count > 0 and not bad, count, bad[:5] or None)
    return report


def collapsed_t_mixing(dd: DynkinData, a: int, m: int) -> List[Tuple[int, int]]:
    """T-system mixing factors with the time coordinate dropped."""
    return [(b, k) for b, k, _ in mixing_factors(dd, a, m, 0) if b != 0]


def tables_agree(dd: DynkinData, m_max: int = 6) -> bool:
    for a in dd.nodes:
        for m in range(1, dd.t_a[a] * m_max):
            left = Counter(p for p in collapsed_t_mixing(dd, a, m) if p[1] != 0)
            right = Counter(p for p in q_mixing(dd, a, m) if p[1] != 0)
            if left != right:
                return False
    return True
