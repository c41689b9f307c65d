"""Y-system values as unreduced fractions of T-values.

The map sends Y^{(a)}_m(u) to M^{(a)}_m(u) / (T^{(a)}_{m-1}(u) T^{(a)}_{m+1}(u)).
Fractions are never reduced; equality is tested by cross-multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Tuple

from . import laurent as L
from .laurent import LaurentPoly
from .report import Report
from .tsys import SpiralSystem, TSolution, TSystem, mixing_factors


class MissingValue(KeyError):
    pass


@dataclass(frozen=True)
class Fraction:
    num: LaurentPoly
    den: LaurentPoly

    def __post_init__(self):
        if self.den.is_zero():
            raise ZeroDivisionError("fraction with zero denominator")

    def __mul__(self, other: "Fraction") -> "Fraction":
        return Fraction(self.num * other.num, self.den * other.den)

    def inverse(self) -> "Fraction":
        return Fraction(self.den, self.num)

    def one_plus(self) -> "Fraction":
        return Fraction(self.num + self.den, self.den)

    def one_plus_inverse(self) -> "Fraction":
        return Fraction(self.num + self.den, self.num)

    def __eq__(self, other):
        if not isinstance(other, Fraction):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None  # equality is not structural

    def to_obj(self) -> dict:
        return {"num": L.to_json_obj(self.num), "den": L.to_json_obj(self.den)}


ONE = Fraction(L.ONE, L.ONE)


def _spiral_mixing(a, m, n):
    return [(a - 1, m, n), (a + 1, m, n)]


def _mixing(sol: TSolution, a: int, m: int, n: int):
    if isinstance(sol.system, SpiralSystem):
        return _spiral_mixing(a, m, n)
    return mixing_factors(sol.system.dd, a, m, n)


def phi(sol: TSolution, a: int, m: int, n: int) -> Fraction:
    """Image of Y^{(a)}_m(u), u = n/t, in the T-solution."""
    try:
        num = L.prod(sol.get(("T", b, k, nn)) for b, k, nn in _mixing(sol, a, m, n))
        den = sol.get(("T", a, m - 1, n)) * sol.get(("T", a, m + 1, n))
    except KeyError as e:
        raise MissingValue(str(e)) from None
    return Fraction(num, den)


def one_plus_y(sol: TSolution, a: int, m: int, n: int) -> Fraction:
    """The T-side expression for 1 + Y^{(a)}_m(u)."""
    s = sol.system.step(a) if isinstance(sol.system, TSystem) else 1
    try:
        num = sol.get(("T", a, m, n - s)) * sol.get(("T", a, m, n + s))
        den = sol.get(("T", a, m - 1, n)) * sol.get(("T", a, m + 1, n))
    except KeyError as e:
        raise MissingValue(str(e)) from None
    return Fraction(num, den)


def y_numerator_factors(system: TSystem, a: int, m: int, n: int) -> List[Tuple[int, int, int]]:
    """Points (b, k, n') whose factors (1 + Y^{(b)}_k(u')) form the relation's numerator."""
    dd = system.dd
    f, r = dd.ftype.family, dd.rank
    if f in "ADE":
        out = [(b, m, n) for b in dd.neighbors[a]]
    elif f == "B":
        if a <= r - 2:
            out = [(a - 1, m, n), (a + 1, m, n)]
        elif a == r - 1:
            out = [(r - 2, m, n), (r, 2 * m - 1, n), (r, 2 * m + 1, n), (r, 2 * m, n - 1), (r, 2 * m, n + 1)]
        else:
            k, odd = divmod(m, 2)
            out = [] if odd else [(r - 1, k, n)]
    elif f == "C":
        if a <= r - 2:
            out = [(a - 1, m, n), (a + 1, m, n)]
        elif a == r - 1:
            k, odd = divmod(m, 2)
            out = [(r - 2, m, n)] if odd else [(r - 2, m, n), (r, k, n)]
        else:
            out = [(r - 1, 2 * m + 1, n), (r - 1, 2 * m - 1, n), (r - 1, 2 * m, n - 1), (r - 1, 2 * m, n + 1)]
    elif f == "F":
        if a == 1:
            out = [(2, m, n)]
        elif a == 2:
            out = [(1, m, n), (3, 2 * m - 1, n), (3, 2 * m + 1, n), (3, 2 * m, n - 1), (3, 2 * m, n + 1)]
        elif a == 3:
            k, odd = divmod(m, 2)
            out = [(4, m, n)] if odd else [(2, k, n), (4, m, n)]
        else:
            out = [(3, m, n)]
    else:  # G2
        if a == 1:
            out = [(2, 3 * m - 2, n), (2, 3 * m + 2, n),
                   (2, 3 * m - 1, n - 1), (2, 3 * m - 1, n + 1),
                   (2, 3 * m + 1, n - 1), (2, 3 * m + 1, n + 1),
                   (2, 3 * m, n - 2), (2, 3 * m, n + 2), (2, 3 * m, n)]
        else:
            k, res = divmod(m, 3)
            out = [(1, k, n)] if res == 0 else []
    return [p for p in out if p[0] != 0]


def _y_factor(sol: TSolution, b: int, k: int, n: int, inverse: bool) -> Fraction:
    """(1 + Y) or (1 + Y^{-1}) with the level-boundary conventions."""
    system = sol.system
    if k == 0:
        # Y_0^{-1} = 0
        return ONE
    if system.level is not None and k == system.m_top(b):
        return ONE
    y = phi(sol, b, k, n)
    return y.one_plus_inverse() if inverse else y.one_plus()


def y_relation_sides(sol: TSolution, a: int, m: int, n: int) -> Tuple[Fraction, Fraction]:
    system = sol.system
    s = system.step(a)
    left = phi(sol, a, m, n - s) * phi(sol, a, m, n + s)
    right = ONE
    for b, k, nn in y_numerator_factors(system, a, m, n):
        right = right * _y_factor(sol, b, k, nn, inverse=False)
    den = _y_factor(sol, a, m - 1, n, inverse=True) * _y_factor(sol, a, m + 1, n, inverse=True)
    return left, right * den.inverse()


def verify_y_system(sol: TSolution, lo: int, hi: int, in_class: Callable = lambda k: True,
                    report: Optional[Report] = None) -> Report:
    """Check every Y-relation centered in [lo, hi] and the 1+Y identity."""
    system: TSystem = sol.system
    report = report or Report(f"Y-system {system.name}")
    n_rel, bad_rel, n_id, bad_id = 0, [], 0, []
    for a in system.dd.nodes:
        for m in system.m_range(a):
            for n in range(lo, hi + 1):
                if not in_class(("T", a, m, n)):
                    continue
                try:
                    left, right = y_relation_sides(sol, a, m, n)
                    y1 = phi(sol, a, m, n).one_plus()
                    y2 = one_plus_y(sol, a, m, n)
                except MissingValue:
                    continue
                n_rel += 1
                if left != right:
                    bad_rel.append((a, m, n))
                n_id += 1
                if y1 != y2:
                    bad_id.append((a, m, n))
    report.add(f"Y-relations {system.name} (via phi)", n_rel > 0 and not bad_rel, n_rel, bad_rel[:5] or None)
    report.add(f"1+Y identity {system.name}", n_id > 0 and not bad_id, n_id, bad_id[:5] or None)
    return report


def verify_y_periodicity(sol: TSolution, lo: int, hi: int, in_class: Callable = lambda k: True,
                         report: Optional[Report] = None) -> Report:
    """Y^{(a)}_m(u + h + l) = Y^{(omega a)}_{t_a l - m}(u), compared through phi."""
    system: TSystem = sol.system
    dd, l = system.dd, system.level
    shift = (dd.hdual + l) * dd.t
    report = report or Report(f"Y-periodicity {system.name}")
    n_ok, bad = 0, []
    for a in dd.nodes:
        for m in system.m_range(a):
            for n in range(lo, hi + 1):
                if not in_class(("T", a, m, n)):
                    continue
                try:
                    left = phi(sol, a, m, n + shift)
                    right = phi(sol, dd.omega[a], dd.t_a[a] * l - m, n)
                except MissingValue:
                    continue
                n_ok += 1
                if left != right:
                    bad.append((a, m, n))
    report.add(f"Y half-periodicity {system.name} shift u+{dd.hdual + l} (via phi)",
               n_ok > 0 and not bad, n_ok, bad[:5] or None)
    return report
