"""Minors of periodic column matrices and the type C correspondence.

A periodic matrix is given by ``period`` base columns and a wraparound
sign: ``x_{k + period} = sign * x_k``.  The minor D^{(a)}_m(u) takes m
consecutive columns from beta = -(a + m + u)/2, skips a columns, takes the
remaining h - m columns, where h is the height.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from . import laurent as L
from .laurent import LaurentPoly, NotDivisible, exact_div
from .report import Report
from .tsys import (QuasiSymmetricSystem, SpiralSystem, TSolution, TSystem, make_relation,
                   residual_of)
from .ymap import Fraction


class ConstructionFailed(RuntimeError):
    pass


class IndexOutOfRange(IndexError):
    pass


# determinants

def _det_laplace(rows: List[List[LaurentPoly]]) -> LaurentPoly:
    """Expansion along rows, memoized over column subsets; division free."""
    n = len(rows)
    if n == 0:
        return L.ONE
    memo: Dict[int, LaurentPoly] = {0: L.ONE}
    masks = [0]
    for i in range(n):
        nxt: Dict[int, LaurentPoly] = {}
        for mask in masks:
            base = memo[mask]
            if base.is_zero():
                continue
            for j in range(n):
                if mask >> j & 1:
                    continue
                entry = rows[i][j]
                if entry.is_zero():
                    continue
                # sign from the number of already used columns to the right of j
                above = bin(mask >> (j + 1)).count("1")
                term = base * entry
                if above & 1:
                    term = -term
                nm = mask | (1 << j)
                nxt[nm] = nxt[nm] + term if nm in nxt else term
        memo = nxt
        masks = list(nxt)
    return memo.get((1 << n) - 1, L.ZERO)


def _det_bareiss(rows: List[List[LaurentPoly]]) -> LaurentPoly:
    n = len(rows)
    a = [list(r) for r in rows]
    sign = 1
    prev = L.ONE
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return L.ZERO
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = exact_div(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign == 1 else -d


def det(rows: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    """Exact determinant: cofactor expansion below size 4, Bareiss above.

    Bareiss divides by earlier pivots; when that fails (a vanishing pivot
    under a sign specialization, say) the division-free expansion is used.
    """
    rows = [list(r) for r in rows]
    if len(rows) < 4:
        return _det_laplace(rows)
    try:
        return _det_bareiss(rows)
    except (NotDivisible, ZeroDivisionError):
        return _det_laplace(rows)


# periodic matrices

@dataclass
class PeriodicColumnMatrix:
    height: int
    base: List[List[LaurentPoly]]  # base[k] is column x_k, k = 0..period-1
    sign: int

    @property
    def period(self) -> int:
        return len(self.base)

    def column(self, k: int) -> List[LaurentPoly]:
        q, rem = divmod(k, self.period)
        col = self.base[rem]
        if self.sign == -1 and q % 2:
            return [-x for x in col]
        return col

    def det_of(self, cols: Sequence[int]) -> LaurentPoly:
        columns = [self.column(k) for k in cols]
        rows = [[columns[j][i] for j in range(len(cols))] for i in range(self.height)]
        return det(rows)

    def to_obj(self) -> dict:
        return {
            "height": self.height,
            "period": self.period,
            "sign": self.sign,
            "columns": [[L.to_json_obj(x) for x in col] for col in self.base],
        }

    @classmethod
    def from_obj(cls, obj) -> "PeriodicColumnMatrix":
        base = [[L.from_json_obj(x) for x in col] for col in obj["columns"]]
        return cls(obj["height"], base, obj["sign"])


def minor_columns(a: int, m: int, n: int, height: int) -> List[int]:
    s = a + m + n
    if s % 2:
        raise IndexOutOfRange(f"a+m+u odd at {(a, m, n)}")
    beta = -s // 2
    return [beta + i for i in range(m)] + [beta + m + a + i for i in range(height - m)]


def minor(M: PeriodicColumnMatrix, a: int, m: int, n: int) -> LaurentPoly:
    """D^{(a)}_m(u); for the type C route n is 2u."""
    return M.det_of(minor_columns(a, m, n, M.height))


def type_a_matrix(r: int, level: int, base: List[List[LaurentPoly]]) -> PeriodicColumnMatrix:
    if len(base) != r + 1 + level:
        raise ValueError("need r+1+l base columns")
    return PeriodicColumnMatrix(level, base, (-1) ** (level - 1))


def type_c_matrix(r: int, level: int, base: List[List[LaurentPoly]]) -> PeriodicColumnMatrix:
    if len(base) != 2 * r + 2 + 2 * level:
        raise ValueError("need 2r+2+2l base columns")
    return PeriodicColumnMatrix(2 * level, base, 1)


def random_integer_matrix(height: int, period: int, sign: int, rng: random.Random, bound: int = 5):
    base = [[L.const(rng.randint(-bound, bound)) for _ in range(height)] for _ in range(period)]
    return PeriodicColumnMatrix(height, base, sign)


def symbolic_matrix(height: int, period: int, sign: int, prefix: str = "x"):
    base = [[L.var(f"{prefix}{k}.{i}") for i in range(height)] for k in range(period)]
    return PeriodicColumnMatrix(height, base, sign)


# verification of the minor identities

def verify_minor_relations_a(M: PeriodicColumnMatrix, r: int, lo: int = None, hi: int = None,
                             report: Optional[Report] = None) -> Report:
    """Plucker T-system, spiral boundary and half-periodicity for a type A matrix."""
    l = M.height
    report = report or Report(f"minors A{r} l={l}")
    P = r + 1 + l
    lo = -2 * P if lo is None else lo
    hi = 2 * P if hi is None else hi
    cache: Dict[Tuple[int, int, int], LaurentPoly] = {}

    def D(a, m, n):
        k = (a, m, n)
        if k not in cache:
            cache[k] = minor(M, a, m, n)
        return cache[k]

    cnt, bad = 0, []
    for a in range(1, r + 1):
        for m in range(1, l):
            for n in range(lo, hi + 1):
                if (a + m + n) % 2 == 0:
                    continue
                left = D(a, m, n - 1) * D(a, m, n + 1)
                right = D(a, m - 1, n) * D(a, m + 1, n) + D(a - 1, m, n) * D(a + 1, m, n)
                cnt += 1
                if left != right:
                    bad.append((a, m, n))
    report.add("Plucker T-system", cnt > 0 and not bad, cnt, bad[:5] or None)

    cnt, bad = 0, []
    for n in range(lo, hi + 1):
        checks = []
        for a in range(1, r + 2):
            if (a + n) % 2 == 1:
                checks.append((D(a, 0, n + 1), D(a - 1, 0, n)))
        for a in range(0, r + 1):
            if (a + l + n) % 2 == 1:
                checks.append((D(a, l, n + 1), D(a + 1, l, n)))
        for m in range(0, l):
            if (m + n) % 2 == 1:
                checks.append((D(0, m, n + 1), D(0, m + 1, n)))
        for m in range(1, l + 1):
            if (r + 1 + m + n) % 2 == 1:
                checks.append((D(r + 1, m, n + 1), D(r + 1, m - 1, n)))
        for x, y in checks:
            cnt += 1
            if x != y:
                bad.append(n)
    report.add("spiral boundary identities", cnt > 0 and not bad, cnt, bad[:5] or None)

    cnt, bad = 0, []
    for a in range(0, r + 2):
        for m in range(0, l + 1):
            for n in range(lo, hi + 1):
                if (a + m + n + P) % 2:
                    continue
                cnt += 1
                if D(a, m, n + P) != D(r + 1 - a, l - m, n):
                    bad.append((a, m, n))
    report.add(f"minor half-periodicity shift {P}", cnt > 0 and not bad, cnt, bad[:5] or None)
    return report


def verify_minor_relations_c(M: PeriodicColumnMatrix, r: int, lo: int = None, hi: int = None,
                             zero_odd_middle: bool = True, report: Optional[Report] = None) -> Report:
    """The analogous identities for the 2l x infinity matrices of the type C route.

    Times are numerators n = 2u.  ``zero_odd_middle`` additionally checks the
    vanishing of D^{(r+1)}_{odd} and D^{(r+3)}_{odd} = -D^{(r-1)}_{odd},
    which hold for matrices built from S-system data, not for random ones.
    """
    h = M.height
    N = 2 * r + 2
    report = report or Report(f"minors C-route r={r} height={h}")
    half = r + 1 + h // 2  # in u units
    lo = -4 * half if lo is None else lo
    hi = 4 * half if hi is None else hi
    cache: Dict[Tuple[int, int, int], LaurentPoly] = {}

    def D(a, m, n):
        k = (a, m, n)
        if k not in cache:
            cache[k] = minor(M, a, m, n)
        return cache[k]

    cnt, bad = 0, []
    for a in range(1, N):
        for m in range(1, h):
            for n in range(lo, hi + 1):
                if (a + m + n) % 2 == 0:
                    continue
                left = D(a, m, n - 1) * D(a, m, n + 1)
                right = D(a, m - 1, n) * D(a, m + 1, n) + D(a - 1, m, n) * D(a + 1, m, n)
                cnt += 1
                if left != right:
                    bad.append((a, m, n))
    report.add("Plucker T-system (half steps)", cnt > 0 and not bad, cnt, bad[:5] or None)

    cnt, bad = 0, []
    for n in range(lo, hi + 1):
        checks = []
        for a in range(1, N + 1):
            if (a + n) % 2 == 1:
                checks.append((D(a, 0, n + 1), D(a - 1, 0, n)))
        for a in range(0, N):
            if (a + h + n) % 2 == 1:
                checks.append((D(a, h, n + 1), D(a + 1, h, n)))
        for m in range(0, h):
            if (m + n) % 2 == 1:
                checks.append((D(0, m, n + 1), D(0, m + 1, n)))
        for m in range(1, h + 1):
            if (N + m + n) % 2 == 1:
                checks.append((D(N, m, n + 1), -D(N, m - 1, n)))
        for x, y in checks:
            cnt += 1
            if x != y:
                bad.append(n)
    report.add("boundary identities (with sign at a=2r+2)", cnt > 0 and not bad, cnt, bad[:5] or None)

    cnt, bad = 0, []
    shift = 2 * half
    for a in range(0, N + 1):
        for m in range(0, h + 1):
            for n in range(lo, hi + 1):
                if (a + m + n) % 2:
                    continue
                cnt += 1
                if D(a, m, n + shift) != (-1) ** m * D(N - a, h - m, n):
                    bad.append((a, m, n))
    report.add(f"minor half-periodicity shift {half}", cnt > 0 and not bad, cnt, bad[:5] or None)

    if zero_odd_middle:
        cnt, bad = 0, []
        cnt2, bad2 = 0, []
        for m in range(1, h, 2):
            for n in range(lo, hi + 1):
                if (r + 1 + m + n) % 2:
                    continue
                cnt += 1
                if not D(r + 1, m, n).is_zero():
                    bad.append((m, n))
                cnt2 += 1
                if D(r + 3, m, n) != -D(r - 1, m, n):
                    bad2.append((m, n))
        report.add("D^{(r+1)}_{odd} = 0", cnt > 0 and not bad, cnt, bad[:5] or None)
        report.add("D^{(r+3)}_{odd} = -D^{(r-1)}_{odd}", cnt2 > 0 and not bad2, cnt2, bad2[:5] or None)
    return report


# construction from solutions

def columns_from_tsolution(sol: TSolution) -> PeriodicColumnMatrix:
    """Build columns whose minors reproduce a type A level-l solution.

    Works for the spiral system and for the unit-boundary T-system of type
    A_r (where every boundary value is 1).
    """
    system = sol.system
    if isinstance(system, SpiralSystem):
        r, l = system.r, system.level
    elif isinstance(system, TSystem) and system.dd.ftype.family == "A" and system.level:
        r, l = system.dd.rank, system.level
    else:
        raise ConstructionFailed("need a type A level-restricted solution")
    T = lambda a, m, n: sol.get(("T", a, m, n))
    e = lambda i, c=L.ONE: [c if j == i else L.ZERO for j in range(l)]
    cols = [e(i) for i in range(l - 1)] + [e(l - 1, T(0, 0, 0))]
    for j in range(0, r + 1):
        piv = T(1, 0, 1 - 2 * j)
        acc = [L.ZERO] * l
        for m in range(l):
            c = T(1, m, -1 - 2 * j - m)
            if (l - 1 - m) % 2:
                c = -c
            for i in range(l):
                acc[i] = acc[i] + c * cols[j + m][i]
        try:
            cols.append([exact_div(x, piv) for x in acc])
        except NotDivisible:
            raise ConstructionFailed(f"column {l + j} not divisible by T^(1)_0({1 - 2 * j})") from None
    return type_a_matrix(r, l, cols)


def compare_minors_with_solution(M: PeriodicColumnMatrix, sol: TSolution, points,
                                 name: str = "D = T", negate_key=None, report: Optional[Report] = None,
                                 getter=None) -> Report:
    report = report or Report(name)
    getter = getter or (lambda k: sol.get(k))
    cnt, bad = 0, []
    for k in points:
        _, a, m, n = k
        try:
            val = getter(k)
        except KeyError:
            continue
        cnt += 1
        if minor(M, a, m, n) != val:
            bad.append(k)
    report.add(name, cnt > 0 and not bad, cnt, bad[:5] or None)
    return report


# the rho correspondence between the quasi-unit C system and the S-system

class RhoMap:
    """Images of S-system generators in a solved quasi-unit C_r solution."""

    def __init__(self, sol: TSolution):
        system = sol.system
        if not (isinstance(system, TSystem) and system.top == "quasi-unit"):
            raise ValueError("rho needs a quasi-unit type C solution")
        self.sol = sol
        self.r = system.dd.rank
        self.l = system.level

    def T(self, a, m, n):
        return self.sol.T(a, m, n)

    def forward(self, a: int, m: int, n: int) -> LaurentPoly:
        """rho(S^{(a)}_m(u)), u = n/2, on the full lattice 0 <= a <= 2r+2, 0 <= m <= 2l."""
        r, l = self.r, self.l
        N = 2 * r + 2
        if not (0 <= a <= N and 0 <= m <= 2 * l):
            raise IndexOutOfRange((a, m, n))
        if m == 0 or m == 2 * l or a == 0:
            return L.ONE
        if a == N:
            return L.const((-1) ** m)
        if a > r + 1:
            v = self.forward(N - a, m, n)
            return v if m % 2 == 0 else -v
        if a < r:
            return self.T(a, m, n)
        k, odd = divmod(m, 2)
        if a == r:
            if odd:
                return self.T(r, k, n) * self.T(r, k + 1, n)
            return self.T(r, k, n - 1) * self.T(r, k, n + 1)
        if odd:
            return L.ZERO
        return self.T(r, k, n) ** 2

    def inverse_fraction(self, m: int, n: int) -> Tuple[List[int], List[int]]:
        """Odd indices of S^{(r)} in the numerator and denominator of rho^{-1}(T^{(r)}_m)."""
        if not 1 <= m <= self.l:
            raise IndexOutOfRange(m)
        num = list(range(2 * m - 1, 0, -4))
        den = list(range(2 * m - 3, 0, -4))
        return num, den

    def inverse_image(self, m: int, n: int, S=None) -> Fraction:
        """rho^{-1}(T^{(r)}_m(u)) evaluated with S-values (default: rho images)."""
        S = S or (lambda a, k, nn: self.forward(a, k, nn))
        num, den = self.inverse_fraction(m, n)
        return Fraction(L.prod(S(self.r, k, n) for k in num), L.prod(S(self.r, k, n) for k in den))


def verify_rho(rho: RhoMap, lo: int, hi: int, report: Optional[Report] = None) -> Report:
    """Round trips of rho on generators and the S-system relations on its image."""
    r, l = rho.r, rho.l
    report = report or Report("rho correspondence")
    # rho(rho^{-1}(T^{(r)}_m)) = T^{(r)}_m
    cnt, bad = 0, []
    for m in range(1, l + 1):
        for n in range(lo, hi + 1):
            cnt += 1
            if rho.inverse_image(m, n) != Fraction(rho.T(r, m, n), L.ONE):
                bad.append((m, n))
    report.add("rho . rho^{-1} = id on T^{(r)}_m", cnt > 0 and not bad, cnt, bad[:5] or None)
    # rho^{-1}(rho(S)) = S via the claims relating rho^{-1}(T) to S
    cnt, bad = 0, []
    for m in range(1, l + 1):
        for n in range(lo + 1, hi):
            t_lo, t_hi, t_0 = rho.inverse_image(m, n - 1), rho.inverse_image(m, n + 1), rho.inverse_image(m, n)
            cnt += 3
            if t_lo * t_hi != Fraction(rho.forward(r, 2 * m, n), L.ONE):
                bad.append(("S_2m", m, n))
            if t_0 * t_0 != Fraction(rho.forward(r + 1, 2 * m, n), L.ONE):
                bad.append(("S^(r+1)_2m", m, n))
            if m < l:
                t_1 = rho.inverse_image(m + 1, n)
                if t_0 * t_1 != Fraction(rho.forward(r, 2 * m + 1, n), L.ONE):
                    bad.append(("S_2m+1", m, n))
    report.add("rho^{-1} . rho = id on S generators", cnt > 0 and not bad, cnt, bad[:5] or None)
    # the S-system relations and quasi-symmetry on the rho image
    qs = QuasiSymmetricSystem(r, l)
    cnt, bad = 0, []
    for rel_center_n in range(lo + 1, hi):
        for a in range(1, 2 * r + 2):
            for m in range(1, 2 * l):
                if (a + m + rel_center_n) % 2 == 0:
                    continue
                n = rel_center_n
                S = rho.forward
                left = S(a, m, n - 1) * S(a, m, n + 1)
                right = S(a, m - 1, n) * S(a, m + 1, n) + S(a - 1, m, n) * S(a + 1, m, n)
                cnt += 1
                if left != right:
                    bad.append((a, m, n))
    report.add("S-system relations on the rho image", cnt > 0 and not bad, cnt, bad[:5] or None)
    return report


def columns_from_s_values(S, r: int, l: int) -> PeriodicColumnMatrix:
    """Columns for the 2l x infinity matrix from S-values S(a, m, n), n = 2u."""
    h = 2 * l
    e = lambda i: [L.ONE if j == i else L.ZERO for j in range(h)]
    cols = [e(i) for i in range(h)]
    for j in range(0, 2 * r + 2):
        piv = S(1, 0, 1 - 2 * j)
        acc = [L.ZERO] * h
        for m in range(h):
            c = S(1, m, -(1 + 2 * j + m))
            if (h - 1 - m) % 2:
                c = -c
            for i in range(h):
                acc[i] = acc[i] + c * cols[j + m][i]
        try:
            cols.append([exact_div(x, piv) for x in acc])
        except NotDivisible:
            raise ConstructionFailed(f"column {h + j} not divisible") from None
    return type_c_matrix(r, l, cols)
