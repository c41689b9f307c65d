"""Finite and twisted Dynkin data.

Nodes are numbered 1..r.  E6 uses the chain 1-2-3-5-6 with node 4 hanging
off node 3; E7 and E8 hang the extra node off nodes 3 and 5 respectively.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

RANK_OK = {
    "A": lambda r: r >= 1,
    "B": lambda r: r >= 2,
    "C": lambda r: r >= 2,
    "D": lambda r: r >= 4,
    "E": lambda r: r in (6, 7, 8),
    "F": lambda r: r == 4,
    "G": lambda r: r == 2,
}


class InvalidRank(ValueError):
    pass


class UnsupportedPair(ValueError):
    pass


@dataclass(frozen=True)
class FiniteType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in RANK_OK:
            raise InvalidRank(f"unknown family {self.family!r}")
        if not RANK_OK[self.family](self.rank):
            raise InvalidRank(f"{self.family}{self.rank} is not a valid type")

    def __str__(self):
        return f"{self.family}{self.rank}"

    @property
    def simply_laced(self) -> bool:
        return self.family in "ADE"


def _edges(ft: FiniteType) -> List[Tuple[int, int]]:
    f, r = ft.family, ft.rank
    if f in "ABC":
        return [(a, a + 1) for a in range(1, r)]
    if f == "D":
        return [(a, a + 1) for a in range(1, r - 1)] + [(r - 2, r)]
    if f == "E":
        if r == 6:
            return [(1, 2), (2, 3), (3, 5), (5, 6), (3, 4)]
        if r == 7:
            return [(a, a + 1) for a in range(1, 6)] + [(3, 7)]
        return [(a, a + 1) for a in range(1, 7)] + [(5, 8)]
    if f == "F":
        return [(1, 2), (2, 3), (3, 4)]
    return [(1, 2)]


def _t_values(ft: FiniteType) -> Tuple[int, Dict[int, int]]:
    f, r = ft.family, ft.rank
    ta = {a: 1 for a in range(1, r + 1)}
    if f == "B":
        ta[r] = 2
        return 2, ta
    if f == "C":
        for a in range(1, r):
            ta[a] = 2
        return 2, ta
    if f == "F":
        ta[3] = ta[4] = 2
        return 2, ta
    if f == "G":
        ta[2] = 3
        return 3, ta
    return 1, ta


def _hdual(ft: FiniteType) -> int:
    f, r = ft.family, ft.rank
    return {
        "A": r + 1,
        "B": 2 * r - 1,
        "C": r + 1,
        "D": 2 * r - 2,
        "E": {6: 12, 7: 18, 8: 30}.get(r, 0),
        "F": 9,
        "G": 4,
    }[f]


def _coxeter(ft: FiniteType) -> int:
    f, r = ft.family, ft.rank
    return {
        "A": r + 1,
        "B": 2 * r,
        "C": 2 * r,
        "D": 2 * r - 2,
        "E": {6: 12, 7: 18, 8: 30}.get(r, 0),
        "F": 12,
        "G": 6,
    }[f]


def _omega(ft: FiniteType) -> Dict[int, int]:
    f, r = ft.family, ft.rank
    w = {a: a for a in range(1, r + 1)}
    if f == "A":
        w = {a: r + 1 - a for a in range(1, r + 1)}
    elif f == "D" and r % 2 == 1:
        w[r - 1], w[r] = r, r - 1
    elif f == "E" and r == 6:
        w.update({1: 6, 6: 1, 2: 5, 5: 2})
    return w


@dataclass(frozen=True)
class DynkinData:
    ftype: FiniteType
    cartan: Tuple[Tuple[int, ...], ...]
    t: int
    t_a: Dict[int, int] = field(hash=False)
    hdual: int
    coxeter: int
    omega: Dict[int, int] = field(hash=False)
    eps: Dict[int, int] = field(hash=False)
    neighbors: Dict[int, Tuple[int, ...]] = field(hash=False)

    @property
    def rank(self) -> int:
        return self.ftype.rank

    @property
    def nodes(self) -> range:
        return range(1, self.rank + 1)

    def C(self, a: int, b: int) -> int:
        return self.cartan[a - 1][b - 1]

    def depth(self, a: int) -> int:
        return 0 if self.eps[a] > 0 else 1

    @property
    def i_plus(self) -> Tuple[int, ...]:
        return tuple(a for a in self.nodes if self.eps[a] > 0)

    @property
    def i_minus(self) -> Tuple[int, ...]:
        return tuple(a for a in self.nodes if self.eps[a] < 0)


def parse_type(name: str) -> FiniteType:
    m = re.fullmatch(r"([A-G])(\d+)", name.strip())
    if not m:
        raise InvalidRank(f"cannot parse type {name!r}")
    return FiniteType(m.group(1), int(m.group(2)))


def data_for(ft) -> DynkinData:
    if isinstance(ft, str):
        ft = parse_type(ft)
    r = ft.rank
    t, ta = _t_values(ft)
    edges = _edges(ft)
    nb: Dict[int, List[int]] = {a: [] for a in range(1, r + 1)}
    for a, b in edges:
        nb[a].append(b)
        nb[b].append(a)
    cart = [[0] * r for _ in range(r)]
    for a in range(1, r + 1):
        cart[a - 1][a - 1] = 2
        for b in nb[a]:
            # C_ab = 2(α_a,α_b)/(α_a,α_a) with long roots of length 2
            cart[a - 1][b - 1] = -(ta[a] // ta[b]) if ta[a] > ta[b] else -1
    # BFS depth parity from node 1
    eps = {1: 1}
    dq = deque([1])
    while dq:
        a = dq.popleft()
        for b in nb[a]:
            if b not in eps:
                eps[b] = -eps[a]
                dq.append(b)
    return DynkinData(
        ftype=ft,
        cartan=tuple(tuple(row) for row in cart),
        t=t,
        t_a=ta,
        hdual=_hdual(ft),
        coxeter=_coxeter(ft),
        omega=_omega(ft),
        eps=eps,
        neighbors={a: tuple(sorted(v)) for a, v in nb.items()},
    )


# twisted types

@dataclass(frozen=True)
class TwistedType:
    base: FiniteType
    kappa: int
    sigma: Dict[int, int] = field(hash=False)
    i_sigma: Tuple[int, ...]
    kappa_a: Dict[int, int] = field(hash=False)
    hdual: int

    def __str__(self):
        return f"{self.base}~{self.kappa}"

    def sigma_pow(self, a: int, k: int) -> int:
        for _ in range(k % self.kappa):
            a = self.sigma[a]
        return a

    def label(self) -> str:
        f, n = self.base.family, self.base.rank
        return f"{f}^({self.kappa})_{n}"


def twisted_data_for(base, kappa: int) -> TwistedType:
    if isinstance(base, str):
        base = parse_type(base)
    f, n = base.family, base.rank
    sigma = {a: a for a in range(1, n + 1)}
    if kappa == 2 and f == "A" and n >= 2:
        sigma = {a: n + 1 - a for a in range(1, n + 1)}
        r = (n + 1) // 2 if n % 2 else n // 2
        i_sigma = tuple(range(1, r + 1))
        hd = 2 * r if n % 2 else 2 * r + 1
    elif kappa == 2 and f == "D":
        sigma[n - 1], sigma[n] = n, n - 1
        r = n - 1
        i_sigma = tuple(range(1, r + 1))
        hd = 2 * r
    elif kappa == 2 and f == "E" and n == 6:
        sigma.update({1: 6, 6: 1, 2: 5, 5: 2})
        i_sigma = (1, 2, 3, 4)
        hd = 12
    elif kappa == 3 and f == "D" and n == 4:
        sigma.update({1: 3, 3: 4, 4: 1})
        i_sigma = (1, 2)
        hd = 6
    else:
        raise UnsupportedPair(f"no twisted type for ({base}, {kappa})")
    kappa_a = {a: (kappa if sigma[a] == a else 1) for a in i_sigma}
    return TwistedType(base=base, kappa=kappa, sigma=sigma, i_sigma=i_sigma, kappa_a=kappa_a, hdual=hd)


def parse_any(name: str):
    """Parse "B3" into DynkinData or "A3~2" into TwistedType."""
    m = re.fullmatch(r"([A-G]\d+)~(\d)", name.strip())
    if m:
        return twisted_data_for(m.group(1), int(m.group(2)))
    return data_for(name)
