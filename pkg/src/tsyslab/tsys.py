"""T-systems on a discrete lattice and a constraint-propagation solver.

Keys are plain tuples.  The ordinary systems use ``("T", a, m, n)`` where
the time is ``u = n / t`` for the ambient ``t`` of the type.  Every system
exposes ``canon(key)``, which folds boundary conditions into a coefficient
and a canonical key (``None`` for a pure constant), and ``relations(lo, hi)``
which lists relation instances whose center time lies in ``[lo, hi]``.

A relation is ``coef * prod(lhs) = sum(coef_i * prod(rhs_i))``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from . import laurent as L
from .dynkin import DynkinData, data_for
from .laurent import LaurentPoly, NotDivisible, exact_div
from .report import Report

Key = Hashable


class Underdetermined(RuntimeError):
    def __init__(self, missing):
        self.missing = list(missing)
        super().__init__(f"{len(self.missing)} points unresolved, e.g. {self.missing[:5]}")


class RelationNotDivisible(NotDivisible):
    def __init__(self, relation, key):
        self.relation = relation
        self.key = key
        super().__init__(f"exact division failed solving {key} from {relation.label}")


class WindowTooSmall(ValueError):
    pass


class InconsistentSystem(RuntimeError):
    pass


@dataclass(frozen=True)
class Term:
    coef: int
    factors: Tuple[Key, ...]


@dataclass(frozen=True)
class Relation:
    label: Tuple
    lhs: Term
    rhs: Tuple[Term, ...]

    def keys(self) -> set:
        out = set(self.lhs.factors)
        for t in self.rhs:
            out.update(t.factors)
        return out

    def terms(self) -> Tuple[Term, ...]:
        return (self.lhs,) + self.rhs


def make_term(canon: Callable, coef: int, factors: Iterable[Key]) -> Term:
    keys = []
    for k in factors:
        c, ck = canon(k)
        coef *= c
        if coef == 0:
            return Term(0, ())
        if ck is not None:
            keys.append(ck)
    return Term(coef, tuple(sorted(keys, key=repr)))


def make_relation(canon: Callable, label, lhs: Sequence[Key], rhs: Sequence[Sequence[Key]]) -> Relation:
    lt = make_term(canon, 1, lhs)
    rts = tuple(t for t in (make_term(canon, 1, r) for r in rhs) if t.coef)
    return Relation(label, lt, rts)


def term_value(term: Term, values: Dict[Key, LaurentPoly]) -> LaurentPoly:
    out = L.const(term.coef)
    for k in term.factors:
        out = out * values[k]
    return out


def residual_of(rel: Relation, values: Dict[Key, LaurentPoly]) -> LaurentPoly:
    out = term_value(rel.lhs, values)
    for t in rel.rhs:
        out = out - term_value(t, values)
    return out


class RelationSystem:
    """Interface shared by every lattice system in the package."""

    name = "system"

    def canon(self, key: Key) -> Tuple[int, Optional[Key]]:
        return 1, key

    def relations(self, lo: int, hi: int) -> List[Relation]:
        raise NotImplementedError

    def time_of(self, key: Key) -> int:
        return key[-1]

    def in_class(self, key: Key) -> bool:
        return True

    def points(self, lo: int, hi: int) -> List[Key]:
        """Canonical non-constant lattice points with time in [lo, hi]."""
        raise NotImplementedError

    def default_pad(self) -> int:
        return 4


@dataclass
class TSolution:
    system: RelationSystem
    values: Dict[Key, LaurentPoly]
    provenance: Dict[Key, Tuple]
    window: Tuple[int, int]
    relations: List[Relation] = field(default_factory=list)

    def get(self, key: Key) -> LaurentPoly:
        c, k = self.system.canon(key)
        if k is None or c == 0:
            return L.const(c)
        if k not in self.values:
            raise KeyError(f"value {key} not solved")
        v = self.values[k]
        return v if c == 1 else v * c

    def has(self, key: Key) -> bool:
        c, k = self.system.canon(key)
        return k is None or c == 0 or k in self.values

    def T(self, a: int, m: int, n: int) -> LaurentPoly:
        return self.get(("T", a, m, n))

    def residual(self, rel: Relation) -> LaurentPoly:
        return residual_of(rel, self.values)

    def verify_relations(self) -> Tuple[int, List]:
        """Count fully-resolved relations and list any nonzero residuals."""
        done, bad = 0, []
        for rel in self.relations:
            if all(k in self.values for k in rel.keys()):
                done += 1
                if not self.residual(rel).is_zero():
                    bad.append(rel.label)
        return done, bad

    def export(self) -> Dict[str, dict]:
        out = {}
        for k in sorted(self.values, key=repr):
            out[key_name(k)] = L.to_json_obj(self.values[k])
        return out


def key_name(k: Key) -> str:
    if isinstance(k, tuple) and len(k) == 4 and k[0] in ("T", "S"):
        prefix = "" if k[0] == "T" else "S."
        return f"{prefix}a{k[1]}.m{k[2]}.u{k[3]}"
    return ".".join(str(x) for x in k)


def solve(system: RelationSystem, initial: Dict[Key, LaurentPoly], window: Tuple[int, int],
          pad: Optional[int] = None, required: Optional[Iterable[Key]] = None,
          check: bool = True) -> TSolution:
    """Resolve every reachable lattice point from ``initial`` by exact division.

    A relation fires once exactly one of its keys is unknown and that key
    occurs exactly once in it.  Relations are generated on a window padded
    by ``pad`` time units on both sides.
    """
    lo, hi = window
    pad = system.default_pad() if pad is None else pad
    rels = system.relations(lo - pad, hi + pad)
    values: Dict[Key, LaurentPoly] = {}
    for k, v in initial.items():
        c, ck = system.canon(k)
        if ck is None:
            continue
        values[ck] = v if c == 1 else exact_div(v, L.const(c))
    prov: Dict[Key, Tuple] = {k: ("initial",) for k in values}

    by_key: Dict[Key, List[int]] = {}
    missing: List[set] = []
    for i, rel in enumerate(rels):
        ks = rel.keys()
        for k in ks:
            by_key.setdefault(k, []).append(i)
        missing.append({k for k in ks if k not in values})
    queue = deque(i for i, m in enumerate(missing) if len(m) == 1)

    def solve_one(rel: Relation, x: Key) -> Optional[LaurentPoly]:
        terms = rel.terms()
        where = [j for j, t in enumerate(terms) if x in t.factors]
        if len(where) != 1:
            return None
        j = where[0]
        t = terms[j]
        if t.factors.count(x) != 1:
            return None
        rest = L.const(t.coef)
        for k in t.factors:
            if k != x:
                rest = rest * values[k]
        if rest.is_zero():
            return None
        other = L.ZERO
        for jj, tt in enumerate(terms):
            if jj == j:
                continue
            v = term_value(tt, values)
            # lhs sits on the other side of the equation
            if (jj == 0) == (j == 0):
                other = other - v
            else:
                other = other + v
        try:
            return exact_div(other, rest)
        except NotDivisible:
            raise RelationNotDivisible(rel, x) from None

    while queue:
        i = queue.popleft()
        if len(missing[i]) != 1:
            continue
        (x,) = tuple(missing[i])
        val = solve_one(rels[i], x)
        if val is None:
            continue
        values[x] = val
        prov[x] = rels[i].label
        for j in by_key.get(x, ()):
            missing[j].discard(x)
            if len(missing[j]) == 1:
                queue.append(j)

    sol = TSolution(system, values, prov, window, rels)
    if required is None:
        required = [k for k in system.points(lo, hi) if system.in_class(k)]
    unresolved = [k for k in required if not sol.has(k)]
    if unresolved:
        raise Underdetermined(unresolved)
    if check:
        _, bad = sol.verify_relations()
        if bad:
            raise InconsistentSystem(f"nonzero residual at {bad[:3]}")
    return sol


# ordinary T-systems

def mixing_factors(dd: DynkinData, a: int, m: int, n: int) -> List[Tuple[int, int, int]]:
    """Factors (b, m', n') of the mixing term of the relation centered at (a, m, n)."""
    f, r = dd.ftype.family, dd.rank
    if f in "ADE":
        return [(b, m, n) for b in dd.neighbors[a]]
    if f == "B":
        if a <= r - 2:
            return [(a - 1, m, n), (a + 1, m, n)]
        if a == r - 1:
            return [(r - 2, m, n), (r, 2 * m, n)]
        k, odd = divmod(m, 2)
        if not odd:
            return [(r - 1, k, n - 1), (r - 1, k, n + 1)]
        return [(r - 1, k, n), (r - 1, k + 1, n)]
    if f == "C":
        if a <= r - 2:
            return [(a - 1, m, n), (a + 1, m, n)]
        if a == r - 1:
            k, odd = divmod(m, 2)
            if not odd:
                return [(r - 2, m, n), (r, k, n - 1), (r, k, n + 1)]
            return [(r - 2, m, n), (r, k, n), (r, k + 1, n)]
        return [(r - 1, 2 * m, n)]
    if f == "F":
        if a == 1:
            return [(2, m, n)]
        if a == 2:
            return [(1, m, n), (3, 2 * m, n)]
        if a == 3:
            k, odd = divmod(m, 2)
            if not odd:
                return [(2, k, n - 1), (2, k, n + 1), (4, m, n)]
            return [(2, k, n), (2, k + 1, n), (4, m, n)]
        return [(3, m, n)]
    if f == "G":
        if a == 1:
            return [(2, 3 * m, n)]
        k, res = divmod(m, 3)
        if res == 0:
            return [(1, k, n - 2), (1, k, n), (1, k, n + 2)]
        if res == 1:
            return [(1, k, n - 1), (1, k, n + 1), (1, k + 1, n)]
        return [(1, k, n), (1, k + 1, n - 1), (1, k + 1, n + 1)]
    raise ValueError(f)


class TSystem(RelationSystem):
    """The unrestricted or level-restricted T-system of a finite type.

    ``top`` selects the boundary at m = t_a * level: "unit" sets it to 1,
    "quasi-unit" (type C only) sets T^{(r)}_level to a sign variable that
    depends on u mod 1 and keeps T^{(a)}_{2 level} = 1 for a < r.
    For the unrestricted system ``level`` is None and ``m_max`` bounds m.
    """

    def __init__(self, dd, level: Optional[int] = None, top: str = "unit", m_max: Optional[int] = None,
                 sign_prefix: str = "s"):
        self.dd = data_for(dd) if isinstance(dd, str) else dd
        self.level = level
        self.top = top
        if level is None and m_max is None:
            raise ValueError("unrestricted system needs m_max")
        self.m_max = m_max
        self.sign_prefix = sign_prefix
        if top == "quasi-unit" and self.dd.ftype.family != "C":
            raise ValueError("quasi-unit boundary is defined for type C")
        self.name = f"T({self.dd.ftype}" + (f",l={level}" if level is not None else "") + f",{top})"

    @property
    def t(self) -> int:
        return self.dd.t

    def step(self, a: int) -> int:
        return self.dd.t // self.dd.t_a[a]

    def m_top(self, a: int) -> Optional[int]:
        if self.level is None:
            return None
        return self.dd.t_a[a] * self.level

    def m_limit(self, a: int) -> int:
        """Largest index carried by node a."""
        if self.level is None:
            return self.dd.t_a[a] * self.m_max
        return self.m_top(a) - 1

    def m_range(self, a: int) -> range:
        return range(1, self.m_limit(a) + 1)

    def sign_key(self, n: int) -> Tuple:
        return ("sign", n % self.t)

    def canon(self, key):
        if key[0] == "sign":
            return 1, key
        kind, a, m, n = key
        if a == 0 or m == 0:
            return 1, None
        if self.level is not None:
            top = self.m_top(a)
            if self.top == "quasi-unit" and a == self.dd.rank and m == self.level:
                return 1, self.sign_key(n)
            if m == top:
                return 1, None
            if m > top:
                raise KeyError(f"index {m} above level for node {a}")
        return 1, key

    def sign_values(self) -> Dict[Key, LaurentPoly]:
        if self.top != "quasi-unit":
            return {}
        return {("sign", i): L.var(f"{self.sign_prefix}{i}", involutive=True) for i in range(self.t)}

    def relation_at(self, a: int, m: int, n: int) -> Relation:
        s = self.step(a)
        lhs = [("T", a, m, n - s), ("T", a, m, n + s)]
        toda = [("T", a, m - 1, n), ("T", a, m + 1, n)]
        mix = [("T", b, mm, nn) for b, mm, nn in mixing_factors(self.dd, a, m, n)]
        return make_relation(self.canon, ("T", a, m, n), lhs, [toda, mix])

    def relations(self, lo, hi):
        out = []
        for a in self.dd.nodes:
            for m in self.m_range(a):
                if self.level is None and m == self.m_limit(a):
                    continue
                for n in range(lo, hi + 1):
                    if self.level is None and any(
                            b and mm > self.m_limit(b) for b, mm, _ in mixing_factors(self.dd, a, m, n)):
                        continue
                    out.append(self.relation_at(a, m, n))
        return out

    def points(self, lo, hi):
        out = []
        for a in self.dd.nodes:
            for m in self.m_range(a):
                if self.top == "quasi-unit" and a == self.dd.rank and m == self.level:
                    continue
                for n in range(lo, hi + 1):
                    out.append(("T", a, m, n))
        return out

    def default_pad(self):
        return 3 * self.t


def slab_initial(system: TSystem, n0: int = 0, prefix: str = "T") -> Dict[Key, LaurentPoly]:
    """One fresh variable per lattice point with u in a slab of width 2/t_a.

    Each node's slab is centered inside the widest one, [u0, u0 + 2).  This
    is constraint-free, and centering keeps G2's long mixing reach
    resolvable.
    """
    init = dict(system.sign_values())
    t = system.t
    for a in system.dd.nodes:
        s = system.step(a)
        start = n0 + (t - s)
        for m in system.m_range(a):
            c, k = system.canon(("T", a, m, start))
            if k is None or k[0] != "T":
                continue
            for n in range(start, start + 2 * s):
                init[("T", a, m, n)] = L.var(f"{prefix}.a{a}.m{m}.u{n}")
    return init


def belt_initial(system: TSystem, u0: int = 0, prefix: str = "T") -> Tuple[Dict[Key, LaurentPoly], Callable]:
    """Simply laced: one variable per (a, m) at the time u0 or u0+1 with depth(a)+m+u even."""
    dd = system.dd
    if not dd.ftype.simply_laced:
        raise ValueError("belt preset needs a simply laced type")
    init = {}
    for a in dd.nodes:
        for m in system.m_range(a):
            u = u0 + ((dd.depth(a) + m + u0) % 2)
            init[("T", a, m, u)] = L.var(f"{prefix}.a{a}.m{m}.u{u}")
    parity = (u0) % 2

    def in_class(key):
        _, a, m, n = key
        return (dd.depth(a) + m + n) % 2 == parity
    return init, in_class


def init_preset(system: TSystem, prefix: str = "x") -> Tuple[Dict[Key, LaurentPoly], Callable, Dict[str, Key]]:
    """The level-2 initial sets used by the closed-form solutions.

    Returns the initial assignment, a class filter, and a map from the
    variable names to their lattice points.
    """
    dd = system.dd
    f, r = dd.ftype.family, dd.rank
    pts: Dict[str, Key] = {}
    if f in "AD":
        for a in dd.nodes:
            pts[f"{prefix}{a}"] = ("T", a, 1, a - 1)
        if f == "D":
            pts[f"{prefix}{r}"] = ("T", r, 1, r - 2)

        def in_class(key):
            _, a, m, n = key
            return (dd.depth(a) + m + n) % 2 == 1
    elif f == "B":
        # u = n/2; x_a at u = a-1, xbar_a at u = a
        for a in range(1, r):
            pts[f"{prefix}{a}"] = ("T", a, 1, 2 * (a - 1))
            pts[f"{prefix}b{a}"] = ("T", a, 1, 2 * a)
        pts["w1"] = ("T", r, 1, 2 * r - 3)
        pts["w2"] = ("T", r, 2, 2 * r - 2)
        pts["w3"] = ("T", r, 3, 2 * r - 3)

        def in_class(key):
            _, a, m, n = key
            if a == r and m in (1, 3):
                return n % 2 == 1
            return n % 2 == 0
    else:
        raise ValueError(f"no closed-form initial set for {dd.ftype}")
    init = {k: L.var(name) for name, k in pts.items()}
    return init, in_class, pts


class ClassFiltered(RelationSystem):
    """Wrap a system, restricting the required points to one class."""

    def __init__(self, inner: RelationSystem, in_class: Callable):
        self.inner = inner
        self._in_class = in_class
        self.name = inner.name

    def __getattr__(self, item):
        return getattr(self.inner, item)

    def canon(self, key):
        return self.inner.canon(key)

    def relations(self, lo, hi):
        return self.inner.relations(lo, hi)

    def points(self, lo, hi):
        return self.inner.points(lo, hi)

    def in_class(self, key):
        return self._in_class(key)

    def default_pad(self):
        return self.inner.default_pad()


class PrimedSystem(RelationSystem):
    """T'_level(A_r): type A relations with time step 1/level and unit boundary.

    Time numerators are in units of 1/level.
    """

    def __init__(self, r: int, level: int):
        self.r = r
        self.level = level
        self.name = f"T'({r},{level})"

    def canon(self, key):
        _, a, m, n = key
        if a == 0 or a == self.r + 1 or m == 0 or m == self.level:
            return 1, None
        return 1, key

    def relations(self, lo, hi):
        out = []
        for a in range(1, self.r + 1):
            for m in range(1, self.level):
                for n in range(lo, hi + 1):
                    out.append(make_relation(
                        self.canon, ("T'", a, m, n),
                        [("T", a, m, n - 1), ("T", a, m, n + 1)],
                        [[("T", a, m - 1, n), ("T", a, m + 1, n)],
                         [("T", a - 1, m, n), ("T", a + 1, m, n)]]))
        return out

    def points(self, lo, hi):
        return [("T", a, m, n) for a in range(1, self.r + 1) for m in range(1, self.level)
                for n in range(lo, hi + 1)]


class SpiralSystem(RelationSystem):
    """Level-l type A_r with the spiral boundary; only the class a+m+u even is used."""

    def __init__(self, r: int, level: int, prefix: str = "B"):
        self.r = r
        self.level = level
        self.prefix = prefix
        self.period = 2 * (r + 1 + level)
        self.name = f"spiral({r},{level})"

    def boundary_coord(self, a: int, m: int) -> Optional[int]:
        r, l = self.r, self.level
        if m == 0:
            return r + 1 - a
        if a == 0:
            return r + 1 + m
        if m == l:
            return r + 1 + l + a
        if a == r + 1:
            return 2 * (r + 1) + l + (l - m)
        return None

    def canon(self, key):
        if key[0] == "B":
            return 1, key
        _, a, m, n = key
        c = self.boundary_coord(a, m)
        if c is None:
            return 1, key
        return 1, ("B", (c + n) % self.period)

    def in_class(self, key):
        if key[0] == "B":
            return True
        _, a, m, n = key
        return (a + m + n) % 2 == 0

    def relations(self, lo, hi):
        out = []
        for a in range(1, self.r + 1):
            for m in range(1, self.level):
                for n in range(lo, hi + 1):
                    if (a + m + n) % 2 == 0:
                        continue
                    out.append(make_relation(
                        self.canon, ("T", a, m, n),
                        [("T", a, m, n - 1), ("T", a, m, n + 1)],
                        [[("T", a, m - 1, n), ("T", a, m + 1, n)],
                         [("T", a - 1, m, n), ("T", a + 1, m, n)]]))
        return out

    def points(self, lo, hi):
        return [("T", a, m, n) for a in range(0, self.r + 2) for m in range(0, self.level + 1)
                for n in range(lo, hi + 1) if (a + m + n) % 2 == 0]

    def boundary_values(self) -> Dict[Key, LaurentPoly]:
        # boundary points of the even class have c + u of a fixed parity
        par = (self.r + 1) % 2
        return {("B", k): L.var(f"{self.prefix}{k}") for k in range(self.period) if k % 2 == par}

    def initial(self, prefix: str = "T") -> Dict[Key, LaurentPoly]:
        init = self.boundary_values()
        for a in range(1, self.r + 1):
            for m in range(1, self.level):
                u = (a + m) % 2
                init[("T", a, m, u)] = L.var(f"{prefix}.a{a}.m{m}.u{u}")
        return init


class QuasiSymmetricSystem(RelationSystem):
    """The S-system of type A_{2r+1} at level 2l with quasi-symmetric boundary.

    Time numerators are in half units, u = n/2.  Only the class a+m+n even
    carries values.
    """

    def __init__(self, r: int, level: int):
        self.r = r
        self.level = level  # this is l; the S-system has level 2l
        self.N = 2 * r + 2
        self.name = f"S({r},{level})"

    def canon(self, key):
        _, a, m, n = key
        N, top = self.N, 2 * self.level
        if m == 0 or m == top or a == 0:
            return 1, None
        if a == N:
            return (-1) ** m, None
        if a > self.r + 1:
            c, k = self.canon(("S", N - a, m, n))
            return c * (-1) ** m, k
        if a == self.r + 1 and m % 2 == 1:
            return 0, None
        return 1, key

    def in_class(self, key):
        _, a, m, n = key
        return (a + m + n) % 2 == 0

    def relations(self, lo, hi):
        out = []
        for a in range(1, self.N):
            for m in range(1, 2 * self.level):
                for n in range(lo, hi + 1):
                    if (a + m + n) % 2 == 0:
                        continue
                    out.append(make_relation(
                        self.canon, ("S", a, m, n),
                        [("S", a, m, n - 1), ("S", a, m, n + 1)],
                        [[("S", a, m - 1, n), ("S", a, m + 1, n)],
                         [("S", a - 1, m, n), ("S", a + 1, m, n)]]))
        return out

    def points(self, lo, hi):
        return [("S", a, m, n) for a in range(1, self.r + 2) for m in range(1, 2 * self.level)
                for n in range(lo, hi + 1) if (a + m + n) % 2 == 0 and not (a == self.r + 1 and m % 2)]


# verification of identities

@dataclass
class PeriodicityClaim:
    """``lhs(sol, p) == rhs(sol, p)`` for every p in ``points``."""
    name: str
    points: List
    lhs: Callable
    rhs: Callable


def verify_identity(sol: TSolution, claim: PeriodicityClaim, report: Optional[Report] = None) -> Report:
    report = report or Report(claim.name)
    bad = []
    n = 0
    for p in claim.points:
        try:
            left, right = claim.lhs(sol, p), claim.rhs(sol, p)
        except KeyError as e:
            raise WindowTooSmall(f"{claim.name}: {e}") from None
        n += 1
        if left != right:
            bad.append(repr(p))
    report.add(claim.name, not bad and n > 0, n, bad[:5] or None)
    return report


def half_period_claim(system: TSystem, lo: int, hi: int, in_class: Callable = lambda k: True,
                      sign_factor: bool = False) -> PeriodicityClaim:
    """T^{(a)}_m(u + h + l) = T^{(omega a)}_{t_a l - m}(u) on [lo, hi].

    With ``sign_factor`` (quasi-unit type C) the a=r node picks up the
    factor T^{(r)}_l(u) and omega is the identity.
    """
    dd, l = system.dd, system.level
    shift = (dd.hdual + l) * dd.t
    pts = [k for k in system.points(lo, hi) if in_class(k)]
    r = dd.rank

    def lhs(sol, k):
        _, a, m, n = k
        return sol.T(a, m, n + shift)

    def rhs(sol, k):
        _, a, m, n = k
        if sign_factor:
            if a == r:
                return sol.T(r, l, n) * sol.T(r, l - m, n)
            return sol.T(a, 2 * l - m, n)
        return sol.T(dd.omega[a], dd.t_a[a] * l - m, n)

    return PeriodicityClaim(f"half-periodicity {dd.ftype} l={l} shift u+{dd.hdual + l}", pts, lhs, rhs)


def full_period_claim(system: RelationSystem, period: int, lo: int, hi: int,
                      in_class: Callable = lambda k: True, label: str = "") -> PeriodicityClaim:
    pts = [k for k in system.points(lo, hi) if in_class(k)]

    def lhs(sol, k):
        return sol.get(k[:-1] + (k[-1] + period,))

    def rhs(sol, k):
        return sol.get(k)

    return PeriodicityClaim(f"periodicity {label or system.name} shift {period}", pts, lhs, rhs)


def u_value(n: int, t: int) -> Fraction:
    return Fraction(n, t)


def spiral_half_period_claim(system: SpiralSystem, lo: int, hi: int) -> PeriodicityClaim:
    """T^{(a)}_m(u + r + 1 + l) = T^{(r+1-a)}_{l-m}(u), boundary included."""
    r, l = system.r, system.level
    shift = r + 1 + l
    pts = [("T", a, m, n) for a in range(0, r + 2) for m in range(0, l + 1)
           for n in range(lo, hi + 1) if (a + m + n + shift) % 2 == 0]

    def lhs(sol, k):
        _, a, m, n = k
        return sol.get(("T", a, m, n + shift))

    def rhs(sol, k):
        _, a, m, n = k
        return sol.get(("T", r + 1 - a, l - m, n))

    return PeriodicityClaim(f"spiral half-periodicity A{r} l={l} shift u+{shift}", pts, lhs, rhs)
