"""Sparse multivariate Laurent polynomials over the integers.

A monomial is a sorted tuple of ``(var_id, exponent)`` pairs with no zero
exponents.  A polynomial maps monomials to nonzero Python ints.  Variables
live in a process-wide symbol table; some of them may be declared
involutive, meaning ``s*s == 1``, and their exponents are kept in {0, 1}.
"""

from __future__ import annotations

import heapq
import itertools
import json
from typing import Dict, Iterable, Mapping, Tuple, Union

Monomial = Tuple[Tuple[int, int], ...]


class NotDivisible(ArithmeticError):
    """Raised when an exact division leaves a remainder."""


class NotAUnit(ArithmeticError):
    """Raised when a substitution needs the inverse of a non-unit."""


# symbol table
_names: list = []
_ids: Dict[str, int] = {}
_involutive: set = set()


def var_id(name: str, involutive: bool = False) -> int:
    """Return the id for ``name``, registering it on first use."""
    vid = _ids.get(name)
    if vid is None:
        vid = len(_names)
        _names.append(name)
        _ids[name] = vid
        if involutive:
            _involutive.add(vid)
    elif involutive != (vid in _involutive):
        raise ValueError(f"variable {name!r} already registered with other involutive flag")
    return vid


def var_name(vid: int) -> str:
    return _names[vid]


def is_involutive(vid: int) -> bool:
    return vid in _involutive


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        ne = d.get(v, 0) + e
        if v in _involutive:
            ne &= 1
        if ne:
            d[v] = ne
        else:
            d.pop(v, None)
    return tuple(sorted(d.items()))


def _mono_inv(m: Monomial) -> Monomial:
    return tuple((v, e if v in _involutive else -e) for v, e in m)


def _mono_pow(m: Monomial, k: int) -> Monomial:
    out = []
    for v, e in m:
        ne = e * k
        if v in _involutive:
            ne &= 1
        if ne:
            out.append((v, ne))
    return tuple(out)


def _clean(terms: Dict[Monomial, int]) -> Dict[Monomial, int]:
    return {m: c for m, c in terms.items() if c}


class LaurentPoly:
    """Immutable sparse Laurent polynomial with integer coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None, _trusted: bool = False):
        if terms is None:
            self.terms: Dict[Monomial, int] = {}
        elif _trusted:
            self.terms = terms  # type: ignore[assignment]
        else:
            self.terms = _clean(dict(terms))
        self._hash = None

    # construction
    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({(): c} if c else {}, _trusted=True)

    @classmethod
    def monomial(cls, mono: Mapping[int, int] | Iterable[Tuple[int, int]], c: int = 1) -> "LaurentPoly":
        items = mono.items() if isinstance(mono, Mapping) else mono
        m: Monomial = ()
        for v, e in items:
            m = _mono_mul(m, ((v, e),))
        return cls({m: c} if c else {}, _trusted=True)

    @classmethod
    def var(cls, name: str, involutive: bool = False) -> "LaurentPoly":
        return cls({((var_id(name, involutive), 1),): 1}, _trusted=True)

    # predicates
    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_unit(self) -> bool:
        """True for +-1 times a monomial."""
        if len(self.terms) != 1:
            return False
        (m, c), = self.terms.items()
        return c in (1, -1)

    def constant_value(self):
        """The integer value if constant, else None."""
        if not self.terms:
            return 0
        if len(self.terms) == 1 and () in self.terms:
            return self.terms[()]
        return None

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    # ring operations
    def __add__(self, other):
        other = _coerce(other)
        if len(self.terms) < len(other.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out = dict(a)
        for m, c in b.items():
            nc = out.get(m, 0) + c
            if nc:
                out[m] = nc
            else:
                out.pop(m, None)
        return LaurentPoly(out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({m: -c for m, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return ZERO
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (mb, cb), = b.items()
            if not mb:
                return LaurentPoly({m: c * cb for m, c in a.items()}, _trusted=True)
            return LaurentPoly({_mono_mul(m, mb): c * cb for m, c in a.items()}, _trusted=False)
        out: Dict[Monomial, int] = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = _mono_mul(ma, mb)
                out[m] = get(m, 0) + ca * cb
        return LaurentPoly(_clean(out), _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise NotAUnit("negative power of a non-monomial")
            (m, c), = self.terms.items()
            if c not in (1, -1):
                raise NotAUnit("negative power of a non-unit coefficient")
            return LaurentPoly({_mono_pow(m, k): c ** (-k)}, _trusted=True)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({to_str(self)})"

    def __str__(self):
        return to_str(self)


def _coerce(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.const(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)


def var(name: str, involutive: bool = False) -> LaurentPoly:
    return LaurentPoly.var(name, involutive)


def const(c: int) -> LaurentPoly:
    return LaurentPoly.const(c)


def add(p, q) -> LaurentPoly:
    return _coerce(p) + _coerce(q)


def mul(p, q) -> LaurentPoly:
    return _coerce(p) * _coerce(q)


def prod(factors: Iterable) -> LaurentPoly:
    out = ONE
    for f in factors:
        out = out * f
    return out


# exact division

def _div_by_term(p: LaurentPoly, mq: Monomial, cq: int) -> LaurentPoly:
    inv = _mono_inv(mq)
    out = {}
    for m, c in p.terms.items():
        qc, rem = divmod(c, cq)
        if rem:
            raise NotDivisible(f"coefficient {c} not divisible by {cq}")
        out[_mono_mul(m, inv)] = qc
    return LaurentPoly(out, _trusted=True)


def _min_shift(terms: Mapping[Monomial, int]) -> Dict[int, int]:
    """Per-variable minimum exponent over all terms (absent counts as 0)."""
    lo: Dict[int, int] = {}
    seen: Dict[int, int] = {}
    for m in terms:
        for v, e in m:
            seen[v] = seen.get(v, 0) + 1
            if e < lo.get(v, e + 1):
                lo[v] = e
    n = len(terms)
    out = {}
    for v, e in lo.items():
        if seen[v] < n:
            e = min(e, 0)
        if e:
            out[v] = e
    return out


def _poly_div_dense(p: Dict[Monomial, int], q: Dict[Monomial, int]) -> Dict[Monomial, int]:
    """Exact division of honest polynomials (nonnegative exponents, no involutive vars)."""
    vs = sorted({v for m in itertools.chain(p, q) for v, _ in m})
    pos = {v: i for i, v in enumerate(vs)}
    n = len(vs)

    def dense(m):
        e = [0] * n
        for v, x in m:
            e[pos[v]] = x
        return tuple(e)

    def key(e):
        # max-heap on graded lex via negation
        return (-sum(e), tuple(-x for x in e))

    rem: Dict[tuple, int] = {dense(m): c for m, c in p.items()}
    qd = [(dense(m), c) for m, c in q.items()]
    lq, lc = min(qd, key=lambda t: key(t[0]))
    heap = [key(e) for e in rem]
    heapq.heapify(heap)
    quot: Dict[tuple, int] = {}
    while heap:
        k = heapq.heappop(heap)
        e = tuple(-x for x in k[1])
        c = rem.get(e, 0)
        if not c:
            continue
        shift = tuple(a - b for a, b in zip(e, lq))
        if min(shift, default=0) < 0:
            raise NotDivisible("leading term not divisible")
        qc, r = divmod(c, lc)
        if r:
            raise NotDivisible("leading coefficient not divisible")
        quot[shift] = qc
        for eq_, cq in qd:
            t = tuple(a + b for a, b in zip(shift, eq_))
            nc = rem.get(t, 0) - qc * cq
            if nc:
                if t not in rem or rem[t] == 0:
                    heapq.heappush(heap, key(t))
                rem[t] = nc
            else:
                rem.pop(t, None)
    out = {}
    for e, c in quot.items():
        out[tuple((vs[i], x) for i, x in enumerate(e) if x)] = c
    return out


def _div_domain(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    # division in Z[x^{+-1}] with no involutive variables
    lp = _min_shift(p.terms)
    lq = _min_shift(q.terms)
    sp = tuple(sorted((v, -e) for v, e in lp.items()))
    sq = tuple(sorted((v, -e) for v, e in lq.items()))
    pp = {_mono_mul(m, sp): c for m, c in p.terms.items()}
    qq = {_mono_mul(m, sq): c for m, c in q.terms.items()}
    r = _poly_div_dense(pp, qq)
    back = _mono_mul(_mono_inv(sp), sq)
    return LaurentPoly({_mono_mul(m, back): c for m, c in r.items()}, _trusted=True)


def _specialize_signs(p: LaurentPoly, signs: Mapping[int, int]) -> LaurentPoly:
    out: Dict[Monomial, int] = {}
    for m, c in p.terms.items():
        nm = []
        for v, e in m:
            if v in signs:
                if e & 1 and signs[v] < 0:
                    c = -c
            else:
                nm.append((v, e))
        t = tuple(nm)
        out[t] = out.get(t, 0) + c
    return LaurentPoly(_clean(out), _trusted=True)


def exact_div(p, q) -> LaurentPoly:
    """Return ``r`` with ``r * q == p`` or raise :class:`NotDivisible`."""
    p, q = _coerce(p), _coerce(q)
    if q.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if p.is_zero():
        return ZERO
    if len(q.terms) == 1:
        (mq, cq), = q.terms.items()
        if not any(v in _involutive for v, _ in mq):
            return _div_by_term(p, mq, cq)
    signs = sorted(v for v in p.variables() | q.variables() if v in _involutive)
    if not signs:
        return _div_domain(p, q)
    # Z[s]/(s^2-1) is not a domain: divide in each sign specialization and
    # recombine with the idempotents (1 +- s)/2.
    k = len(signs)
    acc: Dict[Monomial, int] = {}
    for choice in itertools.product((1, -1), repeat=k):
        sg = dict(zip(signs, choice))
        ps, qs = _specialize_signs(p, sg), _specialize_signs(q, sg)
        if qs.is_zero():
            raise NotDivisible("divisor vanishes under a sign specialization")
        rs = ZERO if ps.is_zero() else _div_domain(ps, qs)
        for sub in itertools.product((0, 1), repeat=k):
            sgn = 1
            smono = []
            for v, bit, s in zip(signs, sub, choice):
                if bit:
                    smono.append((v, 1))
                    sgn *= s
            smono_t = tuple(smono)
            for m, c in rs.terms.items():
                t = _mono_mul(m, smono_t)
                acc[t] = acc.get(t, 0) + sgn * c
    den = 1 << k
    out = {}
    for m, c in acc.items():
        if c:
            qc, r = divmod(c, den)
            if r:
                raise NotDivisible("sign recombination not integral")
            out[m] = qc
    res = LaurentPoly(out, _trusted=True)
    if res * q != p:
        raise NotDivisible("recombined quotient does not divide exactly")
    return res


def divides(p, q) -> bool:
    try:
        exact_div(p, q)
    except NotDivisible:
        return False
    return True


def substitute(p: LaurentPoly, bindings: Mapping[Union[int, str], LaurentPoly]) -> LaurentPoly:
    """Apply the ring map sending each bound variable to its image."""
    b: Dict[int, LaurentPoly] = {}
    for k, v in bindings.items():
        b[_ids[k] if isinstance(k, str) else k] = _coerce(v)
    cache: Dict[Tuple[int, int], LaurentPoly] = {}

    def power(v, e):
        key = (v, e)
        if key not in cache:
            img = b[v]
            if e < 0 and not img.is_unit():
                raise NotAUnit(f"negative power of non-unit binding for {var_name(v)}")
            cache[key] = img ** e
        return cache[key]

    out = ZERO
    for m, c in p.terms.items():
        rest = []
        term = LaurentPoly.const(c)
        for v, e in m:
            if v in b:
                term = term * power(v, e)
            else:
                rest.append((v, e))
        if rest:
            term = term * LaurentPoly({tuple(rest): 1}, _trusted=True)
        out = out + term
    return out


def rename(p: LaurentPoly, mapping: Mapping[int, int]) -> LaurentPoly:
    """Relabel variables (a monomial substitution)."""
    out: Dict[Monomial, int] = {}
    for m, c in p.terms.items():
        nm: Monomial = ()
        for v, e in m:
            nm = _mono_mul(nm, ((mapping.get(v, v), e),))
        out[nm] = out.get(nm, 0) + c
    return LaurentPoly(_clean(out), _trusted=True)


def to_str(p: LaurentPoly) -> str:
    if not p.terms:
        return "0"
    parts = []
    for m, c in sorted(p.terms.items(), key=lambda t: _sort_key_named(t[0])):
        mono = "*".join(var_name(v) if e == 1 else f"{var_name(v)}^{e}" for v, e in sorted(m, key=lambda t: var_name(t[0])))
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts).replace("+ -", "- ")


def _sort_key_named(m: Monomial):
    return tuple(sorted((var_name(v), e) for v, e in m))


# canonical serialization

def to_json_obj(p: LaurentPoly) -> dict:
    names = sorted({var_name(v) for m in p.terms for v, _ in m})
    idx = {n: i for i, n in enumerate(names)}
    terms = []
    for m, c in p.terms.items():
        e = sorted((idx[var_name(v)], x) for v, x in m)
        terms.append((e, c))
    terms.sort(key=lambda t: (t[0], t[1]))
    obj = {
        "vars": names,
        "terms": [{"e": {str(i): x for i, x in e}, "c": str(c)} for e, c in terms],
    }
    inv = [n for n in names if _ids[n] in _involutive]
    if inv:
        obj["involutive"] = inv
    return obj


def from_json_obj(obj: Mapping) -> LaurentPoly:
    inv = set(obj.get("involutive", []))
    ids = [var_id(n, n in inv) for n in obj["vars"]]
    out: Dict[Monomial, int] = {}
    for t in obj["terms"]:
        m: Monomial = ()
        for k, x in t["e"].items():
            m = _mono_mul(m, ((ids[int(k)], int(x)),))
        out[m] = out.get(m, 0) + int(t["c"])
    return LaurentPoly(_clean(out), _trusted=True)


def serialize(p: LaurentPoly) -> str:
    return json.dumps(to_json_obj(p), separators=(",", ":"))


def parse(s: str) -> LaurentPoly:
    return from_json_obj(json.loads(s))
