"""Closed-form level-2 solutions of types A, D and B in the initial variables.

The formulas are transcribed case by case.  Indices outside the stated
ranges raise ``IndexOutOfRange``; they are never extrapolated.  For type B
times are numerators n = 2u.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from . import laurent as L
from .dynkin import data_for
from .laurent import LaurentPoly, exact_div
from .report import Report
from .tsys import ClassFiltered, TSystem, init_preset, mixing_factors, solve


class IndexOutOfRange(IndexError):
    pass


class BadParity(ValueError):
    pass


def _need(cond: bool, what: str):
    if not cond:
        raise IndexOutOfRange(what)


@dataclass(frozen=True)
class InitVars:
    """Initial variables x_1..x_{rank_x} (with x_0 = 1, x_{-1} = 0) plus named extras.

    ``bar`` swaps x_i with xb_i, ``hat`` swaps w1 with w3; both are
    variable renamings of the Laurent ring.
    """
    r: int
    xs: Tuple[str, ...]
    xbs: Tuple[str, ...] = ()
    ws: Tuple[str, ...] = ()

    def x(self, i: int) -> LaurentPoly:
        if i == -1:
            return L.ZERO
        if i == 0:
            return L.ONE
        _need(1 <= i <= len(self.xs), f"x_{i}")
        return L.var(self.xs[i - 1])

    def xinv(self, i: int) -> LaurentPoly:
        _need(0 <= i <= len(self.xs), f"1/x_{i}")
        return L.ONE if i == 0 else L.var(self.xs[i - 1]) ** -1

    def w(self, i: int) -> LaurentPoly:
        return L.var(self.ws[i - 1])

    def bar(self) -> "InitVars":
        return InitVars(self.r, self.xbs, self.xs, self.ws)

    def hat_map(self) -> Dict[int, int]:
        w1, w3 = L.var_id(self.ws[0]), L.var_id(self.ws[2])
        return {w1: w3, w3: w1}

    def hat(self, p: LaurentPoly) -> LaurentPoly:
        return L.rename(p, self.hat_map())

    def bar_of(self, p: LaurentPoly) -> LaurentPoly:
        mp = {}
        for a, b in zip(self.xs, self.xbs):
            ia, ib = L.var_id(a), L.var_id(b)
            mp[ia], mp[ib] = ib, ia
        return L.rename(p, mp)

    def all_names(self) -> Tuple[str, ...]:
        return self.xs + self.xbs + self.ws


def init_vars(family: str, r: int, prefix: str = "x") -> InitVars:
    if family in "AD":
        return InitVars(r, tuple(f"{prefix}{a}" for a in range(1, r + 1)))
    if family == "B":
        return InitVars(r, tuple(f"{prefix}{a}" for a in range(1, r)),
                        tuple(f"{prefix}b{a}" for a in range(1, r)), ("w1", "w2", "w3"))
    raise ValueError(f"no closed form for family {family}")


# gamma and nu

def gamma(X: InitVars, j: int, n: int) -> LaurentPoly:
    """1/x_n + sum_{i=n}^{j-2} x_{n-1}/(x_i x_{i+1}); zero when n = j."""
    _need(0 <= n <= j, f"gamma^({j})_{n}")
    if n == j:
        return L.ZERO
    out = X.xinv(n)
    xn1 = X.x(n - 1)
    for i in range(n, j - 1):
        out = out + xn1 * X.xinv(i) * X.xinv(i + 1)
    return out


def nu(X: InitVars, j: int, n: int) -> LaurentPoly:
    _need(0 <= n <= j, f"nu^({j})_{n}")
    return X.x(n - 1) * X.xinv(j - 1)


# type A

def tau_A(a: int, u: int, X: InitVars) -> LaurentPoly:
    r = X.r
    _need(1 <= a <= r, f"node {a}")
    if (a + u) % 2 == 0:
        raise BadParity(f"a+u must be odd, got {(a, u)}")
    k = ((u - (a - 1)) // 2) % (r + 3)
    if k <= r - a:
        return gamma(X, a + k, k) * X.x(a + k) + nu(X, a + k, k)
    if k == r - a + 1:
        n = r + 1 - a
        return gamma(X, r, n) + nu(X, r, n) * (L.ONE + X.x(r - 1)) * X.xinv(r)
    if k <= r + 1:
        n = a + k - (r + 2)
        return gamma(X, k - 1, n) * X.x(k - 1) + nu(X, k - 1, n)
    return gamma(X, r, a) + nu(X, r, a) * (L.ONE + X.x(r - 1)) * X.xinv(r)


# type D

def _alpha(X, n):
    return gamma(X, X.r - 1, n)


def _beta(X, n):
    return nu(X, X.r - 1, n)


def _check_jn(X, j, n):
    r = X.r
    _need(0 <= j <= r - 2 and 0 <= n <= r - 1 - j, f"(j, n) = {(j, n)}")


def Gamma(X: InitVars, j: int, n: int) -> LaurentPoly:
    _check_jn(X, j, n)
    return _alpha(X, j) * _alpha(X, j + n)


def Pi(X: InitVars, j: int, n: int) -> LaurentPoly:
    _check_jn(X, j, n)
    b1 = _beta(X, 1)
    return _alpha(X, j) * _beta(X, j + n) + exact_div(_beta(X, j) * _alpha(X, j + n) * (2 + b1), b1)


def Omega(X: InitVars, j: int, n: int) -> LaurentPoly:
    _check_jn(X, j, n)
    b1 = _beta(X, 1)
    return exact_div(_beta(X, j) * _beta(X, j + n) * (1 + b1) ** 2, b1 ** 2)


def _d_z(X):
    return X.x(X.r - 1) * X.x(X.r)


def _omega_D(r: int, a: int) -> int:
    if r % 2 == 1 and a in (r - 1, r):
        return 2 * r - 1 - a
    return a


def tau_D(a: int, u: int, X: InitVars) -> LaurentPoly:
    r = X.r
    _need(1 <= a <= r, f"node {a}")
    base = a - 1 if a < r else r - 2
    if (u - base) % 2:
        raise BadParity(f"bad parity for D at {(a, u)}")
    q, k = divmod((u - base) // 2, r)
    b = a
    if q % 2:
        b = _omega_D(r, a)
    return _tau_D_fund(b, k, X)


def _tau_D_fund(a: int, k: int, X: InitVars) -> LaurentPoly:
    r = X.r
    z = _d_z(X)
    if a <= r - 2:
        if k <= r - a - 2:
            return gamma(X, a + k, k) * X.x(a + k) + nu(X, a + k, k)
        j, n = a + k - r + 1, r - a - 1
        return Gamma(X, j, n) * z + Pi(X, j, n) + Omega(X, j, n) * z ** -1
    b1 = _beta(X, 1)
    num = _alpha(X, k) * z + exact_div(_beta(X, k) * (1 + b1), b1)
    odd = k % 2 == 1
    den_r = (a == r - 1) != odd  # a = r-1: x_r for even k; a = r: x_r for odd k
    return num * (X.xinv(r) if den_r else X.xinv(r - 1))


# type B

def _bz(X):
    return X.w(1) * X.w(3)


def mu_B(X: InitVars, n: int) -> LaurentPoly:
    _need(0 <= n <= X.r, f"mu_{n}")
    return X.x(n - 1) * X.xinv(X.r - 1)


def delta_B(X: InitVars, n: int) -> LaurentPoly:
    r = X.r
    _need(0 <= n <= r, f"delta_{n}")
    if n == r:
        return L.ZERO
    return _alpha(X, n) + _beta(X, n) * X.xinv(r - 1)


def _s(X):
    """xbar_{r-1}/z + 1/x_{r-1}."""
    r = X.r
    return X.bar().x(r - 1) * _bz(X) ** -1 + X.xinv(r - 1)


def _split(k_index: int):
    return divmod(k_index, 2)


def _check_pqr(r, j, kk):
    k, odd = _split(kk)
    _need(0 <= j <= r and 0 <= k <= r, f"(j, k) = {(j, kk)}")
    if odd:
        _need(0 <= j + k <= r, f"(j, k) = {(j, kk)}")
    else:
        _need(1 <= j + k <= r + 1, f"(j, k) = {(j, kk)}")
    return k, odd


def P_B(X: InitVars, j: int, kk: int) -> LaurentPoly:
    k, odd = _check_pqr(X.r, j, kk)
    Xb = X.bar()
    if odd:
        return delta_B(Xb, k) * delta_B(X, j + k)
    return X.x(k - 1) * _bz(X) ** -1 * delta_B(Xb, j - 1 + k)


def Q_B(X: InitVars, j: int, kk: int) -> LaurentPoly:
    r = X.r
    k, odd = _check_pqr(r, j, kk)
    Xb = X.bar()
    z = _bz(X)
    if odd:
        return z * delta_B(X, j + k) * mu_B(Xb, k) + delta_B(Xb, k) * mu_B(X, j + k)
    return (X.x(k - 1) * mu_B(Xb, j + k - 1)
            + delta_B(Xb, j + k - 1) * Xb.x(r - 1) * (delta_B(X, k) + 2 * X.x(k - 1) * z ** -1))


def R_B(X: InitVars, j: int, kk: int) -> LaurentPoly:
    r = X.r
    k, odd = _check_pqr(r, j, kk)
    Xb = X.bar()
    if odd:
        return _bz(X) * X.x(j - 1 + k) * mu_B(Xb, k) * _s(X)
    return delta_B(Xb, j - 1 + k) * X.x(k - 1) * Xb.x(r - 1) * _s(X)


def eta_B(X: InitVars, kk: int) -> LaurentPoly:
    k, odd = _split(kk)
    r = X.r
    if odd:
        _need(0 <= k <= r - 1, f"eta_{kk}")
        return delta_B(X.bar(), k) * X.w(1) ** -1
    _need(0 <= k <= r, f"eta_{kk}")
    return X.w(1) * delta_B(X, k) + X.x(k - 1) * X.w(3) ** -1


def xi_B(X: InitVars, kk: int) -> LaurentPoly:
    k, odd = _split(kk)
    r = X.r
    Xb = X.bar()
    if odd:
        _need(0 <= k <= r - 1, f"xi_{kk}")
        return X.w(1) ** -1 * (Xb.x(r - 1) * delta_B(Xb, k) + _bz(X) * mu_B(Xb, k))
    _need(0 <= k <= r, f"xi_{kk}")
    return X.w(1) * X.x(k - 1) * _s(X)


def _pqr_combo(X, j, kk):
    w2 = X.w(2)
    return P_B(X, j, kk) * w2 + Q_B(X, j, kk) + R_B(X, j, kk) * w2 ** -1


def tau_B(a: int, m: int, n: int, X: InitVars) -> LaurentPoly:
    """tau^{(a)}_m(u), u = n/2, subject to Condition (P)."""
    r = X.r
    _need(1 <= a <= r, f"node {a}")
    _need(1 <= m <= (3 if a == r else 1), f"index m={m} at node {a}")
    half = a == r and m in (1, 3)
    if (n % 2 == 1) != half:
        raise BadParity(f"Condition (P) fails at {(a, m, n)}")
    P = 2 * r + 1
    if a < r:
        q, j = divmod(n // 2 - (a - 1), P)
        v = _tau_B_low(a, j, X)
    elif m == 2:
        q, k = divmod(n // 2 - (r - 1), P)
        v = _pqr_combo(X, 0, k + 1)
    else:
        # u = r - 3/2 + j, j = 0..2r
        q, j = divmod((n - (2 * r - 3)) // 2, P)
        k, odd = divmod(j, 2)
        if odd:
            v = eta_B(X, 2 * k + 1) * X.w(2) + xi_B(X, 2 * k + 1)
        else:
            v = eta_B(X, 2 * k) + xi_B(X, 2 * k) * X.w(2) ** -1
        if m == 3:
            v = X.hat(v)
    return X.hat(v) if q % 2 else v


def _tau_B_low(a: int, j: int, X: InitVars) -> LaurentPoly:
    r = X.r
    if j <= 2 * (r - a) - 1:
        k, odd = divmod(j, 2)
        Y = X.bar() if odd else X
        return gamma(Y, a + k, k) * Y.x(a + k) + nu(Y, a + k, k)
    k = j - 2 * (r - a) + 1
    return _pqr_combo(X, r - a, k)


# verification

def _zero_report(report: Report, name: str, items: Iterable[Tuple[object, Callable[[], LaurentPoly]]]):
    cnt, bad, skipped = 0, [], 0
    for label, f in items:
        try:
            v = f()
        except IndexOutOfRange:
            skipped += 1
            continue
        cnt += 1
        if not v.is_zero():
            bad.append(label)
    detail = f"{skipped} instances need out-of-range indices and are not evaluated" if skipped else ""
    if cnt == 0 and skipped:
        report.skip(name, detail)
        return
    report.add(name, cnt > 0 and not bad, cnt, bad[:5] or None, detail)


def verify_support_lemmas(family: str, r: int, report: Optional[Report] = None) -> Report:
    report = report or Report(f"support lemmas {family}{r}")
    X = init_vars(family, r)
    jmax = r if family == "A" else r - 1
    x = X.x
    _zero_report(report, "x_{n-1} gamma_{n-1} = 1 + x_{n-2} gamma_n", [
        ((j, n), lambda j=j, n=n: x(n - 1) * gamma(X, j, n - 1) - 1 - x(n - 2) * gamma(X, j, n))
        for j in range(1, jmax + 1) for n in range(1, j + 1)])
    _zero_report(report, "x_{j-1} gamma^{(j)}_{n-1} = x_{j-1} gamma^{(j-1)}_{n-1} + nu^{(j-1)}_{n-1}", [
        ((j, n), lambda j=j, n=n: x(j - 1) * gamma(X, j, n - 1) - x(j - 1) * gamma(X, j - 1, n - 1)
         - nu(X, j - 1, n - 1))
        for j in range(1, jmax + 1) for n in range(1, j + 1)])
    if family == "D":
        b1 = _beta(X, 1)
        _zero_report(report, "alpha_n beta_{n+1} - alpha_{n+1} beta_n = beta_1", [
            (n, lambda n=n: _alpha(X, n) * _beta(X, n + 1) - _alpha(X, n + 1) * _beta(X, n) - b1)
            for n in range(0, r - 1)])
        jn = [(j, n) for j in range(0, r - 2) for n in range(1, r - 1 - j)]
        _zero_report(report, "Gamma Omega bilinear identity", [
            ((j, n), lambda j=j, n=n: Gamma(X, j, n) * Omega(X, j + 1, n) + Gamma(X, j + 1, n) * Omega(X, j, n)
             - Gamma(X, j, n + 1) * Omega(X, j + 1, n - 1) - Gamma(X, j + 1, n - 1) * Omega(X, j, n + 1)
             - (b1 + 1) ** 2) for j, n in jn])
        _zero_report(report, "Pi bilinear identity", [
            ((j, n), lambda j=j, n=n: Pi(X, j, n) * Pi(X, j + 1, n) - Pi(X, j, n + 1) * Pi(X, j + 1, n - 1)
             + b1 * (2 + b1)) for j, n in jn])
        _zero_report(report, "Gamma_0 = alpha^2, Pi_0 = 2 alpha beta (1+beta_1)/beta_1", [
            (j, lambda j=j: (Gamma(X, j, 0) - _alpha(X, j) ** 2)
             + (Pi(X, j, 0) - exact_div(2 * _alpha(X, j) * _beta(X, j) * (1 + b1), b1)))
            for j in range(0, r - 1)])
        _zero_report(report, "Omega_0 = beta^2 ((1+beta_1)/beta_1)^2", [
            (j, lambda j=j: Omega(X, j, 0) - exact_div(_beta(X, j) ** 2 * (1 + b1) ** 2, b1 ** 2))
            for j in range(0, r - 1)])
    if family == "B":
        _verify_b_lemmas(X, report)
    return report


def _verify_b_lemmas(X: InitVars, report: Report):
    r = X.r
    Xb = X.bar()
    z = _bz(X)
    P, Q, R = (lambda j, k: P_B(X, j, k)), (lambda j, k: Q_B(X, j, k)), (lambda j, k: R_B(X, j, k))
    m1 = mu_B(X, 1) * mu_B(Xb, 1)
    _zero_report(report, "Q_1 = R_1 = P_{2r+1} = Q_{2r+1} = 0, P_1 = 1 at j = 0", [
        ("Q1", lambda: Q(0, 1)), ("R1", lambda: R(0, 1)), ("P2r+1", lambda: P(0, 2 * r + 1)),
        ("Q2r+1", lambda: Q(0, 2 * r + 1)), ("P1", lambda: P(0, 1) - 1)])
    items = []
    for k in range(1, r + 1):
        for Y, tag in ((X, ""), (Xb, "bar")):
            items.append(((tag, "mu", k), lambda k=k, Y=Y: mu_B(Y, k - 1) * Y.x(k - 1) - mu_B(Y, k) * Y.x(k - 2)))
            items.append(((tag, "delta", k),
                          lambda k=k, Y=Y: delta_B(Y, k - 1) * Y.x(k - 1) - delta_B(Y, k) * Y.x(k - 2) - 1))
    _zero_report(report, "mu and delta three-term identities", items)

    jk = [(j, k) for j in range(1, r) for k in range(0, 2 * r - 1) if 1 <= j + k // 2 <= r]
    _zero_report(report, "QR block identity", [
        (p, lambda j=p[0], k=p[1]: Q(j, k) * R(j, k + 2) + Q(j, k + 2) * R(j, k)
         - Q(j - 1, k + 2) * R(j + 1, k) - Q(j + 1, k) * R(j - 1, k + 2)) for p in jk])
    _zero_report(report, "QP block identity", [
        (p, lambda j=p[0], k=p[1]: Q(j, k) * P(j, k + 2) + Q(j, k + 2) * P(j, k)
         - Q(j - 1, k + 2) * P(j + 1, k) - Q(j + 1, k) * P(j - 1, k + 2)) for p in jk])
    _zero_report(report, "QQ block identity", [
        (p, lambda j=p[0], k=p[1]: Q(j, k) * Q(j, k + 2) - Q(j - 1, k + 2) * Q(j + 1, k)
         - (-z * m1 if k % 2 else L.ONE)) for p in jk])
    _zero_report(report, "PR block identity", [
        (p, lambda j=p[0], k=p[1]: P(j, k) * R(j, k + 2) + P(j, k + 2) * R(j, k)
         - P(j - 1, k + 2) * R(j + 1, k) - P(j + 1, k) * R(j - 1, k + 2)
         - (1 + z * m1 if k % 2 else L.ZERO)) for p in jk])

    eta = lambda k: eta_B(X, k)
    xi = lambda k: xi_B(X, k)
    mixed = lambda k: xi(k) * X.hat(eta(k)) + X.hat(xi(k)) * eta(k)
    ks = range(1, 2 * r + 1)
    _zero_report(report, "QR boundary identity", [
        (k, lambda k=k: Q(0, k) * R(0, k + 1) + Q(0, k + 1) * R(0, k) - Q(1, k) * R(1, k - 1)
         - Q(1, k - 1) * R(1, k) - (L.ZERO if k % 2 else mixed(k))) for k in ks])
    _zero_report(report, "QP boundary identity", [
        (k, lambda k=k: Q(0, k) * P(0, k + 1) + Q(0, k + 1) * P(0, k) - Q(1, k) * P(1, k - 1)
         - Q(1, k - 1) * P(1, k) - (mixed(k) if k % 2 else L.ZERO)) for k in ks])
    # the quadratic Q term pairs indices k and k-1 at j = 1, like the other two lines
    _zero_report(report, "PR + QQ boundary identity", [
        (k, lambda k=k: P(0, k) * R(0, k + 1) + P(0, k + 1) * R(0, k) - P(1, k) * R(1, k - 1)
         - P(1, k - 1) * R(1, k) + Q(0, k) * Q(0, k + 1) - Q(1, k) * Q(1, k - 1)
         - (xi(k) * X.hat(xi(k)) if k % 2 else eta(k) * X.hat(eta(k)))) for k in ks])


def tau_function(family: str, r: int, X: Optional[InitVars] = None) -> Callable:
    """tau as a function of the lattice key (a, m, n) in T-system time units."""
    X = X or init_vars(family, r)
    if family == "A":
        return lambda a, m, n: tau_A(a, n, X)
    if family == "D":
        return lambda a, m, n: tau_D(a, n, X)
    if family == "B":
        return lambda a, m, n: tau_B(a, m, n, X)
    raise ValueError(family)


def _tau_value(family, r, tau, a, m, n):
    """tau with the level-2 boundary values: 1 at a = 0, m = 0 or m = 2 t_a."""
    if a == 0 or m == 0:
        return L.ONE
    top = 4 if (family == "B" and a == r) else 2
    if m == top:
        return L.ONE
    return tau(a, m, n)


def _system_and_class(family: str, r: int):
    S = TSystem(f"{family}{r}", 2)
    _, in_class, _ = init_preset(S)
    return S, in_class


def verify_tau_solves(family: str, r: int, report: Optional[Report] = None, periods: int = 1) -> Report:
    """tau satisfies the level-2 T-system and its half-periodicity, over a full period."""
    report = report or Report(f"tau {family}{r}")
    S, in_class = _system_and_class(family, r)
    X = init_vars(family, r)
    tau = tau_function(family, r, X)
    dd = S.dd
    H = (dd.hdual + 2) * dd.t
    cnt, bad = 0, []
    for a in dd.nodes:
        for m in S.m_range(a):
            s = S.step(a)
            for n in range(0, 2 * H * periods + 1):
                if not (in_class(("T", a, m, n - s)) and in_class(("T", a, m, n + s))):
                    continue
                tv = lambda b, mm, nn: _tau_value(family, r, tau, b, mm, nn)
                left = tv(a, m, n - s) * tv(a, m, n + s)
                right = tv(a, m - 1, n) * tv(a, m + 1, n) + L.prod(
                    tv(b, mm, nn) for b, mm, nn in mixing_factors(dd, a, m, n))
                cnt += 1
                if left != right:
                    bad.append((a, m, n))
    report.add(f"tau satisfies the level-2 T-system of {family}{r}", cnt > 0 and not bad, cnt, bad[:5] or None)

    cnt, bad = 0, []
    for k in S.points(0, 2 * H):
        _, a, m, n = k
        if not in_class(("T", a, m, n + H)):
            continue
        left = tau(a, m, n + H)
        if family == "A":
            right = tau(r + 1 - a, m, n)
        elif family == "D":
            right = tau(_omega_D(r, a), m, n)
        else:
            right = X.hat(tau(a, m, n))
        cnt += 1
        if left != right:
            bad.append((a, m, n))
    twist = {"A": "r+1-a", "D": "omega", "B": "hat"}[family]
    report.add(f"tau half-periodicity shift u+{dd.hdual + 2} ({twist})", cnt > 0 and not bad, cnt, bad[:5] or None)

    cnt, bad = 0, []
    for k in S.points(0, H):
        if not in_class(k):
            continue
        _, a, m, n = k
        cnt += 1
        if tau(a, m, n + 2 * H) != tau(a, m, n):
            bad.append((a, m, n))
    report.add(f"tau periodicity shift u+{2 * (dd.hdual + 2)}", cnt > 0 and not bad, cnt, bad[:5] or None)
    return report


def verify_tau_equals_evolution(family: str, r: int, report: Optional[Report] = None):
    """Direct evolution from the initial preset agrees with tau pointwise over a full period.

    Returns the report and the solution.
    """
    report = report or Report(f"tau vs evolution {family}{r}")
    S, in_class = _system_and_class(family, r)
    init, in_class, pts = init_preset(S)
    X = init_vars(family, r)
    tau = tau_function(family, r, X)
    dd = S.dd
    H = (dd.hdual + 2) * dd.t
    lo = min(k[3] for k in pts.values())
    sol = solve(ClassFiltered(S, in_class), init, (lo, lo + 2 * H + dd.t))
    cnt, bad = 0, []
    for k in S.points(lo, lo + 2 * H + dd.t):
        if not in_class(k):
            continue
        _, a, m, n = k
        cnt += 1
        if sol.get(k) != tau(a, m, n):
            bad.append(k)
    report.add(f"evolution equals tau on a full period ({family}{r})", cnt > 0 and not bad, cnt, bad[:5] or None)
    return report, sol
