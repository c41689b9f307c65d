"""Independent reference computations built on sympy, used only by the tests."""

from __future__ import annotations

from itertools import product

import sympy as sp

from tsyslab import laurent as L


def to_sympy(p: L.LaurentPoly):
    """Plain sympy expression; involutive variables are not reduced."""
    out = sp.Integer(0)
    for mono, c in p.terms.items():
        term = sp.Integer(c)
        for v, e in mono:
            term *= sp.Symbol(L.var_name(v)) ** e
        out += term
    return out


def same(p: L.LaurentPoly, expr) -> bool:
    return sp.simplify(to_sympy(p) - expr) == 0


def type_a_evolution(r: int, level: int, steps: int, prefix: str = "T"):
    """Rational-function evolution of the unit-boundary A_r system from slices 0 and 1.

    Returns {(a, m, n): expr} for 0 <= n <= steps, matching the slab names
    used by ``slab_initial``.
    """
    vals = {}

    def get(a, m, n):
        if a in (0, r + 1) or m in (0, level):
            return sp.Integer(1)
        return vals[(a, m, n)]

    for a in range(1, r + 1):
        for m in range(1, level):
            for n in (0, 1):
                vals[(a, m, n)] = sp.Symbol(f"{prefix}.a{a}.m{m}.u{n}")
    for n in range(1, steps):
        for a in range(1, r + 1):
            for m in range(1, level):
                rhs = get(a, m - 1, n) * get(a, m + 1, n) + get(a - 1, m, n) * get(a + 1, m, n)
                vals[(a, m, n + 1)] = sp.cancel(rhs / get(a, m, n - 1))
    return vals


def positive_roots(cartan):
    """Positive roots in the simple-root basis, by closure under simple reflections."""
    r = len(cartan)
    simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        new = []
        for beta in frontier:
            for i in range(r):
                # s_i beta = beta - <beta, alpha_i^vee> alpha_i
                pairing = sum(beta[j] * cartan[i][j] for j in range(r))
                img = list(beta)
                img[i] -= pairing
                img = tuple(img)
                if all(x >= 0 for x in img) and any(img) and img not in roots:
                    roots.add(img)
                    new.append(img)
        frontier = new
    return roots


def coxeter_and_dual(cartan, t_a):
    """(h, h^vee) from the root count and the highest root's comarks."""
    roots = positive_roots(cartan)
    r = len(cartan)
    h = 2 * len(roots) // r
    theta = max(roots, key=sum)
    hdual = 1 + sum(sp.Rational(theta[i], t_a[i + 1]) for i in range(r))
    return h, int(hdual)


def schur_rectangle(n: int, a: int, m: int, xs):
    """s_{(m^a)}(x_1..x_n) by the Jacobi-Trudi determinant in complete symmetric functions."""
    def h(k):
        if k < 0:
            return sp.Integer(0)
        return sum(sp.prod(c) for c in _multisets(xs, k))
    M = sp.Matrix(a, a, lambda i, j: h(m - i + j))
    return sp.expand(M.det())


def _multisets(xs, k):
    if k == 0:
        yield ()
        return
    for combo in product(range(len(xs)), repeat=k):
        if list(combo) == sorted(combo):
            yield tuple(xs[i] for i in combo)


def elementary(xs, k):
    return sum(sp.prod(c) for c in _subsets(xs, k))


def _subsets(xs, k):
    from itertools import combinations
    return combinations(xs, k)
