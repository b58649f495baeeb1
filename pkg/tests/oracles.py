"""Independent reference computations used by the tests.

Symbolic checks go through sympy; the nilradical oracle uses the
definition (ad-nilpotent elements) instead of the trace-form algorithm.
"""

import itertools

import sympy

from lievec._rational import Q
from lievec.coeffring import COS
from lievec.liealg import Ideal, bracket_subspaces
from lievec.nilrad import adjoint_matrices, ad_of, is_nilpotent_matrix


def symbols(n):
    return sympy.symbols(f"s0:{n}")


def to_sympy(f, xs=None):
    xs = xs or symbols(f.n)
    total = sympy.Integer(0)
    for (alpha, lam, kind, mu), c in f.terms:
        term = sympy.Rational(int(c.numerator), int(c.denominator))
        for x, a in zip(xs, alpha):
            term *= x**a
        lin = sum(sympy.Rational(int(v.numerator), int(v.denominator)) * x for v, x in zip(lam, xs))
        term *= sympy.exp(lin)
        if kind != 0:
            arg = sum(sympy.Rational(int(v.numerator), int(v.denominator)) * x for v, x in zip(mu, xs))
            term *= sympy.cos(arg) if kind == COS else sympy.sin(arg)
        total += term
    return total


def sym_equal(a, b):
    """Equality of two sympy expressions after rewriting trig as exponentials."""
    d = sympy.expand(sympy.simplify((a - b).rewrite(sympy.exp)))
    return d == 0


def sym_bracket(X, Y, xs):
    n = len(xs)
    return [
        sum(X[i] * sympy.diff(Y[j], xs[i]) - Y[i] * sympy.diff(X[j], xs[i]) for i in range(n))
        for j in range(n)
    ]


def taylor(expr, xs, order):
    """Coefficients ``{alpha: Q}`` of the total-degree Taylor polynomial at 0."""
    t = sympy.Symbol("t_scale")
    scaled = expr.subs({x: t * x for x in xs}, simultaneous=True)
    ser = sympy.series(scaled, t, 0, order + 1).removeO()
    poly = sympy.Poly(sympy.expand(ser.subs(t, 1)), *xs)
    out = {}
    for mon, c in poly.terms():
        c = sympy.Rational(c)
        if c:
            out[tuple(mon)] = Q(int(c.p), int(c.q))
    return out


def nilradical_by_sampling(L):
    """Span of ad-nilpotent elements among small integer combinations.

    For a solvable algebra the ad-nilpotent elements form the nilradical,
    which contains ``[L, L]``. Candidates are the basis, a basis of
    ``[L, L]`` and pairwise combinations with coefficients in
    ``{1, -1, 2, 1/2, -1/2}``.
    """
    d = L.dim
    w = adjoint_matrices(L)
    derived = bracket_subspaces(L.whole(), L.whole())
    cands = [{i: Q(1)} for i in range(d)] + list(derived.rows)
    for i, j in itertools.combinations(range(d), 2):
        for c in (Q(1), Q(-1), Q(2), Q(1, 2), Q(-1, 2)):
            cands.append({i: Q(1), j: c})
    nil = [v for v in cands if is_nilpotent_matrix(ad_of(w, v), d)]
    return Ideal(L, nil)


def is_nilpotent_subspace(N):
    cur = N
    for _ in range(N.parent.dim + 1):
        if not cur.dim:
            return True
        cur = bracket_subspaces(N, cur)
    return not cur.dim
