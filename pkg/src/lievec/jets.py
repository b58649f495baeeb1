"""Truncated power series (jets) at the origin.

Every jet carries the order up to which its coefficients are known. The
operations propagate that order honestly: differentiating loses one order,
products and compositions keep the smaller one. A field pushed forward by a
jet map of order ``N`` is therefore known to order ``N - 1``.
"""

from math import factorial

from ._rational import ONE, ZERO, Q, q, qstr
from .coeffring import COS, NONE
from .errors import ContextMismatch, NotClosedForm, SingularJetMap
from .linalg import inverse


def _deg(alpha):
    return sum(alpha)


class JetFunction:
    """Polynomial in ``n`` variables known up to total degree ``order``."""

    __slots__ = ("n", "order", "coeffs")

    def __init__(self, n, order, coeffs=None):
        self.n = n
        self.order = order
        out = {}
        if coeffs:
            for alpha, c in coeffs.items():
                alpha = tuple(alpha)
                if len(alpha) != n:
                    raise ContextMismatch("exponent length does not match the jet arity")
                if c and _deg(alpha) <= order:
                    out[alpha] = Q(c)
        self.coeffs = out

    @classmethod
    def zero(cls, n, order):
        return cls(n, order)

    @classmethod
    def const(cls, n, order, c):
        return cls(n, order, {(0,) * n: q(c)})

    @classmethod
    def var(cls, n, order, i, c=ONE):
        alpha = [0] * n
        alpha[i] = 1
        return cls(n, order, {tuple(alpha): q(c)})

    @classmethod
    def linear_form(cls, n, order, vec):
        """``sum vec_i x^i``."""
        out = {}
        for i, c in enumerate(vec):
            if c:
                alpha = [0] * n
                alpha[i] = 1
                out[tuple(alpha)] = q(c)
        return cls(n, order, out)

    def _check(self, other):
        if not isinstance(other, JetFunction) or other.n != self.n:
            raise ContextMismatch("jets have different arities")

    def __eq__(self, other):
        return isinstance(other, JetFunction) and self.n == other.n and self.coeffs == other.coeffs and self.order == other.order

    def __hash__(self):
        return hash((self.n, self.order, frozenset(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"JetFunction(order={self.order}, {self.format()})"

    def format(self, names=None):
        if not self.coeffs:
            return "0"
        names = names or [f"x{i}" for i in range(self.n)]
        parts = []
        for alpha in sorted(self.coeffs, key=lambda a: (_deg(a), tuple(-x for x in a))):
            c = self.coeffs[alpha]
            mono = "*".join(nm if e == 1 else f"{nm}^{e}" for nm, e in zip(names, alpha) if e)
            if not mono:
                parts.append(qstr(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{qstr(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def truncate(self, order):
        return JetFunction(self.n, min(order, self.order), self.coeffs)

    def with_order(self, order):
        """Same coefficients, truncated or declared known to ``order``."""
        return JetFunction(self.n, order, self.coeffs)

    def homogeneous(self, k):
        return {a: c for a, c in self.coeffs.items() if _deg(a) == k}

    def constant(self):
        return self.coeffs.get((0,) * self.n, ZERO)

    def linear_part(self):
        row = [ZERO] * self.n
        for a, c in self.coeffs.items():
            if _deg(a) == 1:
                row[a.index(1)] = c
        return row

    def agrees(self, other, order):
        """Equal coefficients in every degree ``<= order``."""
        self._check(other)
        a = {k: v for k, v in self.coeffs.items() if _deg(k) <= order}
        b = {k: v for k, v in other.coeffs.items() if _deg(k) <= order}
        return a == b

    def __add__(self, other):
        self._check(other)
        order = min(self.order, other.order)
        out = dict(self.coeffs)
        for a, c in other.coeffs.items():
            s = out.get(a, ZERO) + c
            if s:
                out[a] = s
            else:
                out.pop(a, None)
        return JetFunction(self.n, order, out)

    def __neg__(self):
        return JetFunction(self.n, self.order, {a: -c for a, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        s = q(s)
        if not s:
            return JetFunction(self.n, self.order)
        return JetFunction(self.n, self.order, {a: c * s for a, c in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, JetFunction):
            return self.scale(other)
        self._check(other)
        order = _product_order(self, other)
        out = {}
        items_b = [(b, _deg(b), c) for b, c in other.coeffs.items()]
        for a, ca in self.coeffs.items():
            da = _deg(a)
            for b, db, cb in items_b:
                if da + db > order:
                    continue
                key = tuple(x + y for x, y in zip(a, b))
                s = out.get(key, ZERO) + ca * cb
                if s:
                    out[key] = s
                else:
                    del out[key]
        return JetFunction(self.n, order, out)

    __rmul__ = __mul__

    def partial(self, i):
        out = {}
        for a, c in self.coeffs.items():
            if a[i]:
                b = list(a)
                b[i] -= 1
                out[tuple(b)] = c * a[i]
        return JetFunction(self.n, self.order - 1, out)

    def to_json(self):
        return {
            "order": self.order,
            "coeffs": [
                {"alpha": list(a), "coef": qstr(self.coeffs[a])}
                for a in sorted(self.coeffs, key=lambda a: (_deg(a), tuple(-x for x in a)))
            ],
        }

    @classmethod
    def from_json(cls, n, data):
        return cls(n, data["order"], {tuple(e["alpha"]): q(e["coef"]) for e in data["coeffs"]})


def _min_degree(f):
    return min((_deg(a) for a in f.coeffs), default=None)


def _product_order(f, g):
    """Order to which ``f * g`` is known: an unknown tail of ``f`` is multiplied by the lowest term of ``g``."""
    lf, lg = _min_degree(f), _min_degree(g)
    cands = []
    cands.append(f.order + (lg if lg is not None else g.order + 1))
    cands.append(g.order + (lf if lf is not None else f.order + 1))
    return min(cands)


def _power(f, k, cache):
    if k in cache:
        return cache[k]
    p = _power(f, k - 1, cache) * f
    cache[k] = p
    return p


def _exp_series(L, order):
    """``exp(L)`` for a linear jet ``L``."""
    n = L.n
    total = JetFunction.const(n, order, 1)
    cache = {1: L}
    for k in range(1, order + 1):
        total = total + _power(L, k, cache).scale(Q(1, factorial(k)))
    return total


def _trig_series(M, order, kind):
    n = M.n
    total = JetFunction.zero(n, order)
    cache = {1: M}
    start = 0 if kind == COS else 1
    sign = 1
    for k in range(start, order + 1, 2):
        term = JetFunction.const(n, order, 1) if k == 0 else _power(M, k, cache)
        total = total + term.scale(Q(sign, factorial(k)))
        sign = -sign
    return total


def _truncate_coeff(f, order):
    n = f.n
    total = JetFunction.zero(n, order)
    for (alpha, lam, kind, mu), c in f.terms:
        rest = order - _deg(alpha)
        if rest < 0:
            continue
        part = JetFunction(n, order, {alpha: c})
        if any(lam):
            part = part * _exp_series(JetFunction.linear_form(n, rest, lam), rest).with_order(order)
        if kind != NONE:
            part = part * _trig_series(JetFunction.linear_form(n, rest, mu), rest, kind).with_order(order)
        total = total + part.with_order(order)
    return total.with_order(order)


class JetField:
    """Vector field with jet components, ``sum_j X^j d_j``."""

    __slots__ = ("n", "components")

    def __init__(self, components):
        components = tuple(components)
        if not components:
            raise ValueError("a jet field needs at least one component")
        n = components[0].n
        if len(components) != n or any(c.n != n for c in components):
            raise ContextMismatch("jet field components must match the arity")
        self.n = n
        self.components = components

    @property
    def order(self):
        return min(c.order for c in self.components)

    @classmethod
    def coordinate(cls, n, order, j):
        comps = [JetFunction.zero(n, order) for _ in range(n)]
        comps[j] = JetFunction.const(n, order, 1)
        return cls(comps)

    def __eq__(self, other):
        return isinstance(other, JetField) and self.components == other.components

    def __repr__(self):
        return "JetField(" + ", ".join(c.format() for c in self.components) + ")"

    def __add__(self, other):
        return JetField([a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other):
        return JetField([a - b for a, b in zip(self.components, other.components)])

    def scale(self, s):
        return JetField([a.scale(s) for a in self.components])

    def truncate(self, order):
        return JetField([c.truncate(order) for c in self.components])

    def agrees(self, other, order):
        return all(a.agrees(b, order) for a, b in zip(self.components, other.components))

    def __call__(self, f):
        return apply_field(self, f)

    def to_json(self):
        return [c.to_json() for c in self.components]


def truncate(obj, order):
    """Taylor jet at the origin of an :class:`ExpPolyCoeff` or a vector field."""
    if order < 0:
        raise ValueError("jet order must be non-negative")
    if hasattr(obj, "components"):
        return JetField([_truncate_coeff(c, order) for c in obj.components])
    return _truncate_coeff(obj, order)


def apply_field(X, f):
    """``X(f) = sum_j X^j d_j f``."""
    n = f.n
    total = None
    for j, c in enumerate(X.components):
        term = c * f.partial(j)
        total = term if total is None else total + term
    return total if total is not None else JetFunction.zero(n, f.order)


def jet_bracket(X, Y):
    """``[X, Y]^j = X(Y^j) - Y(X^j)``."""
    return JetField([apply_field(X, yj) - apply_field(Y, xj) for xj, yj in zip(X.components, Y.components)])


class JetMap:
    """Origin-preserving map ``x -> (m^1(x), ..., m^n(x))``."""

    __slots__ = ("components",)

    def __init__(self, components):
        components = tuple(components)
        n = components[0].n
        if len(components) != n or any(c.n != n for c in components):
            raise ContextMismatch("jet map must have n components in n variables")
        for c in components:
            if c.constant():
                raise ValueError("jet maps must preserve the origin")
        self.components = components

    @property
    def n(self):
        return len(self.components)

    @property
    def order(self):
        return min(c.order for c in self.components)

    @classmethod
    def identity(cls, n, order):
        return cls([JetFunction.var(n, order, i) for i in range(n)])

    @classmethod
    def linear(cls, matrix, order):
        n = len(matrix)
        return cls([JetFunction.linear_form(n, order, row) for row in matrix])

    def linear_matrix(self):
        return [c.linear_part() for c in self.components]

    def __eq__(self, other):
        return isinstance(other, JetMap) and self.components == other.components

    def __repr__(self):
        return "JetMap(" + ", ".join(c.format() for c in self.components) + ")"

    def agrees(self, other, order):
        return all(a.agrees(b, order) for a, b in zip(self.components, other.components))

    def to_json(self):
        return [c.to_json() for c in self.components]


def compose(f, m):
    """``f o m`` for an origin-preserving jet map ``m``."""
    if isinstance(f, JetMap):
        return JetMap([compose(c, m) for c in f.components])
    if f.n != m.n:
        raise ContextMismatch("jet and map have different arities")
    n = m.n
    order = min(f.order, m.order)
    caches = [{1: c.truncate(order)} for c in m.components]
    total = JetFunction.zero(n, order)
    for alpha, c in f.coeffs.items():
        term = JetFunction.const(n, order, c)
        for i, e in enumerate(alpha):
            if e:
                term = term * _power(caches[i][1], e, caches[i])
        total = total + term.with_order(order)
    return total.with_order(order)


def invert(m):
    """``m^{-1}`` with ``m o m^{-1} = id`` to the order of ``m``."""
    n = m.n
    order = m.order
    A = m.linear_matrix()
    Ainv = inverse(A)
    if Ainv is None:
        raise SingularJetMap("linear part of the jet map is singular")
    nonlinear = [
        JetFunction(n, order, {a: c for a, c in comp.coeffs.items() if _deg(a) >= 2}) for comp in m.components
    ]
    ident = [JetFunction.var(n, order, i) for i in range(n)]
    g = JetMap([JetFunction.linear_form(n, order, row) for row in Ainv])
    for _ in range(order):
        hg = [compose(h, g) for h in nonlinear]
        rhs = [ident[i] - hg[i] for i in range(n)]
        comps = []
        for i in range(n):
            acc = JetFunction.zero(n, order)
            for j in range(n):
                if Ainv[i][j]:
                    acc = acc + rhs[j].scale(Ainv[i][j])
            comps.append(acc.with_order(order))
        g = JetMap(comps)
    return g


def jacobian(m):
    return [[c.partial(j) for j in range(m.n)] for c in m.components]


def pushforward(X, m, minv=None):
    """``m_* X = (Dm . X) o m^{-1}``, known to order ``N - 1``."""
    if minv is None:
        minv = invert(m)
    n = m.n
    D = jacobian(m)
    comps = []
    for i in range(n):
        acc = None
        for j in range(n):
            t = D[i][j] * X.components[j]
            acc = t if acc is None else acc + t
        comps.append(compose(acc, minv))
    return JetField(comps)


def lie_series(Y, f, M):
    """Coefficients of ``exp(tY) f = sum_k t^k / k! Y^k f`` for ``k <= M``."""
    out = [f]
    cur = f
    for k in range(1, M + 1):
        cur = apply_field(Y, cur)
        out.append(cur.scale(Q(1, factorial(k))))
    return out


class JetForm:
    """1-form ``sum a_i dx^i`` with jet coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = tuple(coeffs)
        n = coeffs[0].n
        if len(coeffs) != n or any(c.n != n for c in coeffs):
            raise ContextMismatch("jet form must have n coefficients in n variables")
        self.coeffs = coeffs

    @property
    def n(self):
        return len(self.coeffs)

    @property
    def order(self):
        return min(c.order for c in self.coeffs)

    def __repr__(self):
        return "JetForm(" + ", ".join(c.format() for c in self.coeffs) + ")"

    def agrees(self, other, order):
        return all(a.agrees(b, order) for a, b in zip(self.coeffs, other.coeffs))


def differential(f):
    return JetForm([f.partial(i) for i in range(f.n)])


def is_closed(w):
    """``d_i a_j == d_j a_i`` for all ``i < j`` to the known order."""
    n = w.n
    for i in range(n):
        for j in range(i + 1, n):
            diff = w.coeffs[j].partial(i) - w.coeffs[i].partial(j)
            if diff:
                return False
    return True


def integrate_closed(w):
    """The jet ``y`` with ``dy = w`` and ``y(0) = 0``.

    The degree ``k`` part is ``(1/k) sum_i x^i a_i^{(k-1)}``, which inverts
    ``d`` on closed forms.
    """
    if not is_closed(w):
        raise NotClosedForm("1-form is not closed")
    n = w.n
    order = w.order + 1
    out = {}
    for i, a in enumerate(w.coeffs):
        for alpha, c in a.coeffs.items():
            if _deg(alpha) > w.order:
                continue
            beta = list(alpha)
            beta[i] += 1
            beta = tuple(beta)
            s = out.get(beta, ZERO) + c / _deg(beta)
            if s:
                out[beta] = s
            else:
                out.pop(beta, None)
    return JetFunction(n, order, out)


def random_jet_map(rng, n, order, max_terms=3, coefs=(-2, -1, 1, 2, Q(1, 2))):
    """Invertible jet map with random triangular-free linear part and random higher terms."""
    while True:
        A = [[q(rng.choice((0, 0) + tuple(coefs))) for _ in range(n)] for _ in range(n)]
        if inverse(A) is not None:
            break
    comps = []
    for i in range(n):
        c = {}
        for j in range(n):
            if A[i][j]:
                e = [0] * n
                e[j] = 1
                c[tuple(e)] = A[i][j]
        for _ in range(rng.randint(0, max_terms)):
            d = rng.randint(2, max(2, order))
            alpha = [0] * n
            for _ in range(d):
                alpha[rng.randrange(n)] += 1
            c[tuple(alpha)] = c.get(tuple(alpha), ZERO) + q(rng.choice(coefs))
        comps.append(JetFunction(n, order, c))
    return JetMap(comps)


def random_jet_field(rng, n, order, max_terms=3, coefs=(-2, -1, 1, 2, Q(1, 2))):
    comps = []
    for _ in range(n):
        c = {}
        for _ in range(rng.randint(0, max_terms)):
            d = rng.randint(0, order)
            alpha = [0] * n
            for _ in range(d):
                alpha[rng.randrange(n)] += 1
            c[tuple(alpha)] = c.get(tuple(alpha), ZERO) + q(rng.choice(coefs))
        comps.append(JetFunction(n, order, c))
    return JetField(comps)


__all__ = [
    "JetFunction",
    "JetField",
    "JetMap",
    "JetForm",
    "truncate",
    "compose",
    "invert",
    "jacobian",
    "pushforward",
    "lie_series",
    "apply_field",
    "jet_bracket",
    "differential",
    "is_closed",
    "integrate_closed",
    "random_jet_map",
    "random_jet_field",
]
