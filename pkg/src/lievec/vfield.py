"""Vector fields with exponential-polynomial coefficients."""

import re

from ._rational import q
from .coeffring import ExpPolyCoeff
from .errors import ContextMismatch

_NAME = re.compile(r"^[A-Za-z][A-Za-z0-9]*$")
RESERVED = {"exp", "sin", "cos"}


class VarContext:
    """Ordered coordinate names ``(x^1, ..., x^n)``."""

    __slots__ = ("names",)

    def __init__(self, names):
        names = tuple(names)
        if not names:
            raise ValueError("a variable context needs at least one name")
        for nm in names:
            if not _NAME.match(nm) or nm in RESERVED or nm.startswith("d_"):
                raise ValueError(f"invalid variable name {nm!r}")
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct")
        self.names = names

    @property
    def n(self):
        return len(self.names)

    def index(self, name):
        return self.names.index(name)

    def __eq__(self, other):
        return isinstance(other, VarContext) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"VarContext({list(self.names)})"

    def var(self, name):
        return ExpPolyCoeff.var(self.n, self.index(name))


class VectorField:
    """``X = sum_j X^j d_{x^j}`` with canonical coefficients."""

    __slots__ = ("ctx", "components", "_hash")

    def __init__(self, ctx, components):
        components = tuple(components)
        if len(components) != ctx.n:
            raise ContextMismatch(f"expected {ctx.n} components, got {len(components)}")
        for c in components:
            if c.n != ctx.n:
                raise ContextMismatch("component arity does not match the context")
        self.ctx = ctx
        self.components = components
        self._hash = None

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, [ExpPolyCoeff.zero(ctx.n)] * ctx.n)

    @classmethod
    def coordinate(cls, ctx, j, coeff=None):
        """``coeff * d_{x^j}`` (``coeff`` defaults to 1)."""
        n = ctx.n
        if coeff is None:
            coeff = ExpPolyCoeff.const(n, 1)
        comps = [ExpPolyCoeff.zero(n)] * n
        comps[j] = coeff
        return cls(ctx, comps)

    def _same(self, other):
        if not isinstance(other, VectorField) or other.ctx != self.ctx:
            raise ContextMismatch("vector fields live in different contexts")

    def __eq__(self, other):
        return isinstance(other, VectorField) and self.ctx == other.ctx and self.components == other.components

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, self.components))
        return self._hash

    def __bool__(self):
        return any(self.components)

    def __add__(self, other):
        self._same(other)
        return VectorField(self.ctx, [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other):
        self._same(other)
        return VectorField(self.ctx, [a - b for a, b in zip(self.components, other.components)])

    def __neg__(self):
        return VectorField(self.ctx, [-a for a in self.components])

    def scale(self, s):
        s = q(s)
        return VectorField(self.ctx, [a.scale(s) for a in self.components])

    def __mul__(self, s):
        if isinstance(s, ExpPolyCoeff):
            return VectorField(self.ctx, [s * a for a in self.components])
        return self.scale(s)

    __rmul__ = __mul__

    def __call__(self, f):
        return apply_derivation(self, f)

    def __repr__(self):
        from .textio import format_field

        return f"VectorField({format_field(self)!r})"

    def __str__(self):
        from .textio import format_field

        return format_field(self)

    def eval_origin(self):
        return [c.eval_origin() for c in self.components]

    def coordinate_vector(self):
        """Sparse vector keyed by ``(component, term key)`` for span computations."""
        return {(j, k): v for j, c in enumerate(self.components) for k, v in c.terms}

    def is_polynomial(self):
        return all(c.is_polynomial() for c in self.components)


def bracket(X, Y):
    """``[X, Y]^j = X(Y^j) - Y(X^j)``."""
    X._same(Y)
    n = X.ctx.n
    dX = [[None] * n for _ in range(n)]
    out = []
    for j in range(n):
        total = ExpPolyCoeff.zero(n)
        for i in range(n):
            xi, yi = X.components[i], Y.components[i]
            if xi and Y.components[j]:
                total = total + xi * Y.components[j].partial(i)
            if yi and X.components[j]:
                if dX[j][i] is None:
                    dX[j][i] = X.components[j].partial(i)
                total = total - yi * dX[j][i]
        out.append(total)
    return VectorField(X.ctx, out)


def apply_derivation(X, f):
    """``X(f) = sum_j X^j d_j f``."""
    if f.n != X.ctx.n:
        raise ContextMismatch("function and field have different variable counts")
    total = ExpPolyCoeff.zero(f.n)
    for j, c in enumerate(X.components):
        if c:
            d = f.partial(j)
            if d:
                total = total + c * d
    return total


def eval_origin(X):
    return X.eval_origin()


def linear_change(X, P, Pinv):
    """Express ``X`` in coordinates ``xi`` with ``x = P xi``.

    The new components are ``Pinv @ X(P xi)``.
    """
    n = X.ctx.n
    subs = [c.linear_substitute(P) for c in X.components]
    comps = []
    for i in range(n):
        total = ExpPolyCoeff.zero(n)
        for j in range(n):
            if Pinv[i][j] and subs[j]:
                total = total + subs[j].scale(Pinv[i][j])
        comps.append(total)
    return comps


def random_field(rng, ctx, max_terms=3, **kw):
    from .coeffring import random_element

    return VectorField(ctx, [random_element(rng, ctx.n, max_terms=max_terms, **kw) for _ in range(ctx.n)])
