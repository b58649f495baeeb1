"""Dilations, weight vector fields and degree gradings of vector fields.

A dilation assigns non-negative integer weights ``w_i`` to the coordinates.
With ``E`` an exp/trig factor in zero-weight variables only, the field
``x^alpha E d_i`` is homogeneous of degree ``<w, alpha> - w_i``; that is, it
satisfies ``[nabla, X] = deg * X`` for the weight field
``nabla = sum w_i x^i d_i``.
"""

import random
from dataclasses import dataclass, field

from ._rational import q
from .coeffring import ExpPolyCoeff
from .errors import DegreeOutOfRange, NotGradable
from .liealg import LieAlgebraVF, bracket_closure
from .vfield import VarContext, VectorField


class Dilation:
    """Non-negative integer weights on a variable context."""

    def __init__(self, ctx, weights):
        if not isinstance(ctx, VarContext):
            ctx = VarContext(ctx)
        weights = tuple(int(w) for w in weights)
        if len(weights) != ctx.n:
            raise ValueError(f"expected {ctx.n} weights, got {len(weights)}")
        if any(w < 0 for w in weights):
            raise ValueError("weights must be non-negative")
        self.ctx = ctx
        self.weights = weights

    @property
    def degree(self):
        """``w(h) = max w_i``."""
        return max(self.weights)

    @property
    def zero_vars(self):
        return [i for i, w in enumerate(self.weights) if w == 0]

    @property
    def positive_vars(self):
        return [i for i, w in enumerate(self.weights) if w > 0]

    def __eq__(self, other):
        return isinstance(other, Dilation) and self.ctx == other.ctx and self.weights == other.weights

    def __repr__(self):
        return f"Dilation({self.as_text()})"

    def as_text(self):
        return ", ".join(f"{nm}:{w}" for nm, w in zip(self.ctx.names, self.weights))

    def as_dict(self):
        return dict(zip(self.ctx.names, self.weights))


def weight_field(h):
    """``nabla^h = sum_i w_i x^i d_i``."""
    n = h.ctx.n
    comps = [ExpPolyCoeff.var(n, i).scale(w) if w else ExpPolyCoeff.zero(n) for i, w in enumerate(h.weights)]
    return VectorField(h.ctx, comps)


def term_degree(alpha, j, weights):
    return sum(w * a for w, a in zip(weights, alpha)) - weights[j]


@dataclass
class GradedDecomposition:
    parts: dict = field(default_factory=dict)  # degree -> VectorField

    @property
    def degrees(self):
        return sorted(self.parts)

    @property
    def max_degree(self):
        return max(self.parts) if self.parts else None

    @property
    def min_degree(self):
        return min(self.parts) if self.parts else None

    def total(self, ctx):
        out = VectorField.zero(ctx)
        for d in sorted(self.parts):
            out = out + self.parts[d]
        return out


def degree_decompose(X, h):
    """Split ``X`` into homogeneous parts; NotGradable if a frequency touches a weighted variable."""
    if X.ctx != h.ctx:
        raise ValueError("field and dilation use different contexts")
    n = X.ctx.n
    weights = h.weights
    buckets = {}
    for j, comp in enumerate(X.components):
        for key, c in comp.terms:
            alpha, lam, kind, mu = key
            for i in range(n):
                if weights[i] and (lam[i] or mu[i]):
                    raise NotGradable(f"{X} has an exp/trig frequency in weighted variable {X.ctx.names[i]}")
            d = term_degree(alpha, j, weights)
            buckets.setdefault(d, [dict() for _ in range(n)])[j][key] = c
    parts = {
        d: VectorField(X.ctx, [ExpPolyCoeff.from_dict(n, comp) for comp in comps]) for d, comps in buckets.items()
    }
    return GradedDecomposition(parts)


@dataclass
class MembershipReport:
    mode: str
    ok: bool
    entries: list  # (label, degrees, max degree)

    def degree_table(self):
        return {label: mx for label, _degs, mx in self.entries}

    def to_json(self):
        return {
            "mode": self.mode,
            "ok": self.ok,
            "elements": [{"field": label, "degrees": degs, "maxDegree": mx} for label, degs, mx in self.entries],
        }


def membership(obj, h, mode="nonPos"):
    """Check ``max degree <= 0`` (``nonPos``) or ``< 0`` (``strictNeg``) for each field."""
    if mode not in ("nonPos", "strictNeg"):
        raise ValueError("mode must be 'nonPos' or 'strictNeg'")
    if isinstance(obj, LieAlgebraVF):
        fields = obj.basis
    elif isinstance(obj, VectorField):
        fields = [obj]
    else:
        fields = list(obj)
    bound = 0 if mode == "nonPos" else -1
    entries = []
    ok = True
    for X in fields:
        dec = degree_decompose(X, h)
        mx = dec.max_degree
        if mx is not None and mx > bound:
            ok = False
        entries.append((str(X), dec.degrees, mx))
    return MembershipReport(mode, ok, entries)


def _weighted_monomials(weights, support, target):
    """Exponent vectors on ``support`` with ``sum w_i a_i == target`` (lex-descending)."""
    n = len(weights)
    out = []

    def rec(pos, remaining, alpha):
        if pos == len(support):
            if remaining == 0:
                out.append(tuple(alpha))
            return
        i = support[pos]
        w = weights[i]
        for a in range(remaining // w, -1, -1):
            alpha[i] = a
            rec(pos + 1, remaining - a * w, alpha)
        alpha[i] = 0

    if target >= 0:
        rec(0, target, [0] * n)
    return out


@dataclass
class GradedGenerators:
    degree: int
    fields: list
    module: bool  # True when the list generates a module over functions of zero-weight variables
    module_vars: list


def enumerate_graded(h, a):
    """Monomial fields ``x^alpha d_i`` of degree ``a < 0``, alpha on weighted variables."""
    if a >= 0:
        raise DegreeOutOfRange(f"only negative degrees are enumerated, got {a}")
    if a < -h.degree:
        raise DegreeOutOfRange(f"degree {a} is below -w(h) = {-h.degree}")
    n = h.ctx.n
    pos = h.positive_vars
    fields = []
    for i in pos:
        for alpha in _weighted_monomials(h.weights, pos, a + h.weights[i]):
            fields.append(VectorField.coordinate(h.ctx, i, ExpPolyCoeff.monomial(n, alpha)))
    zero = h.zero_vars
    return GradedGenerators(a, fields, bool(zero), [h.ctx.names[i] for i in zero])


def negative_part(h):
    """All monomial generators of degrees ``-1, ..., -w(h)``."""
    out = []
    for a in range(-1, -h.degree - 1, -1):
        out.extend(enumerate_graded(h, a).fields)
    return out


def _coefficient_pool(n, j):
    e = [0] * n
    e[j] = 1
    m = [0] * n
    m[j] = -1
    return [
        ExpPolyCoeff.const(n, 1),
        ExpPolyCoeff.var(n, j),
        ExpPolyCoeff.exp(n, e),
        ExpPolyCoeff.exp(n, m),
        ExpPolyCoeff.cos(n, e),
        ExpPolyCoeff.sin(n, e),
    ]


def random_solvable(h, seed, density=q(1, 2), diagonal_density=q(1, 2), transitive=True, module_coeffs=True, cap=None):
    """Random dilational solvable algebra ``D + N``.

    ``D`` is a random subset of the diagonal fields ``x^i d_i`` (weighted
    ``i``) together with ``d_j`` for every zero-weight ``j``; ``N`` is the
    closure of a random subset of the negative-degree monomial generators,
    each multiplied (when zero-weight variables exist and ``module_coeffs``)
    by a random function from ``{1, x, e^x, e^-x, cos x, sin x}`` of one
    zero-weight variable. With ``transitive`` every ``d_i`` is kept. The
    output is deterministic per ``seed``.
    """
    if not h.positive_vars:
        raise ValueError("need at least one positive weight")
    rng = random.Random(seed)
    n = h.ctx.n
    ctx = h.ctx
    gens = []
    for i in h.positive_vars:
        if rng.random() < float(diagonal_density):
            gens.append(VectorField.coordinate(ctx, i, ExpPolyCoeff.var(n, i)))
    for j in h.zero_vars:
        gens.append(VectorField.coordinate(ctx, j))
    for X in negative_part(h):
        j = next(i for i, c in enumerate(X.components) if c)
        forced = transitive and X.components[j] == ExpPolyCoeff.const(n, 1)
        if not forced and rng.random() >= float(density):
            continue
        if h.zero_vars and module_coeffs and not forced:
            z = rng.choice(h.zero_vars)
            X = X * rng.choice(_coefficient_pool(n, z))
        gens.append(X)
    return bracket_closure(gens, cap=cap, ctx=ctx)


__all__ = [
    "Dilation",
    "weight_field",
    "degree_decompose",
    "GradedDecomposition",
    "membership",
    "MembershipReport",
    "enumerate_graded",
    "GradedGenerators",
    "negative_part",
    "random_solvable",
    "term_degree",
]
