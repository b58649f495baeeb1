"""Exponential-trigonometric polynomials with rational data.

An element is a finite sum of terms

    c * x^alpha * exp(<lam, x>) * T(<mu, x>),    T in {1, cos, sin},

kept in a canonical form: one term per key ``(alpha, lam, trig, mu)``, no
zero coefficients, ``mu`` nonzero and lexicographically positive whenever a
trig factor is present, terms sorted by key. Equality of canonical forms is
equality of functions, so the zero function is the empty term list.

Products reduce trig factors by the product-to-sum identities; derivatives
follow the Leibniz rule with ``exp' = lam_i exp``, ``cos' = -mu_i sin`` and
``sin' = mu_i cos``.
"""

from ._rational import ONE, ZERO, Q, q, qstr
from .errors import ArityMismatch

NONE, COS, SIN = 0, 1, 2
TRIG_NAMES = {COS: "cos", SIN: "sin"}


def _zeros(n):
    return (ZERO,) * n


def _is_zero(vec):
    return not any(vec)


def _lex_negative(vec):
    for v in vec:
        if v:
            return v < 0
    return False


def _vneg(vec):
    return tuple(-v for v in vec)


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _normalize_trig(coef, kind, mu):
    """Canonical (coef, kind, mu) or None when the term vanishes."""
    if kind == NONE:
        return coef, NONE, mu
    if _is_zero(mu):
        if kind == SIN:
            return None
        return coef, NONE, mu
    if _lex_negative(mu):
        mu = _vneg(mu)
        if kind == SIN:
            coef = -coef
    return coef, kind, mu


_HALF = Q(1, 2)


def _trig_product(k1, m1, k2, m2):
    """Expand T1(A) * T2(B) into a list of (factor, kind, freq)."""
    if k1 == NONE:
        return [(ONE, k2, m2)]
    if k2 == NONE:
        return [(ONE, k1, m1)]
    diff, tot = _vsub(m1, m2), _vadd(m1, m2)
    if k1 == COS and k2 == COS:
        return [(_HALF, COS, diff), (_HALF, COS, tot)]
    if k1 == SIN and k2 == SIN:
        return [(_HALF, COS, diff), (-_HALF, COS, tot)]
    if k1 == SIN and k2 == COS:
        return [(_HALF, SIN, tot), (_HALF, SIN, diff)]
    # cos A sin B
    return [(_HALF, SIN, tot), (-_HALF, SIN, diff)]


class ExpPolyCoeff:
    """Immutable canonical element of the ring in ``n`` variables.

    ``terms`` is a tuple of ``(key, coef)`` pairs sorted by ``key``; a key is
    ``(alpha, lam, trig, mu)`` with ``alpha`` a tuple of ints and ``lam``,
    ``mu`` tuples of rationals (``mu`` is all zeros when ``trig`` is none).
    """

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n, terms=()):
        self.n = n
        self.terms = tuple(terms)
        self._hash = None

    # -- construction -------------------------------------------------
    @classmethod
    def from_dict(cls, n, data):
        return cls(n, sorted((k, v) for k, v in data.items() if v))

    @classmethod
    def zero(cls, n):
        return cls(n, ())

    @classmethod
    def const(cls, n, c):
        c = q(c)
        if not c:
            return cls(n, ())
        z = _zeros(n)
        return cls(n, (((((0,) * n), z, NONE, z), c),))

    @classmethod
    def term(cls, n, coef=1, alpha=None, lam=None, trig=NONE, mu=None):
        """A single (normalized) term; ``trig`` is 'cos', 'sin', None or a code."""
        coef = q(coef)
        alpha = tuple(alpha) if alpha is not None else (0,) * n
        lam = tuple(q(x) for x in lam) if lam is not None else _zeros(n)
        mu = tuple(q(x) for x in mu) if mu is not None else _zeros(n)
        if isinstance(trig, str):
            trig = {"cos": COS, "sin": SIN}[trig]
        elif trig is None:
            trig = NONE
        if len(alpha) != n or len(lam) != n or len(mu) != n:
            raise ArityMismatch(f"term data must have length {n}")
        if any(a < 0 for a in alpha):
            raise ValueError("exponents must be non-negative")
        if trig == NONE:
            mu = _zeros(n)
        norm = _normalize_trig(coef, trig, mu)
        if norm is None or not norm[0]:
            return cls(n, ())
        coef, trig, mu = norm
        return cls(n, (((alpha, lam, trig, mu), coef),))

    @classmethod
    def var(cls, n, i):
        alpha = [0] * n
        alpha[i] = 1
        return cls.term(n, 1, alpha=alpha)

    @classmethod
    def monomial(cls, n, alpha, coef=1):
        return cls.term(n, coef, alpha=alpha)

    @classmethod
    def exp(cls, n, lam):
        return cls.term(n, 1, lam=lam)

    @classmethod
    def cos(cls, n, mu):
        return cls.term(n, 1, trig=COS, mu=mu)

    @classmethod
    def sin(cls, n, mu):
        return cls.term(n, 1, trig=SIN, mu=mu)

    # -- basic protocol -----------------------------------------------
    def __eq__(self, other):
        if isinstance(other, ExpPolyCoeff):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, Q)) or hasattr(other, "denominator"):
            return self == ExpPolyCoeff.const(self.n, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.terms))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        from .textio import format_coeff

        return f"ExpPolyCoeff({format_coeff(self, None)!r})"

    def as_dict(self):
        return dict(self.terms)

    def _check(self, other):
        if not isinstance(other, ExpPolyCoeff):
            other = ExpPolyCoeff.const(self.n, other)
        if other.n != self.n:
            raise ArityMismatch(f"variable counts differ: {self.n} vs {other.n}")
        return other

    # -- ring operations ------------------------------------------------
    def __add__(self, other):
        other = self._check(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for k, v in other.terms:
            s = out.get(k, ZERO) + v
            if s:
                out[k] = s
            else:
                del out[k]
        return ExpPolyCoeff.from_dict(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return ExpPolyCoeff(self.n, tuple((k, -v) for k, v in self.terms))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def scale(self, s):
        s = q(s)
        if not s:
            return ExpPolyCoeff(self.n, ())
        return ExpPolyCoeff(self.n, tuple((k, v * s) for k, v in self.terms))

    def __mul__(self, other):
        if not isinstance(other, ExpPolyCoeff):
            return self.scale(other)
        other = self._check(other)
        if not self.terms or not other.terms:
            return ExpPolyCoeff(self.n, ())
        out = {}
        for (a1, l1, k1, m1), c1 in self.terms:
            for (a2, l2, k2, m2), c2 in other.terms:
                alpha = tuple(x + y for x, y in zip(a1, a2))
                lam = _vadd(l1, l2)
                c = c1 * c2
                for f, kind, mu in _trig_product(k1, m1, k2, m2):
                    norm = _normalize_trig(c * f, kind, mu)
                    if norm is None:
                        continue
                    cc, kind, mu = norm
                    if kind == NONE:
                        mu = _zeros(self.n)
                    key = (alpha, lam, kind, mu)
                    s = out.get(key, ZERO) + cc
                    if s:
                        out[key] = s
                    else:
                        out.pop(key, None)
        return ExpPolyCoeff.from_dict(self.n, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("only natural powers are supported")
        result = ExpPolyCoeff.const(self.n, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- calculus -------------------------------------------------------
    def partial(self, i):
        """Exact partial derivative with respect to variable ``i``."""
        if not 0 <= i < self.n:
            raise IndexError(f"variable index {i} out of range for n={self.n}")
        out = {}

        def acc(key, c):
            s = out.get(key, ZERO) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)

        for (alpha, lam, kind, mu), c in self.terms:
            if alpha[i]:
                a2 = list(alpha)
                a2[i] -= 1
                acc((tuple(a2), lam, kind, mu), c * alpha[i])
            if lam[i]:
                acc((alpha, lam, kind, mu), c * lam[i])
            if kind == COS and mu[i]:
                acc((alpha, lam, SIN, mu), -c * mu[i])
            elif kind == SIN and mu[i]:
                acc((alpha, lam, COS, mu), c * mu[i])
        return ExpPolyCoeff.from_dict(self.n, out)

    def eval_origin(self):
        """Exact value at the origin."""
        total = ZERO
        for (alpha, _lam, kind, _mu), c in self.terms:
            if kind == SIN or any(alpha):
                continue
            total += c
        return total

    # -- structure queries ----------------------------------------------
    def is_polynomial(self):
        return all(_is_zero(lam) and kind == NONE for (_a, lam, kind, _m), _c in self.terms)

    def depends_on(self, i):
        for (alpha, lam, kind, mu), _c in self.terms:
            if alpha[i] or lam[i] or (kind != NONE and mu[i]):
                return True
        return False

    def frequency_support(self):
        """Variables touched by some exponential or trig frequency."""
        out = set()
        for (_alpha, lam, kind, mu), _c in self.terms:
            for j in range(self.n):
                if lam[j] or (kind != NONE and mu[j]):
                    out.add(j)
        return out

    def total_degree(self):
        return max((sum(a) for (a, _l, _k, _m), _c in self.terms), default=-1)

    # -- variable bookkeeping -------------------------------------------
    def restrict(self, keep):
        """Re-index onto the variables ``keep``; the element must not depend on the others."""
        keep = list(keep)
        drop = [j for j in range(self.n) if j not in keep]
        if any(self.depends_on(j) for j in drop):
            raise ValueError("element depends on a dropped variable")
        m = len(keep)
        out = {}
        for (alpha, lam, kind, mu), c in self.terms:
            key = (
                tuple(alpha[j] for j in keep),
                tuple(lam[j] for j in keep),
                kind,
                tuple(mu[j] for j in keep) if kind != NONE else _zeros(m),
            )
            out[key] = c
        return ExpPolyCoeff.from_dict(m, out)

    def linear_substitute(self, matrix):
        """Compose with the linear map ``x = matrix @ xi``.

        ``matrix`` is an n x m rational matrix; the result lives in ``m``
        variables. Frequencies transform by the transpose, monomials expand
        as products of linear forms, so the ring is closed under this.
        """
        n = self.n
        if len(matrix) != n:
            raise ArityMismatch("substitution matrix has wrong row count")
        m = len(matrix[0]) if n else 0
        mat = [[q(x) for x in row] for row in matrix]
        lin = []
        for j in range(n):
            f = ExpPolyCoeff.zero(m)
            for k in range(m):
                if mat[j][k]:
                    f = f + ExpPolyCoeff.var(m, k).scale(mat[j][k])
            lin.append(f)

        def tr(vec):
            return tuple(sum((vec[j] * mat[j][k] for j in range(n)), ZERO) for k in range(m))

        out = ExpPolyCoeff.zero(m)
        for (alpha, lam, kind, mu), c in self.terms:
            piece = ExpPolyCoeff.term(m, c, lam=tr(lam), trig=kind, mu=tr(mu) if kind != NONE else None)
            for j, a in enumerate(alpha):
                if a:
                    piece = piece * lin[j] ** a
            out = out + piece
        return out

    def substitute(self, images):
        """Compose a polynomial element with polynomial images of the variables."""
        if not self.is_polynomial():
            raise ValueError("nonlinear substitution requires a polynomial element")
        if len(images) != self.n:
            raise ArityMismatch("need one image per variable")
        m = images[0].n if images else 0
        out = ExpPolyCoeff.zero(m)
        cache = {}
        for (alpha, _l, _k, _m), c in self.terms:
            piece = ExpPolyCoeff.const(m, c)
            for j, a in enumerate(alpha):
                if a:
                    if (j, a) not in cache:
                        cache[(j, a)] = images[j] ** a
                    piece = piece * cache[(j, a)]
            out = out + piece
        return out

    # -- serialization ------------------------------------------------------
    def to_json(self):
        out = []
        for (alpha, lam, kind, mu), c in self.terms:
            item = {"coef": qstr(c), "alpha": list(alpha)}
            if any(lam):
                item["exp"] = [qstr(x) for x in lam]
            if kind != NONE:
                item["trig"] = TRIG_NAMES[kind]
                item["freq"] = [qstr(x) for x in mu]
            out.append(item)
        return out

    @classmethod
    def from_json(cls, n, data):
        out = cls.zero(n)
        for item in data:
            out = out + cls.term(
                n,
                q(item["coef"]),
                alpha=item["alpha"],
                lam=[q(x) for x in item.get("exp", [0] * n)],
                trig=item.get("trig"),
                mu=[q(x) for x in item["freq"]] if "freq" in item else None,
            )
        return out


def add(a, b):
    return a + b


def mul(a, b):
    return a * b


def partial(a, i):
    return a.partial(i)


def eval_origin(a):
    return a.eval_origin()


def coordinate_matrix(fs):
    """Union of term keys (canonical order) and the rational coefficient matrix.

    Row ``r`` holds the coefficients of ``fs[r]``; its rank is the dimension
    of the rational span of ``fs``.
    """
    fs = list(fs)
    if fs:
        n = fs[0].n
        for f in fs:
            if f.n != n:
                raise ArityMismatch("all elements must have the same variable count")
    keys = sorted({k for f in fs for k, _ in f.terms})
    index = {k: j for j, k in enumerate(keys)}
    matrix = []
    for f in fs:
        row = [ZERO] * len(keys)
        for k, c in f.terms:
            row[index[k]] = c
        matrix.append(row)
    return keys, matrix


def random_element(rng, n, max_terms=4, max_deg=2, freqs=(-1, 0, 1, 2), coefs=(-2, -1, 1, 2, Q(1, 2))):
    """Random element for property tests; ``rng`` is a ``random.Random``."""
    out = ExpPolyCoeff.zero(n)
    for _ in range(rng.randint(0, max_terms)):
        alpha = [rng.randint(0, max_deg) if rng.random() < 0.5 else 0 for _ in range(n)]
        lam = [rng.choice(freqs) if rng.random() < 0.3 else 0 for _ in range(n)]
        kind = rng.choice([NONE, NONE, COS, SIN])
        mu = [rng.choice(freqs) if rng.random() < 0.5 else 0 for _ in range(n)]
        out = out + ExpPolyCoeff.term(n, rng.choice(coefs), alpha=alpha, lam=lam, trig=kind, mu=mu)
    return out


__all__ = [
    "ExpPolyCoeff",
    "NONE",
    "COS",
    "SIN",
    "add",
    "mul",
    "partial",
    "eval_origin",
    "coordinate_matrix",
    "random_element",
]
