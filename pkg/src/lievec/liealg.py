"""Finite-dimensional Lie algebras as rational spans.

:class:`LieAlgebra` carries abstract structure constants; :class:`LieAlgebraVF`
adds a basis of vector fields. Subspaces (ideals, series terms) are stored
as coordinate subspaces with respect to the parent basis, so containment and
dimension questions reduce to exact rank computations.
"""

import os
from dataclasses import dataclass, field

from ._rational import ONE, ZERO, q
from .errors import ContextMismatch, DimensionCapExceeded, NotClosed, NotProjectable
from .linalg import Echelon, rank, vadd
from .vfield import VarContext, VectorField, bracket

DEFAULT_CAP = 64


def default_cap():
    env = os.environ.get("LIEVEC_MAX_DIM")
    return int(env) if env else DEFAULT_CAP


class LieAlgebra:
    """Structure constants ``[e_i, e_j] = sum_k c[i][j][k] e_k`` (sparse)."""

    def __init__(self, structure, names=None):
        self.structure = structure
        self.dim = len(structure)
        self.names = names or [f"e{i + 1}" for i in range(self.dim)]

    @classmethod
    def from_brackets(cls, dim, brackets, names=None):
        """Build from ``{(i, j): {k: coef}}`` for ``i < j``; antisymmetry is filled in."""
        c = [[{} for _ in range(dim)] for _ in range(dim)]
        for (i, j), vec in brackets.items():
            vec = {k: q(v) for k, v in vec.items() if v}
            c[i][j] = vec
            c[j][i] = {k: -v for k, v in vec.items()}
        return cls(c, names)

    def bracket_coords(self, u, v):
        out = {}
        for i, a in u.items():
            ci = self.structure[i]
            for j, b in v.items():
                if i == j:
                    continue
                s = a * b
                for k, c in ci[j].items():
                    t = out.get(k, ZERO) + s * c
                    if t:
                        out[k] = t
                    else:
                        out.pop(k, None)
        return out

    def ad_matrix(self, i):
        """``(ad e_i)[k][j] = c_{ij}^k`` as a dense matrix."""
        d = self.dim
        m = [[ZERO] * d for _ in range(d)]
        for j in range(d):
            for k, c in self.structure[i][j].items():
                m[k][j] = c
        return m

    def check_jacobi(self):
        d = self.dim
        for i in range(d):
            for j in range(i + 1, d):
                for k in range(j + 1, d):
                    ei, ej, ek = {i: ONE}, {j: ONE}, {k: ONE}
                    s = vadd(
                        vadd(
                            self.bracket_coords(ei, self.bracket_coords(ej, ek)),
                            self.bracket_coords(ej, self.bracket_coords(ek, ei)),
                        ),
                        self.bracket_coords(ek, self.bracket_coords(ei, ej)),
                    )
                    if s:
                        return False
        return True

    def whole(self):
        return Ideal(self, [{i: ONE} for i in range(self.dim)])

    def zero(self):
        return Ideal(self, [])

    def element(self, vec):
        """Name-level description of an element (abstract algebras)."""
        return vec


class LieAlgebraVF(LieAlgebra):
    """A bracket-closed rational span of vector fields with its structure constants."""

    def __init__(self, ctx, basis, structure):
        super().__init__(structure, names=[str(b) for b in basis])
        self.ctx = ctx
        self.basis = list(basis)

    def element(self, vec):
        """The vector field with coordinates ``vec``."""
        out = VectorField.zero(self.ctx)
        for i, c in sorted(vec.items()):
            out = out + self.basis[i].scale(c)
        return out

    def coordinates(self, X):
        ech = _field_echelon(self.basis)
        coords = ech.coordinates(X.coordinate_vector())
        return coords

    def origin_rank(self, vecs):
        return rank([_origin_vector(self.element(v)) for v in vecs])


def _origin_vector(X):
    return {j: v for j, v in enumerate(X.eval_origin()) if v}


def _field_echelon(fields):
    ech = Echelon(track=True)
    for f in fields:
        ech.insert(f.coordinate_vector())
    return ech


class Ideal:
    """A subspace of a parent algebra, stored as reduced coordinate rows.

    The name follows the main use; :meth:`is_ideal` verifies the property.
    """

    def __init__(self, parent, vectors):
        self.parent = parent
        ech = Echelon(track=False)
        for v in vectors:
            ech.insert(v)
        self._ech = ech
        self.rows = ech.basis()

    @property
    def dim(self):
        return len(self.rows)

    def contains(self, vec):
        return self._ech.contains(vec)

    def contains_subspace(self, other):
        return all(self.contains(r) for r in other.rows)

    def __eq__(self, other):
        return (
            isinstance(other, Ideal)
            and other.parent is self.parent
            and self.dim == other.dim
            and self.contains_subspace(other)
        )

    def __repr__(self):
        return f"Ideal(dim={self.dim})"

    def is_ideal(self):
        L = self.parent
        for i in range(L.dim):
            for r in self.rows:
                if not self.contains(L.bracket_coords({i: ONE}, r)):
                    return False
        return True

    def is_subalgebra(self):
        L = self.parent
        return all(self.contains(L.bracket_coords(a, b)) for a in self.rows for b in self.rows)

    def fields(self):
        return [self.parent.element(r) for r in self.rows]

    def dim_at_origin(self):
        if not isinstance(self.parent, LieAlgebraVF):
            return None
        return self.parent.origin_rank(self.rows)

    def coordinate_matrix(self):
        return [[r.get(i, ZERO) for i in range(self.parent.dim)] for r in self.rows]


def bracket_subspaces(A, B):
    """The span of ``[a, b]`` for ``a`` in ``A`` and ``b`` in ``B``."""
    L = A.parent
    vecs = [L.bracket_coords(a, b) for a in A.rows for b in B.rows]
    return Ideal(L, vecs)


# -- construction ------------------------------------------------------------


def span_reduce(fields):
    """Maximal linearly independent subsequence of ``fields`` (earliest wins)."""
    fields = list(fields)
    if fields:
        ctx = fields[0].ctx
        for f in fields:
            if f.ctx != ctx:
                raise ContextMismatch("fields live in different contexts")
    ech = Echelon(track=False)
    return [f for f in fields if ech.insert(f.coordinate_vector())]


def bracket_closure(generators, cap=None, ctx=None):
    """Smallest bracket-closed rational span containing ``generators``.

    Pairwise brackets are taken in a fixed order; new independent fields are
    appended to the basis. Raises :class:`DimensionCapExceeded` once the span
    exceeds ``cap`` (default 64, or ``$LIEVEC_MAX_DIM``).
    """
    if cap is None:
        cap = default_cap()
    if cap < 1:
        raise ValueError("cap must be at least 1")
    generators = list(generators)
    if ctx is None:
        if not generators:
            raise ValueError("need generators or an explicit context")
        ctx = generators[0].ctx
    basis = []
    ech = Echelon(track=True)

    def add(f):
        rem, _ = ech.reduce(f.coordinate_vector())
        if rem:
            if len(basis) >= cap:
                raise DimensionCapExceeded(cap)
            ech.insert(f.coordinate_vector())
            basis.append(f)

    for g in generators:
        if g.ctx != ctx:
            raise ContextMismatch("generators live in different contexts")
        add(g)
    brackets = {}
    j = 1
    while j < len(basis):
        for i in range(j):
            b = bracket(basis[i], basis[j])
            brackets[(i, j)] = b
            add(b)
        j += 1
    structure = [[{} for _ in basis] for _ in basis]
    for (i, j), b in brackets.items():
        coords = ech.coordinates(b.coordinate_vector())
        if coords is None:
            raise NotClosed(f"bracket of basis elements {i} and {j} left the span")
        structure[i][j] = coords
        structure[j][i] = {k: -v for k, v in coords.items()}
    return LieAlgebraVF(ctx, basis, structure)


def structure_constants(L):
    """Recompute ``c_{ij}^k`` from the basis fields; raises NotClosed if a bracket escapes."""
    ech = _field_echelon(L.basis)
    d = len(L.basis)
    c = [[{} for _ in range(d)] for _ in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            coords = ech.coordinates(bracket(L.basis[i], L.basis[j]).coordinate_vector())
            if coords is None:
                raise NotClosed(f"[e{i + 1}, e{j + 1}] is not in the span")
            c[i][j] = coords
            c[j][i] = {k: -v for k, v in coords.items()}
    return c


def algebra_from_basis(fields, check=True):
    """Wrap an already closed, independent list of fields."""
    fields = list(fields)
    if span_reduce(fields) != fields:
        raise ValueError("basis fields are linearly dependent")
    L = LieAlgebraVF(fields[0].ctx, fields, [[{}] * len(fields) for _ in fields])
    L.structure = structure_constants(L)
    return L


# -- series --------------------------------------------------------------------


@dataclass
class SeriesReport:
    kind: str  # "derived" | "lowerCentral" | "nilradical"
    chain: list
    start_index: int
    dims: list = field(default_factory=list)
    dims_at_origin: list = None
    alt_dims: list = None  # nilradical kind: the L, [L,L], [L1,L1], [L1,L2], ... labelling

    @property
    def reaches_zero(self):
        return bool(self.dims) and self.dims[-1] == 0

    @property
    def height(self):
        """Last index carrying a nonzero term (series indexing); None if it never vanishes."""
        if not self.reaches_zero:
            return None
        return self.start_index + len(self.dims) - 2

    def term(self, index):
        """The series term with the given series index (clamped at the tail)."""
        pos = index - self.start_index
        if pos < 0:
            raise IndexError(index)
        return self.chain[min(pos, len(self.chain) - 1)]

    def dim_at(self, index):
        return self.term(index).dim

    def dim_at_origin(self, index):
        pos = index - self.start_index
        return self.dims_at_origin[min(pos, len(self.dims_at_origin) - 1)]


def _finish(kind, chain, start):
    rep = SeriesReport(kind, chain, start, [I.dim for I in chain])
    if isinstance(chain[0].parent, LieAlgebraVF):
        rep.dims_at_origin = [I.dim_at_origin() for I in chain]
    return rep


def _iterate(first, step, kind, start):
    chain = [first]
    while chain[-1].dim:
        nxt = step(chain[-1])
        if nxt.dim == chain[-1].dim:
            break
        chain.append(nxt)
    return _finish(kind, chain, start)


def derived_series(L):
    """``L, [L,L], [[L,L],[L,L]], ...`` until it stabilizes."""
    return _iterate(L.whole(), lambda A: bracket_subspaces(A, A), "derived", 0)


def lower_central_series(L):
    """``L^1 = L, L^{i+1} = [L, L^i]`` until it stabilizes."""
    W = L.whole()
    return _iterate(W, lambda A: bracket_subspaces(W, A), "lowerCentral", 1)


def is_solvable(L):
    return derived_series(L).reaches_zero


def is_nilpotent(L):
    return lower_central_series(L).reaches_zero


def is_transitive_at_origin(L):
    return rank([_origin_vector(b) for b in L.basis]) == L.ctx.n


def algebra_report(L):
    """Summary dict for the command line ``analyze`` report."""
    ds = derived_series(L)
    lcs = lower_central_series(L)
    return {
        "dim": L.dim,
        "solvable": ds.reaches_zero,
        "nilpotent": lcs.reaches_zero,
        "transitive": is_transitive_at_origin(L),
        "derivedDims": ds.dims,
        "lowerCentralDims": lcs.dims,
        "lowerCentralDimsAtOrigin": lcs.dims_at_origin,
    }


# -- projection ------------------------------------------------------------------


@dataclass
class Quotient:
    algebra: LieAlgebraVF
    images: list  # image of each basis element of the source, as coordinates on algebra.basis
    keep: list


def quotient_map(L, drop, ideal=None):
    """Truncate every field of ``L`` to the kept variables.

    Components along kept variables must not depend on dropped ones
    (``NotProjectable`` otherwise). When ``ideal`` is given, its members must
    map to zero. The truncation is verified to be a Lie homomorphism onto the
    image algebra.
    """
    ctx = L.ctx
    drop_idx = sorted(ctx.index(v) if isinstance(v, str) else v for v in drop)
    keep = [j for j in range(ctx.n) if j not in drop_idx]
    if not keep:
        raise NotProjectable("cannot drop every variable")
    new_ctx = VarContext([ctx.names[j] for j in keep])

    def truncate(X):
        comps = []
        for j in keep:
            c = X.components[j]
            if any(c.depends_on(d) for d in drop_idx):
                raise NotProjectable(f"component along {ctx.names[j]} of {X} depends on a dropped variable")
            comps.append(c.restrict(keep))
        return VectorField(new_ctx, comps)

    images = [truncate(b) for b in L.basis]
    if ideal is not None:
        for f in ideal.fields():
            if truncate(f):
                raise NotProjectable("ideal members do not project to zero")
    reduced = span_reduce(images)
    Lbar = algebra_from_basis(reduced) if reduced else LieAlgebraVF(new_ctx, [], [])
    ech = _field_echelon(Lbar.basis)
    coords = [ech.coordinates(im.coordinate_vector()) for im in images]
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            lhs = {}
            for k, c in L.structure[i][j].items():
                lhs = vadd(lhs, coords[k], c)
            rhs = Lbar.bracket_coords(coords[i], coords[j]) if Lbar.dim else {}
            if lhs != rhs:
                raise NotProjectable("truncation is not a Lie homomorphism")
    return Quotient(Lbar, coords, keep)


__all__ = [
    "LieAlgebra",
    "LieAlgebraVF",
    "Ideal",
    "SeriesReport",
    "span_reduce",
    "bracket_closure",
    "structure_constants",
    "derived_series",
    "lower_central_series",
    "is_solvable",
    "is_nilpotent",
    "is_transitive_at_origin",
    "quotient_map",
    "bracket_subspaces",
]
