"""Nilradical of a solvable Lie algebra over the rationals.

For solvable ``L`` in characteristic 0 the nilradical is the set of
ad-nilpotent elements. Testing nilpotency through the trace form of ``L``
alone is wrong over the rationals (complex eigenvalues can make
``sum(lambda_i(x)^2)`` vanish for a non-nilpotent ``ad x``), so the radical is
taken at the level of the associative algebra generated by the adjoint
operators, where it is exactly the kernel of the trace form. The nilradical
is the preimage of that radical under ``ad``.

Matrices here are sparse dicts ``{(row, col): value}``.
"""

from dataclasses import dataclass, field

from ._rational import ZERO
from .errors import InternalCertificateFailure, NotSolvable
from .liealg import Ideal, SeriesReport, _finish, bracket_subspaces, derived_series
from .linalg import Echelon, left_kernel


def sparse_matmul(A, B):
    rows_b = {}
    for (k, c), v in B.items():
        rows_b.setdefault(k, []).append((c, v))
    out = {}
    for (r, k), a in A.items():
        for c, v in rows_b.get(k, ()):
            key = (r, c)
            s = out.get(key, ZERO) + a * v
            if s:
                out[key] = s
            else:
                del out[key]
    return out


def sparse_trace_product(A, B):
    """``trace(A @ B)`` without forming the product."""
    total = ZERO
    for (i, j), a in A.items():
        b = B.get((j, i))
        if b:
            total += a * b
    return total


def is_nilpotent_matrix(A, d):
    """Power test: ``A^d == 0`` for a ``d x d`` matrix."""
    P = A
    for _ in range(d):
        if not P:
            return True
        P = sparse_matmul(P, A)
    return not P


@dataclass
class AdWorkspace:
    dim: int
    ad: list  # sparse ad matrices of the basis elements
    envelope: list = None  # sparse matrices spanning the associative envelope
    _env_ech: object = field(default=None, repr=False)


def adjoint_matrices(L):
    """``(ad e_i)[k][j] = c_{ij}^k`` for each basis element, as sparse matrices."""
    d = L.dim
    ads = []
    for i in range(d):
        m = {}
        for j in range(d):
            for k, c in L.structure[i][j].items():
                m[(k, j)] = c
        ads.append(m)
    return AdWorkspace(d, ads)


def ad_of(w, vec):
    """Sparse ad matrix of the element with coordinates ``vec``."""
    out = {}
    for i, c in vec.items():
        for key, v in w.ad[i].items():
            s = out.get(key, ZERO) + c * v
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


def associative_envelope(w):
    """Basis of the non-unital associative algebra generated by the ad matrices.

    Starts from a basis of the generators and closes under right
    multiplication by each generator; every word in the generators is then
    in the span.
    """
    gens = [g for g in w.ad if g]
    ech = Echelon(track=False)
    basis = []
    for g in gens:
        if ech.insert(g):
            basis.append(g)
    gens = list(basis)
    frontier = list(basis)
    while frontier:
        new = []
        for A in frontier:
            for G in gens:
                P = sparse_matmul(A, G)
                if P and ech.insert(P):
                    basis.append(P)
                    new.append(P)
        frontier = new
    w.envelope = basis
    w._env_ech = ech
    return w


def trace_radical(w):
    """Basis of ``{a in envelope : trace(a b) = 0 for all envelope b}``.

    Each returned matrix is checked to be nilpotent.
    """
    if w.envelope is None:
        associative_envelope(w)
    E = w.envelope
    gram = [{b: sparse_trace_product(A, B) for b, B in enumerate(E) if sparse_trace_product(A, B)} for A in E]
    kernel = left_kernel(gram)
    out = []
    for vec in kernel:
        M = {}
        for a, c in enumerate(vec):
            if c:
                for key, v in E[a].items():
                    s = M.get(key, ZERO) + c * v
                    if s:
                        M[key] = s
                    else:
                        M.pop(key, None)
        if not is_nilpotent_matrix(M, w.dim):
            raise InternalCertificateFailure("trace radical element is not nilpotent")
        out.append(M)
    return out


def _is_nilpotent_subalgebra(N):
    cur = N
    for _ in range(N.parent.dim + 1):
        if not cur.dim:
            return True
        nxt = bracket_subspaces(N, cur)
        if nxt.dim == cur.dim:
            return False
        cur = nxt
    return not cur.dim


def nilradical(L, workspace=None):
    """The nilradical of a solvable algebra, as an :class:`Ideal` of ``L``.

    ``N = {x : ad x in J}`` where ``J`` is the trace-form radical of the
    associative envelope. Since ``ad x`` already lies in the envelope, the
    condition is ``trace(ad x * b) = 0`` for every envelope basis element
    ``b``. The result is checked to be a nilpotent ideal containing ``[L, L]``
    before it is returned.
    """
    ds = derived_series(L)
    if not ds.reaches_zero:
        raise NotSolvable(f"derived series stabilizes at dimension {ds.dims[-1]}")
    w = workspace or adjoint_matrices(L)
    if w.envelope is None:
        associative_envelope(w)
    rows = [{b: t for b, B in enumerate(w.envelope) if (t := sparse_trace_product(A, B))} for A in w.ad]
    kernel = left_kernel(rows)
    N = Ideal(L, [{i: c for i, c in enumerate(v) if c} for v in kernel])
    if not N.is_ideal():
        raise InternalCertificateFailure("nilradical candidate is not an ideal")
    if not _is_nilpotent_subalgebra(N):
        raise InternalCertificateFailure("nilradical candidate is not nilpotent")
    derived = ds.chain[1] if len(ds.chain) > 1 else L.zero()
    if not N.contains_subspace(derived):
        raise InternalCertificateFailure("[L, L] is not contained in the nilradical candidate")
    return N


def nilradical_series(L):
    """``L^0 = L, L^1 = nr(L), L^{i+1} = [nr(L), L^i]``, down to zero.

    ``alt_dims`` records the chain ``L, [L,L], [L1,L1], [L1,L2], ...`` built
    from the derived algebra instead of the nilradical, for comparison.
    """
    N = nilradical(L)
    chain = [L.whole(), N]
    while chain[-1].dim:
        nxt = bracket_subspaces(N, chain[-1])
        if nxt.dim == chain[-1].dim:
            raise InternalCertificateFailure("nilradical series did not reach zero")
        chain.append(nxt)
    rep = _finish("nilradical", chain, 0)
    D = bracket_subspaces(L.whole(), L.whole())
    alt = [L.whole(), D]
    while alt[-1].dim:
        nxt = bracket_subspaces(D, alt[-1])
        if nxt.dim == alt[-1].dim:
            break
        alt.append(nxt)
    rep.alt_dims = [I.dim for I in alt]
    return rep


def naive_trace_kernel(L):
    """``{x : trace(ad x ad y) = 0 for all y}``: the tempting but wrong candidate."""
    w = adjoint_matrices(L)
    rows = [{j: t for j, B in enumerate(w.ad) if (t := sparse_trace_product(A, B))} for A in w.ad]
    kernel = left_kernel(rows)
    return Ideal(L, [{i: c for i, c in enumerate(v) if c} for v in kernel])


__all__ = [
    "AdWorkspace",
    "adjoint_matrices",
    "associative_envelope",
    "trace_radical",
    "nilradical",
    "nilradical_series",
    "naive_trace_kernel",
    "is_nilpotent_matrix",
    "ad_of",
    "SeriesReport",
]
