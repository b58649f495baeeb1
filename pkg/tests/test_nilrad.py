import random

import pytest

from lievec import catalog
from lievec._rational import Q
from lievec.errors import NotSolvable
from lievec.grading import Dilation, random_solvable
from lievec.liealg import Ideal, LieAlgebra, bracket_closure, bracket_subspaces, lower_central_series
from lievec.nilrad import (
    adjoint_matrices,
    associative_envelope,
    is_nilpotent_matrix,
    naive_trace_kernel,
    nilradical,
    nilradical_series,
    trace_radical,
)
from lievec.textio import format_field, parse_field
from lievec.vfield import VarContext
from oracles import is_nilpotent_subspace, nilradical_by_sampling


def closure_of(name):
    af = catalog.load(name)
    return bracket_closure(af.generators, ctx=af.ctx)


def test_adjoint_matrix_sign():
    L = closure_of("line_affine")
    w = adjoint_matrices(L)
    assert w.ad[1] == {(0, 0): -1}
    assert w.ad[0] == {(0, 1): 1}


def test_envelope_examples():
    L = closure_of("line_affine")
    w = associative_envelope(adjoint_matrices(L))
    assert len(w.envelope) == 2
    J = trace_radical(w)
    assert len(J) == 1 and J[0] == {(0, 1): 1}
    zero = LieAlgebra.from_brackets(2, {})
    assert associative_envelope(adjoint_matrices(zero)).envelope == []
    jordan = LieAlgebra.from_brackets(2, {(0, 1): {1: 1}})
    w = adjoint_matrices(LieAlgebra([[{}, {}], [{}, {}]]))
    w.ad = [{(0, 1): Q(1)}]
    assert len(associative_envelope(w).envelope) == 1
    assert jordan.dim == 2


def test_heisenberg_envelope_is_nil():
    L = bracket_closure([parse_field(t, VarContext(["x", "y"])) for t in ("d_y", "y*d_x", "d_x")])
    w = associative_envelope(adjoint_matrices(L))
    assert all(is_nilpotent_matrix(A, L.dim) for A in w.envelope)
    assert len(trace_radical(w)) == len(w.envelope)


def test_nilpotent_algebra_is_its_own_nilradical():
    L = closure_of("nilpotent_height3")
    assert nilradical(L).dim == L.dim


def test_affine_line_nilradical():
    N = nilradical(closure_of("line_affine"))
    assert [format_field(f) for f in N.fields()] == ["d_y"]


def test_trap_algebra():
    L = catalog.trap_algebra()
    N = nilradical(L)
    assert N == Ideal(L, [{1: Q(1)}, {2: Q(1)}, {3: Q(1)}])
    naive = naive_trace_kernel(L)
    assert naive.contains({0: Q(1)})
    assert naive.dim == 4


def test_not_solvable():
    ctx = VarContext(["x"])
    L = bracket_closure([parse_field(t, ctx) for t in ("d_x", "x*d_x", "x^2*d_x")])
    with pytest.raises(NotSolvable):
        nilradical(L)


def test_series_plane_example():
    rep = nilradical_series(closure_of("solvable_plane"))
    assert rep.dims == [6, 4, 2, 1, 0]
    assert rep.height == 3
    L2 = sorted(format_field(f) for f in rep.chain[2].fields())
    assert L2 == ["d_x", "y*d_x"]
    assert [format_field(f) for f in rep.chain[3].fields()] == ["d_x"]


def test_series_exp_trig_closed_algebra():
    rep = nilradical_series(closure_of("exp_trig"))
    assert rep.dims == [19, 15, 8, 3, 0]
    assert rep.dims_at_origin == [4, 3, 2, 1, 0]


def test_series_of_nilpotent_is_shifted_lower_central():
    L = closure_of("nilpotent_height3")
    assert nilradical_series(L).dims[1:] == lower_central_series(L).dims


def _random_instances(count, max_dim=6):
    rng = random.Random(2024)
    names = ["x", "y", "z"]
    seed = 0
    out = []
    while len(out) < count:
        seed += 1
        n = rng.randint(1, 3)
        w = [rng.randint(0, 2) for _ in range(n)]
        if not any(w):
            w[-1] = 1
        h = Dilation(VarContext(names[:n]), w)
        try:
            L = random_solvable(h, seed, cap=max_dim)
        except Exception:
            continue
        out.append(L)
    return out


def test_nilradical_matches_sampling_oracle():
    instances = _random_instances(60)
    assert len(instances) >= 50
    for L in instances:
        N = nilradical(L)
        assert N == nilradical_by_sampling(L)
        assert N.is_ideal()
        assert is_nilpotent_subspace(N)
        assert N.contains_subspace(bracket_subspaces(L.whole(), L.whole()))
