import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lievec import catalog
from lievec.coeffring import ExpPolyCoeff
from lievec.errors import DegreeOutOfRange, NotGradable
from lievec.grading import (
    Dilation,
    degree_decompose,
    enumerate_graded,
    membership,
    negative_part,
    random_solvable,
    weight_field,
)
from lievec.liealg import bracket_closure, is_transitive_at_origin, lower_central_series
from lievec.textio import format_field, parse_field
from lievec.vfield import VarContext, VectorField, bracket

XY = VarContext(["x", "y"])
XYZ = VarContext(["x", "y", "z"])


def test_weight_field():
    h = Dilation(XY, [3, 1])
    assert format_field(weight_field(h)) == "3*x*d_x + y*d_y"


def test_decompose_example():
    h = Dilation(XY, [3, 1])
    X = parse_field("d_x + y^2*d_x + x*d_y", XY)
    dec = degree_decompose(X, h)
    assert dec.degrees == [-3, -1, 2]
    assert format_field(dec.parts[-1]) == "y^2*d_x"
    assert dec.total(XY) == X


def test_decompose_zero_weight_exponentials():
    h = Dilation(XY, [0, 1])
    X = parse_field("exp(x)*y*d_y + cos(x)*d_y", XY)
    assert degree_decompose(X, h).degrees == [-1, 0]
    with pytest.raises(NotGradable):
        degree_decompose(parse_field("exp(y)*d_x", XY), h)


def test_membership_plane_table():
    af = catalog.load("solvable_plane")
    L = bracket_closure(af.generators, ctx=af.ctx)
    h = Dilation(af.ctx, [3, 1])
    rep = membership(L, h)
    assert rep.ok
    table = rep.degree_table()
    assert table == {"d_x": -3, "d_y": -1, "x*d_x": 0, "y*d_y": 0, "y^2*d_x": -1, "y*d_x": -2}
    assert not membership(L, h, "strictNeg").ok
    js = rep.to_json()
    assert js["mode"] == "nonPos" and js["elements"][0]["maxDegree"] == -3


def test_membership_rejects_positive_degree():
    h = Dilation(XY, [1, 1])
    assert not membership(parse_field("x^2*d_x", XY), h).ok


def test_enumerate_examples():
    h = Dilation(XYZ, [0, 1, 2])
    g1 = enumerate_graded(h, -1)
    assert [format_field(X) for X in g1.fields] == ["d_y", "y*d_z"]
    assert g1.module and g1.module_vars == ["x"]
    assert [format_field(X) for X in enumerate_graded(h, -2).fields] == ["d_z"]
    with pytest.raises(DegreeOutOfRange):
        enumerate_graded(h, 0)
    with pytest.raises(DegreeOutOfRange):
        enumerate_graded(h, -3)


def test_negative_part_closure_is_nilpotent():
    for w in ([1, 2], [1, 3], [2, 3], [1, 1, 3], [1, 2, 4]):
        ctx = VarContext(["x", "y", "z"][: len(w)])
        h = Dilation(ctx, w)
        gens = negative_part(h)
        L = bracket_closure(gens, ctx=ctx)
        assert L.dim == len(gens)
        lcs = lower_central_series(L)
        assert lcs.dims[-1] == 0 and lcs.height <= h.degree
        assert membership(L, h, "strictNeg").ok


# -- random homogeneous fields -------------------------------------------------

WEIGHTS = (0, 1, 2)
H = Dilation(XYZ, WEIGHTS)


@st.composite
def fields(draw):
    n = 3
    comps = []
    for _j in range(n):
        f = ExpPolyCoeff.zero(n)
        for _ in range(draw(st.integers(0, 2))):
            alpha = [draw(st.integers(0, 2)) for _ in range(n)]
            coef = draw(st.sampled_from([-2, -1, 1, 3]))
            kind = draw(st.sampled_from([None, "cos", "sin", "exp"]))
            term = ExpPolyCoeff.monomial(n, alpha, coef)
            if kind == "exp":
                term = term * ExpPolyCoeff.exp(n, [draw(st.integers(-1, 2)), 0, 0])
            elif kind == "cos":
                term = term * ExpPolyCoeff.cos(n, [1, 0, 0])
            elif kind == "sin":
                term = term * ExpPolyCoeff.sin(n, [1, 0, 0])
            f = f + term
        comps.append(f)
    return VectorField(XYZ, comps)


@settings(max_examples=500)
@given(fields(), fields())
def test_degree_additivity(X, Y):
    dx, dy = degree_decompose(X, H), degree_decompose(Y, H)
    for a, P in dx.parts.items():
        for b, R in dy.parts.items():
            B = bracket(P, R)
            if B:
                assert degree_decompose(B, H).degrees == [a + b]


@settings(max_examples=200)
@given(fields())
def test_decompose_sum_and_eigen(X):
    dec = degree_decompose(X, H)
    assert dec.total(XYZ) == X
    nabla = weight_field(H)
    for a, P in dec.parts.items():
        assert bracket(nabla, P) == P.scale(a)


def test_random_solvable_ground_truth():
    for seed in range(25):
        for w in ([0, 1, 2], [1, 2, 3], [1, 1, 2]):
            h = Dilation(XYZ, w)
            L = random_solvable(h, seed, cap=40)
            assert membership(L, h).ok
            assert is_transitive_at_origin(L)
            again = random_solvable(h, seed, cap=40)
            assert [format_field(X) for X in again.basis] == [format_field(X) for X in L.basis]


def test_random_solvable_needs_positive_weight():
    with pytest.raises(ValueError):
        random_solvable(Dilation(XY, [0, 0]), 1)


def test_dilation_validation():
    with pytest.raises(ValueError):
        Dilation(XY, [1])
    with pytest.raises(ValueError):
        Dilation(XY, [1, -1])
    assert Dilation(XY, [0, 2]).zero_vars == [0]
