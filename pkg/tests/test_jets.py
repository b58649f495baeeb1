import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lievec._rational import Q
from lievec.coeffring import ExpPolyCoeff
from lievec.errors import NotClosedForm, SingularJetMap
from lievec.jets import (
    JetField,
    JetForm,
    JetFunction,
    JetMap,
    apply_field,
    compose,
    differential,
    integrate_closed,
    invert,
    is_closed,
    jet_bracket,
    lie_series,
    pushforward,
    random_jet_field,
    random_jet_map,
    truncate,
)
from lievec.textio import parse_field
from lievec.vfield import VarContext
from oracles import symbols, taylor, to_sympy


def jf(n, order, d):
    return JetFunction(n, order, d)


def test_truncate_examples():
    x = ExpPolyCoeff.exp(1, [1])
    assert truncate(x, 3) == jf(1, 3, {(0,): 1, (1,): 1, (2,): Q(1, 2), (3,): Q(1, 6)})
    assert truncate(ExpPolyCoeff.sin(1, [1]), 3) == jf(1, 3, {(1,): 1, (3,): Q(-1, 6)})
    X = parse_field("y^2*d_x", VarContext(["x", "y"]))
    J = truncate(X, 2)
    assert J.components[0].coeffs == {(0, 2): 1} and not J.components[1]
    with pytest.raises(ValueError):
        truncate(x, -1)


@st.composite
def coeffs(draw):
    n = 2
    f = ExpPolyCoeff.zero(n)
    for _ in range(draw(st.integers(1, 3))):
        alpha = [draw(st.integers(0, 2)) for _ in range(n)]
        term = ExpPolyCoeff.monomial(n, alpha, draw(st.sampled_from([-2, -1, 1, 3])))
        lam = [draw(st.integers(-1, 2)) for _ in range(n)]
        kind = draw(st.sampled_from([None, "cos", "sin"]))
        if any(lam):
            term = term * ExpPolyCoeff.exp(n, lam)
        if kind:
            mu = [draw(st.integers(0, 2)) for _ in range(n)]
            if any(mu):
                term = term * (ExpPolyCoeff.cos(n, mu) if kind == "cos" else ExpPolyCoeff.sin(n, mu))
        f = f + term
    return f


@settings(max_examples=40)
@given(coeffs(), st.integers(1, 4))
def test_truncate_matches_sympy_taylor(f, order):
    xs = symbols(2)
    assert truncate(f, order).coeffs == taylor(to_sympy(f, xs), xs, order)


def test_truncate_is_a_ring_map():
    rng = random.Random(5)
    pool = [ExpPolyCoeff.exp(2, [1, 0]), ExpPolyCoeff.cos(2, [0, 1]), ExpPolyCoeff.var(2, 0), ExpPolyCoeff.sin(2, [1, 1])]
    for _ in range(30):
        a, b = rng.choice(pool), rng.choice(pool)
        assert truncate(a * b, 4).agrees(truncate(a, 4) * truncate(b, 4), 4)
        assert truncate(a.partial(0), 3).agrees(truncate(a, 4).partial(0), 3)


def test_invert_examples():
    m = JetMap([jf(1, 3, {(1,): 1, (2,): 1})])
    minv = invert(m)
    assert minv.components[0] == jf(1, 3, {(1,): 1, (2,): -1, (3,): 2})
    ident = JetMap.identity(2, 4)
    assert invert(ident) == ident
    with pytest.raises(SingularJetMap):
        invert(JetMap.linear([[1, 2], [2, 4]], 3))


def test_invert_random_round_trips():
    rng = random.Random(11)
    for k in range(200):
        n = 1 + k % 3
        order = 1 + k % 5
        m = random_jet_map(rng, n, order)
        minv = invert(m)
        ident = JetMap.identity(n, order)
        assert compose(m, minv).agrees(ident, order)
        assert compose(minv, m).agrees(ident, order)


def test_compose_order_bookkeeping():
    f = jf(2, 5, {(2, 0): 1})
    m = JetMap.identity(2, 3)
    assert compose(f, m).order == 3


def test_pushforward_examples():
    m = JetMap([jf(1, 3, {(1,): 1, (2,): 1})])
    P = pushforward(JetField.coordinate(1, 3, 0), m)
    assert P.order == 2
    assert P.components[0] == jf(1, 2, {(0,): 1, (1,): 2, (2,): -2})
    # pulling back returns the original field to the order that survives
    back = pushforward(P, invert(m))
    assert back.agrees(JetField.coordinate(1, 3, 0), back.order)

    swap = JetMap.linear([[0, 1], [1, 0]], 3)
    assert pushforward(JetField.coordinate(2, 3, 0), swap).agrees(JetField.coordinate(2, 3, 1), 2)

    diag = JetMap.linear([[2, 0], [0, 3]], 3)
    W = JetField([jf(2, 3, {(1, 0): 1}), jf(2, 3, {(0, 1): 2})])
    assert pushforward(W, diag).agrees(W, 2)


def test_pushforward_respects_brackets():
    rng = random.Random(17)
    for k in range(60):
        n = 1 + k % 3
        order = 3 + k % 3
        m = random_jet_map(rng, n, order)
        X = random_jet_field(rng, n, order)
        Y = random_jet_field(rng, n, order)
        minv = invert(m)
        lhs = pushforward(jet_bracket(X, Y), m, minv)
        rhs = jet_bracket(pushforward(X, m, minv), pushforward(Y, m, minv))
        assert lhs.agrees(rhs, order - 2)


def test_lie_series_examples():
    dx = JetField.coordinate(1, 4, 0)
    assert lie_series(dx, jf(1, 4, {(2,): 1}), 2) == [jf(1, 4, {(2,): 1}), jf(1, 3, {(1,): 2}), jf(1, 2, {(0,): 1})]
    scaling = JetField([jf(1, 4, {(1,): 1})])
    xs = lie_series(scaling, jf(1, 4, {(1,): 1}), 2)
    assert [c.coeffs for c in xs] == [{(1,): 1}, {(1,): 1}, {(1,): Q(1, 2)}]
    one = jf(2, 4, {(0, 0): 1})
    Y = random_jet_field(random.Random(1), 2, 4)
    assert all(not c for c in lie_series(Y, one, 3)[1:])


def test_lie_series_derivative_at_zero():
    rng = random.Random(23)
    for _ in range(40):
        Y = random_jet_field(rng, 2, 4)
        f = random_jet_field(rng, 2, 4).components[0]
        series = lie_series(Y, f, 3)
        assert series[1] == apply_field(Y, f)


def test_integrate_examples():
    dx = JetForm([jf(2, 3, {(0, 0): 1}), jf(2, 3, {})])
    assert integrate_closed(dx) == jf(2, 4, {(1, 0): 1})
    w = JetForm([jf(2, 3, {(0, 1): 1}), jf(2, 3, {(1, 0): 1})])
    assert integrate_closed(w).coeffs == {(1, 1): 1}
    bad = JetForm([jf(2, 3, {(0, 1): 1}), jf(2, 3, {})])
    assert not is_closed(bad)
    with pytest.raises(NotClosedForm):
        integrate_closed(bad)


def test_d_of_integral_is_identity():
    rng = random.Random(29)
    for _ in range(100):
        n = rng.randint(1, 3)
        f = random_jet_field(rng, n, 4).components[0]
        w = differential(f)
        assert is_closed(w)
        y = integrate_closed(w)
        assert differential(y).agrees(w, w.order)
        assert not y.constant()


def test_json_round_trip():
    f = jf(2, 3, {(1, 0): Q(1, 2), (0, 2): -3})
    assert JetFunction.from_json(2, f.to_json()) == f


def test_jet_map_must_fix_origin():
    with pytest.raises(ValueError):
        JetMap([jf(1, 2, {(0,): 1, (1,): 1})])
