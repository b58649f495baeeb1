import random

import pytest

from lievec import catalog
from lievec.coeffring import ExpPolyCoeff
from lievec.errors import NotSolvable, NotTransitive
from lievec.grading import Dilation, membership, random_solvable
from lievec.jets import JetField, pushforward, truncate
from lievec.liealg import bracket_closure, bracket_subspaces, lower_central_series
from lievec.nilrad import nilradical_series
from lievec.pipeline import adapted_frame, derive_weights, flag_profile, normalize
from lievec.textio import format_field, parse_field
from lievec.vfield import VarContext, VectorField, linear_change


def closure_of(name):
    af = catalog.load(name)
    return bracket_closure(af.generators, ctx=af.ctx)


def jet_to_field(J, ctx):
    """Polynomial vector field with the coefficients of a jet field."""
    n = ctx.n
    zero = (0,) * n
    comps = [ExpPolyCoeff.from_dict(n, {(a, zero, 0, zero): c for a, c in comp.coeffs.items()}) for comp in J.components]
    return VectorField(ctx, comps)


def combine(jets, vec):
    out = None
    for idx, c in vec.items():
        term = jets[idx].scale(c)
        out = term if out is None else out + term
    return out


def independent_checks(cert, L):
    """Re-verify a certified result with the grading module on the jet output."""
    ctx = cert.new_context
    h = cert.weights
    fields = [jet_to_field(J, ctx) for J in cert.normalized]
    bound_mode = "strictNeg" if cert.path == "nilpotent" else "nonPos"
    assert membership(fields, h, bound_mode).ok
    derived = bracket_subspaces(L.whole(), L.whole())
    dfields = [jet_to_field(combine(cert.normalized, row), ctx) for row in derived.rows]
    assert membership(dfields, h, "strictNeg").ok
    for entry in membership(fields, h).entries:
        if entry[1]:
            assert min(entry[1]) >= -h.degree


def frame_is_adapted(cert):
    """Pushed frame field ``k`` has components ``delta_lk`` in every layer up to its own."""
    n = cert.new_context.n
    P = cert.linear_change
    from lievec.linalg import inverse

    Pinv = inverse(P)
    N = cert.jet_order
    layer_end = list(cert.profile.b)
    for k, Y in enumerate(cert.frame):
        J = pushforward(truncate(VectorField(cert.new_context, linear_change(Y, P, Pinv)), N), cert.chart)
        hi = next(b for b in layer_end if b > k)
        for l in range(hi):
            comp = J.components[l]
            want = {(0,) * n: 1} if l == k else {}
            got = {a: c for a, c in comp.coeffs.items() if sum(a) <= J.order}
            if got != want:
                return False
    return True


# -- flag profiles and weights -------------------------------------------------


def test_profile_plane_example():
    L = closure_of("solvable_plane")
    rep = nilradical_series(L)
    prof = flag_profile(rep)
    assert (prof.r, prof.a, prof.b, prof.m, prof.k) == ([1, 3], [1, 1], [1, 2], 2, 3)
    h = derive_weights(prof, VarContext(["y", "x"]))
    assert h.weights == (1, 3)


def test_profile_nilpotent_example():
    L = closure_of("nilpotent_height3")
    prof = flag_profile(lower_central_series(L))
    assert prof.r == [1, 3] and prof.a == [1, 1]


def test_profile_line():
    prof = flag_profile(nilradical_series(closure_of("line_affine")))
    assert prof.r == [1] and prof.a == [1]


def test_weights_examples():
    from lievec.pipeline import FlagProfile

    ctx = VarContext(["x", "y", "z", "u"])
    assert derive_weights(FlagProfile([0, 1, 2, 3], [1, 1, 1, 1], [1, 2, 3, 4], 4, 3), ctx).weights == (0, 1, 2, 3)
    assert derive_weights(FlagProfile([1], [4], [4], 1, 1), ctx).weights == (1, 1, 1, 1)


def test_profile_not_transitive():
    ctx = VarContext(["x", "y"])
    L = bracket_closure([parse_field("d_x", ctx), parse_field("y*d_x", ctx)])
    with pytest.raises(NotTransitive):
        flag_profile(nilradical_series(L))


def test_frames():
    L = closure_of("solvable_plane")
    rep = nilradical_series(L)
    fr = adapted_frame(L, rep)
    assert [format_field(Y) for Y in fr.fields] == ["d_y", "d_x"]
    L = closure_of("nilpotent_height3")
    fr = adapted_frame(L, lower_central_series(L))
    assert [format_field(Y) for Y in fr.fields] == ["d_y", "d_x"]
    ab = bracket_closure([parse_field(t, VarContext(["x", "y"])) for t in ("d_x", "d_y")])
    assert [format_field(Y) for Y in adapted_frame(ab, lower_central_series(ab)).fields] == ["d_x", "d_y"]


# -- normalization -------------------------------------------------------------


def test_normalize_plane_example():
    L = closure_of("solvable_plane")
    cert = normalize(L)
    assert cert.status == "certified"
    assert cert.weights.as_dict() == {"y": 1, "x": 3}
    assert cert.degree_table() == {"d_x": -3, "d_y": -1, "x*d_x": 0, "y*d_y": 0, "y^2*d_x": -1, "y*d_x": -2}
    assert cert.zero_part_commutes and cert.shape_ok
    assert all(len(c.coeffs) == 1 for c in cert.chart.components)
    independent_checks(cert, L)


def test_normalize_nilpotent_example():
    L = closure_of("nilpotent_height3")
    cert = normalize(L)
    assert cert.status == "certifiedNilpotent"
    assert cert.weights.as_dict() == {"y": 1, "x": 3}
    assert all(d <= -1 for d in cert.degree_table().values())
    independent_checks(cert, L)


def test_normalize_abelian_identity_chart():
    ctx = VarContext(["x", "y"])
    L = bracket_closure([parse_field(t, ctx) for t in ("d_x", "d_y")])
    cert = normalize(L)
    assert cert.certified and cert.weights.weights == (1, 1)
    assert [c.coeffs for c in cert.chart.components] == [{(1, 0): 1}, {(0, 1): 1}]


def test_normalize_exp_trig():
    L = closure_of("exp_trig")
    cert = normalize(L)
    assert cert.status == "certified"
    assert cert.weights.as_dict() == {"x": 0, "y": 1, "z": 2, "u": 3}
    derived = bracket_subspaces(L.whole(), L.whole())
    assert derived.dim == 15
    independent_checks(cert, L)
    assert cert.exact_fields is not None


def test_normalize_rejects():
    ctx = VarContext(["y"])
    sl2 = bracket_closure([parse_field(t, ctx) for t in ("d_y", "y*d_y", "y^2*d_y")])
    with pytest.raises(NotSolvable):
        normalize(sl2)
    with pytest.raises(NotTransitive):
        normalize(bracket_closure([parse_field("y*d_y", ctx)]))


def test_order_too_low_is_reported():
    cert = normalize(closure_of("solvable_plane"), jet_order=2)
    assert cert.status == "failed"
    assert any(f.startswith("OrderTooLow") for f in cert.failures)


def test_certificate_json_shape():
    js = normalize(closure_of("solvable_plane")).to_json()
    assert list(js)[:4] == ["status", "reason", "path", "strategy"]
    assert js["profile"] == {"r": [1, 3], "a": [1, 1], "b": [1, 2], "m": 2, "k": 3}


def _random_graded(rng, seed):
    n = rng.randint(1, 3)
    names = ["x", "y", "z"][:n]
    w = sorted(rng.randint(0, 3) for _ in range(n))
    if not any(w):
        w[-1] = 1
    h = Dilation(VarContext(names), w)
    return h, random_solvable(h, seed, cap=24)


def _weights_match_dims(cert, rep):
    """``#{weights >= i}`` reproduces the origin dimensions of the series."""
    w = cert.weights.weights
    for pos, d in enumerate(rep.dims_at_origin):
        i = rep.start_index + pos
        if i == 0 and rep.start_index == 0:
            continue
        if sum(1 for x in w if x >= i) != d:
            return False
    return True


def test_random_round_trip():
    rng = random.Random(99)
    count = 0
    seed = 0
    while count < 25:
        seed += 1
        try:
            h, L = _random_graded(rng, seed)
        except Exception:
            continue
        cert = normalize(L)
        assert cert.certified, cert.reason
        rep = nilradical_series(L) if cert.path == "solvable" else lower_central_series(L)
        assert _weights_match_dims(cert, rep)
        independent_checks(cert, L)
        assert frame_is_adapted(cert)
        count += 1


def _shear(rng, n):
    """Triangular polynomial diffeomorphism and its exact inverse."""
    p = []
    for i in range(n):
        f = ExpPolyCoeff.zero(n)
        for _ in range(rng.randint(0, 2) if i else 0):
            alpha = [0] * n
            for _ in range(rng.randint(2, 3)):
                alpha[rng.randrange(i)] += 1
            f = f + ExpPolyCoeff.monomial(n, alpha, rng.choice([-1, 1, 2]))
        p.append(f)
    phi = [ExpPolyCoeff.var(n, i) + p[i] for i in range(n)]
    psi = []
    for i in range(n):
        sub = psi + [ExpPolyCoeff.var(n, j) for j in range(i, n)]
        psi.append(ExpPolyCoeff.var(n, i) - p[i].substitute(sub))
    assert [f.substitute(psi) for f in phi] == [ExpPolyCoeff.var(n, i) for i in range(n)]
    return phi, psi


def _push_exact(X, phi, psi):
    n = X.ctx.n
    comps = []
    for i in range(n):
        acc = ExpPolyCoeff.zero(n)
        for j in range(n):
            if X.components[j]:
                acc = acc + phi[i].partial(j) * X.components[j]
        comps.append(acc.substitute(psi))
    return VectorField(X.ctx, comps)


def normalize_raising_order(L, limit=24):
    """Rerun with a doubled jet order while the only complaint is OrderTooLow."""
    cert = normalize(L)
    while not cert.certified and all(f.startswith("OrderTooLow") for f in cert.failures) and cert.jet_order < limit:
        cert = normalize(L, jet_order=2 * cert.jet_order)
    return cert


def test_distorted_charts_certify():
    rng = random.Random(7)
    done = 0
    seed = 100
    while done < 15:
        seed += 1
        n = rng.randint(2, 3)
        ctx = VarContext(["x", "y", "z"][:n])
        w = sorted(rng.randint(1, 3) for _ in range(n))
        try:
            L0 = random_solvable(Dilation(ctx, w), seed, cap=20)
        except Exception:
            continue
        phi, psi = _shear(rng, n)
        L = bracket_closure([_push_exact(X, phi, psi) for X in L0.basis], ctx=ctx)
        assert L.dim == L0.dim
        cert = normalize_raising_order(L)
        assert cert.certified, cert.reason
        independent_checks(cert, L)
        assert frame_is_adapted(cert)
        before = normalize(L0)
        assert sorted(before.weights.weights) == sorted(cert.weights.weights)
        done += 1


def test_nonlinear_chart_example():
    ctx = VarContext(["x", "y"])
    L0 = closure_of("solvable_plane")
    phi = [ExpPolyCoeff.var(2, 0), ExpPolyCoeff.var(2, 1) + ExpPolyCoeff.monomial(2, (2, 0))]
    psi = [ExpPolyCoeff.var(2, 0), ExpPolyCoeff.var(2, 1) - ExpPolyCoeff.monomial(2, (2, 0))]
    L = bracket_closure([_push_exact(X, phi, psi) for X in L0.basis], ctx=ctx)
    cert = normalize(L)
    assert cert.certified
    assert any(sum(a) >= 2 for c in cert.chart.components for a in c.coeffs)
    assert frame_is_adapted(cert)


def test_flows_strategy_agrees():
    for name in ("solvable_plane", "nilpotent_height3", "heisenberg", "exp_trig"):
        L = closure_of(name)
        a = normalize(L)
        b = normalize(L, strategy="flows")
        assert b.certified
        assert a.weights == b.weights
        assert a.degree_table() == b.degree_table()


def test_weights_depend_only_on_origin_dims():
    ctx = VarContext(["x", "y"])
    A = closure_of("solvable_plane")
    B = bracket_closure([parse_field(t, ctx) for t in ("d_x", "d_y", "y*d_y", "y*d_x", "y^2*d_x")])
    ra, rb = nilradical_series(A), nilradical_series(B)
    if ra.dims_at_origin == rb.dims_at_origin:
        assert sorted(normalize(A).weights.weights) == sorted(normalize(B).weights.weights)


def test_jet_field_round_trip_helper():
    J = JetField.coordinate(2, 3, 1)
    assert format_field(jet_to_field(J, VarContext(["a", "b"]))) == "d_b"
