"""From a transitive solvable algebra of vector fields to a certified dilation.

The steps are: a characteristic series, its flag profile (where the
dimensions at the origin drop), the induced weights, an adapted frame of
fields from the series, a jet-level chart in which the frame is
``d_{y^k}`` modulo deeper flags, and a degree check of every basis field
pushed into that chart.

Charts are built leaf by leaf. For the block of layer ``j`` the functions
``y^l`` satisfy ``Y_s(y^l) = delta_{sl}`` for frame fields of the layer,
``Y_s(y^l) = 0`` for frame fields of deeper layers, and vanish on the
orbit of the earlier frame fields through the origin. The system is solved
in flow coordinates ``x = exp(eta_1 Y_1) ... exp(eta_n Y_n)(0)``, where
that orbit is the coordinate plane ``{eta_s = 0 for s in layer >= j}``.
Solving degree by degree is the jet form of integrating the dual closed
1-forms along the leaves; an inconsistency is reported as
:class:`NotClosedForm`.
"""

from dataclasses import dataclass, field

from ._rational import ONE, ZERO, Q, qstr
from .coeffring import ExpPolyCoeff
from .errors import NotClosedForm, NotSolvable, NotTransitive, PreconditionError, SingularJetMap
from .grading import Dilation
from .jets import (
    JetField,
    JetFunction,
    JetMap,
    _deg,
    apply_field,
    compose,
    invert,
    jet_bracket,
    pushforward,
    truncate,
)
from .liealg import is_transitive_at_origin, lower_central_series, _origin_vector
from .linalg import Echelon, inverse
from .nilrad import nilradical_series
from .vfield import VarContext, VectorField, apply_derivation, linear_change


@dataclass
class FlagProfile:
    r: list
    a: list
    b: list
    m: int
    k: int
    kind: str = "nilradical"

    def to_json(self):
        return {"r": list(self.r), "a": list(self.a), "b": list(self.b), "m": self.m, "k": self.k}


def flag_profile(series, n=None):
    """Drops of the origin dimensions of a series that reaches zero."""
    D = list(series.dims_at_origin)
    if n is None:
        n = series.chain[0].parent.ctx.n
    if D[0] != n:
        raise NotTransitive(f"first series term spans a {D[0]}-dimensional subspace at the origin, need {n}")
    if not series.reaches_zero:
        raise NotSolvable(f"{series.kind} series does not reach zero")
    if D[-1] != 0:
        D.append(0)
    s0 = series.start_index
    r, a = [], []
    for pos in range(len(D) - 1):
        if D[pos + 1] < D[pos]:
            r.append(s0 + pos)
            a.append(D[pos] - D[pos + 1])
    b = []
    total = 0
    for x in a:
        total += x
        b.append(total)
    return FlagProfile(r, a, b, len(r), series.height, series.kind)


def derive_weights(profile, ctx):
    """Weight ``r_j`` on the ``j``-th block of ``a_j`` variables of ``ctx``."""
    weights = []
    for rj, aj in zip(profile.r, profile.a):
        weights.extend([rj] * aj)
    return Dilation(ctx, weights)


@dataclass
class AdaptedFrame:
    fields: list  # VectorField, grouped by layer
    layers: list  # list of (start, stop) index ranges

    def origin_matrix(self):
        """Columns are the origin values of the frame fields."""
        n = len(self.fields)
        cols = [Y.eval_origin() for Y in self.fields]
        return [[cols[k][i] for k in range(n)] for i in range(n)]


def adapted_frame(L, series, profile=None):
    """Greedy choice of layer fields whose origin values extend the next flag step.

    Candidates are tried in a fixed order: constant fields of the basis,
    then the other basis elements lying in the series term, then its
    reduced basis; within each group the input order wins.
    """
    n = L.ctx.n
    if profile is None:
        profile = flag_profile(series, n)
    fields, layers = [], []
    start = 0
    for rj, aj in zip(profile.r, profile.a):
        ech = Echelon(track=False)
        for X in series.term(rj + 1).fields() if rj + 1 - series.start_index < len(series.chain) else []:
            ech.insert(_origin_vector(X))
        picked = 0
        I = series.term(rj)
        members = [X for i, X in enumerate(L.basis) if I.contains({i: ONE})]
        constant = [X for X in members if all(c.total_degree() <= 0 and c.is_polynomial() for c in X.components)]
        for X in constant + members + I.fields():
            if picked == aj:
                break
            if ech.insert(_origin_vector(X)):
                fields.append(X)
                picked += 1
        if picked != aj:
            raise NotTransitive(f"could not complete layer at series index {rj}")
        layers.append((start, start + aj))
        start += aj
    return AdaptedFrame(fields, layers)


def _new_names(ctx, P):
    n = ctx.n
    used = set()
    names = []
    for k in range(n):
        col = [P[i][k] for i in range(n)]
        nz = [i for i, v in enumerate(col) if v]
        if len(nz) == 1 and col[nz[0]] == 1 and ctx.names[nz[0]] not in used:
            names.append(ctx.names[nz[0]])
        else:
            names.append(None)
        used.add(names[-1])
    taken = set(ctx.names)
    for k in range(n):
        if names[k] is None:
            cand = f"y{k + 1}"
            while cand in taken or cand in used:
                cand = "n" + cand
            names[k] = cand
            used.add(cand)
    return VarContext(names)


def build_chart(frame_jets, layers, order):
    """Jet chart ``y = m(xi)`` for frame jets with ``Y_s(0) = e_s``.

    ``frame_jets[s]`` is the jet field of frame element ``s`` in the
    linearly adapted coordinates ``xi``.
    """
    n = len(frame_jets)
    comps = [None] * n
    for lo, hi in layers:
        D = list(range(lo, n))
        for l in range(lo, hi):
            y = JetFunction.zero(n, order)
            for k in range(order):
                new = {}
                gs = {}
                for s in D:
                    val = apply_field(frame_jets[s], y)
                    g = {a: -c for a, c in val.coeffs.items() if _deg(a) == k}
                    if k == 0 and s == l:
                        z = (0,) * n
                        g[z] = g.get(z, ZERO) + ONE
                        if not g[z]:
                            del g[z]
                    gs[s] = g
                for s in D:
                    for gamma, c in gs[s].items():
                        beta = list(gamma)
                        beta[s] += 1
                        first = next(t for t in D if beta[t])
                        if first == s:
                            new[tuple(beta)] = c / beta[s]
                yk = JetFunction(n, order, new)
                for s in D:
                    dk = yk.partial(s)
                    if dk.coeffs != gs[s]:
                        raise NotClosedForm(f"leafwise system for chart coordinate {l} is inconsistent at degree {k + 1}")
                y = y + yk
            comps[l] = y.with_order(order)
    chart = JetMap(comps)
    ident = JetMap.identity(n, order)
    if chart.linear_matrix() != ident.linear_matrix():
        raise SingularJetMap("chart linear part is not the identity")
    return chart


def _flow_coefficients(Y, i, order):
    """``Y^s(x^i) / s!`` for ``s <= order``, computed exactly in the ring."""
    n = Y.ctx.n
    f = ExpPolyCoeff.var(n, i)
    out = [f]
    fact = 1
    for s in range(1, order + 1):
        f = apply_derivation(Y, f)
        fact *= s
        out.append(f.scale(Q(1, fact)))
    return out


def flow_map(frame_fields, order):
    """Jet of ``eta -> exp(eta_1 Y_1) ... exp(eta_n Y_n)(0)``."""
    n = len(frame_fields)
    p = JetMap([JetFunction.zero(n, order) for _ in range(n)])
    for k in range(n - 1, -1, -1):
        Y = frame_fields[k]
        xi_pows = [JetFunction.const(n, order, 1)]
        for _ in range(order):
            xi_pows.append(xi_pows[-1] * JetFunction.var(n, order, k))
        comps = []
        for i in range(n):
            acc = JetFunction.zero(n, order)
            for s, c in enumerate(_flow_coefficients(Y, i, order)):
                if c:
                    acc = acc + (compose(truncate(c, order), p) * xi_pows[s]).with_order(order)
            comps.append(acc.with_order(order))
        p = JetMap(comps)
    return p


def build_flow_chart(frame_fields, order):
    """Chart inverse to :func:`flow_map`."""
    return invert(flow_map(frame_fields, order))


def build_leaf_chart(frame_fields, layers, order):
    """Leafwise chart of :func:`build_chart`, solved in flow coordinates."""
    p = flow_map(frame_fields, order + 1)
    pinv = invert(p)
    frame_eta = [pushforward(truncate(Y, order + 1), pinv, p) for Y in frame_fields]
    y = build_chart(frame_eta, layers, order)
    return JetMap([compose(c, pinv).with_order(order) for c in y.components])


def jet_term_degrees(X, weights):
    """``{degree: True}`` for every term of a jet field."""
    degs = set()
    for i, comp in enumerate(X.components):
        for alpha in comp.coeffs:
            degs.add(sum(w * a for w, a in zip(weights, alpha)) - weights[i])
    return degs


def jet_degree_part(X, weights, d):
    comps = []
    for i, comp in enumerate(X.components):
        keep = {a: c for a, c in comp.coeffs.items() if sum(w * x for w, x in zip(weights, a)) - weights[i] == d}
        comps.append(JetFunction(comp.n, comp.order, keep))
    return JetField(comps)


def _combine(jets, vec, n, order):
    comps = [JetFunction.zero(n, order) for _ in range(n)]
    for idx, c in vec.items():
        for i in range(n):
            comps[i] = comps[i] + jets[idx].components[i].scale(c)
    return JetField(comps)


@dataclass
class NormalizationCertificate:
    path: str
    profile: FlagProfile
    weights: Dilation
    original: VarContext
    linear_change: list  # P with x = P xi
    chart: JetMap
    jet_order: int
    frame: list
    per_basis_degrees: list  # (field text, max degree or None)
    series_degree_bounds: list  # (index, dim, max degree or None)
    zero_part_commutes: bool
    shape_ok: object
    status: str
    reason: str = None
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    normalized: list = field(default_factory=list)  # JetField per basis element
    exact_fields: list = None  # VectorField per basis element when an exact chart inverse is known
    strategy: str = "forms"

    @property
    def certified(self):
        return self.status in ("certified", "certifiedNilpotent")

    @property
    def new_context(self):
        return self.weights.ctx

    def degree_table(self):
        return {label: d for label, d in self.per_basis_degrees}

    def to_json(self):
        names = list(self.new_context.names)
        return {
            "status": self.status,
            "reason": self.reason,
            "path": self.path,
            "strategy": self.strategy,
            "profile": self.profile.to_json(),
            "weights": {nm: w for nm, w in zip(names, self.weights.weights)},
            "originalVariables": list(self.original.names),
            "newVariables": names,
            "linearChange": [[qstr(v) for v in row] for row in self.linear_change],
            "jetOrder": self.jet_order,
            "chart": [c.to_json() for c in self.chart.components],
            "frame": [str(Y) for Y in self.frame],
            "perBasisDegrees": [{"field": f, "maxDegree": d} for f, d in self.per_basis_degrees],
            "seriesDegreeBounds": [
                {"index": j, "dim": dim, "maxDegree": d} for j, dim, d in self.series_degree_bounds
            ],
            "zeroPartCommutes": self.zero_part_commutes,
            "shapeCheck": self.shape_ok,
            "failures": list(self.failures),
            "notes": list(self.notes),
            "assumption": "spanning is checked at the origin and to the stated jet order",
            "normalizedFields": [[c.format(names) for c in X.components] for X in self.normalized],
        }


def _exact_polynomial_chart(m, n):
    """Exact polynomial inverse of a polynomial jet chart, if one exists at modest degree."""
    polys = [ExpPolyCoeff.from_dict(n, {(a, (0,) * n, 0, (0,) * n): c for a, c in comp.coeffs.items()}) for comp in m.components]
    deg = max((p.total_degree() for p in polys), default=1)
    ident = [ExpPolyCoeff.var(n, i) for i in range(n)]
    for K in (m.order, 2 * m.order, 4 * m.order):
        exact = JetMap([comp.with_order(K) for comp in m.components])
        g = invert(exact)
        gp = [ExpPolyCoeff.from_dict(n, {(a, (0,) * n, 0, (0,) * n): c for a, c in comp.coeffs.items()}) for comp in g.components]
        if [p.substitute(gp) for p in polys] == ident:
            return polys, gp
        if deg <= 1:
            break
    return None


def _exact_fields(fields_xi, m, new_ctx, chart_linear):
    n = new_ctx.n
    if chart_linear:
        return [VectorField(new_ctx, comps) for comps in fields_xi]
    if not all(c.is_polynomial() for comps in fields_xi for c in comps):
        return None
    res = _exact_polynomial_chart(m, n)
    if res is None:
        return None
    polys, gp = res
    out = []
    for comps in fields_xi:
        new = []
        for i in range(n):
            acc = ExpPolyCoeff.zero(n)
            for j in range(n):
                if comps[j]:
                    acc = acc + polys[i].partial(j) * comps[j]
            new.append(acc.substitute(gp))
        out.append(VectorField(new_ctx, new))
    return out


def _select_path(L, path):
    lcs = lower_central_series(L)
    if path == "auto":
        path = "nilpotent" if lcs.reaches_zero else "solvable"
    if path == "nilpotent":
        if not lcs.reaches_zero:
            raise PreconditionError("nilpotent path requested for a non-nilpotent algebra")
        return path, lcs
    if path == "solvable":
        return path, nilradical_series(L)
    raise ValueError(f"unknown path {path!r}")


def normalize(L, jet_order=None, path="auto", strategy="forms"):
    """Run the full pipeline and return a :class:`NormalizationCertificate`."""
    ctx = L.ctx
    n = ctx.n
    if not is_transitive_at_origin(L):
        raise NotTransitive("the algebra does not span the tangent space at the origin")
    path, series = _select_path(L, path)
    profile = flag_profile(series, n)
    frame = adapted_frame(L, series, profile)
    P = frame.origin_matrix()
    Pinv = inverse(P)
    if Pinv is None:
        raise SingularJetMap("frame values at the origin are dependent")
    new_ctx = _new_names(ctx, P)
    h = derive_weights(profile, new_ctx)
    w = h.weights
    N = jet_order if jet_order is not None else 2 * (h.degree + 1)
    if N < 2:
        raise ValueError("jet order must be at least 2")

    frame_xi = [VectorField(new_ctx, linear_change(Y, P, Pinv)) for Y in frame.fields]
    if strategy == "forms":
        chart = build_leaf_chart(frame_xi, frame.layers, N)
    elif strategy == "flows":
        chart = build_flow_chart(frame_xi, N)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    chart_inv = invert(chart)

    fields_xi = [linear_change(X, P, Pinv) for X in L.basis]
    pushed = [pushforward(truncate(VectorField(new_ctx, comps), N), chart, chart_inv) for comps in fields_xi]
    out_order = N - 1

    failures, notes = [], []
    if path == "solvable":
        if profile.r[0] == 0:
            notes.append(f"first flag step r1 = 0: {profile.a[0]} zero-weight variable(s) carry the non-polynomial coefficients")
        else:
            notes.append(f"first flag step r1 = {profile.r[0]}: no zero-weight variables")
    pos = [i for i in range(n) if w[i] > 0]
    for X, J in zip(L.basis, pushed):
        for comp in J.components:
            for a in comp.coeffs:
                if pos and sum(a[i] for i in pos) >= out_order:
                    failures.append(f"OrderTooLow: {X} has a term of weighted degree {sum(a[i] for i in pos)} at jet order {N}")
                    break
            else:
                continue
            break

    per_basis = []
    bound = -1 if path == "nilpotent" else 0
    for X, J in zip(L.basis, pushed):
        degs = jet_term_degrees(J, w)
        mx = max(degs) if degs else None
        per_basis.append((str(X), mx))
        if mx is not None and mx > bound:
            failures.append(f"degree: {X} has degree {mx} > {bound}")
        if degs and min(degs) < -h.degree:
            failures.append(f"degree: {X} has degree {min(degs)} below -w(h)")

    bounds = []
    for pos_idx, I in enumerate(series.chain):
        j = series.start_index + pos_idx
        if j < 1 or not I.dim:
            continue
        mx = None
        for row in I.rows:
            J = _combine(pushed, row, n, out_order)
            degs = jet_term_degrees(J, w)
            if degs:
                mx = max(degs) if mx is None else max(mx, max(degs))
        bounds.append((j, I.dim, mx))
        if mx is not None and mx > -j:
            failures.append(f"series: term {j} reaches degree {mx} > {-j}")

    zero_parts = [jet_degree_part(J, w, 0) for J in pushed]
    zero_parts = [Z for Z in zero_parts if any(c for c in Z.components)]
    commutes = True
    for i in range(len(zero_parts)):
        for j in range(i + 1, len(zero_parts)):
            B = jet_bracket(zero_parts[i], zero_parts[j])
            if any(a for comp in B.components for a in comp.coeffs if _deg(a) <= out_order - 1):
                commutes = False
    if not commutes:
        failures.append("zeroPart: degree-zero parts do not commute")

    shape_ok = None
    if path == "solvable":
        shape_ok = _shape_check(pushed, series, profile, n, out_order)
        if not shape_ok:
            failures.append("shape: normalized fields are not affine in the last block")

    if failures:
        status, reason = "failed", failures[0]
    else:
        status = "certifiedNilpotent" if path == "nilpotent" else "certified"
        reason = None

    chart_linear = all(_deg(a) == 1 for comp in chart.components for a in comp.coeffs)
    exact = _exact_fields(fields_xi, chart, new_ctx, chart_linear)
    return NormalizationCertificate(
        path=path,
        profile=profile,
        weights=h,
        original=ctx,
        linear_change=P,
        chart=chart,
        jet_order=N,
        frame=frame.fields,
        per_basis_degrees=per_basis,
        series_degree_bounds=bounds,
        zero_part_commutes=commutes,
        shape_ok=shape_ok,
        status=status,
        reason=reason,
        failures=failures,
        notes=notes,
        normalized=pushed,
        exact_fields=exact,
        strategy=strategy,
    )


def _shape_check(pushed, series, profile, n, order):
    """Last-block components affine in the last block, the rest independent of it."""
    lo = profile.b[-2] if profile.m > 1 else 0
    B = range(lo, n)

    def blockdeg(a):
        return sum(a[i] for i in B)

    for J in pushed:
        for i, comp in enumerate(J.components):
            limit = 1 if i >= lo else 0
            if any(blockdeg(a) > limit for a in comp.coeffs):
                return False
    if len(series.chain) > 1 and series.start_index == 0:
        for row in series.chain[1].rows:
            J = _combine(pushed, row, n, order)
            for i in B:
                if any(blockdeg(a) for a in J.components[i].coeffs):
                    return False
    return True


__all__ = [
    "FlagProfile",
    "flag_profile",
    "derive_weights",
    "AdaptedFrame",
    "adapted_frame",
    "build_chart",
    "build_flow_chart",
    "build_leaf_chart",
    "flow_map",
    "NormalizationCertificate",
    "normalize",
    "jet_term_degrees",
    "jet_degree_part",
]
