"""Exponential-generator witnesses for coefficient functions.

For a zero-weight direction ``x`` the derivatives ``d^s f / dx^s`` of a
family of ring elements span a finite-dimensional space, so some monic
combination ``sum c_s d^s f = 0`` holds for every member at once. The
roots of ``sum c_s t^s`` are the exponents that can occur; each
coefficient is then re-expanded exactly as a product of coordinates and
the exponentials (or exp/cos/sin pairs) those roots name.
"""

from dataclasses import dataclass, field

import sympy

from ._rational import ONE, ZERO, Q, q, qstr
from .coeffring import NONE, SIN, ExpPolyCoeff
from .errors import BoundExceeded, NotCertified
from .linalg import Echelon
from .textio import format_coeff


@dataclass
class Recurrence:
    direction: int
    family: list
    coefficients: list  # c_0, ..., c_order with c_order = 1

    @property
    def order(self):
        return len(self.coefficients) - 1

    def to_json(self):
        return {"direction": self.direction, "order": self.order, "coefficients": [qstr(c) for c in self.coefficients]}


def _family_vector(fs):
    return {(idx, key): c for idx, f in enumerate(fs) for key, c in f.terms}


def _default_bound(fs, i):
    total = 0
    for f in fs:
        for (alpha, _lam, kind, _mu), _c in f.terms:
            total += (alpha[i] + 1) * (2 if kind != NONE else 1)
    return total + 1


def iterated_derivative_recurrence(fs, i, bound=None):
    """Minimal monic recurrence ``sum_s c_s d_i^s f = 0`` shared by the family."""
    fs = [f for f in fs]
    if not fs:
        raise ValueError("need a nonempty family")
    if bound is None:
        bound = _default_bound(fs, i)
    ech = Echelon(track=True)
    cur = fs
    for s in range(bound + 1):
        vec = _family_vector(cur)
        rem, combo = ech.reduce(vec)
        if not rem:
            coeffs = [ZERO] * (s + 1)
            for idx, c in combo.items():
                coeffs[idx] = -c
            coeffs[s] = ONE
            return Recurrence(i, fs, coeffs)
        ech.insert(vec)
        cur = [f.partial(i) for f in cur]
    raise BoundExceeded(f"derivative rank still grows at order {bound}")


def check_recurrence(rec):
    """Exact ring check that the recurrence annihilates the family."""
    for f in rec.family:
        total = ExpPolyCoeff.zero(f.n)
        d = f
        for c in rec.coefficients:
            if c:
                total = total + d.scale(c)
            d = d.partial(rec.direction)
        if total:
            return False
    return True


@dataclass
class Generator:
    re: object
    im: object
    multiplicity: int

    @property
    def is_pair(self):
        return bool(self.im)

    def to_json(self):
        if self.is_pair:
            return {"pair": [qstr(self.re), qstr(self.im)], "multiplicity": self.multiplicity}
        return {"lambda": qstr(self.re), "multiplicity": self.multiplicity}


@dataclass
class SpectrumReport:
    polynomial: list  # rational coefficients, constant first
    factors: list  # (coefficients constant first, multiplicity)
    generators: list
    unresolved: list

    def to_json(self):
        return {
            "polynomial": [qstr(c) for c in self.polynomial],
            "factors": [{"coefficients": [qstr(c) for c in f], "multiplicity": m} for f, m in self.factors],
            "generators": [g.to_json() for g in self.generators],
            "unresolved": [[qstr(c) for c in f] for f in self.unresolved],
        }


def _to_sympy(c):
    return sympy.Rational(int(c.numerator), int(c.denominator))


def _from_sympy(r):
    r = sympy.Rational(r)
    return Q(int(r.p), int(r.q))


def _rational_sqrt(x):
    if x < 0:
        return None
    num, den = int(x.numerator), int(x.denominator)
    rn, rd = sympy.integer_nthroot(num, 2), sympy.integer_nthroot(den, 2)
    if rn[1] and rd[1]:
        return Q(int(rn[0]), int(rd[0]))
    return None


def spectrum(rec):
    """Factor the characteristic polynomial over the rationals and name its roots."""
    t = sympy.Symbol("t")
    coeffs = rec.coefficients if isinstance(rec, Recurrence) else [q(c) for c in rec]
    poly = sympy.Poly(list(reversed([_to_sympy(c) for c in coeffs])), t, domain="QQ")
    _lead, flist = sympy.factor_list(poly)
    factors, gens, unresolved = [], [], []
    for fac, mult in flist:
        fac = sympy.Poly(fac, t, domain="QQ").monic()
        cs = [_from_sympy(c) for c in reversed(fac.all_coeffs())]
        factors.append((cs, int(mult)))
        deg = len(cs) - 1
        if deg == 1:
            gens.append(Generator(-cs[0], ZERO, int(mult)))
        elif deg == 2:
            c0, c1 = cs[0], cs[1]
            disc = c1 * c1 - 4 * c0
            im = _rational_sqrt(-disc / 4) if disc < 0 else None
            if im is None:
                unresolved.append(cs)
            else:
                gens.append(Generator(-c1 / 2, im, int(mult)))
        else:
            unresolved.append(cs)
    gens.sort(key=lambda g: (g.is_pair, g.re, g.im))
    return SpectrumReport(list(coeffs), factors, gens, unresolved)


# -- re-expansion --------------------------------------------------------------


def _unit(n, i, value):
    v = [ZERO] * n
    v[i] = q(value)
    return v


def generator_pair(n, i, re, im):
    """Real and imaginary parts of ``exp((re + i*im) x_i)`` as ring elements."""
    lam = _unit(n, i, re)
    if not im:
        return ExpPolyCoeff.term(n, 1, lam=lam), ExpPolyCoeff.zero(n)
    mu = _unit(n, i, im)
    return ExpPolyCoeff.term(n, 1, lam=lam, trig="cos", mu=mu), ExpPolyCoeff.term(n, 1, lam=lam, trig="sin", mu=mu)


def _cmul(a, b):
    return a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0]


def _characters(gens):
    out = []
    for g in gens:
        if not g.re and not g.im:
            continue
        out.append((g.re, g.im))
        if g.im:
            out.append((g.re, -g.im))
    return out


def _decompose(target, chars, limit=24):
    """Nonnegative integer combination of ``chars`` equal to ``target``, or None."""
    if target == (ZERO, ZERO):
        return []
    dead = set()

    def rec(idx, rem, depth):
        if rem == (ZERO, ZERO):
            return []
        if idx == len(chars) or depth == 0 or (idx, rem, depth) in dead:
            return None
        c = chars[idx]
        k = 0
        cur = rem
        while k <= depth:
            sub = rec(idx + 1, cur, depth - k)
            if sub is not None:
                return [c] * k + sub
            k += 1
            cur = (cur[0] - c[0], cur[1] - c[1])
        dead.add((idx, rem, depth))
        return None

    return rec(0, target, limit)


def _term_receipt(n, key, coef, directions, chars):
    """Product of generators equal to a single term, checked in the ring, or None."""
    alpha, lam, kind, mu = key
    for i in range(n):
        if i not in directions and (lam[i] or mu[i]):
            return None
    pair = (ExpPolyCoeff.const(n, 1), ExpPolyCoeff.zero(n))
    used = []
    for i in directions:
        combo = _decompose((lam[i], mu[i]), chars[i])
        if combo is None:
            return None
        for re, im in combo:
            pair = _cmul(pair, generator_pair(n, i, re, im))
            used.append((i, re, im))
    part = pair[1] if kind == SIN else pair[0]
    piece = ExpPolyCoeff.term(n, coef, alpha=alpha, lam=lam, trig=kind, mu=mu if kind != NONE else None)
    candidate = ExpPolyCoeff.monomial(n, alpha, coef) * part
    if candidate != piece:
        return None
    return used


@dataclass
class LieWitness:
    directions: list
    recurrences: list
    spectra: list
    generators: list  # display strings
    verdict: str
    reason: str = None
    receipts: list = field(default_factory=list)

    def to_json(self):
        return {
            "verdict": self.verdict,
            "reason": self.reason,
            "directions": list(self.directions),
            "recurrences": [r.to_json() for r in self.recurrences],
            "spectra": [s.to_json() for s in self.spectra],
            "generators": list(self.generators),
            "receipts": list(self.receipts),
        }


def expand_over(fs, directions, gens_by_dir, n, names):
    """Receipts for every term of every function; None entries mark failures."""
    chars = {i: _characters(gens_by_dir[i]) for i in directions}
    receipts = []
    ok = True
    for label, f in fs:
        items = []
        for key, c in f.terms:
            used = _term_receipt(n, key, c, directions, chars)
            if used is None:
                ok = False
                items.append({"term": format_coeff(ExpPolyCoeff.from_dict(n, {key: c}), names), "factors": None})
            else:
                items.append(
                    {
                        "term": format_coeff(ExpPolyCoeff.from_dict(n, {key: c}), names),
                        "factors": [_char_label(n, i, re, im, names) for i, re, im in used],
                    }
                )
        receipts.append({"coefficient": label, "terms": items})
    return ok, receipts


def _char_label(n, i, re, im, names):
    """Text for ``exp((re + i*im) x_i)``."""
    if not im:
        return format_coeff(ExpPolyCoeff.term(n, 1, lam=_unit(n, i, re)), names)
    freq = format_coeff(ExpPolyCoeff.var(n, i).scale(abs(im)), names)
    sign = "+" if im > 0 else "-"
    trig = f"(cos({freq}) {sign} i*sin({freq}))"
    if not re:
        return trig
    return format_coeff(ExpPolyCoeff.term(n, 1, lam=_unit(n, i, re)), names) + "*" + trig


def lie_witness(cert, fields=None):
    """Witness that every coefficient lies in the algebra of coordinates and exponentials."""
    if not cert.certified:
        raise NotCertified(f"normalization failed: {cert.reason}")
    ctx = cert.new_context
    n = ctx.n
    names = list(ctx.names)
    fields = fields if fields is not None else cert.exact_fields
    if fields is None:
        return LieWitness([], [], [], [], "failed", "no exact expression of the fields in the new coordinates")
    directions = [i for i, w in enumerate(cert.weights.weights) if w == 0]
    family = []
    for k, X in enumerate(fields):
        for j, c in enumerate(X.components):
            if c:
                family.append((f"{k}:{names[j]}", c))
    fs = [f for _, f in family]
    recs, specs, gens_by_dir = [], [], {}
    for i in directions:
        rec = iterated_derivative_recurrence(fs, i)
        recs.append(rec)
        sp = spectrum(rec)
        specs.append(sp)
        gens_by_dir[i] = sp.generators
    labels = list(names)
    for i in directions:
        for g in gens_by_dir[i]:
            if not g.re and not g.im:
                continue
            r, s = generator_pair(n, i, g.re, g.im)
            labels.append(format_coeff(r, names))
            if g.im:
                labels.append(format_coeff(s, names))
    ok, receipts = expand_over(family, directions, gens_by_dir, n, names)
    if not ok:
        verdict, reason = "failed", "some coefficient does not re-expand over the generators"
    elif any(sp.unresolved for sp in specs):
        verdict, reason = "witnessedWithUnresolvedFactors", "characteristic polynomial has factors without rational roots"
    else:
        verdict, reason = "witnessed", None
    return LieWitness(directions, recs, specs, labels, verdict, reason, receipts)


def exponential_generators(w):
    """Generators beyond the coordinates."""
    return [g for g in w.generators if any(tok in g for tok in ("exp", "sin", "cos"))]


__all__ = [
    "Recurrence",
    "SpectrumReport",
    "Generator",
    "LieWitness",
    "iterated_derivative_recurrence",
    "check_recurrence",
    "spectrum",
    "lie_witness",
    "expand_over",
    "generator_pair",
    "exponential_generators",
]
