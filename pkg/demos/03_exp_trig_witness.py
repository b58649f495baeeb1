"""Exponential generators for an algebra with exp/sin/cos coefficients.

The generators listed in the data file are not closed under brackets:
[d_y, exp(x)*y*d_u] = exp(x)*d_u is new, so the closure has dimension 19.
After normalization x has weight 0, and every coefficient re-expands over
the coordinates together with exp(x), exp(2x), cos(x) and sin(x).
"""

from lievec import catalog
from lievec.conjecture import exponential_generators, lie_witness
from lievec.liealg import bracket_closure, span_reduce
from lievec.nilrad import nilradical_series
from lievec.pipeline import normalize

af = catalog.load("exp_trig")
print("independent generators:", len(span_reduce(af.generators)))
L = bracket_closure(af.generators, ctx=af.ctx)
print("closure dimension:", L.dim)
print("nilradical series dims:", nilradical_series(L).dims)

cert = normalize(L)
print("status:", cert.status, "| weights:", cert.weights.as_text())

w = lie_witness(cert)
print("verdict:", w.verdict)
for rec, sp in zip(w.recurrences, w.spectra):
    print("  recurrence in direction", rec.direction, "coefficients", [str(c) for c in rec.coefficients])
    print("  roots:", [g.to_json() for g in sp.generators])
print("exponential generators:", exponential_generators(w))
print("sample receipt:", w.receipts[4])
