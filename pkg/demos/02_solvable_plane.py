"""The six-dimensional solvable algebra in the plane.

Walks through the nilradical series, the flag profile it induces, the
adapted frame and the degree table of the certified normalization. The
degree table is then re-checked with the grading module alone.
"""

from lievec import catalog
from lievec.grading import membership
from lievec.liealg import bracket_closure
from lievec.nilrad import nilradical, nilradical_series
from lievec.pipeline import adapted_frame, flag_profile, normalize
from lievec.textio import format_field

af = catalog.load("solvable_plane")
L = bracket_closure(af.generators, ctx=af.ctx)
print("dim L =", L.dim)
print("nilradical:", [format_field(X) for X in nilradical(L).fields()])

series = nilradical_series(L)
print("nilradical series dims:", series.dims, "at the origin:", series.dims_at_origin)
profile = flag_profile(series)
print("flag profile:", profile.to_json())
print("adapted frame:", [format_field(Y) for Y in adapted_frame(L, series, profile).fields])

cert = normalize(L)
print("status:", cert.status, "| weights:", cert.weights.as_text())
print("degree table:", cert.degree_table())
print("degree-zero parts commute:", cert.zero_part_commutes)

# the certified fields are already polynomial here, so grading can check them directly
rep = membership(cert.exact_fields, cert.weights)
print("independent membership check:", rep.ok, rep.degree_table())
