"""Weights for a nilpotent algebra read off its lower central series.

The algebra spanned by d_x, d_y, y*d_x, y^2*d_x is nilpotent of height 3.
Its lower central series drops in dimension at the origin at steps 1 and 3,
so y gets weight 1 and x gets weight 3, and every field has negative degree.
"""

from lievec import catalog
from lievec.liealg import bracket_closure, lower_central_series
from lievec.pipeline import normalize
from lievec.textio import format_field

af = catalog.load("nilpotent_height3")
L = bracket_closure(af.generators, ctx=af.ctx)

lcs = lower_central_series(L)
print("lower central series dims:", lcs.dims, "height", lcs.height)
for i, I in enumerate(lcs.chain, start=lcs.start_index):
    print(f"  L^{i} =", [format_field(X) for X in I.fields()], "origin dim", I.dim_at_origin())

cert = normalize(L)
print("status:", cert.status)
print("weights:", cert.weights.as_text())
for field, degree in cert.per_basis_degrees:
    print(f"  deg({field}) = {degree}")
