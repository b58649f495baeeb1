"""Random graded algebras, hidden by a polynomial change of coordinates, recovered.

Each algebra is generated graded for a known dilation, then pushed through
a triangular polynomial shear. Normalization derives weights from series
dimensions alone, so they can be smaller than the weights used to build
the algebra. A failure because the jet order is too low is answered by
doubling it.
"""

import random

from lievec.coeffring import ExpPolyCoeff
from lievec.grading import Dilation, random_solvable
from lievec.liealg import bracket_closure
from lievec.pipeline import normalize
from lievec.vfield import VarContext, VectorField

rng = random.Random(0)
ctx = VarContext(["x", "y", "z"])
n = ctx.n
shift = ExpPolyCoeff.monomial(n, (2, 0, 0)) + ExpPolyCoeff.monomial(n, (1, 1, 0), -1)
phi = [ExpPolyCoeff.var(n, 0), ExpPolyCoeff.var(n, 1) + ExpPolyCoeff.monomial(n, (2, 0, 0)), ExpPolyCoeff.var(n, 2) + shift]
psi = [ExpPolyCoeff.var(n, 0), ExpPolyCoeff.var(n, 1) - ExpPolyCoeff.monomial(n, (2, 0, 0))]
psi.append(ExpPolyCoeff.var(n, 2) - shift.substitute(psi + [ExpPolyCoeff.var(n, 2)]))


def shear(X):
    comps = []
    for i in range(n):
        acc = ExpPolyCoeff.zero(n)
        for j in range(n):
            acc = acc + phi[i].partial(j) * X.components[j]
        comps.append(acc.substitute(psi))
    return VectorField(ctx, comps)


for seed in range(1, 9):
    weights = sorted(rng.randint(1, 3) for _ in range(n))
    L0 = random_solvable(Dilation(ctx, weights), seed, cap=30)
    L = bracket_closure([shear(X) for X in L0.basis], ctx=ctx)
    cert = normalize(L)
    while not cert.certified and all(f.startswith("OrderTooLow") for f in cert.failures):
        cert = normalize(L, jet_order=2 * cert.jet_order)
    print(
        f"seed {seed}: built with {weights}, dim {L.dim}, {cert.status} at order {cert.jet_order},"
        f" recovered {cert.weights.as_text()}"
    )
