"""Exact analysis of finite-dimensional Lie algebras of vector fields.

Coefficients live in the ring of exponential polynomials with rational
data. Generators are closed under brackets and their characteristic series
computed. For a transitive solvable algebra the package derives weights
that make it graded and certifies the grading at jet level; coefficients
are then re-expanded over coordinates and exponentials.
"""

from .coeffring import ExpPolyCoeff
from .conjecture import iterated_derivative_recurrence, lie_witness, spectrum
from .errors import (
    BoundExceeded,
    ContextMismatch,
    DegreeOutOfRange,
    DimensionCapExceeded,
    InternalCertificateFailure,
    LievecError,
    NotCertified,
    NotClosedForm,
    NotGradable,
    NotProjectable,
    NotSolvable,
    NotTransitive,
    ParseError,
    PreconditionError,
    SingularJetMap,
)
from .grading import Dilation, degree_decompose, enumerate_graded, membership, random_solvable, weight_field
from .liealg import (
    Ideal,
    LieAlgebra,
    LieAlgebraVF,
    algebra_report,
    bracket_closure,
    derived_series,
    is_nilpotent,
    is_solvable,
    is_transitive_at_origin,
    lower_central_series,
    quotient_map,
    structure_constants,
)
from .nilrad import nilradical, nilradical_series
from .pipeline import adapted_frame, derive_weights, flag_profile, normalize
from .textio import format_coeff, format_field, load_algebra_file, parse_algebra_file, parse_coeff, parse_field
from .vfield import VarContext, VectorField, bracket

__version__ = "0.1.0"

__all__ = [
    "ExpPolyCoeff",
    "VarContext",
    "VectorField",
    "bracket",
    "parse_field",
    "parse_coeff",
    "format_field",
    "format_coeff",
    "parse_algebra_file",
    "load_algebra_file",
    "LieAlgebra",
    "LieAlgebraVF",
    "Ideal",
    "bracket_closure",
    "structure_constants",
    "derived_series",
    "lower_central_series",
    "is_solvable",
    "is_nilpotent",
    "is_transitive_at_origin",
    "algebra_report",
    "quotient_map",
    "nilradical",
    "nilradical_series",
    "Dilation",
    "weight_field",
    "degree_decompose",
    "membership",
    "enumerate_graded",
    "random_solvable",
    "flag_profile",
    "derive_weights",
    "adapted_frame",
    "normalize",
    "iterated_derivative_recurrence",
    "spectrum",
    "lie_witness",
    "LievecError",
    "PreconditionError",
    "ParseError",
    "ContextMismatch",
    "DimensionCapExceeded",
    "NotProjectable",
    "NotSolvable",
    "NotTransitive",
    "NotGradable",
    "DegreeOutOfRange",
    "SingularJetMap",
    "NotClosedForm",
    "NotCertified",
    "BoundExceeded",
    "InternalCertificateFailure",
]
