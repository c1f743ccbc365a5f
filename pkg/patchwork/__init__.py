__all__ = [
    "PatchworkError", "InvalidInputError", "SignRuleError", "SingularCurveError", "ChartError", "IncompatiblePartsError", "NotConvexError",
    "LatticePoint", "ConvexPolygon", "Quadrant", "SignedTriangulation", "newton_polygon", "validate_triangulation",
    "ConvexPartition", "HeightFunction", "Infeasible", "find_convexifying_heights", "check_convexifies", "regular_subdivision",
    "TCurve", "IsotopyCode", "classify_curve", "harnack_bound",
    "Chart", "GluedComplex", "trinomial_chart", "quasihomogeneous_chart", "adjoin_side", "affine_topology", "projective_topology", "patchwork_charts",
    "SparsePolynomial", "PatchworkFamily", "patchwork_family", "numeric_isotopy", "verify_patchwork",
    "PatchworkProblem", "build_report", "load_preset",
]

import logging

from .errors import PatchworkError, InvalidInputError, SignRuleError, SingularCurveError, ChartError, IncompatiblePartsError, NotConvexError
from .lattice import LatticePoint, ConvexPolygon, Quadrant, SignedTriangulation, newton_polygon, validate_triangulation
from .convexity import ConvexPartition, HeightFunction, Infeasible, find_convexifying_heights, check_convexifies, regular_subdivision
from .tcurve import TCurve, IsotopyCode, classify_curve, harnack_bound
from .charts import Chart, GluedComplex, trinomial_chart, quasihomogeneous_chart, adjoin_side, affine_topology, projective_topology, patchwork_charts
from .polyval import SparsePolynomial, PatchworkFamily, patchwork_family, numeric_isotopy, verify_patchwork
from .serialization import PatchworkProblem, build_report
from .presets import load_preset

logging.getLogger(__name__).addHandler(logging.NullHandler())
