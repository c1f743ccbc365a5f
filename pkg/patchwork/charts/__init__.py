__all__ = [
    "Chart", "GluedComplex", "side_normal",
    "trinomial_chart", "quasihomogeneous_chart", "quasihomogeneous_roots", "chart_of_polynomial", "is_completely_nondegenerate", "is_peripherally_nondegenerate",
    "adjoin_side", "affine_topology", "projective_topology",
    "patchwork_charts", "chart_of_triangulation",
]

from .chart import Chart, GluedComplex, side_normal
from .constructors import trinomial_chart, quasihomogeneous_chart, quasihomogeneous_roots, chart_of_polynomial, is_completely_nondegenerate, is_peripherally_nondegenerate
from .algorithms import adjoin_side, affine_topology, projective_topology
from .gluing import patchwork_charts, chart_of_triangulation
