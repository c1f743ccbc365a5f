__all__ = [
    "SparsePolynomial", "HomogeneousPolynomial", "homogenize",
    "PatchworkFamily", "patchwork_family", "family_from_triangulation",
    "log_map", "quasi_homothety", "moment_map", "log_moment_map",
    "LogEvaluator", "GluedWindows", "NumericPicture", "numeric_isotopy", "asymptote_lines", "asymptote_distance",
    "NumericReport", "verify_patchwork", "verify_family", "combinatorial_code", "sign_mismatch", "DEFAULT_SCHEDULE",
]

from .polynomial import SparsePolynomial, HomogeneousPolynomial, homogenize
from .family import PatchworkFamily, patchwork_family, family_from_triangulation
from .transforms import log_map, quasi_homothety, moment_map, log_moment_map
from .numeric import LogEvaluator, GluedWindows, NumericPicture, numeric_isotopy, asymptote_lines, asymptote_distance
from .verifier import NumericReport, verify_patchwork, verify_family, combinatorial_code, sign_mismatch, DEFAULT_SCHEDULE
