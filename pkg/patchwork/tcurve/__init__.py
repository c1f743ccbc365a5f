__all__ = [
    "SymmetricComplex", "symmetrize", "extended_sign", "swapped",
    "PLCurve", "ProjectiveComplex", "midline_curve", "projective_quotient", "isotopy_code",
    "IsotopyCode", "OvalNode", "CurveClassifier", "classify_curve", "harnack_bound",
    "TCurve",
]

from .symmetric import SymmetricComplex, symmetrize, extended_sign, swapped
from .curve import PLCurve, ProjectiveComplex, midline_curve, projective_quotient, isotopy_code
from .isotopy import IsotopyCode, OvalNode, CurveClassifier, classify_curve, harnack_bound
from .pipeline import TCurve
