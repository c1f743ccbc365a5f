from __future__ import annotations

import logging
from functools import cached_property
from typing import Any

from ..lattice import SignedTriangulation
from .curve import PLCurve, ProjectiveComplex, midline_curve, projective_quotient
from .isotopy import IsotopyCode, harnack_bound
from .symmetric import SymmetricComplex, symmetrize

logger = logging.getLogger(__name__)


class TCurve:
    """The curve obtained by combinatorial patchworking of a signed triangulation of the triangle of some degree, built lazily stage by stage."""

    def __init__(self, triangulation: SignedTriangulation) -> None:
        self.triangulation = triangulation

    def __repr__(self) -> str:
        return f"{type(self).__name__}(degree={self.degree}, code={self.code.encoding!r})"

    @property
    def degree(self) -> int:
        return max(vertex.i for vertex in self.triangulation.domain)

    @cached_property
    def complex(self) -> SymmetricComplex:
        return symmetrize(self.triangulation)

    @cached_property
    def curve(self) -> PLCurve:
        return midline_curve(self.complex)

    @cached_property
    def quotient(self) -> ProjectiveComplex:
        return projective_quotient(self.complex, self.curve)

    @cached_property
    def code(self) -> IsotopyCode:
        code = self.quotient.isotopy_code()
        logger.info(f"degree {self.degree} T-curve has isotopy code {code.encoding}")
        return code

    @property
    def is_m_curve(self) -> bool:
        """Whether the curve has as many components as a curve of its degree can have."""
        return self.code.components == harnack_bound(self.degree)

    def to_json(self) -> dict[str, Any]:
        return {
            "degree": self.degree,
            "isotopy_code": self.code.to_json(),
            "harnack_bound": harnack_bound(self.degree),
            "crossings": self.quotient.crossings,
            "segments": len(self.curve),
        }
