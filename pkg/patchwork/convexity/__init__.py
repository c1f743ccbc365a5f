__all__ = [
    "ConvexPartition", "HeightFunction", "Infeasible",
    "find_convexifying_heights", "check_convexifies", "convexity_violations", "induced_lattice_heights", "regular_subdivision",
    "SimplexTableau",
]

from .simplex import SimplexTableau
from .heights import ConvexPartition, HeightFunction, Infeasible, find_convexifying_heights, check_convexifies, convexity_violations, induced_lattice_heights
from .subdivision import regular_subdivision
