"""Great circle links in the three-sphere.

Construction of the rotation-orbit links covering two-bridge knot and
link complements, machine certification of their fibration and covering
structure, and classification pipelines for two-bridge fractions and
Montesinos data.
"""

from .angles import RationalAngle
from .geom4 import (
    GreatCircle,
    Isometry,
    apply_isometry,
    circle_distance,
    circles_equal,
    circles_intersect,
    gauss_linking_integral,
    great_circle_from_axes,
    linking_number,
    move_to_standard,
    phi_isometry,
    principal_angles,
)
from .greatlink import (
    GreatCircleLink,
    axis_intersections,
    construct_dpq,
    disjointness_report,
    linking_matrix,
    verify_invariance,
)
from .fibration import FibrationCertificate, all_fibrations, fiber_points, fibration_certificate
from .covering import (
    CoveringCertificate,
    LensSpaceData,
    WedgeArcReport,
    covering_certificate,
    verify_free_action,
    wedge_arc_report,
)
from .twobridge import (
    EvenContinuedFraction,
    TwoBridgeFraction,
    VerdictStatus,
    VirtualFibrationVerdict,
    equivalence_class,
    find_pm2_expansion,
    schubert_equivalent,
)
from .twobridge import verdict as twobridge_verdict
from .montesinos import MontesinosLink, OrbifoldBase, classify, orbifold_euler_char
from .montesinos import verdict as montesinos_verdict

__version__ = "0.1.0"

__all__ = [
    "RationalAngle",
    "GreatCircle",
    "Isometry",
    "GreatCircleLink",
    "FibrationCertificate",
    "CoveringCertificate",
    "LensSpaceData",
    "WedgeArcReport",
    "TwoBridgeFraction",
    "EvenContinuedFraction",
    "VerdictStatus",
    "VirtualFibrationVerdict",
    "MontesinosLink",
    "OrbifoldBase",
    "apply_isometry",
    "circle_distance",
    "circles_equal",
    "circles_intersect",
    "gauss_linking_integral",
    "great_circle_from_axes",
    "linking_number",
    "move_to_standard",
    "phi_isometry",
    "principal_angles",
    "axis_intersections",
    "construct_dpq",
    "disjointness_report",
    "linking_matrix",
    "verify_invariance",
    "all_fibrations",
    "fiber_points",
    "fibration_certificate",
    "covering_certificate",
    "verify_free_action",
    "wedge_arc_report",
    "equivalence_class",
    "find_pm2_expansion",
    "schubert_equivalent",
    "twobridge_verdict",
    "montesinos_verdict",
    "classify",
    "orbifold_euler_char",
    "__version__",
]
