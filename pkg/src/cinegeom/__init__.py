"""Discretized incidence geometry for families of curves with the pairwise
two-crossing property: tangency rectangles, pseudo-circle lens counting, and
fractal maximal-function scaling experiments."""

__version__ = "0.1.0"

from .curves import (                                      # noqa: F401
    C2Curve,
    CurveFamily,
    Interval,
    SpaceCurve,
    c2_distance,
    cinematic_defect,
    circle_curve,
    circle_family,
    escaping_check,
    family_from_defining_function,
    helix_circle_curve,
    planar_circle_curve,
    projection_family,
    tangency_param,
)
from .fractal import (                                     # noqa: F401
    DeltaSet,
    PointCloud3,
    QuasiProduct,
    build_quasi_product,
    cantor_delta_set,
    cantor_points_3d,
    frostman_check_points,
    random_thin,
    validate_delta_set,
)
from .incidence import (                                   # noqa: F401
    Raster,
    RasterSpec,
    SublevelSet,
    counting_field,
    lp_integral,
    rasterize_neighborhood,
    sublevel_intervals,
    zeros_of_difference,
)
from .rectangles import (                                  # noqa: F401
    CurvRect,
    comparable,
    dilate,
    greedy_incomparable,
    harvest_tangency_rects,
    is_tangent,
    make_rect,
)
from .lenses import (                                      # noqa: F401
    Lens,
    PseudoCircle,
    certify_proper,
    enumerate_lenses,
    extend_to_pseudocircles,
    max_nonoverlapping,
    overlap,
    perturb,
)
