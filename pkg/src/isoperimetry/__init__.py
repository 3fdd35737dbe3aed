"""Numerical laboratory for planar isoperimetric inequalities.

Support-function calculus for convex curves, symmetric Minkowski gauges,
Bonnesen functionals and positive-center audits, minimal-width annuli,
the weighted curve-shortening flow, and Monte Carlo verification of the
translative integral-geometry identities.
"""

from .annulus import (
    AnnulusResult,
    RadiiResult,
    certify_alternation,
    inradius,
    minimal_annulus,
    outradius,
    radii,
    relative_support,
)
from .bonnesen import (
    BonnesenReport,
    PositiveCenterAudit,
    bonnesen_value,
    positive_center_audit,
    roots_and_deficit,
    strong_bonnesen_gap,
)
from .flow import (
    FlowConfig,
    FlowState,
    FlowTrace,
    RateReport,
    run,
    stability_dt,
    step,
    verify_rates,
)
from .integral_geometry import (
    ClassifiedSamples,
    MCConfig,
    MCReport,
    RegionTally,
    averaging_balance,
    classify_placements,
    crossing_count,
    mc_crofton,
    mc_euclidean_kinematic,
    mc_translative,
    overlap,
)
from .minkowski import (
    Gauge,
    MinkowskiScalars,
    SymmetryError,
    gauge_euclidean,
    gauge_from_support,
    make_random_gauge,
    minkowski_length,
    mixed_area,
)
from .support_curve import (
    DEFAULT_GRID_N,
    AngleGrid,
    ConvexityError,
    CurveScalars,
    GridMismatchError,
    SupportCurve,
    boundary_point,
    contains_point,
    derivatives,
    evaluate_support,
    make_circle,
    make_ellipse,
    make_random_convex,
    scalars,
    translate,
)

__version__ = "0.1.0"
