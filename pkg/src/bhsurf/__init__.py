"""Numerical verification of biharmonic surface geometry in homogeneous 3-manifolds."""

from .charts import (
    BCV,
    SOL,
    SPACE_FORM,
    BCVModel,
    ChartPoint,
    CurvatureData,
    FrameField,
    MetricModel,
    SolModel,
    SpaceFormChartModel,
    TangentVector,
    as_point,
    christoffels_at,
    covariant_derivative_at,
    curvature_data,
    frame_field,
    lie_bracket_frame_at,
    make_model,
    metric_at,
    orthonormal_frame_at,
    ricci_at,
    ricci_operator_at,
    riemann_at,
)
from .hopf import (
    HopfInvariants,
    PlaneCurve,
    arclength_reparametrized,
    base_gaussian_curvature,
    base_geodesic_curvature,
    circle_curve,
    circle_for_kg,
    curve_ode_residual,
    fiber_torsion,
    hopf_invariants,
    lift_cylinder,
    line_curve,
)
from .residuals import (
    MINIMAL,
    NOT_BIHARMONIC,
    PROPER_BIHARMONIC,
    BiharmonicResidual,
    Verdict,
    bcv_cmc_residual,
    residual_cmc,
    residual_full,
    sol_cmc_residual,
    verdict,
)
from .suites import SuiteConfig, SuiteReport, run_suite, sweep
from .surfaces import (
    ImmersionJet,
    ShapeReport,
    SurfacePatch,
    coordinate_plane_patch,
    first_fundamental_form,
    geodesic_sphere_patch,
    graph_patch,
    immersion_jet,
    intrinsic_gradient,
    laplace_beltrami,
    plane_patch,
    shape_report,
    unit_normal,
)

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
