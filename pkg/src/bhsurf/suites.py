"""Named verification suites and the (m, l) parameter sweep.

Each suite runs a fixed set of checks and returns a report with one record
per check: id, description, the measured residual (or measured value for
lower-bound checks), the tolerance it is compared against, a pass flag, and
the signed margin (positive means the check passed with room to spare).
Reports are deterministic for a fixed seed and configuration; only the
wall-clock duration field varies between runs.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.stats import qmc

from . import reference_tables
from .charts import (
    BCVModel,
    ChartPoint,
    MetricModel,
    SolModel,
    SpaceFormChartModel,
    TangentVector,
    frame_tables,
    metric_at,
    orthonormal_frame_at,
    ricci_at,
)
from .hopf import (
    base_geodesic_curvature,
    circle_curve,
    circle_for_kg,
    fiber_torsion,
    hopf_invariants,
    lift_cylinder,
    line_curve,
)
from .residuals import (
    MINIMAL,
    NOT_BIHARMONIC,
    PROPER_BIHARMONIC,
    bcv_cmc_residual,
    interior_grid,
    residual_cmc,
    residual_full,
    verdict,
)
from .surfaces import (
    SurfacePatch,
    coordinate_plane_patch,
    geodesic_sphere_patch,
    graph_patch,
    immersion_jet,
    intrinsic_gradient,
    laplace_beltrami,
    plane_patch,
    shape_report,
)

__all__ = [
    "SUITE_NAMES",
    "TABLE_SETTINGS",
    "HOPF_SETTINGS",
    "CheckRecord",
    "SuiteConfig",
    "SuiteReport",
    "run_suite",
    "sweep",
    "sample_points",
    "sol_slice_cylinder",
    "sphere_mean_curvature",
]

SUITE_NAMES = (
    "geometry-tables",
    "hopf-circle",
    "sol-cmc",
    "sphere-in-s3",
    "umbilical-codazzi",
    "full",
)

# (m, l) settings of the table checks; chosen to cover flat, product-like,
# twisted and negatively curved members of the family.
TABLE_SETTINGS = ((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (1.0, 2.0), (0.25, 0.0), (-0.125, 0.0))

# (m, l) settings of the proper-biharmonic cylinder checks.
HOPF_SETTINGS = ((1.0, 0.0), (1.0, 1.0), (1.0, math.sqrt(2.0)), (0.25, 0.0))


@dataclass(frozen=True)
class SuiteConfig:
    """Tolerances, grids and sampling configuration echoed into reports."""

    table_grid: int = 5
    surface_grid: tuple[int, int] = (3, 3)
    n_sample_points: int = 100
    tol_tables: float = 1e-8
    tol_residual: float = 1e-6
    tol_frame: float = 1e-10
    tol_compat: float = 1e-7
    tol_h_symmetry: float = 1e-7
    tol_torsion: float = 1e-7
    tol_invariants: float = 1e-6
    tol_torsion_fiber: float = 1e-9
    tol_radius: float = 1e-9
    tol_minimal_h: float = 1e-8
    tol_grad_h: float = 1e-5
    tol_codazzi: float = 1e-6
    reject_floor: float = 0.5
    perturbed_floor: float = 1e-2
    margin_floor: float = 1e-3
    step: float = 1e-3
    fd_step: float = 1e-4
    seed: int = 0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["surface_grid"] = list(self.surface_grid)
        return d


@dataclass(frozen=True)
class CheckRecord:
    """One verification check: measured residual against its tolerance."""

    id: str
    desc: str
    residual: float
    tol: float
    passed: bool
    margin: float

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "desc": self.desc,
            "residual": self.residual,
            "tol": self.tol,
            "pass": self.passed,
            "margin": self.margin,
        }


def _upper(check_id: str, desc: str, residual: float, tol: float, ok: bool = True) -> CheckRecord:
    """Check that passes when residual <= tol (and any extra condition holds)."""
    residual = float(residual)
    return CheckRecord(check_id, desc, residual, tol, bool(residual <= tol and ok), tol - residual)


def _lower(check_id: str, desc: str, value: float, floor: float, ok: bool = True) -> CheckRecord:
    """Check that passes when value >= floor (and any extra condition holds)."""
    value = float(value)
    return CheckRecord(check_id, desc, value, floor, bool(value >= floor and ok), value - floor)


@dataclass(frozen=True)
class SuiteReport:
    """Result of one suite run."""

    suite: str
    config: SuiteConfig
    checks: list[CheckRecord]
    duration_ms: float

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "config": self.config.to_dict(),
            "checks": [c.to_dict() for c in self.checks],
            "pass": self.passed,
            "duration_ms": self.duration_ms,
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=indent)

    def body_digest_input(self) -> str:
        """Canonical JSON of everything except wall-clock duration."""
        body = self.to_dict()
        body.pop("duration_ms")
        return json.dumps(body, sort_keys=True)


def sample_points(model: MetricModel, n: int, seed: int = 0) -> list[ChartPoint]:
    """Quasi-random valid chart points (scrambled Halton, fixed seed)."""
    box = model.sample_box()
    halton = qmc.Halton(d=3, scramble=True, seed=seed)
    raw = qmc.scale(halton.random(n), [b[0] for b in box], [b[1] for b in box])
    return [ChartPoint(*row) for row in raw]


def _table_models() -> list[tuple[str, MetricModel]]:
    named = [(f"bcv-m{m:g}-l{l:g}", BCVModel(m, l)) for m, l in TABLE_SETTINGS]
    named.append(("sol", SolModel()))
    return named


def _grid_points(model: MetricModel, n: int) -> list[ChartPoint]:
    box = model.sample_box()
    axes = [np.linspace(lo * 0.9, hi * 0.9, n) for lo, hi in box]
    return [ChartPoint(float(x), float(y), float(z)) for x in axes[0] for y in axes[1] for z in axes[2]]


# -- geometry-tables -----------------------------------------------------------

def _suite_geometry_tables(cfg: SuiteConfig) -> list[CheckRecord]:
    checks = []
    for name, model in _table_models():
        kind = model.kind
        m = getattr(model, "m", 0.0)
        l = getattr(model, "l", 0.0)
        riem_ref = reference_tables.riemann_table(kind, m=m, l=l)
        ricci_ref = reference_tables.ricci_table(kind, m=m, l=l)
        worst = 0.0
        for p in _grid_points(model, cfg.table_grid):
            conn, lie, riem, ricci = frame_tables(model, p)
            conn_ref = reference_tables.connection_table(kind, m=m, l=l, x=p.x, y=p.y, z=p.z)
            lie_ref = reference_tables.lie_table(kind, m=m, l=l, x=p.x, y=p.y, z=p.z)
            worst = max(
                worst,
                float(np.abs(conn - conn_ref).max()),
                float(np.abs(lie - lie_ref).max()),
                float(np.abs(riem - riem_ref).max()),
                float(np.abs(ricci - ricci_ref).max()),
            )
        checks.append(
            _upper(
                f"tables-{name}",
                f"connection/bracket/curvature/Ricci frame tables vs closed forms ({name}, "
                f"{cfg.table_grid}^3 grid)",
                worst,
                cfg.tol_tables,
            )
        )
    return checks


# -- hopf-circle ---------------------------------------------------------------

def _suite_hopf_circle(cfg: SuiteConfig) -> list[CheckRecord]:
    checks = []
    for m, l in HOPF_SETTINGS:
        tag = f"m{m:g}-l{l:.4g}"
        kappa = math.sqrt(4.0 * m - l * l)
        rho = circle_for_kg(m, kappa)
        curve = circle_curve(m, rho)
        cyl = lift_cylinder(m, l, curve)
        inv = hopf_invariants(m, l, kappa)

        grid = interior_grid(cyl, cfg.surface_grid, pad=2.5 * cfg.step)
        max_res = 0.0
        max_h_dev = 0.0
        max_a2_dev = 0.0
        for uv in grid:
            r = residual_full(cyl, uv, step=cfg.step)
            max_res = max(max_res, abs(r.normal_residual), abs(r.tangential_residual))
            max_h_dev = max(max_h_dev, abs(abs(r.mean_curvature) - inv.mean_curvature))
            max_a2_dev = max(max_a2_dev, abs(r.shape_norm_sq - inv.shape_norm_sq))
        checks.append(
            _upper(
                f"hopf-residual-{tag}",
                f"full biharmonic residual of the kappa_g={kappa:.6g} circle cylinder",
                max_res,
                cfg.tol_residual,
            )
        )
        checks.append(
            _upper(
                f"hopf-invariants-{tag}",
                "|H| and |A|^2 vs kappa_g/2 and kappa_g^2 + l^2/2",
                max(max_h_dev, max_a2_dev),
                cfg.tol_invariants,
            )
        )

        tau_dev = max(
            abs(fiber_torsion(m, l, curve, s) - inv.tau_g)
            for s in np.linspace(0.0, curve.s_range[1], 5)
        )
        checks.append(
            _upper(
                f"hopf-torsion-{tag}",
                "fiber torsion vs -l/2 along the base circle",
                tau_dev,
                cfg.tol_torsion_fiber,
            )
        )

        kappa_num = base_geodesic_curvature(m, curve, 0.25 * curve.s_range[1])
        radius_num = 1.0 / math.sqrt(kappa_num**2 + 4.0 * m)
        radius_ref = 1.0 / math.sqrt(8.0 * m - l * l)
        checks.append(
            _upper(
                f"hopf-radius-{tag}",
                "extrinsic base-circle radius vs 1/sqrt(8m - l^2)",
                abs(radius_num - radius_ref),
                cfg.tol_radius,
            )
        )

        perturbed = lift_cylinder(m, l, circle_curve(m, 1.05 * rho))
        triple = bcv_cmc_residual(perturbed, grid[0])
        v = verdict(perturbed, cfg.surface_grid, tol=cfg.tol_residual,
                    margin_floor=cfg.margin_floor, step=cfg.step)
        checks.append(
            _lower(
                f"hopf-perturbed-{tag}",
                "5% radius perturbation: first classification entry magnitude "
                f"(verdict={v.classification})",
                abs(triple[0]),
                cfg.perturbed_floor,
                ok=v.classification == NOT_BIHARMONIC,
            )
        )
    return checks


# -- sol-cmc ---------------------------------------------------------------------

def sol_slice_cylinder(radius: float, z0: float = 0.0,
                       t_half_width: float = 0.5) -> SurfacePatch:
    """Vertical cylinder over a circle of the flat induced metric of the z=z0 slice."""
    sol = SolModel()
    ax = radius * math.exp(-z0)
    ay = radius * math.exp(z0)

    def imm(s, t):
        from . import jets

        return (ax * jets.cos(s), ay * jets.sin(s), t)

    return SurfacePatch(imm, (0.0, 2.0 * math.pi), (z0 - t_half_width, z0 + t_half_width), sol)


def _sol_candidates() -> list[tuple[str, SurfacePatch]]:
    sol = SolModel()
    tilted = SurfacePatch(lambda s, t: (0.8 * s, 0.6 * s, t), (-1.0, 1.0), (-1.0, 1.0), sol)
    return [
        ("z-plane-0", plane_patch(sol, 0.0)),
        ("z-plane-0.4", plane_patch(sol, 0.4)),
        ("x-plane-0", coordinate_plane_patch(sol, "x", 0.0)),
        ("x-plane-0.3", coordinate_plane_patch(sol, "x", 0.3)),
        ("y-plane-0", coordinate_plane_patch(sol, "y", 0.0)),
        ("y-plane--0.2", coordinate_plane_patch(sol, "y", -0.2)),
        ("cylinder-r0.6-z0", sol_slice_cylinder(0.6, 0.0)),
        ("cylinder-r0.8-z0.5", sol_slice_cylinder(0.8, 0.5)),
        ("tilted-vertical-plane", tilted),
    ]


def _suite_sol_cmc(cfg: SuiteConfig) -> list[CheckRecord]:
    checks = []
    sol = SolModel()

    max_h = 0.0
    max_a2_dev = 0.0
    for z0 in (0.0, 0.4):
        patch = plane_patch(sol, z0)
        for uv in interior_grid(patch, cfg.surface_grid, pad=2.5 * cfg.step):
            sr = shape_report(patch, uv)
            max_h = max(max_h, abs(sr.mean_curvature))
            max_a2_dev = max(max_a2_dev, abs(sr.shape_norm_sq - 2.0))
    checks.append(
        _upper(
            "sol-zplane-minimality",
            "|H| of horizontal slices (minimal but not proper)",
            max_h,
            cfg.tol_minimal_h,
        )
    )
    checks.append(
        _upper(
            "sol-zplane-shape",
            "| |A|^2 - 2 | of horizontal slices",
            max_a2_dev,
            cfg.tol_invariants,
        )
    )

    for name, patch in _sol_candidates():
        v = verdict(patch, cfg.surface_grid, tol=cfg.tol_residual,
                    margin_floor=cfg.margin_floor, step=cfg.step)
        checks.append(
            CheckRecord(
                id=f"sol-candidate-{name}",
                desc=(
                    f"verdict={v.classification} (max residual {max(v.max_normal_residual, v.max_tangential_residual):.3e}, "
                    f"max |H| {v.max_abs_mean_curvature:.3e}); must never be proper biharmonic"
                ),
                residual=1.0 if v.classification == PROPER_BIHARMONIC else 0.0,
                tol=0.0,
                passed=v.classification != PROPER_BIHARMONIC,
                margin=v.margin,
            )
        )
    return checks


# -- sphere-in-s3 ----------------------------------------------------------------

def sphere_mean_curvature(c: float, rho: float) -> float:
    """Mean curvature of the geodesic sphere of intrinsic radius rho (center-pointing normal)."""
    if c > 0.0:
        s = math.sqrt(c)
        return s / math.tan(s * rho)
    if c == 0.0:
        return 1.0 / rho
    s = math.sqrt(-c)
    return s / math.tanh(s * rho)


def _suite_sphere_in_s3(cfg: SuiteConfig) -> list[CheckRecord]:
    checks = []
    proper = geodesic_sphere_patch(1.0, math.pi / 4.0)
    grid = interior_grid(proper, cfg.surface_grid, pad=2.5 * cfg.step)
    max_res = 0.0
    max_h_dev = 0.0
    max_umb = 0.0
    for uv in grid:
        r = residual_full(proper, uv, step=cfg.step)
        sr = shape_report(proper, uv)
        max_res = max(max_res, abs(r.normal_residual), abs(r.tangential_residual))
        max_h_dev = max(max_h_dev, abs(r.mean_curvature - 1.0))
        max_umb = max(max_umb, sr.umbilicity_deficit)
    v = verdict(proper, cfg.surface_grid, tol=cfg.tol_residual,
                margin_floor=cfg.margin_floor, step=cfg.step)
    checks.append(
        _upper(
            "sphere-proper-pi4",
            f"full residual of the intrinsic-radius pi/4 geodesic sphere (verdict={v.classification})",
            max_res,
            cfg.tol_residual,
            ok=v.classification == PROPER_BIHARMONIC,
        )
    )
    checks.append(
        _upper("sphere-h-pi4", "mean curvature vs 1", max_h_dev, cfg.tol_residual)
    )
    checks.append(
        _upper("sphere-umbilic-pi4", "umbilicity deficit", max_umb, cfg.tol_residual)
    )

    for rho, tag in ((math.pi / 3.0, "pi3"), (math.pi / 6.0, "pi6")):
        patch = geodesic_sphere_patch(1.0, rho)
        uv = interior_grid(patch, (1, 1), pad=2.5 * cfg.step)[0]
        r = residual_cmc(patch, uv, step=cfg.step)
        v = verdict(patch, cfg.surface_grid, tol=cfg.tol_residual,
                    margin_floor=cfg.margin_floor, step=cfg.step)
        checks.append(
            _lower(
                f"sphere-reject-{tag}",
                f"reduced residual magnitude of the radius-{tag} sphere "
                f"(verdict={v.classification})",
                abs(r.normal_residual),
                cfg.reject_floor,
                ok=v.classification == NOT_BIHARMONIC,
            )
        )
    return checks


# -- umbilical-codazzi -----------------------------------------------------------

def _umbilical_family() -> list[tuple[str, SurfacePatch]]:
    sol = SolModel()
    return [
        ("sphere-s3-pi6", geodesic_sphere_patch(1.0, math.pi / 6.0)),
        ("sphere-s3-pi4", geodesic_sphere_patch(1.0, math.pi / 4.0)),
        ("sphere-s3-pi3", geodesic_sphere_patch(1.0, math.pi / 3.0)),
        ("sphere-euclid-r1.5", geodesic_sphere_patch(0.0, 1.5)),
        ("plane-euclid", plane_patch(BCVModel(0.0, 0.0))),
        ("sol-x-plane", coordinate_plane_patch(sol, "x", 0.2)),
        ("sol-y-plane", coordinate_plane_patch(sol, "y", -0.1)),
    ]


def _gram_schmidt_tangents(patch: SurfacePatch, uv):
    jet = immersion_jet(patch, uv)
    g = metric_at(patch.model, jet.point)
    t1 = jet.du / math.sqrt(float(jet.du @ g @ jet.du))
    w = jet.dv - float(jet.dv @ g @ t1) * t1
    t2 = w / math.sqrt(float(w @ g @ w))
    return jet.point, t1, t2


def _suite_umbilical_codazzi(cfg: SuiteConfig) -> list[CheckRecord]:
    checks = []
    for name, patch in _umbilical_family():
        grid = interior_grid(patch, cfg.surface_grid, pad=2.5 * cfg.step)
        h_field = lambda uu, vv: shape_report(patch, (uu, vv)).mean_curvature
        max_umb = 0.0
        max_res = 0.0
        max_grad = 0.0
        for uv in grid:
            sr = shape_report(patch, uv)
            r = residual_full(patch, uv, step=cfg.step)
            max_umb = max(max_umb, sr.umbilicity_deficit)
            max_res = max(max_res, abs(r.normal_residual), abs(r.tangential_residual))
            max_grad = max(
                max_grad, patch.model.norm(intrinsic_gradient(patch, h_field, uv, step=cfg.step))
            )
        is_umbilical = max_umb <= cfg.tol_residual
        biharmonic = max_res <= cfg.tol_residual
        if is_umbilical and biharmonic:
            desc = f"umbilical and biharmonic, so H must be constant; max ||grad H|| over grid"
            checks.append(_upper(f"umbilical-cmc-{name}", desc, max_grad, cfg.tol_grad_h))
        else:
            desc = (
                f"umbilical={is_umbilical}, biharmonic={biharmonic} "
                f"(max residual {max_res:.3e}); constancy implication vacuous"
            )
            checks.append(_upper(f"umbilical-cmc-{name}", desc, 0.0, cfg.tol_grad_h))

    # compatibility identity on geodesic spheres in space forms: the adapted-frame
    # derivative of the umbilicity factor equals Ric(e_i, xi); both sides vanish
    for tag, patch in (("s3-pi4", geodesic_sphere_patch(1.0, math.pi / 4.0)),
                       ("euclid-r1.5", geodesic_sphere_patch(0.0, 1.5))):
        h_field = lambda uu, vv: shape_report(patch, (uu, vv)).mean_curvature
        worst = 0.0
        for uv in interior_grid(patch, cfg.surface_grid, pad=2.5 * cfg.step):
            p, t1, t2 = _gram_schmidt_tangents(patch, uv)
            grad = intrinsic_gradient(patch, h_field, uv, step=cfg.step)
            xi = shape_report(patch, uv).normal
            for t in (t1, t2):
                e = TangentVector(p, t)
                worst = max(
                    worst,
                    abs(patch.model.inner(grad, e)),
                    abs(ricci_at(patch.model, p, e, xi)),
                )
        checks.append(
            _upper(
                f"codazzi-sphere-{tag}",
                "both sides of the umbilical compatibility identity on a space-form sphere",
                worst,
                cfg.tol_codazzi,
            )
        )
    return checks


# -- property checks (run as part of `full`) --------------------------------------

def _property_models() -> list[tuple[str, MetricModel]]:
    named = _table_models()
    named.append(("space-form-c1", SpaceFormChartModel(1.0)))
    return named


def _poly_field(coeffs: np.ndarray):
    """Vector field with polynomial components (jet-generic)."""

    def field(p):
        comps = [
            c[0] + c[1] * p.x + c[2] * p.y + c[3] * p.z + c[4] * p.x * p.y + c[5] * p.z * p.z
            for c in coeffs
        ]
        return TangentVector(p, comps)

    return field


def _property_checks(cfg: SuiteConfig) -> list[CheckRecord]:
    from . import jets
    from .charts import covariant_derivative_at, frame_field, lie_bracket_frame_at

    checks = []
    models = _property_models()

    worst = 0.0
    for _, model in models:
        for p in sample_points(model, cfg.n_sample_points, seed=cfg.seed):
            g = metric_at(model, p)
            frame = np.stack([e.components for e in orthonormal_frame_at(model, p)])
            worst = max(worst, float(np.abs(frame @ g @ frame.T - np.eye(3)).max()))
    checks.append(
        _upper(
            "frame-orthonormality",
            f"max |g(E_i, E_j) - delta_ij| over {cfg.n_sample_points} quasi-random points per model",
            worst,
            cfg.tol_frame,
        )
    )

    worst = 0.0
    for _, model in models:
        for p in sample_points(model, 8, seed=cfg.seed + 1):
            conn, lie, _, _ = frame_tables(model, p)
            torsion = conn - np.transpose(conn, (1, 0, 2)) - lie
            worst = max(worst, float(np.abs(torsion).max()))
    checks.append(
        _upper(
            "torsion-free",
            "max frame-coefficient norm of nabla_X Y - nabla_Y X - [X, Y]",
            worst,
            cfg.tol_torsion,
        )
    )

    rng = np.random.default_rng(cfg.seed)
    worst = 0.0
    for _, model in models:
        coeffs_y = rng.uniform(-1.0, 1.0, size=(3, 6))
        coeffs_z = rng.uniform(-1.0, 1.0, size=(3, 6))
        field_y, field_z = _poly_field(coeffs_y), _poly_field(coeffs_z)
        box = model.sample_box()
        p0 = np.array([0.3 * (b[0] + b[1]) / 2 + 0.1 * (b[1] - b[0]) for b in box])
        d = np.array([0.2 * (b[1] - b[0]) for b in box])
        for t0 in (-0.4, 0.0, 0.3):
            jt = jets.jet_vars((t0,))[0]
            coords = [p0[k] + jt * d[k] for k in range(3)]
            gj = model.metric_components(coords[0], coords[1], coords[2])
            pj = ChartPoint(coords[0], coords[1], coords[2])
            yj = field_y(pj).components
            zj = field_z(pj).components
            lhs = jets.grad_of(jets.dot_quadratic(gj, list(yj), list(zj)), 1)[0]
            pt = ChartPoint(*(p0 + t0 * d))
            direction = TangentVector(pt, d)
            dy = covariant_derivative_at(model, pt, field_y, direction)
            dz = covariant_derivative_at(model, pt, field_z, direction)
            rhs = model.inner(dy, field_z(pt)) + model.inner(field_y(pt), dz)
            worst = max(worst, abs(lhs - rhs))
    checks.append(
        _upper(
            "metric-compatibility",
            "d/dt g(Y, Z) vs g(nabla Y, Z) + g(Y, nabla Z) for polynomial fields along lines",
            worst,
            cfg.tol_compat,
        )
    )

    worst = 0.0
    for _, model in models:
        for p in sample_points(model, 6, seed=cfg.seed + 2):
            _, _, riem, _ = frame_tables(model, p)
            worst = max(
                worst,
                float(np.abs(riem + np.transpose(riem, (1, 0, 2, 3))).max()),
                float(np.abs(riem + np.transpose(riem, (0, 1, 3, 2))).max()),
                float(np.abs(riem - np.transpose(riem, (2, 3, 0, 1))).max()),
                float(
                    np.abs(
                        riem
                        + np.transpose(riem, (0, 2, 3, 1))
                        + np.transpose(riem, (0, 3, 1, 2))
                    ).max()
                ),
            )
    checks.append(
        _upper(
            "riemann-symmetries",
            "antisymmetries, pair symmetry and first Bianchi identity on all frame 4-tuples",
            worst,
            cfg.tol_tables,
        )
    )

    worst = 0.0
    for _, patch in _h_symmetry_surfaces():
        for uv in interior_grid(patch, (3, 3), pad=1e-2):
            h = shape_report(patch, uv).second_form
            worst = max(worst, abs(h[0, 1] - h[1, 0]))
    checks.append(
        _upper(
            "h-symmetry",
            "second-fundamental-form symmetry defect across the test surfaces",
            worst,
            cfg.tol_h_symmetry,
        )
    )

    order = min(_lb_order_flat(), _lb_order_sphere())
    checks.append(
        _lower(
            "laplace-convergence",
            "observed Laplace-Beltrami convergence order under step halving",
            order,
            1.9,
        )
    )

    worst = 0.0
    for c in (1.0, -0.5):
        model = SpaceFormChartModel(c)
        for p in sample_points(model, 40, seed=cfg.seed + 3):
            from .charts import curvature_data

            cd = curvature_data(model, p)
            worst = max(worst, float(np.abs(cd.ricci_matrix - 2.0 * c * cd.metric).max()))
    checks.append(
        _upper(
            "space-form-einstein",
            "|Ric - 2c g| on conformally flat space-form charts",
            worst,
            cfg.tol_tables,
        )
    )
    return checks


def _h_symmetry_surfaces() -> list[tuple[str, SurfacePatch]]:
    euc = BCVModel(0.0, 0.0)
    bcv = BCVModel(0.25, 0.3)
    return [
        ("hopf-cyl-1-0", lift_cylinder(1.0, 0.0, circle_curve(1.0, circle_for_kg(1.0, 2.0)))),
        ("hopf-cyl-1-1", lift_cylinder(1.0, 1.0, circle_curve(1.0, circle_for_kg(1.0, math.sqrt(3.0))))),
        ("sphere-s3-pi4", geodesic_sphere_patch(1.0, math.pi / 4.0)),
        ("sol-cylinder", sol_slice_cylinder(0.7, 0.2)),
        ("graph-euclid", graph_patch(euc, lambda u, v: 0.3 * u * u - 0.2 * v * v * v)),
        ("graph-bcv", graph_patch(bcv, lambda u, v: 0.2 * u * v + 0.1 * u)),
    ]


def _lb_order_flat() -> float:
    patch = plane_patch(BCVModel(0.0, 0.0), half_width=2.0)
    f = lambda u, v: u**4 + v**4
    uv = (0.3, 0.2)
    exact = 12.0 * (uv[0] ** 2 + uv[1] ** 2)
    errs = [abs(laplace_beltrami(patch, f, uv, step=h) - exact) for h in (0.04, 0.02)]
    return math.log2(errs[0] / errs[1])


def _lb_order_sphere() -> float:
    patch = geodesic_sphere_patch(0.0, 1.0)
    f = lambda u, v: math.cos(v)
    uv = (1.1, 1.2)
    exact = -2.0 * math.cos(uv[1])
    errs = [abs(laplace_beltrami(patch, f, uv, step=h) - exact) for h in (0.04, 0.02)]
    return math.log2(errs[0] / errs[1])


# -- public entry points -----------------------------------------------------------

_SUITE_BUILDERS = {
    "geometry-tables": _suite_geometry_tables,
    "hopf-circle": _suite_hopf_circle,
    "sol-cmc": _suite_sol_cmc,
    "sphere-in-s3": _suite_sphere_in_s3,
    "umbilical-codazzi": _suite_umbilical_codazzi,
}


def run_suite(name: str, config: SuiteConfig | None = None) -> SuiteReport:
    """Run a named verification suite and return its report."""
    if name not in SUITE_NAMES:
        raise ValueError(f"unknown suite {name!r}; expected one of {', '.join(SUITE_NAMES)}")
    cfg = config or SuiteConfig()
    start = time.perf_counter()
    if name == "full":
        checks = []
        for key in ("geometry-tables", "hopf-circle", "sol-cmc", "sphere-in-s3", "umbilical-codazzi"):
            checks.extend(_SUITE_BUILDERS[key](cfg))
        checks.extend(_property_checks(cfg))
    else:
        checks = _SUITE_BUILDERS[name](cfg)
    duration_ms = (time.perf_counter() - start) * 1e3
    return SuiteReport(name, cfg, checks, duration_ms)


def sweep(m_range: tuple[float, float], l_range: tuple[float, float],
          steps: tuple[int, int] | int, out_path=None, fmt: str = "csv",
          config: SuiteConfig | None = None) -> list[dict]:
    """Tabulate the proper-biharmonic cylinder data over an (m, l) grid.

    Inside the properness window 4m - l^2 > 0 (with m > 0) each row carries
    the predicted circle data and the numerically confirmed verdict; outside
    it the minimal candidate (geodesic-base cylinder) is confirmed and the
    verdict column reads "minimal-only".
    """
    cfg = config or SuiteConfig()
    if isinstance(steps, int):
        steps = (steps, steps)
    nm, nl = int(steps[0]), int(steps[1])
    if nm < 1 or nl < 1:
        raise ValueError(f"steps must be >= 1 per axis, got {steps}")
    for rng in (m_range, l_range):
        if not all(math.isfinite(v) for v in rng):
            raise ValueError(f"non-finite sweep range {rng}")
    ms = np.linspace(m_range[0], m_range[1], nm) if nm > 1 else np.array([m_range[0]])
    ls = np.linspace(l_range[0], l_range[1], nl) if nl > 1 else np.array([l_range[0]])

    rows = []
    for m in ms:
        for l in ls:
            m, l = float(m), float(l)
            window = 4.0 * m - l * l
            if m > 0.0 and window > 1e-12:
                kappa = math.sqrt(window)
                cyl = lift_cylinder(m, l, circle_curve(m, circle_for_kg(m, kappa)))
                v = verdict(cyl, cfg.surface_grid, tol=cfg.tol_residual,
                            margin_floor=cfg.margin_floor, step=cfg.step)
                inv = hopf_invariants(m, l, kappa)
                rows.append(
                    {
                        "m": m,
                        "l": l,
                        "window": window,
                        "kappa_g": kappa,
                        "H": inv.mean_curvature,
                        "A_norm_sq": inv.shape_norm_sq,
                        "R": inv.radius,
                        "verdict": v.classification,
                        "max_residual": max(v.max_normal_residual, v.max_tangential_residual),
                    }
                )
            else:
                curve = circle_curve(m, 1.0 / math.sqrt(m)) if m > 0.0 else line_curve(m)
                cyl = lift_cylinder(m, l, curve)
                v = verdict(cyl, cfg.surface_grid, tol=cfg.tol_residual,
                            margin_floor=cfg.margin_floor, step=cfg.step)
                rows.append(
                    {
                        "m": m,
                        "l": l,
                        "window": window,
                        "kappa_g": 0.0,
                        "H": 0.0,
                        "A_norm_sq": 0.5 * l * l,
                        "R": None,
                        "verdict": "minimal-only" if v.classification == MINIMAL else v.classification,
                        "max_residual": max(v.max_normal_residual, v.max_tangential_residual),
                    }
                )
    if out_path is not None:
        _write_rows(rows, out_path, fmt)
    return rows


def _write_rows(rows: list[dict], out_path, fmt: str) -> None:
    import csv
    from pathlib import Path

    path = Path(out_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "json":
        path.write_text(json.dumps(rows, sort_keys=True, indent=2) + "\n")
        return
    if fmt != "csv":
        raise ValueError(f"unknown output format {fmt!r}")
    with path.open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0].keys()) if rows else [])
        writer.writeheader()
        for row in rows:
            writer.writerow({k: ("" if v is None else v) for k, v in row.items()})
