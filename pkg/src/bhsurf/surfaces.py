"""Extrinsic and intrinsic geometry of immersed parametric surfaces.

A surface patch is an immersion (u, v) -> chart point into one of the metric
charts. The second fundamental form uses the sign convention
h(X, Y) = -<nabla_X xi, Y> for the unit normal xi, which is oriented so that
(r_u, r_v, xi) is positively oriented with respect to the chart volume form.
Mean curvature is H = trace(A)/2 for the shape operator A = I^{-1} h.

Derivatives of the immersion and of the normal field are exact (jets) when
the patch is flagged analytic; otherwise central differences with the patch's
``fd_step`` are used. Scalar fields on the parameter domain (e.g. the mean
curvature field fed to the Laplace-Beltrami operator) are always
differentiated by central-difference stencils.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import jets
from .charts import (
    ChartPoint,
    MetricModel,
    SpaceFormChartModel,
    TangentVector,
    as_point,
    christoffels_at,
    metric_at,
)
from .jets import value_of

__all__ = [
    "SurfacePatch",
    "ImmersionJet",
    "ShapeReport",
    "immersion_jet",
    "first_fundamental_form",
    "unit_normal",
    "shape_report",
    "intrinsic_gradient",
    "laplace_beltrami",
    "swap_parameters",
    "plane_patch",
    "graph_patch",
    "coordinate_plane_patch",
    "geodesic_sphere_patch",
    "chart_radius_for_geodesic_radius",
]

# relative determinant floor below which the jacobian is treated as rank < 2
_RANK_TOL = 1e-12


@dataclass(frozen=True)
class SurfacePatch:
    """Immersed parametric surface in a metric chart.

    ``immersion`` maps (u, v) to chart coordinates (x, y, z); with
    ``analytic=True`` it must also accept jet arguments, which yields exact
    derivatives. ``fd_step`` is the central-difference step for the
    non-analytic fallback.
    """

    immersion: Callable
    u_range: tuple[float, float]
    v_range: tuple[float, float]
    model: MetricModel
    analytic: bool = True
    fd_step: float = 1e-4

    def contains(self, u: float, v: float, pad: float = 0.0) -> bool:
        return (
            self.u_range[0] + pad <= u <= self.u_range[1] - pad
            and self.v_range[0] + pad <= v <= self.v_range[1] - pad
        )


def _require_in_domain(patch: SurfacePatch, u: float, v: float, pad: float = 0.0) -> None:
    if not patch.contains(u, v, pad):
        raise ValueError(
            f"parameter point ({u}, {v}) outside domain "
            f"{patch.u_range} x {patch.v_range} (pad={pad})"
        )


@dataclass(frozen=True, eq=False)
class ImmersionJet:
    """Second-order jet of the immersion at one parameter point."""

    point: ChartPoint
    du: np.ndarray
    dv: np.ndarray
    duu: np.ndarray
    duv: np.ndarray
    dvv: np.ndarray


@dataclass(frozen=True, eq=False)
class ShapeReport:
    """Pointwise extrinsic data of a surface patch.

    ``second_form`` is stored as computed from the normal derivatives; its
    symmetry defect is a numerical quality indicator, and the shape operator
    is built from the symmetrized form.
    """

    normal: TangentVector
    first_form: np.ndarray
    second_form: np.ndarray
    shape_operator: np.ndarray
    mean_curvature: float
    shape_norm_sq: float
    umbilicity_deficit: float


def immersion_jet(patch: SurfacePatch, uv) -> ImmersionJet:
    """Position and first/second parameter derivatives of the immersion."""
    u, v = float(uv[0]), float(uv[1])
    _require_in_domain(patch, u, v)
    if patch.analytic:
        ju, jv = jets.jet2_vars((u, v))
        coords = patch.immersion(ju, jv)
        vals = np.array([value_of(c) for c in coords])
        grads = np.array([jets.grad_of(c, 2) for c in coords])  # [k, a]
        hesses = np.array([jets.hess_of(c, 2) for c in coords])  # [k, a, b]
        point = ChartPoint(*vals)
        jet = ImmersionJet(
            point,
            grads[:, 0],
            grads[:, 1],
            hesses[:, 0, 0],
            hesses[:, 0, 1],
            hesses[:, 1, 1],
        )
    else:
        h = patch.fd_step
        f = lambda a, b: np.array(patch.immersion(a, b), dtype=float)
        c0 = f(u, v)
        fu_p, fu_m = f(u + h, v), f(u - h, v)
        fv_p, fv_m = f(u, v + h), f(u, v - h)
        duv = (f(u + h, v + h) - f(u + h, v - h) - f(u - h, v + h) + f(u - h, v - h)) / (4 * h * h)
        jet = ImmersionJet(
            ChartPoint(*c0),
            (fu_p - fu_m) / (2 * h),
            (fv_p - fv_m) / (2 * h),
            (fu_p - 2 * c0 + fu_m) / (h * h),
            duv,
            (fv_p - 2 * c0 + fv_m) / (h * h),
        )
    patch.model.validate_point(jet.point)
    _check_rank(patch, jet)
    return jet


def _pullback_first_form(g: np.ndarray, jet: ImmersionJet) -> np.ndarray:
    t = np.stack([jet.du, jet.dv])  # [a, k]
    return t @ g @ t.T


def _check_rank(patch: SurfacePatch, jet: ImmersionJet) -> None:
    g = metric_at(patch.model, jet.point)
    form = _pullback_first_form(g, jet)
    det = form[0, 0] * form[1, 1] - form[0, 1] * form[1, 0]
    scale = max(form[0, 0] * form[1, 1], 1e-30)
    if not det > _RANK_TOL * scale:
        raise ValueError(f"immersion jacobian rank-deficient at {jet.point}")


def first_fundamental_form(patch: SurfacePatch, uv) -> np.ndarray:
    """Pullback of the ambient metric, as a symmetric positive 2x2 array."""
    jet = immersion_jet(patch, uv)
    g = metric_at(patch.model, jet.point)
    return _pullback_first_form(g, jet)


def _normal_components(model: MetricModel, coords, du, dv):
    """Unit-normal components, generic over jet or float scalars.

    Lowers the (scaled) coordinate cross product of the tangents with
    sqrt(det g), raises the index, and normalizes; the construction makes
    (du, dv, xi) positively oriented.
    """
    g = model.metric_components(coords[0], coords[1], coords[2])
    det = jets.det3(g)
    sq = jets.sqrt(det)
    w = [
        sq * (du[1] * dv[2] - du[2] * dv[1]),
        sq * (du[2] * dv[0] - du[0] * dv[2]),
        sq * (du[0] * dv[1] - du[1] * dv[0]),
    ]
    ginv = jets.inv3(g, det=det)
    xi = [ginv[a][0] * w[0] + ginv[a][1] * w[1] + ginv[a][2] * w[2] for a in range(3)]
    nrm = jets.sqrt(jets.dot_quadratic(g, xi, xi))
    return [xi[a] / nrm for a in range(3)]


def unit_normal(patch: SurfacePatch, uv) -> TangentVector:
    """Unit normal with (r_u, r_v, xi) positively oriented."""
    jet = immersion_jet(patch, uv)
    comp = _normal_components(
        patch.model, (jet.point.x, jet.point.y, jet.point.z), jet.du, jet.dv
    )
    return TangentVector(jet.point, np.array(comp, dtype=float))


def _normal_with_derivatives(patch: SurfacePatch, u: float, v: float):
    """(xi values (3,), parameter jacobian dxi[k, a]) at (u, v)."""
    if patch.analytic:
        ju, jv = jets.jet2_vars((u, v))
        coords2 = patch.immersion(ju, jv)
        # degree-1 jets (over u, v) of the coordinates and of both tangents
        pos = [jets.Jet(value_of(c), jets.grad_of(c, 2)) for c in coords2]
        hs = [jets.hess_of(c, 2) for c in coords2]
        gr = [jets.grad_of(c, 2) for c in coords2]
        ru = [jets.Jet(gr[k][0], hs[k][0]) for k in range(3)]
        rv = [jets.Jet(gr[k][1], hs[k][1]) for k in range(3)]
        xi = _normal_components(patch.model, pos, ru, rv)
        vals = np.array([value_of(c) for c in xi])
        dxi = np.array([jets.grad_of(c, 2) for c in xi])
        return vals, dxi
    h = patch.fd_step
    vals = unit_normal(patch, (u, v)).components
    dxi = np.empty((3, 2))
    dxi[:, 0] = (
        unit_normal(patch, (u + h, v)).components - unit_normal(patch, (u - h, v)).components
    ) / (2 * h)
    dxi[:, 1] = (
        unit_normal(patch, (u, v + h)).components - unit_normal(patch, (u, v - h)).components
    ) / (2 * h)
    return vals, dxi


def shape_report(patch: SurfacePatch, uv) -> ShapeReport:
    """Normal, fundamental forms, shape operator and derived invariants."""
    u, v = float(uv[0]), float(uv[1])
    jet = immersion_jet(patch, (u, v))
    p = jet.point
    g = metric_at(patch.model, p)
    form = _pullback_first_form(g, jet)

    xi_vals, dxi = _normal_with_derivatives(patch, u, v)
    gamma = christoffels_at(patch.model, p)
    tangents = np.stack([jet.du, jet.dv])  # [a, k]

    # nabla_a xi^k = d_a xi^k + Gamma^k_bc r_a^b xi^c, then h_ab = -g(nabla_a xi, r_b)
    nabla = dxi.T + np.einsum("kbc,ab,c->ak", gamma, tangents, xi_vals)
    h = -np.einsum("ak,kl,bl->ab", nabla, g, tangents)

    h_sym = 0.5 * (h + h.T)
    shape_op = np.linalg.solve(form, h_sym)
    mean = 0.5 * float(np.trace(shape_op))
    norm_sq = float(np.trace(shape_op @ shape_op))
    deficit = math.sqrt(max(norm_sq - 2.0 * mean * mean, 0.0))
    return ShapeReport(
        TangentVector(p, xi_vals), form, h, shape_op, mean, norm_sq, deficit
    )


# -- scalar fields on the parameter domain -----------------------------------

def _central(f, u: float, v: float, axis: int, h: float) -> float:
    if axis == 0:
        return (f(u + h, v) - f(u - h, v)) / (2 * h)
    return (f(u, v + h) - f(u, v - h)) / (2 * h)


def _partials(f, u: float, v: float, step: float) -> np.ndarray:
    """First parameter derivatives, central differences + one Richardson step."""
    out = np.empty(2)
    for axis in (0, 1):
        d1 = _central(f, u, v, axis, step)
        d2 = _central(f, u, v, axis, 0.5 * step)
        out[axis] = (4.0 * d2 - d1) / 3.0
    return out


def intrinsic_gradient(patch: SurfacePatch, f, uv, step: float = 1e-3) -> TangentVector:
    """Surface gradient of a scalar field on the parameter domain.

    Returns the ambient tangent vector sum_ab I^{ab} (d_b f) r_a.
    """
    u, v = float(uv[0]), float(uv[1])
    _require_in_domain(patch, u, v, pad=step)
    df = _partials(f, u, v, step)
    jet = immersion_jet(patch, (u, v))
    g = metric_at(patch.model, jet.point)
    form = _pullback_first_form(g, jet)
    comp = np.linalg.solve(form, df)
    return TangentVector(jet.point, comp[0] * jet.du + comp[1] * jet.dv)


def _first_form_light(patch: SurfacePatch, u: float, v: float) -> np.ndarray:
    """First fundamental form from a degree-1 immersion jet (cheaper path)."""
    if patch.analytic:
        ju, jv = jets.jet_vars((u, v))
        coords = patch.immersion(ju, jv)
        pos = [value_of(c) for c in coords]
        t = np.array([jets.grad_of(c, 2) for c in coords]).T  # [a, k]
        g = metric_at(patch.model, ChartPoint(*pos))
        return t @ g @ t.T
    jet = immersion_jet(patch, (u, v))
    g = metric_at(patch.model, jet.point)
    return _pullback_first_form(g, jet)


def laplace_beltrami(patch: SurfacePatch, f, uv, step: float = 1e-3) -> float:
    """Laplace-Beltrami of a scalar field in divergence form.

    Evaluates (1/sqrt(det I)) d_a (sqrt(det I) I^{ab} d_b f) with nested
    central differences of step ``step``; second-order accurate.
    """
    u, v = float(uv[0]), float(uv[1])
    _require_in_domain(patch, u, v, pad=2.0 * step)

    def flux(uu: float, vv: float) -> np.ndarray:
        form = _first_form_light(patch, uu, vv)
        df = np.array([_central(f, uu, vv, 0, step), _central(f, uu, vv, 1, step)])
        w = math.sqrt(form[0, 0] * form[1, 1] - form[0, 1] * form[1, 0])
        return w * np.linalg.solve(form, df)

    div = (flux(u + step, v)[0] - flux(u - step, v)[0]) / (2 * step) + (
        flux(u, v + step)[1] - flux(u, v - step)[1]
    ) / (2 * step)
    form0 = _first_form_light(patch, u, v)
    w0 = math.sqrt(form0[0, 0] * form0[1, 1] - form0[0, 1] * form0[1, 0])
    return div / w0


def swap_parameters(patch: SurfacePatch) -> SurfacePatch:
    """The same surface with (u, v) exchanged; flips the normal orientation."""
    fn = patch.immersion
    return SurfacePatch(
        lambda u, v: fn(v, u),
        patch.v_range,
        patch.u_range,
        patch.model,
        analytic=patch.analytic,
        fd_step=patch.fd_step,
    )


# -- stock patches -------------------------------------------------------------

def plane_patch(model: MetricModel, z0: float = 0.0, half_width: float = 1.0) -> SurfacePatch:
    """Coordinate plane z = z0: r(u, v) = (u, v, z0)."""
    return SurfacePatch(
        lambda u, v: (u, v, z0),
        (-half_width, half_width),
        (-half_width, half_width),
        model,
    )


def graph_patch(model: MetricModel, height, half_width: float = 1.0) -> SurfacePatch:
    """Graph surface r(u, v) = (u, v, height(u, v)); height must be jet-generic."""
    return SurfacePatch(
        lambda u, v: (u, v, height(u, v)),
        (-half_width, half_width),
        (-half_width, half_width),
        model,
    )


def coordinate_plane_patch(model: MetricModel, axis: str, offset: float = 0.0,
                           half_width: float = 1.0) -> SurfacePatch:
    """Coordinate plane {axis = offset} parametrized by the other two coordinates."""
    maps = {
        "x": lambda u, v: (offset, u, v),
        "y": lambda u, v: (u, offset, v),
        "z": lambda u, v: (u, v, offset),
    }
    if axis not in maps:
        raise ValueError(f"axis must be one of x, y, z, got {axis!r}")
    return SurfacePatch(
        maps[axis], (-half_width, half_width), (-half_width, half_width), model
    )


def chart_radius_for_geodesic_radius(c: float, rho: float) -> float:
    """Chart radius of the geodesic sphere of intrinsic radius rho about the origin."""
    if rho <= 0.0:
        raise ValueError(f"intrinsic radius must be positive, got {rho}")
    if c > 0.0:
        s = math.sqrt(c)
        if s * rho >= math.pi:
            raise ValueError("intrinsic radius beyond the chart (antipode)")
        return (2.0 / s) * math.tan(0.5 * s * rho)
    if c == 0.0:
        return rho
    s = math.sqrt(-c)
    return (2.0 / s) * math.tanh(0.5 * s * rho)


def geodesic_sphere_patch(c: float, rho: float,
                          u_range: tuple[float, float] = (0.0, 2.0 * math.pi),
                          v_range: tuple[float, float] = (0.35, math.pi - 0.35)) -> SurfacePatch:
    """Geodesic sphere of intrinsic radius rho about the chart origin.

    Parametrized azimuth-first, which orients the unit normal toward the
    center; small spheres then have positive mean curvature
    (sqrt(c) / tan(sqrt(c) rho) for c > 0, 1/rho in the flat case).
    """
    model = SpaceFormChartModel(c)
    r = chart_radius_for_geodesic_radius(c, rho)

    def imm(u, v):
        sv = jets.sin(v)
        return (r * sv * jets.cos(u), r * sv * jets.sin(u), r * jets.cos(v))

    return SurfacePatch(imm, u_range, v_range, model)
