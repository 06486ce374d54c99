"""Residual evaluation for the biharmonic hypersurface system.

For a surface (codimension one, so the hypersurface dimension is 2) the
system is

    lap(H) - H |A|^2 + H Ric(xi, xi) = 0,
    2 A(grad H) + grad(H^2) - 2 H (Ric(xi))^T = 0,

and both residuals vanish identically for minimal surfaces. For surfaces of
constant mean curvature the system drops the derivative terms; in that case
the chart families admit reduced classification triples whose simultaneous
vanishing characterizes biharmonicity (together with H != 0 for properness).

All residuals are reported as absolute values or norms; they are invariant
under flipping the normal orientation, which the underlying theorems leave
free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .charts import (
    BCVModel,
    SolModel,
    curvature_data,
    metric_at,
    orthonormal_frame_at,
)
from .surfaces import (
    SurfacePatch,
    immersion_jet,
    intrinsic_gradient,
    laplace_beltrami,
    shape_report,
)

__all__ = [
    "MINIMAL",
    "PROPER_BIHARMONIC",
    "NOT_BIHARMONIC",
    "BiharmonicResidual",
    "Verdict",
    "adapted_frame_coefficients",
    "bcv_cmc_residual",
    "sol_cmc_residual",
    "residual_full",
    "residual_cmc",
    "max_grad_mean_curvature",
    "interior_grid",
    "verdict",
]

MINIMAL = "minimal"
PROPER_BIHARMONIC = "proper_biharmonic"
NOT_BIHARMONIC = "not_biharmonic"

DEFAULT_TOL = 1e-6
DEFAULT_MARGIN_FLOOR = 1e-3


@dataclass(frozen=True, eq=False)
class BiharmonicResidual:
    """Pointwise residuals of the biharmonic system.

    ``normal_residual`` is the scalar equation value, ``tangential_residual``
    the first-form norm of the tangential equation. The classification
    triples are attached when the ambient chart is of the matching family.
    """

    normal_residual: float
    tangential_residual: float
    mean_curvature: float
    shape_norm_sq: float
    bcv_triple: tuple[float, float, float] | None = None
    sol_triple: tuple[float, float, float] | None = None


@dataclass(frozen=True, eq=False)
class Verdict:
    """Grid-aggregated classification of a surface patch."""

    classification: str
    max_normal_residual: float
    max_tangential_residual: float
    max_abs_mean_curvature: float
    min_abs_mean_curvature: float
    margin: float
    tol: float
    margin_floor: float
    n_points: int


def adapted_frame_coefficients(patch: SurfacePatch, uv):
    """Coefficients of an adapted orthonormal frame in the model frame.

    Gram-Schmidt on (r_u, r_v) gives the tangent frame (e_1, e_2); with the
    unit normal xi the return is (a, c) where a[i, g] = g(e_i, E_{g+1}) and
    c[g] = g(xi, E_{g+1}).
    """
    sr = shape_report(patch, uv)
    jet = immersion_jet(patch, uv)
    g = metric_at(patch.model, jet.point)

    t1 = jet.du / math.sqrt(float(jet.du @ g @ jet.du))
    w = jet.dv - float(jet.dv @ g @ t1) * t1
    t2 = w / math.sqrt(float(w @ g @ w))

    frame = orthonormal_frame_at(patch.model, jet.point)
    emat = np.stack([e.components for e in frame])  # [g, k]
    a = np.stack([emat @ g @ t1, emat @ g @ t2])
    c = emat @ g @ sr.normal.components
    return a, c


def bcv_cmc_residual(patch: SurfacePatch, uv) -> tuple[float, float, float]:
    """Classification triple for CMC surfaces in the rotationally symmetric family.

    (|A|^2 - (4m - l^2/2) - (l^2 - 4m)(c^3)^2,
     (l^2 - 4m) c^3 a_1^3,
     (l^2 - 4m) c^3 a_2^3).
    """
    model = patch.model
    if not isinstance(model, BCVModel):
        raise ValueError(f"ambient chart is {model.kind!r}, not bcv")
    sr = shape_report(patch, uv)
    a, c = adapted_frame_coefficients(patch, uv)
    m, l = model.m, model.l
    w = l * l - 4.0 * m
    c3 = float(c[2])
    return (
        float(sr.shape_norm_sq - (4.0 * m - 0.5 * l * l) - w * c3 * c3),
        float(w * c3 * a[0, 2]),
        float(w * c3 * a[1, 2]),
    )


def sol_cmc_residual(patch: SurfacePatch, uv) -> tuple[float, float, float]:
    """Classification triple (|A|^2 + 2 (c^3)^2, c^3 a^3, c^3 b^3) in the solvable chart."""
    model = patch.model
    if not isinstance(model, SolModel):
        raise ValueError(f"ambient chart is {model.kind!r}, not sol")
    sr = shape_report(patch, uv)
    a, c = adapted_frame_coefficients(patch, uv)
    c3 = float(c[2])
    return (
        float(sr.shape_norm_sq + 2.0 * c3 * c3),
        float(c3 * a[0, 2]),
        float(c3 * a[1, 2]),
    )


def _attach_triples(patch: SurfacePatch, uv) -> dict:
    model = patch.model
    if isinstance(model, BCVModel):
        return {"bcv_triple": bcv_cmc_residual(patch, uv)}
    if isinstance(model, SolModel):
        return {"sol_triple": sol_cmc_residual(patch, uv)}
    return {}


def _tangential_data(patch: SurfacePatch, uv, sr, jet):
    """(first form, curvature data, ricci-operator tangential components)."""
    g = metric_at(patch.model, jet.point)
    form = np.stack([jet.du, jet.dv]) @ g @ np.stack([jet.du, jet.dv]).T
    cd = curvature_data(patch.model, jet.point)
    ric_xi = cd.ricci(sr.normal, sr.normal)
    ric_op = cd.ricci_operator(sr.normal).components
    proj = np.linalg.solve(
        form, np.array([float(ric_op @ g @ jet.du), float(ric_op @ g @ jet.dv)])
    )
    return form, ric_xi, proj


def residual_full(patch: SurfacePatch, uv, step: float = 1e-3) -> BiharmonicResidual:
    """Full biharmonic residual at an interior parameter point.

    Mean-curvature derivatives come from central-difference stencils of width
    ``step`` (one Richardson step for the gradients), so the point must be at
    least 2*step inside the parameter domain.
    """
    u, v = float(uv[0]), float(uv[1])
    sr = shape_report(patch, (u, v))
    jet = immersion_jet(patch, (u, v))
    form, ric_xi, proj = _tangential_data(patch, (u, v), sr, jet)

    h_field = lambda uu, vv: shape_report(patch, (uu, vv)).mean_curvature
    lap_h = laplace_beltrami(patch, h_field, (u, v), step=step)
    normal = lap_h - sr.mean_curvature * sr.shape_norm_sq + sr.mean_curvature * ric_xi

    # shared Richardson stencil for grad H and grad H^2
    dh = np.empty(2)
    dh2 = np.empty(2)
    for axis in (0, 1):
        parts = []
        for hh in (step, 0.5 * step):
            args_p = (u + hh, v) if axis == 0 else (u, v + hh)
            args_m = (u - hh, v) if axis == 0 else (u, v - hh)
            hp, hm = h_field(*args_p), h_field(*args_m)
            parts.append(((hp - hm) / (2 * hh), (hp * hp - hm * hm) / (2 * hh)))
        dh[axis] = (4.0 * parts[1][0] - parts[0][0]) / 3.0
        dh2[axis] = (4.0 * parts[1][1] - parts[0][1]) / 3.0

    grad_h = np.linalg.solve(form, dh)
    grad_h2 = np.linalg.solve(form, dh2)
    t = 2.0 * sr.shape_operator @ grad_h + grad_h2 - 2.0 * sr.mean_curvature * proj
    tangential = math.sqrt(max(float(t @ form @ t), 0.0))

    return BiharmonicResidual(
        normal_residual=normal,
        tangential_residual=tangential,
        mean_curvature=sr.mean_curvature,
        shape_norm_sq=sr.shape_norm_sq,
        **_attach_triples(patch, (u, v)),
    )


def interior_grid(patch: SurfacePatch, grid, pad: float):
    """Regular parameter grid at least ``pad`` inside the patch domain."""
    nu, nv = int(grid[0]), int(grid[1])
    if nu < 1 or nv < 1:
        raise ValueError(f"grid must have at least one point per axis, got {grid}")
    (u0, u1), (v0, v1) = patch.u_range, patch.v_range
    if u1 - u0 <= 2 * pad or v1 - v0 <= 2 * pad:
        raise ValueError("patch domain too small for the stencil padding")
    us = np.linspace(u0 + pad, u1 - pad, nu) if nu > 1 else np.array([(u0 + u1) / 2])
    vs = np.linspace(v0 + pad, v1 - pad, nv) if nv > 1 else np.array([(v0 + v1) / 2])
    return [(float(u), float(v)) for u in us for v in vs]


@lru_cache(maxsize=128)
def _max_grad_h_cached(patch: SurfacePatch, grid: tuple, step: float) -> float:
    h_field = lambda uu, vv: shape_report(patch, (uu, vv)).mean_curvature
    worst = 0.0
    for uv in interior_grid(patch, grid, pad=2.5 * step):
        grad = intrinsic_gradient(patch, h_field, uv, step=step)
        worst = max(worst, patch.model.norm(grad))
    return worst


def max_grad_mean_curvature(patch: SurfacePatch, grid=(3, 3), step: float = 1e-3) -> float:
    """Largest surface-gradient norm of H over an interior grid (cached)."""
    return _max_grad_h_cached(patch, (int(grid[0]), int(grid[1])), float(step))


def residual_cmc(patch: SurfacePatch, uv, cmc_tol: float = 1e-5,
                 check_grid=(3, 3), step: float = 1e-3) -> BiharmonicResidual:
    """Reduced residual for constant-mean-curvature patches.

    Verifies CMC (max ||grad H|| over ``check_grid`` at most ``cmc_tol``,
    cached per patch) and then evaluates the derivative-free system
    -H |A|^2 + H Ric(xi, xi) = 0 and H (Ric(xi))^T = 0.
    """
    worst = max_grad_mean_curvature(patch, check_grid, step)
    if worst > cmc_tol:
        raise ValueError(
            f"patch is not CMC: max ||grad H|| = {worst:.3e} > {cmc_tol:.1e}"
        )
    sr = shape_report(patch, uv)
    jet = immersion_jet(patch, uv)
    form, ric_xi, proj = _tangential_data(patch, uv, sr, jet)
    normal = -sr.mean_curvature * sr.shape_norm_sq + sr.mean_curvature * ric_xi
    t = sr.mean_curvature * proj
    tangential = math.sqrt(max(float(t @ form @ t), 0.0))
    return BiharmonicResidual(
        normal_residual=normal,
        tangential_residual=tangential,
        mean_curvature=sr.mean_curvature,
        shape_norm_sq=sr.shape_norm_sq,
        **_attach_triples(patch, uv),
    )


def verdict(patch: SurfacePatch, grid=(3, 3), tol: float = DEFAULT_TOL,
            margin_floor: float = DEFAULT_MARGIN_FLOOR, step: float = 1e-3) -> Verdict:
    """Classify a patch from full residuals sampled over an interior grid.

    minimal: max |H| <= tol. proper_biharmonic: residuals <= tol and
    min |H| > margin_floor. Otherwise not_biharmonic. ``margin`` is the
    distance of the deciding quantity from its threshold.
    """
    points = interior_grid(patch, grid, pad=2.5 * step)
    max_normal = 0.0
    max_tangential = 0.0
    max_h = 0.0
    min_h = math.inf
    for uv in points:
        r = residual_full(patch, uv, step=step)
        max_normal = max(max_normal, abs(r.normal_residual))
        max_tangential = max(max_tangential, abs(r.tangential_residual))
        max_h = max(max_h, abs(r.mean_curvature))
        min_h = min(min_h, abs(r.mean_curvature))
    max_res = max(max_normal, max_tangential)

    if max_h <= tol:
        label, margin = MINIMAL, tol - max_h
    elif max_res <= tol and min_h > margin_floor:
        label, margin = PROPER_BIHARMONIC, tol - max_res
    elif max_res > tol:
        label, margin = NOT_BIHARMONIC, max_res - tol
    else:
        label, margin = NOT_BIHARMONIC, margin_floor - min_h
    return Verdict(
        classification=label,
        max_normal_residual=max_normal,
        max_tangential_residual=max_tangential,
        max_abs_mean_curvature=max_h,
        min_abs_mean_curvature=min_h,
        margin=margin,
        tol=tol,
        margin_floor=margin_floor,
        n_points=len(points),
    )
