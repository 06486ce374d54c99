"""Base curves in the conformal plane and their lifted vertical cylinders.

The base space is the plane with metric h = (dx^2 + dy^2)/F^2,
F = 1 + m(x^2 + y^2); vertical cylinders arise by lifting a base curve
through the submersion (x, y, z) -> (x, y) of the rotationally symmetric
chart family. Circles about the origin realize every admissible constant
geodesic curvature: an origin-centered coordinate circle of radius rho has
kappa_g = (1 - m rho^2)/rho (counterclockwise orientation, inward normal).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from . import jets
from .charts import (
    BCVModel,
    ChartPoint,
    TangentVector,
    christoffels_from_metric,
    covariant_derivative_at,
    curvature_arrays,
    frame_field,
    orthonormal_frame_at,
)
from .jets import value_of
from .surfaces import SurfacePatch

__all__ = [
    "PlaneCurve",
    "HopfInvariants",
    "circle_curve",
    "line_curve",
    "arclength_reparametrized",
    "curve_jet",
    "base_geodesic_curvature",
    "base_gaussian_curvature",
    "circle_for_kg",
    "lift_cylinder",
    "fiber_torsion",
    "hopf_invariants",
    "curve_ode_residual",
]


@dataclass(frozen=True)
class PlaneCurve:
    """Parametric curve s -> (x(s), y(s)) in the conformal base plane.

    ``fn`` must accept jet arguments. ``arclength`` marks unit speed in the
    metric h of the conformal parameter ``m`` the curve was built for.
    """

    fn: Callable
    s_range: tuple[float, float]
    arclength: bool = False
    m: float | None = None


def _plane_metric_fn(m: float):
    def components(x, y):
        F = 1.0 + m * (x * x + y * y)
        w = 1.0 / (F * F)
        return [[w, 0.0], [0.0, w]]

    return components


def circle_curve(m: float, rho: float, revolutions: float = 1.0) -> PlaneCurve:
    """Origin-centered coordinate circle of radius rho, unit speed in h.

    Counterclockwise; one revolution has h-length 2 pi rho / (1 + m rho^2).
    """
    if rho <= 0.0:
        raise ValueError(f"circle radius must be positive, got {rho}")
    F = 1.0 + m * rho * rho
    if F <= 0.0:
        raise ValueError(f"circle radius {rho} outside the valid disk (F={F})")
    rate = F / rho  # d(angle)/d(arclength)
    period = 2.0 * math.pi * rho / F

    def fn(s):
        ang = rate * s
        return (rho * jets.cos(ang), rho * jets.sin(ang))

    return PlaneCurve(fn, (0.0, period * revolutions), arclength=True, m=m)


def _tanh(x):
    e = jets.exp(2.0 * x)
    return (e - 1.0) / (e + 1.0)


def line_curve(m: float, angle: float = 0.0, length: float | None = None) -> PlaneCurve:
    """Radial geodesic through the origin, unit speed in h.

    Radial lines are geodesics of the rotationally symmetric base metric;
    the chart position at arclength s is tan(sqrt(m) s)/sqrt(m) for m > 0
    (tanh for m < 0, identity for m = 0) along the given direction.
    """
    ca, sa = math.cos(angle), math.sin(angle)
    if m > 0.0:
        rm = math.sqrt(m)
        s_max = 0.45 * math.pi / rm  # stay clear of the chart's antipodal circle
        def radial(s):
            w = rm * s
            return jets.sin(w) / jets.cos(w) / rm
    elif m == 0.0:
        s_max = 1.0
        def radial(s):
            return s
    else:
        rm = math.sqrt(-m)
        s_max = 1.0
        def radial(s):
            return _tanh(rm * s) / rm

    half = min(length / 2.0, s_max) if length is not None else s_max

    def fn(s):
        t = radial(s)
        return (ca * t, sa * t)

    return PlaneCurve(fn, (-half, half), arclength=True, m=m)


def _speed_and_derivative(curve: PlaneCurve, m: float, sigma: float):
    """h-speed of the raw curve and its parameter derivative at sigma."""
    js = jets.jet2_vars((sigma,))[0]
    x, y = curve.fn(js)
    # degree-1 jets (in sigma) of position and velocity
    x1 = jets.Jet(value_of(x), jets.grad_of(x, 1))
    y1 = jets.Jet(value_of(y), jets.grad_of(y, 1))
    xp = jets.Jet(jets.grad_of(x, 1)[0], jets.hess_of(x, 1)[0])
    yp = jets.Jet(jets.grad_of(y, 1)[0], jets.hess_of(y, 1)[0])
    F = 1.0 + m * (x1 * x1 + y1 * y1)
    v = jets.sqrt(xp * xp + yp * yp) / F
    return v.val, v.grad[0]


def arclength_reparametrized(curve: PlaneCurve, m: float, quad_tol: float = 1e-10) -> PlaneCurve:
    """Reparametrize a curve by h-arclength (numeric quadrature + inversion)."""
    a, b = curve.s_range
    speed = lambda t: _speed_and_derivative(curve, m, t)[0]

    def cumulative(sigma: float) -> float:
        return quad(speed, a, sigma, epsabs=quad_tol, epsrel=quad_tol, limit=200)[0]

    total = cumulative(b)

    def sigma_of(s: float) -> float:
        if s <= 0.0:
            return a
        if s >= total:
            return b
        return brentq(lambda t: cumulative(t) - s, a, b, xtol=1e-13)

    def fn(s):
        s0 = value_of(s)
        sigma0 = sigma_of(s0)
        if not isinstance(s, (jets.Jet, jets.Jet2)):
            return curve.fn(sigma0)
        v, dv = _speed_and_derivative(curve, m, sigma0)
        d1 = 1.0 / v
        d2 = -dv / v**3
        return curve.fn(jets.taylor_compose(s, sigma0, d1, d2))

    return PlaneCurve(fn, (0.0, total), arclength=True, m=m)


def curve_jet(curve: PlaneCurve, s: float):
    """(x, y, x', y', x'', y'') of the curve at s."""
    js = jets.jet2_vars((float(s),))[0]
    x, y = curve.fn(js)
    return (
        value_of(x),
        value_of(y),
        jets.grad_of(x, 1)[0],
        jets.grad_of(y, 1)[0],
        jets.hess_of(x, 1)[0, 0],
        jets.hess_of(y, 1)[0, 0],
    )


def base_geodesic_curvature(m: float, curve: PlaneCurve, s: float) -> float:
    """Signed geodesic curvature of an arclength curve in the base metric h.

    Computed from the h-covariant acceleration against the 90-degree-rotated
    tangent; counterclockwise origin circles have positive curvature.
    """
    if not curve.arclength:
        raise ValueError("curve is not arclength-parametrized; reparametrize first")
    if curve.m is not None and not math.isclose(curve.m, m, rel_tol=0, abs_tol=1e-12):
        raise ValueError(f"curve was arclength-normalized for m={curve.m}, not m={m}")
    x, y, xp, yp, xpp, ypp = curve_jet(curve, s)
    speed_sq = xp * xp + yp * yp
    if speed_sq < 1e-24:
        raise ValueError(f"zero-speed point at s={s}")
    gamma = christoffels_from_metric(_plane_metric_fn(m), (x, y))
    vel = np.array([xp, yp])
    acc = np.array([xpp, ypp]) + np.einsum("kij,i,j->k", gamma, vel, vel)
    normal = np.array([-yp, xp])
    F = 1.0 + m * (x * x + y * y)
    # h(acc, n) / |n|_h with |n|_h = sqrt(speed_sq)/F
    return float(acc @ normal) / (F * math.sqrt(speed_sq))


def base_gaussian_curvature(m: float, x: float, y: float) -> float:
    """Gaussian curvature of the base metric h at (x, y), numerically (= 4m)."""
    g, _, _, r_low, _ = curvature_arrays(_plane_metric_fn(m), (x, y))
    det = g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]
    return float(r_low[0, 0, 1, 1] / det)


def circle_for_kg(m: float, kappa_target: float) -> float:
    """Coordinate radius of the origin circle with geodesic curvature kappa_target.

    Unique positive root of m rho^2 + kappa rho - 1 = 0 (requires m > 0).
    """
    if m <= 0.0:
        raise ValueError(f"circle radius requires m > 0, got m={m}")
    if kappa_target < 0.0:
        raise ValueError(f"target curvature must be nonnegative, got {kappa_target}")
    return (-kappa_target + math.sqrt(kappa_target**2 + 4.0 * m)) / (2.0 * m)


def lift_cylinder(m: float, l: float, curve: PlaneCurve,
                  t_range: tuple[float, float] = (-0.5, 0.5)) -> SurfacePatch:
    """Vertical cylinder over a base curve: r(s, t) = (x(s), y(s), t)."""
    model = BCVModel(m=m, l=l)
    fn = curve.fn

    def imm(s, t):
        x, y = fn(s)
        return (x, y, t)

    return SurfacePatch(imm, curve.s_range, t_range, model)


def fiber_torsion(m: float, l: float, curve: PlaneCurve, s: float) -> float:
    """-<nabla_X V, xi> along the lifted cylinder (X horizontal lift, V fiber).

    Computed numerically from the covariant derivative of the fiber field;
    constant and equal to -l/2 in the lifted frame convention with
    xi = (y'/F) E1 - (x'/F) E2.
    """
    x, y, xp, yp, _, _ = curve_jet(curve, s)
    if xp * xp + yp * yp < 1e-24:
        raise ValueError(f"zero-speed point at s={s}")
    model = BCVModel(m=m, l=l)
    p = ChartPoint(x, y, 0.0)
    e1, e2, _ = orthonormal_frame_at(model, p)
    F = 1.0 + m * (x * x + y * y)
    X = TangentVector(p, (xp / F) * e1.components + (yp / F) * e2.components)
    xi = TangentVector(p, (yp / F) * e1.components - (xp / F) * e2.components)
    nab = covariant_derivative_at(model, p, frame_field(model, 3), X)
    return -model.inner(nab, xi)


@dataclass(frozen=True)
class HopfInvariants:
    """Closed-form invariants of the cylinder over a constant-curvature circle."""

    kappa_g: float
    tau_g: float
    mean_curvature: float
    shape_norm_sq: float
    radius: float  # extrinsic radius of the base circle in the curved base


def hopf_invariants(m: float, l: float, kappa_g: float) -> HopfInvariants:
    """H = kappa_g/2, |A|^2 = kappa_g^2 + l^2/2, tau = -l/2, R = 1/sqrt(kappa_g^2 + 4m)."""
    if m <= 0.0:
        raise ValueError(f"extrinsic circle radius requires m > 0, got m={m}")
    if kappa_g < 0.0:
        raise ValueError(f"geodesic curvature must be nonnegative, got {kappa_g}")
    return HopfInvariants(
        kappa_g=kappa_g,
        tau_g=-0.5 * l,
        mean_curvature=0.5 * kappa_g,
        shape_norm_sq=kappa_g**2 + 0.5 * l * l,
        radius=1.0 / math.sqrt(kappa_g**2 + 4.0 * m),
    )


def curve_ode_residual(kappa, m: float, l: float, s: float = 0.0) -> tuple[float, float, float]:
    """Left-hand sides of the curve-level biharmonicity system.

    (kappa'' - kappa^3 + (4m - l^2) kappa, 3 kappa kappa', -(l/2) kappa').
    ``kappa`` is either a jet-generic callable of s, or a (value, first,
    second derivative) triple for closed-form evaluation.
    """
    if callable(kappa):
        js = jets.jet2_vars((float(s),))[0]
        k = kappa(js)
        k0 = value_of(k)
        k1 = jets.grad_of(k, 1)[0]
        k2 = jets.hess_of(k, 1)[0, 0]
    else:
        k0, k1, k2 = (float(v) for v in kappa)
    w = 4.0 * m - l * l
    return (k2 - k0**3 + w * k0, 3.0 * k0 * k1, -0.5 * l * k1)
