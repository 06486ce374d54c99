"""Metric charts for homogeneous 3-geometries and their curvature data.

Three chart families are provided:

* the rotationally symmetric two-parameter (Bianchi-Cartan-Vranceanu) family
  g = (dx^2+dy^2)/F^2 + (dz + (l/2)(y dx - x dy)/F)^2 with F = 1 + m(x^2+y^2),
* the solvable-group geometry g = e^{2z} dx^2 + e^{-2z} dy^2 + dz^2,
* a conformally flat chart g_ij = delta_ij / (1 + (c/4) r^2)^2 realizing the
  constant-curvature space forms.

Connection, curvature and Ricci data are always derived from the metric
components by exact jet differentiation. The closed-form frame tables live in
a separate JSON data set (see ``reference_tables``) that is consulted only by
tests and verification suites, never by the computation path here.

Sign conventions: R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z -
nabla_[X,Y] Z, the 4-tensor is R(X,Y,Z,W) = g(R(Z,W)Y, X), and
Ric(X,Y) = sum_i <R(X,e_i)e_i, Y> over an orthonormal frame.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import jets
from .jets import value_of

__all__ = [
    "BCV",
    "SOL",
    "SPACE_FORM",
    "MIN_CONFORMAL_FACTOR",
    "ChartPoint",
    "TangentVector",
    "MetricModel",
    "BCVModel",
    "SolModel",
    "SpaceFormChartModel",
    "FrameField",
    "CurvatureData",
    "make_model",
    "as_point",
    "metric_at",
    "orthonormal_frame_at",
    "frame_field",
    "christoffels_at",
    "covariant_derivative_at",
    "lie_bracket_frame_at",
    "curvature_data",
    "riemann_at",
    "ricci_at",
    "ricci_operator_at",
    "christoffels_from_metric",
    "curvature_arrays",
    "frame_connection_table",
    "frame_lie_table",
    "frame_riemann_table",
    "frame_ricci_table",
    "frame_tables",
]

BCV = "bcv"
SOL = "sol"
SPACE_FORM = "space_form_chart"

# Points where the conformal factor dips below this are rejected: the metric
# blows up as F -> 0 and numerics there are meaningless.
MIN_CONFORMAL_FACTOR = 0.05

_KIND_ALIASES = {
    "bcv": BCV,
    "sol": SOL,
    "space_form_chart": SPACE_FORM,
    "spaceformchart": SPACE_FORM,
    "space_form": SPACE_FORM,
}


@dataclass(frozen=True)
class ChartPoint:
    """Coordinates of a point in a metric chart."""

    x: float
    y: float
    z: float

    def coords(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)


def as_point(p) -> ChartPoint:
    if isinstance(p, ChartPoint):
        return p
    x, y, z = p
    return ChartPoint(float(x), float(y), float(z))


@dataclass(frozen=True, eq=False)
class TangentVector:
    """Coordinate components of a tangent vector at a chart point."""

    base: ChartPoint
    components: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "components", np.asarray(self.components))


class MetricModel:
    """A metric chart: closed-form metric and orthonormal-frame components.

    Component maps accept floats or jets, so every derivative of the metric
    (and of the frame) is available exactly wherever a formula is evaluated.
    """

    kind = "abstract"

    def metric_components(self, x, y, z):
        """Symmetric 3x3 nested list of metric components at (x, y, z)."""
        raise NotImplementedError

    def frame_components(self, x, y, z):
        """Rows E1, E2, E3 of the orthonormal frame in coordinate components."""
        raise NotImplementedError

    def validate_point(self, p: ChartPoint) -> None:
        for c in (p.x, p.y, p.z):
            if not math.isfinite(c):
                raise ValueError(f"non-finite chart coordinate in {p}")

    def inner(self, v: TangentVector, w: TangentVector) -> float:
        if v.base != w.base:
            raise ValueError("inner product of vectors at different base points")
        g = metric_at(self, v.base)
        return float(v.components @ g @ w.components)

    def norm(self, v: TangentVector) -> float:
        return math.sqrt(max(self.inner(v, v), 0.0))

    def sample_box(self) -> tuple[tuple[float, float], ...]:
        """Coordinate box of valid points used by quasi-random sampling."""
        return ((-1.0, 1.0), (-1.0, 1.0), (-1.0, 1.0))


@dataclass(frozen=True)
class BCVModel(MetricModel):
    """Rotationally symmetric family with curvature parameters (m, l).

    m = l = 0 is the Euclidean chart; m < 0 is only valid on the disk
    where F = 1 + m(x^2+y^2) stays positive.
    """

    m: float
    l: float

    kind = BCV

    def __post_init__(self):
        for name in ("m", "l"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"non-finite parameter {name}={v!r}")
            object.__setattr__(self, name, v)

    def conformal_factor(self, x, y):
        return 1.0 + self.m * (x * x + y * y)

    def metric_components(self, x, y, z):
        l = self.l
        F = self.conformal_factor(x, y)
        w = 1.0 / (F * F)
        a = (0.5 * l) * y / F
        b = (-0.5 * l) * x / F
        return [
            [w + a * a, a * b, a],
            [a * b, w + b * b, b],
            [a, b, 1.0],
        ]

    def frame_components(self, x, y, z):
        l = self.l
        F = self.conformal_factor(x, y)
        return [
            [F, 0.0, (-0.5 * l) * y],
            [0.0, F, (0.5 * l) * x],
            [0.0, 0.0, 1.0],
        ]

    def validate_point(self, p: ChartPoint) -> None:
        super().validate_point(p)
        if self.m < 0.0:
            F = self.conformal_factor(p.x, p.y)
            if F <= MIN_CONFORMAL_FACTOR:
                raise ValueError(
                    f"point {p} outside valid disk-cylinder (F={F:.4g} <= {MIN_CONFORMAL_FACTOR})"
                )

    def sample_box(self):
        if self.m >= 0.0:
            return ((-1.0, 1.0), (-1.0, 1.0), (-1.0, 1.0))
        # keep F comfortably positive: x^2 + y^2 < 0.5 / |m|
        r = math.sqrt(0.25 / abs(self.m))
        r = min(r, 1.0)
        return ((-r, r), (-r, r), (-1.0, 1.0))


@dataclass(frozen=True)
class SolModel(MetricModel):
    """Solvable-group geometry with exponentially sheared slices."""

    kind = SOL

    def metric_components(self, x, y, z):
        e2z = jets.exp(2.0 * z)
        return [
            [e2z, 0.0, 0.0],
            [0.0, 1.0 / e2z, 0.0],
            [0.0, 0.0, 1.0],
        ]

    def frame_components(self, x, y, z):
        ez = jets.exp(z)
        return [
            [1.0 / ez, 0.0, 0.0],
            [0.0, ez, 0.0],
            [0.0, 0.0, 1.0],
        ]

    def sample_box(self):
        return ((-1.0, 1.0), (-1.0, 1.0), (-1.2, 1.2))


@dataclass(frozen=True)
class SpaceFormChartModel(MetricModel):
    """Conformally flat chart of the space form with sectional curvature c."""

    c: float

    kind = SPACE_FORM

    def __post_init__(self):
        v = float(self.c)
        if not math.isfinite(v):
            raise ValueError(f"non-finite parameter c={v!r}")
        object.__setattr__(self, "c", v)

    def conformal_factor(self, x, y, z):
        return 1.0 + (0.25 * self.c) * (x * x + y * y + z * z)

    def metric_components(self, x, y, z):
        phi = self.conformal_factor(x, y, z)
        w = 1.0 / (phi * phi)
        return [
            [w, 0.0, 0.0],
            [0.0, w, 0.0],
            [0.0, 0.0, w],
        ]

    def frame_components(self, x, y, z):
        phi = self.conformal_factor(x, y, z)
        return [
            [phi, 0.0, 0.0],
            [0.0, phi, 0.0],
            [0.0, 0.0, phi],
        ]

    def validate_point(self, p: ChartPoint) -> None:
        super().validate_point(p)
        if self.c < 0.0:
            phi = self.conformal_factor(p.x, p.y, p.z)
            if phi <= MIN_CONFORMAL_FACTOR:
                raise ValueError(
                    f"point {p} outside valid conformal ball (phi={phi:.4g})"
                )

    def sample_box(self):
        if self.c >= 0.0:
            return ((-1.0, 1.0), (-1.0, 1.0), (-1.0, 1.0))
        r = math.sqrt(1.0 / abs(self.c))
        r = min(r, 1.0)
        return ((-r, r), (-r, r), (-r, r))


def make_model(kind: str, **params) -> MetricModel:
    """Build a metric chart by kind: 'bcv' (m, l), 'sol', 'space_form_chart' (c)."""
    key = str(kind).strip().lower().replace("-", "_").replace(" ", "_")
    norm = _KIND_ALIASES.get(key)
    if norm is None:
        raise ValueError(f"unknown chart kind {kind!r}")
    for name, v in params.items():
        if not math.isfinite(float(v)):
            raise ValueError(f"non-finite parameter {name}={v!r}")
    if norm == BCV:
        return BCVModel(m=float(params.get("m", 0.0)), l=float(params.get("l", 0.0)))
    if norm == SOL:
        return SolModel()
    return SpaceFormChartModel(c=float(params.get("c", 0.0)))


# -- pointwise metric and frame ----------------------------------------------

def metric_at(model: MetricModel, p) -> np.ndarray:
    """Metric components g_ij at p as a symmetric 3x3 array."""
    p = as_point(p)
    model.validate_point(p)
    comp = model.metric_components(p.x, p.y, p.z)
    return np.array(comp, dtype=float)


def orthonormal_frame_at(model: MetricModel, p) -> tuple[TangentVector, TangentVector, TangentVector]:
    """Values (E1, E2, E3) of the model's orthonormal frame at p."""
    p = as_point(p)
    model.validate_point(p)
    rows = model.frame_components(p.x, p.y, p.z)
    return tuple(TangentVector(p, np.array(r, dtype=float)) for r in rows)


def frame_field(model: MetricModel, index: int):
    """The i-th frame vector (1-based) as a point -> TangentVector map.

    The returned callable accepts chart points with jet coordinates, so it can
    be differentiated by ``covariant_derivative_at``.
    """
    if index not in (1, 2, 3):
        raise ValueError(f"frame index must be 1, 2 or 3, got {index}")

    def field(p):
        row = model.frame_components(p.x, p.y, p.z)[index - 1]
        return TangentVector(p, row)

    return field


@dataclass(frozen=True)
class FrameField:
    """The model's orthonormal frame as three tangent-vector-valued maps."""

    model: MetricModel

    def at(self, p):
        return orthonormal_frame_at(self.model, p)

    def field(self, index: int):
        return frame_field(self.model, index)


# -- connection and curvature from the metric --------------------------------

def _metric_first_jets(fn, coords):
    """(g, dg) with dg[a, i, j] = d_a g_ij, from one degree-1 jet evaluation."""
    n = len(coords)
    xs = jets.jet_vars(coords)
    comp = fn(*xs)
    g = np.empty((n, n))
    dg = np.empty((n, n, n))
    for i in range(n):
        for j in range(n):
            e = comp[i][j]
            g[i, j] = value_of(e)
            dg[:, i, j] = jets.grad_of(e, n)
    return g, dg


def _christoffels_from_first(g, dg):
    ginv = np.linalg.inv(g)
    # S[i,j,l] = d_i g_jl + d_j g_il - d_l g_ij
    s = dg + np.transpose(dg, (1, 0, 2)) - np.transpose(dg, (1, 2, 0))
    return ginv, 0.5 * np.einsum("kl,ijl->kij", ginv, s)


def christoffels_from_metric(fn, coords) -> np.ndarray:
    """Christoffel symbols of an n-dim metric component map, indexed [k, i, j]."""
    g, dg = _metric_first_jets(fn, coords)
    return _christoffels_from_first(g, dg)[1]


def curvature_arrays(fn, coords):
    """Curvature arrays of an n-dim metric component map at a point.

    Returns (g, ginv, gamma, riemann_lowered, ricci) where
    ``riemann_lowered[a, i, j, k] = g(R(d_i, d_j) d_k, d_a)`` and
    ``ricci[c, f] = Ric(d_c, d_f)``.
    """
    n = len(coords)
    xs = jets.jet2_vars(coords)
    comp = fn(*xs)
    g = np.empty((n, n))
    dg = np.empty((n, n, n))
    d2g = np.empty((n, n, n, n))
    for i in range(n):
        for j in range(n):
            e = comp[i][j]
            g[i, j] = value_of(e)
            dg[:, i, j] = jets.grad_of(e, n)
            d2g[:, :, i, j] = jets.hess_of(e, n)
    ginv, gamma = _christoffels_from_first(g, dg)

    # d_a of S[i,j,l] and of ginv, then of gamma
    s = dg + np.transpose(dg, (1, 0, 2)) - np.transpose(dg, (1, 2, 0))
    ds = d2g + np.transpose(d2g, (0, 2, 1, 3)) - np.transpose(d2g, (0, 2, 3, 1))
    dginv = -np.einsum("ik,akl,lj->aij", ginv, dg, ginv)
    dgamma = 0.5 * (
        np.einsum("akl,ijl->akij", dginv, s) + np.einsum("kl,aijl->akij", ginv, ds)
    )

    # (R(d_i, d_j) d_k)^l from the curvature operator convention
    p1 = np.transpose(dgamma, (1, 0, 2, 3))  # d_i gamma^l_jk
    p2 = np.transpose(dgamma, (1, 2, 0, 3))  # d_j gamma^l_ik
    q1 = np.einsum("lim,mjk->lijk", gamma, gamma)
    q2 = np.einsum("ljm,mik->lijk", gamma, gamma)
    r_up = p1 - p2 + q1 - q2
    r_low = np.einsum("al,lijk->aijk", g, r_up)
    ricci = np.einsum("ab,fcab->cf", ginv, r_low)
    return g, ginv, gamma, r_low, ricci


def _coord_fn(model: MetricModel):
    return model.metric_components


def christoffels_at(model: MetricModel, p) -> np.ndarray:
    """Christoffel symbols at p, indexed [k, i, j] (symmetric in i, j)."""
    p = as_point(p)
    model.validate_point(p)
    return christoffels_from_metric(_coord_fn(model), (p.x, p.y, p.z))


@dataclass(frozen=True, eq=False)
class CurvatureData:
    """Pointwise curvature bundle for one chart point.

    ``riemann_lowered[a, i, j, k] = g(R(d_i, d_j) d_k, d_a)``; the evaluator
    methods follow the tensor convention R(X,Y,Z,W) = g(R(Z,W)Y, X).
    """

    point: ChartPoint
    metric: np.ndarray
    metric_inv: np.ndarray
    christoffels: np.ndarray
    riemann_lowered: np.ndarray
    ricci_matrix: np.ndarray

    def _check_base(self, *vectors):
        for v in vectors:
            if v.base != self.point:
                raise ValueError(
                    f"vector based at {v.base} used with curvature data at {self.point}"
                )

    def riemann(self, X: TangentVector, Y: TangentVector, Z: TangentVector, W: TangentVector) -> float:
        self._check_base(X, Y, Z, W)
        return float(
            np.einsum(
                "aijk,a,i,j,k->",
                self.riemann_lowered,
                X.components,
                Z.components,
                W.components,
                Y.components,
            )
        )

    def ricci(self, X: TangentVector, Y: TangentVector) -> float:
        self._check_base(X, Y)
        return float(X.components @ self.ricci_matrix @ Y.components)

    def ricci_operator(self, Z: TangentVector) -> TangentVector:
        self._check_base(Z)
        comp = self.metric_inv @ self.ricci_matrix @ Z.components
        return TangentVector(self.point, comp)


def curvature_data(model: MetricModel, p) -> CurvatureData:
    """All curvature data at p from one degree-2 jet evaluation of the metric."""
    p = as_point(p)
    model.validate_point(p)
    g, ginv, gamma, r_low, ricci = curvature_arrays(_coord_fn(model), (p.x, p.y, p.z))
    return CurvatureData(p, g, ginv, gamma, r_low, ricci)


def riemann_at(model: MetricModel, p, X, Y, Z, W) -> float:
    """R(X, Y, Z, W) = g(R(Z, W)Y, X) at p."""
    return curvature_data(model, p).riemann(X, Y, Z, W)


def ricci_at(model: MetricModel, p, X, Y) -> float:
    return curvature_data(model, p).ricci(X, Y)


def ricci_operator_at(model: MetricModel, p, Z) -> TangentVector:
    return curvature_data(model, p).ricci_operator(Z)


def covariant_derivative_at(model: MetricModel, p, field, direction: TangentVector) -> TangentVector:
    """Levi-Civita derivative of a vector field along ``direction`` at p.

    ``field`` maps ChartPoint -> TangentVector and must accept jet
    coordinates (all fields constructed by this package do).
    """
    p = as_point(p)
    model.validate_point(p)
    if direction.base != p:
        raise ValueError("direction vector not based at the evaluation point")
    xs = jets.jet_vars((p.x, p.y, p.z))
    v = field(ChartPoint(xs[0], xs[1], xs[2]))
    comp = list(v.components)
    vals = np.array([value_of(c) for c in comp])
    jac = np.array([jets.grad_of(c, 3) for c in comp])  # jac[k, a] = d_a V^k
    gamma = christoffels_at(model, p)
    d = np.asarray(direction.components, dtype=float)
    out = jac @ d + np.einsum("kab,a,b->k", gamma, d, vals)
    return TangentVector(p, out)


def _frame_values_and_jacobians(model: MetricModel, p: ChartPoint):
    xs = jets.jet_vars((p.x, p.y, p.z))
    rows = model.frame_components(xs[0], xs[1], xs[2])
    vals = np.empty((3, 3))
    jac = np.empty((3, 3, 3))  # jac[r, k, a] = d_a E_r^k
    for r in range(3):
        for k in range(3):
            e = rows[r][k]
            vals[r, k] = value_of(e)
            jac[r, k, :] = jets.grad_of(e, 3)
    return vals, jac


def lie_bracket_frame_at(model: MetricModel, p, i: int, j: int) -> TangentVector:
    """[E_i, E_j] at p (1-based frame indices), from frame component jets."""
    if i not in (1, 2, 3) or j not in (1, 2, 3):
        raise ValueError(f"frame indices must be in 1..3, got ({i}, {j})")
    p = as_point(p)
    model.validate_point(p)
    vals, jac = _frame_values_and_jacobians(model, p)
    a, b = i - 1, j - 1
    comp = np.einsum("a,ka->k", vals[a], jac[b]) - np.einsum("a,ka->k", vals[b], jac[a])
    return TangentVector(p, comp)


# -- frame tables (batch evaluation used by verification suites) -------------

def frame_connection_table(model: MetricModel, p) -> np.ndarray:
    """coef[i, j, k] with nabla_{E_i} E_j = sum_k coef[i, j, k] E_k."""
    p = as_point(p)
    model.validate_point(p)
    vals, jac = _frame_values_and_jacobians(model, p)
    gamma = christoffels_at(model, p)
    g = metric_at(model, p)
    # (nabla_{E_i} E_j)^k in coordinates
    nab = np.einsum("ia,jka->ijk", vals, jac) + np.einsum("kab,ia,jb->ijk", gamma, vals, vals)
    return np.einsum("ijk,kl,ml->ijm", nab, g, vals)


def frame_lie_table(model: MetricModel, p) -> np.ndarray:
    """coef[i, j, k] with [E_i, E_j] = sum_k coef[i, j, k] E_k."""
    p = as_point(p)
    model.validate_point(p)
    vals, jac = _frame_values_and_jacobians(model, p)
    g = metric_at(model, p)
    brk = np.einsum("ia,jka->ijk", vals, jac) - np.einsum("ja,ika->ijk", vals, jac)
    return np.einsum("ijk,kl,ml->ijm", brk, g, vals)


def frame_riemann_table(model: MetricModel, p) -> np.ndarray:
    """All 81 components R(E_a, E_b, E_c, E_d) = g(R(E_c, E_d)E_b, E_a)."""
    cd = curvature_data(model, p)
    vals, _ = _frame_values_and_jacobians(model, cd.point)
    return np.einsum(
        "aijk,Aa,Ci,Dj,Bk->ABCD", cd.riemann_lowered, vals, vals, vals, vals
    )


def frame_ricci_table(model: MetricModel, p) -> np.ndarray:
    """All 9 components Ric(E_i, E_j)."""
    cd = curvature_data(model, p)
    vals, _ = _frame_values_and_jacobians(model, cd.point)
    return np.einsum("cf,Ac,Bf->AB", cd.ricci_matrix, vals, vals)


def frame_tables(model: MetricModel, p):
    """(connection, lie, riemann, ricci) frame tables in one shared pass."""
    cd = curvature_data(model, p)
    vals, jac = _frame_values_and_jacobians(model, cd.point)
    g = cd.metric
    directional = np.einsum("ia,jka->ijk", vals, jac)
    nab = directional + np.einsum("kab,ia,jb->ijk", cd.christoffels, vals, vals)
    to_frame = np.einsum("kl,ml->km", g, vals)
    connection = np.einsum("ijk,km->ijm", nab, to_frame)
    lie = np.einsum("ijk,km->ijm", directional - np.transpose(directional, (1, 0, 2)), to_frame)
    riemann = np.einsum(
        "aijk,Aa,Ci,Dj,Bk->ABCD", cd.riemann_lowered, vals, vals, vals, vals
    )
    ricci = np.einsum("cf,Ac,Bf->AB", cd.ricci_matrix, vals, vals)
    return connection, lie, riemann, ricci
