"""Property-based invariants of the geometry engine."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bhsurf import (
    BCVModel,
    ChartPoint,
    SolModel,
    SpaceFormChartModel,
    TangentVector,
    curvature_data,
    lie_bracket_frame_at,
    metric_at,
    orthonormal_frame_at,
)
from bhsurf.charts import frame_connection_table, frame_lie_table, frame_tables
from bhsurf.hopf import base_geodesic_curvature, circle_curve
from bhsurf.suites import sample_points

coord = st.floats(min_value=-0.9, max_value=0.9, allow_nan=False, allow_infinity=False)
m_param = st.sampled_from([0.0, 1.0, 0.25, -0.125])
l_param = st.sampled_from([0.0, 0.5, 1.0, 2.0])


def models_for(m, l):
    return [BCVModel(m, l), SolModel(), SpaceFormChartModel(1.0)]


@given(m=m_param, l=l_param, x=coord, y=coord, z=coord)
@settings(max_examples=40, deadline=None)
def test_frame_orthonormality_everywhere(m, l, x, y, z):
    p = ChartPoint(x, y, z)
    for model in models_for(m, l):
        g = metric_at(model, p)
        frame = np.stack([e.components for e in orthonormal_frame_at(model, p)])
        assert np.abs(frame @ g @ frame.T - np.eye(3)).max() <= 1e-10


@given(m=m_param, l=l_param, x=coord, y=coord, z=coord)
@settings(max_examples=25, deadline=None)
def test_torsion_free_connection(m, l, x, y, z):
    p = ChartPoint(x, y, z)
    for model in models_for(m, l):
        conn = frame_connection_table(model, p)
        lie = frame_lie_table(model, p)
        torsion = conn - np.transpose(conn, (1, 0, 2)) - lie
        assert np.abs(torsion).max() <= 1e-7


@given(m=m_param, l=l_param, x=coord, y=coord, z=coord)
@settings(max_examples=25, deadline=None)
def test_curvature_symmetries_and_bianchi(m, l, x, y, z):
    p = ChartPoint(x, y, z)
    for model in models_for(m, l):
        _, _, riem, _ = frame_tables(model, p)
        assert np.abs(riem + np.transpose(riem, (1, 0, 2, 3))).max() <= 1e-8
        assert np.abs(riem + np.transpose(riem, (0, 1, 3, 2))).max() <= 1e-8
        assert np.abs(riem - np.transpose(riem, (2, 3, 0, 1))).max() <= 1e-8
        bianchi = riem + np.transpose(riem, (0, 2, 3, 1)) + np.transpose(riem, (0, 3, 1, 2))
        assert np.abs(bianchi).max() <= 1e-8


@given(
    x=coord,
    y=coord,
    z=coord,
    comps=st.lists(st.floats(min_value=-2, max_value=2), min_size=6, max_size=6),
)
@settings(max_examples=30, deadline=None)
def test_ricci_operator_represents_bilinear_form(x, y, z, comps):
    p = ChartPoint(x, y, z)
    model = BCVModel(1.0, 1.0)
    cd = curvature_data(model, p)
    zv = TangentVector(p, np.array(comps[:3]))
    wv = TangentVector(p, np.array(comps[3:]))
    lhs = model.inner(cd.ricci_operator(zv), wv)
    assert lhs == pytest.approx(cd.ricci(zv, wv), abs=1e-10)


@given(x=coord, y=coord, z=coord)
@settings(max_examples=30, deadline=None)
def test_einstein_property_of_space_forms(x, y, z):
    p = ChartPoint(x, y, z)
    for c in (1.0, -0.5):
        model = SpaceFormChartModel(c)
        cd = curvature_data(model, p)
        assert np.abs(cd.ricci_matrix - 2.0 * c * cd.metric).max() <= 1e-8


@given(m=m_param, l=l_param, i=st.sampled_from([1, 2, 3]), j=st.sampled_from([1, 2, 3]))
@settings(max_examples=30, deadline=None)
def test_lie_bracket_antisymmetry(m, l, i, j):
    model = BCVModel(m, l)
    p = ChartPoint(0.3, -0.2, 0.5)
    a = lie_bracket_frame_at(model, p, i, j).components
    b = lie_bracket_frame_at(model, p, j, i).components
    np.testing.assert_allclose(np.asarray(a, float), -np.asarray(b, float), atol=1e-12)


@given(rho=st.floats(min_value=0.2, max_value=0.9), frac=st.floats(min_value=0.0, max_value=1.0))
@settings(max_examples=25, deadline=None)
def test_circle_curvature_is_parameter_independent(rho, frac):
    m = 1.0
    curve = circle_curve(m, rho)
    s = frac * curve.s_range[1]
    kappa = base_geodesic_curvature(m, curve, s)
    assert kappa == pytest.approx((1.0 - m * rho * rho) / rho, abs=1e-9)


def test_quasi_random_sampling_respects_domains():
    for model in (BCVModel(-0.125, 0.0), SpaceFormChartModel(-0.5)):
        for p in sample_points(model, 100, seed=0):
            metric_at(model, p)  # raises if invalid


def test_metric_compatibility_along_curves():
    # d/dt g(Y, Z) = g(nabla Y, Z) + g(Y, nabla Z) for polynomial fields
    from bhsurf import covariant_derivative_at, jets

    rng = np.random.default_rng(0)
    for model in (BCVModel(1.0, 1.0), SolModel(), SpaceFormChartModel(1.0)):
        coeffs = rng.uniform(-1, 1, size=(2, 3, 4))

        def make_field(c):
            return lambda q: TangentVector(
                q, [c[k][0] + c[k][1] * q.x + c[k][2] * q.y * q.z + c[k][3] * q.x * q.x for k in range(3)]
            )

        field_y, field_z = make_field(coeffs[0]), make_field(coeffs[1])
        p0 = np.array([0.1, -0.2, 0.3])
        d = np.array([0.25, 0.15, -0.2])
        for t0 in (-0.5, 0.2, 0.6):
            (jt,) = jets.jet_vars((t0,))
            coords = [p0[k] + jt * d[k] for k in range(3)]
            gj = model.metric_components(coords[0], coords[1], coords[2])
            pj = ChartPoint(coords[0], coords[1], coords[2])
            lhs = jets.grad_of(
                jets.dot_quadratic(gj, list(field_y(pj).components), list(field_z(pj).components)), 1
            )[0]
            pt = ChartPoint(*(p0 + t0 * d))
            direction = TangentVector(pt, d)
            dy = covariant_derivative_at(model, pt, field_y, direction)
            dz = covariant_derivative_at(model, pt, field_z, direction)
            rhs = model.inner(dy, field_z(pt)) + model.inner(field_y(pt), dz)
            assert lhs == pytest.approx(rhs, abs=1e-7)
