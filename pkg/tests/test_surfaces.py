"""Surface calculus: jets, fundamental forms, normals, shape data, operators."""

import math

import numpy as np
import pytest

from bhsurf import (
    BCVModel,
    SolModel,
    SurfacePatch,
    first_fundamental_form,
    geodesic_sphere_patch,
    graph_patch,
    immersion_jet,
    intrinsic_gradient,
    laplace_beltrami,
    make_model,
    plane_patch,
    shape_report,
    unit_normal,
)
from bhsurf.hopf import circle_curve, circle_for_kg, lift_cylinder
from bhsurf.surfaces import chart_radius_for_geodesic_radius, swap_parameters

EUCLID = BCVModel(0.0, 0.0)


def cylinder_patch(model):
    from bhsurf import jets

    return SurfacePatch(
        lambda u, v: (jets.cos(u), jets.sin(u), v), (0.0, 2 * math.pi), (-1.0, 1.0), model
    )


class TestImmersionJet:
    def test_affine_plane(self):
        jet = immersion_jet(plane_patch(EUCLID), (0.3, -0.4))
        np.testing.assert_allclose(jet.du, [1, 0, 0], atol=0)
        np.testing.assert_allclose(jet.dv, [0, 1, 0], atol=0)
        np.testing.assert_allclose(jet.duu, 0, atol=0)

    def test_cylinder_second_partials(self):
        jet = immersion_jet(cylinder_patch(EUCLID), (0.7, 0.1))
        np.testing.assert_allclose(jet.duu, [-math.cos(0.7), -math.sin(0.7), 0], atol=1e-15)
        np.testing.assert_allclose(jet.duv, 0, atol=0)

    def test_hopf_fiber_direction(self):
        cyl = lift_cylinder(1.0, 2.0, circle_curve(1.0, 0.5))
        jet = immersion_jet(cyl, (0.2, 0.0))
        np.testing.assert_allclose(jet.dv, [0, 0, 1], atol=0)

    def test_finite_difference_fallback_matches_jets(self):
        analytic = cylinder_patch(EUCLID)
        fd = SurfacePatch(
            lambda u, v: (math.cos(u), math.sin(u), v),
            (0.0, 2 * math.pi),
            (-1.0, 1.0),
            EUCLID,
            analytic=False,
            fd_step=1e-4,
        )
        ja, jf = immersion_jet(analytic, (0.9, 0.2)), immersion_jet(fd, (0.9, 0.2))
        np.testing.assert_allclose(jf.du, ja.du, atol=1e-9)
        np.testing.assert_allclose(jf.duu, ja.duu, atol=1e-7)

    def test_out_of_domain(self):
        with pytest.raises(ValueError, match="outside domain"):
            immersion_jet(plane_patch(EUCLID), (3.0, 0.0))

    def test_rank_deficient(self):
        bad = SurfacePatch(lambda u, v: (u, u, 0.0 * v), (-1, 1), (-1, 1), EUCLID)
        with pytest.raises(ValueError, match="rank-deficient"):
            immersion_jet(bad, (0.1, 0.1))


class TestFirstForm:
    def test_plane_identity(self):
        np.testing.assert_allclose(
            first_fundamental_form(plane_patch(EUCLID), (0.2, 0.5)), np.eye(2), atol=0
        )

    def test_tilted_graph(self):
        form = first_fundamental_form(graph_patch(EUCLID, lambda u, v: u), (0.3, 0.4))
        np.testing.assert_allclose(form, [[2, 0], [0, 1]], atol=1e-15)

    def test_hopf_cylinder_cross_term(self):
        # I_st = (l/2F)(y x' - x y'); equals -rho at the start of a ccw circle
        rho = math.sqrt(2) - 1
        cyl = lift_cylinder(1.0, 2.0, circle_curve(1.0, rho))
        form = first_fundamental_form(cyl, (0.0, 0.0))
        assert form[0, 1] == pytest.approx(-rho, abs=1e-14)
        assert form[1, 1] == pytest.approx(1.0, abs=1e-14)

    def test_positive_definite(self):
        cyl = lift_cylinder(0.25, 1.0, circle_curve(0.25, 0.7))
        for uv in [(0.1, 0.2), (1.0, -0.3)]:
            evals = np.linalg.eigvalsh(first_fundamental_form(cyl, uv))
            assert evals.min() > 0


class TestUnitNormal:
    def test_plane_normal(self):
        xi = unit_normal(plane_patch(EUCLID), (0.0, 0.0))
        np.testing.assert_allclose(xi.components, [0, 0, 1], atol=0)

    def test_sol_plane_normal(self):
        xi = unit_normal(plane_patch(SolModel(), z0=0.4), (0.1, -0.2))
        np.testing.assert_allclose(xi.components, [0, 0, 1], atol=1e-15)

    def test_normalization_and_orthogonality(self):
        cyl = lift_cylinder(1.0, 1.0, circle_curve(1.0, 0.6))
        model = cyl.model
        for uv in [(0.2, 0.1), (0.9, -0.3)]:
            xi = unit_normal(cyl, uv)
            jet = immersion_jet(cyl, uv)
            from bhsurf import TangentVector, metric_at

            g = metric_at(model, jet.point)
            assert float(xi.components @ g @ xi.components) == pytest.approx(1.0, abs=1e-10)
            assert float(xi.components @ g @ jet.du) == pytest.approx(0.0, abs=1e-10)
            assert float(xi.components @ g @ jet.dv) == pytest.approx(0.0, abs=1e-10)

    def test_orientation_positively_oriented(self):
        cyl = lift_cylinder(1.0, 1.0, circle_curve(1.0, 0.6))
        for uv in [(0.3, 0.0), (1.5, 0.2)]:
            jet = immersion_jet(cyl, uv)
            xi = unit_normal(cyl, uv)
            det = np.linalg.det(np.stack([jet.du, jet.dv, xi.components]))
            assert det > 0

    def test_hopf_normal_formula(self):
        # xi = +/- ((y'/F) E1 - (x'/F) E2) for lifted cylinders
        from bhsurf import orthonormal_frame_at
        from bhsurf.hopf import curve_jet

        m, l = 1.0, 2.0
        curve = circle_curve(m, 0.45)
        cyl = lift_cylinder(m, l, curve)
        s = 0.3
        x, y, xp, yp, _, _ = curve_jet(curve, s)
        xi = unit_normal(cyl, (s, 0.0))
        e1, e2, _ = orthonormal_frame_at(cyl.model, xi.base)
        F = 1.0 + m * (x * x + y * y)
        ref = (yp / F) * e1.components - (xp / F) * e2.components
        sign = math.copysign(1.0, xi.components @ ref)
        np.testing.assert_allclose(xi.components, sign * ref, atol=1e-12)


class TestShapeReport:
    def test_sol_plane(self):
        sr = shape_report(plane_patch(SolModel()), (0.3, -0.1))
        assert sr.mean_curvature == pytest.approx(0.0, abs=1e-14)
        assert sr.shape_norm_sq == pytest.approx(2.0, abs=1e-12)

    def test_hopf_cylinder_invariants(self):
        cyl = lift_cylinder(1.0, 0.0, circle_curve(1.0, circle_for_kg(1.0, 2.0)))
        sr = shape_report(cyl, (0.4, 0.2))
        assert abs(sr.mean_curvature) == pytest.approx(1.0, abs=1e-12)
        assert sr.shape_norm_sq == pytest.approx(4.0, abs=1e-12)

    @pytest.mark.parametrize("rho,href", [(math.pi / 4, 1.0), (math.pi / 3, 1 / math.sqrt(3))])
    def test_geodesic_sphere(self, rho, href):
        sr = shape_report(geodesic_sphere_patch(1.0, rho), (1.2, 1.0))
        assert sr.mean_curvature == pytest.approx(href, abs=1e-12)
        assert sr.shape_norm_sq == pytest.approx(2 * href * href, abs=1e-12)
        assert sr.umbilicity_deficit <= 1e-7

    def test_consistency_fields(self):
        cyl = lift_cylinder(1.0, 1.5, circle_curve(1.0, 0.5))
        sr = shape_report(cyl, (0.6, -0.2))
        assert sr.mean_curvature == pytest.approx(0.5 * np.trace(sr.shape_operator), abs=1e-14)
        assert sr.shape_norm_sq >= 2.0 * sr.mean_curvature**2 - 1e-14
        # A = I^{-1} h on the symmetrized form
        h_sym = 0.5 * (sr.second_form + sr.second_form.T)
        np.testing.assert_allclose(
            sr.first_form @ sr.shape_operator, h_sym, atol=1e-12
        )

    def test_h_from_tangent_acceleration(self):
        # independent route: h_ab = g(xi, del_a r_b + Gamma(r_a, r_b))
        from bhsurf import christoffels_at, metric_at

        cyl = lift_cylinder(0.5, 1.0, circle_curve(0.5, 0.8))
        uv = (0.7, 0.1)
        sr = shape_report(cyl, uv)
        jet = immersion_jet(cyl, uv)
        g = metric_at(cyl.model, jet.point)
        gamma = christoffels_at(cyl.model, jet.point)
        xi = sr.normal.components
        t = [jet.du, jet.dv]
        second = [[jet.duu, jet.duv], [jet.duv, jet.dvv]]
        for a in range(2):
            for b in range(2):
                acc = second[a][b] + np.einsum("kij,i,j->k", gamma, t[a], t[b])
                assert float(xi @ g @ acc) == pytest.approx(sr.second_form[a, b], abs=1e-10)

    def test_symmetry_of_second_form(self):
        for patch in (
            lift_cylinder(1.0, 2.0, circle_curve(1.0, 0.4)),
            geodesic_sphere_patch(1.0, 1.0),
            graph_patch(EUCLID, lambda u, v: 0.3 * u * u * v),
        ):
            sr = shape_report(patch, (0.5, 0.4))
            assert abs(sr.second_form[0, 1] - sr.second_form[1, 0]) <= 1e-7

    def test_parameter_swap_invariance(self):
        patch = geodesic_sphere_patch(1.0, math.pi / 4)
        swapped = swap_parameters(patch)
        a = shape_report(patch, (1.1, 1.3))
        b = shape_report(swapped, (1.3, 1.1))
        assert b.mean_curvature == pytest.approx(-a.mean_curvature, abs=1e-12)
        np.testing.assert_allclose(b.normal.components, -a.normal.components, atol=1e-12)
        assert b.shape_norm_sq == pytest.approx(a.shape_norm_sq, abs=1e-12)
        assert b.umbilicity_deficit == pytest.approx(a.umbilicity_deficit, abs=1e-10)

    def test_fd_normal_path_agrees(self):
        analytic = cylinder_patch(EUCLID)
        fd = SurfacePatch(
            lambda u, v: (math.cos(u), math.sin(u), v),
            (0.0, 2 * math.pi),
            (-1.0, 1.0),
            EUCLID,
            analytic=False,
            fd_step=1e-4,
        )
        a, b = shape_report(analytic, (1.1, 0.0)), shape_report(fd, (1.1, 0.0))
        assert b.mean_curvature == pytest.approx(a.mean_curvature, abs=1e-7)
        assert b.shape_norm_sq == pytest.approx(a.shape_norm_sq, abs=1e-6)


class TestScalarOperators:
    def test_gradient_of_constant(self):
        grad = intrinsic_gradient(plane_patch(EUCLID), lambda u, v: 3.7, (0.1, 0.1))
        np.testing.assert_allclose(grad.components, 0.0, atol=1e-12)

    def test_flat_gradient(self):
        grad = intrinsic_gradient(plane_patch(EUCLID), lambda u, v: u, (0.1, -0.3))
        np.testing.assert_allclose(grad.components, [1, 0, 0], atol=1e-10)

    def test_gradient_accounts_for_first_form(self):
        # on r(u,v) = (u, v, u) the gradient of f=u is I^{-1}-scaled
        patch = graph_patch(EUCLID, lambda u, v: u)
        grad = intrinsic_gradient(patch, lambda u, v: u, (0.0, 0.0))
        np.testing.assert_allclose(grad.components, [0.5, 0, 0.5], atol=1e-10)

    def test_laplacian_flat_quadratics(self):
        patch = plane_patch(EUCLID)
        assert laplace_beltrami(patch, lambda u, v: u * u + v * v, (0.2, 0.1)) == pytest.approx(
            4.0, abs=1e-9
        )
        assert laplace_beltrami(patch, lambda u, v: u * u - v * v, (0.2, 0.1)) == pytest.approx(
            0.0, abs=1e-9
        )
        assert laplace_beltrami(patch, lambda u, v: 1.25, (0.2, 0.1)) == pytest.approx(
            0.0, abs=1e-12
        )

    def test_laplacian_on_round_sphere(self):
        # colatitude cosine is an eigenfunction: lap cos(v) = -2 cos(v) on the unit sphere
        patch = geodesic_sphere_patch(0.0, 1.0)
        uv = (0.8, 1.2)
        got = laplace_beltrami(patch, lambda u, v: math.cos(v), uv)
        assert got == pytest.approx(-2.0 * math.cos(uv[1]), abs=1e-6)

    def test_laplacian_convergence_order(self):
        patch = plane_patch(EUCLID, half_width=2.0)
        f = lambda u, v: u**4 + v**4
        uv = (0.3, 0.2)
        exact = 12.0 * (uv[0] ** 2 + uv[1] ** 2)
        errs = [abs(laplace_beltrami(patch, f, uv, step=h) - exact) for h in (0.04, 0.02)]
        order = math.log2(errs[0] / errs[1])
        assert order >= 1.9

    def test_stencil_domain_guard(self):
        patch = plane_patch(EUCLID)
        with pytest.raises(ValueError, match="outside domain"):
            laplace_beltrami(patch, lambda u, v: u, (0.9995, 0.0), step=1e-3)


class TestSphereChart:
    def test_chart_radius_round_trip(self):
        assert chart_radius_for_geodesic_radius(1.0, math.pi / 2) == pytest.approx(2.0)
        assert chart_radius_for_geodesic_radius(0.0, 1.7) == 1.7
        with pytest.raises(ValueError, match="antipode"):
            chart_radius_for_geodesic_radius(1.0, math.pi)

    def test_equator_is_minimal(self):
        sr = shape_report(geodesic_sphere_patch(1.0, math.pi / 2), (1.0, 1.4))
        assert sr.mean_curvature == pytest.approx(0.0, abs=1e-12)
