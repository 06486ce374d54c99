"""The round-sphere case: geodesic spheres in the curvature-1 space form.

Among geodesic spheres in the unit 3-sphere, only the one of intrinsic
radius pi/4 (whose mean curvature is 1 and |A|^2 = 2) solves the biharmonic
system without being minimal; smaller and larger spheres leave an order-one
residual, and the equatorial sphere is minimal.
"""

import math

from bhsurf import geodesic_sphere_patch, residual_cmc, residual_full, shape_report, verdict

for rho, label in [
    (math.pi / 6, "pi/6"),
    (math.pi / 4, "pi/4"),
    (math.pi / 3, "pi/3"),
    (math.pi / 2, "pi/2 (equator)"),
]:
    patch = geodesic_sphere_patch(1.0, rho)
    uv = (1.2, 1.1)
    sr = shape_report(patch, uv)
    expected_h = 1.0 / math.tan(rho)
    print(f"intrinsic radius {label}:")
    print(f"  H = {sr.mean_curvature:.9f} (cot(rho) = {expected_h:.9f}),"
          f" |A|^2 = {sr.shape_norm_sq:.9f}, umbilicity deficit = {sr.umbilicity_deficit:.2e}")
    if abs(sr.mean_curvature) > 1e-8:
        r = residual_cmc(patch, uv)
        print(f"  reduced residual = {r.normal_residual:.9f}")
    r = residual_full(patch, uv)
    print(f"  full residual    = {r.normal_residual:.3e} (normal), {r.tangential_residual:.3e} (tangential)")
    print(f"  verdict          = {verdict(patch).classification}\n")

# the flat chart (c = 0) has no proper biharmonic spheres at all
flat = geodesic_sphere_patch(0.0, 1.5)
print("euclidean sphere of radius 1.5:", verdict(flat).classification,
      f"(residual {residual_full(flat, (1.0, 1.2)).normal_residual:.4f} = -2/rho^3)")
