"""Walk through the chart-geometry layer: metrics, frames, curvature tables.

Every connection/curvature quantity below is derived from the metric
components by exact forward-mode differentiation, then compared against the
closed-form frame tables shipped as JSON (which the computation never reads).
"""

import numpy as np

from bhsurf import (
    ChartPoint,
    curvature_data,
    make_model,
    metric_at,
    orthonormal_frame_at,
    riemann_at,
    ricci_at,
)
from bhsurf import reference_tables as tables
from bhsurf.charts import frame_tables

np.set_printoptions(precision=6, suppress=True)

# -- the two-parameter rotationally symmetric family -------------------------

model = make_model("bcv", m=1.0, l=2.0)
p = ChartPoint(0.3, -0.2, 0.5)

print("metric at", p)
print(metric_at(model, p))

e1, e2, e3 = orthonormal_frame_at(model, p)
print("\nframe E1 components:", e1.components)
print("orthonormality check g(E1,E1), g(E1,E2):",
      model.inner(e1, e1), model.inner(e1, e2))

# sectional curvature components of the frame; for m=1, l=2 the mixed planes
# carry curvature l^2/4 = 1 and the horizontal plane 4m - 3l^2/4 = 1
print("\nR(E1,E2,E1,E2) =", riemann_at(model, p, e1, e2, e1, e2))
print("R(E1,E3,E1,E3) =", riemann_at(model, p, e1, e3, e1, e3))
print("Ric(E1,E1) =", ricci_at(model, p, e1, e1), " Ric(E3,E3) =", ricci_at(model, p, e3, e3))

# -- full table comparison ----------------------------------------------------

print("\nderived frame tables vs closed-form data set:")
for kind, mk in [("bcv", model), ("sol", make_model("sol"))]:
    m = getattr(mk, "m", 0.0)
    l = getattr(mk, "l", 0.0)
    conn, lie, riem, ricci = frame_tables(mk, p)
    dev = max(
        np.abs(conn - tables.connection_table(kind, m=m, l=l, x=p.x, y=p.y, z=p.z)).max(),
        np.abs(lie - tables.lie_table(kind, m=m, l=l, x=p.x, y=p.y, z=p.z)).max(),
        np.abs(riem - tables.riemann_table(kind, m=m, l=l)).max(),
        np.abs(ricci - tables.ricci_table(kind, m=m, l=l)).max(),
    )
    print(f"  {kind}: max deviation over all entries = {dev:.3e}")

# -- the conformally flat space-form chart is Einstein ------------------------

sphere_chart = make_model("space_form_chart", c=1.0)
cd = curvature_data(sphere_chart, p)
print("\nspace form c=1: max |Ric - 2c g| =", np.abs(cd.ricci_matrix - 2.0 * cd.metric).max())
