"""Command-line front end: named suites, parameter sweeps, ad-hoc residuals.

Exit codes: 0 when every check passes (or the requested computation
succeeds), 1 when a suite check fails, 2 on usage or configuration errors.
Values are resolved with precedence CLI flag > config file (key=value lines)
> built-in default. If the BHSURF_OUT_DIR environment variable is set,
relative --out paths are placed inside it.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from pathlib import Path

from .charts import make_model
from .hopf import circle_curve, circle_for_kg, lift_cylinder
from .residuals import residual_full, verdict
from .suites import SUITE_NAMES, SuiteConfig, run_suite, sol_slice_cylinder, sweep
from .surfaces import coordinate_plane_patch, geodesic_sphere_patch, plane_patch

ENV_OUT_DIR = "BHSURF_OUT_DIR"

RESIDUAL_SURFACES = ("hopf-circle", "geodesic-sphere", "plane", "sol-cylinder")


def _coerce_grid(text: str) -> tuple[int, int]:
    parts = str(text).lower().split("x")
    if len(parts) != 2:
        raise ValueError(f"grid must look like NxM, got {text!r}")
    return int(parts[0]), int(parts[1])


def _coerce_range(text: str) -> tuple[float, float]:
    parts = str(text).split(":")
    if len(parts) != 2:
        raise ValueError(f"range must look like a:b, got {text!r}")
    return float(parts[0]), float(parts[1])


def _read_config(path: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"bad config line (expected key=value): {line!r}")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def _pick(args, file_cfg: dict, key: str, coerce, default):
    """flag > config file > default."""
    flag = getattr(args, key.replace("-", "_"), None)
    if flag is not None:
        return flag
    if key in file_cfg:
        return coerce(file_cfg[key])
    return default


def _suite_config(args) -> SuiteConfig:
    file_cfg = _read_config(args.config) if getattr(args, "config", None) else {}
    defaults = SuiteConfig()
    return SuiteConfig(
        surface_grid=_pick(args, file_cfg, "grid", _coerce_grid, defaults.surface_grid),
        tol_residual=_pick(args, file_cfg, "tol", float, defaults.tol_residual),
        step=_pick(args, file_cfg, "fd_step", float, defaults.step),
        seed=_pick(args, file_cfg, "seed", int, defaults.seed),
    )


def _resolve_out(out: str | None) -> Path | None:
    if out is None:
        return None
    path = Path(out)
    env_dir = os.environ.get(ENV_OUT_DIR)
    if env_dir and not path.is_absolute():
        path = Path(env_dir) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _checks_csv(report) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["id", "desc", "residual", "tol", "pass", "margin"])
    for c in report.checks:
        writer.writerow([c.id, c.desc, repr(c.residual), repr(c.tol), c.passed, repr(c.margin)])
    return buf.getvalue()


def _cmd_suite(args) -> int:
    cfg = _suite_config(args)
    report = run_suite(args.name, cfg)
    for c in report.checks:
        flag = "PASS" if c.passed else "FAIL"
        print(f"[{flag}] {c.id}: residual={c.residual:.3e} tol={c.tol:.1e} margin={c.margin:.3e}")
    overall = "PASS" if report.passed else "FAIL"
    print(f"suite {report.suite}: {overall} ({len(report.checks)} checks, {report.duration_ms:.0f} ms)")
    out = _resolve_out(args.out)
    if out is not None:
        fmt = args.format or "json"
        text = report.to_json() + "\n" if fmt == "json" else _checks_csv(report)
        out.write_text(text)
        print(f"report written to {out}")
    return 0 if report.passed else 1


def _cmd_sweep(args) -> int:
    file_cfg = _read_config(args.config) if args.config else {}
    cfg = _suite_config(args)
    m_range = _pick(args, file_cfg, "m_range", _coerce_range, (0.25, 1.0))
    l_range = _pick(args, file_cfg, "l_range", _coerce_range, (0.0, 2.0))
    steps = _pick(args, file_cfg, "steps", _coerce_grid, (3, 3))
    fmt = args.format or "csv"
    out = _resolve_out(args.out)
    rows = sweep(m_range, l_range, steps, out_path=out, fmt=fmt, config=cfg)
    if out is None:
        print(json.dumps(rows, sort_keys=True, indent=2))
    else:
        print(f"{len(rows)} rows written to {out}")
    return 0


def _build_residual_surface(args, cfg: SuiteConfig):
    name = args.surface
    if name == "hopf-circle":
        m = args.m if args.m is not None else 1.0
        l = args.l if args.l is not None else 0.0
        window = 4.0 * m - l * l
        if args.kg is not None:
            kg = args.kg
        elif window > 0.0:
            kg = math.sqrt(window)
        else:
            raise ValueError("no properness window for these (m, l); pass --kg explicitly")
        rho = (args.scale or 1.0) * circle_for_kg(m, kg)
        return lift_cylinder(m, l, circle_curve(m, rho))
    if name == "geodesic-sphere":
        c = args.c if args.c is not None else 1.0
        rho = args.rho if args.rho is not None else math.pi / 4.0
        return geodesic_sphere_patch(c, rho)
    if name == "plane":
        kind = args.model or "sol"
        params = {}
        if kind == "bcv":
            params = {"m": args.m or 0.0, "l": args.l or 0.0}
        elif kind in ("space_form_chart", "space-form", "space_form"):
            params = {"c": args.c or 0.0}
        model = make_model(kind, **params)
        axis = args.axis or "z"
        return coordinate_plane_patch(model, axis, args.offset or 0.0)
    if name == "sol-cylinder":
        return sol_slice_cylinder(args.radius or 0.6, args.z0 or 0.0)
    raise ValueError(f"unknown surface {name!r}; expected one of {', '.join(RESIDUAL_SURFACES)}")


def _cmd_residual(args) -> int:
    cfg = _suite_config(args)
    patch = _build_residual_surface(args, cfg)
    v = verdict(patch, cfg.surface_grid, tol=cfg.tol_residual, step=cfg.step)
    center = (
        0.5 * (patch.u_range[0] + patch.u_range[1]),
        0.5 * (patch.v_range[0] + patch.v_range[1]),
    )
    r = residual_full(patch, center, step=cfg.step)
    payload = {
        "surface": args.surface,
        "config": cfg.to_dict(),
        "verdict": {
            "classification": v.classification,
            "max_normal_residual": v.max_normal_residual,
            "max_tangential_residual": v.max_tangential_residual,
            "max_abs_mean_curvature": v.max_abs_mean_curvature,
            "min_abs_mean_curvature": v.min_abs_mean_curvature,
            "margin": v.margin,
            "n_points": v.n_points,
        },
        "residual_at_center": {
            "uv": list(center),
            "normal_residual": r.normal_residual,
            "tangential_residual": r.tangential_residual,
            "mean_curvature": r.mean_curvature,
            "shape_norm_sq": r.shape_norm_sq,
            "bcv_triple": list(r.bcv_triple) if r.bcv_triple else None,
            "sol_triple": list(r.sol_triple) if r.sol_triple else None,
        },
    }
    text = json.dumps(payload, sort_keys=True, indent=2)
    print(text)
    out = _resolve_out(args.out)
    if out is not None:
        out.write_text(text + "\n")
        print(f"report written to {out}")
    return 0


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--m", type=float, default=None, help="family parameter m")
    parser.add_argument("--l", type=float, default=None, help="family parameter l")
    parser.add_argument("--grid", type=_coerce_grid, default=None, metavar="NxM",
                        help="surface sampling grid (default 3x3)")
    parser.add_argument("--tol", type=float, default=None,
                        help="residual tolerance (default 1e-6)")
    parser.add_argument("--fd-step", type=float, default=None, dest="fd_step",
                        help="central-difference step for scalar-field stencils (default 1e-3)")
    parser.add_argument("--seed", type=int, default=None,
                        help="seed of the quasi-random point sampler (default 0)")
    parser.add_argument("--out", type=str, default=None,
                        help="output path; relative paths land in $BHSURF_OUT_DIR if set")
    parser.add_argument("--format", choices=("json", "csv"), default=None,
                        help="report format (suite default json, sweep default csv)")
    parser.add_argument("--config", type=str, default=None,
                        help="key=value config file; flags take precedence")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bhsurf",
        description="Verification suites for biharmonic surface geometry in homogeneous 3-manifolds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_suite = sub.add_parser("suite", help="run a named verification suite")
    p_suite.add_argument("name", choices=SUITE_NAMES)
    _add_common(p_suite)
    p_suite.set_defaults(func=_cmd_suite)

    p_sweep = sub.add_parser("sweep", help="tabulate cylinder data over an (m, l) grid")
    _add_common(p_sweep)
    p_sweep.add_argument("--m-range", type=_coerce_range, default=None, dest="m_range",
                         metavar="A:B", help="m range (default 0.25:1.0)")
    p_sweep.add_argument("--l-range", type=_coerce_range, default=None, dest="l_range",
                         metavar="A:B", help="l range (default 0.0:2.0)")
    p_sweep.add_argument("--steps", type=_coerce_grid, default=None, metavar="NxM",
                         help="sweep grid resolution (default 3x3)")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_res = sub.add_parser("residual", help="ad-hoc residual check of a named surface")
    p_res.add_argument("--surface", choices=RESIDUAL_SURFACES, required=True)
    _add_common(p_res)
    p_res.add_argument("--c", type=float, default=None, help="space-form curvature")
    p_res.add_argument("--kg", type=float, default=None, help="base-circle geodesic curvature")
    p_res.add_argument("--scale", type=float, default=None, help="radius scale factor")
    p_res.add_argument("--rho", type=float, default=None, help="intrinsic sphere radius")
    p_res.add_argument("--model", type=str, default=None, help="chart kind for plane surfaces")
    p_res.add_argument("--axis", choices=("x", "y", "z"), default=None)
    p_res.add_argument("--offset", type=float, default=None)
    p_res.add_argument("--z0", type=float, default=None, help="slice height of the sol cylinder")
    p_res.add_argument("--radius", type=float, default=None, help="slice radius of the sol cylinder")
    p_res.set_defaults(func=_cmd_residual)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
