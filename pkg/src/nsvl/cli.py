"""Command-line front end.

Subcommands: list, eval, verify, align, transform, brackets, surfaces,
audit.  Exit codes: 0 ok, 2 usage, 3 tolerance failure, 4 domain error,
5 i/o error.  Every run writes an output manifest (file list with sha256
hashes); report paths render a PNG figure next to the delimited output
unless --no-figures is given.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import catalog, config, exporters, kinematics, report, surfaces, symmetry, verify
from .catalog import FamilyId, FlowJet, FlowState, JetMode, Point4
from .errors import (
    AllPointsRejectedError,
    BranchError,
    CaseError,
    ConvergenceError,
    DomainError,
    EmptyGridError,
    EmptyLevelSetError,
    IoError,
    NsvlError,
    ParamError,
    SingularMatrixError,
    UnsupportedFamilyError,
    UsageError,
)
from .gridspec import Axis, GridSpec

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_TOLERANCE = 3
EXIT_DOMAIN = 4
EXIT_IO = 5

_DOMAIN_ERRORS = (DomainError, ParamError, CaseError, BranchError,
                  UnsupportedFamilyError, AllPointsRejectedError,
                  EmptyGridError, EmptyLevelSetError, SingularMatrixError,
                  ConvergenceError)


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="nsvl",
        description="Exact vortex solutions, point symmetries and invariant "
                    "surfaces of the incompressible 3D equations.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="flat key=value config file")
        p.add_argument("--out", help="output directory (default nsvl-out)")
        p.add_argument("--seed", type=int, help="run seed (NSVL_SEED overrides)")
        p.add_argument("--no-figures", action="store_true",
                       help="skip PNG rendering on report paths")

    def family(p):
        p.add_argument("--family", help="solution family id (see `nsvl list`)")
        p.add_argument("--nu", type=float, help="viscosity")
        p.add_argument("--param", action="append", default=[],
                       metavar="NAME=VALUE", help="family parameter override")

    def grid(p):
        p.add_argument("--grid-x", metavar="LO:HI:N")
        p.add_argument("--grid-y", metavar="LO:HI:N")
        p.add_argument("--grid-z", metavar="LO:HI:N")
        p.add_argument("--times", metavar="T1,T2,...")
        p.add_argument("--cylindrical", action="store_true", default=None)
        p.add_argument("--standard-grid", action="store_true",
                       help="use the family's frozen verification grid")

    p = sub.add_parser("list", help="family metadata as JSON")
    common(p)

    p = sub.add_parser("eval", help="evaluate a family over points or a grid")
    common(p); family(p); grid(p)
    p.add_argument("--at", action="append", default=[], metavar="X,Y,Z,T",
                   help="evaluate at an explicit point (repeatable)")

    p = sub.add_parser("verify", help="momentum/continuity residual report")
    common(p); family(p); grid(p)
    p.add_argument("--mode", choices=["analytic", "finite-diff", "both"],
                   default=None)
    p.add_argument("--perturb-u3", type=float, default=None,
                   help="scale u3 by this factor (corrupted-field fixture)")

    p = sub.add_parser("align", help="alignment diagnostics sweep (CSV + VTK)")
    common(p); family(p); grid(p)

    p = sub.add_parser("transform", help="push a solution through a group element")
    common(p); family(p); grid(p)
    p.add_argument("--generator", help="v1..v9")
    p.add_argument("--epsilon", type=float, help="group parameter")
    p.add_argument("--payload-kind", choices=["poly", "exp", "trig"])
    p.add_argument("--payload-coeffs", metavar="C0,C1,...")
    p.add_argument("--constant", type=float, help="constant for v5..v9")

    p = sub.add_parser("brackets", help="verify the commutator table")
    common(p)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--tol", type=float, default=None)

    p = sub.add_parser("surfaces", help="invariant surfaces: drift check, mesh, audit")
    common(p)
    for name in ("a", "b", "c", "d", "e", "g0", "h0", "r0", "k0"):
        p.add_argument(f"--{name}", type=float, default=None)
    p.add_argument("--case", help="force a case id (default: auto-select)")
    p.add_argument("--trajectories", type=int, default=None)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--tau", type=float, default=None, help="trajectory horizon")
    p.add_argument("--velocity-space", action="store_true",
                   help="also check the velocity/pressure-block invariants")
    p.add_argument("--mesh-which", type=int, choices=[1, 2, 3])
    p.add_argument("--mesh-level", type=float)
    p.add_argument("--mesh-extent", type=float, default=None)
    p.add_argument("--mesh-resolution", type=int, default=None)

    p = sub.add_parser("audit", help="printed-formula audit report")
    common(p); family(p)

    return ap


def _parse_axis(raw: str) -> Axis:
    try:
        lo, hi, n = raw.split(":")
        return Axis(float(lo), float(hi), int(n))
    except (ValueError, TypeError):
        raise UsageError(f"expected LO:HI:N axis, got {raw!r}") from None


def _ctx(args) -> dict:
    """Merge config file and flags into one flat key=value mapping."""
    file_values = config.parse_config_file(args.config) if args.config else {}
    flags: dict[str, str | None] = {}

    def put(key, val):
        if val is not None:
            flags[key] = str(val)

    put("run.out", getattr(args, "out", None))
    put("run.seed", getattr(args, "seed", None))
    if getattr(args, "no_figures", False):
        flags["run.figures"] = "false"
    put("family.name", getattr(args, "family", None))
    put("family.nu", getattr(args, "nu", None))
    for override in getattr(args, "param", []) or []:
        if "=" not in override:
            raise UsageError(f"--param expects NAME=VALUE, got {override!r}")
        name, val = override.split("=", 1)
        flags[f"family.{name.strip()}"] = val.strip()
    put("grid.x", getattr(args, "grid_x", None))
    put("grid.y", getattr(args, "grid_y", None))
    put("grid.z", getattr(args, "grid_z", None))
    put("grid.times", getattr(args, "times", None))
    if getattr(args, "cylindrical", None):
        flags["grid.cylindrical"] = "true"
    put("run.mode", getattr(args, "mode", None))
    put("run.samples", getattr(args, "samples", None))
    put("run.tol", getattr(args, "tol", None))
    put("run.trajectories", getattr(args, "trajectories", None))
    put("run.tau", getattr(args, "tau", None))
    put("run.epsilon", getattr(args, "epsilon", None))
    put("generator.id", getattr(args, "generator", None))
    put("generator.kind", getattr(args, "payload_kind", None))
    put("generator.coeffs", getattr(args, "payload_coeffs", None))
    put("generator.constant", getattr(args, "constant", None))
    for name in ("a", "b", "c", "d", "e", "g0", "h0", "r0", "k0"):
        put(f"case.{name}", getattr(args, name, None))
    put("case.id", getattr(args, "case", None))
    put("mesh.which", getattr(args, "mesh_which", None))
    put("mesh.level", getattr(args, "mesh_level", None))
    put("mesh.extent", getattr(args, "mesh_extent", None))
    put("mesh.resolution", getattr(args, "mesh_resolution", None))

    merged = config.merge_values(file_values, flags)
    merged["_seed"] = str(config.resolve_seed(merged))
    merged["_figures"] = merged.get("run.figures", "true")
    return merged


def _out_dir(ctx) -> Path:
    out = Path(ctx.get("run.out", "nsvl-out"))
    out.mkdir(parents=True, exist_ok=True)
    return out


def _want_figures(ctx) -> bool:
    return ctx["_figures"].lower() not in ("false", "0", "no")


def _config_echo(ctx) -> dict:
    echo = {k: v for k, v in sorted(ctx.items()) if not k.startswith("_")}
    echo["seed"] = int(ctx["_seed"])
    return echo


def _field_from_ctx(ctx):
    name = ctx.get("family.name")
    if not name:
        raise UsageError("a --family is required for this command")
    try:
        fid = FamilyId(name)
    except ValueError:
        raise UsageError(f"unknown family {name!r}") from None
    params = config.family_params(ctx, name)
    table_entry_nu = None
    if "family.nu" in ctx:
        nu = float(ctx["family.nu"])
    else:
        nu = verify.standard_field(fid).nu
        table_entry_nu = nu
    if not params and table_entry_nu is not None and "family.nu" not in ctx:
        return verify.standard_field(fid)
    return catalog.make_field(fid, params, nu)


def _grid_from_ctx(ctx, args, field) -> GridSpec:
    use_standard = getattr(args, "standard_grid", False) or not any(
        k in ctx for k in ("grid.x", "grid.y", "grid.z"))
    if use_standard:
        return verify.standard_grid(field.family)
    for key in ("grid.x", "grid.y", "grid.z"):
        if key not in ctx:
            raise UsageError(f"missing {key} (or use --standard-grid)")
    times = tuple(float(s) for s in ctx.get("grid.times", "0").split(","))
    return GridSpec(
        x=_parse_axis(ctx["grid.x"]),
        y=_parse_axis(ctx["grid.y"]),
        z=_parse_axis(ctx["grid.z"]),
        times=times,
        cylindrical=ctx.get("grid.cylindrical", "false").lower()
        in ("true", "1", "yes"),
    )


# ---------------------------------------------------------------------------
# corrupted-field fixture
# ---------------------------------------------------------------------------

class _PerturbedField:
    """u3 scaled by a constant factor: deliberately not a solution."""

    def __init__(self, base, factor: float):
        self.base = base
        self.factor = factor
        self.nu = base.nu
        self.characteristic_rate = base.characteristic_rate

    def domain_guard(self, pt):
        return catalog.domain_guard(self.base, pt)

    def eval_state(self, pt):
        st = catalog.eval_state(self.base, pt)
        return FlowState(st.u1, st.u2, self.factor * st.u3, st.p)

    def eval_jet(self, pt, mode=JetMode.ANALYTIC):
        jet = catalog.eval_jet(self.base, pt, mode)
        du = jet.du.copy()
        d2u = jet.d2u.copy()
        dudt = jet.dudt.copy()
        du[2, :] *= self.factor
        d2u[2, :] *= self.factor
        dudt[2] *= self.factor
        st = jet.state
        return FlowJet(FlowState(st.u1, st.u2, self.factor * st.u3, st.p),
                       du, dudt, d2u, jet.dp)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _cmd_list(args) -> int:
    ctx = _ctx(args)
    out = _out_dir(ctx)
    manifest = exporters.OutputManifest()
    payload = {"families": catalog.list_families(), "config": _config_echo(ctx)}
    path = exporters.write_json_report(out / "families.json", payload)
    manifest.add(path, "json")
    manifest.write(out / "manifest.json")
    json.dump(payload["families"], sys.stdout, indent=2)
    print()
    return EXIT_OK


def _cmd_eval(args) -> int:
    ctx = _ctx(args)
    out = _out_dir(ctx)
    field = _field_from_ctx(ctx)
    if args.at:
        pts = []
        for raw in args.at:
            try:
                vals = [float(s) for s in raw.split(",")]
                pts.append(Point4(*vals))
            except (ValueError, TypeError):
                raise UsageError(f"--at expects X,Y,Z,T, got {raw!r}") from None
    else:
        pts = list(_grid_from_ctx(ctx, args, field).points())
    rows = []
    for pt in pts:
        g = catalog.domain_guard(field, pt)
        if not g.accepted:
            rows.append([*pt, math.nan, math.nan, math.nan, math.nan,
                         f"rejected: {g.reason}"])
            continue
        st = catalog.eval_state(field, pt)
        rows.append([*pt, *st, "ok"])
    manifest = exporters.OutputManifest()
    path = exporters.write_csv(
        out / "states.csv",
        ("x", "y", "z", "t", "u1", "u2", "u3", "p", "flag"), rows,
        meta={"seed": ctx["_seed"], "family": field.family.value,
              "nu": exporters.fmt(field.nu)})
    manifest.add(path, "csv")
    manifest.write(out / "manifest.json")
    print(f"wrote {path} ({len(rows)} rows)")
    return EXIT_OK


def _cmd_verify(args) -> int:
    ctx = _ctx(args)
    out = _out_dir(ctx)
    field = _field_from_ctx(ctx)
    grid = _grid_from_ctx(ctx, args, field)
    target = field
    if args.perturb_u3 is not None:
        target = _PerturbedField(field, args.perturb_u3)
    mode = ctx.get("run.mode", "both")
    modes = ["analytic", "finite-diff"] if mode == "both" else [mode]
    reports = {}
    all_ok = True
    for m in modes:
        rep = verify.ns_residual(target, grid, m, nu=field.nu)
        tol_m = verify.momentum_tolerance(field, m)
        tol_d = verify.divergence_tolerance(field)
        ok = rep.max_mom_inf <= tol_m and rep.max_div <= tol_d
        all_ok = all_ok and ok
        reports[m] = {**rep.to_dict(), "tol_mom": tol_m, "tol_div": tol_d,
                      "pass": ok}
        print(f"{field.family.value} [{m}] max|mom|={rep.max_mom_inf:.3e} "
              f"(tol {tol_m:.1e}) max|div|={rep.max_div:.3e} (tol {tol_d:.1e})"
              f" -> {'pass' if ok else 'FAIL'}")
    manifest = exporters.OutputManifest()
    payload = {"family": field.family.value, "reports": reports,
               "config": _config_echo(ctx)}
    path = exporters.write_json_report(out / "residuals.json", payload)
    manifest.add(path, "json")
    if _want_figures(ctx):
        fig = report.residual_figure(reports, out / "residuals.png",
                                     title=f"{field.family.value} residuals")
        manifest.add(fig, "png")
    manifest.write(out / "manifest.json")
    return EXIT_OK if all_ok else EXIT_TOLERANCE


def _cmd_align(args) -> int:
    ctx = _ctx(args)
    out = _out_dir(ctx)
    field = _field_from_ctx(ctx)
    grid = _grid_from_ctx(ctx, args, field)
    rows = kinematics.alignment_sweep(field, grid)
    manifest = exporters.OutputManifest()
    csv_path = exporters.write_csv(
        out / "alignment.csv", kinematics.SWEEP_COLUMNS,
        [kinematics.sweep_row_values(r) for r in rows],
        meta={"seed": ctx["_seed"], "family": field.family.value,
              "nu": exporters.fmt(field.nu)})
    manifest.add(csv_path, "csv")
    # one structured-grid file per time slice (z varies fastest in the sweep)
    per_slice = grid.x.count * grid.y.count * grid.z.count
    dims = (grid.z.count, grid.y.count, grid.x.count)
    for si, t in enumerate(grid.times):
        chunk = rows[si * per_slice:(si + 1) * per_slice]
        vtk_path = exporters.write_vtk_structured(
            out / f"alignment_t{si}.vtk", dims,
            [(r.point.x, r.point.y, r.point.z) for r in chunk],
            {"phi": [r.phi for r in chunk],
             "alpha": [r.alpha for r in chunk],
             "enstrophy": [r.enstrophy for r in chunk],
             "dissipation": [r.dissipation for r in chunk]},
            title=f"alignment sweep t={t}")
        manifest.add(vtk_path, "vtk")
    if _want_figures(ctx):
        fig = report.sweep_figure(rows, out / "alignment.png",
                                  title=f"{field.family.value} alignment")
        manifest.add(fig, "png")
    manifest.write(out / "manifest.json")
    n_ok = sum(1 for r in rows if r.flag == "ok")
    print(f"wrote {csv_path} ({n_ok}/{len(rows)} ok rows)")
    return EXIT_OK


def _generator_from_ctx(ctx) -> symmetry.GeneratorSpec:
    gid = ctx.get("generator.id")
    if gid is None:
        raise UsageError("--generator is required (v1..v9)")
    if gid in symmetry.PAYLOAD_GENERATORS:
        kind = ctx.get("generator.kind", "poly")
        coeffs_raw = ctx.get("generator.coeffs", "0,1")
        try:
            coeffs = tuple(float(s) for s in coeffs_raw.split(","))
        except ValueError:
            raise UsageError(f"bad payload coefficients {coeffs_raw!r}") from None
        return symmetry.GeneratorSpec(gid, symmetry.FuncPreset(kind, coeffs))
    constant = float(ctx.get("generator.constant", "1.0"))
    return symmetry.GeneratorSpec(gid, constant=constant)


def _cmd_transform(args) -> int:
    ctx = _ctx(args)
    out = _out_dir(ctx)
    field = _field_from_ctx(ctx)
    grid = _grid_from_ctx(ctx, args, field)
    spec = _generator_from_ctx(ctx)
    eps = float(ctx.get("run.epsilon", "0.1"))
    element = symmetry.GroupElement(spec, eps)
    pushed = symmetry.pushforward_field(field, element)
    base_rep = verify.ns_residual(field, grid, JetMode.FINITE_DIFF)
    push_rep = verify.ns_residual(pushed, grid, JetMode.FINITE_DIFF,
                                  nu=field.nu)
    floor = verify.momentum_tolerance(field, JetMode.FINITE_DIFF)
    limit = 10.0 * max(base_rep.max_mom_inf, 0.1 * floor)
    ok = push_rep.max_mom_inf <= limit
    rows = []
    for pt in grid.points():
        g = pushed.domain_guard(pt)
        if not g.accepted:
            rows.append([*pt, math.nan, math.nan, math.nan, math.nan,
                         f"rejected: {g.reason}"])
            continue
        st = pushed.eval_state(pt)
        rows.append([*pt, *st, "ok"])
    manifest = exporters.OutputManifest()
    csv_path = exporters.write_csv(
        out / "transformed_states.csv",
        ("x", "y", "z", "t", "u1", "u2", "u3", "p", "flag"), rows,
        meta={"seed": ctx["_seed"], "family": field.family.value,
              "generator": spec.gid, "epsilon": exporters.fmt(eps)})
    manifest.add(csv_path, "csv")
    payload = {
        "family": field.family.value,
        "generator": spec.gid,
        "epsilon": eps,
        "base_residual": base_rep.to_dict(),
        "pushforward_residual": push_rep.to_dict(),
        "equivariance_limit": limit,
        "pass": ok,
        "config": _config_echo(ctx),
    }
    path = exporters.write_json_report(out / "transform.json", payload)
    manifest.add(path, "json")
    if _want_figures(ctx):
        fig = report.residual_figure(
            {"base": base_rep.to_dict(), "pushforward": push_rep.to_dict()},
            out / "transform.png",
            title=f"{field.family.value} under {spec.gid} (eps={eps:g})")
        manifest.add(fig, "png")
    manifest.write(out / "manifest.json")
    print(f"pushforward max|mom|={push_rep.max_mom_inf:.3e} "
          f"limit={limit:.3e} -> {'pass' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_TOLERANCE


def _cmd_brackets(args) -> int:
    ctx = _ctx(args)
    out = _out_dir(ctx)
    samples = int(ctx.get("run.samples", "100"))
    tol = float(ctx.get("run.tol", "1e-6"))
    seed = int(ctx["_seed"])
    table = symmetry.verify_bracket_table(samples=samples, tol=tol, seed=seed)
    closure = symmetry.euclidean_closure_check(tol=tol, seed=seed + 1)
    all_ok = all(r["pass"] for r in table) and closure["pass"]
    manifest = exporters.OutputManifest()
    payload = {"relations": table, "euclidean_closure": closure,
               "samples": samples, "tol": tol, "config": _config_echo(ctx)}
    path = exporters.write_json_report(out / "brackets.json", payload)
    manifest.add(path, "json")
    if _want_figures(ctx):
        fig = report.brackets_figure(table, out / "brackets.png")
        manifest.add(fig, "png")
    manifest.write(out / "manifest.json")
    n_pass = sum(r["pass"] for r in table)
    print(f"commutator table: {n_pass}/{len(table)} relations pass "
          f"(tol {tol:g}); closure {'pass' if closure['pass'] else 'FAIL'}")
    return EXIT_OK if all_ok else EXIT_TOLERANCE


def _cmd_surfaces(args) -> int:
    ctx = _ctx(args)
    out = _out_dir(ctx)
    kwargs = {}
    for name in ("a", "b", "c", "d", "e", "g0", "h0", "r0", "k0"):
        raw = ctx.get(f"case.{name}")
        if raw is not None:
            kwargs[name] = float(raw)
    k = surfaces.CharConstants(**kwargs)
    case_id = ctx.get("case.id")
    known = {"GeneralI_r0", "GeneralI_shifted", "CaseII_r0", "CaseII_shifted",
             "I1", "I2", "I3", "I4", "II1", "II2", "II3", "II4"}
    if case_id is not None and case_id not in known:
        # a bare "I"/"II" acts as a constraint on the auto-selected case
        selected = surfaces.select_case(k)
        if not selected.startswith(case_id) and \
                not selected.startswith(f"Case{case_id}"):
            raise CaseError(
                f"constants select {selected}, incompatible with --case {case_id}")
        case_id = selected
    inv = surfaces.invariant_set(k, case_id)
    n_traj = int(ctx.get("run.trajectories", "20"))
    tol = float(ctx.get("run.tol", "1e-7"))
    tau = float(ctx.get("run.tau", "5.0"))
    seed = int(ctx["_seed"])
    drifts = surfaces.verify_invariance(inv, n_traj=n_traj, tol=tol,
                                        tau_span=(0.0, tau), seed=seed)
    ok = max(drifts) <= tol
    payload = {
        "case": inv.case_id,
        "space": inv.space,
        "constants": {n: getattr(k, n) for n in
                      ("a", "b", "c", "d", "e", "g0", "h0", "r0", "k0")},
        "invariants": list(inv.names),
        "drift": list(drifts),
        "tol": tol,
        "tau_span": [0.0, tau],
        "trajectories": n_traj,
        "pass": ok,
        "notes": list(inv.notes),
        "calibration": surfaces.audit_surface_formulas(seed=seed),
        "config": _config_echo(ctx),
    }
    if args.velocity_space:
        vinv = surfaces.velocity_space_invariants(inv)
        vdrifts = surfaces.verify_invariance(vinv, n_traj=n_traj, tol=tol,
                                             tau_span=(0.0, tau), seed=seed)
        payload["velocity_space"] = {
            "case": vinv.case_id, "drift": list(vdrifts),
            "pass": max(vdrifts) <= tol,
        }
        ok = ok and max(vdrifts) <= tol
    manifest = exporters.OutputManifest()
    path = exporters.write_json_report(out / "surface_audit.json", payload)
    manifest.add(path, "json")
    if args.mesh_which is not None:
        if args.mesh_level is None:
            raise UsageError("--mesh-level is required with --mesh-which")
        extent = float(ctx.get("mesh.extent", "2.0"))
        res = int(ctx.get("mesh.resolution", "65"))
        mgrid = GridSpec(Axis(-extent, extent, res), Axis(-extent, extent, res),
                         Axis(-extent, extent, res), times=(0.25,))
        mesh = surfaces.surface_mesh(inv, args.mesh_which,
                                     float(args.mesh_level), mgrid)
        vtk_path = exporters.write_vtk_polydata(
            out / "surface.vtk", mesh.vertices, mesh.faces,
            {"residual": mesh.residuals},
            title=f"{inv.case_id} invariant {args.mesh_which} level {mesh.level:g}")
        manifest.add(vtk_path, "vtk")
        payload["mesh"] = {"vertices": int(len(mesh.vertices)),
                           "faces": int(len(mesh.faces)),
                           "max_vertex_residual": float(mesh.residuals.max())}
        exporters.write_json_report(path, payload)
        if _want_figures(ctx):
            fig = report.mesh_figure(mesh, out / "surface.png",
                                     title=f"{inv.case_id} invariant {args.mesh_which}")
            manifest.add(fig, "png")
    if _want_figures(ctx):
        fig = report.audit_figure(payload["calibration"], out / "surface_calibration.png")
        manifest.add(fig, "png")
    manifest.write(out / "manifest.json")
    print(f"case {inv.case_id}: max drift {max(drifts):.3e} (tol {tol:g}) "
          f"-> {'pass' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_TOLERANCE


_AUDITABLE = ("burgers-shear-layer", "exp-saddle", "bessel-transient",
              "burgers-vortex", "burgers-lundgren", "axisym-source")


def _cmd_audit(args) -> int:
    ctx = _ctx(args)
    out = _out_dir(ctx)
    which = ctx.get("family.name")
    fams = _AUDITABLE if which in (None, "all") else (which,)
    entries = []
    for fam in fams:
        entries.extend(verify.vorticity_formula_audit(fam))
    findings = surfaces.audit_surface_formulas(seed=int(ctx["_seed"]))
    manifest = exporters.OutputManifest()
    payload = {"vorticity_formulas": entries, "surface_formulas": findings,
               "config": _config_echo(ctx)}
    path = exporters.write_json_report(out / "formula_audit.json", payload)
    manifest.add(path, "json")
    if _want_figures(ctx):
        fig = report.audit_figure(entries + findings, out / "formula_audit.png")
        manifest.add(fig, "png")
    manifest.write(out / "manifest.json")
    for e in entries:
        extra = ""
        if "correction_factor" in e:
            extra = f" correction={e['correction_factor']:.6g}"
        print(f"{e['family']:22s} {e['formula']:16s} {e['status']}{extra}")
    return EXIT_OK


_COMMANDS = {
    "list": _cmd_list,
    "eval": _cmd_eval,
    "verify": _cmd_verify,
    "align": _cmd_align,
    "transform": _cmd_transform,
    "brackets": _cmd_brackets,
    "surfaces": _cmd_surfaces,
    "audit": _cmd_audit,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _DOMAIN_ERRORS as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (IoError, OSError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
