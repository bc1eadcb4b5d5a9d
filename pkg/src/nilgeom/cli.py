"""Command-line driver: ``nilgeom <subcommand> ...``.

Exit status is 0 when every reported check passes, 1 when a check fails and
2 for usage errors.  Every CSV and mesh file starts with a ``#`` comment line
holding the full run configuration as JSON.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import math
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from . import geodesics as geo
from . import ruled
from . import surface_ops as so
from . import verification as ver
from .heis_core import FrameVector, MetricKind, ModelPoint
from .tolerances import TOLERANCES, resolved

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    subcommand: str
    options: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    out: str | None = None
    seed: int = ver.DEFAULT_SEED

    def header(self) -> str:
        return "nilgeom " + __version__ + " " + json.dumps(asdict(self), sort_keys=True)


class UsageError(Exception):
    pass


# --- flag parsing --------------------------------------------------------------


def _floats(text: str, count: int | None = None, name: str = "value") -> tuple[float, ...]:
    try:
        vals = tuple(float(c) for c in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"{name} must be comma-separated numbers, got {text!r}")
    if count is not None and len(vals) != count:
        raise argparse.ArgumentTypeError(f"{name} needs {count} numbers, got {len(vals)}")
    if not all(math.isfinite(v) for v in vals):
        raise argparse.ArgumentTypeError(f"{name} must be finite")
    return vals


def triple(text):
    return _floats(text, 3, "triple")


def domain(text):
    d = _floats(text, 4, "domain")
    if not (d[0] < d[1] and d[2] < d[3]):
        raise argparse.ArgumentTypeError(f"domain must satisfy lo < hi on both axes, got {text}")
    return d


def positive_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return v


def grid_size(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must be an integer, got {text!r}")
    if n < 2:
        raise argparse.ArgumentTypeError("grid needs at least 2 points per axis")
    return n


def tolerance_override(text):
    name, sep, value = text.partition("=")
    if not sep or name not in TOLERANCES:
        raise argparse.ArgumentTypeError(f"expected name=value with name in {sorted(TOLERANCES)}, got {text!r}")
    return name, positive_float(value)


def surface_selector(text):
    try:
        return ruled.parse_surface(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad surface {text!r}: {exc}")


def lambda_list(text):
    lams = _floats(text, None, "lambdas")
    if any(lam <= 0 for lam in lams):
        raise argparse.ArgumentTypeError("every lambda must be positive")
    return lams


# --- output helpers ------------------------------------------------------------


@contextlib.contextmanager
def _sink(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def _emit(report: ver.VerificationReport, stream) -> int:
    for line in report.lines():
        print(line, file=stream)
    for note in report.notes:
        print(f"note: {note}", file=stream)
    if not report.passed:
        print("failing checks: " + ", ".join(report.failing()), file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAIL


def _report_stream(cfg: RunConfig):
    # keep stdout clean for the CSV when no output file is given
    return sys.stderr if cfg.out in (None, "-") else sys.stdout


# --- subcommands ---------------------------------------------------------------


def cmd_geodesic(cfg: RunConfig) -> int:
    tol = resolved(cfg.tolerances)
    p0 = ModelPoint(*cfg.options["p0"])
    a1, a2, a3 = cfg.options["v0"]
    if a1 == a2 == a3 == 0:
        raise UsageError("--v0 must be a nonzero vector")
    v0 = FrameVector(p0, a1, a2, a3)
    trace = geo.integrate_geodesic(p0, v0, cfg.options["tmax"], cfg.options["step"])
    with _sink(cfg.out) as fh:
        trace.write_csv(fh, cfg.header())
    rep = ver.VerificationReport("geodesic")
    J = trace.momentum()
    rep.below("momentum-drift", np.max(np.abs(J - J[0])), tol["momentum_drift"])
    if abs(a3) <= tol["horizontal_a3"]:
        line = geo.horizontal_geodesic(p0, v0)
        rep.below("horizontal-line-deviation", np.max(np.abs(trace.positions - line.at(trace.t))),
                  tol["horizontal_line"])
    if p0 == ModelPoint.origin() and (a1, a2, a3) == (1.0, 0.0, 1.0):
        rep.below("j1-oracle", np.max(np.abs(trace.positions - geo.j1_oracle(trace.t))), tol["j1_oracle"])
    return _emit(rep, _report_stream(cfg))


def _vplane_rows(surface, xs, zs):
    """The vertical plane y = 0 is no graph over (x, y); scan its mean curvatures over (x, z)."""
    imm = surface.parametrization
    rows = []
    for z in zs:
        for x in xs:
            # + 0.0 folds -0.0 into 0.0 so the CSV never shows "-0"
            hr = so.mean_curvature(imm, x, z, MetricKind.RIEMANNIAN) + 0.0
            hl = so.mean_curvature(imm, x, z, MetricKind.LORENTZIAN) + 0.0
            rows.append(so.ResidualRow(float(x), float(z), hr, hl, 0.5 * (hr - hl) + 0.0, 0.5 * (hr + hl) + 0.0,
                                       so.CausalType.TIMELIKE))
    return rows


GRAPHS = {
    ruled.CatalogTag.HORIZONTAL_PLANE: lambda s: so.GraphFunction.zero(),
    ruled.CatalogTag.HYPERBOLIC_PARABOLOID: lambda s: so.GraphFunction.hyperbolic_paraboloid(),
    ruled.CatalogTag.HELICOID: lambda s: so.GraphFunction.helicoid(s.lam),
}


def cmd_residual(cfg: RunConfig) -> int:
    tol = resolved(cfg.tolerances)
    surface = ruled.parse_surface(cfg.options["surface"])
    n = cfg.options["grid"]
    dom = cfg.options["domain"]
    if dom is None:
        dom = (0.5, 2.0, -1.0, 1.0) if surface.tag is ruled.CatalogTag.HELICOID else (-1.0, 1.0, -1.0, 1.0)
        cfg.options["domain"] = dom
    xs, ys = np.linspace(dom[0], dom[1], n), np.linspace(dom[2], dom[3], n)
    if surface.tag is ruled.CatalogTag.VERTICAL_PLANE:
        rows = _vplane_rows(surface, xs, ys)
        threshold = tol["mean_curvature"]
    else:
        if surface.tag is ruled.CatalogTag.HELICOID and dom[0] <= 0:
            raise UsageError("the helicoid graph branch needs x > 0; use a domain with x0 > 0")
        rows = so.residual_scan(GRAPHS[surface.tag](surface), xs, ys)
        threshold = tol["graph_residual"]
    with _sink(cfg.out) as fh:
        so.write_residual_csv(rows, fh, cfg.header())
    rep = ver.VerificationReport("residual")
    for label, attr in (("riemannian", "riem"), ("lorentzian", "lorentz"), ("difference", "diff"),
                        ("laplacian", "laplacian")):
        rep.below(f"max-{label}", max(abs(getattr(r, attr)) for r in rows), threshold)
    return _emit(rep, _report_stream(cfg))


JET_NAMES = ("h0", "dh0", "ddh0", "dalpha0", "ddalpha0", "g0", "dg0")


def _coefficient_row(jets, tol) -> tuple[bool, list[str]]:
    fit = ruled.extract_expansion_coefficients(ruled.RuledProfile.from_jets(*jets))
    closed_forms = ruled.leading_coefficients(*jets)
    out, ok = [], True
    for name, closed in zip(("A3", "B1", "B5", "C5"), closed_forms.as_tuple()):
        gap = abs(closed - fit[name])
        agree = gap < tol["coefficient_match"]
        ok &= agree
        out.append(f"{name}: closed {closed:.12g} extracted {fit[name]:.12g} "
                   f"{'agree' if agree else 'DISAGREE'} ({gap:.2e})")
    out.append(f"fit residual {fit.residual:.3e}")
    ok &= fit.residual < tol["fit_residual"]
    return ok, out


def cmd_coefficients(cfg: RunConfig) -> int:
    tol = resolved(cfg.tolerances)
    count = cfg.options.get("random")
    if count:
        rng = ver._rng(cfg.seed, 5)
        agreed = 0
        for jets in ver.random_jets(rng, count):
            ok, lines = _coefficient_row(jets, tol)
            agreed += ok
            if not ok:
                print(f"jets {jets.tolist()}:", *lines, sep="\n  ")
        print(f"{agreed}/{count} agreements (seed {cfg.seed})")
        return EXIT_OK if agreed == count else EXIT_FAIL

    jets = tuple(cfg.options[k] for k in JET_NAMES)
    ok, lines = _coefficient_row(jets, tol)
    print(*lines, sep="\n")
    profile = ruled.RuledProfile.from_jets(*jets)
    worst = float(np.max(np.abs(ruled.htilde(profile, 0.0, np.linspace(0, 2 * math.pi, 721)))))
    if jets[0] != 0:
        witnessed = worst > tol["htilde_witness"]
        print(f"witness max |H~(0, t)| = {worst:.6g} ({'nonvanishing' if witnessed else 'NOT above threshold'})")
        ok &= witnessed
    else:
        print(f"max |H~(0, t)| = {worst:.6g}")
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_limit(cfg: RunConfig) -> int:
    tol = resolved(cfg.tolerances)
    rows = ruled.convergence_table(cfg.options["lambdas"], cfg.options["domain"], cfg.options["grid"])
    with _sink(cfg.out) as fh:
        ruled.write_convergence_csv(rows, fh, cfg.header())
    rep = ver.VerificationReport("helicoid-limit")
    prev = None
    for lam, _, ratio in rows:
        if ratio is not None and math.isclose(lam, prev / 4, rel_tol=1e-12):
            rep.within(f"ratio-lambda-{lam:g}", ratio, tol["rate_low"], tol["rate_high"])
        elif ratio is not None:
            rep.notes.append(f"lambda {lam:g} is not a quartering of {prev:g}; ratio {ratio:.4g} not checked")
        prev = lam
    return _emit(rep, _report_stream(cfg))


MESH_DOMAINS = {
    ruled.CatalogTag.HELICOID: (-math.pi, math.pi, -1.0, 1.0),
}


def cmd_mesh(cfg: RunConfig) -> int:
    surface = ruled.parse_surface(cfg.options["surface"])
    dom = cfg.options["domain"] or MESH_DOMAINS.get(surface.tag, (-1.0, 1.0, -1.0, 1.0))
    cfg.options["domain"] = dom
    n = cfg.options["grid"]
    verts, faces = ruled.grid_mesh(surface.parametrization, np.linspace(dom[0], dom[1], n),
                                   np.linspace(dom[2], dom[3], n))
    with _sink(cfg.out) as fh:
        ruled.write_mesh(verts, faces, fh, cfg.header())
    print(f"wrote {len(verts)} vertices and {len(faces)} faces to {cfg.out}")
    return EXIT_OK


def cmd_verify_all(cfg: RunConfig) -> int:
    reports = ver.run_all(cfg.seed, cfg.tolerances, cfg.options.get("inject_fault"))
    passed = all(r.passed for r in reports)
    if cfg.options.get("json"):
        print(json.dumps({"seed": cfg.seed, "passed": passed, "suites": [r.to_dict() for r in reports]},
                         indent=2))
    else:
        for r in reports:
            print(f"== {r.suite}: {'PASS' if r.passed else 'FAIL'} ({r.seconds:.2f} s)")
            for line in r.lines():
                print("  " + line)
            for note in r.notes:
                print("  note: " + note)
        print("ALL PASS" if passed else "FAILED")
    if not passed:
        failing = [f"{r.suite}/{name}" for r in reports for name in r.failing()]
        print("failing checks: " + ", ".join(failing), file=sys.stderr)
    return EXIT_OK if passed else EXIT_FAIL


# --- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=tolerance_override, action="append", default=[], metavar="NAME=VALUE",
                        help="override an entry of the tolerance table (repeatable)")

    parser = argparse.ArgumentParser(prog="nilgeom", description="Numerical checks on the Heisenberg group.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("geodesic", parents=[common], help="integrate a geodesic and write its trace")
    p.add_argument("--p0", type=triple, default=(0.0, 0.0, 0.0), help="start point x,y,z")
    p.add_argument("--v0", type=triple, default=(1.0, 0.0, 0.0), help="initial velocity in the e1,e2,e3 frame")
    p.add_argument("--tmax", type=positive_float, default=5.0)
    p.add_argument("--step", type=positive_float, default=TOLERANCES["geodesic_step"])
    p.add_argument("--out", help="CSV path (default: stdout)")

    p = sub.add_parser("residual", parents=[common], help="scan minimal-surface residuals of a catalog surface")
    p.add_argument("--surface", type=surface_selector, required=True,
                   help="plane, vplane, hpb or helicoid:<lambda>")
    p.add_argument("--grid", type=grid_size, default=21)
    p.add_argument("--domain", type=domain, help="x0,x1,y0,y1")
    p.add_argument("--out", help="CSV path (default: stdout)")

    p = sub.add_parser("lemma25", parents=[common], help="compare closed-form and fitted expansion coefficients")
    for name in JET_NAMES:
        p.add_argument(f"--{name}", type=float, default=1.0 if name == "h0" else 0.0)
    p.add_argument("--random", type=int, metavar="N", help="sweep N seeded random profiles instead")
    p.add_argument("--seed", type=int, default=ver.DEFAULT_SEED)

    p = sub.add_parser("limit", parents=[common], help="helicoid-to-paraboloid convergence table")
    p.add_argument("--lambdas", type=lambda_list, default=(1.0, 0.25, 0.0625, 0.015625))
    p.add_argument("--grid", type=grid_size, default=21)
    p.add_argument("--domain", type=domain, default=(-1.0, 1.0, -1.0, 1.0))
    p.add_argument("--out", help="CSV path (default: stdout)")

    p = sub.add_parser("mesh", parents=[common], help="export a triangulated catalog surface")
    p.add_argument("--surface", type=surface_selector, required=True)
    p.add_argument("--grid", type=grid_size, default=32)
    p.add_argument("--domain", type=domain, help="s0,s1,t0,t1 parameter rectangle")
    p.add_argument("--out", required=True)

    p = sub.add_parser("verify-all", parents=[common], help="run every acceptance suite")
    p.add_argument("--seed", type=int, default=ver.DEFAULT_SEED)
    p.add_argument("--json", action="store_true", help="print the reports as JSON")
    p.add_argument("--inject-fault", choices=["connection"], help=argparse.SUPPRESS)
    return parser


COMMANDS = {
    "geodesic": cmd_geodesic,
    "residual": cmd_residual,
    "lemma25": cmd_coefficients,
    "limit": cmd_limit,
    "mesh": cmd_mesh,
    "verify-all": cmd_verify_all,
}


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    opts = {k: v for k, v in vars(ns).items() if k not in {"subcommand", "tol", "out", "seed"}}
    if "surface" in opts:
        opts["surface"] = opts["surface"].name
    opts = {k: list(v) if isinstance(v, tuple) else v for k, v in opts.items()}
    return RunConfig(ns.subcommand, opts, dict(ns.tol), getattr(ns, "out", None),
                     getattr(ns, "seed", ver.DEFAULT_SEED))


# values such as "-1,1,-1,1" look like flags to argparse unless glued on with "="
VALUE_FLAGS = {"--p0", "--v0", "--domain", "--lambdas"}


def _glue_values(argv):
    out, it = [], iter(argv)
    for tok in it:
        if tok in VALUE_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(_glue_values(sys.argv[1:] if argv is None else argv))
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    cfg = config_from_args(ns)
    try:
        return COMMANDS[cfg.subcommand](cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"nilgeom {cfg.subcommand}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
