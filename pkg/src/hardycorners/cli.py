"""Command-line interface: domain checks, reproduction runs, edge weights, self-tests.

Exit codes across all subcommands:

* 0 — run completed and every checked quantity met its tolerance;
* 1 — run completed but a check or tolerance failed;
* 2 — input error (bad spec, unknown option value, malformed expression);
* 3 — precondition failure (a kernel pole: some tangent hyperplane passes
  through the requested interior point).

Reports are deterministic JSON documents of the shape
``{"command", "spec_hash", "resolution", "results": [...], "tolerances",
"pass"}``; complex numbers are encoded as two-element [re, im] arrays.  The
``eta`` subcommand can instead emit CSV with the stable header
``param1,param2,kappa,eta_weight,margin``.
"""

from __future__ import annotations

import ast
import hashlib
import json
import sys

import click
import numpy as np

from . import kernels
from .domain import (
    canonical_spec,
    check_local_intersection,
    check_strict_convexity,
    domain_from_spec,
    strong_tangents,
    validate_domain,
)
from .kernels import (
    corner_kernel,
    cramer_residual,
    omega_cfl,
    omega_cfl_affine_form,
    pushforward_corner_check,
    simplex_integral,
)
from .measures import reproduce as run_reproduce
from .normalforms import (
    apply_coordinate_change,
    change_matrix,
    eta as edge_eta,
    extract_normal_form,
    model_edge_domain,
)
from .projective import ProjMap

BUILTIN_SPECS = ("bidisk", "perturbed_bidisk", "sphere", "wedge_union")


def load_spec(name_or_path):
    """Load a domain spec from a file path or the built-in catalog."""
    import importlib.resources as resources
    import os

    if os.path.exists(name_or_path):
        with open(name_or_path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    if name_or_path in BUILTIN_SPECS:
        ref = resources.files("hardycorners").joinpath(
            "specs", name_or_path + ".json"
        )
        return json.loads(ref.read_text(encoding="utf-8"))
    raise click.UsageError(
        f"spec {name_or_path!r} is neither a file nor one of {BUILTIN_SPECS}"
    )


def spec_hash(spec):
    return hashlib.sha256(canonical_spec(spec).encode("utf-8")).hexdigest()


def _jsonify(obj):
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    if isinstance(obj, np.complexfloating):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, np.ndarray):
        return [_jsonify(x) for x in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(x) for x in obj]
    return obj


def emit(report, output):
    text = json.dumps(_jsonify(report), indent=2, sort_keys=True)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


_ALLOWED_NODES = (
    ast.Expression,
    ast.BinOp,
    ast.UnaryOp,
    ast.Add,
    ast.Sub,
    ast.Mult,
    ast.Div,
    ast.Pow,
    ast.USub,
    ast.UAdd,
    ast.Constant,
    ast.Name,
    ast.Load,
)


def parse_section_expr(expr):
    """Compile a restricted arithmetic expression in z1, z2 to a callable.

    Only +, -, *, /, ** over numeric literals and the names z1, z2 (plus the
    imaginary unit spelled 1j) are accepted.
    """
    try:
        tree = ast.parse(expr, mode="eval")
    except SyntaxError as exc:
        raise click.UsageError(f"cannot parse expression {expr!r}: {exc}") from exc
    for node in ast.walk(tree):
        if not isinstance(node, _ALLOWED_NODES):
            raise click.UsageError(
                f"expression {expr!r} uses unsupported syntax "
                f"({type(node).__name__})"
            )
        if isinstance(node, ast.Name) and node.id not in ("z1", "z2"):
            raise click.UsageError(
                f"expression may only reference z1 and z2, not {node.id!r}"
            )
        if isinstance(node, ast.Constant) and not isinstance(
            node.value, (int, float, complex)
        ):
            raise click.UsageError("only numeric literals are allowed")
    code = compile(tree, "<section>", "eval")

    def call(z):
        return complex(
            eval(code, {"__builtins__": {}}, {"z1": complex(z[0]), "z2": complex(z[1])})
        )

    return call


def parse_tau(text):
    parts = text.split(",")
    if len(parts) != 4:
        raise click.UsageError(
            "--tau must be four comma-separated reals: re1,im1,re2,im2"
        )
    try:
        v = [float(p) for p in parts]
    except ValueError as exc:
        raise click.UsageError(f"cannot parse --tau {text!r}") from exc
    return np.array([complex(v[0], v[1]), complex(v[2], v[3])])


@click.group()
def main():
    """Projective Hardy-space machinery on piecewise-smooth domains."""


@main.command("check-domain")
@click.argument("spec_name")
@click.option("--samples", default=400, show_default=True, help="Ball samples per edge.")
@click.option("--radius", default=0.05, show_default=True, help="Sampling ball radius.")
@click.option("--resolution", default=8, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--output", type=click.Path(), default=None)
def check_domain_cmd(spec_name, samples, radius, resolution, seed, output):
    """Validate a domain spec and probe its edges' local geometry."""
    spec = load_spec(spec_name)
    try:
        d = domain_from_spec(spec)
    except (ValueError, KeyError) as exc:
        click.echo(f"invalid domain spec: {exc}", err=True)
        sys.exit(2)

    results = []
    report_pass = True

    val = validate_domain(d, resolution=resolution)
    results.append({"check": "validate", **val})
    report_pass &= val["passed"]

    for ei, e in enumerate(d.edges):
        params0 = e.chart.quad_nodes(resolution)[0][0]
        z = e.chart.point(*params0)
        loc = check_local_intersection(d, z, radius, samples, seed=seed)
        results.append({"check": "local_intersection", "edge": ei, **loc})
        report_pass &= loc["passed"]
        conv = check_strict_convexity(d, z, local_radius=4 * radius)
        results.append(
            {
                "check": "strict_convexity",
                "edge": ei,
                "members": conv["members"],
                "min_margin": conv["min_margin"],
                "strict": conv["strict"],
            }
        )

    report = {
        "command": "check-domain",
        "spec_hash": spec_hash(spec),
        "resolution": resolution,
        "results": results,
        "tolerances": {"onlocus": 1e-10},
        "pass": bool(report_pass),
    }
    emit(report, output)
    sys.exit(0 if report_pass else 1)


@main.command("reproduce")
@click.argument("spec_name")
@click.option("--tau", required=True, help="Interior point re1,im1,re2,im2.")
@click.option("--f", "f_expr", default="1", show_default=True, help="Holomorphic expression in z1, z2.")
@click.option("--resolution", default=32, show_default=True)
@click.option("--face-resolution", default=None, type=int)
@click.option("--edge-resolution", default=None, type=int)
@click.option("--tolerance", default=1e-6, show_default=True)
@click.option("--output", type=click.Path(), default=None)
def reproduce_cmd(
    spec_name, tau, f_expr, resolution, face_resolution, edge_resolution, tolerance, output
):
    """Run the reproducing formula for a holomorphic function at a point."""
    spec = load_spec(spec_name)
    try:
        d = domain_from_spec(spec)
    except (ValueError, KeyError) as exc:
        click.echo(f"invalid domain spec: {exc}", err=True)
        sys.exit(2)
    tau_pt = parse_tau(tau)
    if not d.contains(tau_pt):
        click.echo("--tau is not an interior point of the domain", err=True)
        sys.exit(2)
    f = parse_section_expr(f_expr)
    try:
        res = run_reproduce(
            d,
            f,
            tau_pt,
            resolution=resolution,
            face_resolution=face_resolution,
            edge_resolution=edge_resolution,
        )
    except ZeroDivisionError as exc:
        click.echo(f"precondition failure: {exc}", err=True)
        sys.exit(3)

    ok = res["rel_err"] <= tolerance
    report = {
        "command": "reproduce",
        "spec_hash": spec_hash(spec),
        "resolution": resolution,
        "results": [
            {
                "value": res["value"],
                "expected": res["expected"],
                "per_piece": res["per_piece"],
                "rel_err": res["rel_err"],
            }
        ],
        "tolerances": {"rel_err": tolerance},
        "pass": bool(ok),
    }
    emit(report, output)
    sys.exit(0 if ok else 1)


@main.command("eta")
@click.argument("spec_name")
@click.option("--edge", default=0, show_default=True, help="Edge index.")
@click.option("--grid", default=8, show_default=True, help="Grid points per chart axis.")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True)
@click.option("--with-margins/--no-margins", default=False, show_default=True)
@click.option("--output", type=click.Path(), default=None)
def eta_cmd(spec_name, edge, grid, fmt, with_margins, output):
    """Tabulate the edge invariant and weight over an edge chart grid.

    CSV header (stable): param1,param2,kappa,eta_weight,margin.  The margin
    column is empty unless --with-margins is given.
    """
    spec = load_spec(spec_name)
    try:
        d = domain_from_spec(spec)
    except (ValueError, KeyError) as exc:
        click.echo(f"invalid domain spec: {exc}", err=True)
        sys.exit(2)
    if not 0 <= edge < len(d.edges):
        click.echo(f"edge index {edge} out of range (domain has {len(d.edges)})", err=True)
        sys.exit(2)
    e = d.edges[edge]

    rows = []
    all_ok = True
    for params, _ in e.chart.quad_nodes(grid):
        z = e.chart.point(*params)
        try:
            inv = edge_eta(d, z)
            margin = None
            if with_margins:
                conv = check_strict_convexity(d, z, t_grid=5, ambient_grid=8, local_radius=0.1)
                margin = conv["min_margin"]
            rows.append(
                {
                    "params": list(params),
                    "kappa": inv.kappa,
                    "eta_weight": inv.eta_weight,
                    "margin": margin,
                }
            )
            if inv.eta_weight <= 0:
                all_ok = False
        except ValueError as exc:
            rows.append({"params": list(params), "error": str(exc)})
            all_ok = False

    if fmt == "csv":
        lines = ["param1,param2,kappa,eta_weight,margin"]
        for r in rows:
            if "error" in r:
                lines.append(
                    f"{r['params'][0]:.17g},{r['params'][1]:.17g},nan,nan,"
                )
                continue
            m = "" if r["margin"] is None else f"{r['margin']:.17g}"
            lines.append(
                f"{r['params'][0]:.17g},{r['params'][1]:.17g},"
                f"{r['kappa']:.17g},{r['eta_weight']:.17g},{m}"
            )
        text = "\n".join(lines) + "\n"
        if output:
            with open(output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            click.echo(text, nl=False)
    else:
        report = {
            "command": "eta",
            "spec_hash": spec_hash(spec),
            "resolution": grid,
            "results": rows,
            "tolerances": {"positive_weight": 0.0},
            "pass": bool(all_ok),
        }
        emit(report, output)
    sys.exit(0 if all_ok else 1)


def _suite_simplex(rng, checks):
    for n in (2, 3):
        for _ in range(5):
            tau = 0.5 * (rng.random(n) - 0.5) + 0.25j * (rng.random(n) - 0.5)
            closed = simplex_integral(tau, method="closed")
            quad = simplex_integral(tau, method="quadrature", order=24)
            rel = abs(closed - quad) / abs(closed)
            checks.append(
                {"name": f"simplex_n{n}", "rel_err": rel, "passed": rel < 1e-6}
            )


def _random_edge_points(d, rng, count):
    e = d.edges[0]
    pts = []
    for _ in range(count):
        params = tuple(2 * np.pi * rng.random(e.chart.dim))
        pts.append((e, e.chart.point(*params)))
    return pts


def _suite_cramer(rng, checks):
    for name in ("bidisk", "perturbed_bidisk"):
        d = domain_from_spec(load_spec(name))
        for e, z in _random_edge_points(d, rng, 5):
            st = strong_tangents(d, e, z)
            res = cramer_residual(st)
            checks.append(
                {"name": f"cramer_{name}", "residual": res, "passed": res < 1e-12}
            )


def _random_incident_pair(rng):
    z = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    basis = np.array([[-z[1], z[0], 0.0], [-z[2], 0.0, z[0]]])
    coef = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    w = coef @ basis
    return z, w


def _random_tangents(rng, z, w, count=3):
    out = []
    for _ in range(count):
        dz = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        xi = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        dw = xi - ((z @ xi + w @ dz) / (z @ np.conj(z))) * np.conj(z)
        out.append((dz, dw))
    return out


def _suite_symmetry(rng, checks):
    for _ in range(10):
        z, w = _random_incident_pair(rng)
        tangents = _random_tangents(rng, z, w)
        a = omega_cfl(z, w, tangents)
        swapped = [(dw, dz) for dz, dw in tangents]
        b = omega_cfl(w, z, swapped)
        rel = abs(a.value - b.value) / max(abs(a.value), 1e-300)
        checks.append({"name": "symmetry", "rel_err": rel, "passed": rel < 1e-10})


def _suite_chart_identity(rng, checks):
    for _ in range(10):
        z, w = _random_incident_pair(rng)
        tangents = _random_tangents(rng, z, w)
        vals = []
        for j in range(3):
            for k in range(3):
                vals.append(omega_cfl(z, w, tangents, charts=(j, k)).value)
        ref = omega_cfl_affine_form(z, w, tangents).value
        spread = max(abs(v - ref) for v in vals) / max(abs(ref), 1e-300)
        checks.append(
            {"name": "chart_identity", "rel_err": spread, "passed": spread < 1e-10}
        )


def _suite_laws(rng, checks):
    ident = ProjMap(np.eye(3, dtype=complex))
    kinds = [
        ("shear1", 0.7j),
        ("scale", 1.6),
        ("swap", None),
        ("parab", 0.45),
    ]
    for kind, param in kinds:
        coeffs = tuple(rng.uniform(-1.0, 1.0, size=6))
        d = model_edge_domain(coeffs)
        predicted = apply_coordinate_change(coeffs, kind, param)
        from .domain import transform_domain

        d2 = transform_domain(d, change_matrix(kind, param))
        nf = extract_normal_form(d2, np.array([0.0j, 0.0j]), frame=ident)
        got = nf.coeffs
        err = max(abs(p - g) for p, g in zip(predicted, got))
        checks.append({"name": f"law_{kind}", "abs_err": err, "passed": err < 1e-6})


def _suite_anchor(rng, checks):
    d = domain_from_spec(load_spec("perturbed_bidisk"))
    tau = np.array([1.0, 0.1 + 0.05j, -0.2 + 0.1j])
    for _, z in _random_edge_points(d, rng, 3):
        res = pushforward_corner_check(d, z, tau)
        checks.append(
            {
                "name": "pushforward",
                "rel_err": res["rel_err"],
                "passed": res["rel_err"] < 1e-5,
            }
        )
    db = domain_from_spec(load_spec("bidisk"))
    rep = run_reproduce(
        db,
        lambda z: z[0] * z[1] ** 2 + 0.5,
        np.array([0.2 + 0.1j, -0.3 + 0.05j]),
        resolution=32,
        face_resolution=6,
    )
    checks.append(
        {
            "name": "anchor_reproduce",
            "rel_err": rep["rel_err"],
            "passed": rep["rel_err"] < 1e-8,
        }
    )


_SUITES = {
    "simplex": _suite_simplex,
    "cramer": _suite_cramer,
    "symmetry": _suite_symmetry,
    "chart-identity": _suite_chart_identity,
    "laws": _suite_laws,
    "anchor": _suite_anchor,
}


@main.command("selftest")
@click.option("--suite", required=True, help="One of: " + ", ".join(sorted(_SUITES)))
@click.option("--seed", default=0, show_default=True)
@click.option("--mutate-corner-sign", is_flag=True, hidden=True)
@click.option("--output", type=click.Path(), default=None)
def selftest_cmd(suite, seed, mutate_corner_sign, output):
    """Run an internal consistency suite."""
    if suite not in _SUITES:
        raise click.UsageError(
            f"unknown suite {suite!r}; choose from {sorted(_SUITES)}"
        )
    if mutate_corner_sign:
        kernels._CORNER_SIGN = -kernels._CORNER_SIGN
    rng = np.random.default_rng(seed)
    checks = []
    try:
        _SUITES[suite](rng, checks)
    finally:
        if mutate_corner_sign:
            kernels._CORNER_SIGN = -kernels._CORNER_SIGN
    ok = all(c["passed"] for c in checks)
    report = {
        "command": "selftest",
        "spec_hash": None,
        "resolution": None,
        "results": checks,
        "tolerances": {"suite": suite},
        "pass": bool(ok),
    }
    emit(report, output)
    sys.exit(0 if ok else 1)


if __name__ == "__main__":
    main()
