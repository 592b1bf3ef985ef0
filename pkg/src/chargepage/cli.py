"""Command-line front end.

Subcommands: dims, thermo, page-curve, exact, mc, crosscheck, laplace-check.
Every subcommand writes csv or json with the same numerical content, always
prefixed by a self-describing metadata block (model echo, version, seed).

Exit codes: 0 success, 2 usage or domain error, 3 internal invariant
violation.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from . import __version__
from .models import ChargeModel, GroupKind, catalog, catalog_names, \
    charge_str, load_model
from .sectors import block_table, realizable_charges, sector_dims
from .thermo import catalog_closed_forms, density_interval, thermo_point
from .asymptotics import average_entropy_asymptotic
from .exactavg import exact_average_entropy
from .laplace import LaplaceProblem, laplace_discontinuous, laplace_smooth
from .montecarlo import McConfig, SectorSizeError, run as mc_run

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INTERNAL = 3

#: block tables beyond this many bodies are skipped on the exact path
EXACT_FEASIBLE_N = 512


# ---------------------------------------------------------------------------
# shared plumbing

def _resolve_model(args) -> ChargeModel:
    if args.model and args.model_file:
        raise ValueError("give either --model or --model-file, not both")
    if args.model:
        return catalog(args.model)
    if args.model_file:
        return load_model(args.model_file)
    raise ValueError(f"a model is required: --model {{{','.join(catalog_names())}}} "
                     "or --model-file PATH")


def _parse_charge(text: str) -> int:
    """Physical charge ('1', '-2', '3/2', '0.5') to its doubled integer."""
    q2 = Fraction(text) * 2
    if q2.denominator != 1:
        raise ValueError(f"charge {text!r} is not an integer or half-integer")
    return int(q2)


def _parse_fraction(text: str) -> Fraction:
    f = Fraction(text)
    if not 0 < f < 1:
        raise ValueError(f"fraction {text!r} must lie strictly between 0 and 1")
    return f


def snap_charge(model: ChargeModel, n: int, s: float) -> int:
    """Nearest realizable doubled total charge to density s for n bodies."""
    target = 2.0 * s * n
    lattice = realizable_charges(model, n)
    return min(lattice, key=lambda q2: (abs(q2 - target), q2))


def _cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _emit(rows: list[dict], meta: dict, args) -> None:
    meta = {"tool": "chargepage", "version": __version__, **meta}
    if args.format == "json":
        text = json.dumps({"meta": meta, "rows": rows}, indent=2) + "\n"
    else:
        lines = [f"# meta: {json.dumps(meta)}"]
        if rows:
            keys = list(rows[0].keys())
            lines.append(",".join(keys))
            for row in rows:
                lines.append(",".join(_cell(row[k]) for k in keys))
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands

def cmd_dims(args) -> int:
    model = _resolve_model(args)
    meta = {"command": "dims", "model": model.as_dict(), "n": args.n}
    if (args.na is None) != (args.q is None):
        raise ValueError("--na and --q must be given together")
    if args.na is None:
        table = sector_dims(model, args.n)
        rows = [{"charge": charge_str(q2), "dimension": str(d)}
                for q2, d in sorted(table.dims.items())]
    else:
        q2 = _parse_charge(args.q)
        table = block_table(model, args.n, args.na, q2)
        meta.update(n_a=args.na, q=charge_str(q2),
                    sector_dimension=str(table.sector_dimension))
        rows = [{"charge_a": charge_str(qa2), "dim_a": str(d), "dim_b": str(b),
                 "product": str(d * b)}
                for qa2, d, b in table.blocks]
    _emit(rows, meta, args)
    return EXIT_OK


def cmd_thermo(args) -> int:
    model = _resolve_model(args)
    lo, hi = density_interval(model)
    if model.group is GroupKind.SU2:
        lo = 0.0
    if args.s is not None:
        grid = [args.s]
    else:
        span = hi - lo
        grid = [lo + i * span / (args.grid + 1) for i in range(1, args.grid + 1)]
    rows = []
    for s in grid:
        tp = thermo_point(model, s)
        row = {"s": s, "beta_star": tp.beta_star, "eta": tp.eta,
               "eta_pp": tp.eta_pp, "c_star": tp.c_star, "alpha0": tp.alpha0}
        if args.closed_form and model.name in catalog_names():
            row["eta_closed_form"] = catalog_closed_forms(model.name, s).eta
        rows.append(row)
    _emit(rows, {"command": "thermo", "model": model.as_dict()}, args)
    return EXIT_OK


def _page_rows(model, n, s, fractions, want_exact):
    rows = []
    for f in fractions:
        est = average_entropy_asymptotic(model, f, s)
        row = {
            "f": float(f), "s": s, "n": n, "regime": est.regime.value,
            "term_N": est.term_N, "term_sqrtN": est.term_sqrtN,
            "term_O1": est.term_O1, "includes_delta": est.includes_delta,
            "total": est.total(n),
        }
        if want_exact:
            n_a = round(f * n)
            if 0 < n_a < n and n <= EXACT_FEASIBLE_N:
                q2 = snap_charge(model, n, s)
                res = exact_average_entropy(model, n, n_a, q2)
                row.update(n_a=n_a, f_exact=n_a / n, q_snapped=charge_str(q2),
                           s_snapped=q2 / (2.0 * n), exact=res.value)
            else:
                row.update(n_a="", f_exact="", q_snapped="", s_snapped="",
                           exact="")
        rows.append(row)
    return rows


def _plot_svg(rows, path, n):
    xs = [row["f"] for row in rows]
    ys = [row["total"] for row in rows]
    w, h, pad = 640, 420, 50
    y_lo, y_hi = min(ys), max(ys)
    y_span = (y_hi - y_lo) or 1.0

    def px(x):
        return pad + (w - 2 * pad) * x

    def py(y):
        return h - pad - (h - 2 * pad) * (y - y_lo) / y_span

    points = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))
    svg = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}">',
        f'<rect width="{w}" height="{h}" fill="white"/>',
        f'<line x1="{pad}" y1="{h - pad}" x2="{w - pad}" y2="{h - pad}" stroke="black"/>',
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{h - pad}" stroke="black"/>',
        f'<polyline points="{points}" fill="none" stroke="#1f77b4" stroke-width="1.5"/>',
        f'<text x="{w // 2}" y="{h - 12}" text-anchor="middle" font-size="13">'
        f'subsystem fraction f</text>',
        f'<text x="14" y="{h // 2}" font-size="13" transform="rotate(-90 14 {h // 2})" '
        f'text-anchor="middle">average entropy at N={n}</text>',
        f'<text x="{pad}" y="{h - pad + 16}" font-size="11" text-anchor="middle">0</text>',
        f'<text x="{w - pad}" y="{h - pad + 16}" font-size="11" text-anchor="middle">1</text>',
        f'<text x="{pad - 6}" y="{py(y_lo) + 4}" font-size="11" text-anchor="end">'
        f'{y_lo:.3g}</text>',
        f'<text x="{pad - 6}" y="{py(y_hi) + 4}" font-size="11" text-anchor="end">'
        f'{y_hi:.3g}</text>',
        "</svg>",
    ]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(svg) + "\n")


def cmd_page_curve(args) -> int:
    model = _resolve_model(args)
    if args.f:
        fractions = [_parse_fraction(tok) for tok in args.f.split(",")]
    else:
        fractions = [Fraction(i, args.points + 1) for i in range(1, args.points + 1)]
    rows = _page_rows(model, args.n, args.s, fractions, args.exact)
    meta = {"command": "page-curve", "model": model.as_dict(), "n": args.n,
            "s": args.s}
    _emit(rows, meta, args)
    if args.plot:
        _plot_svg(rows, args.plot, args.n)
    return EXIT_OK


def cmd_exact(args) -> int:
    model = _resolve_model(args)
    q2 = _parse_charge(args.q)
    res = exact_average_entropy(model, args.n, args.na, q2)
    rows = [{
        "n": args.n, "n_a": args.na, "q": charge_str(q2),
        "value": res.value, "y1": res.y1, "y2": res.y2, "y3": res.y3,
        "degenerate": res.degenerate,
    }]
    _emit(rows, {"command": "exact", "model": model.as_dict()}, args)
    return EXIT_OK


def cmd_mc(args) -> int:
    model = _resolve_model(args)
    q2 = _parse_charge(args.q)
    config = McConfig(model, args.n, args.na, q2, args.samples, args.seed)
    result = mc_run(config)
    meta = {"command": "mc", "model": model.as_dict(), "seed": args.seed}
    rows = [{
        "n": args.n, "n_a": args.na, "q": charge_str(q2),
        "samples": args.samples, "seed": args.seed,
        "mean": result.mean, "std_error": result.std_error,
        "sample_variance": result.sample_variance,
    }]
    _emit(rows, meta, args)
    if args.dump:
        header = {"model": model.as_dict(), "n": args.n, "n_a": args.na,
                  "q": charge_str(q2), "samples": args.samples, "seed": args.seed}
        with open(args.dump, "w", encoding="utf-8") as fh:
            fh.write("# chargepage mc raw samples, one entropy per line\n")
            fh.write(f"# meta: {json.dumps(header)}\n")
            for value in result.entropies:
                fh.write(repr(float(value)) + "\n")
    return EXIT_OK


def cmd_crosscheck(args) -> int:
    model = _resolve_model(args)
    f = _parse_fraction(args.f)
    n_list = [int(tok) for tok in args.n_list.split(",")]
    rows = []
    all_pass = True
    for n in n_list:
        row = {"n": n, "status": "pass"}
        n_a = f * n
        if n_a.denominator != 1:
            row.update(status="skipped", reason=f"f*n = {n_a} not an integer")
            rows.append(row)
            continue
        n_a = int(n_a)
        q2 = snap_charge(model, n, args.s)
        s_snap = q2 / (2.0 * n)
        row.update(q=charge_str(q2), s_snapped=s_snap)
        try:
            est = average_entropy_asymptotic(model, f, s_snap)
        except ValueError as exc:
            row.update(status="skipped", reason=str(exc))
            rows.append(row)
            continue
        res = exact_average_entropy(model, n, n_a, q2)
        total = est.total(n)
        scale = math.sqrt(n) if est.regime.value == "f_half" else float(n)
        scaled = abs(res.value - total) * scale
        row.update(exact=res.value, asymptotic=total,
                   abs_diff=abs(res.value - total), scaled_diff=scaled)
        if scaled >= args.tol:
            row["status"] = "fail"
        try:
            mc = mc_run(McConfig(model, n, n_a, q2, args.samples, args.seed))
            if mc.std_error > 0:
                z = abs(mc.mean - res.value) / mc.std_error
            else:
                z = 0.0 if mc.mean == res.value else math.inf
            row.update(mc_mean=mc.mean, mc_std_error=mc.std_error, z=z)
            if z >= 4.0:
                row["status"] = "fail"
        except SectorSizeError as exc:
            row.update(mc_mean="", mc_std_error="", z="",
                       status="skipped", reason=str(exc))
        if row["status"] == "fail":
            all_pass = False
        rows.append(row)
    keys = ["n", "q", "s_snapped", "exact", "asymptotic", "abs_diff",
            "scaled_diff", "mc_mean", "mc_std_error", "z", "status", "reason"]
    rows = [{k: row.get(k, "") for k in keys} for row in rows]
    meta = {"command": "crosscheck", "model": model.as_dict(),
            "f": str(f), "s": args.s, "samples": args.samples,
            "seed": args.seed, "tolerance": args.tol}
    _emit(rows, meta, args)
    return EXIT_OK if all_pass else EXIT_USAGE


# ---------------------------------------------------------------------------
# Laplace self-check suite: analytic problems with known derivative data,
# compared against adaptive quadrature.

def _cubic_g(t):
    return -t * t / 2 + t**3 / 6


def _cosh_g(t):
    return 1.0 - math.cosh(t)


def _skew_g(t):
    return 1.0 - math.cosh(t) + t**3 / 10


SMOOTH_SUITE = [
    # (name, g(t), h(t), problem)
    ("gauss-exp", lambda t: -t * t / 2, math.exp,
     LaplaceProblem(0.0, (-8.0, 8.0), (0, 0, -1, 0, 0), (1, 1, 1), (1, 1, 1))),
    ("cubic-tilt", _cubic_g, lambda t: 1.0,
     LaplaceProblem(0.0, (-1.0, 1.5), (0, 0, -1, 1, 0), (1, 0, 0), (1, 0, 0))),
    ("cosh-well", _cosh_g, lambda t: 1.0,
     LaplaceProblem(0.0, (-3.0, 3.0), (0, 0, -1, 0, -1), (1, 0, 0), (1, 0, 0))),
    ("cosh-quad-prefactor", _cosh_g, lambda t: 1 + t + t * t,
     LaplaceProblem(0.0, (-3.0, 3.0), (0, 0, -1, 0, -1), (1, 1, 2), (1, 1, 2))),
    ("cubic-sin-prefactor", _cubic_g, lambda t: 2 + math.sin(t),
     LaplaceProblem(0.0, (-1.0, 1.5), (0, 0, -1, 1, 0), (2, 1, 0), (2, 1, 0))),
]

DISCONTINUOUS_SUITE = [
    # (name, g(t), h_minus(t), h_plus(t), problem)
    ("jump-cubic", _cubic_g, lambda t: 1.0, lambda t: 2.0,
     LaplaceProblem(0.0, (-1.0, 1.5), (0, 0, -1, 1, 0), (1, 0, 0), (2, 0, 0))),
    ("kink-cosh", _cosh_g, lambda t: 1 - t, lambda t: 1 + t,
     LaplaceProblem(0.0, (-3.0, 3.0), (0, 0, -1, 0, -1), (1, -1, 0), (1, 1, 0))),
    ("jump-slope-cosh", _cosh_g, lambda t: 2 + t, lambda t: 1 - t,
     LaplaceProblem(0.0, (-3.0, 3.0), (0, 0, -1, 0, -1), (2, 1, 0), (1, -1, 0))),
    ("exp-jump-cubic", _cubic_g, lambda t: math.exp(-t),
     lambda t: 2 * math.exp(t),
     LaplaceProblem(0.0, (-1.0, 1.5), (0, 0, -1, 1, 0), (1, -1, 1), (2, 2, 2))),
    ("mixed-skew", _skew_g, lambda t: 1 + t * t, lambda t: 2 - t,
     LaplaceProblem(0.0, (-2.0, 2.0), (0, 0, -1, 0.6, -1), (1, 0, 2), (2, -1, 0))),
]


def _quad_reference(g, h_minus, h_plus, problem, n):
    from scipy.integrate import quad

    t1, t2 = problem.interval
    t0 = problem.t0
    lo, _ = quad(lambda t: h_minus(t) * math.exp(n * g(t)), t1, t0,
                 epsabs=0.0, epsrel=1e-13, limit=300)
    hi, _ = quad(lambda t: h_plus(t) * math.exp(n * g(t)), t0, t2,
                 epsabs=0.0, epsrel=1e-13, limit=300)
    return lo + hi


def _fit_slope(ns, errors):
    logs_n = [math.log(n) for n in ns]
    logs_e = [math.log(e) for e in errors]
    mean_n = sum(logs_n) / len(logs_n)
    mean_e = sum(logs_e) / len(logs_e)
    num = sum((x - mean_n) * (y - mean_e) for x, y in zip(logs_n, logs_e))
    den = sum((x - mean_n) ** 2 for x in logs_n)
    return num / den


def run_laplace_suite(ns=(100, 1000, 10000)):
    """Error-scaling rows for the analytic suite vs adaptive quadrature."""
    rows = []
    for name, g, h, problem in SMOOTH_SUITE:
        errs = []
        for n in ns:
            ref = _quad_reference(g, h, h, problem, n)
            got = laplace_smooth(problem, n)["value"]
            errs.append(abs(got / ref - 1.0))
        slope = _fit_slope(ns, errs)
        rows.append({"case": name, "kind": "smooth", "slope": slope,
                     "target": -2.0, "max_rel_error": max(errs)})
    for name, g, hm, hp, problem in DISCONTINUOUS_SUITE:
        errs = []
        for n in ns:
            ref = _quad_reference(g, hm, hp, problem, n)
            got = laplace_discontinuous(problem, n)["value"]
            errs.append(abs(got / ref - 1.0))
        slope = _fit_slope(ns, errs)
        rows.append({"case": name, "kind": "discontinuous", "slope": slope,
                     "target": -1.5, "max_rel_error": max(errs)})
    return rows


def cmd_laplace_check(args) -> int:
    ns = tuple(int(tok) for tok in args.n_list.split(","))
    rows = run_laplace_suite(ns)
    all_pass = True
    for row in rows:
        ok = abs(row["slope"] - row["target"]) <= 0.15
        row["status"] = "pass" if ok else "fail"
        all_pass &= ok
    _emit(rows, {"command": "laplace-check", "n_list": list(ns)}, args)
    return EXIT_OK if all_pass else EXIT_USAGE


# ---------------------------------------------------------------------------

def _add_common(sub):
    sub.add_argument("--model", help="builtin model name "
                     f"({', '.join(catalog_names())})")
    sub.add_argument("--model-file", help="path to a JSON model config")
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--out", help="output path (default: stdout)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chargepage",
        description="Typical entanglement entropy of fixed-charge sectors: "
                    "exact, asymptotic, and Monte Carlo routes.")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("dims", help="exact sector and block dimensions")
    _add_common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--na", type=int, help="subsystem size (with --q)")
    p.add_argument("--q", help="total charge, e.g. 0, -2, 3/2 (with --na)")
    p.set_defaults(func=cmd_dims)

    p = subs.add_parser("thermo", help="local thermodynamics at density s")
    _add_common(p)
    p.add_argument("--s", type=float, help="single charge density")
    p.add_argument("--grid", type=int, default=99,
                   help="interior grid size when --s is absent")
    p.add_argument("--closed-form", action="store_true",
                   help="add the catalog closed-form eta column")
    p.set_defaults(func=cmd_thermo)

    p = subs.add_parser("page-curve", help="asymptotic entropy vs fraction f")
    _add_common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--points", type=int, default=19,
                   help="interior f-grid size (default 19)")
    p.add_argument("--f", help="comma list of fractions, e.g. 1/4,1/2,3/4")
    p.add_argument("--exact", action="store_true",
                   help="add exact values at the nearest integer cuts")
    p.add_argument("--plot", help="write a standalone SVG line plot here")
    p.set_defaults(func=cmd_page_curve)

    p = subs.add_parser("exact", help="exact average entropy of one sector")
    _add_common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--na", type=int, required=True)
    p.add_argument("--q", required=True)
    p.set_defaults(func=cmd_exact)

    p = subs.add_parser("mc", help="Monte Carlo over Haar-random sector states")
    _add_common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--na", type=int, required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dump", help="write raw per-sample entropies here")
    p.set_defaults(func=cmd_mc)

    p = subs.add_parser("crosscheck",
                        help="exact vs asymptotic vs Monte Carlo report")
    _add_common(p)
    p.add_argument("--n-list", required=True, help="comma list, e.g. 8,12")
    p.add_argument("--f", required=True, help="subsystem fraction, e.g. 1/2")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=2.0,
                   help="bound on the N-scaled exact-asymptotic difference")
    p.set_defaults(func=cmd_crosscheck)

    p = subs.add_parser("laplace-check",
                        help="error scaling of the Laplace toolkit vs quadrature")
    _add_common(p)
    p.add_argument("--n-list", default="100,1000,10000")
    p.set_defaults(func=cmd_laplace_check)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"chargepage: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RuntimeError as exc:
        print(f"chargepage: internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
