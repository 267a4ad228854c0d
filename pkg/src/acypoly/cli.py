"""Command line entry point: ``acypoly {compute,roots,classify,atlas,search}``.

Family specs use ``name:p1,p2``, for example ``kn:7``, ``kmn:3,4``,
``torus:3,5`` or ``joinbar-k6:20``.  Results go to stdout as JSON (or CSV);
diagnostics go to stderr.

Exit codes: 0 success, 1 numerical failure, 2 bad input, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import acyclic, atlas, classify, roots as R
from .graph import FAMILIES, Graph, GraphError, emit_graph6, family, parse_edge_list, parse_family_spec, parse_graph6
from .poly import Poly

EXIT_NUMERIC = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

FAMILY_HELP = (
    "family spec name:params; families: "
    + ", ".join(f"{name}({'m,n' if arity == 2 else 'n'})" for name, (_, arity) in FAMILIES.items())
)


class InputError(Exception):
    pass


def _precision(args) -> int | None:
    if getattr(args, "precision", None):
        return args.precision
    env = os.environ.get("ACYC_PRECISION")
    if env:
        try:
            value = int(env)
        except ValueError:
            raise InputError(f"ACYC_PRECISION must be an integer, got {env!r}") from None
        if value < 53:
            raise InputError("ACYC_PRECISION must be at least 53 bits")
        return value
    return None


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="ascii") as fh:
            return fh.read()
    except (OSError, UnicodeDecodeError) as e:
        raise InputError(f"cannot read {path}: {e}") from e


def _load_graphs(args) -> list[tuple[str, Graph]]:
    if args.family:
        name, params = parse_family_spec(args.family)
        g = family(name, *params)
        return [(args.family, g)]
    text = _read(args.input)
    fmt = args.format
    if fmt == "auto":
        fmt = "graph6" if args.input.endswith((".g6", ".graph6")) or text.startswith(">>graph6<<") else "edges"
    if fmt == "edges":
        return [(args.input, parse_edge_list(text))]
    graphs = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if line.strip():
            try:
                graphs.append((line.strip(), parse_graph6(line.strip())))
            except GraphError as e:
                raise InputError(f"{args.input}: line {lineno}: {e}") from e
    if not graphs:
        raise InputError(f"{args.input}: no graphs")
    return graphs


def _add_input(p: argparse.ArgumentParser, poly: bool = False) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--family", help=FAMILY_HELP)
    src.add_argument("--input", help="graph file (graph6 lines or an edge list); '-' for stdin")
    if poly:
        src.add_argument("--poly", help="integer coefficients, lowest degree first, e.g. '1,3,3'")
    p.add_argument("--format", choices=["auto", "graph6", "edges"], default="auto")


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_compute(args) -> int:
    prec = _precision(args)
    out = []
    for gid, g in _load_graphs(args):
        res = acyclic.analyze(g, method=args.method)
        rep = classify.build_report(g, analysis=res, precision=prec, with_roots=not args.no_roots)
        doc = rep.to_json()
        doc["graph"] = gid
        out.append(doc)
    _emit(out[0] if len(out) == 1 else out)
    return 0


def _parse_poly(text: str) -> Poly:
    try:
        coeffs = [int(c) for c in text.replace(" ", "").split(",") if c != ""]
    except ValueError:
        raise InputError(f"--poly expects comma-separated integers, got {text!r}") from None
    p = Poly(coeffs)
    if p.degree < 1:
        raise InputError("--poly needs degree >= 1")
    return p


def poly_verdicts(p: Poly, precision: int | None = None, tol: float = 1e-12) -> dict:
    rs = R.all_roots(p, precision=precision, tol=tol)
    positive = all(a > 0 for a in p.coeffs)
    out = {
        "polynomial": [str(c) for c in p.coeffs],
        "degree": p.degree,
        "roots": rs.to_json(),
        "moduli": [str(abs(z)) for z in rs.roots],
        "real_rooted": R.is_real_rooted(p) if p.leading > 0 else R.is_real_rooted(-p),
        "stable": R.is_stable_hb(p) if p.leading > 0 else R.is_stable_hb(-p),
        "annulus": None,
        "rational_roots": None,
    }
    if positive and p.degree >= 2:
        ann = R.enestrom_kakeya(p)
        out["annulus"] = {"lo": str(ann.lo), "hi": str(ann.hi)}
    if positive and p[0] == 1:
        out["rational_roots"] = [str(r) for r in R.rational_roots(p)]
    return out


def cmd_roots(args) -> int:
    prec = _precision(args)
    if args.poly is not None:
        polys = [("poly", _parse_poly(args.poly))]
    else:
        polys = [(gid, acyclic.analyze(g).ac) for gid, g in _load_graphs(args)]
    out = []
    for gid, p in polys:
        if p.degree < 1:
            raise InputError(f"{gid}: polynomial has degree {p.degree}; no roots to find")
        doc = poly_verdicts(p, prec, args.tol)
        doc["source"] = gid
        out.append(doc)
    _emit(out[0] if len(out) == 1 else out)
    return 0


def cmd_classify(args) -> int:
    out = []
    for gid, g in _load_graphs(args):
        res = acyclic.analyze(g)
        w = classify.degree3_test(g)
        doc = {
            "graph": gid,
            "order": g.n,
            "upsilon": res.upsilon,
            "nabla": res.nabla,
            "coefficients": [str(c) for c in res.ac],
            "degree3": w.to_json(),
            "lower_bounds": {k: b.to_json() for k, b in classify.upsilon_lower_bounds(g).items()},
            "identities": {"ok": (chk := classify.coefficient_identities(g, res.ac)).ok,
                           "failure": chk.failure or None},
            "method": res.method,
        }
        if w.kind == classify.STAR_FOREST:
            doc["a3"] = {
                "value": str(res.ac[3]),
                "formula": str(classify.a3_formula(g.n, w.star_sizes)),
                "lower": str(classify.a3_lower(g.n)),
                "upper": repr(classify.a3_upper(g.n)),
            }
        out.append(doc)
    _emit(out[0] if len(out) == 1 else out)
    return 0


def _range(text: str, inclusive: bool = True) -> range:
    try:
        parts = [int(p) for p in text.split(":")]
    except ValueError:
        raise InputError(f"bad range {text!r}; expected a:b or a:b:step") from None
    if len(parts) not in (2, 3) or (len(parts) == 3 and parts[2] <= 0):
        raise InputError(f"bad range {text!r}; expected a:b or a:b:step")
    step = parts[2] if len(parts) == 3 else 1
    return range(parts[0], parts[1] + (1 if inclusive else 0), step)


def _family_range(name: str, rng: range):
    if name not in FAMILIES or FAMILIES[name][1] != 1:
        raise InputError(f"--family for ranges needs a one-parameter family, got {name!r}")
    for m in rng:
        yield f"{name}:{m}", family(name, m)


def _atlas_source(args):
    errors = []
    if args.dimension3:
        if args.order is None:
            raise InputError("--dimension3 needs --order")
        return "partition", atlas.gen_dimension3(args.order), errors
    if args.exhaustive is not None:
        if not 0 <= args.exhaustive <= 7:
            raise InputError("--exhaustive supports orders 0..7")
        return "exhaustive", atlas.exhaustive_scan(args.exhaustive), errors
    if args.graph6:
        text = _read(args.graph6)
        stream = atlas.ingest_graph6_stream(text.splitlines(), strict=args.strict, errors=errors)
        return "graph6", stream, errors
    if args.family:
        if not args.n_range:
            raise InputError("--family needs --n-range a:b[:step]")
        return "family", _family_range(args.family, _range(args.n_range)), errors
    raise InputError("choose one of --dimension3, --exhaustive, --graph6, --family")


def _add_sources(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--dimension3", action="store_true", help="all acyclic-dimension-3 graphs of --order")
    src.add_argument("--exhaustive", type=int, metavar="N", help="one graph per isomorphism class of order N <= 7")
    src.add_argument("--graph6", metavar="FILE", help="graph6 stream, one graph per line; '-' for stdin")
    src.add_argument("--family", help="one-parameter family name, used with --n-range")
    p.add_argument("--order", type=int)
    p.add_argument("--n-range", "--m-range", dest="n_range", metavar="A:B[:S]",
                   help="inclusive parameter range for --family")
    p.add_argument("--strict", action="store_true", help="abort on the first malformed graph6 line")


def cmd_atlas(args) -> int:
    source, graphs, errors = _atlas_source(args)
    prec = _precision(args)
    records = list(atlas.root_cloud(graphs, source=source, precision=prec, jobs=args.jobs))
    for lineno, msg in errors:
        print(f"warning: skipped graph6 line {lineno}: {msg}", file=sys.stderr)
    wrote = False
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            atlas.export_csv(records, fh)
        wrote = True
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(atlas.export_json(records), fh, indent=2)
            fh.write("\n")
        wrote = True
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(atlas.render_svg(records, overlay_curves=args.overlay))
        wrote = True
    if args.png:
        from .plotting import render_png

        render_png(records, args.png, overlay_curves=args.overlay)
        wrote = True
    if not wrote:
        atlas.export_csv(records, sys.stdout)
    failed = sum(1 for r in records if r.error)
    print(f"{len(records)} records ({failed} root failures)", file=sys.stderr)
    return 0


def _search_hit(target: str, gid: str, g: Graph, p: Poly, prec) -> dict | None:
    base = {"graph": gid, "graph6": emit_graph6(g) if g.n <= 62 else None,
            "coefficients": [str(c) for c in p]}
    if target == "non-unimodal":
        if R.is_unimodal(p):
            return None
        c = list(p)
        valleys = [i for i in range(1, len(c) - 1)
                   if c[i] < max(c[:i]) and c[i] < max(c[i + 1:])]
        return {**base, "valleys": valleys}
    rs = R.all_roots(p, precision=prec)
    if target == "right-half-plane":
        right = [z for z in rs.roots if z.real > 1e-9]
        stable = R.is_stable_hb(p)
        numeric_hit = bool(right)
        if not numeric_hit and stable:
            return None
        return {**base, "roots": [{"re": atlas._num(z.real), "im": atlas._num(z.imag)} for z in right],
                "max_real_part": atlas._num(max(z.real for z in rs.roots)),
                "hb_stable": stable, "numeric_right_half_plane": numeric_hit,
                "disputed": numeric_hit == stable}
    top = max(rs.roots, key=abs)
    return {**base, "max_modulus": atlas._num(abs(top)),
            "root": {"re": atlas._num(top.real), "im": atlas._num(top.imag)}}


def cmd_search(args) -> int:
    prec = _precision(args)
    if args.family:
        if not args.n_range:
            raise InputError("--family needs --m-range a:b")
        items = _family_range(args.family, _range(args.n_range))
    elif args.exhaustive is not None:
        if not 0 <= args.exhaustive <= 7:
            raise InputError("--exhaustive supports orders 0..7")
        items = ((emit_graph6(g), g) for g in atlas.exhaustive_scan(args.exhaustive))
    elif args.graph6:
        errors = []
        items = ((emit_graph6(g), g) for g in
                 atlas.ingest_graph6_stream(_read(args.graph6).splitlines(), strict=args.strict, errors=errors))
    else:
        raise InputError("choose one of --family, --exhaustive, --graph6")
    hits = []
    scanned = 0
    for gid, g in items:
        p = acyclic.analyze(g).ac
        scanned += 1
        if p.degree < 1 and args.target != "non-unimodal":
            continue
        hit = _search_hit(args.target, gid, g, p, prec)
        if hit is not None:
            hits.append(hit)
    if args.target == "max-modulus" and hits:
        best = max(Fraction(h["max_modulus"]) for h in hits)
        hits = [h for h in hits if Fraction(h["max_modulus"]) == best]
    _emit({"target": args.target, "scanned": scanned, "hit_count": len(hits),
           "first_hit": hits[0]["graph"] if hits else None, "hits": hits})
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="acypoly",
        description="Acyclic polynomials of graphs: coefficients, roots, classification and atlases.",
        epilog=FAMILY_HELP + ". Set ACYC_PRECISION to change the default working precision (bits).",
    )
    parser.add_argument("--budget", type=int, help="largest order handled by brute-force enumeration")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="full report for one graph")
    _add_input(p)
    p.add_argument("--method", choices=["closed", "cograph", "brute"])
    p.add_argument("--precision", type=int)
    p.add_argument("--no-roots", action="store_true", help="skip numeric roots")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("roots", help="roots and root-location verdicts")
    _add_input(p, poly=True)
    p.add_argument("--precision", type=int)
    p.add_argument("--tol", type=float, default=1e-12, help="backward error target")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("classify", help="degree-3 witness, bounds and coefficient identities")
    _add_input(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("atlas", help="root clouds of graph collections")
    _add_sources(p)
    p.add_argument("--csv")
    p.add_argument("--json")
    p.add_argument("--svg")
    p.add_argument("--png", help="matplotlib rendering")
    p.add_argument("--overlay", action="store_true", help="draw the limit curves")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--precision", type=int)
    p.set_defaults(func=cmd_atlas)

    p = sub.add_parser("search", help="scan for non-unimodal, right-half-plane or large-modulus cases")
    p.add_argument("target", choices=["non-unimodal", "right-half-plane", "max-modulus"])
    _add_sources(p)
    p.add_argument("--precision", type=int)
    p.set_defaults(func=cmd_search)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    saved = acyclic.budget.brute_force
    if args.budget is not None:
        acyclic.budget.brute_force = args.budget
    try:
        return args.func(args)
    except acyclic.BudgetError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, GraphError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (R.RootFindingError, classify.ReportError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    finally:
        acyclic.budget.brute_force = saved


if __name__ == "__main__":
    sys.exit(main())
