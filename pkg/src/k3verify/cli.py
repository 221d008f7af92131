"""Command-line interface: ``k3verify <command> ...``.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage or
input errors.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import surfledger as SL
from .catalog import Catalog, CatalogError, default_catalog, load_catalog, parse_curves
from .curvegeom import CurveError, general_position, is_singular_at, node_or_cusp, singular_points_of_plane_curve
from .cyclo import CycloError, parse_cyclo
from .invariants import InvariantError, as_grading, invariant_basis, molien_dimension
from .matgroup import (GroupError, PointP, ProjectiveMap, evaluate_word, fixed_points, orbit_point,
                       stabilizer_order)
from .polyring import PolyError
from .report import emit_json, emit_text, show
from .scenarios import ScenarioError, list_scenarios, run_scenario, SCENARIOS

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

INPUT_ERRORS = (CatalogError, CurveError, CycloError, GroupError, InvariantError, PolyError,
                SL.LedgerError, ScenarioError, OSError, ValueError)


class UsageError(Exception):
    pass


# -- parsing helpers -------------------------------------------------------------------------------

def parse_point(text: str, cond: int = 1, split=None) -> PointP:
    """'[1:1:1]', '1,1,1' or '([1:0],[0:1])'."""
    t = text.strip()
    blocks = re.findall(r"\[([^\]]*)\]", t)
    if not blocks:
        blocks = [t]
    coords = []
    for b in blocks:
        coords.extend(x for x in re.split(r"[:,]", b) if x.strip())
    if len(blocks) == 2 and split is None:
        split = len(re.split(r"[:,]", blocks[0]))
    return PointP([parse_cyclo(x.strip(), cond) for x in coords], split)


def _grading(args, G):
    if args.bidegree:
        a, b = (int(v) for v in args.bidegree.split(","))
        return as_grading(G.dim, bidegree=(a, b), split=G.split or 2)
    if args.degree is None:
        raise UsageError("either --degree or --bidegree is required")
    return as_grading(G.dim, degree=args.degree)


def _character(args, G, cond: int):
    if not args.character:
        return None
    vals = [parse_cyclo(v.strip(), cond) for v in args.character.split(",")]
    return vals


def _catalog(args) -> Catalog:
    return load_catalog(args.catalog) if args.catalog else default_catalog()


def _curve_from(arg: str, name, cat: Catalog):
    p = Path(arg)
    if p.exists():
        curves = parse_curves(p.read_text(encoding="utf-8"))
        if not curves:
            raise UsageError(f"{arg}: no curve entries")
        if name:
            if name not in curves:
                raise UsageError(f"{arg}: no curve named {name!r}")
            return curves[name].poly()
        if len(curves) > 1:
            raise UsageError(f"{arg} holds {len(curves)} curves; pick one with --name")
        return next(iter(curves.values())).poly()
    if arg in cat.curves:
        return cat.curve(arg)
    raise UsageError(f"{arg}: neither a curve file nor a bundled curve name")


# -- commands --------------------------------------------------------------------------------------

def _run_one(payload):
    name, catalog_path = payload
    cat = load_catalog(catalog_path) if catalog_path else None
    return run_scenario(name, cat)


def cmd_verify(args) -> int:
    if args.all == bool(args.scenario):
        raise UsageError("give exactly one scenario name or --all")
    names = list_scenarios() if args.all else [args.scenario]
    for n in names:
        if n not in SCENARIOS:
            raise ScenarioError(f"unknown scenario {n!r}")
    jobs = [(n, args.catalog) for n in names]
    if args.parallel and len(jobs) > 1:
        with ProcessPoolExecutor() as ex:
            reports = list(ex.map(_run_one, jobs))
    else:
        reports = [_run_one(j) for j in jobs]
    if args.json != "-":
        # with JSON on stdout the text report would corrupt the payload
        for rep in reports:
            sys.stdout.write(emit_text(rep))
    if args.json:
        text = emit_json(reports[0] if not args.all else reports)
        if args.json == "-":
            sys.stdout.write(text)
        else:
            Path(args.json).write_text(text, encoding="utf-8")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_list(args) -> int:
    for n in list_scenarios():
        print(f"{n}\t{SCENARIOS[n].summary}" if args.verbose else n)
    return EXIT_OK


def cmd_molien(args) -> int:
    cat = _catalog(args)
    G = cat.group(args.group)
    gr = _grading(args, G)
    dim = molien_dimension(G, gr, _character(args, G, G.conductor))
    _echo(args, {"group": args.group, "grading": _grading_str(gr)}, dim)
    return EXIT_OK


def cmd_basis(args) -> int:
    cat = _catalog(args)
    G = cat.group(args.group)
    gr = _grading(args, G)
    sp = invariant_basis(G, gr, _character(args, G, G.conductor), method=args.method)
    _echo(args, {"group": args.group, "grading": _grading_str(gr)},
          {"dimension": sp.dimension, "basis": [b.render() for b in sp.basis]})
    return EXIT_OK


def _group_element(cat: Catalog, group: str, word: str) -> ProjectiveMap:
    G = cat.group(group)
    named = {g.name: g.lift for g in G.generators}
    named.update(cat.groups[group].aux_matrices())
    m = evaluate_word(word, named, G.dim, G.conductor)
    return ProjectiveMap(m, G.split, word)


def _describe_component(comp) -> str:
    if comp[0] == "subspace":
        return "subspace spanned by " + ", ".join(show(p) for p in comp[1])
    return comp[0]


def cmd_fixed(args) -> int:
    cat = _catalog(args)
    g = _group_element(cat, args.group, args.element)
    fl = fixed_points(g)
    comps = [_describe_component(c) for c in fl.components]
    _echo(args, {"group": args.group, "element": args.element},
          {"points": [show(p) for p in fl.points], "components": comps})
    return EXIT_OK


def cmd_orbit(args) -> int:
    cat = _catalog(args)
    G = cat.group(args.group)
    p = parse_point(args.point, G.conductor, G.split)
    orb = orbit_point(G, p)
    _echo(args, {"group": args.group, "point": show(p)},
          {"size": len(orb), "stabilizer": stabilizer_order(G, p), "orbit": [show(q) for q in orb]})
    return EXIT_OK


def cmd_singular(args) -> int:
    cat = _catalog(args)
    f = _curve_from(args.curve, args.name, cat)
    if args.at:
        split = 2 if f.grading.kind == "bi" else None
        p = parse_point(args.at, max(f.conductor(), 1), split)
        sing = is_singular_at(f, p)
        out = {"singular": sing}
        if sing and split is None:
            out["type"] = node_or_cusp(f, p).classification
        _echo(args, {"curve": args.curve, "point": show(p)}, out)
        return EXIT_OK
    loc = singular_points_of_plane_curve(f, conductor=args.conductor, seed=args.seed)
    _echo(args, {"curve": args.curve},
          {"smooth": loc.is_smooth, "count": loc.total, "points": [r.describe() for r in loc.reports]})
    return EXIT_OK


def cmd_general_position(args) -> int:
    lines = [ln.split("#", 1)[0].strip() for ln in Path(args.points).read_text(encoding="utf-8").splitlines()]
    pts = [parse_point(ln, args.conductor) for ln in lines if ln]
    cert = general_position(pts)
    out = {"general_position": cert.ok}
    if not cert.ok:
        out.update({"violation": list(cert.violation), "reason": cert.reason})
    _echo(args, {"points": [show(p) for p in pts]}, out)
    return EXIT_OK


def _parse_ints(text: str) -> list:
    """'2,2,2' or '2x7' (seven copies of 2)."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        m = re.fullmatch(r"(-?\d+)x(\d+)", part)
        out.extend([int(m.group(1))] * int(m.group(2)) if m else [int(part)])
    return out


def cmd_ledger(args) -> int:
    op = args.ledger_op
    inputs = {k: v for k, v in vars(args).items()
              if k not in ("func", "command", "ledger_op", "catalog", "json_out") and v is not None}
    if op == "cover":
        res = {"e_cover": SL.euler_double_cover(args.eY, args.branch or [])}
        res["is_k3"] = res["e_cover"] == SL.K3_EULER
    elif op == "mori":
        m = SL.mori_fibers(args.g, args.n, args.emin)
        res = {"m": m, "budget": SL.mori_budget(args.n, args.emin)}
        if args.m is not None:
            res["holds"] = SL.mori_constraint(args.g, args.n, args.m, args.emin)
    elif op == "blowdown":
        res = {"selfint": SL.blowdown_selfint(args.B2, _parse_ints(args.mults or ""))}
    elif op == "branch-selfint":
        res = {"selfint": SL.branch_selfint_double(args.C2)}
    elif op == "adjunction":
        res = {"genus": SL.adjunction_genus(args.KC, args.C2)}
    elif op == "nikulin":
        res = {"fixed_points": SL.nikulin_fixed_points(args.order)}
    elif op == "delpezzo":
        res = {"lines": SL.delpezzo_line_count(args.degree)}
    elif op == "h0":
        res = {"h0": SL.h0_anticanonical(args.d, args.r)}
    elif op == "riemann-hurwitz":
        if (args.contrib is None) == (args.e_cover is None):
            raise UsageError("give exactly one of --contrib and --e-cover")
        if args.contrib is not None:
            res = {"e_cover": SL.riemann_hurwitz(args.deg, args.e_base, args.contrib)}
        else:
            res = {"contrib": SL.branch_contribution(args.deg, args.e_base, args.e_cover)}
    else:
        raise UsageError(f"unknown ledger operation {op!r}")
    print(json.dumps({"op": op, "inputs": inputs, "result": res}, sort_keys=True))
    return EXIT_OK


def _grading_str(gr) -> str:
    return f"bidegree {gr.deg[0]},{gr.deg[1]}" if gr.kind == "bi" else f"degree {gr.deg}"


def _echo(args, inputs: dict, result) -> None:
    if getattr(args, "json_out", False):
        print(json.dumps({"inputs": inputs, "result": result}, sort_keys=True))
    elif isinstance(result, dict):
        for k, v in result.items():
            if isinstance(v, list):
                print(f"{k}:")
                for x in v:
                    print(f"  {x}")
            else:
                print(f"{k}: {show(v)}")
    else:
        print(show(result))


# -- parser ----------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="k3verify", description="Exact verification of K3 symmetry computations.")
    p.add_argument("--catalog", help="catalog directory or group file (default: bundled data)")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a scenario or all scenarios")
    v.add_argument("scenario", nargs="?")
    v.add_argument("--all", action="store_true")
    v.add_argument("--parallel", action="store_true")
    v.add_argument("--json", metavar="PATH", help="write the JSON report ('-' for stdout)")
    v.set_defaults(func=cmd_verify)

    ls = sub.add_parser("list-scenarios", help="list scenario names")
    ls.add_argument("-v", "--verbose", action="store_true")
    ls.set_defaults(func=cmd_list)

    def group_grading(sp):
        sp.add_argument("--group", required=True)
        sp.add_argument("--degree", type=int)
        sp.add_argument("--bidegree", help="A,B")
        sp.add_argument("--character", help="comma-separated generator values")
        sp.add_argument("--json", dest="json_out", action="store_true")

    m = sub.add_parser("molien", help="dimension of (semi-)invariants")
    group_grading(m)
    m.set_defaults(func=cmd_molien)

    b = sub.add_parser("invariant-basis", help="basis of (semi-)invariants")
    group_grading(b)
    b.add_argument("--method", choices=("auto", "reynolds", "generators"), default="auto")
    b.set_defaults(func=cmd_basis)

    f = sub.add_parser("fixed-points", help="fixed points of a group element")
    f.add_argument("--group", required=True)
    f.add_argument("--element", required=True, help="word such as a*b^-1")
    f.add_argument("--json", dest="json_out", action="store_true")
    f.set_defaults(func=cmd_fixed)

    o = sub.add_parser("orbit", help="orbit and stabilizer of a point")
    o.add_argument("--group", required=True)
    o.add_argument("--point", required=True, help="[x0:x1:x2] or ([z0:z1],[w0:w1])")
    o.add_argument("--json", dest="json_out", action="store_true")
    o.set_defaults(func=cmd_orbit)

    s = sub.add_parser("singular", help="singular points of a plane curve")
    s.add_argument("--curve", required=True, help="curve library file or bundled curve name")
    s.add_argument("--name", help="curve name inside the file")
    s.add_argument("--at", help="test a single point instead")
    s.add_argument("--conductor", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--json", dest="json_out", action="store_true")
    s.set_defaults(func=cmd_singular)

    g = sub.add_parser("general-position", help="no three on a line, no six on a conic")
    g.add_argument("points", help="file with one point per line")
    g.add_argument("--conductor", type=int, default=1)
    g.add_argument("--json", dest="json_out", action="store_true")
    g.set_defaults(func=cmd_general_position)

    led = sub.add_parser("ledger", help="surface bookkeeping identities (JSON output)")
    lsub = led.add_subparsers(dest="ledger_op", required=True)
    c = lsub.add_parser("cover")
    c.add_argument("--eY", type=int, required=True)
    c.add_argument("--branch", type=int, action="append", help="Euler number of a branch curve (repeatable)")
    c = lsub.add_parser("mori")
    c.add_argument("--g", type=int, help="genus of the non-rational branch curve, if any")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--emin", type=int, required=True)
    c.add_argument("--m", type=int)
    c = lsub.add_parser("blowdown")
    c.add_argument("--B2", type=int, required=True)
    c.add_argument("--mults", help="e.g. 2x7 or 1,2,2")
    c = lsub.add_parser("branch-selfint")
    c.add_argument("--C2", type=int, required=True)
    c = lsub.add_parser("adjunction")
    c.add_argument("--KC", type=int, required=True)
    c.add_argument("--C2", type=int, required=True)
    c = lsub.add_parser("nikulin")
    c.add_argument("--order", type=int, required=True)
    c = lsub.add_parser("delpezzo")
    c.add_argument("--degree", type=int, required=True)
    c = lsub.add_parser("h0")
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--r", type=int, required=True)
    c = lsub.add_parser("riemann-hurwitz")
    c.add_argument("--deg", type=int, required=True)
    c.add_argument("--e-base", type=int, required=True)
    c.add_argument("--contrib", type=int)
    c.add_argument("--e-cover", type=int)
    led.set_defaults(func=cmd_ledger)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except UsageError as e:
        print(f"k3verify: {e}", file=sys.stderr)
        return EXIT_USAGE
    except INPUT_ERRORS as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"k3verify: {type(e).__name__}: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
