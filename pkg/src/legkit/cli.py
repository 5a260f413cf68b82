"""Command-line frontend.

One binary, subcommand style: invariants, catalog, tree2front, foliate,
classify, render, fuzz.  Exit codes: 0 success, 1 domain error, 2 usage
error.  Machine-readable output sits behind --json; human output is
free-form but deterministic.  LEGKIT_SEED controls fuzz reproducibility.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import classify as cls
from . import foliation as fol
from . import fronts, lifting, render, trees
from .errors import LegkitError


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _pair(text: str) -> tuple[int, int]:
    a, b = text.split(",")
    return int(a), int(b)


def cmd_invariants(args) -> int:
    d = fronts.parse_front(_read(args.path))
    of = fronts.OrientedFront.default(d)
    if args.orient:
        for spec in args.orient:
            comp, sign = spec.split(":")
            if sign == "-":
                of = of.reverse(int(comp))
    tr = of.trace
    comps = [args.component] if args.component is not None else list(range(tr.n_components))
    records = []
    for c in comps:
        tb, r = fronts.invariant_pair(of, c)
        records.append(
            {
                "component": c,
                "tb": tb,
                "r": r,
                "parity": fronts.check_parity(tb, r),
                "bennequin": fronts.check_bennequin(tb, r),
                "range": fronts.in_unknot_range(tb, r),
            }
        )
    lk = None
    if tr.n_components > 1:
        lk = fronts.linking_matrix(of)
    if args.json:
        print(json.dumps({"components": records, "lk": lk}, sort_keys=True))
        return 0
    for rec in records:
        print(
            f"component {rec['component']}: tb={rec['tb']} r={rec['r']} "
            f"parity={'yes' if rec['parity'] else 'no'} "
            f"bennequin={'yes' if rec['bennequin'] else 'no'} "
            f"range={'yes' if rec['range'] else 'no'}"
        )
    if lk is not None:
        for i, row in enumerate(lk):
            cells = " ".join("." if v is None else str(v) for v in row)
            print(f"lk[{i}] {cells}")
    return 0


def cmd_catalog(args) -> int:
    if args.tree:
        emb = trees.catalog_tree(args.tb, args.r)
        print(trees.serialize_tree(emb))
        return 0
    d = trees.catalog_front(args.tb, args.r)
    if args.svg:
        print(render.render_svg(d))
    else:
        print(fronts.serialize_front(d))
    return 0


def cmd_tree2front(args) -> int:
    emb = trees.parse_tree(_read(args.path))
    if args.normalize:
        front, records = trees.normalize_front_to_catalog(emb)
        if args.trace:
            for rec in records:
                print(f"# {rec.kind}: {rec.operands} (tb,r)={rec.before}", file=sys.stderr)
        print(fronts.serialize_front(front))
        return 0
    d = trees.build_front(emb)
    if args.trace:
        tb, r = trees.expected_invariants(emb.tree)
        print(f"# built {len(d.events)} events, invariants ({tb}, {r})", file=sys.stderr)
    print(fronts.serialize_front(d))
    return 0


def cmd_foliate(args) -> int:
    kinds = None
    if args.raw:
        kinds = [fol.ELLIPTIC] * (2 * abs(args.tb))
    state = fol.init_boundary(args.tb, args.r, boundary_kinds=kinds)
    state = fol.to_naf(state)
    state = fol.reduce_interior(state)
    naf_steps = len(state.trace)
    state, regions = fol.to_elliptic_form(state)
    if args.trace:
        for k, step in enumerate(state.trace):
            marker = "" if k < naf_steps else " [post-NAF regime]"
            print(f"# {step.describe()}{marker}")
    if args.skeleton:
        skel = fol.extract_skeleton(state)
        print(trees.serialize_tree(skel.embedding()))
        return 0
    print(fol.dump_state(state))
    print(f"# regions: type(a)={regions.count('type(a)')} "
          f"type(b)={regions.count('type(b)')} semi-type(a)={regions.count('semi-type(a)')}")
    return 0


def cmd_classify(args) -> int:
    sub = args.oracle
    if sub == "tight-unknot":
        verdict = cls.classify_tight_unknot(_pair(args.a), _pair(args.b))
    elif sub == "loose":
        tag = cls.ContactStructureTag.overtwisted(args.hopf, at_infinity=args.at_infinity)
        if args.a and args.b:
            verdict = cls.classify_loose(tag, _pair(args.a), _pair(args.b))
        else:
            verdict = cls.loose_check(tag, args.tb, not args.nontrivial)
    elif sub == "exceptional":
        classes = cls.exceptional_unknot_classes(args.hopf)
        if args.tb is not None and args.r is not None:
            member = (args.tb, args.r) in classes
            if args.json:
                print(json.dumps({"hopf": args.hopf, "pair": [args.tb, args.r],
                                  "member": member}, sort_keys=True))
            else:
                print("exceptional class exists" if member else "no such exceptional class")
            return 0
        pairs = classes.up_to(args.list)
        if args.json:
            print(json.dumps({"hopf": args.hopf, "classes": pairs}, sort_keys=True))
        else:
            print(" ".join(f"({tb},{r})" for tb, r in pairs) if pairs else "(none)")
        return 0
    elif sub == "hopf-lutz":
        if args.front:
            d = fronts.parse_front(_read(args.front))
            h = cls.hopf_after_lutz_front(fronts.OrientedFront.default(d))
        else:
            sl = [int(v) for v in args.sl.split(",")]
            k = len(sl)
            if args.lk is None:
                lk = [[0] * k for _ in range(k)]
            elif ";" in args.lk or "," in args.lk:
                lk = [[int(v) for v in row.split(",")] for row in args.lk.split(";")]
            else:
                c = int(args.lk)
                lk = [[c] * k for _ in range(k)]
            h = cls.hopf_after_lutz(sl, lk)
        print(h)
        return 0
    elif sub == "d3":
        print(cls.d3_from_hopf(args.hopf))
        return 0
    elif sub == "complement":
        data = cls.complement_torus_data(args.slope)
        w_theta, w_x = data.wedge_checks()
        print(f"meridian=({data.meridian[0]},{data.meridian[1]}) "
              f"slope={data.singularity_slope} wedges=({w_theta},{w_x}) "
              f"rule={data.pushoff_rotation_rule!r}")
        return 0
    else:  # pragma: no cover
        raise AssertionError(sub)
    if args.json:
        print(verdict.to_json())
    else:
        print(verdict.status)
        if verdict.representative:
            print(verdict.representative)
        if verdict.detail:
            print(f"# {verdict.detail}")
    return 0


def cmd_render(args) -> int:
    d = fronts.parse_front(_read(args.path))
    if args.lift_csv:
        params = lifting.GeomParams(samples_per_arc=args.samples)
        lc = lifting.legendrian_lift(lifting.realize_front(d, params))
        print(lifting.lift_csv(lc))
        return 0
    if args.format == "svg":
        print(render.render_svg(d))
    else:
        print(render.render_ascii(d))
    return 0


def cmd_fuzz(args) -> int:
    seed = int(os.environ.get("LEGKIT_SEED", "271828"))
    rng = random.Random(seed)
    checked = 0
    for _ in range(args.count):
        if rng.random() < 0.5:
            d = fronts.random_single_component_front(rng)
            of = fronts.OrientedFront.default(d)
            tb, r = fronts.invariant_pair(of)
            assert fronts.check_parity(tb, r), fronts.serialize_front(d)
            assert fronts.rotation_number(of.reverse(0)) == -r
        else:
            emb = trees.random_acceptable_embedding(rng)
            d = trees.build_front(emb)
            got = fronts.invariant_pair(fronts.OrientedFront.default(d))
            assert got == trees.expected_invariants(emb.tree)
        checked += 1
    print(f"fuzz: {checked} cases ok (seed {seed})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="legkit", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="tb, r, linking and range flags of a front file")
    p.add_argument("path")
    p.add_argument("--component", type=int)
    p.add_argument("--orient", action="append", metavar="COMP:+|-")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("catalog", help="canonical tree/front for a (tb, r) pair")
    p.add_argument("--tb", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--tree", action="store_true")
    g.add_argument("--front", action="store_true")
    g.add_argument("--svg", action="store_true")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("tree2front", help="build the front of a signed tree file")
    p.add_argument("path")
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_tree2front)

    p = sub.add_parser("foliate", help="run the disk-foliation pipeline")
    p.add_argument("--tb", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--trace", action="store_true")
    p.add_argument("--skeleton", action="store_true")
    p.add_argument("--raw", action="store_true",
                   help="start from an all-elliptic boundary instead of NAF")
    p.set_defaults(func=cmd_foliate)

    p = sub.add_parser("classify", help="classification oracles")
    ps = p.add_subparsers(dest="oracle", required=True)
    q = ps.add_parser("tight-unknot")
    q.add_argument("--a", required=True, metavar="TB,R")
    q.add_argument("--b", required=True, metavar="TB,R")
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_classify)
    q = ps.add_parser("loose")
    q.add_argument("--hopf", type=int, required=True)
    q.add_argument("--tb", type=int)
    q.add_argument("--a", metavar="TB,R")
    q.add_argument("--b", metavar="TB,R")
    q.add_argument("--nontrivial", action="store_true")
    q.add_argument("--at-infinity", action="store_true")
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_classify)
    q = ps.add_parser("exceptional")
    q.add_argument("--hopf", type=int, required=True)
    q.add_argument("--tb", type=int)
    q.add_argument("--r", type=int)
    q.add_argument("--list", type=int, default=5)
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_classify)
    q = ps.add_parser("hopf-lutz")
    q.add_argument("--front")
    q.add_argument("--sl", help="comma-separated self-linking numbers")
    q.add_argument("--lk", help="constant, or semicolon-separated matrix rows")
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_classify)
    q = ps.add_parser("d3")
    q.add_argument("--hopf", type=int, required=True)
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_classify)
    q = ps.add_parser("complement")
    q.add_argument("--slope", type=int, required=True)
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_classify)

    p = sub.add_parser("render", help="SVG/ASCII picture or lift CSV of a front file")
    p.add_argument("path")
    p.add_argument("--format", choices=("svg", "ascii"), default="ascii")
    p.add_argument("--lift-csv", action="store_true")
    p.add_argument("--samples", type=int, default=2000)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("fuzz", help="random self-checks (LEGKIT_SEED)")
    p.add_argument("--count", type=int, default=200)
    p.set_defaults(func=cmd_fuzz)
    return ap


_VALUE_FLAGS = {"--sl", "--lk", "--a", "--b", "--orient"}


def _join_value_flags(argv: list[str]) -> list[str]:
    # let flag values start with a dash: --sl -1,-1,-1
    out = []
    skip = False
    for i, tok in enumerate(argv):
        if skip:
            skip = False
            continue
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            skip = True
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    ap = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = ap.parse_args(_join_value_flags(list(argv)))
    try:
        return args.func(args)
    except LegkitError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
