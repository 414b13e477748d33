"""``burnside-kit``: build, transform and verify the objects of this package."""

from __future__ import annotations

import argparse
import json
import sys

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load(path: str) -> dict:
    if path is None:
        raise UsageError("--in is required")
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from None


def _sset(data: dict, path: str):
    from .marbled import marbled_from_json
    from .simplicial import sset_from_json

    schema = data.get("schema")
    if schema == "sset/v1":
        return sset_from_json(data, name=data.get("name", "X"))
    if schema == "marbled/v1":
        return marbled_from_json(data, name=data.get("name", "X"))
    raise ValueError(f"{path}: expected schema sset/v1 or marbled/v1, got {schema!r}")


def _category(args):
    from .category import category_from_json
    from .corpus import category

    if args.category:
        return category(args.category)
    data = _load(args.infile)
    return category_from_json(data, name=data.get("name", "C"))


def _diagram(args):
    from .corpus import diagram, diagram_from_data

    if args.diagram:
        return diagram(args.diagram, args.variance)
    data = _load(args.infile)
    if data.get("schema") != "diagram/v1":
        raise ValueError(f"{args.infile}: expected schema diagram/v1, got {data.get('schema')!r}")
    return diagram_from_data(data, args.variance)


# ---------------------------------------------------------------------------
# subcommands


def cmd_twist(args):
    from .delta import edgewise
    from .simplicial import sset_to_json

    X = _sset(_load(args.infile), args.infile)
    X = getattr(X, "sset", X)
    bound = args.bound if args.bound is not None else X.dimension
    T = edgewise(X).materialize(bound)
    return True, sset_to_json(T), f"Tw({X.name}) to dimension {bound}: cells {T.counts()}"


def cmd_kan(args):
    from .delta import EpsilonShriek, epsilon_lower_star
    from .simplicial import sset_to_json

    X = _sset(_load(args.infile), args.infile)
    X = getattr(X, "sset", X)
    if args.side == "left":
        E = EpsilonShriek(X).sset
    else:
        E = epsilon_lower_star(X).materialize(args.bound if args.bound is not None else 2)
    return True, sset_to_json(E), f"{args.side} Kan extension of {X.name}: cells {E.counts()}"


def cmd_aeff(args):
    from .burnside import aeff, check_adequate, full_triple, minimal_ingressive_triple
    from .simplicial import sset_to_json

    C = _category(args)
    t = full_triple(C) if args.triple == "full" else minimal_ingressive_triple(C)
    rep = check_adequate(t)
    if not rep.ok:
        return False, {"adequate": False, "report": repr(rep)}, f"triple on {C.name} is not adequate"
    A = aeff(t).materialize(args.bound if args.bound is not None else 2)
    return True, sset_to_json(A), f"A^eff({C.name}) to dimension {A.bound}: cells {A.counts()}"


def cmd_dualize(args):
    from .burnside import dual_comparisons, left_dual, right_dual
    from .category import category_to_json, grothendieck, homotopy_category
    from .simplicial import sset_to_json

    G = _diagram(args)
    _, p, _ = grothendieck(G)
    D, _ = right_dual(p) if G.variance == "contra" else left_dual(p)
    bound = args.bound if args.bound is not None else 2
    out = {"dual": sset_to_json(D.materialize(bound)), "homotopy_category": category_to_json(homotopy_category(D)),
           "comparison": dual_comparisons(G, bound)}
    side = "right" if G.variance == "contra" else "left"
    return out["comparison"]["ok"], out, f"{side} dual: comparison {out['comparison']}"


def cmd_F(args):
    from .marbled import F_marked, MarkedSSet, marbled_to_json

    X = _sset(_load(args.infile), args.infile)
    K = MarkedSSet(X.sset, X.marked, name=X.name) if hasattr(X, "marked") else MarkedSSet(X)
    FK = F_marked(K)
    data = marbled_to_json(FK)
    return True, data, f"F({K.name}): cells {FK.sset.counts()}, {len(FK.marked)} marked"


def cmd_eff_fib(args):
    from .marbled import MarbledFibration, aeff_fibrewise, verify_thm310
    from .simplicial import _sid, sset_to_json

    P = MarbledFibration(_diagram(args))
    A = aeff_fibrewise(P)
    bound = args.bound if args.bound is not None else 2
    M = A.materialize(bound)
    data = sset_to_json(M)
    data["schema"] = "marbled/v1"
    data["marked"] = sorted(_sid(e) for e in M.cells if M.cells[e] == 1 and A.is_marked(e))
    data["blazed"] = []
    ok = True
    if args.check:
        rep = verify_thm310(P, bound)
        data["thm310"] = rep
        ok = rep["ok"]
    return ok, data, f"A^eff_S(X) for {P.name} to dimension {bound}: cells {M.counts()}"


def cmd_lift(args):
    from .lifting import LiftingProblem, has_lift
    from .simplicial import map_from_json, sset_from_json

    data = _load(args.problem)
    if data.get("schema") != "lift/v1":
        raise ValueError(f"{args.problem}: expected schema lift/v1, got {data.get('schema')!r}")
    obj = {k: sset_from_json(data[k], name=k) for k in ("A", "B", "X", "Y")}
    i = map_from_json(data["i"], obj["A"], obj["B"])
    p = map_from_json(data["p"], obj["X"], obj["Y"])
    top = map_from_json(data["top"], obj["A"], obj["X"])
    bottom = map_from_json(data["bottom"], obj["B"], obj["Y"])
    prob = LiftingProblem(i, p, obj["X"], obj["Y"], top.assign, bottom.assign)
    lift = has_lift(prob)
    out = {"lift": None if lift is None else {repr(k): repr(v) for k, v in lift.items()}}
    return lift is not None, out, "lift found" if lift is not None else "no lift exists"


def cmd_check_fib(args):
    from .burnside import POINT
    from .category import Nerve
    from .delta import TwistedProjection
    from .lifting import check_fibration

    C = _category(args)
    bound = args.bound if args.bound is not None else 3
    if args.map == "twisted":
        P = TwistedProjection(Nerve(C))
        rep = check_fibration(P, P.source, P.target, args.kind, bound, coskeletal=2)
    else:
        N = Nerve(C)
        rep = check_fibration(N.dim, N, POINT, args.kind, bound, coskeletal=2)
    return rep.ok, rep.as_dict(), f"{args.kind} check of {args.map} map for {C.name} at bound {bound}: {rep.verdict}"


def parse_target(target: str):
    """``spine:4``, ``horn:3,S=0`` (or ``S=0+2``), ``left-horn:3``, ``marked-horn:3``,
    ``J:4``, ``pr11:i1`` and ``marbled-spine:2``."""
    from . import certificates as cert

    kind, _, rest = target.partition(":")
    parts = [p for p in rest.split(",") if p]
    if not parts:
        raise UsageError(f"target {target!r} needs a parameter")
    try:
        if kind == "spine":
            n = int(parts[0])
            from .simplicial import spine

            return cert.find_cell_decomposition(cert.Mono.of(spine(n)), cert.INNER_ANODYNE), cert.INNER_ANODYNE
        if kind == "horn":
            n = int(parts[0])
            opts = dict(p.split("=", 1) for p in parts[1:])
            S = {int(v) for v in opts.get("S", "0").split("+")}
            marked = opts.get("marked", "no") in ("yes", "1", "true")
            spec = cert.MARKED_LEFT_FROM_SPINES if marked else cert.LEFT_FROM_SPINES
            return cert.cert_horn(n, S, marked), spec
        if kind in ("left-horn", "marked-horn"):
            marked = kind == "marked-horn"
            spec = cert.MARKED_LEFT_FROM_SPINES if marked else cert.LEFT_FROM_SPINES
            return cert.cert_left_horn(int(parts[0]), marked), spec
        if kind == "J":
            return cert.cert_J_to_simplex(int(parts[0])), cert.LEFT_FROM_SPINES
        if kind == "pr11":
            case = parts[0] if parts[0] in ("i1", "i2") else int(parts[0].lstrip("s"))
            return cert.cert_pr11(case), cert.JOYAL_TRIVIAL
        if kind == "marbled-spine":
            return cert.cert_marbled_spine(int(parts[0])), cert.MARBLED_TRIVIAL
    except ValueError as exc:
        raise UsageError(f"bad target {target!r}: {exc}") from None
    raise UsageError(f"unknown target kind {kind!r}")


def cmd_certify(args):
    from . import certificates as cert

    if args.infile:
        data = _load(args.infile)
        c = cert.certificate_from_json(data)
        cls = data.get("class", {}).get("name") or args.spec
        if cls not in cert.SPECS:
            raise UsageError(f"unknown class {cls!r}; choose from {', '.join(cert.SPECS)}")
        spec = cert.SPECS[cls]
        v = cert.verify_certificate(c, spec)
        return v.ok, v.as_dict(), f"certificate {'verified' if v.ok else 'rejected'} against {spec.name}"
    if not args.target:
        raise UsageError("certify needs --target or --in")
    c, spec = parse_target(args.target)
    v = cert.verify_certificate(c, spec)
    data = cert.certificate_to_json(c, spec)
    data["verdict"] = v.as_dict()
    return v.ok, data, f"{args.target}: {v.nodes} nodes, {'verified' if v.ok else 'rejected'} against {spec.name}"


def cmd_verify(args):
    from .suite import run_suite

    report = run_suite(args.selection, args.bound, length=args.len)
    lines = [f"{'PASS' if c['ok'] else 'FAIL'}  {c['name']}" for c in report["checks"]]
    lines.append(f"{report['passed']} passed, {report['failed']} failed")
    return report["ok"], report, "\n".join(lines)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="burnside-kit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help, inp=True):
        p = sub.add_parser(name, help=help)
        if inp:
            p.add_argument("--in", dest="infile", help="input JSON file")
        p.add_argument("--out", help="write the JSON result here")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--bound", type=int, help="dimension bound")
        p.set_defaults(func=func)
        return p

    add("twist", cmd_twist, "edgewise subdivision of an sset/v1 file")
    p = add("kan", cmd_kan, "left or right Kan extension along epsilon")
    p.add_argument("--side", choices=("left", "right"), default="left")
    p = add("aeff", cmd_aeff, "effective Burnside quasi-category of a cat/v1 file")
    p.add_argument("--category", help="corpus category name instead of --in")
    p.add_argument("--triple", choices=("full", "minimal"), default="full")
    for name, func, help in (("dualize", cmd_dualize, "dual fibration of a diagram"),
                             ("eff-fib", cmd_eff_fib, "fibrewise effective Burnside construction")):
        p = add(name, func, help)
        p.add_argument("--diagram", help="corpus diagram name instead of --in")
        p.add_argument("--variance", choices=("co", "contra"), default="co" if name == "eff-fib" else "contra")
        if name == "eff-fib":
            p.add_argument("--check", action="store_true", help="also verify the cocartesian statement")
    add("F", cmd_F, "the functor F on a (marked) simplicial set")
    p = add("lift", cmd_lift, "solve a lift/v1 lifting problem", inp=False)
    p.add_argument("--problem", required=True)
    p = add("check-fib", cmd_check_fib, "fibration check for a nerve")
    p.add_argument("--kind", choices=("inner", "left", "right", "trivial"), default="inner")
    p.add_argument("--category", help="corpus category name instead of --in")
    p.add_argument("--map", choices=("point", "twisted"), default="point")
    p = add("certify", cmd_certify, "build or check a cert/v1 certificate")
    p.add_argument("--target", help="e.g. spine:4, horn:3,S=0, pr11:i2, marbled-spine:2")
    p.add_argument("--spec", default="spines+i1+i2", help="class used when the file names none")
    p = add("verify", cmd_verify, "run a verification suite", inp=False)
    p.add_argument("selection", help="suite name or 'all'")
    p.add_argument("--len", type=int, default=3, help="word length for freeness")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    if args.bound is not None and args.bound < 0:
        print("burnside-kit: --bound must be nonnegative", file=sys.stderr)
        return EXIT_USAGE
    try:
        ok, data, summary = args.func(args)
    except UsageError as exc:
        print(f"burnside-kit: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, KeyError) as exc:
        print(f"burnside-kit: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = json.dumps(data, indent=1, default=repr)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    print(text if args.format == "json" else summary)
    return EXIT_PASS if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
