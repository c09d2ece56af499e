"""Command-line driver.

Exit status: 0 success, 1 a check failed, 2 bad input, 3 window exhaustion.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import cells
from . import delta as dl
from . import fibrancy as fb
from . import homology as hm
from . import ncat
from . import presheaf as ps
from . import qpaths as qp
from . import suites
from . import theta as th
from .errors import NotPresented, StructureError, ThetaParseError, WindowExhaustion

OK, FAILED, BAD_INPUT, EXHAUSTED = 0, 1, 2, 3


def _emit(obj, out):
    if isinstance(obj, str):
        out.write(obj if obj.endswith("\n") else obj + "\n")
    else:
        out.write(json.dumps(obj, indent=1, sort_keys=True) + "\n")


def _read_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


# ---------------------------------------------------------------------------
# commands


def cmd_hom(args, out):
    a = th.parse_theta(args.src, args.level)
    b = th.parse_theta(args.dst, args.level)
    if args.list:
        _emit([f.to_json() for f in th.enumerate_hom(a, b)], out)
    else:
        _emit(str(th.hom_count(a, b)), out)
    return OK


def cmd_objects(args, out):
    for o in th.enumerate_objects(args.level, args.max_size):
        out.write(f"{o}\n")
    return OK


def cmd_check(args, out):
    X = ps.from_json(_read_json(args.input))
    seg = fb.check_segal_discrete(X)
    if args.condition == "segal":
        report = seg.to_json()
    elif not seg.passed:
        report = {"condition": args.condition, "passed": False,
                  "reason": "Segal condition fails", "segal": seg.to_json()}
    elif args.condition == "complete":
        report = fb.check_complete_discrete(X).to_json()
    elif args.condition == "groupoid":
        report = fb.check_groupoid_discrete(X).to_json()
    else:
        if args.k is None:
            raise StructureError("truncation needs --k")
        report = fb.check_truncation_discrete(X, args.k).to_json()
    _emit(report, out)
    return OK if report["passed"] else FAILED


def cmd_dnerve(args, out):
    C = ncat.from_json(_read_json(args.input))
    if not C.check_axioms():
        _emit({"error": "the n-category fails its axioms"}, out)
        return FAILED
    X = ncat.dnerve(C, ps.window(C.n, args.window))
    out.write(ps.dumps(X))
    return OK


def cmd_qposet(args, out):
    Q = qp.enumerate_Q(args.m, args.n)
    report = {"m": args.m, "n": args.n, "size": len(Q), "delannoy": qp.delannoy(args.m, args.n),
              "paths": [str(d) for d in Q.elements],
              "hasse": sorted([str(a), str(b)] for a, b in Q.hasse())}
    ok = report["size"] == report["delannoy"]
    if args.homology:
        H = hm.reduced_homology(hm.nerve_complex(Q.as_poset()))
        report["reduced_homology"] = {str(d): {"betti": h.betti, "torsion": list(h.torsion)}
                                      for d, h in enumerate(H)}
        ok = ok and all(h.is_zero() for h in H)
    if args.retractions:
        if args.n < 1:
            raise StructureError("retractions need --n >= 1")
        steps = qp.retraction_chain(args.m, args.n)
        report["retractions"] = [{"name": s.name, "from": len(s.poset), "to": len(s.subposet),
                                  "direction": s.direction, "certified": s.certified} for s in steps]
        report["last_step_iso"] = qp.last_step_iso(args.m, args.n)
        ok = ok and all(s.certified for s in steps) and report["last_step_iso"]
    _emit(report, out)
    return OK if ok else FAILED


def cmd_verify(args, out):
    cfg = suites.load_config(open(args.manifest, encoding="utf-8").read()) if args.manifest else None
    results = suites.run_suite(args.suite, cfg)
    if args.json:
        _emit([r.to_json() for r in results], out)
    else:
        for r in results:
            out.write(r.line() + "\n")
            for w in r.witnesses[:3]:
                out.write("  witness: " + json.dumps(w, sort_keys=True, default=str) + "\n")
    return OK if all(r.ok for r in results) else FAILED


def _named_presheaf(token: str, level: int, bound: int) -> ps.FinPresheaf:
    """O:k, dO:k, spine:m, full:m, or a Theta object for its representable."""
    win = ps.window(level, bound)
    if token.startswith("O:"):
        return cells.O(int(token[2:]), win)
    if token.startswith("dO:"):
        k = int(token[3:])
        return cells.boundary_subobject(k, win)
    if token.startswith("spine:") or token.startswith("full:"):
        kind, m = token.split(":")
        K = dl.spine(int(m)) if kind == "spine" else dl.full_simplex(int(m))
        X = cells.delta_presheaf_from_subset(K, bound)
        X.name = token
        return X
    return ps.yoneda(th.parse_theta(token, level), win)


def _named_ncat(token: str) -> ncat.StrictNCat:
    from . import corpus

    if token.startswith("chaotic:"):
        return ncat.chaotic_groupoid(range(int(token.split(":")[1])))
    if token.startswith("chain:"):
        return corpus.chain(int(token.split(":")[1]))
    if token.startswith("tau:"):
        return ncat.tau(th.parse_theta(token[4:]))
    raise StructureError(f"unknown n-category token {token!r}")


def cmd_export(args, out):
    if args.format != "json":
        raise StructureError("only json export is supported")
    if args.presheaf:
        out.write(ps.dumps(_named_presheaf(args.presheaf, args.level, args.window)))
    elif args.ncat:
        out.write(ncat.dumps(_named_ncat(args.ncat)))
    else:
        _emit(suites.manifest(), out)
    return OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="thetaspace", description="Finite computations in Theta_n.")
    sub = p.add_subparsers(dest="command", required=True)

    h = sub.add_parser("hom", help="hom-sets of Theta_n")
    h.add_argument("--level", type=int, required=True)
    h.add_argument("--src", required=True)
    h.add_argument("--dst", required=True)
    g = h.add_mutually_exclusive_group()
    g.add_argument("--count", action="store_true")
    g.add_argument("--list", action="store_true")
    h.set_defaults(func=cmd_hom)

    o = sub.add_parser("objects", help="objects of Theta_n up to a size")
    o.add_argument("--level", type=int, required=True)
    o.add_argument("--max-size", type=int, required=True)
    o.set_defaults(func=cmd_objects)

    c = sub.add_parser("check", help="discrete fibrancy conditions of a presheaf file")
    c.add_argument("condition", choices=["segal", "complete", "groupoid", "truncation"])
    c.add_argument("--input", required=True)
    c.add_argument("--k", type=int)
    c.set_defaults(func=cmd_check)

    d = sub.add_parser("dnerve", help="discrete nerve of an n-category file")
    d.add_argument("--input", required=True)
    d.add_argument("--window", type=int, required=True)
    d.set_defaults(func=cmd_dnerve)

    q = sub.add_parser("qposet", help="lattice-path posets Q_{m,n}")
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--homology", action="store_true")
    q.add_argument("--retractions", action="store_true")
    q.set_defaults(func=cmd_qposet)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=sorted(suites.SUITES))
    v.add_argument("--manifest")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("export", help="export data as json")
    e.add_argument("--format", default="json")
    e.add_argument("--presheaf", help="O:k, dO:k, spine:m, full:m or a Theta object")
    e.add_argument("--ncat", help="chaotic:k, chain:k or tau:<object>")
    e.add_argument("--level", type=int, default=1)
    e.add_argument("--window", type=int, default=3)
    e.set_defaults(func=cmd_export)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    try:
        return args.func(args, out)
    except WindowExhaustion as exc:
        sys.stderr.write(f"window exhausted: {exc}\n")
        return EXHAUSTED
    except ThetaParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return BAD_INPUT
    except (StructureError, NotPresented, OSError, ValueError, KeyError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
