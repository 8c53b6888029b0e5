"""Command line interface: analyze, classify, generate, verify.

Exit codes: 0 success, 2 parse or domain error, 3 verification failure,
4 input contradicts the classification.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from collections import Counter

from . import catalog, classify, geom, invariants, verify
from .catalog import CatalogEntry, ParamDomainError

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_CONTRADICTION = 0, 2, 3, 4


class InputError(ValueError):
    pass


def _reject_float(s):
    raise InputError(f"non-integer number {s!r} in input")


def parse_document(text: str) -> dict:
    """Parse {"name": str?, "vertices": [[x, y, z], ...]} with integers only."""
    try:
        doc = json.loads(text, parse_float=_reject_float, parse_constant=_reject_float)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise InputError('expected an object with a "vertices" list')
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise InputError('"name" must be a string')
    verts = doc["vertices"]
    if not isinstance(verts, list):
        raise InputError('"vertices" must be a list')
    for v in verts:
        if not (isinstance(v, list) and len(v) == 3
                and all(isinstance(c, int) and not isinstance(c, bool) for c in v)):
            raise InputError(f"vertex {v!r} is not a triple of integers")
    if len({tuple(v) for v in verts}) < 4:
        raise InputError("need at least 4 distinct vertices")
    return {"name": name, "vertices": [tuple(v) for v in verts]}


def load_polytope(path: str):
    with open(path, encoding="utf-8") as fh:
        doc = parse_document(fh.read())
    return doc, geom.hull(doc["vertices"])


def hstar_text(h) -> str:
    return "(" + ", ".join(map(str, h)) + ")"


def map_doc(phi) -> dict:
    return {"A": [list(r) for r in phi.A], "t": list(phi.t)}


def verdict_doc(v) -> dict:
    out = {"kind": v.kind}
    if isinstance(v, classify.Spanning):
        out["has_unimodular_tetrahedron"] = v.has_unimodular_tetra
        out["witness"] = [list(p) for p in v.witness.vertices] if v.witness else None
        out["match"] = v.e51_match
    elif isinstance(v, classify.WidthOne):
        out.update(label=str(v.entry), p=v.p, q=v.q, a=v.a, b=v.b)
    elif isinstance(v, classify.Family):
        out.update(label=str(v.entry), tag=v.tag, params=list(v.params), isomorphism=map_doc(v.isomorphism))
    elif isinstance(v, classify.Exceptional):
        out.update(label=v.name, isomorphism=map_doc(v.isomorphism))
    else:
        out["reason"] = v.reason
    return out


def profile_doc(prof) -> dict:
    return {"n": prof.n, "n0": prof.n0, "V": prof.V, "q": prof.q, "w": prof.w, "hstar": list(prof.hstar)}


def analyze_report(doc, P) -> dict:
    prof = invariants.profile(P)
    w, f = invariants.width(P)
    tets = invariants.empty_tetrahedra(P)
    vols = Counter(t.volume for t in tets)
    return {
        "input": {"name": doc["name"], "vertices": [list(v) for v in doc["vertices"]]},
        "vertices": [list(v) for v in P.vertices],
        **profile_doc(prof),
        "width_functional": list(f),
        "empty_tetrahedra": {str(k): vols[k] for k in sorted(vols)},
        "partition": invariants.verify_partition(P),
    }


def classify_report(doc, P) -> dict:
    res = classify.classify(P)
    return {
        "input": {"name": doc["name"], "vertices": [list(v) for v in doc["vertices"]]},
        **profile_doc(res.profile),
        "verdict": verdict_doc(res.verdict),
    }


def _print_report(rep: dict, as_json: bool, out):
    if as_json:
        json.dump(rep, out, sort_keys=True)
        out.write("\n")
        return
    for key, value in rep.items():
        if key == "hstar":
            value = hstar_text(value)
        elif isinstance(value, dict):
            value = json.dumps(value, sort_keys=True)
        out.write(f"{key}: {value}\n")


def cmd_analyze(args, out) -> int:
    doc, P = load_polytope(args.file)
    t0 = time.perf_counter()
    rep = analyze_report(doc, P)
    if args.timing:
        rep["seconds"] = round(time.perf_counter() - t0, 4)
    _print_report(rep, args.json, out)
    return EXIT_OK


def cmd_classify(args, out) -> int:
    doc, P = load_polytope(args.file)
    t0 = time.perf_counter()
    rep = classify_report(doc, P)
    if args.timing:
        rep["seconds"] = round(time.perf_counter() - t0, 4)
    _print_report(rep, args.json, out)
    if rep["verdict"]["kind"] == classify.ContradictsClassification.kind:
        return EXIT_CONTRADICTION
    return EXIT_OK


def cmd_generate(args, out) -> int:
    e = CatalogEntry(args.tag, tuple(args.params))
    P = catalog.make(e)
    json.dump({"name": str(e), "vertices": [list(v) for v in P.vertices]}, out)
    out.write("\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    suite = verify.SUITES[args.suite]
    t0 = time.perf_counter()
    checks = suite(args.nmax) if args.nmax is not None else suite()
    failed = [c for c in checks if not c.ok]
    if args.json:
        rows = [{"name": c.name, "expected": _jsonable(c.expected), "actual": _jsonable(c.actual),
                 "ok": c.ok} for c in checks]
        rep = {"suite": args.suite, "checks": rows, "failed": len(failed)}
        if args.timing:
            rep["seconds"] = round(time.perf_counter() - t0, 3)
        json.dump(rep, out, sort_keys=True)
        out.write("\n")
    else:
        for c in checks:
            status = "PASS" if c.ok else "FAIL"
            out.write(f"{status} {c.name}: expected {c.expected!r}, got {c.actual!r}\n")
        out.write(f"{args.suite}: {len(checks) - len(failed)}/{len(checks)} checks passed\n")
        if args.timing:
            out.write(f"seconds: {time.perf_counter() - t0:.3f}\n")
    return EXIT_VERIFY if failed else EXIT_OK


def _jsonable(x):
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    if isinstance(x, tuple):
        return list(x)
    return x


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="latpoly3", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    for name, helptext in (("analyze", "invariants of a polytope"),
                           ("classify", "place a polytope in the classification")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("file")
        p.add_argument("--json", action="store_true")
        p.add_argument("--timing", action="store_true")

    p = sub.add_parser("generate", help="vertices of a catalog polytope")
    p.add_argument("tag", choices=catalog.TAGS)
    p.add_argument("params", nargs="*", type=int)

    p = sub.add_parser("verify", help="reproduce published tables and statements")
    p.add_argument("suite", choices=sorted(verify.SUITES))
    p.add_argument("nmax", nargs="?", type=int)
    p.add_argument("--nmax", dest="nmax", type=int)
    p.add_argument("--json", action="store_true")
    p.add_argument("--timing", action="store_true")
    return ap


COMMANDS = {"analyze": cmd_analyze, "classify": cmd_classify,
            "generate": cmd_generate, "verify": cmd_verify}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except (InputError, ParamDomainError, geom.DimensionDeficient, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
