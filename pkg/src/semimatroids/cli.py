"""Command-line interface: ``semimatroids <command> ...``.

Exit codes: 0 success / all checks pass, 1 violation or failure, 2 usage error.
"""

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import poly as P
from .core import AxiomError, SemimatroidError
from .identities import IDENTITIES, check_all, run_identity
from .ingest import RandomSpec, from_arrangement, load, random_arrangement, to_explicit
from .invariants import (INVARIANTS, DecompositionError, Route, interval_decomposition,
                         polynomial, routes_for)


def _load(path, opts):
    """The instance under ``--order`` and the document's own label order.

    Polynomials are always printed against the document order so that
    ``--order`` cannot change any printed invariant.
    """
    sm = load(path)
    doc_order = sm.elements
    if opts.order:
        sm = sm.reorder([s.strip() for s in opts.order.split(",")])
    return sm, doc_order


def _emit(opts, text, machine):
    if opts.format == "machine":
        return json.dumps(machine, sort_keys=True)
    return text


def cmd_check(path, opts):
    try:
        sm = load(path)
    except AxiomError as exc:
        lines = [f"{path}: INVALID ({len(exc.violations)} violations)"]
        lines += ["  " + v.describe(exc.elements) for v in exc.violations]
        machine = {"file": path, "valid": False,
                   "violations": [{"axiom": v.axiom.value,
                                   "witness": [[exc.elements[i] for i in range(len(exc.elements))
                                                if m >> i & 1] for m in v.witness]}
                                  for v in exc.violations]}
        return _emit(opts, "\n".join(lines), machine), 1
    if opts.order:
        sm = sm.reorder([s.strip() for s in opts.order.split(",")])
    text = f"{path}: valid semimatroid, n={sm.n}, |C|={len(sm.ranks)}, r={sm.rank}"
    return _emit(opts, text, {"file": path, "valid": True, "n": sm.n,
                              "central_sets": len(sm.ranks), "rank": sm.rank}), 0


def cmd_invariant(path, opts):
    sm, doc_order = _load(path, opts)
    routes = routes_for(opts.poly) if opts.route == "all" else [Route(opts.route)]
    values = {r.value: polynomial(sm, opts.poly, r) for r in routes}
    texts = {r: P.serialize(v, doc_order) for r, v in values.items()}
    agree = len(set(texts.values())) == 1
    first = next(iter(texts.values()))
    if agree:
        text = first
    else:
        text = "routes disagree:\n" + "\n".join(f"  {r}: {t}" for r, t in texts.items())
    machine = {"file": path, "poly": opts.poly, "routes": texts, "agree": agree}
    return _emit(opts, text, machine), 0 if agree else 1


def cmd_activities(path, opts):
    sm, _ = _load(path, opts)
    lines = [f"order: {' < '.join(sm.elements)}", f"rank: {sm.rank}"]
    machine = {"file": path, "order": list(sm.elements), "rank": sm.rank, "bases": []}
    code = 0
    try:
        dec = interval_decomposition(sm)
    except DecompositionError as exc:
        lines.append(f"decomposition FAILED: {exc}")
        machine["error"] = str(exc)
        return _emit(opts, "\n".join(lines), machine), 1
    for iv in dec.intervals:
        rec = iv.record
        lines.append(f"B={sm.format(rec.basis)} IA={sm.format(rec.internally_active)} "
                     f"EA={sm.format(rec.externally_active)} "
                     f"interval=[{sm.format(iv.lower)}, {sm.format(iv.upper)}] size={iv.size}")
        machine["bases"].append({
            "basis": list(sm.labels(rec.basis)),
            "internally_active": list(sm.labels(rec.internally_active)),
            "externally_active": list(sm.labels(rec.externally_active)),
            "lower": list(sm.labels(iv.lower)), "upper": list(sm.labels(iv.upper)),
        })
    total = sum(dec.sizes())
    lines.append(f"intervals partition C: {' + '.join(map(str, dec.sizes())) or '0'} = {total} = |C|")
    machine["partition"] = total == len(sm.ranks)
    return _emit(opts, "\n".join(lines), machine), code


def cmd_verify(path, opts):
    sm, doc_order = _load(path, opts)
    if opts.identity:
        reports = [run_identity(sm, opts.identity, opts.verbose)]
    else:
        reports = check_all(sm, verbose=opts.verbose)
    ok = all(r.passed for r in reports)
    lines = []
    for r in reports:
        lines.append(("PASS " if r.passed else "FAIL ") + r.identity_id)
        if not r.passed:
            lines.append("  lhs:  " + P.serialize(r.lhs, doc_order))
            lines.append("  rhs:  " + P.serialize(r.rhs, doc_order))
            lines.append("  diff: " + P.serialize(r.diff, doc_order))
        if opts.verbose:
            for t, s in r.partials:
                lines.append(f"    T={sm.format(t)}: {P.serialize(s, doc_order)}")
    lines.append(f"{path}: {sum(r.passed for r in reports)}/{len(reports)} identities pass")
    machine = {"file": path, "all_pass": ok, "reports": [
        {"identity": r.identity_id, "verdict": r.verdict,
         "lhs": P.serialize(r.lhs, doc_order), "rhs": P.serialize(r.rhs, doc_order),
         "diff": P.serialize(r.diff, doc_order)} for r in reports]}
    return _emit(opts, "\n".join(lines), machine), 0 if ok else 1


def cmd_random(opts):
    spec = RandomSpec(opts.seed, opts.n, opts.d, opts.bound)
    arr = random_arrangement(spec)
    if opts.arrangement:
        return json.dumps(arr.to_doc(), indent=1), 0
    sm = from_arrangement(arr)
    if opts.order:
        sm = sm.reorder([s.strip() for s in opts.order.split(",")])
    if opts.emit:
        return json.dumps(to_explicit(sm)), 0
    tutte = P.serialize(polynomial(sm, "tutte", Route.DC))
    text = f"n={sm.n} |C|={len(sm.ranks)} r={sm.rank} T={tutte}"
    return _emit(opts, text, {"n": sm.n, "central_sets": len(sm.ranks), "rank": sm.rank,
                              "tutte": tutte}), 0


def cmd_from_arrangement(path, opts):
    sm, _ = _load(path, opts)
    return json.dumps(to_explicit(sm)), 0


FILE_COMMANDS = {
    "check": cmd_check,
    "invariant": cmd_invariant,
    "activities": cmd_activities,
    "verify": cmd_verify,
    "from-arrangement": cmd_from_arrangement,
}


def _run_file(opts, path):
    try:
        return FILE_COMMANDS[opts.command](path, opts)
    except (SemimatroidError, P.PolyError, OSError) as exc:
        return f"{path}: error: {exc}", 1


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", help="comma-separated labels overriding the element order")
    common.add_argument("--format", choices=["text", "machine"], default="text")
    common.add_argument("--jobs", type=int, default=1, help="files processed in parallel")

    parser = argparse.ArgumentParser(prog="semimatroids",
                                     description="Exact semimatroid invariants and identity checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="validate the semimatroid axioms")
    p.add_argument("files", nargs="+")

    p = sub.add_parser("invariant", parents=[common], help="print a polynomial invariant")
    p.add_argument("files", nargs="+")
    p.add_argument("--poly", required=True, choices=INVARIANTS)
    p.add_argument("--route", default="sum", choices=["sum", "dc", "activities", "via-z", "all"])

    p = sub.add_parser("activities", parents=[common], help="basis activities and intervals")
    p.add_argument("files", nargs="+")

    p = sub.add_parser("verify", parents=[common], help="run the identity checks")
    p.add_argument("files", nargs="+")
    which = p.add_mutually_exclusive_group()
    which.add_argument("--identity", choices=IDENTITIES)
    which.add_argument("--all", action="store_true", help="run every identity (default)")
    p.add_argument("--verbose", action="store_true", help="print per-T summands")

    p = sub.add_parser("random", parents=[common], help="seeded random arrangement")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--emit", action="store_true", help="print the explicit document")
    p.add_argument("--arrangement", action="store_true", help="print the arrangement document")

    p = sub.add_parser("from-arrangement", parents=[common],
                       help="convert an arrangement document to an explicit one")
    p.add_argument("files", nargs="+")
    p.add_argument("--emit", action="store_true", required=True)
    return parser


def main(argv=None):
    parser = build_parser()
    opts = parser.parse_args(argv)
    if opts.command == "invariant" and opts.route == "via-z" and opts.poly not in ("tutte", "subset-corank"):
        parser.error("--route via-z is only defined for tutte and subset-corank")
    if opts.command == "random":
        try:
            out, code = cmd_random(opts)
        except (SemimatroidError, P.PolyError) as exc:
            out, code = f"error: {exc}", 1
        print(out)
        return code
    if opts.jobs > 1 and len(opts.files) > 1:
        with ProcessPoolExecutor(max_workers=opts.jobs) as pool:
            results = list(pool.map(_run_file, [opts] * len(opts.files), opts.files))
    else:
        results = [_run_file(opts, path) for path in opts.files]
    code = 0
    for out, c in results:
        print(out)
        code = max(code, c)
    return code


if __name__ == "__main__":
    sys.exit(main())
