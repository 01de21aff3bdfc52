"""Batch front-end: parse system documents, dispatch operations, emit reports.

Exit codes are a stable contract: 0 success, 1 property or expectation
violation, 2 input error, 3 undecided within the configured bounds.  The
default search bound is 64, overridable via CONLEY_DEFAULT_BOUND.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import conley as co
from . import dynamics as dyn
from . import semiflow as sf
from .documents import (
    DocumentError, checks_to_json, meta_block, parse_document,
    report_to_json, set_to_json,
)
from .suites import SUITES, run_suite

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_UNDECIDED = 3


def default_bound() -> int:
    raw = os.environ.get("CONLEY_DEFAULT_BOUND", "64")
    try:
        return int(raw)
    except ValueError:
        raise DocumentError(f"CONLEY_DEFAULT_BOUND must be an integer, got {raw!r}")


def _load(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise DocumentError(f"cannot read document {path}: {exc}")
    return parse_document(data)


def _emit(args, payload: dict, human_lines: list[str]):
    if args.json:
        json.dump(payload, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
    else:
        for line in human_lines:
            print(line)


def _is_flow(doc) -> bool:
    return doc.kind == "semiflow"


def _predicates_for(doc, label, subset, bound):
    """Predicate table for one subset; values True/False/'unknown'."""
    out = {}
    if _is_flow(doc):
        flow = doc.system
        try:
            checks = sf.compactifiability_checks_cont(flow, subset)
            for name, ok in checks:
                out[name] = ok
            out["compactifiable"] = all(ok for _, ok in checks)
        except sf.UndecidedError as exc:
            out["compactifiable"] = "unknown"
            out["reason"] = str(exc)
    else:
        f = doc.system
        checks = dyn.compactifiability_checks(f, subset)
        for name, ok in checks:
            out[name] = ok
        out["weakly compactifiable"] = all(ok for _, ok in checks[:2])
        out["compactifiable"] = all(ok for _, ok in checks)
    return out


def cmd_check(args) -> int:
    doc = _load(args.doc)
    labels = args.set or sorted(doc.sets)
    bound = args.bound if args.bound is not None else default_bound()
    table = {}
    any_unknown = False
    for label in labels:
        subset = doc.resolve(label)
        preds = _predicates_for(doc, label, subset, bound)
        table[label] = preds
        if any(v == "unknown" for v in preds.values()):
            any_unknown = True
    lines = []
    for label, preds in table.items():
        lines.append(f"{label}:")
        for name, val in preds.items():
            lines.append(f"  {name}: {val}")
    _emit(args, {"meta": meta_block(bound=bound), "table": table}, lines)
    return EXIT_UNDECIDED if any_unknown else EXIT_OK


def cmd_invariant_part(args) -> int:
    doc = _load(args.doc)
    e = doc.resolve(args.set)
    bound = args.bound if args.bound is not None else default_bound()
    if _is_flow(doc):
        result = sf.invariant_part_F(doc.system, e)
    else:
        result = dyn.invariant_part_exact(doc.system, e, cap=bound) \
            if doc.kind == "interval_map" else dyn.invariant_part(doc.system, e)
    if isinstance(result, dyn.Undecided):
        _emit(args, {"meta": meta_block(bound=bound), "status": "unknown",
                     "reason": result.reason,
                     "outer": set_to_json(doc.kind, result.outer)
                     if result.outer is not None else None},
              [f"unknown: {result.reason}",
               f"outer approximant: {result.outer!r}"])
        return EXIT_UNDECIDED
    _emit(args, {"meta": meta_block(bound=bound), "status": "exact",
                 "invariant_part": set_to_json(doc.kind, result)},
          [f"invariant part: {result!r}"])
    return EXIT_OK


def _certificate_exit(args, result, bound) -> int:
    meta = meta_block(bound=bound)
    if isinstance(result, dyn.Undecided):
        _emit(args, {"meta": meta, "status": "unknown", "reason": result.reason},
              [f"unknown: {result.reason}"])
        return EXIT_UNDECIDED
    if isinstance(result, co.Failure):
        _emit(args, {"meta": meta, "status": "failure", "reason": result.reason,
                     "checks": checks_to_json(result.checks)},
              [f"failure: {result.reason}"] +
              [f"  {c!r}" for c in result.checks])
        return EXIT_VIOLATION
    _emit(args, {"meta": meta, "status": "certified",
                 "checks": checks_to_json(result.checks)},
          ["certified"] + [f"  {c!r}" for c in result.checks])
    return EXIT_OK


def cmd_isolating(args) -> int:
    doc = _load(args.doc)
    s, e = doc.resolve(args.set), doc.resolve(args.nbhd)
    bound = args.bound if args.bound is not None else default_bound()
    if _is_flow(doc):
        result = sf.is_isolating_cont(doc.system, e, s)
    else:
        result = co.is_isolating(doc.system, e, s, cap=bound)
    return _certificate_exit(args, result, bound)


def cmd_index_nbhd(args) -> int:
    doc = _load(args.doc)
    s, e = doc.resolve(args.set), doc.resolve(args.nbhd)
    bound = args.bound if args.bound is not None else default_bound()
    if _is_flow(doc):
        result = sf.is_index_nbhd_cont(doc.system, e, s)
    else:
        result = co.is_index_nbhd(doc.system, e, s, cap=bound)
    return _certificate_exit(args, result, bound)


def cmd_sim(args) -> int:
    doc = _load(args.doc)
    e, e2 = doc.resolve(args.from_), doc.resolve(args.set)
    bound = args.bound if args.bound is not None else default_bound()
    if _is_flow(doc):
        result = sf.sim_F(doc.system, e, e2, bound=bound)
    else:
        result = dyn.sim_f(doc.system, e, e2,
                           bound=None if doc.kind == "finite_map" else bound)
    payload = {"meta": meta_block(bound=bound), "status": result.status,
               "forward": [str(x) for x in result.forward] if result.forward else None,
               "backward": [str(x) for x in result.backward] if result.backward else None}
    _emit(args, payload,
          [f"{result.status}",
           f"  forward witness (a, b): {result.forward}",
           f"  backward witness (a', b'): {result.backward}"])
    if result.status == "equivalent":
        return EXIT_OK
    return EXIT_VIOLATION if result.status == "not_equivalent" else EXIT_UNDECIDED


def cmd_admissible(args) -> int:
    doc = _load(args.doc)
    e, e2 = doc.resolve(args.from_), doc.resolve(args.set)
    bound = args.bound if args.bound is not None else default_bound()
    if _is_flow(doc):
        search = sf.find_admissible_cont(doc.system, e, e2, bound=bound)
    else:
        search = dyn.find_admissible(
            doc.system, e, e2,
            bound=None if doc.kind == "finite_map" else bound)
    if search.found:
        t = search.triple
        _emit(args, {"meta": meta_block(bound=bound), "status": "found",
                     "triple": [str(t.a), str(t.b), str(t.c)]},
              [f"admissible triple: {t}"])
        return EXIT_OK
    status = "none" if search.complete else "unknown"
    _emit(args, {"meta": meta_block(bound=bound), "status": status},
          [f"{status}: no admissible triple "
           f"{'exists' if search.complete else 'found within bound'}"])
    return EXIT_VIOLATION if search.complete else EXIT_UNDECIDED


def cmd_index(args) -> int:
    doc = _load(args.doc)
    s = doc.resolve(args.set)
    e = doc.resolve(args.nbhd)
    bound = args.bound if args.bound is not None else default_bound()
    flow = _is_flow(doc)
    constructed = None
    if args.search is not None:
        builder = sf.construct_index_nbhd_cont if flow else co.construct_index_nbhd
        built = builder(doc.system, s, e, args.search)
        if isinstance(built, (dyn.Undecided, co.Failure)):
            return _certificate_exit(args, built, bound)
        constructed = built
        e = built.subset
    if flow:
        report = sf.verify_simple_system_cont(doc.system, s, [e], bound=bound)
    else:
        report = co.verify_simple_system(doc.system, s, [e], bound=bound)
    if isinstance(report, (dyn.Undecided, co.Failure)):
        return _certificate_exit(args, report, bound)
    payload = {"meta": meta_block(bound=bound), "report": report_to_json(report)}
    if constructed is not None:
        payload["constructed"] = {
            "subset": set_to_json(doc.kind, constructed.subset),
            "triple": [str(x) for x in constructed.triple.as_tuple()],
        }
    lines = [f"carrier: {report.carrier}", f"invariant set: {report.invariant_set}"]
    if constructed is not None:
        lines.insert(0, f"constructed neighbourhood: {constructed.subset!r} "
                        f"via triple {constructed.triple}")
    for n in report.neighbourhoods:
        lines.append(f"object at {n.label}: {n.object_repr}"
                     + (f"  invariant {n.canonical_invariant}"
                        if n.canonical_invariant else ""))
    lines.append("certified" if report.ok else "VIOLATION in functor laws")
    _emit(args, payload, lines)
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_szymczak_equal(args) -> int:
    """Compare the connecting morphisms built from two different admissible
    triples; representative independence demands they agree."""
    doc = _load(args.doc)
    e, e2 = doc.resolve(args.from_), doc.resolve(args.set)
    bound = args.bound if args.bound is not None else default_bound()
    if _is_flow(doc):
        find, cross = sf.find_admissible_cont, sf.cross_map_cont
        is_adm = sf.is_admissible_cont
    else:
        find, cross = dyn.find_admissible, dyn.cross_map
        is_adm = dyn.is_admissible
    search = find(doc.system, e, e2, bound)
    if not search.found:
        _emit(args, {"meta": meta_block(bound=bound), "status": "unknown"},
              ["unknown: no admissible triple found"])
        return EXIT_VIOLATION if search.complete else EXIT_UNDECIDED
    t1 = search.triple
    t2 = dyn.AdmissibleTriple(t1.a, t1.b, t1.c + 1)
    if not is_adm(doc.system, e, e2, t2):
        _emit(args, {"meta": meta_block(bound=bound), "status": "unknown"},
              ["unknown: no second admissible triple"])
        return EXIT_UNDECIDED
    if doc.kind == "finite_map":
        m1 = co._finite_sz_morphism(doc.system, cross(doc.system, e, e2, t1))
        m2 = co._finite_sz_morphism(doc.system, cross(doc.system, e, e2, t2))
        from .szymczak import sz_equal
        equal = sz_equal(m1, m2)
    else:
        c1 = cross(doc.system, e, e2, t1)
        c2 = cross(doc.system, e, e2, t2)
        if _is_flow(doc):
            p1 = sf.induced_power(doc.system, e, t2.c)
            p2 = sf.induced_power(doc.system, e, t1.c)
            from .affine import compose as pam_compose
            equal = pam_compose(c1.realized, p1).maps_equal(
                pam_compose(c2.realized, p2))
        else:
            ca = dyn.carrier_for(doc.system)
            lhs = ca.compose(c1.realized, dyn.induced_power(doc.system, e, t2.c))
            rhs = ca.compose(c2.realized, dyn.induced_power(doc.system, e, t1.c))
            equal = ca.maps_equal(lhs, rhs)
    _emit(args, {"meta": meta_block(bound=bound), "equal": equal,
                 "triples": [[str(x) for x in t.as_tuple()] for t in (t1, t2)]},
          [f"morphism classes from triples {t1} and {t2}: "
           f"{'equal' if equal else 'DIFFERENT'}"])
    return EXIT_OK if equal else EXIT_VIOLATION


def cmd_shift_equiv(args) -> int:
    doc = _load(args.doc)
    e, e2 = doc.resolve(args.from_), doc.resolve(args.set)
    bound = args.bound if args.bound is not None else default_bound()
    if doc.kind == "finite_map":
        m = co.connecting_morphism(doc.system, e, e2)
        if isinstance(m, dyn.Undecided):
            _emit(args, {"meta": meta_block(bound=bound), "status": "unknown"},
                  ["unknown"])
            return EXIT_UNDECIDED
        from .szymczak import is_shift_equivalence
        wit = is_shift_equivalence(m.phi)
        if wit is None:
            _emit(args, {"meta": meta_block(bound=bound), "status": "no"},
                  ["no: the connecting map is not a shift equivalence"])
            return EXIT_VIOLATION
        _emit(args, {"meta": meta_block(bound=bound), "status": "yes",
                     "exponent": wit.exponent, "partner": repr(wit.psi)},
              [f"yes: partner {wit.psi!r} with exponent {wit.exponent}"])
        return EXIT_OK
    # interval / semiflow: verify invertibility through the functor laws
    try:
        verifier = sf.verify_simple_system_cont if _is_flow(doc) \
            else co.verify_simple_system
        s = _invariant_for(doc, e)
        rep = verifier(doc.system, s, [e, e2], bound=bound)
    except (ValueError, sf.UndecidedError) as exc:
        _emit(args, {"meta": meta_block(bound=bound), "status": "unknown",
                     "reason": str(exc)}, [f"unknown: {exc}"])
        return EXIT_UNDECIDED
    if not isinstance(rep, co.ConleyIndexReport):
        return _certificate_exit(args, rep, bound)
    ok = rep.ok
    _emit(args, {"meta": meta_block(bound=bound),
                 "status": "yes" if ok else "violated",
                 "report": report_to_json(rep)},
          ["yes: connecting morphisms verified invertible" if ok
           else "VIOLATION in invertibility checks"])
    return EXIT_OK if ok else EXIT_VIOLATION


def _invariant_for(doc, e):
    if _is_flow(doc):
        result = sf.invariant_part_F(doc.system, e.closure())
    elif doc.kind == "interval_map":
        result = dyn.invariant_part_exact(doc.system, e.closure())
    else:
        result = dyn.invariant_part(doc.system, e)
    if isinstance(result, dyn.Undecided):
        raise sf.UndecidedError(result.reason)
    return result


def cmd_verify(args) -> int:
    if args.suite not in SUITES:
        print(f"unknown suite {args.suite!r}; known: {', '.join(sorted(SUITES))}",
              file=sys.stderr)
        return EXIT_INPUT
    result = run_suite(args.suite, trials=args.trials, seed=args.seed,
                       bound=args.bound)
    payload = {"meta": meta_block(seed=args.seed, bound=args.bound),
               "suite": result.name, "passed": result.passed,
               "lines": result.lines}
    _emit(args, payload,
          [f"suite {result.name}: {'pass' if result.passed else 'FAIL'}"] +
          [f"  {line}" for line in result.lines])
    return EXIT_OK if result.passed else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conley-kernel",
        description="Exact Conley index kernel over finite and rational box "
                    "carriers")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, doc=True):
        if doc:
            p.add_argument("doc", help="path to a JSON system document")
        p.add_argument("--bound", type=int, default=None,
                       help="search bound (default CONLEY_DEFAULT_BOUND or 64)")
        group = p.add_mutually_exclusive_group()
        group.add_argument("--json", action="store_true", help="JSON output")
        group.add_argument("--human", dest="json", action="store_false",
                           help="human-readable output (default)")
        p.set_defaults(json=False)

    p = sub.add_parser("check", help="predicate table for named subsets")
    add_common(p)
    p.add_argument("--set", action="append", help="subset label (repeatable)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("invariant-part", help="invariant part of a subset")
    add_common(p)
    p.add_argument("--set", required=True)
    p.set_defaults(func=cmd_invariant_part)

    p = sub.add_parser("isolating", help="certify an isolating neighbourhood")
    add_common(p)
    p.add_argument("--set", required=True, help="the invariant set S")
    p.add_argument("--nbhd", required=True, help="the candidate neighbourhood E")
    p.set_defaults(func=cmd_isolating)

    p = sub.add_parser("index-nbhd", help="certify an index neighbourhood")
    add_common(p)
    p.add_argument("--set", required=True)
    p.add_argument("--nbhd", required=True)
    p.set_defaults(func=cmd_index_nbhd)

    p = sub.add_parser("sim", help="decide the absorption equivalence E ~ E'")
    add_common(p)
    p.add_argument("--from", dest="from_", required=True)
    p.add_argument("--set", required=True)
    p.set_defaults(func=cmd_sim)

    p = sub.add_parser("admissible", help="find an admissible triple")
    add_common(p)
    p.add_argument("--from", dest="from_", required=True)
    p.add_argument("--set", required=True)
    p.set_defaults(func=cmd_admissible)

    p = sub.add_parser("index", help="compute and certify a Conley index")
    add_common(p)
    p.add_argument("--set", required=True, help="the invariant set S")
    p.add_argument("--nbhd", required=True,
                   help="index neighbourhood (or seed when --search is given)")
    p.add_argument("--search", type=int, default=None, metavar="N",
                   help="construct an index neighbourhood inside --nbhd "
                        "with search bound N")
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("szymczak-equal",
                       help="representative independence of connecting morphisms")
    add_common(p)
    p.add_argument("--from", dest="from_", required=True)
    p.add_argument("--set", required=True)
    p.set_defaults(func=cmd_szymczak_equal)

    p = sub.add_parser("shift-equiv",
                       help="decide shift equivalence of the connecting map")
    add_common(p)
    p.add_argument("--from", dest="from_", required=True)
    p.add_argument("--set", required=True)
    p.set_defaults(func=cmd_shift_equiv)

    p = sub.add_parser("verify", help="run a named verification suite")
    add_common(p, doc=False)
    p.add_argument("--suite", required=True)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DocumentError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except sf.UndecidedError as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
