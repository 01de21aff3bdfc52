"""JSON document schema: systems, named sets, and result serialization.

All rationals travel as exact strings ("p/q" or "p"), infinities as
"inf"/"-inf", intervals as 4-tuples [lo, lo_closed, hi, hi_closed], box sets
as lists of boxes (a box is a list of per-axis intervals).  Parsing then
serializing then parsing is the identity on every valid document.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from . import __version__
from .affine import AffineRule, Piece, PiecewiseAffineMap
from .boxes import BoxSet, Cut, Interval, NEG_INF, POS_INF
from .finite import FinitePartialMap, FiniteSpace, FiniteSubset
from .semiflow import AxisRule, ExactSemiflow


class DocumentError(ValueError):
    pass


def format_rat(q: Fraction) -> str:
    return str(q)


_RAT_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*[1-9]\d*)?\s*$")


def parse_rat(tok) -> Fraction:
    """Accept integers and 'p/q' strings only; no decimal or inexact forms."""
    if isinstance(tok, int) and not isinstance(tok, bool):
        return Fraction(tok)
    if isinstance(tok, str) and _RAT_RE.match(tok):
        return Fraction(tok)
    raise DocumentError(f"bad rational {tok!r} (use 'p' or 'p/q')")


def cut_to_json(c: Cut) -> str:
    if c.sign < 0:
        return "-inf"
    if c.sign > 0:
        return "inf"
    return format_rat(c.value)


def cut_from_json(tok) -> Cut:
    if tok == "inf":
        return POS_INF
    if tok == "-inf":
        return NEG_INF
    return Cut.finite(parse_rat(tok))


def interval_to_json(iv: Interval) -> list:
    return [cut_to_json(iv.lo), iv.lo_closed, cut_to_json(iv.hi), iv.hi_closed]


def interval_from_json(data) -> Interval:
    if not isinstance(data, (list, tuple)) or len(data) != 4:
        raise DocumentError(f"interval must be [lo, lo_closed, hi, hi_closed], "
                            f"got {data!r}")
    lo, lc, hi, hc = data
    if not isinstance(lc, bool) or not isinstance(hc, bool):
        raise DocumentError("endpoint flags must be booleans")
    try:
        return Interval(cut_from_json(lo), cut_from_json(hi), lc, hc)
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc


def boxset_to_json(bs: BoxSet) -> list:
    return [[interval_to_json(iv) for iv in box] for box in bs.boxes]


def boxset_from_json(data, dimension: int) -> BoxSet:
    if not isinstance(data, list):
        raise DocumentError("a box set must be a list of boxes")
    boxes = []
    for box in data:
        if not isinstance(box, list) or len(box) != dimension:
            raise DocumentError(f"each box needs {dimension} interval(s)")
        boxes.append(tuple(interval_from_json(iv) for iv in box))
    return BoxSet.of(dimension, boxes)


@dataclass(frozen=True)
class SystemDocument:
    kind: str                 # finite_map | interval_map | semiflow
    system: object            # FinitePartialMap | PiecewiseAffineMap | ExactSemiflow
    sets: dict

    def resolve(self, label: str):
        if label not in self.sets:
            raise DocumentError(f"unknown set label {label!r}")
        return self.sets[label]


def _parse_finite(data: dict) -> tuple[FinitePartialMap, dict]:
    try:
        space = FiniteSpace.of(data["points"])
        fmap = FinitePartialMap.of(space, data.get("table", {}))
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"bad finite system: {exc}") from exc

    def parse_set(val):
        if not isinstance(val, list):
            raise DocumentError("a finite set must be a list of point names")
        try:
            return FiniteSubset.of(space, val)
        except ValueError as exc:
            raise DocumentError(str(exc)) from exc
    return fmap, {"parse_set": parse_set}


def _parse_interval(data: dict) -> tuple[PiecewiseAffineMap, dict]:
    try:
        dim = int(data["dimension"])
        pieces = []
        for p in data["pieces"]:
            dom = boxset_from_json(p["domain"], dim)
            rules = tuple(AffineRule.of(parse_rat(r["slope"]),
                                        parse_rat(r["intercept"]))
                          for r in p["rules"])
            if len(rules) != dim:
                raise DocumentError("one rule per axis required")
            pieces.append(Piece(dom, rules))
        pam = PiecewiseAffineMap.of(dim, pieces)
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"bad interval system: {exc}") from exc
    return pam, {"parse_set": lambda v: boxset_from_json(v, dim)}


def _parse_semiflow(data: dict) -> tuple[ExactSemiflow, dict]:
    try:
        dim = int(data["dimension"])
        axes = []
        for a in data["axes"]:
            kind = a["kind"]
            if kind == "identity":
                axes.append(AxisRule.identity())
            elif kind == "translation":
                axes.append(AxisRule.translation(parse_rat(a["velocity"])))
            elif kind in ("floor", "ceil"):
                rule = AxisRule.floor if kind == "floor" else AxisRule.ceil
                axes.append(rule(parse_rat(a["velocity"]), parse_rat(a["clamp"])))
            else:
                raise DocumentError(f"unknown axis kind {kind!r}")
        carrier = None
        if "carrier" in data:
            carrier = boxset_from_json(data["carrier"], dim)
        flow = ExactSemiflow.of(axes, carrier)
    except (KeyError, TypeError, ValueError, AssertionError) as exc:
        raise DocumentError(f"bad semiflow system: {exc}") from exc
    return flow, {"parse_set": lambda v: boxset_from_json(v, dim)}


_PARSERS = {
    "finite_map": _parse_finite,
    "interval_map": _parse_interval,
    "semiflow": _parse_semiflow,
}


def parse_document(data: dict) -> SystemDocument:
    if not isinstance(data, dict):
        raise DocumentError("document must be a JSON object")
    kind = data.get("kind")
    if kind not in _PARSERS:
        raise DocumentError(f"unknown document kind {kind!r}")
    system, helpers = _PARSERS[kind](data.get("system", {}))
    sets = {}
    for label, val in data.get("sets", {}).items():
        sets[str(label)] = helpers["parse_set"](val)
    return SystemDocument(kind, system, sets)


def set_to_json(doc_kind: str, value) -> Any:
    if doc_kind == "finite_map":
        return list(value.ordered())
    return boxset_to_json(value)


def document_to_json(doc: SystemDocument) -> dict:
    if doc.kind == "finite_map":
        f = doc.system
        system = {"points": list(f.space.points),
                  "table": {x: y for x, y in f.pairs}}
    elif doc.kind == "interval_map":
        f = doc.system
        system = {
            "dimension": f.dimension,
            "pieces": [{"domain": boxset_to_json(p.domain),
                        "rules": [{"slope": format_rat(r.slope),
                                   "intercept": format_rat(r.intercept)}
                                  for r in p.rules]}
                       for p in f.pieces],
        }
    else:
        flow = doc.system
        axes = []
        for r in flow.axes:
            entry = {"kind": r.kind}
            if r.kind != "identity":
                entry["velocity"] = format_rat(r.velocity)
            if r.clamp is not None:
                entry["clamp"] = format_rat(r.clamp)
            axes.append(entry)
        system = {"dimension": flow.dimension, "axes": axes,
                  "carrier": boxset_to_json(flow.carrier)}
    return {"kind": doc.kind, "system": system,
            "sets": {label: set_to_json(doc.kind, v)
                     for label, v in doc.sets.items()}}


def meta_block(seed=None, bound=None) -> dict:
    out = {"tool": "conley-kernel", "version": __version__}
    if seed is not None:
        out["seed"] = seed
    if bound is not None:
        out["bound"] = str(bound)
    return out


def checks_to_json(checks) -> list:
    return [{"name": c.name, "detail": c.detail, "ok": c.ok} for c in checks]


def report_to_json(report) -> dict:
    return {
        "carrier": report.carrier,
        "invariant_set": report.invariant_set,
        "neighbourhoods": [
            {"label": n.label, "object": n.object_repr,
             "canonical_invariant": list(n.canonical_invariant)
             if n.canonical_invariant else None}
            for n in report.neighbourhoods],
        "morphisms": [
            {"source": m.source, "target": m.target,
             "triple": [str(m.triple.a), str(m.triple.b), str(m.triple.c)],
             "shift": str(m.shift), "invertible": m.invertible,
             "witness": m.witness, "checks": checks_to_json(m.checks)}
            for m in report.morphisms],
        "checks": checks_to_json(report.checks),
        "ok": report.ok,
    }
