"""JSON input and output.

Input schemas (UTF-8 JSON, human-writable):

* series:  {"rank": n, "cone": "orthant" | {"rays": [[...], ...]},
            "terms": [{"exp": [ints], "coef": "p/q"}, ...]}
* splice:  {"leaves": n, "nodes": [names], "edges": [[a, b], ...],
            "weights": [{"node": name, "edge": [a, b], "w": int}, ...]}
            (edge endpoints: leaf numbers or node names)
* cone:    {"rank": n, "cone": "orthant" | {"rays": [[...], ...]}}
* arc:     {"rank": n, "cone": ..., "mode": "exact" | "float",
            "coords": [{"terms": [{"ord": k, "coef": ...}], "valid_to": int | null}]}

Rational coefficients are serialized as strings "p" or "p/q" (decimal
integers, no exponent notation) so that round-trips are bit-exact.
Quadratic-extension coefficients serialize as {"a": .., "b": .., "d": ..},
float-mode coefficients as {"re": .., "im": ..}. All emitted documents
carry a "kind" discriminator and serialize deterministically (sorted keys,
canonical orders), so serialize-parse-serialize is the identity.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .arcs import PuiseuxResult, QuadExt, Semivalue, TruncatedArc, TSeries
from .cones import Cone
from .fans import Fan
from .newton import NewtonFan, NewtonPolyhedron
from .series import Series
from .splice import CrosscheckReport, SpliceDiagram, SpliceReport, SpliceSystem
from .tropical import ExtendedCone, StructureReport, Tropicalization


class InputError(ValueError):
    """Malformed input file or schema violation."""


# -- scalars ---------------------------------------------------------------------


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational {s!r}: {exc}") from None
    raise InputError(f"expected a rational as 'p/q' string, got {s!r}")


def encode_coeff(c):
    if isinstance(c, QuadExt):
        return {"a": format_rational(c.a), "b": format_rational(c.b),
                "d": format_rational(c.d)}
    if isinstance(c, complex):
        return {"re": repr(c.real), "im": repr(c.imag)}
    return format_rational(c)


def decode_coeff(obj):
    if isinstance(obj, dict):
        if "re" in obj:
            return complex(float(obj["re"]), float(obj["im"]))
        if "d" in obj:
            return QuadExt(parse_rational(obj["a"]), parse_rational(obj["b"]),
                           parse_rational(obj["d"]))
        raise InputError(f"unrecognized coefficient object {obj!r}")
    return parse_rational(obj)


# -- cones, series, splice: parsing ------------------------------------------------


def parse_cone_field(obj, rank: int) -> Cone:
    if obj == "orthant":
        return Cone.orthant(rank)
    if isinstance(obj, dict) and "rays" in obj:
        rays = [tuple(int(a) for a in r) for r in obj["rays"]]
        return Cone.from_rays(rays, rank)
    raise InputError(f"bad cone field {obj!r}: expected 'orthant' or {{'rays': ...}}")


def parse_series(doc) -> Series:
    try:
        rank = int(doc["rank"])
        cone = parse_cone_field(doc.get("cone", "orthant"), rank)
        terms = {}
        for t in doc["terms"]:
            exp = tuple(int(a) for a in t["exp"])
            coef = parse_rational(t["coef"])
            terms[exp] = terms.get(exp, Fraction(0)) + coef
        return Series(cone, terms)
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad series document: {exc}") from None


def parse_cone_doc(doc) -> Cone:
    try:
        rank = int(doc["rank"])
        return parse_cone_field(doc.get("cone", "orthant"), rank)
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad cone document: {exc}") from None


def _vertex(v):
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise InputError(f"bad splice vertex {v!r}")
    return v


def parse_splice(doc) -> SpliceDiagram:
    try:
        leaves = int(doc["leaves"])
        nodes = [str(x) for x in doc["nodes"]]
        edges = [(_vertex(a), _vertex(b)) for a, b in doc["edges"]]
        weights = {}
        for w in doc["weights"]:
            edge = (_vertex(w["edge"][0]), _vertex(w["edge"][1]))
            weights[(str(w["node"]), edge)] = int(w["w"])
        return SpliceDiagram(leaves, nodes, edges, weights)
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad splice document: {exc}") from None


def parse_arc(doc) -> TruncatedArc:
    try:
        rank = int(doc["rank"])
        cone = parse_cone_field(doc.get("cone", "orthant"), rank)
        mode = doc.get("mode", "exact")
        coords = []
        for c in doc["coords"]:
            terms = {int(t["ord"]): decode_coeff(t["coef"]) for t in c["terms"]}
            coords.append(TSeries(terms, c.get("valid_to")))
        return TruncatedArc(cone, coords, mode=mode)
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad arc document: {exc}") from None


def load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


# -- encoding ------------------------------------------------------------------------


def encode_cone(c: Cone):
    out = {"rank": c.rank, "dim": c.dim, "rays": [list(r) for r in c.rays]}
    if c.lines:
        out["lines"] = [list(l) for l in c.lines]
    return out


def encode_cone_field(c: Cone):
    if c == Cone.orthant(c.rank):
        return "orthant"
    return {"rays": [list(r) for r in c.rays]}


def encode_series(f: Series):
    return {
        "kind": "series",
        "rank": f.rank,
        "cone": encode_cone_field(f.cone),
        "terms": [{"exp": list(e), "coef": format_rational(c)}
                  for e, c in f.terms.items()],
    }


def encode_fan(fan: Fan, labels: dict | None = None):
    cones = []
    for c in fan.cones:
        entry = encode_cone(c)
        if labels is not None and c.key in labels:
            lab = labels[c.key]
            entry["label"] = _encode_label(lab)
        cones.append(entry)
    return {
        "kind": "fan",
        "rank": fan.rank,
        "cones": cones,
        "maximal": [encode_cone(c) for c in fan.maximal_cones],
    }


def _encode_label(lab):
    # a label is either a support sublist or a tuple of per-generator sublists
    if lab and isinstance(lab[0][0], tuple):
        return [[list(e) for e in gen] for gen in lab]
    return [list(e) for e in lab]


def encode_newton_fan(nf: NewtonFan):
    doc = encode_fan(nf.fan, nf.labels)
    doc["kind"] = "newton-fan"
    return doc


def encode_polyhedron(p: NewtonPolyhedron, f: Series | None = None):
    doc = {
        "kind": "polyhedron",
        "rank": p.ambient_cone.rank,
        "cone": encode_cone_field(p.ambient_cone),
        "recession_rays": [list(r) for r in p.recession_cone.rays],
        "vertices": [list(v) for v in p.vertices],
        "compact_faces": [
            {"dim": cf.dim,
             "vertices": [list(v) for v in cf.vertices],
             "support": [list(v) for v in cf.support_points],
             "dual_rays": [list(r) for r in cf.dual_cone.rays]}
            for cf in p.compact_faces
        ],
    }
    if f is not None:
        doc["support"] = [list(e) for e in f.support]
    return doc


def encode_tropicalization(t: Tropicalization, note: str | None = None,
                           extras: dict | None = None):
    doc = {
        "kind": "tropicalization",
        "rank": t.ambient_cone.rank,
        "ambient": encode_cone_field(t.ambient_cone),
        "cones": [encode_cone(c) for c in t.fan.cones],
        "maximal": [encode_cone(c) for c in t.fan.maximal_cones],
        "rays": [list(r) for r in t.fan.rays],
    }
    if t.generators:
        doc["generators"] = [encode_series(g) for g in t.generators]
    if t.labels:
        doc["labels"] = [
            {"rays": [list(r) for r in c.rays], "label": _encode_label(t.labels[c.key])}
            for c in t.fan.cones if c.key in t.labels
        ]
    if t.dim_hint is not None:
        doc["dim"] = t.dim_hint
    if note:
        doc["note"] = note
    if extras:
        doc.update(extras)
    return doc


def parse_tropicalization(doc) -> Tropicalization:
    try:
        rank = int(doc["rank"])
        ambient = parse_cone_field(doc["ambient"], rank)
        cones = [Cone.from_rays([tuple(r) for r in c["rays"]], rank)
                 for c in doc["cones"]]
        fan = Fan(cones, rank) if cones else Fan([], rank, close=False)
        gens = tuple(parse_series(g) for g in doc.get("generators", []))
        labels = {}
        for entry in doc.get("labels", []):
            c = Cone.from_rays([tuple(r) for r in entry["rays"]], rank)
            lab = entry["label"]
            if lab and isinstance(lab[0][0], list):
                labels[c.key] = tuple(tuple(tuple(e) for e in gen) for gen in lab)
            else:
                labels[c.key] = tuple(tuple(e) for e in lab)
        return Tropicalization(ambient_cone=ambient, fan=fan, generators=gens,
                               labels=labels, dim_hint=doc.get("dim"))
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad tropicalization document: {exc}") from None


def encode_rays(rays, rank: int):
    return {"kind": "rays", "rank": rank, "rays": [list(r) for r in rays]}


def encode_splice_report(rep: SpliceReport):
    return {
        "kind": "splice-report",
        "ok": rep.ok,
        "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail}
                   for c in rep.checks],
    }


def encode_splice_system(sys_: SpliceSystem):
    return {
        "kind": "splice-system",
        "variables": sys_.n_variables,
        "equations": [encode_series(eq) for eq in sys_.equations],
        "equation_nodes": [str(u) for u in sys_.equation_nodes],
        "matrices": {str(u): [[format_rational(a) for a in row] for row in m]
                     for u, m in sorted(sys_.matrices.items())},
    }


def encode_crosscheck(rep: CrosscheckReport):
    return {
        "kind": "crosscheck-report",
        "ok": rep.ok,
        "witnesses": [{"rays": [list(r) for r in c.rays],
                       "witness": list(w), "ok": ok}
                      for c, w, ok in rep.witnesses],
        "principal_support_equal": rep.principal_support_equal,
    }


def encode_structure_report(rep: StructureReport):
    return {
        "kind": "structure-report",
        "ok": rep.ok,
        "expected_dim": rep.expected_dim,
        "issues": [{"check": i.check, "rays": [list(r) for r in i.cone.rays],
                    "detail": i.detail} for i in rep.issues],
    }


def encode_extended_cone(ec: ExtendedCone):
    return {
        "kind": "extended-cone",
        "rank": ec.base_cone.rank,
        "base": encode_cone_field(ec.base_cone),
        "strata": [
            {"face_dim": s.face.dim,
             "face_rays": [list(r) for r in s.face.rays],
             "quotient_rank": s.quotient_rank,
             "image_rays": [list(r) for r in s.image_cone.rays],
             "projection": [list(r) for r in s.projection]}
            for s in ec.strata
        ],
    }


def encode_tseries(s: TSeries):
    return {
        "terms": [{"ord": o, "coef": encode_coeff(c)} for o, c in s.terms.items()],
        "valid_to": s.valid_to,
    }


def encode_arc(a: TruncatedArc):
    return {
        "kind": "arc",
        "rank": a.cone.rank,
        "cone": encode_cone_field(a.cone),
        "mode": a.mode,
        "truncation_order": a.truncation_order,
        "coords": [encode_tseries(c) for c in a.coords],
    }


def encode_weight(w):
    return {"kind": "weight", "weight": list(w)}


def encode_puiseux(res: PuiseuxResult):
    return {
        "kind": "arcs",
        "arcs": [encode_arc(a) for a in res.arcs],
        "failures": [{"level": f.level, "weight": list(f.weight),
                      "polynomial": [encode_coeff(c) for c in f.polynomial],
                      "reason": f.reason} for f in res.failures],
        "complete": res.complete,
    }


def encode_semivalues(vals: list[Semivalue]):
    out = []
    for v in vals:
        if v.is_finite:
            out.append({"value": v.value})
        else:
            out.append({"value": "inf", "threshold": v.threshold})
    return {"kind": "semivalues", "values": out}


def dumps(doc) -> str:
    """Deterministic serialization: byte-identical for identical documents."""
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
