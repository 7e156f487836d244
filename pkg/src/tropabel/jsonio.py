"""Versioned JSON documents for every value crossing the CLI boundary.

Rationals travel as "p/q" strings so documents stay exact.  Readers reject
unknown fields and wrong schema versions outright; golden files depend on
the byte-stable encoder below.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .core import CRat, SkewForm
from .curve import AbstractCurve, Edge, Leg, Multiplicity, ParamCurve
from .enumeration import EnumerationResult, SearchBounds
from .errors import SchemaError
from .multicover import ComplexCount, MultiCoverReport
from .mumford import MumfordFamily
from .polarization import PeriodData
from .surface import PointConfig, TorusPoint, TropicalTorus

SCHEMA = "1"


def to_bytes(doc) -> bytes:
    return (json.dumps(doc, sort_keys=True, separators=(",", ": "), indent=1) + "\n").encode()


def rat_str(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def rat_parse(s) -> Fraction:
    if not isinstance(s, str) or "/" not in s:
        raise SchemaError(f"expected a 'p/q' rational, got {s!r}")
    num, den = s.split("/", 1)
    return Fraction(int(num), int(den))


def _check_keys(doc, allowed, label, optional=()):
    if not isinstance(doc, dict):
        raise SchemaError(f"{label}: expected an object")
    extra = set(doc) - set(allowed) - set(optional)
    if extra:
        raise SchemaError(f"{label}: unknown fields {sorted(extra)}")
    missing = set(allowed) - set(doc) - {"schema"}
    if missing:
        raise SchemaError(f"{label}: missing fields {sorted(missing)}")
    if "schema" in allowed:
        if doc.get("schema") != SCHEMA:
            raise SchemaError(f"{label}: unsupported schema {doc.get('schema')!r}")


def _imat(doc, label) -> tuple:
    try:
        return tuple(tuple(int(x) for x in row) for row in doc)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"{label}: expected a 2x2 integer matrix") from exc


def imat_doc(m):
    return [[int(x) for x in row] for row in m]


def skewform_doc(q: SkewForm):
    return {"schema": SCHEMA, "C": imat_doc(q.C), "tau": q.tau}


def skewform_parse(doc) -> SkewForm:
    _check_keys(doc, {"schema", "C", "tau"}, "skew form")
    return SkewForm(C=_imat(doc["C"], "C"), tau=int(doc["tau"]))


def crat_doc(z: CRat):
    return {"re": rat_str(z.re), "im": rat_str(z.im)}


def crat_parse(doc) -> CRat:
    _check_keys(doc, {"re", "im"}, "complex entry")
    return CRat(rat_parse(doc["re"]), rat_parse(doc["im"]))


def period_doc(p: PeriodData):
    return {"schema": SCHEMA, "Z": [[crat_doc(z) for z in row] for row in p.Z]}


def period_parse(doc) -> PeriodData:
    _check_keys(doc, {"schema", "Z"}, "period data")
    return PeriodData(Z=tuple(tuple(crat_parse(z) for z in row) for row in doc["Z"]))


def zmatrix_doc(z):
    return [[crat_doc(x) for x in row] for row in z]


def zmatrix_parse(doc):
    return tuple(tuple(crat_parse(x) for x in row) for row in doc)


def torus_doc(t: TropicalTorus):
    return {"schema": SCHEMA, "S": [[rat_str(x) for x in row] for row in t.S]}


def torus_parse(doc) -> TropicalTorus:
    _check_keys(doc, {"schema", "S"}, "torus")
    return TropicalTorus(
        S=tuple(tuple(rat_parse(x) for x in row) for row in doc["S"])
    )


def config_doc(cfg: PointConfig):
    return {
        "schema": SCHEMA,
        "points": [[rat_str(c) for c in p.coords] for p in cfg.points],
        "seed": cfg.seed,
    }


def config_parse(doc) -> PointConfig:
    _check_keys(doc, {"schema", "points", "seed"}, "config")
    points = tuple(
        TorusPoint((rat_parse(p[0]), rat_parse(p[1]))) for p in doc["points"]
    )
    return PointConfig(points=points, seed=int(doc["seed"]))


def family_doc(fam: MumfordFamily):
    return {
        "schema": SCHEMA,
        "Z": zmatrix_doc(fam.Z),
        "S": imat_doc(fam.S),
        "tau": fam.tau,
        "Q": {"C": imat_doc(fam.Q.C), "tau": fam.Q.tau},
    }


def family_parse(doc) -> MumfordFamily:
    _check_keys(doc, {"schema", "Z", "S", "tau", "Q"}, "family")
    _check_keys(doc["Q"], {"C", "tau"}, "family polarization")
    return MumfordFamily(
        Z=zmatrix_parse(doc["Z"]),
        S=_imat(doc["S"], "S"),
        tau=int(doc["tau"]),
        Q=SkewForm(C=_imat(doc["Q"]["C"], "Q.C"), tau=int(doc["Q"]["tau"])),
    )


def curve_doc(pc: ParamCurve):
    edges = []
    for e, n, w in zip(pc.curve.edges, pc.slopes, pc.windings):
        entry = {
            "u": e.u,
            "v": e.v,
            "length": rat_str(e.length),
            "slope": [n[0], n[1]],
        }
        if w is not None:
            entry["winding"] = [w[0], w[1]]
        edges.append(entry)
    return {
        "schema": SCHEMA,
        "vertices": pc.curve.num_vertices,
        "edges": edges,
        "legs": [{"vertex": l.vertex, "marker": l.marker} for l in pc.curve.legs],
        "base": {
            "vertex": pc.base_vertex,
            "position": [rat_str(c) for c in pc.base_position],
        },
    }


def curve_parse(doc, torus: TropicalTorus) -> ParamCurve:
    _check_keys(doc, {"schema", "vertices", "edges", "legs", "base"}, "curve")
    edges, slopes, windings = [], [], []
    for entry in doc["edges"]:
        _check_keys(entry, {"u", "v", "length", "slope"}, "edge", optional=("winding",))
        edges.append(Edge(int(entry["u"]), int(entry["v"]), rat_parse(entry["length"])))
        slopes.append((int(entry["slope"][0]), int(entry["slope"][1])))
        w = entry.get("winding")
        windings.append(None if w is None else (int(w[0]), int(w[1])))
    legs = []
    for entry in doc["legs"]:
        _check_keys(entry, {"vertex", "marker"}, "leg")
        legs.append(Leg(vertex=int(entry["vertex"]), marker=int(entry["marker"])))
    base = doc["base"]
    _check_keys(base, {"vertex", "position"}, "base")
    return ParamCurve(
        curve=AbstractCurve(
            num_vertices=int(doc["vertices"]),
            edges=tuple(edges),
            legs=tuple(legs),
        ),
        torus=torus,
        base_vertex=int(base["vertex"]),
        base_position=(rat_parse(base["position"][0]), rat_parse(base["position"][1])),
        slopes=tuple(slopes),
        windings=tuple(windings),
    )


def multiplicity_doc(m: Multiplicity):
    return {
        "gcd": m.gcd,
        "vertex_factors": {str(v): f for v, f in m.vertex_factors},
        "total": m.total,
    }


def multiplicity_parse(doc) -> Multiplicity:
    _check_keys(doc, {"gcd", "vertex_factors", "total"}, "multiplicity")
    return Multiplicity(
        gcd=int(doc["gcd"]),
        vertex_factors=tuple(
            (int(v), int(f)) for v, f in sorted(doc["vertex_factors"].items(), key=lambda kv: int(kv[0]))
        ),
        total=int(doc["total"]),
    )


def bounds_doc(b: SearchBounds):
    return {"slope_bound": b.slope_bound, "winding_bound": b.winding_bound}


def bounds_parse(doc) -> SearchBounds:
    _check_keys(doc, {"slope_bound", "winding_bound"}, "bounds")
    return SearchBounds(int(doc["slope_bound"]), int(doc["winding_bound"]))


def result_doc(res: EnumerationResult):
    return {
        "schema": SCHEMA,
        "torus": torus_doc(res.torus),
        "B": imat_doc(res.B),
        "genus": res.genus,
        "config": config_doc(res.config),
        "bounds": bounds_doc(res.bounds),
        "curves": [
            {"curve": curve_doc(pc), "multiplicity": multiplicity_doc(m)}
            for pc, m in res.curves
        ],
        "by_gcd": {str(k): list(v) for k, v in res.by_gcd.items()},
        "saturation": dict(res.saturation),
        "bounds_stable": res.bounds_stable,
    }


def result_parse(doc) -> EnumerationResult:
    _check_keys(
        doc,
        {
            "schema", "torus", "B", "genus", "config", "bounds", "curves",
            "by_gcd", "saturation", "bounds_stable",
        },
        "enumeration result",
    )
    torus = torus_parse(doc["torus"])
    curves = []
    for entry in doc["curves"]:
        _check_keys(entry, {"curve", "multiplicity"}, "curve entry")
        curves.append(
            (curve_parse(entry["curve"], torus), multiplicity_parse(entry["multiplicity"]))
        )
    from .curve import canonical_key

    return EnumerationResult(
        torus=torus,
        B=_imat(doc["B"], "B"),
        genus=int(doc["genus"]),
        config=config_parse(doc["config"]),
        bounds=bounds_parse(doc["bounds"]),
        curves=tuple(curves),
        keys=tuple(canonical_key(pc) for pc, _ in curves),
        by_gcd={int(k): tuple(v) for k, v in sorted(doc["by_gcd"].items(), key=lambda kv: int(kv[0]))},
        saturation={k: int(v) for k, v in doc["saturation"].items()},
        bounds_stable=doc["bounds_stable"],
    )


def complex_count_doc(c: ComplexCount):
    return {
        "g": c.g,
        "d": c.d,
        "n": c.n,
        "value": c.value,
        "tau": c.tau,
        "B": imat_doc(c.B),
        "seed": c.seed,
    }


def complex_count_parse(doc) -> ComplexCount:
    _check_keys(doc, {"g", "d", "n", "value", "tau", "B", "seed"}, "complex count")
    return ComplexCount(
        g=int(doc["g"]),
        d=int(doc["d"]),
        n=int(doc["n"]),
        value=int(doc["value"]),
        tau=int(doc["tau"]),
        B=_imat(doc["B"], "B"),
        seed=int(doc["seed"]),
    )


def report_doc(rep: MultiCoverReport):
    return {
        "schema": SCHEMA,
        "g": rep.g,
        "d": rep.d,
        "n": rep.n,
        "B": imat_doc(rep.B),
        "seed": rep.seed,
        "lhs": complex_count_doc(rep.lhs),
        "rhs_terms": {str(k): v for k, v in rep.rhs_terms.items()},
        "rhs_total": rep.rhs_total,
        "verdict": rep.verdict,
        "certified": rep.certified,
        "primitive": {str(k): v for k, v in rep.primitive.items()},
        "strata": {str(k): v for k, v in rep.strata.items()},
        "bijections": {str(k): v for k, v in rep.bijections.items()},
        "bounds": {str(k): bounds_doc(b) for k, b in rep.bounds.items()},
    }


def report_parse(doc) -> MultiCoverReport:
    _check_keys(
        doc,
        {
            "schema", "g", "d", "n", "B", "seed", "lhs", "rhs_terms",
            "rhs_total", "verdict", "certified", "primitive", "strata",
            "bijections", "bounds",
        },
        "cover report",
    )

    def intmap(m, cast=int):
        return {int(k): cast(v) for k, v in sorted(m.items(), key=lambda kv: int(kv[0]))}

    return MultiCoverReport(
        g=int(doc["g"]),
        d=int(doc["d"]),
        n=int(doc["n"]),
        B=_imat(doc["B"], "B"),
        seed=int(doc["seed"]),
        lhs=complex_count_parse(doc["lhs"]),
        rhs_terms=intmap(doc["rhs_terms"]),
        rhs_total=int(doc["rhs_total"]),
        verdict=bool(doc["verdict"]),
        certified=bool(doc["certified"]),
        primitive=intmap(doc["primitive"]),
        strata=intmap(doc["strata"]),
        bijections=intmap(doc["bijections"], cast=bool),
        bounds={int(k): bounds_parse(v) for k, v in sorted(doc["bounds"].items(), key=lambda kv: int(kv[0]))},
    )
