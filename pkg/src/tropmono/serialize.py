"""JSON encodings. Integers and rationals travel as decimal strings ("p" or "p/q")."""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .cones import Cone
from .fans import AmbientCone, WeightedFan
from .monodromy import Orbit, ResolutionData, Stratum, TneReport, ZetaFactors
from .polyhedra import Face, LatticePolyhedron, VirtualPolyhedron, orthant_rays
from .relative import RelativePolyhedron


class SchemaError(ValueError):
    """Input does not match the expected JSON layout (CLI exit code 2)."""


def rat(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rat(s) -> Fraction:
    if isinstance(s, bool) or isinstance(s, float):
        raise SchemaError(f"expected an exact number, got {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise SchemaError(f"expected a number string, got {s!r}")
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError):
        raise SchemaError(f"not a rational number: {s!r}") from None


def parse_int(s) -> int:
    q = parse_rat(s)
    if q.denominator != 1:
        raise SchemaError(f"expected an integer, got {s!r}")
    return int(q)


def _vec(v, n=None, integral=False) -> tuple:
    if not isinstance(v, list):
        raise SchemaError(f"expected a list of numbers, got {v!r}")
    out = tuple(parse_int(x) if integral else parse_rat(x) for x in v)
    if n is not None and len(out) != n:
        raise SchemaError(f"vector {v!r} does not have length {n}")
    return out


def _vecs(vs, n, integral=False) -> list[tuple]:
    if not isinstance(vs, list):
        raise SchemaError("expected a list of vectors")
    return [_vec(v, n, integral) for v in vs]


def _field(d: dict, key: str, default: Any = ...) -> Any:
    if not isinstance(d, dict):
        raise SchemaError("expected a JSON object")
    if key not in d:
        if default is ...:
            raise SchemaError(f"missing field {key!r}")
        return default
    return d[key]


# ----------------------------------------------------------------------
# polyhedra

def polyhedron_to_json(P: LatticePolyhedron) -> dict:
    out = {
        "dim": P.dim,
        "vertices": [[rat(x) for x in v] for v in P.vertices],
        "recession": [[rat(x) for x in r] for r in P.rays],
    }
    if P.lineality:
        out["lineality"] = [[rat(x) for x in l] for l in P.lineality]
    return out


def polyhedron_from_json(d: dict) -> LatticePolyhedron:
    """``{"dim", "vertices", "recession"}``; a missing recession means the positive orthant."""
    n = _field(d, "dim")
    if not isinstance(n, int) or n < 0:
        n = parse_int(n)
    verts = _vecs(_field(d, "vertices"), n)
    if not verts:
        raise SchemaError("a polyhedron needs at least one vertex")
    rec = d.get("recession")
    rays = orthant_rays(n) if rec is None else _vecs(rec, n, integral=True)
    lin = _vecs(d.get("lineality", []), n, integral=True)
    return LatticePolyhedron(n, verts, [r for r in rays if any(r)], [l for l in lin if any(l)])


def face_to_json(F: Face) -> dict:
    return {
        "dim": F.dim,
        "vertices": [[rat(x) for x in v] for v in F.vertices],
        "recession": [[rat(x) for x in r] for r in F.rays],
        "bounded": F.bounded,
        "support": list(F.J),
    }


def virtual_to_json(V: VirtualPolyhedron) -> dict:
    return {"plus": polyhedron_to_json(V.plus), "minus": polyhedron_to_json(V.minus)}


def relative_from_json(d: dict) -> RelativePolyhedron:
    return RelativePolyhedron(polyhedron_from_json(_field(d, "A")), polyhedron_from_json(_field(d, "B")))


# ----------------------------------------------------------------------
# fans

def _cone_to_json(c: Cone) -> dict:
    return {"gens": [[rat(x) for x in r] for r in c.rays], "lineality": [[rat(x) for x in l] for l in c.lineality]}


def _cone_from_json(d: dict, n: int) -> Cone:
    return Cone.from_generators(n, _vecs(_field(d, "gens"), n, integral=True),
                                _vecs(d.get("lineality", []), n, integral=True))


def fan_to_json(F: WeightedFan) -> dict:
    amb = _cone_to_json(F.ambient.closure)
    amb["n"] = F.n
    cells = []
    for c, w in F.cells:
        cell = _cone_to_json(c)
        cell["weight"] = rat(w)
        cells.append(cell)
    return {"dim": F.dim, "ambient": amb, "cells": cells}


def fan_from_json(d: dict) -> WeightedFan:
    k = _field(d, "dim")
    amb = _field(d, "ambient")
    n = amb.get("n") if isinstance(amb, dict) else None
    if n is None:
        raise SchemaError("ambient needs its dimension 'n'")
    n = parse_int(n)
    ambient = AmbientCone.full(n) if amb.get("full") else AmbientCone(n, _cone_from_json(amb, n))
    if ambient.closure.dim != n:
        raise SchemaError("ambient cone must be full-dimensional")
    cells = []
    for c in _field(d, "cells"):
        cone = _cone_from_json(c, n)
        if cone.dim != k:
            raise SchemaError(f"cell of dimension {cone.dim} in a {k}-dimensional fan")
        cells.append((cone, parse_rat(_field(c, "weight"))))
    return WeightedFan(ambient, k, cells)


# ----------------------------------------------------------------------
# monodromy

def zeta_to_json(z: ZetaFactors) -> dict:
    return {"factors": {str(M): str(e) for M, e in z.factors}, "text": str(z)}


def zeta_from_json(d: dict) -> ZetaFactors:
    return ZetaFactors.from_map({parse_int(M): parse_int(e) for M, e in _field(d, "factors").items()})


def report_to_json(r: TneReport, one_based: bool = True) -> dict:
    shift = 1 if one_based else 0
    out = {
        "I": [i + shift for i in r.I],
        "m": str(r.m),
        "codim0": r.codim0,
        "codim0_weight": rat(r.codim0_weight),
        "zeta": zeta_to_json(r.zeta),
    }
    if r.codim1 is not None:
        out["codim1"] = r.codim1
        out["witness"] = None if r.witness is None else {
            "a": [str(x) for x in r.witness.a],
            "edge": [[rat(x) for x in v] for v in r.witness.B.vertices],
        }
        out["psi"] = virtual_to_json(r.psi)
        out["case"] = r.case
    return out


def resolution_from_json(d: dict) -> ResolutionData:
    fan_in = _field(d, "fan")
    if not isinstance(fan_in, list):
        raise SchemaError("'fan' must be a list of orbits")
    n = d.get("n")
    if n is None:
        if not fan_in:
            raise SchemaError("cannot infer the dimension of an empty fan; give 'n'")
        gens = _field(fan_in[0], "gens")
        if not gens:
            raise SchemaError("cannot infer the dimension; give 'n'")
        n = len(gens[0])
    n = parse_int(n)
    fan = []
    for o in fan_in:
        I = tuple(sorted(parse_int(i) - 1 for i in _field(o, "I")))
        if any(not 0 <= i < n for i in I):
            raise SchemaError("orbit coordinate set out of range")
        fan.append(Orbit(tuple(_vecs(_field(o, "gens"), n, integral=True)), I))
    strata = [Stratum(parse_int(_field(s, "M")), parse_int(_field(s, "H")), parse_int(_field(s, "E")),
                      parse_int(_field(s, "euler"))) for s in _field(d, "strata")]
    compact = [parse_int(c) for c in d.get("compact", list(range(len(fan))))]
    return ResolutionData(n, fan, strata, compact)


def resolution_to_json(rd: ResolutionData) -> dict:
    return {
        "n": str(rd.n),
        "fan": [{"gens": [[str(x) for x in g] for g in o.gens], "I": [str(i + 1) for i in o.I]} for o in rd.fan],
        "strata": [{"M": str(s.M), "H": str(s.H), "E": str(s.E), "euler": str(s.euler)} for s in rd.strata],
        "compact": [str(c) for c in rd.compact],
    }
