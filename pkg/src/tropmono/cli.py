"""Command-line front end.

Coordinate sets given with ``--I`` are 1-based and comma separated; an
empty string means the empty set. Points for ``--at`` are comma separated
coordinates, several points separated by ``;``.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .fans import AmbientCone, FanError, WeightedFan, dual_fan, is_balanced, stable_intersect
from .lattice_core import LatticeError
from .monodromy import (
    InvariantBreach,
    MonodromyError,
    TneQuery,
    codim0_from_resolution,
    acampo_zeta,
    coroldim4_classify,
    phi_from_resolution,
    tne_report,
    zeta_factors,
)
from .polyhedra import (
    PolyhedronError,
    fiber,
    fiber_polyhedron,
    lattice_volume,
    project,
    v_faces,
)
from .relative import RelativeError, relative_mixed_volume, relative_mixed_volume_fans, relkbk_euler
from .serialize import (
    SchemaError,
    face_to_json,
    fan_from_json,
    fan_to_json,
    parse_rat,
    polyhedron_from_json,
    polyhedron_to_json,
    rat,
    relative_from_json,
    report_to_json,
    resolution_from_json,
    zeta_to_json,
)

EXIT_OK, EXIT_SCHEMA, EXIT_PRECONDITION, EXIT_BREACH = 0, 2, 3, 4


def _load(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc.msg})") from None


def _coords(spec: Optional[str], n: int) -> tuple[int, ...]:
    if spec is None or not spec.strip():
        return ()
    try:
        I = tuple(sorted({int(x) - 1 for x in spec.split(",")}))
    except ValueError:
        raise SchemaError(f"bad coordinate set {spec!r}") from None
    if any(not 0 <= i < n for i in I):
        raise SchemaError(f"coordinate set {spec!r} out of range 1..{n}")
    return I


def _points(spec: str) -> list[tuple[Fraction, ...]]:
    return [tuple(parse_rat(x) for x in p.split(",")) for p in spec.split(";") if p.strip()]


def _one_input(args) -> str:
    if not args.input:
        raise SchemaError("this subcommand needs --input")
    return args.input


def _many_inputs(args) -> list[str]:
    if not args.inputs:
        raise SchemaError("this subcommand needs --inputs")
    return args.inputs


def _fan_or_polyhedron(d: dict) -> WeightedFan:
    if "cells" in d:
        return fan_from_json(d)
    P = polyhedron_from_json(d)
    return dual_fan(P, 1, AmbientCone.full(P.dim))


def _intersect(F: WeightedFan, G: WeightedFan, args) -> WeightedFan:
    out = stable_intersect(F, G, args.seed)
    for s in range(1, args.verify_displacements + 1):
        again = stable_intersect(F, G, args.seed + 1000 * s)
        if again.key() != out.key():
            raise InvariantBreach(f"stable intersection depends on the displacement (seed {args.seed + 1000 * s})")
    if not is_balanced(out):
        raise InvariantBreach("stable intersection is not balanced")
    return out


# ----------------------------------------------------------------------
# subcommands

def cmd_info(args) -> dict:
    P = polyhedron_from_json(_load(_one_input(args)))
    out = polyhedron_to_json(P)
    out.update(bounded=P.bounded, affine_dim=P.affine_dim, faces=len(P.faces),
               bounded_faces=sum(1 for F in P.faces if F.bounded))
    return out


def cmd_volume(args) -> dict:
    P = polyhedron_from_json(_load(_one_input(args)))
    return {"volume": rat(lattice_volume(P))}


def cmd_vfaces(args) -> dict:
    P = polyhedron_from_json(_load(_one_input(args)))
    I = _coords(args.I, P.dim)
    NI = project(P, I)
    out = []
    for vf in v_faces(NI):
        d = face_to_json(vf.face)
        d.update(m=str(vf.m), J=[j + 1 for j in vf.J], I=[i + 1 for i in vf.I],
                 support=[j + 1 for j in vf.face.J])
        out.append(d)
    return {"projection": polyhedron_to_json(NI), "vfaces": out}


def cmd_fiber(args) -> dict:
    P = polyhedron_from_json(_load(_one_input(args)))
    I = _coords(args.I, P.dim)
    if not args.at:
        raise SchemaError("fiber needs --at")
    (b,) = _points(args.at)
    return {"fiber": polyhedron_to_json(fiber(P, I, b))}


def cmd_fiberpoly(args) -> dict:
    P = polyhedron_from_json(_load(_one_input(args)))
    I = _coords(args.I, P.dim)
    NI = project(P, I)
    if args.at:
        pts = sorted(_points(args.at))
        faces = [F for F in NI.faces if F.bounded and sorted(F.vertices) == pts]
        if not faces:
            raise PolyhedronError("the given points are not the vertices of a bounded face of the projection")
        B = faces[0]
    else:
        B = NI
    out = fiber_polyhedron(P, I, B, args.method)
    return {"fiber_polyhedron": polyhedron_to_json(out)}


def cmd_dualfan(args) -> dict:
    P = polyhedron_from_json(_load(_one_input(args)))
    amb = AmbientCone.full(P.dim) if args.global_ else None
    F = dual_fan(P, args.k_dim, amb, method=args.method, seed=args.seed)
    if not is_balanced(F):
        raise InvariantBreach("dual fan is not balanced")
    return {"fan": fan_to_json(F), "balanced": True}


def cmd_intersect(args) -> dict:
    fans = [_fan_or_polyhedron(_load(p)) for p in _many_inputs(args)]
    acc = fans[0]
    for G in fans[1:]:
        acc = _intersect(acc, G, args)
    out = {"fan": fan_to_json(acc)}
    if acc.dim == 0:
        out["number"] = rat(acc.total_weight() if acc.cells else 0)
    return out


def cmd_mixedvol(args) -> dict:
    polys = [polyhedron_from_json(_load(p)) for p in _many_inputs(args)]
    n = polys[0].dim
    if len(polys) != n or any(not P.bounded or P.dim != n for P in polys):
        raise PolyhedronError("mixedvol needs n bounded polytopes in dimension n")
    amb = AmbientCone.full(n)
    acc = dual_fan(polys[0], 1, amb)
    for P in polys[1:]:
        acc = _intersect(acc, dual_fan(P, 1, amb), args)
    return {"mixed_volume": rat(acc.total_weight() if acc.cells else 0)}


def cmd_relmv(args) -> dict:
    rps = [relative_from_json(_load(p)) for p in _many_inputs(args)]
    mv = relative_mixed_volume(rps, jobs=args.jobs)
    out = {"relative_mixed_volume": rat(mv)}
    if args.verify_displacements:
        via_fans = relative_mixed_volume_fans(rps, args.seed)
        if via_fans != mv:
            raise InvariantBreach("polarization and relative fan product disagree")
        out["via_fans"] = rat(via_fans)
    return out


def cmd_relkbk(args) -> dict:
    rps = [relative_from_json(_load(p)) for p in _many_inputs(args)]
    return {"euler": rat(relkbk_euler(rps, args.n, jobs=args.jobs))}


def cmd_zeta(args) -> dict:
    P = polyhedron_from_json(_load(_one_input(args)))
    return {"zeta": zeta_to_json(zeta_factors(P, _coords(args.I, P.dim)))}


def cmd_tne(args) -> dict:
    P = polyhedron_from_json(_load(_one_input(args)))
    reports = tne_report(P, allow_tautological=args.allow_tautological, jobs=args.jobs)
    return {"zeta": zeta_to_json(zeta_factors(P)), "reports": [report_to_json(r) for r in reports]}


def _query(args, P) -> TneQuery:
    if args.m is None:
        raise SchemaError("this subcommand needs --m")
    return TneQuery(P, _coords(args.I, P.dim), args.m, args.k, args.allow_tautological)


def cmd_classify(args) -> dict:
    P = polyhedron_from_json(_load(_one_input(args)))
    q = _query(args, P)
    return {"I": [i + 1 for i in q.I], "m": str(q.m), "tag": coroldim4_classify(q)}


def cmd_resolution_tne(args) -> dict:
    rd = resolution_from_json(_load(_one_input(args)))
    if args.m is None:
        raise SchemaError("this subcommand needs --m")
    I = _coords(args.I, rd.n)
    classes = phi_from_resolution(rd, I, args.m)
    w = codim0_from_resolution(rd, I, args.m)
    return {
        "I": [i + 1 for i in I],
        "m": str(args.m),
        "codim0": w != 0,
        "codim0_weight": rat(w),
        "classes": {str(d): fan_to_json(F) for d, F in classes.items()},
        "zeta": zeta_to_json(acampo_zeta(rd, I)),
    }


COMMANDS: dict[str, Callable] = {
    "info": cmd_info,
    "volume": cmd_volume,
    "vfaces": cmd_vfaces,
    "fiber": cmd_fiber,
    "fiberpoly": cmd_fiberpoly,
    "dualfan": cmd_dualfan,
    "intersect": cmd_intersect,
    "mixedvol": cmd_mixedvol,
    "relmv": cmd_relmv,
    "relkbk": cmd_relkbk,
    "zeta": cmd_zeta,
    "tne": cmd_tne,
    "classify": cmd_classify,
    "resolution-tne": cmd_resolution_tne,
}


# ----------------------------------------------------------------------
# output

def _human(cmd: str, out: dict) -> str:
    if cmd == "tne":
        lines = [f"zeta at the origin: {out['zeta']['text']}", ""]
        lines.append(f"{'I':<12}{'m':>4}  {'codim0':<7}{'codim1':<7}{'case':<6} zeta")
        for r in out["reports"]:
            I = "{" + ",".join(map(str, r["I"])) + "}"
            c1 = "-" if "codim1" not in r else ("yes" if r["codim1"] else "no")
            lines.append(f"{I:<12}{r['m']:>4}  {'yes' if r['codim0'] else 'no':<7}{c1:<7}"
                         f"{r.get('case') or '-':<6} {r['zeta']['text']}")
        return "\n".join(lines)
    if cmd == "zeta":
        return out["zeta"]["text"]
    if cmd == "classify":
        return out["tag"]
    lines = []
    for key, val in out.items():
        if isinstance(val, (dict, list)):
            val = json.dumps(val, sort_keys=True)
        lines.append(f"{key}: {val}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tropmono", description="Tropical fans, Newton polyhedra and monodromy eigenvalues.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--input", help="input JSON file")
    p.add_argument("--inputs", nargs="+", help="several input JSON files")
    p.add_argument("--I", help="1-based coordinate set, e.g. 1,2 (empty for the empty set)")
    p.add_argument("--m", type=int, help="denominator m of the eigenvalue exp(2 pi i k/m)")
    p.add_argument("--k", type=int, default=1, help="numerator k, coprime to m")
    p.add_argument("--at", help="point(s) 'x,y;x,y' for fiber and fiberpoly")
    p.add_argument("--dim-k", dest="k_dim", type=int, default=1, help="face dimension k for dualfan")
    p.add_argument("--n", type=int, help="ambient dimension for relkbk (defaults to the input dimension)")
    p.add_argument("--method", default=None, help="dualfan: direct|intersection|both; fiberpoly: auto|lattice|chambers")
    p.add_argument("--global", dest="global_", action="store_true", help="dualfan in the whole space")
    p.add_argument("--human", action="store_true", help="print a table instead of JSON")
    p.add_argument("--seed", type=int, default=0, help="seed for generic displacements")
    p.add_argument("--verify-displacements", type=int, default=0, metavar="N",
                   help="recompute stable intersections with N extra seeds")
    p.add_argument("--allow-tautological", action="store_true", help="accept tautological denominators")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    return p


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_SCHEMA if exc.code else EXIT_OK
    if args.command == "dualfan":
        args.method = args.method or "direct"
    elif args.command == "fiberpoly":
        args.method = args.method or "auto"
    try:
        out = COMMANDS[args.command](args)
    except SchemaError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_SCHEMA
    except InvariantBreach as exc:
        print(f"invariant breach: {exc}", file=stderr)
        return EXIT_BREACH
    except (MonodromyError, PolyhedronError, RelativeError, FanError, LatticeError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_PRECONDITION
    if args.human:
        print(_human(args.command, out), file=stdout)
    else:
        print(json.dumps(out, indent=2, sort_keys=True), file=stdout)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
