import io
import json
import random

import pytest

from _oracles import random_germ_points, random_polytope
from tropmono import cli
from tropmono.fans import AmbientCone, WeightedFan, dual_fan
from tropmono.monodromy import acampo_zeta, resolution_data_from_polyhedron, zeta_factors
from tropmono.polyhedra import germ, polyhedron
from tropmono.serialize import (
    SchemaError,
    fan_from_json,
    fan_to_json,
    parse_rat,
    polyhedron_from_json,
    polyhedron_to_json,
    rat,
    resolution_from_json,
    resolution_to_json,
    zeta_from_json,
    zeta_to_json,
)


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def write(tmp_path):
    def _write(name, data):
        p = tmp_path / name
        p.write_text(data if isinstance(data, str) else json.dumps(data))
        return str(p)
    return _write


CUSP = {"dim": 2, "vertices": [[2, 0], [0, 3]]}
TRIANGLE = {"dim": 2, "vertices": [[0, 0], [1, 0], [0, 1]], "recession": []}
SEGMENT = {"dim": 2, "vertices": [[0, 0], [1, 1]], "recession": []}
N3 = {"dim": 3, "vertices": [[0, 2, 0], [0, 0, 2]]}


# ----------------------------------------------------------------------
# serialization


def test_rationals_round_trip():
    for x in ["0", "-3", "7/4", "-1/2"]:
        assert rat(parse_rat(x)) == x
    assert parse_rat(5) == 5
    with pytest.raises(SchemaError):
        parse_rat("one")


@pytest.mark.parametrize("seed", range(8))
def test_polyhedron_round_trip(seed):
    rng = random.Random(seed)
    n = rng.choice([2, 3])
    P = polyhedron(random_polytope(rng, n, 6))
    assert polyhedron_from_json(json.loads(json.dumps(polyhedron_to_json(P)))) == P
    G = germ(random_germ_points(rng, n))
    assert polyhedron_from_json(polyhedron_to_json(G)) == G


def test_missing_recession_means_orthant():
    assert polyhedron_from_json(CUSP) == germ([(2, 0), (0, 3)])


@pytest.mark.parametrize("bad", [
    {"vertices": [[0, 0]]},
    {"dim": 2, "vertices": []},
    {"dim": 2, "vertices": [[0, 0, 0]]},
    {"dim": 2, "vertices": [[0, 0]], "recession": [["1/2", 0]]},
    [1, 2],
])
def test_bad_polyhedra_raise_schema_errors(bad):
    with pytest.raises(SchemaError):
        polyhedron_from_json(bad)


@pytest.mark.parametrize("seed", range(6))
def test_fan_round_trip(seed):
    rng = random.Random(seed)
    n = rng.choice([2, 3])
    P = polyhedron(random_polytope(rng, n, 6))
    for k in range(1, n + 1):
        F = dual_fan(P, k, AmbientCone.full(n))
        G = fan_from_json(json.loads(json.dumps(fan_to_json(F))))
        assert G.equivalent(F)
    loc = dual_fan(germ(random_germ_points(rng, n)), 1)
    assert fan_from_json(fan_to_json(loc)).equivalent(loc)


def test_fan_schema_errors():
    with pytest.raises(SchemaError, match="'n'"):
        fan_from_json({"dim": 1, "ambient": {"gens": []}, "cells": []})
    with pytest.raises(SchemaError, match="full-dimensional"):
        fan_from_json({"dim": 0, "ambient": {"n": 2, "gens": [[1, 0]]}, "cells": []})
    with pytest.raises(SchemaError, match="dimension"):
        fan_from_json({"dim": 1, "ambient": {"n": 2, "full": True},
                       "cells": [{"gens": [[1, 0], [0, 1]], "weight": "1"}]})


def test_zeta_round_trip():
    z = zeta_factors(germ([(2, 0), (0, 3)]))
    d = zeta_to_json(z)
    assert d == {"factors": {"2": "1", "3": "1", "6": "-1"}, "text": "(1-t^2)^1 (1-t^3)^1 (1-t^6)^-1"}
    assert zeta_from_json(d) == z


@pytest.mark.parametrize("seed", range(5))
def test_resolution_round_trip(seed):
    rng = random.Random(seed)
    N = germ(random_germ_points(rng, rng.choice([2, 3])))
    rd = resolution_data_from_polyhedron(N)
    back = resolution_from_json(json.loads(json.dumps(resolution_to_json(rd))))
    assert back.n == rd.n
    assert acampo_zeta(back, ()) == acampo_zeta(rd, ()) == zeta_factors(N)


def test_resolution_schema_errors():
    with pytest.raises(SchemaError):
        resolution_from_json({"fan": []})
    with pytest.raises(SchemaError, match="out of range"):
        resolution_from_json({"n": 2, "fan": [{"gens": [[-1, 0]], "I": [3]}], "strata": []})


# ----------------------------------------------------------------------
# command line examples


def test_tne_on_the_cusp(write):
    code, out, _ = run("tne", "--input", write("cusp.json", CUSP))
    assert code == 0
    d = json.loads(out)
    assert d["zeta"]["factors"] == {"2": "1", "3": "1", "6": "-1"}
    assert d["reports"]
    assert all("codim1" not in r for r in d["reports"])
    assert [(r["I"], r["m"]) for r in d["reports"] if r["codim0"]] == [([], "6")]


def test_mixedvol_triangle_and_segment(write):
    code, out, _ = run("mixedvol", "--inputs", write("T.json", TRIANGLE), write("S.json", SEGMENT))
    assert code == 0
    assert json.loads(out) == {"mixed_volume": "2"}


def test_intersect_reports_the_number(write):
    code, out, _ = run("intersect", "--inputs", write("T.json", TRIANGLE), write("S.json", SEGMENT),
                       "--verify-displacements", "3")
    assert code == 0
    assert json.loads(out)["number"] == "2"


def test_classify_case2(write):
    code, out, _ = run("classify", "--input", write("n3.json", N3), "--I", "1", "--m", "2")
    assert code == 0
    assert json.loads(out)["tag"] == "CASE2"
    code, out, _ = run("classify", "--input", write("n3.json", N3), "--I", "1", "--m", "5", "--human")
    assert code == 0 and out.strip() == "CASE1"


def test_volume_and_info(write):
    code, out, _ = run("volume", "--input", write("T.json", TRIANGLE))
    assert code == 0 and json.loads(out) == {"volume": "1"}
    code, out, _ = run("info", "--input", write("cusp.json", CUSP))
    d = json.loads(out)
    assert d["bounded"] is False and d["bounded_faces"] == 3


def test_vfaces_and_fibers(write):
    path = write("n3.json", N3)
    code, out, _ = run("vfaces", "--input", path, "--I", "1")
    assert code == 0
    d = json.loads(out)
    assert d["projection"]["dim"] == 2
    assert sorted(vf["support"] for vf in d["vfaces"]) == [[1], [1, 2], [2]]
    assert all(vf["m"] == "2" for vf in d["vfaces"])
    code, out, _ = run("fiber", "--input", path, "--I", "1", "--at", "1,1")
    assert code == 0 and json.loads(out)["fiber"]["vertices"] == [["0"]]
    code, out, _ = run("fiberpoly", "--input", path, "--I", "1", "--at", "2,0;0,2")
    assert code == 0 and json.loads(out)["fiber_polyhedron"]["dim"] == 1


def test_dualfan_round_trips_through_intersect(write):
    code, out, _ = run("dualfan", "--input", write("T.json", TRIANGLE), "--global")
    assert code == 0
    fan = json.loads(out)["fan"]
    assert fan_from_json(fan).equivalent(dual_fan(polyhedron([(0, 0), (1, 0), (0, 1)]), 1, AmbientCone.full(2)))
    f = write("fan.json", fan)
    code, out, _ = run("intersect", "--inputs", f, f)
    assert json.loads(out)["number"] == "1"


def test_relmv_with_verification(write):
    A = {"dim": 2, "vertices": [[0, 0], [1, 0]], "recession": [[0, 1]]}
    r1 = write("r1.json", {"A": A, "B": {"dim": 2, "vertices": [[0, 2], [1, 0]], "recession": [[0, 1]]}})
    r2 = write("r2.json", {"A": A, "B": {"dim": 2, "vertices": [[0, 1], [1, 3]], "recession": [[0, 1]]}})
    code, out, _ = run("relmv", "--inputs", r1, r2, "--verify-displacements", "1")
    assert code == 0
    assert json.loads(out) == {"relative_mixed_volume": "1", "via_fans": "1"}
    code, out, _ = run("relkbk", "--inputs", r1)
    assert json.loads(out) == {"euler": "-2"}


def test_resolution_tne_matches_the_polyhedron(write):
    rd = resolution_data_from_polyhedron(germ([(2, 0), (0, 3)]))
    code, out, _ = run("resolution-tne", "--input", write("rd.json", resolution_to_json(rd)), "--m", "6")
    assert code == 0
    d = json.loads(out)
    assert d["codim0"] is True
    assert d["zeta"]["factors"] == {"2": "1", "3": "1", "6": "-1"}


def test_human_tne_table(write):
    code, out, _ = run("tne", "--input", write("cusp.json", CUSP), "--human")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "zeta at the origin: (1-t^2)^1 (1-t^3)^1 (1-t^6)^-1"
    assert lines[2].split() == ["I", "m", "codim0", "codim1", "case", "zeta"]
    assert any(l.startswith("{}") and l.split()[1:3] == ["6", "yes"] for l in lines[3:])


def test_same_seed_gives_identical_output(write):
    paths = [write(f"p{i}.json", {"dim": 3, "vertices": [list(v) for v in random_polytope(random.Random(i), 3, 6)],
                                  "recession": []}) for i in range(3)]
    first = run("mixedvol", "--inputs", *paths, "--seed", "7")
    assert first[0] == 0
    assert run("mixedvol", "--inputs", *paths, "--seed", "7") == first
    n4 = write("n4.json", {"dim": 4, "vertices": [[1, 1, 2, 0], [1, 1, 0, 2], [2, 0, 1, 1], [0, 2, 1, 1]]})
    assert run("tne", "--input", n4) == run("tne", "--input", n4)


# ----------------------------------------------------------------------
# exit codes


def test_schema_errors_exit_2(write):
    assert run("volume", "--input", write("bad.json", "{not json"))[0] == 2
    assert run("volume", "--input", write("nodim.json", {"vertices": [[0, 0]]}))[0] == 2
    assert run("volume")[0] == 2
    assert run("nosuchcommand")[0] == 2
    assert run("classify", "--input", write("n3.json", N3), "--I", "1")[0] == 2
    assert run("classify", "--input", write("n3.json", N3), "--I", "9", "--m", "2")[0] == 2
    code, _, err = run("volume", "--input", "/nonexistent/x.json")
    assert code == 2 and err.startswith("error:")


def test_precondition_errors_exit_3(write):
    taut = write("taut.json", {"dim": 2, "vertices": [[2, 2], [0, 5]]})
    code, _, err = run("classify", "--input", taut, "--m", "2")
    assert code == 3 and "tautological" in err
    assert run("classify", "--input", taut, "--m", "2", "--allow-tautological")[0] == 0
    cusp = write("cusp.json", CUSP)
    assert run("mixedvol", "--inputs", cusp, cusp)[0] == 3
    assert run("classify", "--input", cusp, "--I", "1", "--m", "2")[0] == 3


def test_invariant_breach_exits_4(write, monkeypatch):
    real = cli.stable_intersect

    def shaky(F, G, seed=0):
        out = real(F, G, seed)
        if seed:
            return WeightedFan(out.ambient, out.dim, [(c, 2 * w) for c, w in out.cells])
        return out

    monkeypatch.setattr(cli, "stable_intersect", shaky)
    T, S = write("T.json", TRIANGLE), write("S.json", SEGMENT)
    assert run("mixedvol", "--inputs", T, S)[0] == 0
    code, out, err = run("mixedvol", "--inputs", T, S, "--verify-displacements", "2")
    assert code == 4 and out == "" and err.startswith("invariant breach")
