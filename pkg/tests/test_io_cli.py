import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from ihmotive import fixtures, io
from ihmotive.cli import cmd_analyze, cmd_cusp, cmd_divisor, cmd_kce, cmd_selfcheck, main
from ihmotive.errors import ParseError
from ihmotive.exact import KStarClass, QuadraticFieldElement as QF

FIX = Path(__file__).resolve().parent.parent / "fixtures"


def f(name):
    return str(FIX / name)


def test_scalar_round_trips():
    for x in (Fraction(3, 7), Fraction(-2), Fraction(0)):
        assert io.parse_rational(io.rational_to_str(x), "x") == x
    assert io.rational_to_str(Fraction(4)) == "4"
    q = QF(Fraction(3, 2), Fraction(-1, 2), 5)
    assert io.parse_qf(io.qf_to_json(q), "x") == q
    assert io.parse_point("inf", "x") is io.parse_point("inf", "y")
    u = KStarClass([(QF(1, 1, 2), Fraction(2, 3)), (7, -1)])
    assert io.parse_kstar(io.kstar_to_json(u), "x") == u
    assert io.parse_walk("0,1,-2") == ((0, True), (1, True), (2, False))
    assert io.parse_walk(io.walk_to_json(((3, False), (0, True)))) == ((3, False), (0, True))


def test_parse_errors_name_field():
    with pytest.raises(ParseError, match="field=x"):
        io.parse_rational(1.5, "x")
    with pytest.raises(ParseError, match="line 1"):
        io.load_document("{bad json")
    with pytest.raises(ParseError, match="format_version"):
        io.load_document({"format_version": "9", "kind": "surface", "payload": {}})
    with pytest.raises(ParseError, match="kind"):
        io.load_document({"format_version": "1", "kind": "nope", "payload": {}})
    with pytest.raises(ParseError, match="payload.Q"):
        io.surface_from_payload({"h1_dim": 0})


@pytest.mark.parametrize("path", sorted(p.name for p in FIX.glob("*.json")))
def test_fixture_documents_round_trip(path):
    kind, payload = io.load_document(f(path))
    loaders = {"surface": (io.surface_from_payload, io.surface_to_payload),
               "config": (io.config_from_payload, io.config_to_payload),
               "bundle": (io.bundle_from_payload, io.bundle_to_payload),
               "cusp": (io.cusp_from_payload, io.cusp_to_payload)}
    load, dump = loaders[kind]
    try:
        obj = load(payload)
    except Exception:
        # the intentionally invalid fixtures
        assert path.startswith(("nonsymmetric", "duplicate", "corrupted"))
        return
    again = load(dump(obj))
    if kind == "cusp":
        assert (again.d, again.period) == (obj.d, obj.period)
    elif kind == "bundle":
        assert again.divisors == obj.divisors and set(again.edge_values) == set(obj.edge_values)
    else:
        assert again == obj


def test_kce_document_round_trip():
    surface, config, bundle = fixtures.square_fixture()
    from ihmotive.pic import KCEInput
    inp = KCEInput(surface, config, (0,) * 4, bundle.divisors, {0: 2},
                   config.cycles["cusp"])
    again = io.kce_from_payload(json.loads(io.dumps(io.kce_to_payload(inp))), surface, config)
    assert again.intersection_vector == inp.intersection_vector
    assert again.restriction_points == inp.restriction_points
    assert again.distinguished_cycle == inp.distinguished_cycle
    assert again.edge_values[0] == inp.edge_values[0]


def test_cmd_analyze():
    rep = cmd_analyze(f("a2_surface.json"))
    assert rep.sections["ih2"]["dim"] == rep.sections["surface"]["b2"] - 2
    rep = cmd_analyze(f("smooth_surface.json"))
    assert rep.sections["projector"]["rank"] == 0
    assert main(["analyze", f("nonsymmetric_surface.json")]) == 1


def test_cmd_divisor():
    assert cmd_divisor(f("polygon5_config.json")).sections["motive"]["m1"] == 1
    assert cmd_divisor(f("tree4_config.json")).sections["motive"]["m1"] == 0
    assert main(["divisor", f("duplicate_id_config.json")]) == 1
    rep = cmd_divisor(f("polygon5_config.json"), surface_source=f("a2_surface.json"))
    assert rep.sections["euler"]["chi_c"] == 5 - 5


def test_cmd_kce():
    rep = cmd_kce(f("triangle_surface.json"), f("triangle_config.json"), f("trivial_bundle.json"))
    assert rep.sections["class"]["trivial"]
    args = (f("square_surface.json"), f("square_config.json"), f("square_bundle.json"))
    fwd = cmd_kce(*args)
    assert io.parse_kstar(fwd.sections["class"]["factors"], "x") == KStarClass.of(Fraction(81, 256))
    rev = cmd_kce(*args, orientation="reverse")
    assert rev.sections["cycle"]["orientation"] == "reverse"
    assert io.parse_kstar(rev.sections["class"]["factors"], "x") == \
        KStarClass.of(Fraction(256, 81))
    by_name = cmd_kce(*args, cycle="cusp")
    by_list = cmd_kce(*args, cycle="0,1,2,3")
    assert by_name.to_json() == by_list.to_json() == fwd.to_json()
    assert main(["kce", *args, "--cycle", "0,2"]) == 2  # BrokenWalk


def test_cmd_cusp(tmp_path):
    rep = cmd_cusp(5)
    assert rep.sections["expansion"]["period"] == [3]
    assert rep.sections["unit"]["epsilon"] == {"a": "3/2", "b": "1/2", "d": 5}
    assert rep.sections["unit_period_check"]["pass"]
    assert main(["cusp", "--d", "4"]) == 1
    out = tmp_path / "cycle.json"
    cmd_cusp(13, emit_config=out)
    assert cmd_divisor(str(out)).sections["motive"]["m1"] == 1


def test_cmd_selfcheck():
    rep = cmd_selfcheck(0)
    assert rep.status == "pass"
    assert cmd_selfcheck(3).to_json() == cmd_selfcheck(3).to_json()
    bad = cmd_selfcheck(0, [f("corrupted_surface.json")])
    assert bad.status == "fail"
    assert bad.sections["properties"]["fixture.corrupted_surface"].startswith("FAIL")


def test_structured_output_is_deterministic(capsys):
    outs = []
    for _ in range(2):
        assert main(["--format", "structured", "analyze", f("a2_surface.json")]) == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
    doc = json.loads(outs[0])
    assert doc["status"] == "pass" and doc["command"] == "analyze"
    assert main(["analyze", f("a2_surface.json"), "--format", "structured"]) == 0
    assert json.loads(capsys.readouterr().out) == doc


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "ihmotive", "cusp", "--d", "2"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "period = [4, 2]" in r.stdout
    r = subprocess.run([sys.executable, "-m", "ihmotive", "analyze", "/nonexistent.json"],
                       capture_output=True, text=True)
    assert r.returncode == 1 and "ParseError" in r.stderr
