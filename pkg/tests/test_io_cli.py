import json
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from frobsesh.catalog import CATALOG, corpus, hexagon_divisor
from frobsesh.cli import main
from frobsesh.io import FanInvalid, ParseError, SchemaError, dump_input, parse_input, spec_for, to_jsonable

DATA = Path(__file__).resolve().parent.parent / "data"

P2 = {"dim": 2, "rays": [[1, 0], [0, 1], [-1, -1]], "max_cones": [[0, 1], [1, 2], [2, 0]], "divisor": [0, 0, 1], "p": 2}


def write(tmp_path, data, name="in.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data) if isinstance(data, dict) else data)
    return str(path)


def test_parse_minimal():
    spec = parse_input(json.dumps(P2))
    assert spec.dim == 2 and spec.p == 2 and spec.cone is None and spec.m_max == 200
    assert spec.toric_divisor().coeffs == (0, 0, 1)


def test_parse_rejects_composite_p():
    with pytest.raises(SchemaError, match="p: p must be prime, got 4"):
        parse_input(json.dumps({**P2, "p": 4}))


def test_parse_error_location():
    with pytest.raises(ParseError, match=r"line 2, column"):
        parse_input('{"dim": 2,\n "rays": [1, }')


@pytest.mark.parametrize(
    "patch, msg",
    [
        ({"extra": 1}, "unknown field"),
        ({"dim": "2"}, "dim"),
        ({"divisor": [0, 1]}, "coefficients"),
        ({"rays": [[1, 0], [0, 1], [-1]]}, r"rays\[2\]"),
        ({"cone": 7}, "cone"),
        ({"m_max": 0}, "m_max"),
    ],
)
def test_schema_errors(patch, msg):
    with pytest.raises(SchemaError, match=msg):
        parse_input(json.dumps({**P2, **patch}))


def test_missing_field():
    data = dict(P2)
    del data["p"]
    with pytest.raises(SchemaError, match="missing"):
        parse_input(json.dumps(data))


def test_invalid_fan():
    with pytest.raises(FanInvalid):
        parse_input(json.dumps({**P2, "max_cones": [[0, 1], [1, 2]]}))
    with pytest.raises(FanInvalid):
        parse_input(json.dumps({**P2, "rays": [[2, 0], [0, 1], [-1, -1]]}))


def test_round_trip_catalog():
    for inst in corpus(list(CATALOG) + ["hexagon"], 2 * (len(CATALOG) + 1), seed=1):
        spec = spec_for(inst.divisor, 3, cone=0, e_cap=2)
        assert parse_input(dump_input(spec)) == spec


@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 500), st.integers(1, 6), st.none() | st.integers(0, 99))
def test_round_trip_options(p, m_max, e_cap, seed):
    spec = spec_for(hexagon_divisor(), p, m_max=m_max, e_cap=e_cap, seed=seed)
    assert parse_input(dump_input(spec)) == spec


def test_data_files_parse():
    files = sorted(DATA.glob("*.json"))
    assert files
    for f in files:
        parse_input(f.read_text())


def test_to_jsonable_fractions():
    from fractions import Fraction

    assert to_jsonable({"a": (Fraction(1, 2), 3)}) == {"a": ["1/2", 3]}


# command line -------------------------------------------------------------


def test_cli_validate(tmp_path, capsys):
    assert main(["validate", "--input", write(tmp_path, P2)]) == 0
    assert "smooth: True" in capsys.readouterr().out
    bad = write(tmp_path, {**P2, "max_cones": [[0, 1], [1, 2]]}, "bad.json")
    assert main(["validate", "--input", bad]) == 1
    assert "complete: False" in capsys.readouterr().out


def test_cli_polytope(tmp_path, capsys):
    assert main(["polytope", "--input", write(tmp_path, P2), "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert sorted(out["polytope"]["vertices"]) == [["0", "0"], ["0", "1"], ["1", "0"]]
    assert out["ample"] and out["nef"] and out["globally_generated"]


def test_cli_seshadri_hexagon(capsys):
    assert main(["seshadri", "--input", str(DATA / "hexagon.json"), "--json"]) == 0
    (rep,) = json.loads(capsys.readouterr().out)
    assert rep["epsilon"] == "1" and rep["epsilon_frobenius"] == "1"


def test_cli_jets(tmp_path, capsys):
    assert main(["jets", "--input", write(tmp_path, P2), "--m-max", "14", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    rows = {r["m"]: r for r in out["rows"]}
    assert rows[6]["e_frobenius"] == 2 and rows[14]["e_frobenius"] == 3
    assert out["epsilon_frobenius"] == "1/2"


def test_cli_oracle(tmp_path, capsys):
    path = write(tmp_path, P2)
    assert main(["oracle", "--input", path, "--m", "6", "--e-cap", "3"]) == 0
    out = capsys.readouterr().out
    assert "oracle e=2 closed-form e=2 agree=True" in out
    prefix = tmp_path / "mat"
    assert main(["oracle", "--input", path, "--m", "2", "--order", "1", "--dump", str(prefix)]) == 0
    head = (tmp_path / "mat.1.txt").read_text().splitlines()[0]
    assert head == "2 2 1 1 4 6"


def test_cli_oracle_classical_multipoint(tmp_path, capsys):
    path = write(tmp_path, P2)
    assert main(["oracle", "--input", path, "--m", "3", "--kind", "classical", "--order", "1", "--points", "0,1,2"]) == 0
    assert "surjective=True" in capsys.readouterr().out


def test_cli_adjoint(capsys):
    assert main(["adjoint", "--input", str(DATA / "hexagon.json"), "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["adjoint_coeffs"] == [-1, -1, 0, 1, 1, 0]
    assert out["globally_generated"] and out["criterion_ok"]


def test_cli_trace(capsys):
    assert main(["trace", "y^3 dy"]) == 0
    assert capsys.readouterr().out.strip() == "y dy"
    assert main(["trace", "y^11 dy", "--e", "2"]) == 0
    assert capsys.readouterr().out.strip() == "y^2 dy"
    assert main(["trace", "y1^2*y2^5 dy", "--p", "3"]) == 0
    assert capsys.readouterr().out.strip() == "y2 dy"


def test_cli_svg(tmp_path, capsys):
    out = tmp_path / "hex.svg"
    assert main(["svg", "--input", str(DATA / "hexagon.json"), "--out", str(out)]) == 0
    assert 'id="cube"' in out.read_text()
    assert main(["svg", "--input", str(DATA / "p3.json"), "--out", str(out)]) == 2


def test_cli_error_exit_codes(tmp_path, capsys):
    assert main(["seshadri", "--input", write(tmp_path, "{not json")]) == 2
    assert "ParseError" in capsys.readouterr().err
    assert main(["seshadri", "--input", write(tmp_path, {**P2, "p": 4})]) == 2
    assert "p must be prime" in capsys.readouterr().err
    assert main(["seshadri", "--input", write(tmp_path, P2), "--p", "6"]) == 2
    not_ample = write(tmp_path, {**P2, "divisor": [0, 0, 0]}, "na.json")
    assert main(["seshadri", "--input", not_ample]) == 2
    assert "NotAmple" in capsys.readouterr().err
    assert main(["seshadri"]) == 2


def test_cli_scan_small(tmp_path, capsys):
    out = tmp_path / "scan.txt"
    assert main(["scan", "--catalog", "P2,hexagon", "--count", "4", "--seed", "3", "--out", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("id fan divisor")
    assert "FAIL" not in text
