import json
from fractions import Fraction as F

import pytest
from hypothesis import given

from conftest import matrices
from qaffine.cli import EXIT_FAIL, EXIT_IO, EXIT_OK, EXIT_USAGE, run_cli
from qaffine.construction import construct_module
from qaffine.serialize import (
    FormatError,
    matrix_from_json,
    matrix_to_json,
    module_from_json,
    module_to_json,
    parse_module,
    system_from_json,
    system_to_json,
    trace_from_json,
    trace_to_json,
)
from qaffine.system import AssumptionError, gen_direct_sum, gen_evaluation


@given(matrices(min_rows=0, min_cols=0))
def test_matrix_round_trip(M):
    assert matrix_from_json(matrix_to_json(M), "M") == M


def test_system_round_trip():
    s = gen_direct_sum(gen_evaluation(2, F(2, 3), F(3, 2)), gen_evaluation(2, 5, F(3, 2)))
    assert system_from_json(json.loads(json.dumps(system_to_json(s)))) == s


def test_module_and_trace_round_trip():
    s = gen_evaluation(2, 1, 2)
    m, t = construct_module(s)
    assert module_from_json(module_to_json(m)) == m
    assert trace_from_json(trace_to_json(t, s.q)) == t


def test_entries_are_strings():
    obj = system_to_json(gen_evaluation(1, 1, 2))
    assert obj["q"] == "2"
    assert all(isinstance(x, str) for row in obj["R"]["entries"] for x in row)


@pytest.mark.parametrize("mutate,where", [
    (lambda o: o["R"]["entries"][0].__setitem__(1, "1/0"), "R.entries[0][1]"),
    (lambda o: o["L"]["entries"][1].__setitem__(0, 0.5), "L.entries[1][0]"),
    (lambda o: o.pop("L"), "missing field"),
    (lambda o: o.__setitem__("q", "1"), "q"),
    (lambda o: o["U"].pop(), "system.U"),
    (lambda o: o["U"].__setitem__(1, o["U"][0]), "system.U"),
])
def test_malformed_system(mutate, where):
    obj = system_to_json(gen_evaluation(1, 1, 2))
    mutate(obj)
    with pytest.raises(FormatError) as info:
        system_from_json(obj)
    assert where in str(info.value)


def test_inadmissible_system_is_not_a_format_error():
    obj = system_to_json(gen_evaluation(1, 1, 2))
    obj["R"], obj["L"] = obj["L"], obj["R"]
    with pytest.raises(AssumptionError):
        system_from_json(obj)
    assert system_from_json(obj, check=False).dim == 2


# CLI

@pytest.fixture
def files(tmp_path):
    s, m = tmp_path / "s.json", tmp_path / "m.json"
    assert run_cli(["generate", "eval", "--d", "2", "--a", "3/2", "--q", "2", "-o", str(s)]) == EXIT_OK
    assert run_cli(["construct", str(s), "-o", str(m)]) == EXIT_OK
    return tmp_path, s, m


def test_golden_path(files, capsys):
    tmp, s, m = files
    assert run_cli(["validate", str(s), "--report", str(tmp / "v.json")]) == EXIT_OK
    assert json.loads((tmp / "v.json").read_text())
    assert run_cli(["verify", str(m)]) == EXIT_OK
    capsys.readouterr()
    assert run_cli(["classify", str(m)]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "basic d=2"
    assert run_cli(["extract", str(m), "-o", str(tmp / "x.json")]) == EXIT_OK
    assert (tmp / "x.json").read_bytes() == s.read_bytes()
    assert run_cli(["decompose-sl2", str(m), "--i", "0"]) == EXIT_OK
    assert capsys.readouterr().out.strip().splitlines()[-1] == "(1, 2, 1)"


def test_construct_writes_trace(files):
    tmp, s, _ = files
    assert run_cli(["construct", str(s), "-o", str(tmp / "m2.json"), "--trace", str(tmp / "t.json"),
                    "--check-level", "fast"]) == EXIT_OK
    assert json.loads((tmp / "t.json").read_text())["rho"] == [1, 1, 1]


def test_outputs_are_deterministic(files):
    tmp, s, m = files
    assert run_cli(["construct", str(s), "-o", str(tmp / "again.json")]) == EXIT_OK
    assert (tmp / "again.json").read_bytes() == m.read_bytes()


def test_tampered_module_fails_verify(files, capsys):
    _, _, m = files
    data = json.loads(m.read_text())
    data["e0p"]["entries"][1][0] = "7"
    m.write_text(json.dumps(data))
    capsys.readouterr()
    assert run_cli(["verify", str(m)]) == EXIT_FAIL
    assert "FAIL: " in capsys.readouterr().out


def test_twist_and_pieces(files, capsys):
    tmp, _, m = files
    t = tmp / "t.json"
    assert run_cli(["twist", str(m), "--eps0", "-1", "--eps1", "1", "-o", str(t)]) == EXIT_OK
    capsys.readouterr()
    assert run_cli(["classify", str(t)]) == EXIT_FAIL
    assert capsys.readouterr().out.startswith("not basic: ")
    out = tmp / "pieces"
    assert run_cli(["pieces", str(t), "-o", str(out)]) == EXIT_OK
    manifest = json.loads((out / "manifest.json").read_text())
    nonzero = [p for p in manifest["pieces"] if p["dim"]]
    assert [p["key"] for p in nonzero] == ["piece_m1_p1_even"]
    assert parse_module(out / nonzero[0]["file"]).dim == 3


def test_invalid_system_exits_1(files, capsys):
    tmp, s, _ = files
    data = json.loads(s.read_text())
    data["R"], data["L"] = data["L"], data["R"]
    bad = tmp / "bad.json"
    bad.write_text(json.dumps(data))
    assert run_cli(["validate", str(bad)]) == EXIT_FAIL
    assert run_cli(["construct", str(bad), "-o", str(tmp / "never.json")]) == EXIT_FAIL
    assert not (tmp / "never.json").exists()


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["construct", "x.json"],
                                  ["twist", "m.json", "--eps0", "2", "--eps1", "1", "-o", "o"]])
def test_usage_errors(argv, capsys):
    assert run_cli(argv) == EXIT_USAGE


def test_bad_generate_arguments(tmp_path):
    assert run_cli(["generate", "eval", "--d", "1", "--a", "0", "-o", str(tmp_path / "s")]) == EXIT_USAGE
    assert run_cli(["generate", "eval", "--d", "1", "--a", "1", "--q", "1",
                    "-o", str(tmp_path / "s")]) == EXIT_USAGE


def test_io_and_parse_errors(tmp_path, capsys):
    assert run_cli(["verify", str(tmp_path / "missing.json")]) == EXIT_IO
    junk = tmp_path / "junk.json"
    junk.write_text("{not json")
    assert run_cli(["classify", str(junk)]) == EXIT_IO
    junk.write_text('{"q": "2"}')
    assert run_cli(["verify", str(junk)]) == EXIT_IO
    assert "missing field" in capsys.readouterr().err
