import json

import pytest

from lefschetz.cli import CliConfig, load_ideal, run
from lefschetz.ideals import family_ideal, sec5_J


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_hilbert(capsys):
    code, out, _ = call(capsys, "hilbert", "--n", "5", "--i", "1", "--j", "3")
    assert code == 0 and out.strip() == "[1,5,8,5,1]"


def test_family_lists_nine_generators(capsys):
    code, out, _ = call(capsys, "family", "--n", "4", "--i", "2", "--j", "4", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["generators"] == 9
    code, out, _ = call(capsys, "family", "--n", "4", "--mu", "9")
    assert out.strip() == family_ideal(4, 2, 4).to_text()


def test_slp_fail_exit_code(capsys):
    code, out, _ = call(capsys, "slp", "--ideal", "n=3; x1^3,x1^2*x2,x1*x2^2,x2^3,x3^3", "--field", "q")
    assert code == 1 and "fail" in out


def test_slp_pass_json(capsys):
    code, out, _ = call(capsys, "slp", "--n", "4", "--i", "2", "--j", "4", "--field", "p:32003", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] == "pass" and doc["field"] == "p:32003"


def test_json_is_byte_stable(capsys):
    argv = ("wlp", "--ideal", "@power:4,3", "--json")
    _, first, _ = call(capsys, *argv)
    _, second, _ = call(capsys, *argv, "--workers", "3")
    assert first == second


def test_ideal_from_file(tmp_path, capsys):
    path = tmp_path / "ideal.txt"
    path.write_text(sec5_J().to_text())
    assert load_ideal(str(path)) == sec5_J()
    code, _, _ = call(capsys, "slp", "--ideal", str(path))
    assert code == 0


@pytest.mark.parametrize(
    "argv",
    [
        ("slp", "--ideal", "n=2; x1^2"),
        ("slp", "--ideal", "nonsense"),
        ("slp", "--ideal", "@family:3,1,2", "--field", "p:4"),
        ("slp",),
        ("frobnicate",),
        ("witness", "fd"),
        ("search", "--n", "3", "--d", "3", "--mu", "99"),
        ("slp", "--ideal", "@ci:2", "--workers", "0"),
    ],
)
def test_errors_exit_two(capsys, argv):
    code, _, err = call(capsys, *argv)
    assert code == 2 and err


def test_analyze(capsys):
    code, out, _ = call(capsys, "analyze", "--seq", "1,1,1")
    doc = json.loads(out)
    assert code == 0 and doc["class_H"] and not doc["mid_heavy"]
    code, out, _ = call(capsys, "analyze", "--n", "5", "--i", "1", "--j", "4")
    doc = json.loads(out)
    assert doc["sequence"] == [1, 5, 6, 2] and not doc["symmetric"] and doc["discriminant"] == 8


def test_witness_commands(capsys):
    for argv in (("witness", "fd", "--d", "5"), ("witness", "n5", "--d", "4"),
                 ("witness", "n4", "--d", "3"), ("witness", "identity", "--d-max", "20")):
        code, out, _ = call(capsys, *argv)
        assert code == 0 and json.loads(out)["ok"]


def test_search_command(capsys):
    code, out, _ = call(capsys, "search", "--n", "3", "--d", "4", "--mu", "7", "--strategy", "exhaustive", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["found"] and len(doc["ideal"]["gens"]) == 7


def test_verify_fast(capsys):
    code, out, _ = call(capsys, "verify-paper", "--level", "fast")
    assert code == 0 and "FAIL" not in out


def test_config_invariants():
    with pytest.raises(ValueError):
        CliConfig(workers=0)
    with pytest.raises(ValueError):
        CliConfig(output="xml")
