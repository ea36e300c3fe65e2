import csv
import io
import json
import subprocess
import sys

import pytest

from superchar import io as sio
from superchar.cli import RunConfig, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_ut_table_3_2(capsys):
    code, out, _ = run(capsys, "ut-table", "--n", "3", "--p", "2", "--verify-oracle")
    assert code == 0
    data = json.loads(out)
    assert data["schema_version"] == sio.SCHEMA_VERSION
    assert len(data["values"]) == 5 and all(len(r) == 5 for r in data["values"])
    assert [c["size"] for c in data["superclasses"]] == [1, 2, 2, 1, 2]
    assert data["checks"]["passed"]


def test_t_table(capsys, tmp_path):
    out_file = tmp_path / "t.json"
    code, _, _ = run(capsys, "t-table", "--n", "2", "--p", "3", "--out", str(out_file),
                     "--verify-oracle", "--verify-kirillov")
    assert code == 0
    data = json.loads(out_file.read_text())
    assert data["value_formula"] == "corrected"
    assert len(data["values"]) == 5


def test_t_table_printed_fails_oracle(capsys):
    code, out, _ = run(capsys, "t-table", "--n", "3", "--p", "3", "--uncorrected", "--verify-oracle")
    assert code == 1
    assert json.loads(out)["value_formula"] == "uncorrected"


def test_verify_theory(capsys):
    code, out, _ = run(capsys, "verify-theory", "--builtin", "c4")
    assert code == 0
    assert json.loads(out)["passed"]
    code, _, err = run(capsys, "verify-theory", "--builtin", "nope")
    assert code == 2 and "unknown builtin" in err


def test_exit_codes(capsys):
    assert run(capsys, "ut-table", "--n", "9", "--p", "7")[0] == 3
    assert run(capsys, "ut-table", "--n", "3", "--p", "4")[0] == 2
    assert run(capsys, "ut-table", "--n", "0")[0] == 2
    assert run(capsys, "no-such-command")[0] == 2
    assert run(capsys, "ut-table", "--format", "xml")[0] == 2
    assert run(capsys, "hopf", "mult")[0] == 2
    assert run(capsys, "hopf", "coprod", "--basis", "1", "--basis", "1")[0] == 2
    assert run(capsys, "hopf", "mult", "--basis", "1;1:5", "--algebra", "nps")[0] == 2
    assert run(capsys, "orbits", "--format", "csv")[0] == 2


def test_csv(capsys):
    code, out, _ = run(capsys, "ut-table", "--n", "2", "--p", "2", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["schema_version", sio.SCHEMA_VERSION]
    assert rows[2] == ["size", "1", "1"]
    assert [r[1:] for r in rows[3:]] == [["1", "1"], ["1", "-1"]]


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"n": 2, "p": 3}))
    code, out, _ = run(capsys, "ut-table", "--config", str(cfg))
    assert code == 0
    assert json.loads(out)["p"] == 3
    code, out, _ = run(capsys, "ut-table", "--config", str(cfg), "--p", "2")
    assert json.loads(out)["p"] == 2
    assert run(capsys, "ut-table", "--config", str(tmp_path / "missing.json"))[0] == 2


def test_deterministic(capsys):
    a = run(capsys, "t-table", "--n", "3", "--p", "3")[1]
    b = run(capsys, "t-table", "--n", "3", "--p", "3")[1]
    assert a == b
    a = run(capsys, "hopf", "coprod", "--basis", "14|2|3")[1]
    assert a == run(capsys, "hopf", "coprod", "--basis", "14|2|3")[1]


def test_hopf_commands(capsys):
    code, out, _ = run(capsys, "hopf", "mult", "--basis", "12|3", "--basis", "1")
    assert code == 0
    assert json.loads(out)["terms"] == {"12|3|4": "1", "12|34": "1", "124|3": "1"}
    code, out, _ = run(capsys, "hopf", "coprod", "--basis", "14|2|3")
    terms = json.loads(out)["terms"]
    assert terms["13|2 ⊗ 1"] == "2" and len(terms) == 6
    code, out, _ = run(capsys, "hopf", "verify", "--nmax", "2", "--algebra", "nps", "--y", "1")
    assert code == 0 and json.loads(out)["passed"]


def test_orbits(capsys):
    code, out, _ = run(capsys, "orbits", "--n", "3", "--p", "2")
    data = json.loads(out)
    assert code == 0 and [o["size"] for o in data["orbits"]] == [1, 2, 2, 1, 2]
    code, out, _ = run(capsys, "orbits", "--n", "2", "--p", "3", "--kind", "t")
    assert sorted(o["size"] for o in json.loads(out)["orbits"]) == [1, 2, 3, 3, 3]
    code, out, _ = run(capsys, "orbits", "--n", "3", "--p", "3", "--ambient", "J")
    assert json.loads(out)["ambient"] == "J" and len(json.loads(out)["orbits"]) == 11


def test_run_config_validate():
    with pytest.raises(ValueError):
        RunConfig("ut-table", p=6).validate()
    with pytest.raises(ValueError):
        RunConfig("ut-table", jobs=0).validate()
    RunConfig("ut-table").validate()


def test_console_script():
    res = subprocess.run([sys.executable, "-m", "superchar.cli", "verify-theory", "--builtin", "s3"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["builtin"] == "s3"
