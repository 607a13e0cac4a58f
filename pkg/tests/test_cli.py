import json
import subprocess
import sys

import pytest

from cnkit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def report(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out), out


def strip_timing(rep):
    return {k: v for k, v in rep.items() if k != "timing_ms"}


def test_check_six(capsys):
    code, rep, _ = report(capsys, "check", "6")
    v = rep["verdicts"]
    assert code == 0 and v["verdict"] == "CONGRUENT"
    assert v["uvm"] == ["2", "1", "1"] and v["point"] == ["12", "36"]
    assert int(v["rank_lower_bound"]) >= 1
    assert rep["certificate"]["rank_lower_bound"] == v["rank_lower_bound"]


def test_check_one_is_not_congruent(capsys):
    code, rep, _ = report(capsys, "check", "1")
    v = rep["verdicts"]
    assert code == 0 and v["verdict"] == "NOT_CONGRUENT"
    assert (v["tunnell"]["A"], v["tunnell"]["B"]) == ("2", "2")


def test_check_157_is_unknown(capsys):
    code, rep, _ = report(capsys, "check", "157", "--height", "64")
    assert code == 2 and rep["verdicts"]["verdict"] == "UNKNOWN"


def test_check_reduces_to_squarefree(capsys):
    code, rep, _ = report(capsys, "check", "24")
    assert rep["verdicts"]["squarefree_n"] == "6" and rep["verdicts"]["square_factor"] == "2"
    assert rep["verdicts"]["verdict"] == "CONGRUENT"


def test_check_negative(capsys):
    code, rep, _ = report(capsys, "check", "-5")
    assert code == 0 and rep["verdicts"]["verdict"] == "CONGRUENT"
    assert "tunnell" not in rep["verdicts"]


def test_usage_errors(capsys):
    assert run(capsys, "check", "0")[0] == 1
    assert run(capsys, "check", "x")[0] == 1
    assert run(capsys, "descent", "0")[0] == 1
    assert run(capsys, "family2", "1", "1")[0] == 1
    assert run(capsys, "family1", "2", "4")[0] == 1
    assert run(capsys, "tunnell", "-3")[0] == 1
    assert run(capsys, "bogus")[0] == 1
    assert run(capsys)[0] == 1
    assert run(capsys, "check", "6", "--height", "-1")[0] == 1


def test_descent_commands(capsys):
    code, rep, _ = report(capsys, "descent", "-225")
    assert code == 0 and rep["verdicts"]["rank_lower_bound"] == "1"
    ten = [e for e in rep["certificate"]["alphabar"] if e["class"] == "10"][0]
    assert ten["witness"] == {"b1": "10", "N": "10", "e": "1", "M": "1"}
    code, rep, _ = report(capsys, "descent", "-1")
    assert code == 2 and rep["verdicts"]["rank_lower_bound"] == "0"


def test_descent_with_seed_file(capsys, tmp_path):
    code, _, out = report(capsys, "family1", "1", "2")
    assert code == 0
    seeds = tmp_path / "family1_1_2.json"
    seeds.write_text(out)
    code, rep, _ = report(capsys, "descent", "-44100", "--seeds", str(seeds), "--height", "8")
    assert code == 0 and int(rep["verdicts"]["rank_lower_bound"]) >= 2
    # plain seed lists, by witness or by point
    lst = tmp_path / "list.json"
    lst.write_text(json.dumps([{"side": "E", "point": ["-150", "1800"]}]))
    code, rep, _ = report(capsys, "descent", "-44100", "--seeds", str(lst), "--height", "0")
    assert "-6" in rep["verdicts"]["alpha_classes"]
    assert run(capsys, "descent", "-44100", "--seeds", str(tmp_path / "missing.json"))[0] == 1


def test_family_and_table_commands(capsys):
    code, rep, _ = report(capsys, "family1", "1", "2", "--height", "0")
    assert code == 0 and rep["verdicts"]["A"] == "-210"
    assert rep["verdicts"]["distinctness"]["status"] == "Distinct16"
    code, rep, _ = report(capsys, "family2", "2", "15", "--height", "0")
    assert code == 0 and rep["verdicts"]["verified"] is True
    assert rep["verdicts"]["curve_constant"] == "692527232/854296875"
    code, rep, _ = report(capsys, "table1")
    assert code == 0 and rep["verdicts"]["matched"] == "19/19"
    code, rep, _ = report(capsys, "table2", "2", "15")
    assert code == 0 and len(rep["verdicts"]["rows"]) == 8


def test_thin_wrappers(capsys):
    code, rep, _ = report(capsys, "tunnell", "5")
    assert code == 0 and rep["verdicts"]["consistent"] is True
    assert (rep["verdicts"]["A"], rep["verdicts"]["B"]) == ("0", "0")
    code, rep, _ = report(capsys, "uvm", "5", "10")
    assert code == 0 and rep["verdicts"]["uvm"] == ["5", "4", "6"]
    code, rep, _ = report(capsys, "uvm", "1", "50")
    assert code == 2 and rep["verdicts"]["uvm"] is None
    code, rep, _ = report(capsys, "triangle", "6", "3", "4", "5")
    assert rep["verdicts"]["point"] == ["12", "36"] and rep["verdicts"]["uvm"] == ["2", "1", "1"]
    code, rep, _ = report(capsys, "triangle", "5", "3/2", "20/3", "41/6")
    assert code == 0 and rep["verdicts"]["uvm"] == ["30", "24", "216"]


@pytest.mark.parametrize("argv", [["check", "6"], ["descent", "-225"], ["family2", "2", "15"], ["table2"]])
def test_json_round_trip(capsys, argv):
    _, rep, out = report(capsys, *argv)
    assert json.loads(out) == rep
    assert json.dumps(rep, sort_keys=True, separators=(",", ":")) == out.strip()


def test_warm_cache_gives_identical_reports(capsys, tmp_path, monkeypatch):
    monkeypatch.delenv("CNKIT_CACHE", raising=False)
    path = tmp_path / "cache.jsonl"
    for argv in (["check", "157"], ["descent", "-225"], ["check", "6"]):
        _, cold, _ = report(capsys, *argv, "--cache", str(path))
        size = path.stat().st_size
        _, warm, _ = report(capsys, *argv, "--cache", str(path))
        assert path.stat().st_size == size  # nothing new to write
        assert strip_timing(cold) == strip_timing(warm)
        _, nocache, _ = report(capsys, *argv)
        assert strip_timing(nocache) == strip_timing(cold)


def test_env_var_overrides_cache_path(capsys, tmp_path, monkeypatch):
    env_path = tmp_path / "env.jsonl"
    monkeypatch.setenv("CNKIT_CACHE", str(env_path))
    report(capsys, "descent", "-225", "--cache", str(tmp_path / "flag.jsonl"))
    assert env_path.exists() and not (tmp_path / "flag.jsonl").exists()


def test_strict_gcd_flag(capsys):
    _, rep, _ = report(capsys, "descent", "-225", "--strict-gcd")
    assert rep["certificate"]["gcd_mode"] == "standard"
    assert rep["command"]["args"]["gcd_mode"] == "standard"


def test_text_output(capsys):
    code, out, _ = run(capsys, "check", "6")
    assert code == 0 and "verdict: CONGRUENT" in out and "certificate: validated" in out


def test_console_script():
    out = subprocess.run(
        [sys.executable, "-m", "cnkit.cli", "uvm", "6", "5", "--json"], capture_output=True, text=True
    )
    assert out.returncode == 0
    assert json.loads(out.stdout)["verdicts"]["uvm"] == ["2", "1", "1"]
