import json

import pytest

from rumornet.cli import main, parse_seed_range, UsageError


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_run_example3(capsys, tmp_path):
    out_file = tmp_path / "t.csv"
    code, out, _ = run_cli(capsys, "run", "--example", "3", "--seed", "7", "--out", str(out_file))
    assert code == 0
    assert out.startswith("h_C=1 converged_at=")
    assert out_file.read_text().startswith("generation,active_agent,action,instability,consensus\n")


def test_run_to_stdout(capsys):
    code, out, err = run_cli(capsys, "run", "--example", "4", "--generations", "30")
    assert code == 0
    assert out.startswith("generation,")
    assert err.startswith("h_C=0.3734") and "converged_at=none" in err


def test_example_out_of_range(capsys):
    code, _, err = run_cli(capsys, "run", "--example", "99")
    assert code == 1 and "example out of range" in err


def test_run_is_byte_identical(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert run_cli(capsys, "run", "--example", "5", "--seed", "42", "--out", str(path))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_run_flags_reach_the_engine(capsys, tmp_path):
    path = tmp_path / "t.csv"
    run_cli(capsys, "run", "--example", "7", "--mode", "eq8", "--window", "15",
            "--generations", "12", "--threshold", "0.4", "--out", str(path))
    text = path.read_text()
    assert "# mode=eq8" in text and "# window=15" in text
    assert len([l for l in text.splitlines() if l[0].isdigit()]) == 12


@pytest.mark.parametrize("n, expected", [(1, "h_C=1\n"), (4, "h_C=0.3734")])
def test_homogeneity(capsys, n, expected):
    code, out, err = run_cli(capsys, "homogeneity", "--example", str(n))
    assert code == 0 and out.startswith(expected)
    assert out.splitlines()[1].startswith("H,")
    assert err == ""


def test_homogeneity_example7_warns(capsys):
    code, out, err = run_cli(capsys, "homogeneity", "--example", "7")
    assert code == 0 and out.startswith("h_C=0.19789")
    assert err.count("warning:") == 1 and "reported value 1" in err


def test_homogeneity_from_file(capsys, tmp_path):
    path = tmp_path / "ex4.json"
    assert run_cli(capsys, "example", "4", "--out", str(path))[0] == 0
    code, out, _ = run_cli(capsys, "homogeneity", str(path))
    assert code == 0 and out.startswith("h_C=0.3734")
    code, out2, _ = run_cli(capsys, "homogeneity", "--scenario", str(path))
    assert out2 == out


def test_validate_example5(capsys):
    code, out, _ = run_cli(capsys, "validate", "--example", "5")
    assert code == 0
    assert "triangle (1,2,8): trust(1,2)=0.3 < trust(1,8)*trust(8,2)=0.58*0.79=0.4582" in out
    assert out.splitlines()[-1].startswith("ok: 0 errors")


def test_validate_identity(capsys, tmp_path):
    doc = {
        "schema_version": 1,
        "propositions": [{"name": "a", "priority": 0.3}],
        "initial_observation": "0",
        "agents": [{"id": 1, "veracity": 1}, {"id": 2, "veracity": 1}],
        "trust": [[1, 0], [0, 1]],
        "observers": [2],
    }
    path = tmp_path / "s.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run_cli(capsys, "validate", str(path))
    assert code == 0 and out.strip() == "ok: 0 errors, 0 warnings"


def test_validate_malformed(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"schema_version": 1, "propositions": [{"name": "a"}]}))
    code, _, err = run_cli(capsys, "validate", str(path))
    assert code == 1 and "propositions[0].priority" in err


def test_missing_file_is_io_error(capsys, tmp_path):
    code, _, err = run_cli(capsys, "validate", str(tmp_path / "nope.json"))
    assert code == 2


def test_sweep(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "sweep", "--example", "3", "--seeds", "0..3",
                           "--out-dir", str(tmp_path))
    assert code == 0 and out.startswith("runs=4 converged_fraction=1 ")
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["runs"] == 4 and sorted(summary["converged_at"]) == ["0", "1", "2", "3"]
    assert sorted(p.name for p in tmp_path.glob("seed-*.csv")) == [f"seed-{s}.csv" for s in range(4)]


def test_sweep_empty_range(capsys):
    code, _, err = run_cli(capsys, "sweep", "--example", "1", "--seeds", "5..2")
    assert code == 1 and "empty seed range" in err


def test_seed_range_parsing():
    assert parse_seed_range("0..99") == range(100)
    assert parse_seed_range("7") == range(7, 8)
    with pytest.raises(UsageError):
        parse_seed_range("a..b")


def test_example_dump(capsys):
    code, out, _ = run_cli(capsys, "example", "6")
    doc = json.loads(out)
    assert code == 0 and doc["reported_homogeneity"] == "1.4e-7" and len(doc["agents"]) == 9


@pytest.mark.parametrize("argv", [[], ["run"], ["bogus"], ["run", "--example", "1", "--mode", "x"]])
def test_usage_errors_exit_1(capsys, argv):
    assert run_cli(capsys, *argv)[0] == 1
