import csv
import json
import math
import subprocess
import sys

import pytest

from covosc import cli


def _run(argv, tmp_path, name="out.json"):
    path = tmp_path / name
    code = cli.main(list(argv) + ["--output", str(path)])
    return code, path


def _rows(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_algebra_report(tmp_path):
    code, path = _run(["algebra", "--truncation", "8"], tmp_path)
    assert code == 0
    data = json.loads(path.read_text())
    assert len(data["commutators"]) == 45
    assert all(c["pass"] for c in data["commutators"])
    assert data["all_pass"] is True
    for check in data["checks"]:
        assert set(check) == {"name", "pass", "max_deviation", "tolerance"}


def test_printed_convention_exits_one(tmp_path):
    code, path = _run(["algebra", "--truncation", "6", "--convention", "printed"], tmp_path)
    assert code == 1
    data = json.loads(path.read_text())
    assert sum(not c["pass"] for c in data["commutators"]) == 9
    assert data["all_pass"] is False


def test_formfactor_table(tmp_path):
    code, path = _run(["formfactor", "--q2-max", "100", "--samples", "50"], tmp_path, "ff.csv")
    assert code == 0
    rows = _rows(path)
    assert rows[0] == ["Q2", "g", "F", "g_nonrel"]
    assert len(rows) == 51
    assert [float(v) for v in rows[1]] == [0.0, 1.0, 1.0, 1.0]
    assert float(rows[-1][0]) == 100.0


def test_wavefunction_centre(tmp_path):
    code, path = _run(["wavefunction", "--eta", "0", "--grid", "2", "--step", "0.5"], tmp_path, "wf.csv")
    assert code == 0
    rows = _rows(path)
    assert rows[0] == ["z", "t", "psi", "density"]
    body = [[float(v) for v in r] for r in rows[1:]]
    assert len(body) == 81
    centre = [r for r in body if r[0] == 0 and r[1] == 0]
    assert centre[0][2] == pytest.approx(1 / math.sqrt(math.pi), rel=1e-15)
    assert centre[0][3] == pytest.approx(1 / math.pi, rel=1e-15)


@pytest.mark.parametrize("argv", [
    ["contract"],
    ["expansion", "--eta", "0.5"],
    ["uncertainty", "--etas", "0,0.5,1,2"],
    ["wavefunction", "--eta", "1.2", "--n", "2", "--grid", "1", "--step", "0.5"],
])
def test_other_commands_pass(tmp_path, argv):
    code, path = _run(argv, tmp_path)
    assert code == 0
    assert json.loads(path.read_text())["all_pass"] is True


@pytest.mark.parametrize("argv", [
    ["algebra", "--truncation", "2"],
    ["formfactor", "--samples", "1"],
    ["formfactor", "--mass", "-1"],
    ["wavefunction", "--step", "0"],
    ["wavefunction", "--n", "-1"],
])
def test_invalid_values_exit_two(tmp_path, argv):
    code, path = _run(argv, tmp_path)
    assert code == 2
    assert not path.exists()


@pytest.mark.parametrize("argv", [
    ["algebra", "--truncation", "eight"],
    ["bogus"],
    ["contract", "--epsilons", "0.1,abc"],
])
def test_parse_errors_exit_two(argv):
    with pytest.raises(SystemExit) as info:
        cli.main(argv)
    assert info.value.code == 2


def test_failed_check_exits_one(tmp_path):
    code, _ = _run(["algebra", "--truncation", "6", "--tolerance", "-1"], tmp_path)
    assert code == 1


@pytest.mark.parametrize("argv,name", [
    (["formfactor", "--samples", "20"], "a.csv"),
    (["wavefunction", "--eta", "0.7", "--grid", "1", "--step", "0.25"], "a.csv"),
    (["algebra", "--truncation", "5"], "a.json"),
])
def test_reproducible(tmp_path, argv, name):
    first = tmp_path / "1" / name
    second = tmp_path / "2" / name
    assert cli.main(argv + ["-o", str(first)]) == 0
    assert cli.main(argv + ["-o", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()


def test_csv_round_trip(tmp_path):
    report = cli.run_formfactor(q2_max=7.3, samples=11)
    path = tmp_path / "ff.csv"
    path.write_text(report.to_csv())
    rows = _rows(path)[1:]
    for parsed, original in zip(rows, report.rows):
        assert [float(v) for v in parsed] == [float(v) for v in original]


def test_format_flag_overrides_extension(tmp_path):
    path = tmp_path / "x.csv"
    assert cli.main(["contract", "-o", str(path), "--format", "json"]) == 0
    assert "checks" in json.loads(path.read_text())


def test_output_dir_env(tmp_path, monkeypatch):
    monkeypatch.setenv(cli.OUTPUT_DIR_ENV, str(tmp_path / "reports"))
    assert cli.main(["contract", "--format", "csv"]) == 0
    assert (tmp_path / "reports" / "contract.csv").exists()


def test_stdout_without_destination(capsys, monkeypatch):
    monkeypatch.delenv(cli.OUTPUT_DIR_ENV, raising=False)
    assert cli.main(["contract"]) == 0
    captured = capsys.readouterr()
    assert json.loads(captured.out)["command"] == "contract"
    assert "checks passed" in captured.err


def test_config_defaults_and_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\ntruncation = 5\nconvention=printed\n")
    code, path = _run(["algebra", "--config", str(cfg)], tmp_path)
    data = json.loads(path.read_text())
    assert code == 1 and data["parameters"]["truncation"] == 5
    code, path = _run(["algebra", "--config", str(cfg), "--convention", "closed"], tmp_path, "b.json")
    assert code == 0 and json.loads(path.read_text())["parameters"]["truncation"] == 5


def test_config_unknown_key(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("q2_max = 5\n")
    with pytest.raises(SystemExit) as info:
        cli.main(["algebra", "--config", str(cfg)])
    assert info.value.code == 2


def test_config_missing_file(tmp_path):
    with pytest.raises(SystemExit) as info:
        cli.main(["algebra", "--config", str(tmp_path / "nope.cfg")])
    assert info.value.code == 2


def test_module_entry_point(tmp_path):
    out = tmp_path / "c.json"
    proc = subprocess.run([sys.executable, "-m", "covosc", "contract", "-o", str(out)],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert json.loads(out.read_text())["all_pass"] is True
