import csv
import io
import json
import subprocess
import sys

import pytest

from entrygame.cli import CSV_HEADER, ConfigError, RunConfig, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.slow
def test_solve_defaults(capsys):
    code, out, _ = run(capsys, "solve")
    assert code == 0
    assert out.splitlines()[0].split() == ["regime", "Deter"]


def test_prohibitive_entry(capsys):
    code, out, _ = run(capsys, "solve", "--F", "1.5")
    assert code == 0
    assert "Blockade" in out
    assert out.splitlines()[-2].split() == ["pi1", "accommodate", "infeasible"]


def test_invalid_parameter(capsys):
    code, out, err = run(capsys, "solve", "--eta-0", "1.5")
    assert code == 2 and out == ""
    assert "eta_0" in err


def test_solve_json(capsys):
    code, out, _ = run(capsys, "solve", "--F", "1.5", "--format", "json")
    doc = json.loads(out)
    assert doc["regime"] == "Blockade" and doc["accommodate"] == "infeasible"
    assert doc["profits"]["sw"] == pytest.approx(sum(doc["profits"][k]
                                                     for k in ("pi1", "pi2", "pi_p1", "pi_p0")))


@pytest.mark.slow
def test_sweep_files(tmp_path, capsys):
    code, _, _ = run(capsys, "sweep", "--param", "delta", "--f-levels", "5e-5,5e-4,7e-4",
                     "--out", str(tmp_path))
    assert code == 0
    files = sorted(p.name for p in tmp_path.iterdir())
    assert files == ["sweep_delta_F0.0005.csv", "sweep_delta_F0.0007.csv",
                     "sweep_delta_F5e-05.csv"]
    for name in files:
        rows = list(csv.reader(io.StringIO((tmp_path / name).read_text())))
        assert tuple(rows[0]) == CSV_HEADER
        assert [float(r[0]) for r in rows[1:]] == [0.0, 1.0, 2.0, 3.0, 4.0]
    low = list(csv.DictReader(io.StringIO((tmp_path / "sweep_delta_F5e-05.csv").read_text())))
    assert [r["regime"] for r in low][:2] == ["Accommodate", "Accommodate"]


def test_csv_header_golden(capsys):
    code, out, _ = run(capsys, "sweep", "--param", "c0", "--grid", "1/2", "--F", "1.5")
    assert code == 0
    header, row = out.splitlines()
    assert header == ("param_value,F,regime,d0_det,d0_acc,d0_mon,pi1_det,pi1_acc,pi2,pi_p1,"
                      "pi_p0,sw_det,sw_acc,sed,sea,slope_br2")
    fields = row.split(",")
    assert fields[2] == "Blockade"
    assert fields[CSV_HEADER.index("d0_acc")] == "" and fields[CSV_HEADER.index("sw_acc")] == ""


@pytest.mark.parametrize("grid", ["", " , "])
def test_empty_grid_rejected(capsys, grid):
    code, _, err = run(capsys, "sweep", "--grid", grid)
    assert code == 2 and "grid" in err


def test_bad_sweep_parameter(capsys):
    with pytest.raises(SystemExit):
        main(["sweep", "--param", "k"])


class TestConfig:
    def test_round_trip(self, tmp_path):
        cfg = RunConfig.parse("c0 = 3/6\nF = 5e-5  # low entry cost\nparam = delta\n"
                              "grid = 0, 1, 2\nvalue_model = printed\ngrid_n = 200\n")
        assert cfg.params == {"c0": 0.5, "F": 5e-5, "value_model": "printed"}
        assert cfg.settings == {"grid_n": 200} and cfg.grid == (0.0, 1.0, 2.0)
        again = RunConfig.parse(cfg.to_text())
        assert again == cfg

    def test_unknown_key(self):
        with pytest.raises(ConfigError) as e:
            RunConfig.parse("colour = blue\n")
        assert e.value.key == "colour"

    def test_malformed_line(self):
        with pytest.raises(ConfigError):
            RunConfig.parse("just words\n")

    def test_file_then_flags(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("F = 1.5\neta_0 = 0.5\n")
        written = tmp_path / "effective.cfg"
        code, out, _ = run(capsys, "solve", "--config", str(cfg), "--eta-0", "0.05",
                           "--write-config", str(written))
        assert code == 0 and "Blockade" in out
        assert RunConfig.parse(written.read_text()).params == {"F": 1.5, "eta_0": 0.05}

    def test_unknown_key_exit_code(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("colour = blue\n")
        code, _, err = run(capsys, "solve", "--config", str(cfg))
        assert code == 2 and "colour" in err


def test_diagnose_given_points(capsys):
    code, out, _ = run(capsys, "diagnose", "--d0", "0.05,0.0734", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("d0,sed,sea,direct")
    assert len(lines) == 3
    for line in lines[1:]:
        f = dict(zip(lines[0].split(","), line.split(",")))
        assert float(f["slope_br2"]) < 0 and f["substitutes"] == "True"
        assert f["consistency_ok"] == "True"


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest", "--draws", "2", "--seed", "7")
    assert code == 0
    assert out.splitlines()[-1] == "2/2 draws match the grid oracles"


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "entrygame", "solve", "--F", "1.5", "--format", "csv"],
                       capture_output=True, text=True, check=True)
    assert r.stdout.splitlines()[1].startswith("Blockade,")
