import json
import subprocess
import sys

import pytest

from lrcbounds.cli import main, read_curve_csv


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_table_values(capsys):
    code, out, _ = run(capsys, "table", "--bounds", "sp", "--delta", "0.07,0.3")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split() == ["delta", "sp"]
    assert lines[1].split() == ["0.07", "0.6132"]
    assert lines[2].split() == ["0.30", "0.3345"]


def test_errors_exit_two(capsys):
    assert run(capsys, "table", "--delta", "")[0] == 2
    code, _, err = run(capsys, "table", "--bounds", "nope")
    assert code == 2 and "nope" in err
    assert run(capsys, "table", "--delta", "0.5:0.1:0.1")[0] == 2
    assert run(capsys, "verify", "--only", "bogus")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["table", "--format", "xml"])
    assert exc.value.code == 2


def test_curve_rows_and_roundtrip(tmp_path, capsys):
    path = tmp_path / "c.csv"
    code, _, _ = run(capsys, "curve", "--bounds", "sp,r0", "--delta", "0:0.5:0.01", "-o", str(path))
    assert code == 0
    data = read_curve_csv(str(path))
    grid, vals = data["sp"]
    assert len(grid) == 51
    assert grid[0] == 0.0 and grid[-1] == 0.5
    assert vals[0] == pytest.approx(0.75)
    assert set(data) == {"sp", "r0"}


def test_n3_curve(capsys):
    code, out, _ = run(capsys, "table", "--bounds", "n3", "--delta", "0")
    assert code == 0
    assert out.strip().splitlines()[1].split() == ["0.00", "0.6667"]


def test_deterministic_output(capsys):
    args = ("curve", "--bounds", "sp,r0", "--delta", "0:0.3:0.05")
    a = run(capsys, *args)[1]
    b = run(capsys, *args, "--jobs", "3")[1]
    assert a == b


def test_json_schema(capsys):
    code, out, _ = run(capsys, "table", "--bounds", "sp,lambda-star", "--delta", "0.1,0.4",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["meta"]["q"] == 2 and doc["meta"]["n"] == 4
    assert doc["meta"]["bounds"] == ["sp", "lambda-star"]
    assert [r["delta"] for r in doc["rows"]] == [0.1, 0.4]
    for r in doc["rows"]:
        assert set(r["values"]) == {"sp", "lambda-star"}


def test_wzl_needs_mu(capsys):
    assert run(capsys, "table", "--bounds", "wzl", "--delta", "0.1")[0] == 2
    code, out, _ = run(capsys, "table", "--bounds", "wzl", "--mu", "2.5", "--delta", "0.1")
    assert code == 0


def test_verify_oracle_group(tmp_path, capsys):
    summary = tmp_path / "v.json"
    code, out, _ = run(capsys, "verify", "--only", "oracle", "--json", str(summary))
    assert code == 0
    assert out.count("[PASS]") == 2
    assert json.loads(summary.read_text())["passed"] is True


def test_plot_file(tmp_path, capsys):
    pytest.importorskip("matplotlib")
    png = tmp_path / "c.png"
    code, _, _ = run(capsys, "curve", "--bounds", "sp,r0", "--delta", "0:0.5:0.05", "--plot", str(png))
    assert code == 0
    assert png.stat().st_size > 1000


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "lrcbounds", "table", "--bounds", "sp",
                          "--delta", "0.1"], capture_output=True, text=True, timeout=120)
    assert res.returncode == 0
    assert "0.5680" in res.stdout
