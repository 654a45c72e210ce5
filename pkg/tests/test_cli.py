"""Tests for the command-line interface."""

import csv
import io
import json
import math

import pytest

from cstre.cli import load_config, main


def run_cli(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], rows[1:]


def test_table2_columns_agree(capsys):
    code, out, _ = run_cli(["table2", "--d", "3,4", "--N", "2,3"], capsys)
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["d", "N", "x_threshold", "formula"]
    assert len(rows) == 4
    for row in rows:
        d, N = int(row[0]), int(row[1])
        assert float(row[2]) == pytest.approx(float(row[3]), abs=1e-10)
        assert float(row[2]) == pytest.approx(1.0 / (1.0 + d ** (N - 1)), abs=1e-12)


def test_table1_blank_gamma1_for_two_parties(capsys):
    code, out, _ = run_cli(["table1", "--d", "3", "--N", "2,3", "--q", "2", "--x", "0.3"], capsys)
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["d", "N", "gamma1", "mult1", "gamma2", "mult2", "gamma3", "mult3"]
    two_party, three_party = rows
    assert two_party[2] == "" and two_party[3] == "0"
    assert float(two_party[6]) == pytest.approx((3.4 / 9.0) * math.sqrt(3.0), abs=1e-12)
    assert three_party[2] != ""
    for row in rows:
        d, N = int(row[0]), int(row[1])
        assert int(row[3]) + int(row[5]) + int(row[7]) == d**N


def test_table3_reference_values(capsys):
    code, out, _ = run_cli(["table3", "--d", "3", "--N", "3,4"], capsys)
    assert code == 0
    _, rows = parse_csv(out)
    assert float(rows[0][2]) == pytest.approx(0.3837, abs=1e-3)
    assert float(rows[0][3]) == pytest.approx(0.3162, abs=1e-3)
    assert float(rows[1][2]) == pytest.approx(0.3114, abs=1e-3)
    assert float(rows[1][3]) == pytest.approx(0.1889, abs=1e-3)


def test_output_file_and_manifest(tmp_path, capsys):
    out_path = tmp_path / "table2.csv"
    code, out, _ = run_cli(["table2", "--d", "3", "--N", "2", "--out", str(out_path)], capsys)
    assert code == 0
    assert out == ""
    manifest_path = tmp_path / "table2.csv.manifest.json"
    assert out_path.exists() and manifest_path.exists()
    manifest = json.loads(manifest_path.read_text())
    assert set(manifest) == {"command", "parameters", "tool-version", "timestamp", "output-files"}
    assert manifest["command"] == "table2"
    assert manifest["output-files"] == [str(out_path)]
    assert manifest["parameters"]["d"] == [3]
    assert manifest["tool-version"].startswith("cstre ")


def test_repeated_runs_are_bit_identical(tmp_path, capsys):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for path in paths:
        code, _, _ = run_cli(
            ["table3", "--d", "3", "--N", "3", "--out", str(path), "--jobs", "2"], capsys
        )
        assert code == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_curve_marks_failures_and_exits_nonzero(capsys):
    code, out, _ = run_cli(
        ["curve", "--d", "3", "--N", "3", "--criterion", "ar",
         "--q-min", "0.1", "--q-max", "2", "--points", "3"],
        capsys,
    )
    assert code == 1
    header, rows = parse_csv(out)
    assert header == ["q", "x_star"]
    assert rows[0][1] == "no-sign-change"
    assert float(rows[-1][1]) == pytest.approx(1.0 / math.sqrt(10.0), abs=1e-6)


def test_curve_log_scale_endpoints(capsys):
    code, out, _ = run_cli(
        ["curve", "--d", "3", "--N", "3", "--criterion", "cstre",
         "--q-min", "1", "--q-max", "100", "--points", "3", "--scale", "log"],
        capsys,
    )
    assert code == 0
    _, rows = parse_csv(out)
    assert [float(r[0]) for r in rows] == pytest.approx([1.0, 10.0, 100.0])
    xs = [float(r[1]) for r in rows]
    assert xs[0] > xs[1] > xs[2]


def test_scan_ppt_changes_sign_at_threshold(capsys):
    code, out, _ = run_cli(
        ["scan", "--d", "3", "--N", "3", "--criterion", "ppt",
         "--x-min", "0.05", "--x-max", "0.15", "--points", "3"],
        capsys,
    )
    assert code == 0
    _, rows = parse_csv(out)
    values = [float(r[1]) for r in rows]
    assert values[0] > 0
    assert abs(values[1]) < 1e-12  # x = 0.1 is the exact crossing
    assert values[2] < 0


def test_scan_marks_singular_rows(capsys):
    code, out, _ = run_cli(
        ["scan", "--d", "3", "--N", "3", "--criterion", "cstre",
         "--q", "2", "--x-min", "0.5", "--x-max", "1.0", "--points", "2"],
        capsys,
    )
    assert code == 1
    _, rows = parse_csv(out)
    assert rows[-1][1] == "singular-negative-power"


def test_config_file_settings(tmp_path, capsys):
    config = tmp_path / "settings.cfg"
    config.write_text("x_tol = 1e-4\nmax_iter = 120  # generous\njobs = 2\n")
    assert load_config(str(config)) == {"x_tol": 1e-4, "max_iter": 120, "jobs": 2}
    code, out, _ = run_cli(
        ["table3", "--d", "3", "--N", "3", "--config", str(config)], capsys
    )
    assert code == 0
    _, rows = parse_csv(out)
    assert float(rows[0][2]) == pytest.approx(0.3837, abs=1e-3)


def test_config_rejects_unknown_key(tmp_path, capsys):
    config = tmp_path / "settings.cfg"
    config.write_text("speed = fast\n")
    code, _, err = run_cli(["table2", "--config", str(config)], capsys)
    assert code == 2
    assert "unknown key" in err


def test_usage_errors_exit_two(capsys):
    assert run_cli(["curve", "--d", "3", "--N", "3", "--criterion", "ar",
                    "--q-min", "0", "--q-max", "2", "--points", "3"], capsys)[0] == 2
    assert run_cli(["table1", "--q", "1"], capsys)[0] == 2
    assert run_cli(["scan", "--d", "3", "--N", "3", "--criterion", "ar",
                    "--x-min", "0.9", "--x-max", "0.1", "--points", "3"], capsys)[0] == 2
    with pytest.raises(SystemExit) as excinfo:
        main(["not-a-command"])
    assert excinfo.value.code == 2


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["--version"])
    assert excinfo.value.code == 0
    assert "cstre" in capsys.readouterr().out


def test_verify_subcommand_passes(capsys):
    code, out, _ = run_cli(["verify"], capsys)
    assert code == 0
    assert out.count("PASS") == 7
    assert "FAIL" not in out
