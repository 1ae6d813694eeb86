import json
import math

import numpy as np

from opuczeros.cli import main


def read_csv(path):
    header = []
    with open(path) as fh:
        lines = fh.read().splitlines()
    while lines and lines[0].startswith("#"):
        header.append(lines.pop(0))
    cols = lines.pop(0).split(",")
    rows = [line.split(",") for line in lines]
    return header, cols, rows


def test_intensity_csv_columns_and_values(tmp_path):
    out = tmp_path / "rho.csv"
    rc = main(["intensity", "--n", "8", "--real-grid=-0.9:0.9:7",
               "--out", str(out)])
    assert rc == 0
    header, cols, rows = read_csv(out)
    assert header[0].startswith("# opuczeros")
    assert header[1].startswith("# config:")
    assert cols == ["x", "rho_kernel", "rho_closed"]
    assert len(rows) == 7
    for row in rows:
        assert abs(float(row[1]) - float(row[2])) < 1e-8


def test_reruns_are_byte_identical(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    argv = ["intensity", "--ensemble", "power_decay:0.3:2", "--n", "16",
            "--real-grid=-2:2:21"]
    assert main(argv + ["--out", str(a)]) == 0
    assert main(argv + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_expected_zeros_degree_one(tmp_path):
    out = tmp_path / "ez.csv"
    rc = main(["expected-zeros", "--n", "2", "--out", str(out)])
    assert rc == 0
    _, cols, rows = read_csv(out)
    assert cols == ["n", "value", "error", "prediction"]
    assert rows[0][0] == "2"
    assert abs(float(rows[0][1]) - 1.0) < 1e-9


def test_expected_zeros_comma_list_and_region(tmp_path):
    out = tmp_path / "ez2.csv"
    rc = main(["expected-zeros", "--n", "4,8", "--region", "real:-0.5:0.5",
               "--tolerance", "1e-9", "--out", str(out)])
    assert rc == 0
    _, _, rows = read_csv(out)
    assert [r[0] for r in rows] == ["4", "8"]
    assert float(rows[0][1]) < float(rows[1][1])


def test_para_spectrum_weights_sum_to_one(tmp_path):
    out = tmp_path / "ps.csv"
    rc = main(["para-spectrum", "--ensemble", "power_decay:0.3:2",
               "--n", "9", "--out", str(out)])
    assert rc == 0
    _, cols, rows = read_csv(out)
    assert cols == ["re", "im", "theta", "weight"]
    assert len(rows) == 9
    total = math.fsum(float(r[3]) for r in rows)
    assert abs(total - 1.0) < 1e-12
    for r in rows:
        assert abs(math.hypot(float(r[0]), float(r[1])) - 1.0) < 1e-10


def test_mc_json_and_roots_csv(tmp_path):
    out = tmp_path / "mc.json"
    roots = tmp_path / "roots.csv"
    rc = main(["mc", "--n", "6", "--trials", "40", "--seed", "5",
               "--region", "real", "--out", str(out),
               "--roots-csv", str(roots)])
    assert rc == 0
    doc = json.loads(out.read_text())
    assert doc["trials"] == 40
    assert doc["seed"] == 5
    assert 0.0 < doc["mean_count"] < 5.0
    _, cols, rows = read_csv(roots)
    assert cols == ["trial", "re", "im"]
    assert len(rows) == 40 * 5


def test_mc_determinism(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    argv = ["mc", "--n", "8", "--trials", "25", "--seed", "42"]
    assert main(argv + ["--out", str(a)]) == 0
    assert main(argv + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_scaling_limit_density_at_zero(tmp_path):
    out = tmp_path / "sl.csv"
    rc = main(["scaling-limit", "--tau-grid=-1:1:5", "--out", str(out)])
    assert rc == 0
    _, cols, rows = read_csv(out)
    assert cols == ["tau", "h_ratio", "density"]
    mid = rows[2]
    assert float(mid[0]) == 0.0
    assert abs(float(mid[2]) - 1.0 / (24.0 * math.pi)) < 1e-12


def test_geronimus_check(tmp_path):
    out = tmp_path / "g.json"
    rc = main(["geronimus-check", "--base", "free", "--t", "0.5",
               "--count", "12", "--out", str(out)])
    assert rc == 0
    doc = json.loads(out.read_text())
    assert doc["max_abs_difference"] < 1e-8
    expect = [1.0 / (k + 2) for k in range(12)]
    assert np.allclose(doc["alphas_update"], expect, atol=1e-12)


def test_conservation_check(tmp_path):
    out = tmp_path / "c.json"
    rc = main(["conservation-check", "--ensemble", "power_decay:0.3:2",
               "--n", "16", "--tolerance", "1e-5", "--out", str(out)])
    assert rc == 0
    doc = json.loads(out.read_text())
    assert doc["target"] == 15
    assert abs(doc["total"] - 15.0) < 1e-2


def test_config_file_supplies_defaults(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"ensemble": "constant:0.4", "n": 8,
                               "real_grid": "-0.5:0.5:3"}))
    out = tmp_path / "o.csv"
    rc = main(["intensity", "--n", "8", "--real-grid=-0.5:0.5:3",
               "--config", str(cfg), "--out", str(out)])
    assert rc == 0
    _, _, rows = read_csv(out)
    direct = tmp_path / "d.csv"
    main(["intensity", "--ensemble", "constant:0.4", "--n", "8",
          "--real-grid=-0.5:0.5:3", "--out", str(direct)])
    _, _, rows2 = read_csv(direct)
    assert [r[1] for r in rows] == [r[1] for r in rows2]


def test_input_error_exit_code(capsys):
    assert main(["intensity", "--ensemble", "nonsense", "--n", "8",
                 "--real-grid=-1:1:5"]) == 2
    assert main(["intensity", "--n", "8", "--real-grid", "badgrid"]) == 2
    assert main(["expected-zeros", "--n", "4", "--region", "mystery"]) == 2
    capsys.readouterr()


def test_missing_config_file_is_input_error(tmp_path, capsys):
    rc = main(["intensity", "--n", "4", "--real-grid=-1:1:3",
               "--config", str(tmp_path / "absent.json")])
    assert rc == 2
    capsys.readouterr()


def test_numerical_failure_exit_code(capsys):
    # an impossible quadrature budget surfaces as a numerical failure
    rc = main(["expected-zeros", "--n", "2", "--tolerance", "1e-18"])
    assert rc == 3
    capsys.readouterr()


def test_stdout_when_no_out(capsys):
    rc = main(["scaling-limit", "--tau-grid", "0:1:2"])
    assert rc == 0
    captured = capsys.readouterr().out
    assert captured.startswith("# opuczeros")
