import csv
import io
import json

import numpy as np
import pytest

from pinch4 import einstein_simplex, make_operator
from pinch4.cli import main, parse_real


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_real_expressions():
    assert parse_real("0.25") == 0.25
    assert parse_real("1/3") == pytest.approx(1 / 3, abs=0)
    assert parse_real("(-199+9*sqrt(545))/71") == pytest.approx(
        (-199 + 9 * np.sqrt(545)) / 71, abs=0)
    assert parse_real("4-1.5*sqrt(6)") == pytest.approx(
        4 - 1.5 * np.sqrt(6), abs=0)
    assert parse_real("-2e-3") == -0.002
    import argparse
    for bad in ("1++2", "sqrt 4", "(1", "1)", "abc"):
        with pytest.raises(argparse.ArgumentTypeError):
            parse_real(bad)


def test_usage_errors_exit_two(capsys):
    assert main(["tables"]) == 2
    assert main(["nonsense"]) == 2
    assert main([]) == 2
    assert main(["tables", "--which", "table9", "--delta", "0.2"]) == 2
    capsys.readouterr()


def test_domain_errors_exit_two(capsys):
    code, _, err = _run(capsys, "optimize", "--form", "qlambda",
                        "--polytope", "d6", "--delta", "0.2",
                        "--sense", "min")
    assert code == 2
    assert "lambda" in err
    code, _, err = _run(capsys, "tables", "--which", "table1",
                        "--delta", "1.5")
    assert code == 2


def test_table1_text_values(capsys):
    code, out, _ = _run(capsys, "tables", "--which", "table1",
                        "--delta", "0.2")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0].split() == ["S", "value"]
    got = {row.split()[0]: float(row.split()[1]) for row in lines[1:]}
    d = 0.2
    assert got["q1"] == pytest.approx(2 / 9 * d * d + 5 / 9 * d - 1 / 36,
                                      abs=1e-11)
    assert got["q7"] == pytest.approx(0.75 * d * d, abs=1e-11)


def test_table5_csv_parses(capsys):
    code, out, _ = _run(capsys, "tables", "--which", "table5",
                        "--delta", "0.2", "--lambda", "0.6",
                        "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["S", "value", "active"]
    assert len(rows) == 16
    by_face = {r[0]: r for r in rows[1:]}
    # the always-on pair keeps its closed-form value (6+9l)/(8+15l)
    lam = 0.6
    want = (6 + 9 * lam) / (8 + 15 * lam)
    assert float(by_face["{q4,q5}"][1]) == pytest.approx(want, abs=1e-11)
    assert by_face["{q5,q6}"][2] == "yes"


def test_table6_json(capsys):
    code, out, _ = _run(capsys, "tables", "--which", "table6",
                        "--delta", "0.3", "--lambda", "0.4",
                        "--format", "json")
    assert code == 0
    rows = json.loads(out)
    by_label = {r["vertex"]: r["value"] for r in rows}
    d, lam = 0.3, 0.4
    want = -9 * lam / 8 * d * d + (9 * lam / 4 + 3) * d - 9 * lam / 8
    assert by_label["q1^1"] == pytest.approx(want, abs=1e-11)
    assert by_label["q1^4"] == pytest.approx(3 * d * d, abs=1e-11)
    assert by_label["q2^4"] == pytest.approx(by_label["q1^3"], abs=1e-11)


def test_certify_roundtrip(tmp_path, capsys):
    r = make_operator(0.5, [-0.5, -0.5, 1.0], [0, 0, 0])
    path = tmp_path / "op.json"
    path.write_text(r.to_json())
    code, out, _ = _run(capsys, "certify", "--file", str(path),
                        "--delta", "0.25")
    assert code == 0
    assert "feasible  yes" in out
    code, out, _ = _run(capsys, "certify", "--file", str(path),
                        "--delta", "0.26")
    assert code == 1
    code, _, err = _run(capsys, "certify", "--file",
                        str(tmp_path / "missing.json"), "--delta", "0.3")
    assert code == 2


def test_optimize_reports_face_and_value(capsys):
    code, out, _ = _run(capsys, "optimize", "--form", "qhalf",
                        "--polytope", "d6", "--delta", "0.2",
                        "--sense", "min")
    assert code == 0
    fields = dict(line.split(None, 1) for line in
                  out.strip().split("\n")[1:])
    assert float(fields["value"]) == pytest.approx(0.75 * 0.04,
                                                   abs=1e-11)
    assert fields["face"] == "7"


def test_thresholds_window(capsys):
    code, out, _ = _run(capsys, "thresholds", "--face", "2,3,4",
                        "--form", "qhalf")
    assert code == 0
    assert "window" in out
    nums = [float(x) for x in
            out.replace("(", " ").replace(")", " ").replace(",", " ")
            .split() if x.replace(".", "").replace("-", "")
            .replace("e", "").isdigit()]
    assert any(abs(x - 4 / 31) < 1e-6 for x in nums), out
    assert any(abs(x - 23 / 41) < 1e-6 for x in nums), out


def test_lambda_curve_rows_and_plot(tmp_path, capsys):
    png = tmp_path / "curve.png"
    code, out, _ = _run(capsys, "lambda-curve", "--from", "0.1",
                        "--to", "0.3", "--step", "0.05",
                        "--format", "csv", "--plot", str(png))
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["delta", "lambda", "lambda_star", "lambda_ville"]
    assert len(rows) == 6
    first = rows[1]
    assert float(first[0]) == 0.1
    assert first[3] == ""          # ville curve undefined that low
    assert float(rows[4][1]) == pytest.approx(1 / 3, abs=1e-9)  # delta 1/4
    assert png.exists() and png.stat().st_size > 0


def test_region_csv_and_plot(tmp_path, capsys):
    png = tmp_path / "region.png"
    code, out, _ = _run(capsys, "region", "--delta",
                        "(9*sqrt(2)-2)/79", "--format", "csv",
                        "--plot", str(png))
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["sigma", "chi"]
    pts = [(float(a), float(b)) for a, b in rows[1:]]
    assert (0.0, 36.0) in pts
    assert (12.0, 36.0) in pts
    assert png.exists() and png.stat().st_size > 0


def test_audit_exit_zero_and_json(capsys):
    code, out, _ = _run(capsys, "audit", "--delta", "0.3", "--n", "500",
                        "--seed", "5", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["samples"] == 500
    assert all(c["violations"] == 0 for c in rep["checks"].values())


def test_vertices_csv_round_trip(capsys):
    code, out, _ = _run(capsys, "vertices", "--polytope", "d6",
                        "--delta", "0.3", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["vertex", "x1", "x2", "x3", "x4", "x5", "x6"]
    got = np.array([[float(x) for x in r[1:]] for r in rows[1:]])
    want = einstein_simplex(0.3, 6).vertex_array()
    assert np.allclose(got, want, atol=1e-10)
    assert [r[0] for r in rows[1:]] == [f"q{i}" for i in range(1, 8)]
