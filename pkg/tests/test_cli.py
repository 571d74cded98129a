import csv
import json

import numpy as np
import pytest

from fraccover import fileio
from fraccover.cli import main
from fraccover.cover_count import ScaleSeries
from fraccover.fractal_gen import generate_koch


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def sig_digits(text):
    mantissa = text.lower().split("e")[0].lstrip("-").replace(".", "").lstrip("0")
    return len(mantissa)


def test_points_roundtrip(tmp_path):
    ps = generate_koch(3)
    fileio.write_points(tmp_path / "p.csv", ps)
    back = fileio.read_points(tmp_path / "p.csv")
    assert back.points.tobytes() == ps.points.tobytes()
    rows = read_csv(tmp_path / "p.csv")
    assert rows[0] == ["x", "y"]
    assert all(sig_digits(v) >= 12 for v in rows[2])


def test_series_roundtrip_json(tmp_path):
    s = ScaleSeries.from_counts([0.5, 0.25, 0.125], [3, 9, 27])
    fileio.write_series(tmp_path / "s.json", s, "json")
    back = fileio.read_series(tmp_path / "s.json")
    assert back.entries == s.entries


def test_series_header_checked(tmp_path):
    (tmp_path / "bad.csv").write_text("a,b,c\n1,2,3\n")
    with pytest.raises(ValueError):
        fileio.read_series(tmp_path / "bad.csv")


def test_cli_pipeline(tmp_path, capsys):
    out = str(tmp_path)
    assert main(["--out-dir", out, "gen", "--set", "koch", "--level", "5", "--out", "pts.csv"]) == 0
    assert len(read_csv(tmp_path / "pts.csv")) == 4**5 + 2
    assert main(["--out-dir", out, "count", "--in", str(tmp_path / "pts.csv"),
                 "--side", "243", "--base", "3", "--depth", "5", "--out", "series.csv"]) == 0
    rows = read_csv(tmp_path / "series.csv")
    assert rows[0] == ["delta", "count", "area"]
    deltas = [float(r[0]) for r in rows[1:]]
    assert deltas == sorted(deltas, reverse=True)
    capsys.readouterr()

    assert main(["--out-dir", out, "dim", "--in", str(tmp_path / "series.csv"),
                 "--no-trim", "--out", "est.json"]) == 0
    est = json.loads((tmp_path / "est.json").read_text())
    assert set(est) >= {"d_h", "log_c", "r_squared", "stderr_slope", "delta_min", "delta_max", "n_points"}
    assert 1.0 < est["d_h"] < 1.6

    assert main(["--out-dir", out, "verify", "--in", str(tmp_path / "series.csv"),
                 "--dh", "1.2619", "--no-trim", "--out", "res.csv"]) == 0
    res = read_csv(tmp_path / "res.csv")
    assert res[0] == ["alpha", "delta", "residual"]
    assert len(res) - 1 == 6**2


def test_cli_gen_fbm_uses_global_seed(tmp_path):
    out = str(tmp_path)
    main(["--out-dir", out, "--seed", "5", "gen", "--set", "fbm", "--n", "256", "--out", "a.csv"])
    main(["--out-dir", out, "gen", "--set", "fbm", "--n", "256", "--seed", "5", "--out", "b.csv"])
    main(["--out-dir", out, "gen", "--set", "fbm", "--n", "256", "--seed", "6", "--out", "c.csv"])
    a, b, c = ((tmp_path / f).read_bytes() for f in ("a.csv", "b.csv", "c.csv"))
    assert a == b != c


def test_cli_json_format(tmp_path):
    main(["--out-dir", str(tmp_path), "--format", "json", "gen", "--set", "cantor",
          "--level", "1", "--out", "p.json"])
    data = json.loads((tmp_path / "p.json").read_text())
    assert len(data) == 4 and set(data[0]) == {"x", "y"}


def test_cli_shape_csv_and_svg(tmp_path):
    main(["--out-dir", str(tmp_path), "shape", "--dh", "1.5", "--delta", "1",
          "--samples", "512", "--out", "shape.csv"])
    rows = read_csv(tmp_path / "shape.csv")
    assert rows[0] == ["x", "f_x"] and len(rows) == 513
    x, fx = np.array(rows[1:], dtype=float).T
    np.testing.assert_allclose(fx, np.sqrt(x), rtol=1e-15)

    main(["--out-dir", str(tmp_path), "shape", "--dh", "1", "1.5", "2", "--out", "shape.svg"])
    svg = (tmp_path / "shape.svg").read_text()
    assert svg.count("<polygon") == 3
    assert 'id="dh-1.0000"' in svg and 'id="dh-2.0000"' in svg


def test_cli_errors_exit_nonzero(tmp_path, capsys):
    assert main(["--out-dir", str(tmp_path), "gen", "--set", "fbm", "--hurst", "1.5", "--out", "x.csv"]) == 2
    assert main(["--out-dir", str(tmp_path), "gen", "--set", "koch", "--level", "11", "--out", "x.csv"]) == 2
    assert main(["--out-dir", str(tmp_path), "gen", "--set", "koch", "--out", "x.csv"]) == 2
    assert "level" in capsys.readouterr().err
    with pytest.raises(SystemExit):
        main(["gen", "--set", "julia", "--out", "x.csv"])
