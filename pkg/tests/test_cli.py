"""End-to-end checks of the command line interface and its artifacts."""

import json

import numpy as np
import pytest
from PIL import Image

from bakerdim import __version__
from bakerdim.cli import main
from bakerdim.dimension import moran_exponent
from bakerdim.dynamics import attractor_sample
from bakerdim.params import Params

BOUNDS_HEADER = "p,entropy,xi,bound_v,bound_h,bound_combined"
SWEEP_HEADER = "beta1,beta2,regime,theoretical_dim,sup_bound,product,sum"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# moran


def test_moran_stdout_json(capsys):
    code, out, _ = run(capsys, "moran", "--beta1", "0.2", "--beta2", "0.3")
    assert code == 0
    payload = json.loads(out)
    assert payload["version"] == __version__
    assert payload["seed"] is None
    assert payload["config"]["command"] == "moran"
    assert payload["d"] == moran_exponent(Params(0.2, 0.3)).d
    assert abs(payload["residual"]) < 1e-12


def test_moran_writes_file(tmp_path, capsys):
    out = tmp_path / "moran.json"
    code, stdout, _ = run(capsys, "moran", "--beta1", "0.25", "--beta2", "0.25", "--out", str(out))
    assert code == 0
    assert stdout == ""
    payload = json.loads(out.read_text())
    assert payload["d"] == pytest.approx(0.5, abs=1e-12)


def test_moran_rejects_covering_regime(capsys):
    code, _, err = run(capsys, "moran", "--beta1", "0.6", "--beta2", "0.5")
    assert code == 2
    assert "error:" in err


def test_invalid_beta_is_a_usage_error(capsys):
    code, _, err = run(capsys, "moran", "--beta1", "1.5", "--beta2", "0.3")
    assert code == 2
    assert "error:" in err


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert __version__ in capsys.readouterr().out


# ---------------------------------------------------------------------------
# bounds


def test_bounds_csv_and_summary(tmp_path, capsys):
    out = tmp_path / "bounds.csv"
    code, stdout, _ = run(
        capsys, "bounds", "--beta1", "0.6", "--beta2", "0.55", "--out", str(out)
    )
    assert code == 0

    lines = out.read_text().splitlines()
    assert lines[0] == BOUNDS_HEADER
    table = np.loadtxt(out, delimiter=",", skiprows=1)
    assert table.shape == (201, 6)
    assert np.array_equal(table[:, 0], np.linspace(0.0, 1.0, 201))  # repr round-trips
    assert np.all(table[:, 5] <= np.minimum(table[:, 3], table[:, 4]) + 1e-12)

    summary = json.loads(stdout)
    assert summary["product_ge_quarter"] is True
    assert summary["regime"] == "Covering"
    assert summary["sup_value"] == pytest.approx(2.0, abs=1e-9)
    assert summary["config"]["grid"] == 201


def test_bounds_subcritical_summary(capsys):
    code, stdout, _ = run(capsys, "bounds", "--beta1", "0.7", "--beta2", "0.31")
    assert code == 0
    body, _, summary_text = stdout.rpartition("\n{")
    summary = json.loads("{" + summary_text)
    assert body.splitlines()[0] == BOUNDS_HEADER
    assert summary["product_ge_quarter"] is False
    assert summary["sup_value"] < 2.0 - 1e-6


# ---------------------------------------------------------------------------
# attractor sampling


def test_attractor_zero_points_is_header_only(capsys):
    code, out, _ = run(
        capsys, "attractor", "--beta1", "0.2", "--beta2", "0.3", "--n", "0"
    )
    assert code == 0
    assert out == "x,y\n"


def test_attractor_csv_round_trips_exactly(tmp_path, capsys):
    out = tmp_path / "pts.csv"
    code, _, _ = run(
        capsys, "attractor", "--beta1", "0.6", "--beta2", "0.55",
        "--n", "2000", "--seed", "3", "--threads", "1", "--out", str(out),
    )
    assert code == 0
    loaded = np.loadtxt(out, delimiter=",", skiprows=1)
    direct = attractor_sample(Params(0.6, 0.55), 2000, seed=3, threads=1).points
    assert np.array_equal(loaded, direct)


def test_attractor_bytes_stable_across_runs_and_threads(tmp_path, capsys):
    paths = [tmp_path / f"pts{i}.csv" for i in range(3)]
    for path, threads in zip(paths, ("1", "1", "7")):
        code, _, _ = run(
            capsys, "attractor", "--beta1", "0.2", "--beta2", "0.3",
            "--n", "5000", "--seed", "11", "--threads", threads, "--out", str(path),
        )
        assert code == 0
    blobs = [p.read_bytes() for p in paths]
    assert blobs[0] == blobs[1] == blobs[2]
    assert b"\r" not in blobs[0]


def test_attractor_honors_thread_env(tmp_path, capsys, monkeypatch):
    out = tmp_path / "env.csv"
    ref = tmp_path / "ref.csv"
    monkeypatch.setenv("BAKER_THREADS", "5")
    code, _, _ = run(
        capsys, "attractor", "--beta1", "0.2", "--beta2", "0.3",
        "--n", "3000", "--seed", "2", "--out", str(out),
    )
    assert code == 0
    monkeypatch.delenv("BAKER_THREADS")
    run(
        capsys, "attractor", "--beta1", "0.2", "--beta2", "0.3",
        "--n", "3000", "--seed", "2", "--threads", "1", "--out", str(ref),
    )
    assert out.read_bytes() == ref.read_bytes()


def test_bad_thread_env_is_a_usage_error(capsys, monkeypatch):
    monkeypatch.setenv("BAKER_THREADS", "many")
    code, _, err = run(
        capsys, "attractor", "--beta1", "0.2", "--beta2", "0.3", "--n", "10"
    )
    assert code == 2
    assert "BAKER_THREADS" in err


# ---------------------------------------------------------------------------
# render


def render_to_array(tmp_path, capsys, beta1, beta2, name):
    out = tmp_path / name
    code, _, _ = run(
        capsys, "render", "--beta1", beta1, "--beta2", beta2,
        "--n", "200000", "--seed", "1", "--bins", "64", "--threads", "2",
        "--out", str(out),
    )
    assert code == 0
    img = Image.open(out)
    assert img.mode == "L"
    assert img.size == (64, 64)
    return np.asarray(img), out.read_bytes()


def test_render_covering_fills_every_superblock(tmp_path, capsys):
    arr, blob = render_to_array(tmp_path, capsys, "0.6", "0.55", "full.png")
    blocks = arr.reshape(16, 4, 16, 4).max(axis=(1, 3))
    assert np.all(blocks > 0)
    _, again = render_to_array(tmp_path, capsys, "0.6", "0.55", "full2.png")
    assert blob == again


def test_render_contracting_leaves_column_gaps(tmp_path, capsys):
    arr, _ = render_to_array(tmp_path, capsys, "0.2", "0.3", "gap.png")
    occupied_columns = (arr.max(axis=0) > 0).mean()
    assert occupied_columns < 1.0  # the middle band of x is never visited


# ---------------------------------------------------------------------------
# boxdim


def test_boxdim_inline_and_from_csv_agree(tmp_path, capsys):
    csv = tmp_path / "pts.csv"
    run(
        capsys, "attractor", "--beta1", "0.2", "--beta2", "0.3",
        "--n", "50000", "--seed", "4", "--threads", "1", "--out", str(csv),
    )
    code, out_inline, _ = run(
        capsys, "boxdim", "--beta1", "0.2", "--beta2", "0.3",
        "--n", "50000", "--seed", "4", "--threads", "1", "--window", "3:8",
    )
    assert code == 0
    code, out_csv, _ = run(capsys, "boxdim", str(csv), "--window", "3:8")
    assert code == 0

    inline = json.loads(out_inline)
    from_csv = json.loads(out_csv)
    assert inline["slope"] == from_csv["slope"]  # CSV round-trips the floats
    assert inline["seed"] == 4 and from_csv["seed"] is None
    assert inline["counts"] == from_csv["counts"]
    assert 1.2 < inline["slope"] < 1.8
    assert inline["flagged"] is False


def test_boxdim_needs_a_point_source(capsys):
    code, _, err = run(capsys, "boxdim", "--window", "3:8")
    assert code == 2
    assert "beta" in err


# ---------------------------------------------------------------------------
# verify


def test_verify_unknown_suite_is_a_parser_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nope"])
    assert exc.value.code == 2


def test_verify_moran_suite_passes(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "moran")
    assert code == 0
    payload = json.loads(out)
    assert payload["suite"] == "moran"
    assert payload["passed"] is True
    assert payload["checks"]
    assert all(c["passed"] for c in payload["checks"])


# ---------------------------------------------------------------------------
# sweep


def test_sweep_single_cell(capsys):
    code, out, _ = run(
        capsys, "sweep", "--beta1", "0.25", "--beta2", "0.25", "--grid", "1"
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == SWEEP_HEADER
    assert len(lines) == 2
    fields = lines[1].split(",")
    assert fields[2] == "Contracting"
    assert float(fields[3]) == pytest.approx(1.5, abs=1e-12)


def test_sweep_rows_are_row_major(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    code, _, _ = run(
        capsys, "sweep", "--beta1", "0.2:0.4", "--beta2", "0.5:0.7",
        "--grid", "3", "--out", str(out),
    )
    assert code == 0
    rows = [line.split(",") for line in out.read_text().splitlines()[1:]]
    assert len(rows) == 9
    b1 = [float(r[0]) for r in rows]
    b2 = [float(r[1]) for r in rows]
    assert b1 == list(np.repeat(np.linspace(0.2, 0.4, 3), 3))
    assert b2 == list(np.tile(np.linspace(0.5, 0.7, 3), 3))
    sums = [float(r[6]) for r in rows]
    assert sums == [a + b for a, b in zip(b1, b2)]


def test_sweep_empty_range_is_a_usage_error(capsys):
    code, _, err = run(
        capsys, "sweep", "--beta1", "0.4:0.2", "--beta2", "0.5", "--grid", "2"
    )
    assert code == 2
    assert "error:" in err


def test_unwritable_output_is_an_io_error(capsys):
    code, _, err = run(
        capsys, "moran", "--beta1", "0.2", "--beta2", "0.3",
        "--out", "/nonexistent_dir_zz/x.json",
    )
    assert code == 3
    assert "error:" in err
