import logging

import numpy as np
import pytest

from cli import main
from phasing_core.forward import make_test_object
from phasing_core.io import load_pattern, read_mask, read_pr2d, read_sidecar, read_trace, write_pr2d


@pytest.fixture
def object_file(tmp_path):
    path = tmp_path / "object.f64"
    write_pr2d(path, make_test_object(16).data, "object")
    return path


@pytest.fixture
def absorption_file(tmp_path):
    path = tmp_path / "absorption.f64"
    write_pr2d(path, make_test_object(16, amplitude=0.5).data, "object")
    return path


def _simulate(tmp_path, object_file, sigma="2"):
    out = tmp_path / "dp"
    assert main(["--out", str(out), "simulate-dp", str(object_file), "--sigma", sigma]) == 0
    return out / "pattern.f64"


def test_bounds(capsys):
    assert main(["bounds", "--sigma", "8"]) == 0
    assert capsys.readouterr().out.strip() == "modality=cdi dimension=2 sigma=8 f_max=0.96875 f=0 feasible=true"
    assert main(["bounds", "--sigma", "4", "--modality", "holography", "--f", "0.5", "--csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines == ["modality,dimension,sigma,f_max,f_actual,feasible", "holography,2,4,0.9375,0.5,true"]


def test_usage_errors_exit_1(tmp_path):
    assert main(["bounds", "--sigma", "4", "--f", "1.1"]) == 1
    assert main(["no-such-command"]) == 1
    assert main(["--out", str(tmp_path), "degrade", str(tmp_path / "missing.f64"), "--mode", "random", "--f", "0.5"]) == 1


def test_simulate_dp(tmp_path, object_file):
    path = _simulate(tmp_path, object_file, sigma="4")
    assert path.read_bytes()[:32] == b"PR2D 64 diffraction corner".ljust(31) + b"\n"
    meta = read_sidecar(path)
    assert meta["command"] == "simulate-dp"
    assert meta["geometry"]["N0"] == 16
    assert meta["missing_fraction"] == 0.0


def test_simulate_dp_warns_on_low_oversampling(tmp_path, object_file, caplog):
    with caplog.at_level(logging.WARNING):
        assert main(["--out", str(tmp_path / "low"), "simulate-dp", str(object_file), "--sigma", "1"]) == 0
    assert "oversampling condition violated" in caplog.text


def test_simulate_dp_rejects_odd_grid(tmp_path, object_file):
    assert main(["--out", str(tmp_path), "simulate-dp", str(object_file), "--sigma", "2.1"]) == 1


def test_degrade_is_deterministic(tmp_path, object_file):
    pattern = _simulate(tmp_path, object_file)
    for name in ("a", "b"):
        args = ["--out", str(tmp_path / name), "degrade", str(pattern), "--mode", "random", "--f", "0.5", "--seed", "3"]
        assert main(args) == 0
    assert (tmp_path / "a" / "pattern.f64").read_bytes() == (tmp_path / "b" / "pattern.f64").read_bytes()
    assert (tmp_path / "a" / "mask.pbm").read_bytes() == (tmp_path / "b" / "mask.pbm").read_bytes()
    mask = read_mask(tmp_path / "a" / "mask.pbm")
    assert (~mask).sum() == 512
    assert read_sidecar(tmp_path / "a" / "mask.pbm")["seed"] == 3


def test_degrade_central_and_symmetrize(tmp_path, object_file):
    pattern = _simulate(tmp_path, object_file)
    central = tmp_path / "central"
    assert main(["--out", str(central), "degrade", str(pattern), "--mode", "central", "--f", "0.01"]) == 0
    mask = read_mask(central / "mask.pbm")
    assert not mask[0, 0] and not mask[31, 31] and mask[16, 16]

    random = tmp_path / "random"
    assert main(["--out", str(random), "degrade", str(pattern), "--mode", "random", "--f", "0.5", "--seed", "1"]) == 0
    sym = tmp_path / "sym"
    assert main(["--out", str(sym), "symmetrize", str(random / "pattern.f64"), "--mask", str(random / "mask.pbm")]) == 0
    before = load_pattern(random / "pattern.f64", random / "mask.pbm")
    after = load_pattern(sym / "pattern.f64", sym / "mask.pbm")
    assert after.missing_fraction < before.missing_fraction
    assert read_sidecar(sym / "pattern.f64")["f_after"] == pytest.approx(after.missing_fraction)
    sym_meta = read_sidecar(sym / "pattern.f64")
    assert sym_meta["seed"] == 1
    assert len(sym_meta["config_hash"]) == 64
    assert read_sidecar(sym / "mask.pbm")["N"] == 32
    assert read_sidecar(random / "mask.pbm")["N"] == 32


def test_symmetrize_hologram_exits_2(tmp_path, absorption_file):
    holo = tmp_path / "holo"
    assert main(["--out", str(holo), "simulate-holo", str(absorption_file), "--sigma", "2"]) == 0
    assert main(["--out", str(tmp_path / "sym"), "symmetrize", str(holo / "hologram.f64")]) == 2


def test_metrics_of_identical_images(tmp_path, object_file, capsys):
    assert main(["metrics", str(object_file), str(object_file)]) == 0
    assert capsys.readouterr().out.strip() == "eq8=0.000000e+00"
    shifted = tmp_path / "shifted.f64"
    data, _ = read_pr2d(object_file)
    write_pr2d(shifted, np.roll(data, (2, 3), axis=(0, 1)), "object")
    assert main(["metrics", str(shifted), str(object_file), "--align"]) == 0
    assert capsys.readouterr().out.strip() == "eq8=0.000000e+00"


def test_reconstruct_cdi(tmp_path, object_file, capsys):
    pattern = _simulate(tmp_path, object_file)
    deg = tmp_path / "deg"
    assert main(["--out", str(deg), "degrade", str(pattern), "--mode", "random", "--f", "0.1", "--seed", "2"]) == 0
    rec = tmp_path / "rec"
    args = [
        "--out", str(rec), "reconstruct-cdi", str(deg / "pattern.f64"), "--mask", str(deg / "mask.pbm"),
        "--iterations", "5", "--restarts", "3", "--keep-best", "2", "--truth", str(object_file),
    ]
    assert main(args) == 0
    assert capsys.readouterr().out.startswith("eq8=")
    for name in ("object.pgm", "object.f64", "recovered.f64", "traces/restart_000.csv", "traces/restart_002.csv"):
        assert (rec / name).exists()
    assert len(read_trace(rec / "traces" / "restart_001.csv")) == 5
    assert len(read_sidecar(rec / "object.pgm")["selected"]) == 2
    assert load_pattern(rec / "recovered.f64").missing_fraction == 0.0


def test_reconstruct_cdi_full_pattern_converges(tmp_path, object_file):
    pattern = _simulate(tmp_path, object_file, sigma="4")
    rec = tmp_path / "rec"
    args = [
        "--out", str(rec), "reconstruct-cdi", str(pattern), "--iterations", "400", "--er-iterations", "200",
        "--restarts", "4", "--keep-best", "1",
    ]
    assert main(args) == 0
    best = read_sidecar(rec / "object.pgm")["selected"][0]
    trace = read_trace(rec / "traces" / f"restart_{best:03d}.csv")
    assert len(trace) == 600
    assert trace.final("eq9") < 1e-6


def test_reconstruct_cdi_rejects_bad_hyperparameters(tmp_path, object_file):
    pattern = _simulate(tmp_path, object_file)
    args = ["--out", str(tmp_path / "rec"), "reconstruct-cdi", str(pattern), "--restarts", "1", "--keep-best", "2"]
    assert main(args) == 1


def test_reconstruct_holo(tmp_path, absorption_file, capsys):
    holo = tmp_path / "holo"
    assert main(["--out", str(holo), "simulate-holo", str(absorption_file), "--sigma", "2"]) == 0
    deg = tmp_path / "deg"
    assert main(["--out", str(deg), "degrade", str(holo / "hologram.f64"), "--mode", "random", "--f", "0.3"]) == 0
    rec = tmp_path / "rec"
    args = [
        "--out", str(rec), "reconstruct-holo", str(deg / "pattern.f64"), "--mask", str(deg / "mask.pbm"),
        "--iterations", "25", "--truth", str(absorption_file),
    ]
    assert main(args) == 0
    assert capsys.readouterr().out.startswith("eq8=")
    assert len(read_trace(rec / "trace.csv")) == 25
    assert (rec / "object.pgm").exists()


def test_sweep_command(tmp_path):
    config = tmp_path / "tiny.yaml"
    config.write_text(
        "name: tiny\nscenario: cdi-random\nsigmas: [4]\nobject_side: 8\nfractions: [0.0, 0.5]\nseeds: [1]\n"
        "hio: {iterations: 5, restarts: 2, keep_best: 1}\noverlap_k: 1\n",
        encoding="utf-8",
    )
    out = tmp_path / "sweep"
    assert main(["--out", str(out), "sweep", str(config), "--summary"]) == 0
    assert (out / "results.csv").read_text().splitlines()[0] == "method,sigma,seed,0,0.5"


def test_sweep_invalid_config_exits_1(tmp_path):
    config = tmp_path / "bad.yaml"
    config.write_text("name: bad\nsigmas: [4]\n", encoding="utf-8")
    assert main(["--out", str(tmp_path / "out"), "sweep", str(config)]) == 1
