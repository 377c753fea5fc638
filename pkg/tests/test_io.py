import logging
import math

import numpy as np
import pytest
from PIL import Image
from pydantic import ValidationError as ConfigValidationError

from phasing_core.degradation import MeasuredPattern
from phasing_core.errors import FileFormatError
from phasing_core.field import GridGeometry
from phasing_core.io import (
    ExperimentConfig,
    config_hash,
    dump_experiment,
    image_grid,
    load_experiment,
    load_image,
    load_pattern,
    log_preview,
    read_mask,
    read_pgm,
    read_pr2d,
    read_sidecar,
    read_trace,
    save_object,
    save_pattern,
    write_mask,
    write_pgm8,
    write_pgm16,
    write_pr2d,
    write_trace,
)
from phasing_core.metrics import ErrorTrace


def test_pr2d_header_and_bit_exact_body(tmp_path):
    data = np.random.default_rng(1).normal(size=(8, 8))
    path = tmp_path / "x.f64"
    write_pr2d(path, data, "diffraction")
    raw = path.read_bytes()
    assert len(raw) == 32 + 8 * 8 * 8
    assert raw[:32] == b"PR2D 8 diffraction corner".ljust(31) + b"\n"
    back, kind = read_pr2d(path)
    assert kind == "diffraction"
    assert back.tobytes() == data.astype("<f8").tobytes()


def test_pr2d_center_convention(tmp_path):
    data = np.arange(16.0).reshape(4, 4)
    path = tmp_path / "c.f64"
    write_pr2d(path, data, "hologram", dc="center")
    stored = np.frombuffer(path.read_bytes()[32:], dtype="<f8").reshape(4, 4)
    assert stored[2, 2] == data[0, 0]
    back, _ = read_pr2d(path)
    np.testing.assert_array_equal(back, data)


def test_pr2d_errors(tmp_path):
    bad = tmp_path / "bad.f64"
    bad.write_bytes(b"NOPE")
    with pytest.raises(FileFormatError):
        read_pr2d(bad)
    short = tmp_path / "short.f64"
    write_pr2d(short, np.ones((4, 4)), "object")
    short.write_bytes(short.read_bytes()[:-8])
    with pytest.raises(FileFormatError):
        read_pr2d(short)
    with pytest.raises(FileFormatError):
        write_pr2d(tmp_path / "k.f64", np.ones((4, 4)), "spectrum")


def test_pattern_roundtrip_with_sidecar(tmp_path):
    geom = GridGeometry(N=8, N0=2, pixel_size=1e-5, wavelength=5e-7, distance=0.1)
    mask = np.ones((8, 8), dtype=bool)
    mask[0, :3] = False
    pattern = MeasuredPattern(np.random.default_rng(2).random((8, 8)), mask=mask, geometry=geom)
    save_pattern(tmp_path / "p.f64", pattern, meta={"command": "test"})
    write_mask(tmp_path / "m.pbm", pattern.mask)
    meta = read_sidecar(tmp_path / "p.f64")
    assert meta["command"] == "test"
    assert meta["missing_fraction"] == pytest.approx(3 / 64)
    loaded = load_pattern(tmp_path / "p.f64", tmp_path / "m.pbm")
    np.testing.assert_array_equal(loaded.amplitude, pattern.amplitude)
    np.testing.assert_array_equal(loaded.mask, mask)
    assert loaded.geometry.wavelength == pytest.approx(5e-7)
    assert loaded.geometry.N0 == 2


def test_load_pattern_without_mask_warns_on_missing_samples(tmp_path, caplog):
    mask = np.ones((8, 8), dtype=bool)
    mask[2, 2] = False
    save_pattern(tmp_path / "p.f64", MeasuredPattern(np.ones((8, 8)), mask=mask))
    write_mask(tmp_path / "m.pbm", mask)
    save_pattern(tmp_path / "full.f64", MeasuredPattern(np.ones((8, 8))))
    with caplog.at_level(logging.WARNING, logger="phasing_core.io.formats"):
        load_pattern(tmp_path / "full.f64")
        load_pattern(tmp_path / "p.f64", tmp_path / "m.pbm")
        assert not caplog.records
        loaded = load_pattern(tmp_path / "p.f64")
    assert loaded.mask.all()
    assert "no mask was given" in caplog.text


def test_load_pattern_rejects_object_kind(tmp_path):
    write_pr2d(tmp_path / "o.f64", np.ones((4, 4)), "object")
    with pytest.raises(FileFormatError):
        load_pattern(tmp_path / "o.f64")
    assert load_image(tmp_path / "o.f64").side == 4


def test_mask_bits(tmp_path):
    mask = np.zeros((8, 8), dtype=bool)
    mask[0, 0] = True
    mask[3, 5] = True
    path = tmp_path / "m.pbm"
    write_mask(path, mask)
    raw = path.read_bytes()
    assert raw.startswith(b"P4")
    # Bit 1 = gemessen: erstes Byte der ersten Zeile hat das MSB gesetzt
    assert raw[-8] == 0b10000000
    np.testing.assert_array_equal(read_mask(path), mask)


def test_read_mask_rejects_grayscale(tmp_path):
    path = tmp_path / "g.pgm"
    write_pgm8(path, np.ones((4, 4)))
    with pytest.raises(FileFormatError):
        read_mask(path)


def test_pgm8_and_pgm16(tmp_path):
    img = np.linspace(0.0, 1.0, 16).reshape(4, 4)
    write_pgm8(tmp_path / "a.pgm", img)
    with Image.open(tmp_path / "a.pgm") as opened:
        assert opened.mode == "L"
    np.testing.assert_allclose(read_pgm(tmp_path / "a.pgm").data, img, atol=1 / 255)

    obj = img * 3.0
    scale = write_pgm16(tmp_path / "b.pgm", obj, meta={"seed": 4})
    assert scale == pytest.approx(3.0)
    assert read_sidecar(tmp_path / "b.pgm")["seed"] == 4
    np.testing.assert_allclose(read_pgm(tmp_path / "b.pgm").data, obj, atol=3.0 / 65535)


def test_save_object_writes_exact_copy(tmp_path):
    obj = np.random.default_rng(3).random((6, 6))
    save_object(tmp_path / "object.pgm", obj)
    exact = load_image(tmp_path / "object.f64")
    np.testing.assert_array_equal(exact.data, obj)
    np.testing.assert_allclose(load_image(tmp_path / "object.pgm").data, obj, atol=1e-4)


def test_trace_csv(tmp_path):
    trace = ErrorTrace()
    trace.record(1, 0.5, float("nan"), 0.125)
    trace.record(2, 0.1 + 0.2, 0.3, 0.0625)
    path = tmp_path / "trace.csv"
    write_trace(path, trace)
    lines = path.read_text().splitlines()
    assert lines[0] == "iteration,eq9,eq8,eq10"
    assert lines[1] == "1,0.5,0.125,nan"
    back = read_trace(path)
    assert back.values("eq9")[1] == 0.1 + 0.2
    assert math.isnan(back.values("eq10")[0])


def test_log_preview_and_grid():
    I = np.zeros((8, 8))
    I[0, 0] = 100.0
    I[1, 1] = 1e-4
    shown = log_preview(I)
    assert shown[4, 4] == pytest.approx(1.0)
    assert 0.0 < shown[5, 5] < 1.0
    assert shown.min() == 0.0
    assert not log_preview(np.zeros((4, 4))).any()

    grid = image_grid([[np.ones((4, 4)), 2 * np.ones((4, 4))]], pad=2)
    assert grid.shape == (8, 14)
    assert grid.max() == 1.0
    assert grid[0, 0] == 0.0


def _experiment_yaml(tmp_path, body):
    path = tmp_path / "exp.yaml"
    path.write_text(body, encoding="utf-8")
    return path


def test_experiment_roundtrip_and_hash(tmp_path):
    path = _experiment_yaml(tmp_path, "scenario: cdi-random\nsigmas: [4, 8]\nfractions: [0.0, 0.5]\nseeds: [1, 2]\n")
    config = load_experiment(path)
    assert config.grid_size(4) == 256
    assert config.modality == "cdi"
    again = load_experiment(_experiment_yaml(tmp_path, dump_experiment(config)))
    assert again == config
    assert config_hash(again) == config_hash(config)
    changed = config.model_copy(update={"seeds": (1, 3)})
    assert config_hash(changed) != config_hash(config)


@pytest.mark.parametrize("body", [
    "scenario: cdi-random\nsigmas: []\n",
    "scenario: cdi-unknown\nsigmas: [4]\n",
    "scenario: cdi-random\nsigmas: [4]\nfractions: [1.5]\n",
    "scenario: cdi-random\nsigmas: [4]\nseeds: []\n",
    "scenario: cdi-random\nsigmas: [4.01]\n",
    "scenario: cdi-random\nsigmas: [4]\nobject_side: 9\n",
])
def test_experiment_validation(tmp_path, body):
    with pytest.raises(ConfigValidationError):
        load_experiment(_experiment_yaml(tmp_path, body))


def test_experiment_defaults():
    config = ExperimentConfig(scenario="holo-random", sigmas=(4,))
    assert config.modality == "holography"
    assert config.holo.smoothing_interval == 20
    holo = config.holo.to_config(256, 64, seed=3)
    assert holo.support.side == 64
    assert holo.params.side == pytest.approx(256 * 2e-3 / 512)
