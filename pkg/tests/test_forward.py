import numpy as np
import pytest
from pydantic import ValidationError as ConfigValidationError

from phasing_core.errors import DimensionError, DomainError, UnsupportedSizeError
from phasing_core.field import RealImage, crop_center, energy, partner_view
from phasing_core.forward import (
    PropagationParams,
    asm_propagate,
    backpropagation_baseline,
    embed_object,
    inverse_ft_baseline,
    make_exit_wave,
    make_test_object,
    simulate_diffraction,
    simulate_hologram,
    transfer_function,
)
from phasing_core.degradation import random_missing_mask


def _holo_params(N=64, distance=20e-3):
    return PropagationParams(wavelength=532e-9, distance=distance, side=N * 2e-3 / 512, N=N)


def test_unit_pixel_gives_flat_amplitude():
    obj = np.zeros((16, 16))
    obj[0, 0] = 1.0
    pattern = simulate_diffraction(RealImage(obj))
    np.testing.assert_allclose(pattern.amplitude, 1.0, atol=1e-12)
    assert pattern.mask.all()
    assert pattern.kind == "diffraction"


def test_embed_object_geometry():
    padded = embed_object(RealImage(np.ones((8, 8))), 32)
    assert padded.side == 32
    assert padded.geometry.sigma == 4.0
    assert padded.data[12:20, 12:20].all()
    assert padded.data.sum() == 64
    with pytest.raises(DimensionError):
        embed_object(RealImage(np.ones((8, 8))), 4)
    with pytest.raises(UnsupportedSizeError):
        embed_object(RealImage(np.ones((8, 8))), 31)


def test_negative_object_rejected():
    with pytest.raises(DomainError):
        simulate_diffraction(np.full((4, 4), -1.0))


def test_pattern_of_real_object_is_centro_symmetric():
    rng = np.random.default_rng(5)
    obj = RealImage(rng.random((16, 16)))
    amp = simulate_diffraction(embed_object(obj, 64)).amplitude
    np.testing.assert_allclose(partner_view(amp), amp, rtol=1e-10, atol=1e-10)


def test_envelope_matches_direct_summation():
    rng = np.random.default_rng(9)
    obj = RealImage(rng.random((8, 8)))
    padded = embed_object(obj, 32)
    N = 32
    amp = simulate_diffraction(padded, envelope=True).amplitude

    # Fernfeld jedes quadratischen Pixels: Phase der Pixelposition mal sinc-Apertur
    freq = np.fft.fftfreq(N) * N
    u, v = np.meshgrid(freq, freq, indexing="ij")

    def aperture(s):
        x = np.pi * s / N
        return np.where(s == 0, 1.0, np.sin(x) / np.where(s == 0, 1.0, x))

    total = np.zeros((N, N), dtype=complex)
    ys, xs = np.nonzero(padded.data)
    for y, x in zip(ys, xs):
        total += padded.data[y, x] * np.exp(-2j * np.pi * (u * y + v * x) / N)
    oracle = np.abs(total) * aperture(u) * aperture(v)
    np.testing.assert_allclose(amp, oracle, rtol=1e-8, atol=1e-10)


def test_asm_unitary_and_invertible():
    params = _holo_params()
    rng = np.random.default_rng(2)
    for _ in range(100):
        t = rng.normal(size=(64, 64)) + 1j * rng.normal(size=(64, 64))
        U = asm_propagate(t, params)
        assert energy(U) == pytest.approx(energy(t), rel=1e-10)
        back = asm_propagate(U, params.reversed())
        np.testing.assert_allclose(back.data, t, atol=1e-10)


def test_asm_zero_distance_is_identity():
    t = np.random.default_rng(1).random((32, 32)).astype(complex)
    np.testing.assert_allclose(asm_propagate(t, _holo_params(32, 0.0)).data, t, atol=1e-12)


def test_evanescent_band_is_zero():
    params = PropagationParams(wavelength=1.0, distance=1.0, side=4.0, N=8)
    H = transfer_function(params)
    alpha, beta = params.direction_cosines()
    evanescent = alpha ** 2 + beta ** 2 > 1
    assert evanescent.any()
    assert np.all(H[evanescent] == 0)
    with pytest.raises(ValueError):
        H[0, 0] = 1.0


def test_propagation_params_validate():
    with pytest.raises(ConfigValidationError):
        PropagationParams(wavelength=532e-9, distance=0.02, side=1e-3, N=33)
    with pytest.raises(ConfigValidationError):
        PropagationParams(wavelength=-1.0, distance=0.02, side=1e-3, N=32)
    with pytest.raises(DimensionError):
        asm_propagate(np.ones((16, 16)), _holo_params(32))


def test_empty_object_hologram_is_flat():
    exit_wave = make_exit_wave(embed_object(RealImage(np.zeros((16, 16))), 64))
    hologram = simulate_hologram(exit_wave, _holo_params())
    np.testing.assert_allclose(hologram.amplitude, 1.0, atol=1e-12)
    assert hologram.kind == "hologram"
    assert hologram.geometry.N0 == 16
    assert hologram.geometry.wavelength == pytest.approx(532e-9)


def test_exit_wave_rejects_absorption_above_one():
    with pytest.raises(DomainError):
        make_exit_wave(RealImage(np.full((4, 4), 1.5)))
    t = make_exit_wave(RealImage(np.full((4, 4), 0.25))).t.data
    np.testing.assert_allclose(t, 0.75)


def test_test_object_is_binary_and_deterministic():
    a = make_test_object(64)
    b = make_test_object(64)
    np.testing.assert_array_equal(a.data, b.data)
    assert set(np.unique(a.data)) == {0.0, 1.0}
    assert 0 < a.data.sum() < 64 * 64
    assert make_test_object(64, amplitude=2.0).data.max() == 2.0
    with pytest.raises(DimensionError):
        make_test_object(4)


def test_inverse_ft_baseline_full_mask_recovers_object():
    obj = make_test_object(16)
    padded = embed_object(obj, 64)
    spectrum = np.fft.fft2(padded.data)
    mask = np.ones((64, 64), dtype=bool)
    np.testing.assert_allclose(inverse_ft_baseline(spectrum, mask), padded.data, atol=1e-10)


def test_inverse_ft_baseline_zeroes_missing_samples():
    obj = make_test_object(16)
    spectrum = np.fft.fft2(embed_object(obj, 64).data)
    mask = ~random_missing_mask(64, 0.5, seed=4)
    baseline = inverse_ft_baseline(spectrum, mask)
    # Realteil: Spektrum wird zentrosymmetrisch gemittelt, fehlende Paare bleiben 0
    expected = 0.5 * (np.where(mask, spectrum, 0) + np.conj(partner_view(np.where(mask, spectrum, 0))))
    np.testing.assert_allclose(np.fft.fft2(baseline), expected, atol=1e-8)


def test_backpropagation_baseline_full_mask():
    params = _holo_params()
    absorption = embed_object(make_test_object(16, amplitude=0.5), 64)
    U = asm_propagate(make_exit_wave(absorption).t, params)
    recon = backpropagation_baseline(U, np.ones((64, 64), dtype=bool), params)
    np.testing.assert_allclose(crop_center(recon, 16), make_test_object(16, amplitude=0.5).data, atol=1e-10)
