"""
Hologram Reconstruction - Iteratives Hin- und Herpropagieren

Ein Schritt:
1. U = asm(t_k, +z)
2. gemessene Samples: |U| -> sqrt(H), Phase behalten; fehlende Samples unveraendert
3. t' = asm(U', -z)
4. a = 1 - t': Re(a) < 0 -> a = i Im(a); ausserhalb Support a = 0
5. t_{k+1} = 1 - a
Nach jeweils smoothing_interval Iterationen wird t geglaettet, nur bis zum Anteil
smoothing_stop der Iterationen und nie nach der letzten; danach konvergiert t ungeglaettet.
Mit real_absorption wird Im(a) verworfen (reines Absorptionsobjekt).
"""

import logging
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..cdi.config import SupportSpec
from ..cdi.hio import detector_constraint
from ..cdi.retrieve import RetrievalResult
from ..degradation.pattern import MeasuredPattern
from ..errors import DimensionError, KindError
from ..field.core import ComplexField, FieldLike, RealImage, as_array, crop_center
from ..forward.propagation import PropagationParams, _propagate, transfer_function
from ..metrics.errors import _fienup_ratio, _support_ratio, error_rms
from ..metrics.trace import ErrorTrace
from .smoothing import DEFAULT_KERNEL, SmoothingKernel, _smooth

logger = logging.getLogger(__name__)


class HoloConfig(BaseModel):
    """Parameter der iterativen Hologramm-Rekonstruktion"""
    model_config = ConfigDict(frozen=True)

    iterations: int = Field(default=2000, ge=1)
    smoothing_interval: int = Field(default=20, ge=1)
    # Anteil der Iterationen, bis zu dem geglaettet wird
    smoothing_stop: float = Field(default=0.75, gt=0.0, le=1.0)
    real_absorption: bool = False
    support: SupportSpec
    params: PropagationParams
    # Initialisierung ist deterministisch; der Seed wird nur protokolliert
    seed: int = Field(default=0, ge=0, lt=2 ** 64)


def absorption_constraint(a: np.ndarray, inside: np.ndarray, keep_imaginary: bool = True) -> np.ndarray:
    """Negative reelle Absorption -> 0 (Imaginaerteil bleibt), ausserhalb Support 0."""
    if not keep_imaginary:
        a = a.real
    a = np.where(a.real < 0, 1j * a.imag, a)
    return np.where(inside, a, 0.0)


def _holo_update(t: np.ndarray, amplitude: np.ndarray, mask: np.ndarray, inside: np.ndarray,
                 params: PropagationParams,
                 keep_imaginary: bool = True) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Liefert (t_{k+1}, U_k, a'_k)."""
    U = _propagate(t, params)
    t_prime = _propagate(detector_constraint(U, amplitude, mask), params.reversed())
    a_prime = 1.0 - t_prime
    return 1.0 - absorption_constraint(a_prime, inside, keep_imaginary), U, a_prime


def holo_step(t_k: FieldLike, hologram: MeasuredPattern, support: SupportSpec,
              params: PropagationParams) -> ComplexField:
    t = as_array(t_k)
    if t.shape != hologram.amplitude.shape or params.N != hologram.N:
        raise DimensionError({
            "message": f"field {t.shape}, hologram {hologram.amplitude.shape} and N={params.N} disagree",
            "shape": tuple(t.shape),
        })
    t_next, _, _ = _holo_update(t, hologram.amplitude, hologram.mask, support.indicator(hologram.N), params)
    return ComplexField(t_next)


def initial_exit_wave(hologram: MeasuredPattern, params: PropagationParams) -> np.ndarray:
    """Rueckpropagierte gemessene Amplitude mit der Phase der ungestreuten ebenen Welle.

    Fehlende Samples starten mit Amplitude 1; ein leeres Hologramm ergibt t = 1.
    Mit Phase 0 statt exp(ikz) waere t bis auf den Faktor exp(-ikz) bestimmt.
    """
    start = np.where(hologram.mask, hologram.amplitude, 1.0) * transfer_function(params)[0, 0]
    return _propagate(start, params.reversed())


def smooths_after(k: int, config: HoloConfig) -> bool:
    """Wird nach Iteration k geglaettet?"""
    if k % config.smoothing_interval or k >= config.iterations:
        return False
    return k <= config.smoothing_stop * config.iterations


def absorption_image(t: np.ndarray) -> np.ndarray:
    return np.clip(np.real(1.0 - t), 0.0, 1.0)


def reconstruct_hologram(hologram: MeasuredPattern, config: HoloConfig,
                         ground_truth: Optional[RealImage] = None,
                         kernel: SmoothingKernel = DEFAULT_KERNEL) -> RetrievalResult:
    """Iterative Rekonstruktion eines In-line-Hologramms mit fehlenden Samples."""
    if hologram.kind != "hologram":
        raise KindError({
            "message": f"hologram reconstruction requires a hologram, got '{hologram.kind}'",
            "kind": hologram.kind,
        })
    params = config.params
    if params.N != hologram.N:
        raise DimensionError({
            "message": f"propagation N={params.N} != hologram N={hologram.N}",
            "shape": (params.N, hologram.N),
        })
    inside = config.support.indicator(hologram.N)
    truth = as_array(ground_truth) if ground_truth is not None else None

    logger.info(
        "holography: N=%d, f=%.4f, %d iterations, smoothing every %d up to %.0f%%, real absorption=%s",
        hologram.N, hologram.missing_fraction, config.iterations, config.smoothing_interval,
        100 * config.smoothing_stop, config.real_absorption,
    )

    t = initial_exit_wave(hologram, params)
    trace = ErrorTrace()
    for k in range(1, config.iterations + 1):
        t_next, U, a_prime = _holo_update(t, hologram.amplitude, hologram.mask, inside, params,
                                          keep_imaginary=not config.real_absorption)
        eq9 = _fienup_ratio(np.abs(U), hologram.amplitude, hologram.mask)
        eq10 = _support_ratio(a_prime, inside)
        eq8 = None
        if truth is not None:
            eq8 = error_rms(crop_center(absorption_image(t_next), truth.shape[0]), truth)
        trace.record(k, eq9, eq10, eq8)
        t = t_next
        if smooths_after(k, config):
            t = _smooth(t, kernel)

    absorption = absorption_image(t)
    detector = np.abs(_propagate(t, params))
    recovered = MeasuredPattern(
        amplitude=np.where(hologram.mask, hologram.amplitude, detector),
        mask=np.ones_like(hologram.mask),
        geometry=hologram.geometry,
        kind="hologram",
    )
    logger.info("holography finished: %s", trace.final_errors())
    return RetrievalResult(
        object=RealImage(absorption, geometry=hologram.geometry),
        recovered_pattern=recovered,
        traces=[trace],
        selected=[0],
        final_errors=[trace.final_errors()],
    )
