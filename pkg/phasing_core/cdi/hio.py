"""
HIO - Hybrid-Input-Output mit Rueckgewinnung fehlender Amplituden

Ein Schritt:
1. G = dft2(g_k)
2. gemessene Samples: Amplitude ersetzen, Phase behalten (|G| = 0 -> Phase 0);
   fehlende Samples: G unveraendert (dort wird die Amplitude mitgeschaetzt)
3. g' = idft2(G')
4. Verletzungen V = ausserhalb Support oder Re(g') < 0 im Support:
   g_{k+1} = g_k - beta g' auf V, sonst Re(g')

Optional folgen er_iterations Schritte Error-Reduction (Verletzungen -> 0).
Die Fehlermasse eq9/eq8 beziehen sich auf die Objektschaetzung P(g'), nicht auf
das HIO-Iterat, das ausserhalb des Supports die Rueckkopplung mitfuehrt.
"""

import logging
from typing import Optional, Tuple

import numpy as np

from ..degradation.pattern import MeasuredPattern
from ..errors import DimensionError
from ..field.core import ComplexField, RealImage, as_array, crop_center
from ..field.geometry import center_offset
from ..field.rng import make_generator
from ..metrics.errors import _fienup_ratio, _support_ratio, error_rms
from ..metrics.trace import ErrorTrace
from .align import ReferenceAligner
from .config import HioConfig, SupportSpec

logger = logging.getLogger(__name__)


def detector_constraint(G: np.ndarray, amplitude: np.ndarray, mask: np.ndarray) -> np.ndarray:
    """Ersetzt |G| an gemessenen Samples; fehlende Samples bleiben unveraendert."""
    magnitude = np.abs(G)
    phase = np.divide(G, magnitude, out=np.ones_like(G), where=magnitude > 0)
    return np.where(mask, amplitude * phase, G)


def _detector_projection(g: np.ndarray, amplitude: np.ndarray, mask: np.ndarray) -> np.ndarray:
    return np.fft.ifft2(detector_constraint(np.fft.fft2(g), amplitude, mask))


def _hio_update(g: np.ndarray, amplitude: np.ndarray, mask: np.ndarray,
                inside: np.ndarray, beta: float) -> Tuple[np.ndarray, np.ndarray]:
    """Liefert (g_{k+1}, g'_k)."""
    g_prime = _detector_projection(g, amplitude, mask)
    violation = ~inside | (g_prime.real < 0)
    g_next = np.where(violation, g - beta * g_prime, g_prime.real)
    return g_next, g_prime


def _er_update(g: np.ndarray, amplitude: np.ndarray, mask: np.ndarray,
               inside: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    g_prime = _detector_projection(g, amplitude, mask)
    return object_estimate(g_prime, inside).astype(complex), g_prime


def _check_shape(g: np.ndarray, pattern: MeasuredPattern) -> None:
    if g.shape != pattern.amplitude.shape:
        raise DimensionError({
            "message": f"iterate shape {g.shape} != pattern shape {pattern.amplitude.shape}",
            "shape": tuple(g.shape),
        })


def hio_step(g_k: ComplexField, pattern: MeasuredPattern, support: SupportSpec,
             beta: float) -> ComplexField:
    g = as_array(g_k)
    _check_shape(g, pattern)
    inside = support.indicator(pattern.N)
    g_next, _ = _hio_update(g, pattern.amplitude, pattern.mask, inside, beta)
    return ComplexField(g_next)


def object_estimate(g: np.ndarray, inside: np.ndarray) -> np.ndarray:
    """Reelles, nicht-negatives Objekt im Support, 0 ausserhalb."""
    return np.where(inside, np.maximum(np.real(g), 0.0), 0.0)


def embed_ground_truth(ground_truth: RealImage, N: int) -> np.ndarray:
    """Original (N0 x N0) an der Support-Position im N x N Gitter."""
    truth = as_array(ground_truth)
    side = truth.shape[0]
    off = center_offset(N, side)
    out = np.zeros((N, N), dtype=np.float64)
    out[off:off + side, off:off + side] = truth
    return out


class ObjectErrorProbe:
    """Objektfehler (eq8) nach Ausrichtung auf die Ground Truth (Translation + Zwilling)."""

    def __init__(self, ground_truth: RealImage, N: int):
        self.side = as_array(ground_truth).shape[0]
        self.truth = as_array(ground_truth)
        self.aligner = ReferenceAligner(embed_ground_truth(ground_truth, N))

    def aligned(self, estimate: np.ndarray) -> np.ndarray:
        return self.aligner.align(estimate)

    def __call__(self, estimate: np.ndarray) -> float:
        return error_rms(crop_center(self.aligned(estimate), self.side), self.truth)


def initial_estimate(pattern: MeasuredPattern, seed: int, restart_index: int) -> np.ndarray:
    """idft2(gemessene Amplitude * exp(i phi0)), phi0 ~ U[0, 2 pi) je Sample."""
    rng = make_generator(seed, restart_index)
    phi0 = rng.uniform(0.0, 2.0 * np.pi, size=pattern.amplitude.shape)
    return np.fft.ifft2(pattern.amplitude * np.exp(1j * phi0))


def _iterate_restart(pattern: MeasuredPattern, support: SupportSpec, config: HioConfig,
                     restart_index: int,
                     ground_truth: Optional[RealImage]) -> Tuple[np.ndarray, np.ndarray, ErrorTrace]:
    """Liefert (letztes Iterat, letzte Objektschaetzung, Fehlerverlauf)."""
    N = pattern.N
    inside = support.indicator(N)
    probe = ObjectErrorProbe(ground_truth, N) if ground_truth is not None else None
    if pattern.measured_count == 0:
        logger.warning("restart %d: pattern has no measured samples, eq9 undefined", restart_index)

    g = initial_estimate(pattern, config.seed, restart_index)
    estimate = object_estimate(g, inside)
    trace = ErrorTrace()
    for k in range(1, config.iterations + config.er_iterations + 1):
        if k <= config.iterations:
            g, g_prime = _hio_update(g, pattern.amplitude, pattern.mask, inside, config.beta)
        else:
            g, g_prime = _er_update(g, pattern.amplitude, pattern.mask, inside)
        estimate = object_estimate(g_prime, inside)
        eq9 = _fienup_ratio(np.abs(np.fft.fft2(estimate)), pattern.amplitude, pattern.mask)
        eq10 = _support_ratio(g_prime, inside)
        eq8 = probe(estimate) if probe is not None else None
        trace.record(k, eq9, eq10, eq8)

    logger.debug("restart %d finished: %s", restart_index, trace.final_errors())
    return g, estimate, trace


def run_restart(pattern: MeasuredPattern, support: SupportSpec, config: HioConfig,
                restart_index: int,
                ground_truth: Optional[RealImage] = None) -> Tuple[ComplexField, ErrorTrace]:
    """Ein HIO-Lauf ab zufaelliger Startphase, deterministisch in (seed, restart_index)."""
    g, _, trace = _iterate_restart(pattern, support, config, restart_index, ground_truth)
    return ComplexField(g), trace


def restart_estimate(pattern: MeasuredPattern, support: SupportSpec, config: HioConfig,
                     restart_index: int,
                     ground_truth: Optional[RealImage] = None) -> Tuple[np.ndarray, ErrorTrace]:
    """Wie run_restart, liefert aber die Objektschaetzung, auf die sich der Verlauf bezieht."""
    _, estimate, trace = _iterate_restart(pattern, support, config, restart_index, ground_truth)
    return estimate, trace
