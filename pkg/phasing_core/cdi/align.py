"""
Alignment - Translation und Zwillingsbild per Kreuzkorrelation

Loesungen reeller CDI-Objekte sind nur bis auf zyklische Translation und 180-Grad-
Drehung eindeutig. Gesucht wird ueber alle N^2 Verschiebungen des Kandidaten und
seiner gedrehten Kopie das Maximum der Kreuzkorrelation mit der Referenz.
"""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..errors import DimensionError
from ..field.core import FieldLike, RealImage, as_array

logger = logging.getLogger(__name__)

TIE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class Alignment:
    shift: Tuple[int, int]
    flipped: bool
    score: float


class ReferenceAligner:
    """Haelt das Spektrum der Referenz fuer wiederholte Ausrichtungen."""

    def __init__(self, reference: FieldLike):
        ref = np.asarray(as_array(reference), dtype=np.float64)
        self.N = ref.shape[0]
        self._spectrum = np.fft.fft2(ref)
        k = np.arange(self.N)
        # DFT von flip(a) = exp(2 pi i (k+l)/N) * conj(DFT(a)) fuer reelles a
        self._flip_ramp = np.exp(2j * np.pi * (k[:, None] + k[None, :]) / self.N)

    def find(self, candidate: FieldLike) -> Alignment:
        cand = np.asarray(as_array(candidate), dtype=np.float64)
        if cand.shape != (self.N, self.N):
            raise DimensionError({
                "message": f"candidate shape {cand.shape} != reference ({self.N}, {self.N})",
                "shape": tuple(cand.shape),
            })
        A = np.fft.fft2(cand)
        B = self._flip_ramp * np.conj(A)
        corr = (
            np.fft.ifft2(self._spectrum * np.conj(A)).real,
            np.fft.ifft2(self._spectrum * np.conj(B)).real,
        )
        best = max(c.max() for c in corr)
        threshold = best - TIE_TOLERANCE * max(abs(best), 1e-300)
        ties = []
        for flag, c in enumerate(corr):
            rows, cols = np.nonzero(c >= threshold)
            ties.extend((int(r), int(s), flag) for r, s in zip(rows, cols))
        r, s, flag = min(ties)
        return Alignment(shift=(r, s), flipped=bool(flag), score=float(corr[flag][r, s]))

    @staticmethod
    def apply(candidate: FieldLike, alignment: Alignment) -> np.ndarray:
        cand = as_array(candidate)
        if alignment.flipped:
            cand = np.flip(cand, axis=(0, 1))
        return np.roll(cand, alignment.shift, axis=(0, 1))

    def align(self, candidate: FieldLike) -> np.ndarray:
        alignment = self.find(candidate)
        logger.debug("aligned: shift=%s flipped=%s", alignment.shift, alignment.flipped)
        return self.apply(candidate, alignment)


def find_alignment(candidate: RealImage, reference: RealImage) -> Alignment:
    return ReferenceAligner(reference).find(candidate)


def align_to_reference(candidate: RealImage, reference: RealImage) -> RealImage:
    """Variante des Kandidaten mit maximaler Korrelation zur Referenz."""
    c, r = as_array(candidate), as_array(reference)
    if c.shape != r.shape:
        raise DimensionError({
            "message": f"shape mismatch {c.shape} vs {r.shape}",
            "shape": (tuple(c.shape), tuple(r.shape)),
        })
    return RealImage(ReferenceAligner(r).align(c))
