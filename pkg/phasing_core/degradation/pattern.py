"""
Measured Pattern - Amplituden + Messmaske + Geometrie

Unmessbare Samples tragen per Konvention Amplitude 0 und werden nie als Daten gelesen.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..errors import DimensionError, DomainError, KindError
from ..field.core import _check_finite, _check_square
from ..field.geometry import GridGeometry

PATTERN_KINDS = ("diffraction", "hologram")


@dataclass(frozen=True)
class MeasuredPattern:
    """Beugungsbild oder Hologramm mit fehlenden Samples"""
    amplitude: np.ndarray
    mask: Optional[np.ndarray] = None          # True = gemessen
    geometry: Optional[GridGeometry] = field(default=None, compare=False)
    kind: str = "diffraction"

    def __post_init__(self):
        if self.kind not in PATTERN_KINDS:
            raise KindError({
                "message": f"unknown pattern kind '{self.kind}'",
                "kind": self.kind,
            })
        amp = np.array(self.amplitude, dtype=np.float64)
        _check_square(amp)
        _check_finite(amp)
        if np.any(amp < 0):
            raise DomainError({
                "message": "pattern amplitudes must be >= 0",
                "min": float(amp.min()),
            })
        if self.mask is None:
            mask = np.ones(amp.shape, dtype=bool)
        else:
            mask = np.array(self.mask, dtype=bool)
            if mask.shape != amp.shape:
                raise DimensionError({
                    "message": f"mask shape {mask.shape} != amplitude shape {amp.shape}",
                    "shape": tuple(mask.shape),
                })
        amp[~mask] = 0.0
        amp.flags.writeable = False
        mask.flags.writeable = False
        object.__setattr__(self, "amplitude", amp)
        object.__setattr__(self, "mask", mask)

    @property
    def N(self) -> int:
        return self.amplitude.shape[0]

    @property
    def intensity(self) -> np.ndarray:
        return self.amplitude ** 2

    @property
    def measured_count(self) -> int:
        return int(np.count_nonzero(self.mask))

    @property
    def missing_fraction(self) -> float:
        """f = N_missing / N^2"""
        return 1.0 - self.measured_count / self.mask.size

    def replace(self, *, amplitude: Optional[np.ndarray] = None,
                mask: Optional[np.ndarray] = None) -> "MeasuredPattern":
        """Neues Muster mit ersetzter Amplitude und/oder Maske."""
        return MeasuredPattern(
            amplitude=self.amplitude if amplitude is None else amplitude,
            mask=self.mask if mask is None else mask,
            geometry=self.geometry,
            kind=self.kind,
        )
