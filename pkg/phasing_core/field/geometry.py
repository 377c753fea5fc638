"""
Grid Geometry - Abtastgeometrie von Objekt- und Detektorebene

Haelt N, N0 und optional die physikalischen Groessen (Pixelgroesse, Wellenlaenge,
Abstand). Das lineare Oversampling ist sigma = N / N0.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from typing_extensions import Self

from ..errors import DimensionError, DomainError, UnsupportedSizeError


@dataclass(frozen=True)
class GridGeometry:
    """Geometrie eines N x N Gitters mit eingebettetem N0 x N0 Objekt"""
    N: int
    N0: int
    pixel_size: Optional[float] = None     # Delta, Detektorpixel
    wavelength: Optional[float] = None     # lambda
    distance: Optional[float] = None       # z, Objekt-Detektor-Abstand

    def __post_init__(self):
        if self.N < 2 or self.N % 2:
            raise UnsupportedSizeError({
                "message": f"grid size N={self.N} must be even and >= 2",
                "N": self.N,
            })
        if not 1 <= self.N0 <= self.N:
            raise DimensionError({
                "message": f"object side N0={self.N0} must lie in [1, N={self.N}]",
                "N": self.N,
                "N0": self.N0,
            })
        for name in ("pixel_size", "wavelength"):
            value = getattr(self, name)
            if value is not None and not value > 0:
                raise DomainError({"message": f"{name} must be positive", "value": value})

    @classmethod
    def for_cdi(cls, N: int, N0: int, **physical) -> Self:
        """Wie der Konstruktor, lehnt aber sigma <= sqrt(2) ab."""
        geom = cls(N=N, N0=N0, **physical)
        if not geom.sigma > math.sqrt(2):
            raise DomainError({
                "message": f"oversampling sigma={geom.sigma:g} violates sigma > sqrt(2)",
                "sigma": geom.sigma,
            })
        return geom

    @property
    def sigma(self) -> float:
        return self.N / self.N0

    @property
    def detector_side(self) -> Optional[float]:
        """S = N * Delta"""
        if self.pixel_size is None:
            return None
        return self.N * self.pixel_size

    @property
    def reconstructed_extent(self) -> Optional[float]:
        """S0 = lambda * z / Delta, nur bei deklarierter Fernfeld-Geometrie"""
        if self.pixel_size is None or self.wavelength is None or self.distance is None:
            return None
        return self.wavelength * self.distance / self.pixel_size


def center_offset(N: int, side: int) -> int:
    """Startindex eines zentrierten Quadrats der Kantenlaenge side."""
    if side > N:
        raise DimensionError({
            "message": f"side {side} exceeds grid size {N}",
            "N": N,
            "side": side,
        })
    return (N - side) // 2


def make_support_indicator(N: int, side: int) -> np.ndarray:
    """Boolesche N x N Maske des zentrierten Quadrats (gleicher Offset wie embed_object)."""
    off = center_offset(N, side)
    indicator = np.zeros((N, N), dtype=bool)
    indicator[off:off + side, off:off + side] = True
    return indicator
