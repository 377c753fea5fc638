"""
Angular Spectrum Propagation - Freiraumausbreitung fuer In-line-Hologramme

U = IDFT{ DFT[t] * exp((2 pi i z / lambda) sqrt(1 - alpha^2 - beta^2)) }
mit alpha = lambda m / S, beta = lambda n / S fuer zentrierte Frequenzindizes m, n.
Evaneszente Anteile (alpha^2 + beta^2 > 1) sind 0; +z und -z sind exakt zueinander
invers.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator
from typing_extensions import Self

from ..degradation.pattern import MeasuredPattern
from ..errors import DimensionError, DomainError
from ..field.core import ComplexField, FieldLike, RealImage, as_array
from ..field.geometry import GridGeometry

logger = logging.getLogger(__name__)


class PropagationParams(BaseModel):
    """Parameter der Winkelspektrum-Methode (Laengen in Metern)"""
    model_config = ConfigDict(frozen=True)

    wavelength: float
    distance: float          # z, negativ = Rueckpropagation
    side: float              # S, physikalische Kantenlaenge des Feldes
    N: int

    @field_validator("wavelength", "side")
    @classmethod
    def _positive(cls, v: float) -> float:
        if not v > 0:
            raise ValueError("must be positive")
        return v

    @field_validator("N")
    @classmethod
    def _even(cls, v: int) -> int:
        if v < 2 or v % 2:
            raise ValueError("N must be even and >= 2")
        return v

    @property
    def pixel_size(self) -> float:
        return self.side / self.N

    def reversed(self) -> Self:
        """Gleiche Geometrie, Ausbreitung in Gegenrichtung (-z)."""
        return self.model_copy(update={"distance": -self.distance})

    def direction_cosines(self):
        """(alpha, beta) auf dem Gitter, DC in der Ecke."""
        m = np.fft.fftfreq(self.N) * self.N
        alpha = self.wavelength * m / self.side
        return alpha[:, None], alpha[None, :]


@lru_cache(maxsize=32)
def transfer_function(params: PropagationParams) -> np.ndarray:
    """Propagator im Frequenzraum, 0 im evaneszenten Band."""
    alpha, beta = params.direction_cosines()
    radial = 1.0 - alpha ** 2 - beta ** 2
    propagating = radial >= 0
    kz = np.sqrt(np.where(propagating, radial, 0.0))
    H = np.where(
        propagating,
        np.exp(2j * np.pi * params.distance / params.wavelength * kz),
        0.0,
    )
    if not propagating.all():
        logger.debug("ASM: %d evanescent frequencies zeroed", int((~propagating).sum()))
    H.flags.writeable = False
    return H


def asm_propagate(value: FieldLike, params: PropagationParams) -> ComplexField:
    """Propagiert ein Feld um params.distance (Winkelspektrum-Methode)."""
    arr = as_array(value)
    if arr.shape != (params.N, params.N):
        raise DimensionError({
            "message": f"field shape {arr.shape} does not match N={params.N}",
            "shape": tuple(arr.shape),
        })
    return ComplexField(_propagate(arr, params))


def _propagate(arr: np.ndarray, params: PropagationParams) -> np.ndarray:
    return np.fft.ifft2(np.fft.fft2(arr) * transfer_function(params))


@dataclass(frozen=True)
class ExitWave:
    """Austrittswelle t(x,y) direkt hinter der Objektebene"""
    t: ComplexField
    geometry: Optional[GridGeometry] = field(default=None, compare=False)


def make_exit_wave(absorption: RealImage) -> ExitWave:
    """t = 1 - a fuer ein reines Amplitudenobjekt unter Ebene-Welle-Beleuchtung."""
    a = as_array(absorption)
    if np.any(a > 1) or np.any(a < 0):
        raise DomainError({
            "message": "absorption must lie in [0, 1]",
            "max": float(a.max()),
        })
    return ExitWave(ComplexField(1.0 - a), geometry=getattr(absorption, "geometry", None))


def simulate_hologram(exit_wave: ExitWave, params: PropagationParams) -> MeasuredPattern:
    """H = |U|^2 mit U = asm_propagate(t, z); gespeichert wird |U|."""
    U = asm_propagate(exit_wave.t, params)
    N0 = exit_wave.geometry.N0 if exit_wave.geometry is not None else params.N
    geometry = GridGeometry(
        N=params.N,
        N0=N0,
        pixel_size=params.pixel_size,
        wavelength=params.wavelength,
        distance=params.distance,
    )
    return MeasuredPattern(amplitude=np.abs(U.data), geometry=geometry, kind="hologram")
