"""
Diffraction - Rauschfreie Fernfeld-Beugungsbilder

Das Objekt wird zentriert in ein N x N Nullfeld eingebettet (sigma = N / N0) und
ueber die unnormierte DFT ins Fernfeld gebracht. Optional wird die Apertur
quadratischer Pixel als separierbare sinc-Huellkurve aufmultipliziert.
"""

import logging

import numpy as np

from ..degradation.pattern import MeasuredPattern
from ..errors import DimensionError, DomainError, UnsupportedSizeError
from ..field.core import RealImage, as_array, dft2
from ..field.geometry import GridGeometry, center_offset

logger = logging.getLogger(__name__)


def embed_object(obj: RealImage, N: int) -> RealImage:
    """Bettet ein N0 x N0 Objekt zentriert in ein N x N Nullfeld ein."""
    N0 = obj.side
    if N0 > N:
        raise DimensionError({
            "message": f"object side {N0} exceeds grid size {N}",
            "N": N,
            "N0": N0,
        })
    if N % 2 or N0 % 2:
        raise UnsupportedSizeError({
            "message": f"object side {N0} and grid size {N} must both be even",
            "N": N,
            "N0": N0,
        })
    off = center_offset(N, N0)
    padded = np.zeros((N, N), dtype=np.float64)
    padded[off:off + N0, off:off + N0] = obj.data
    geometry = GridGeometry(N=N, N0=N0)
    logger.debug("object %dx%d embedded in %dx%d (sigma=%g)", N0, N0, N, N, geometry.sigma)
    return RealImage(padded, geometry=geometry)


def aperture_envelope(N: int) -> np.ndarray:
    """sinc(pi u/N) * sinc(pi v/N) mit vorzeichenbehafteten Frequenzindizes, DC in der Ecke."""
    s = np.fft.fftfreq(N)      # u / N
    env = np.sinc(s)           # np.sinc(x) = sin(pi x) / (pi x)
    return env[:, None] * env[None, :]


def simulate_diffraction(padded_object: RealImage, envelope: bool = False) -> MeasuredPattern:
    """Amplitude |dft2(objekt)|, optional mit Pixel-Apertur; alle Samples gemessen."""
    arr = as_array(padded_object)
    if np.any(arr < 0):
        raise DomainError({
            "message": "object pixels must be non-negative",
            "min": float(arr.min()),
        })
    amplitude = np.abs(dft2(arr).data)
    if envelope:
        # |u/N| <= 1/2, die Huellkurve ist dort positiv
        amplitude = amplitude * aperture_envelope(amplitude.shape[0])
    geometry = getattr(padded_object, "geometry", None)
    return MeasuredPattern(amplitude=amplitude, geometry=geometry, kind="diffraction")
