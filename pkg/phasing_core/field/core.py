"""
Field Core - Komplexe 2D-Felder und Fourier-Konventionen

Konventionen:
- Vorwaerts-DFT unnormiert, inverse DFT mit 1/N^2 (numpy-Standard "backward").
- Intern liegt DC immer bei Index (0, 0); Zentrierung nur fuer Ein-/Ausgabe.
- Nur gerade, quadratische Gitter.
"""

from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

import numpy as np

from ..errors import DimensionError, DomainError, GridIndexError, UnsupportedSizeError
from .geometry import GridGeometry, center_offset


def _check_square(arr: np.ndarray) -> None:
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionError({
            "message": f"expected square 2D grid, got shape {arr.shape}",
            "shape": tuple(arr.shape),
        })
    if arr.shape[0] < 2:
        raise DimensionError({
            "message": "grid side must be >= 2",
            "shape": tuple(arr.shape),
        })


def _check_finite(arr: np.ndarray) -> None:
    if not np.all(np.isfinite(arr)):
        raise DomainError({"message": "grid contains NaN or Inf"})


@dataclass(frozen=True)
class ComplexField:
    """N x N Gitter komplexer Amplituden (Objekt- oder Detektorebene)"""
    data: np.ndarray

    def __post_init__(self):
        arr = np.array(self.data, dtype=np.complex128)
        _check_square(arr)
        _check_finite(arr)
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)

    @property
    def N(self) -> int:
        return self.data.shape[0]


@dataclass(frozen=True)
class RealImage:
    """Quadratisches Gitter nicht-negativer reeller Werte"""
    data: np.ndarray
    geometry: Optional[GridGeometry] = field(default=None, compare=False)

    def __post_init__(self):
        arr = np.array(self.data, dtype=np.float64)
        _check_square(arr)
        _check_finite(arr)
        if np.any(arr < 0):
            raise DomainError({
                "message": "RealImage entries must be >= 0",
                "min": float(arr.min()),
            })
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)

    @property
    def side(self) -> int:
        return self.data.shape[0]


FieldLike = Union[ComplexField, RealImage, np.ndarray]


def as_array(value: FieldLike) -> np.ndarray:
    """Liefert das zugrundeliegende Array (ohne Kopie)."""
    return value.data if isinstance(value, (ComplexField, RealImage)) else np.asarray(value)


def dft2(value: FieldLike) -> ComplexField:
    """F(u,v) = sum f(x,y) exp(-2 pi i (ux+vy)/N), DC bei (0,0)."""
    arr = as_array(value)
    _check_square(arr)
    return ComplexField(np.fft.fft2(arr))


def idft2(value: FieldLike) -> ComplexField:
    """Inverse zu dft2 mit Normierung 1/N^2."""
    arr = as_array(value)
    _check_square(arr)
    return ComplexField(np.fft.ifft2(arr))


def _check_even(arr: np.ndarray) -> None:
    _check_square(arr)
    if arr.shape[0] % 2:
        raise UnsupportedSizeError({
            "message": f"centering requires even N, got {arr.shape[0]}",
            "N": arr.shape[0],
        })


def shift_dc_to_center(value: FieldLike) -> np.ndarray:
    """Zyklische Verschiebung um (N/2, N/2): DC von der Ecke in die Mitte."""
    arr = as_array(value)
    _check_even(arr)
    return np.fft.fftshift(arr)


def shift_dc_to_corner(value: FieldLike) -> np.ndarray:
    arr = as_array(value)
    _check_even(arr)
    return np.fft.ifftshift(arr)


def centro_partner(u: int, v: int, N: int) -> Tuple[int, int]:
    """Zentrosymmetrischer Partner ((N-u) mod N, (N-v) mod N) in DC-Ecke-Koordinaten."""
    if not (0 <= u < N and 0 <= v < N):
        raise GridIndexError({
            "message": f"index ({u}, {v}) outside [0, {N})",
            "index": (u, v),
            "N": N,
        })
    return (N - u) % N, (N - v) % N


def partner_view(arr: np.ndarray) -> np.ndarray:
    """Array b mit b[u, v] = arr[centro_partner(u, v)]."""
    return np.roll(np.flip(arr, axis=(0, 1)), shift=(1, 1), axis=(0, 1))


def energy(value: FieldLike) -> float:
    """Summe |field|^2."""
    arr = as_array(value)
    return float(np.sum(np.abs(arr) ** 2))


def crop_center(value: FieldLike, side: int) -> np.ndarray:
    """Schneidet das zentrierte side x side Quadrat aus (Umkehrung von embed_object)."""
    arr = as_array(value)
    off = center_offset(arr.shape[0], side)
    return arr[off:off + side, off:off + side]
