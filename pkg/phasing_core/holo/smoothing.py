"""
Smoothing - Zyklische Faltung mit normiertem 3x3-Kern im Frequenzraum
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import numpy as np
from typing_extensions import Self

from ..errors import DimensionError, DomainError
from ..field.core import ComplexField, FieldLike, as_array

Weights = Tuple[Tuple[float, float, float], ...]


@dataclass(frozen=True)
class SmoothingKernel:
    """3x3-Gewichte, Summe 1 (mittelwerterhaltend)"""
    weights: Weights

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float64)
        if w.shape != (3, 3):
            raise DimensionError({"message": f"kernel must be 3x3, got {w.shape}", "shape": w.shape})
        if not np.isclose(w.sum(), 1.0, rtol=0, atol=1e-12):
            raise DomainError({"message": f"kernel weights sum to {w.sum()}, expected 1", "value": float(w.sum())})

    @classmethod
    def from_matrix(cls, matrix) -> Self:
        """Normiert eine beliebige 3x3-Matrix auf Summe 1."""
        m = np.asarray(matrix, dtype=np.float64)
        m = m / m.sum()
        return cls(tuple(tuple(float(x) for x in row) for row in m))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=np.float64)


DEFAULT_KERNEL = SmoothingKernel.from_matrix([[1, 1, 1], [1, 4, 1], [1, 1, 1]])


@lru_cache(maxsize=16)
def kernel_transfer(kernel: SmoothingKernel, N: int) -> np.ndarray:
    """DFT des zyklisch um (0, 0) platzierten Kerns."""
    placed = np.zeros((N, N), dtype=np.float64)
    w = kernel.as_array()
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            placed[di % N, dj % N] += w[di + 1, dj + 1]
    H = np.fft.fft2(placed)
    H.flags.writeable = False
    return H


def _smooth(arr: np.ndarray, kernel: SmoothingKernel) -> np.ndarray:
    return np.fft.ifft2(np.fft.fft2(arr) * kernel_transfer(kernel, arr.shape[0]))


def smooth(value: FieldLike, kernel: SmoothingKernel = DEFAULT_KERNEL) -> ComplexField:
    arr = as_array(value)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 3:
        raise DimensionError({
            "message": f"smoothing needs a square grid with N >= 3, got {arr.shape}",
            "shape": tuple(arr.shape),
        })
    return ComplexField(_smooth(arr, kernel))
