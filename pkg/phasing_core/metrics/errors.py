"""
Error Metrics - Drei Fehlermasse der Rekonstruktion

- error_rms:     Objektebene gegen Original (braucht Ground Truth)
- error_fienup:  Detektorebene, nur ueber gemessene Samples
- error_support: Energie ausserhalb / innerhalb des Supports
"""

from typing import Any, Union

import numpy as np

from ..degradation.pattern import MeasuredPattern
from ..errors import DimensionError, UndefinedMetricError
from ..field.core import FieldLike, as_array


def support_mask(support: Union[np.ndarray, Any], N: int) -> np.ndarray:
    """Akzeptiert ein boolesches Array oder ein Objekt mit indicator(N)."""
    if hasattr(support, "indicator"):
        return support.indicator(N)
    mask = np.asarray(support, dtype=bool)
    if mask.shape != (N, N):
        raise DimensionError({
            "message": f"support shape {mask.shape} does not match N={N}",
            "shape": tuple(mask.shape),
        })
    return mask


def error_rms(reconstruction: FieldLike, original: FieldLike) -> float:
    """(1/N0) * sqrt(sum |o - o0|^2) auf N0 x N0 Ausschnitten."""
    o = as_array(reconstruction)
    o0 = as_array(original)
    if o.shape != o0.shape or o.ndim != 2 or o.shape[0] != o.shape[1]:
        raise DimensionError({
            "message": f"shape mismatch {o.shape} vs {o0.shape}",
            "shape": (tuple(o.shape), tuple(o0.shape)),
        })
    return float(np.sqrt(np.sum(np.abs(o - o0) ** 2)) / o.shape[0])


def _fienup_ratio(retrieved: np.ndarray, measured: np.ndarray, mask: np.ndarray) -> float:
    N = measured.shape[0]
    denom = np.sum(measured[mask] ** 2)
    if denom == 0:
        return float("nan")
    num = np.sum((np.abs(retrieved[mask]) - measured[mask]) ** 2)
    return float(np.sqrt(num / denom) / N)


def error_fienup(retrieved_amplitudes: FieldLike, measured: MeasuredPattern) -> float:
    """{N^-2 sum(|G_k| - |F|)^2 / sum |F|^2}^(1/2), Summen ueber gemessene Samples."""
    G = as_array(retrieved_amplitudes)
    if G.shape != measured.amplitude.shape:
        raise DimensionError({
            "message": f"shape mismatch {G.shape} vs {measured.amplitude.shape}",
            "shape": tuple(G.shape),
        })
    value = _fienup_ratio(G, measured.amplitude, measured.mask)
    if np.isnan(value):
        raise UndefinedMetricError({
            "message": "detector error undefined: no measured signal",
            "measured_count": measured.measured_count,
        })
    return value


def _support_ratio(estimate: np.ndarray, inside: np.ndarray) -> float:
    power = np.abs(estimate) ** 2
    inner = np.sum(power[inside])
    if inner == 0:
        return float("nan")
    return float(np.sqrt(np.sum(power[~inside]) / inner))


def error_support(object_estimate: FieldLike, support) -> float:
    """{sum_outside |g'|^2 / sum_inside |g'|^2}^(1/2)"""
    g = as_array(object_estimate)
    inside = support_mask(support, g.shape[0])
    value = _support_ratio(g, inside)
    if np.isnan(value):
        raise UndefinedMetricError({"message": "support error undefined: zero in-support energy"})
    return value
