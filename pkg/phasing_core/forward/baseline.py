"""
Baselines - Einzelne inverse Transformation bei bekannter Phase

Nur in der Simulation verfuegbar: das komplexe Feld ist bekannt, fehlende Samples
sind 0. Dient als Vergleichszeile "inverse FT" der Fehlertabellen; auch im
symmetrisierten Szenario wird nicht aufgefuellt.
"""

import numpy as np

from ..field.core import FieldLike, as_array
from .propagation import PropagationParams, _propagate


def inverse_ft_baseline(spectrum: FieldLike, mask: np.ndarray) -> np.ndarray:
    """Re(idft2) des maskierten komplexen Fernfelds."""
    F = as_array(spectrum)
    filled = np.where(np.asarray(mask, dtype=bool), F, 0.0)
    return np.fft.ifft2(filled).real


def backpropagation_baseline(detector_field: FieldLike, mask: np.ndarray,
                             params: PropagationParams) -> np.ndarray:
    """Absorption 1 - Re(t) nach einer Rueckpropagation des maskierten Detektorfelds."""
    U = np.where(np.asarray(mask, dtype=bool), as_array(detector_field), 0.0)
    t = _propagate(U, params.reversed())
    return 1.0 - t.real
