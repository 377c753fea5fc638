"""
Phasing Core - Phasenrekonstruktion mit fehlenden Detektor-Samples

Simulation von Beugungsbildern und In-line-Hologrammen, Loeschen von Samples,
Rekonstruktion per Multi-Restart-HIO bzw. iterativer Holographie,
Fehlermasse und Machbarkeitsgrenzen.
"""

__version__ = "1.0.0"

from .errors import (
    PhasingError,
    DimensionError,
    UnsupportedSizeError,
    GridIndexError,
    DomainError,
    KindError,
    UndefinedMetricError,
    RetrievalConfigError,
    FileFormatError,
)

__all__ = [
    '__version__',
    'PhasingError', 'DimensionError', 'UnsupportedSizeError', 'GridIndexError',
    'DomainError', 'KindError', 'UndefinedMetricError', 'RetrievalConfigError',
    'FileFormatError',
]
