"""
Metrics Module - Fehlermasse, Fehlerverlaeufe und Machbarkeitsgrenzen
"""

from .errors import error_rms, error_fienup, error_support, support_mask
from .trace import ErrorTrace, TRACE_METRICS
from .bounds import (
    MODALITIES,
    max_missing_fraction,
    oversampling_ok,
    count_equations,
    reconstructed_extent,
    reconstructed_extent_k,
    geometry_oversampling,
    FeasibilityReport,
    feasibility_report,
)
from .ranking import rank_by, top_k, metric_overlap

__all__ = [
    'error_rms', 'error_fienup', 'error_support', 'support_mask',
    'ErrorTrace', 'TRACE_METRICS',
    'MODALITIES', 'max_missing_fraction', 'oversampling_ok', 'count_equations',
    'reconstructed_extent', 'reconstructed_extent_k', 'geometry_oversampling',
    'FeasibilityReport', 'feasibility_report',
    'rank_by', 'top_k', 'metric_overlap',
]
