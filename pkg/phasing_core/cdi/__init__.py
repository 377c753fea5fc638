"""
CDI Module - Multi-Restart-HIO-Phasenrekonstruktion aus maskierten Beugungsbildern
"""

from .config import SupportSpec, HioConfig
from .align import Alignment, ReferenceAligner, find_alignment, align_to_reference
from .hio import (
    detector_constraint,
    hio_step,
    object_estimate,
    embed_ground_truth,
    ObjectErrorProbe,
    initial_estimate,
    run_restart,
    restart_estimate,
)
from .retrieve import RetrievalResult, resolve_selection_metric, recover_pattern, retrieve

__all__ = [
    'SupportSpec', 'HioConfig',
    'Alignment', 'ReferenceAligner', 'find_alignment', 'align_to_reference',
    'detector_constraint', 'hio_step', 'object_estimate', 'embed_ground_truth',
    'ObjectErrorProbe', 'initial_estimate', 'run_restart', 'restart_estimate',
    'RetrievalResult', 'resolve_selection_metric', 'recover_pattern', 'retrieve',
]
