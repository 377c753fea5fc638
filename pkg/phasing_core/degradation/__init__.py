"""
Degradation Module - Fehlende Samples und Symmetrisierung
"""

from .pattern import MeasuredPattern, PATTERN_KINDS
from .masks import (
    MaskSpec,
    round_half_up,
    random_missing_mask,
    apply_random_mask,
    central_block_side,
    central_missing_mask,
    apply_central_mask,
    apply_mask,
)
from .symmetrize import symmetrize

__all__ = [
    'MeasuredPattern', 'PATTERN_KINDS',
    'MaskSpec', 'round_half_up', 'random_missing_mask', 'apply_random_mask',
    'central_block_side', 'central_missing_mask', 'apply_central_mask', 'apply_mask',
    'symmetrize',
]
