"""
Holo Module - Iterative Rekonstruktion von In-line-Hologrammen
"""

from .smoothing import SmoothingKernel, DEFAULT_KERNEL, kernel_transfer, smooth
from .reconstruct import (
    HoloConfig,
    absorption_constraint,
    holo_step,
    initial_exit_wave,
    smooths_after,
    absorption_image,
    reconstruct_hologram,
)

__all__ = [
    'SmoothingKernel', 'DEFAULT_KERNEL', 'kernel_transfer', 'smooth',
    'HoloConfig', 'absorption_constraint', 'holo_step', 'initial_exit_wave', 'smooths_after',
    'absorption_image', 'reconstruct_hologram',
]
