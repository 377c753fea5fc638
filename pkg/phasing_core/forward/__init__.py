"""
Forward Module - Simulation von Beugungsbildern und In-line-Hologrammen
"""

from .diffraction import embed_object, aperture_envelope, simulate_diffraction
from .propagation import (
    PropagationParams,
    ExitWave,
    transfer_function,
    asm_propagate,
    make_exit_wave,
    simulate_hologram,
)
from .objects import make_test_object
from .baseline import inverse_ft_baseline, backpropagation_baseline

__all__ = [
    'embed_object', 'aperture_envelope', 'simulate_diffraction',
    'PropagationParams', 'ExitWave', 'transfer_function', 'asm_propagate',
    'make_exit_wave', 'simulate_hologram',
    'make_test_object',
    'inverse_ft_baseline', 'backpropagation_baseline',
]
