"""
Field Module - Felder, Fourier-Transformationen und Gittergeometrie
"""

from .core import (
    ComplexField,
    RealImage,
    as_array,
    dft2,
    idft2,
    shift_dc_to_center,
    shift_dc_to_corner,
    centro_partner,
    partner_view,
    energy,
    crop_center,
)
from .geometry import GridGeometry, center_offset, make_support_indicator
from .rng import make_generator

__all__ = [
    'ComplexField', 'RealImage', 'as_array',
    'dft2', 'idft2', 'shift_dc_to_center', 'shift_dc_to_corner',
    'centro_partner', 'partner_view', 'energy', 'crop_center',
    'GridGeometry', 'center_offset', 'make_support_indicator',
    'make_generator',
]
