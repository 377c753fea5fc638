"""
Symmetrization - Auffuellen fehlender Samples ueber den zentrosymmetrischen Partner

Beugungsbilder reeller Objekte sind zentrosymmetrisch: |F(u,v)| = |F(partner(u,v))|.
Selbst-Partner (DC, Nyquist-Zeilen/-Spalten) koennen nicht aufgefuellt werden.
"""

import logging

import numpy as np

from ..errors import KindError
from ..field.core import partner_view
from .pattern import MeasuredPattern

logger = logging.getLogger(__name__)


def symmetrize(pattern: MeasuredPattern) -> MeasuredPattern:
    """Kopiert Partner-Amplituden in fehlende Samples, deren Partner gemessen ist."""
    if pattern.kind != "diffraction":
        raise KindError({
            "message": f"symmetrization requires a diffraction pattern, got '{pattern.kind}'",
            "kind": pattern.kind,
        })
    mask = pattern.mask
    refill = ~mask & partner_view(mask)
    amplitude = np.where(refill, partner_view(pattern.amplitude), pattern.amplitude)
    result = pattern.replace(amplitude=amplitude, mask=mask | refill)
    logger.info(
        "symmetrized: %d samples refilled, f %.6f -> %.6f",
        int(refill.sum()), pattern.missing_fraction, result.missing_fraction,
    )
    return result
