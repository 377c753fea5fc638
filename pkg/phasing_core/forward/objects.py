"""
Test Objects - Synthetische Testobjekte

Binaere Figur (Kopf, Rumpf, Arme, Beine) auf Nullhintergrund als Ersatz fuer das
nicht verteilte "man"-Testbild. Rein deterministisch.
"""

import numpy as np

from ..errors import DimensionError
from ..field.core import RealImage


def _bar(yy: np.ndarray, xx: np.ndarray, p0, p1, half_width: float) -> np.ndarray:
    """Pixel mit Abstand <= half_width zur Strecke p0-p1 (Koordinaten in [0, 1])."""
    (y0, x0), (y1, x1) = p0, p1
    dy, dx = y1 - y0, x1 - x0
    t = ((yy - y0) * dy + (xx - x0) * dx) / (dy * dy + dx * dx)
    t = np.clip(t, 0.0, 1.0)
    dist = np.hypot(yy - (y0 + t * dy), xx - (x0 + t * dx))
    return dist <= half_width


def make_test_object(side: int, amplitude: float = 1.0) -> RealImage:
    """Figur auf side x side Pixeln, Werte in {0, amplitude}."""
    if side < 8:
        raise DimensionError({
            "message": f"test object needs side >= 8, got {side}",
            "side": side,
        })
    c = (np.arange(side) + 0.5) / side
    yy, xx = np.meshgrid(c, c, indexing="ij")

    figure = np.hypot(yy - 0.2, xx - 0.5) <= 0.1                         # Kopf
    figure |= (yy >= 0.32) & (yy <= 0.62) & (xx >= 0.4) & (xx <= 0.6)    # Rumpf
    figure |= _bar(yy, xx, (0.36, 0.42), (0.58, 0.2), 0.035)             # linker Arm
    figure |= _bar(yy, xx, (0.36, 0.58), (0.5, 0.82), 0.035)             # rechter Arm (angehoben)
    figure |= _bar(yy, xx, (0.6, 0.45), (0.9, 0.33), 0.045)              # linkes Bein
    figure |= _bar(yy, xx, (0.6, 0.55), (0.9, 0.66), 0.045)              # rechtes Bein
    return RealImage(figure.astype(np.float64) * amplitude)
