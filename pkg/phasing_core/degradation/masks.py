"""
Masks - Entfernen von Intensitaetssamples

Zwei Modi:
- random: genau round(f * N^2) Samples, gleichverteilt ohne Zuruecklegen
- central: zentriertes Quadrat der Seite s = round(N * sqrt(f)) um DC (Beamstop)

Masken werden per Schnittmenge kombiniert: ein Sample, das in einer der beiden
Eingaben fehlt, fehlt auch im Ergebnis.
"""

import logging
import math
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..errors import DomainError
from ..field.core import shift_dc_to_corner
from ..field.rng import make_generator
from .pattern import MeasuredPattern

logger = logging.getLogger(__name__)


class MaskSpec(BaseModel):
    """Beschreibung einer Maske (Modus, Ziel-f, Seed)"""
    model_config = ConfigDict(frozen=True)

    mode: Literal["random", "central"] = "random"
    f: float = Field(ge=0.0, le=1.0)
    seed: int = Field(default=0, ge=0, lt=2 ** 64)


def round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def _check_fraction(f: float) -> None:
    if not 0.0 <= f <= 1.0:
        raise DomainError({
            "message": f"missing fraction f={f} outside [0, 1]",
            "value": f,
        })


def random_missing_mask(N: int, f: float, seed: int) -> np.ndarray:
    """Boolesche Maske (True = fehlend) mit exakt round(f * N^2) Eintraegen."""
    _check_fraction(f)
    total = N * N
    count = round_half_up(f * total)
    rng = make_generator(seed)
    missing = np.zeros(total, dtype=bool)
    missing[rng.permutation(total)[:count]] = True
    return missing.reshape(N, N)


def apply_random_mask(pattern: MeasuredPattern, f: float, seed: int) -> MeasuredPattern:
    """Entfernt zufaellig round(f * N^2) Samples (deterministisch ueber seed)."""
    missing = random_missing_mask(pattern.N, f, seed)
    result = pattern.replace(mask=pattern.mask & ~missing)
    logger.info("random mask: target f=%g, realized f=%.6f (seed=%d)", f, result.missing_fraction, seed)
    return result


def central_block_side(N: int, f: float) -> int:
    """s = round(N * sqrt(f))"""
    _check_fraction(f)
    return min(N, round_half_up(N * math.sqrt(f)))


def central_missing_mask(N: int, f: float) -> np.ndarray:
    """Boolesche Maske (True = fehlend) des zentralen Quadrats, DC in der Ecke."""
    s = central_block_side(N, f)
    start = N // 2 - s // 2
    centered = np.zeros((N, N), dtype=bool)
    centered[start:start + s, start:start + s] = True
    return shift_dc_to_corner(centered)


def apply_central_mask(pattern: MeasuredPattern, f: float) -> MeasuredPattern:
    """Entfernt ein zentriertes Quadrat um DC; realisiertes f steht im Ergebnis."""
    missing = central_missing_mask(pattern.N, f)
    result = pattern.replace(mask=pattern.mask & ~missing)
    s = central_block_side(pattern.N, f)
    logger.info("central mask: %dx%d block, target f=%g, realized f=%.6f", s, s, f, result.missing_fraction)
    return result


def apply_mask(pattern: MeasuredPattern, spec: MaskSpec) -> MeasuredPattern:
    if spec.mode == "central":
        return apply_central_mask(pattern, spec.f)
    return apply_random_mask(pattern, spec.f, spec.seed)
