"""
Deterministischer Zufallsgenerator

Einziger Generator im Projekt: numpy PCG64, gespeist aus einer SeedSequence
ueber (seed, *keys). Gleiche Eingaben liefern auf jeder Plattform dieselbe Folge.
"""

import numpy as np

from ..errors import DomainError

SEED_LIMIT = 2 ** 64


def make_generator(seed: int, *keys: int) -> np.random.Generator:
    """Erzeugt einen PCG64-Generator fuer (seed, *keys)."""
    entropy = [int(seed), *[int(k) for k in keys]]
    for value in entropy:
        if not 0 <= value < SEED_LIMIT:
            raise DomainError({
                "message": f"seed component {value} outside [0, 2**64)",
                "value": value,
            })
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))
