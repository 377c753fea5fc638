"""
Ranking - Auswahl und Uebereinstimmung der Fehlermasse ueber Restarts
"""

from typing import Dict, List, Sequence, Set

import numpy as np

from ..errors import DomainError


def rank_by(final_errors: Sequence[Dict[str, float]], metric: str) -> List[int]:
    """Restart-Indizes aufsteigend nach Fehler (NaN zuletzt, stabil bei Gleichstand)."""
    try:
        values = np.array([e[metric] for e in final_errors], dtype=np.float64)
    except KeyError:
        raise DomainError({"message": f"metric '{metric}' missing in final errors", "value": metric})
    values = np.where(np.isnan(values), np.inf, values)
    return [int(i) for i in np.argsort(values, kind="stable")]


def top_k(final_errors: Sequence[Dict[str, float]], metric: str, k: int) -> Set[int]:
    return set(rank_by(final_errors, metric)[:k])


def metric_overlap(final_errors: Sequence[Dict[str, float]], k: int = 10) -> Dict[str, int]:
    """|top_k(eq9) & top_k(eq8)| und |top_k(eq10) & top_k(eq8)|."""
    reference = top_k(final_errors, "eq8", k)
    return {
        "overlap_eq9": len(top_k(final_errors, "eq9", k) & reference),
        "overlap_eq10": len(top_k(final_errors, "eq10", k) & reference),
    }
