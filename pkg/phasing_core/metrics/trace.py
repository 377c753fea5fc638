"""
Error Trace - Fehlerverlauf pro Iteration
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from ..errors import DomainError

TRACE_METRICS = ("eq9", "eq8", "eq10")


@dataclass
class ErrorTrace:
    """Zeilen (Iteration, eq9, eq8?, eq10), Iterationen strikt steigend ab 1"""
    iterations: List[int] = field(default_factory=list)
    eq9: List[float] = field(default_factory=list)
    eq10: List[float] = field(default_factory=list)
    eq8: Optional[List[float]] = None

    def record(self, iteration: int, eq9: float, eq10: float, eq8: Optional[float] = None) -> None:
        expected = self.iterations[-1] + 1 if self.iterations else 1
        if iteration != expected:
            raise DomainError({
                "message": f"trace iteration {iteration}, expected {expected}",
                "value": iteration,
            })
        if eq8 is not None and self.eq8 is None:
            if self.iterations:
                raise DomainError({"message": "eq8 must be recorded from the first iteration on"})
            self.eq8 = []
        self.iterations.append(iteration)
        self.eq9.append(eq9)
        self.eq10.append(eq10)
        if self.eq8 is not None:
            self.eq8.append(np.nan if eq8 is None else eq8)

    def __len__(self) -> int:
        return len(self.iterations)

    @property
    def has_eq8(self) -> bool:
        return self.eq8 is not None

    def values(self, metric: str) -> np.ndarray:
        if metric not in TRACE_METRICS:
            raise DomainError({"message": f"unknown metric '{metric}'", "value": metric})
        series = getattr(self, metric)
        if series is None:
            raise DomainError({"message": f"trace has no '{metric}' column", "value": metric})
        return np.asarray(series, dtype=np.float64)

    def final(self, metric: str) -> float:
        return float(self.values(metric)[-1])

    def final_errors(self) -> Dict[str, float]:
        out = {"eq9": self.final("eq9"), "eq10": self.final("eq10")}
        if self.has_eq8:
            out["eq8"] = self.final("eq8")
        return out

    def stagnates(self, metric: str = "eq8", window: int = 100, rel: float = 0.01) -> bool:
        """Relative Aenderung ueber die letzten window Iterationen < rel."""
        series = self.values(metric)
        if len(series) <= window:
            return False
        old, new = series[-window - 1], series[-1]
        if old == 0:
            return new == 0
        return abs(old - new) / abs(old) < rel

    def columns(self) -> List[str]:
        return ["iteration", "eq9"] + (["eq8"] if self.has_eq8 else []) + ["eq10"]

    def rows(self):
        for i, it in enumerate(self.iterations):
            row = [it, self.eq9[i]]
            if self.has_eq8:
                row.append(self.eq8[i])
            row.append(self.eq10[i])
            yield row
