"""
Retrieval Config - Support und HIO-Hyperparameter
"""

from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..field.geometry import make_support_indicator


class SupportSpec(BaseModel):
    """Zentriertes Quadrat der Kantenlaenge side (enger Support)"""
    model_config = ConfigDict(frozen=True)

    shape: Literal["square"] = "square"
    side: int = Field(ge=1)

    def indicator(self, N: int) -> np.ndarray:
        return make_support_indicator(N, self.side)


class HioConfig(BaseModel):
    """Hyperparameter des Multi-Restart-HIO"""
    model_config = ConfigDict(frozen=True)

    beta: float = Field(default=0.9, gt=0.0, le=1.0)
    iterations: int = Field(default=2000, ge=1)
    # Error-Reduction-Schritte nach den HIO-Iterationen
    er_iterations: int = Field(default=0, ge=0)
    restarts: int = Field(default=100, ge=1)
    keep_best: int = Field(default=10, ge=1)
    # None: eq8 wenn Ground Truth vorhanden, sonst eq9
    selection_metric: Optional[Literal["eq8", "eq9"]] = None
    seed: int = Field(default=0, ge=0, lt=2 ** 64)

    @model_validator(mode="after")
    def _keep_le_restarts(self):
        if self.keep_best > self.restarts:
            raise ValueError(f"keep_best={self.keep_best} exceeds restarts={self.restarts}")
        return self
