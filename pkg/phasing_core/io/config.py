"""
Experiment Config - YAML-Konfiguration fuer Sweeps

Eine Datei pro Experiment unter input_config/experiments/. Jede Zelle
(Szenario, sigma, f, Seed) ist allein aus der Datei reproduzierbar.
"""

import hashlib
import json
import logging
from pathlib import Path
from typing import Any, Callable, Dict, Literal, Optional, Tuple, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..cdi.config import HioConfig, SupportSpec
from ..forward.propagation import PropagationParams
from ..holo.reconstruct import HoloConfig

logger = logging.getLogger(__name__)

SCENARIOS = ("cdi-random", "cdi-central", "cdi-symmetrized", "holo-random")


class HoloSettings(BaseModel):
    """Physikalische Parameter und Iterationsplan der Hologramm-Szenarien (Meter)"""
    model_config = ConfigDict(frozen=True)

    wavelength: float = Field(default=532e-9, gt=0)
    distance: float = Field(default=20e-3, gt=0)
    pixel_size: float = Field(default=2e-3 / 512, gt=0)
    iterations: int = Field(default=2000, ge=1)
    smoothing_interval: int = Field(default=20, ge=1)
    smoothing_stop: float = Field(default=0.75, gt=0.0, le=1.0)
    real_absorption: bool = False

    def params(self, N: int) -> PropagationParams:
        return PropagationParams(
            wavelength=self.wavelength,
            distance=self.distance,
            side=N * self.pixel_size,
            N=N,
        )

    def to_config(self, N: int, N0: int, seed: int = 0) -> HoloConfig:
        return HoloConfig(
            iterations=self.iterations,
            smoothing_interval=self.smoothing_interval,
            smoothing_stop=self.smoothing_stop,
            real_absorption=self.real_absorption,
            support=SupportSpec(side=N0),
            params=self.params(N),
            seed=seed,
        )


class ExperimentConfig(BaseModel):
    """Sweep ueber sigma x f x Seed fuer ein Szenario"""
    model_config = ConfigDict(frozen=True)

    name: str = "experiment"
    scenario: Literal["cdi-random", "cdi-central", "cdi-symmetrized", "holo-random"]
    sigmas: Tuple[float, ...] = Field(min_length=1)
    object_side: int = Field(default=64, ge=8)
    # "synthetic" oder Pfad zu einem PGM
    object_source: str = "synthetic"
    fractions: Tuple[float, ...] = ()
    seeds: Tuple[int, ...] = (0,)
    envelope: bool = False
    hio: HioConfig = HioConfig()
    holo: HoloSettings = HoloSettings()
    out: str = "out"
    workers: int = Field(default=1, ge=1)
    overlap_k: int = Field(default=10, ge=1)

    @field_validator("fractions")
    @classmethod
    def _fractions_in_range(cls, v: Tuple[float, ...]) -> Tuple[float, ...]:
        bad = [f for f in v if not 0.0 <= f <= 1.0]
        if bad:
            raise ValueError(f"fractions outside [0, 1]: {bad}")
        return v

    @field_validator("seeds")
    @classmethod
    def _seeds_in_range(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        if not v:
            raise ValueError("at least one seed required")
        bad = [s for s in v if not 0 <= s < 2 ** 64]
        if bad:
            raise ValueError(f"seeds outside [0, 2**64): {bad}")
        return v

    @field_validator("object_side")
    @classmethod
    def _even_side(cls, v: int) -> int:
        if v % 2:
            raise ValueError("object_side must be even")
        return v

    @model_validator(mode="after")
    def _integral_grids(self):
        for sigma in self.sigmas:
            N = sigma * self.object_side
            if abs(N - round(N)) > 1e-9 or round(N) % 2:
                raise ValueError(f"sigma={sigma} x object_side={self.object_side} is not an even integer grid")
        return self

    @property
    def modality(self) -> str:
        return "holography" if self.scenario.startswith("holo") else "cdi"

    def grid_size(self, sigma: float) -> int:
        return int(round(sigma * self.object_side))


def load_experiment(path: Union[str, Path],
                    check: Optional[Callable[[Dict[str, Any]], None]] = None) -> ExperimentConfig:
    """Laedt und validiert eine Experiment-Datei (YAML); check prueft die Rohdaten vorab."""
    with open(path, "r", encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}
    if check is not None:
        check(data)
    config = ExperimentConfig.model_validate(data)
    logger.debug("experiment '%s' loaded from %s", config.name, path)
    return config


def experiment_dict(config: ExperimentConfig) -> dict:
    return config.model_dump(mode="json")


def dump_experiment(config: ExperimentConfig, path: Optional[Union[str, Path]] = None) -> str:
    """Kanonische YAML-Form; parse(dump(c)) == c."""
    text = yaml.safe_dump(experiment_dict(config), sort_keys=False, default_flow_style=False)
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def config_hash(config: Union[BaseModel, Dict[str, Any]]) -> str:
    """SHA-256 ueber das kanonische JSON der Konfiguration (Modell oder Dict)."""
    payload = config.model_dump(mode="json") if isinstance(config, BaseModel) else config
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
