from typing import Any, Dict
from pathlib import Path

from phasing_core.io import ExperimentConfig
from phasing_core.metrics import max_missing_fraction, oversampling_ok


class ValidationError(Exception):
    def __init__(self, payload: Dict[str, Any]):
        self.payload = payload
        super().__init__(payload.get("message", "Validation failed"))


def _require_keys(obj: Dict[str, Any], keys: list, where: str):
    missing = [k for k in keys if k not in obj]
    if missing:
        raise ValidationError({
            "message": f"Missing required keys in {where}: {missing}",
            "location": where,
            "missing": missing,
        })


def validate_experiment_mapping(data: Dict[str, Any]) -> None:
    """Rohdaten einer Experiment-Datei vor der pydantic-Validierung."""
    if not isinstance(data, dict):
        raise ValidationError({"message": "experiment file must contain a mapping"})
    _require_keys(data, ["scenario", "sigmas"], "experiment")
    if "fractions" in data and not isinstance(data["fractions"], list):
        raise ValidationError({"message": "experiment.fractions must be a list", "key": "fractions"})


def validate_experiment_contract(config: ExperimentConfig) -> None:
    """
    Vertragspruefungen fuer einen Sweep:
    - sigma >= 1 (Objekt passt ins Gitter); CDI zusaetzlich sigma > sqrt(2)
    - Objektdatei existiert, wenn nicht synthetisch
    - Huellkurve nur fuer Beugungsbilder
    - keep_best <= restarts (pydantic), overlap_k sinnvoll
    """
    for sigma in config.sigmas:
        if sigma < 1:
            raise ValidationError({
                "message": f"sigma={sigma} < 1: object does not fit the grid",
                "key": "sigmas",
                "value": sigma,
            })
        if config.modality == "cdi" and not oversampling_ok(sigma):
            raise ValidationError({
                "message": f"sigma={sigma} violates the oversampling condition sigma > sqrt(2)",
                "key": "sigmas",
                "value": sigma,
            })

    if config.object_source != "synthetic" and not Path(config.object_source).exists():
        raise ValidationError({
            "message": f"object source '{config.object_source}' not found",
            "key": "object_source",
        })

    if config.modality == "holography" and config.envelope:
        raise ValidationError({
            "message": "pixel-aperture envelope applies to diffraction scenarios only",
            "key": "envelope",
        })

    if config.modality == "cdi" and config.overlap_k > config.hio.restarts:
        raise ValidationError({
            "message": f"overlap_k={config.overlap_k} exceeds restarts={config.hio.restarts}",
            "key": "overlap_k",
        })


def infeasible_cells(config: ExperimentConfig) -> Dict[float, list]:
    """f-Werte je sigma, die oberhalb der Machbarkeitsgrenze liegen (nicht blockierend)."""
    out = {}
    for sigma in config.sigmas:
        f_max = max_missing_fraction(sigma, config.modality)
        above = [f for f in config.fractions if f >= f_max]
        if above:
            out[sigma] = above
    return out
