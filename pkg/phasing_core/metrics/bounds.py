"""
Feasibility Bounds - Oversampling und maximal fehlender Anteil

Fuer ein reelles Objekt in d Dimensionen:
- CDI:          N^d/2 Gleichungen, N0^d Unbekannte  ->  f < 1 - 2 / sigma^d
- Holographie:  N^d   Gleichungen, N0^d Unbekannte  ->  f < 1 - 1 / sigma^d
- Oversampling: sigma > 2^(1/d)  (1D: 2, 2D: sqrt(2), 3D: 2^(1/3))
"""

import logging
import math
from dataclasses import asdict, dataclass
from typing import Optional, Tuple

from ..errors import DomainError
from ..field.geometry import GridGeometry

logger = logging.getLogger(__name__)

MODALITIES = ("cdi", "holography")
OBJECT_TYPES = ("real", "complex")


def _check_sigma(sigma: float) -> None:
    if not sigma > 0:
        raise DomainError({"message": f"sigma must be positive, got {sigma}", "value": sigma})


def _check_dimension(dimension: int) -> None:
    if dimension not in (1, 2, 3):
        raise DomainError({"message": f"dimension must be 1, 2 or 3, got {dimension}", "value": dimension})


def _check_modality(modality: str) -> None:
    if modality not in MODALITIES:
        raise DomainError({"message": f"unknown modality '{modality}'", "value": modality})


def _raw_bound(sigma: float, modality: str, dimension: int) -> float:
    ratio = 2.0 if modality == "cdi" else 1.0
    return 1.0 - ratio / sigma ** dimension


def max_missing_fraction(sigma: float, modality: str = "cdi", dimension: int = 2) -> float:
    """Obergrenze fuer f; bei unzulaessigem sigma 0."""
    _check_sigma(sigma)
    _check_modality(modality)
    _check_dimension(dimension)
    return max(0.0, _raw_bound(sigma, modality, dimension))


def oversampling_ok(sigma: float, dimension: int = 2) -> bool:
    _check_sigma(sigma)
    _check_dimension(dimension)
    return sigma > 2.0 ** (1.0 / dimension)


def count_equations(N: int, N0: int, modality: str = "cdi", object_type: str = "real",
                    f: float = 0.0) -> Tuple[float, int]:
    """(Gleichungen, Unbekannte) fuer ein N x N Muster und ein N0 x N0 Objekt."""
    _check_modality(modality)
    if object_type not in OBJECT_TYPES:
        raise DomainError({"message": f"unknown object type '{object_type}'", "value": object_type})
    equations = float(N * N)
    if modality == "cdi" and object_type == "real":
        equations /= 2.0
    unknowns = N0 * N0 * (2 if object_type == "complex" else 1)
    return (1.0 - f) * equations, unknowns


def reconstructed_extent(wavelength: float, distance: float, pixel_size: float) -> float:
    """S0 = lambda z / Delta"""
    for name, value in (("wavelength", wavelength), ("distance", distance), ("pixel_size", pixel_size)):
        if not value > 0:
            raise DomainError({"message": f"{name} must be positive", "value": value})
    return wavelength * distance / pixel_size


def reconstructed_extent_k(delta_k: float) -> float:
    """S0 = 2 pi / Delta_k (Abtastung im k-Raum)"""
    if not delta_k > 0:
        raise DomainError({"message": "delta_k must be positive", "value": delta_k})
    return 2.0 * math.pi / delta_k


def geometry_oversampling(geom: GridGeometry, object_extent: Optional[float] = None,
                          strict: bool = False) -> float:
    """sigma = S0 / O; ohne object_extent gilt sigma = N / N0.

    Mit beiden Parametrisierungen wird eine Abweichung > 1e-9 (relativ) gemeldet,
    bei strict=True als DomainError.
    """
    if object_extent is None:
        return geom.sigma
    if not object_extent > 0:
        raise DomainError({"message": "object extent must be positive", "value": object_extent})
    if geom.pixel_size is None or geom.wavelength is None or geom.distance is None:
        raise DomainError({"message": "far-field geometry needs pixel_size, wavelength and distance"})
    sigma = reconstructed_extent(geom.wavelength, geom.distance, geom.pixel_size) / object_extent
    if abs(sigma - geom.sigma) > 1e-9 * sigma:
        payload = {
            "message": f"sigma from geometry {sigma:.9g} != N/N0 {geom.sigma:.9g}",
            "sigma_geometry": sigma,
            "sigma_grid": geom.sigma,
        }
        if strict:
            raise DomainError(payload)
        logger.warning(payload["message"])
    return sigma


@dataclass(frozen=True)
class FeasibilityReport:
    sigma: float
    dimension: int
    modality: str
    f_max: float
    f_actual: float
    feasible: bool

    CSV_COLUMNS = ("modality", "dimension", "sigma", "f_max", "f_actual", "feasible")

    def to_line(self) -> str:
        return (
            f"modality={self.modality} dimension={self.dimension} sigma={self.sigma:g} "
            f"f_max={self.f_max:.10g} f={self.f_actual:g} feasible={str(self.feasible).lower()}"
        )

    def to_csv_row(self) -> str:
        d = asdict(self)
        d["feasible"] = str(self.feasible).lower()
        return ",".join(f"{d[c]:.10g}" if isinstance(d[c], float) else str(d[c]) for c in self.CSV_COLUMNS)


def feasibility_report(sigma: float, f_actual: float = 0.0, modality: str = "cdi",
                       dimension: int = 2) -> FeasibilityReport:
    raw = _raw_bound(sigma, modality, dimension) if sigma > 0 else -1.0
    f_max = max_missing_fraction(sigma, modality, dimension)
    return FeasibilityReport(
        sigma=float(sigma),
        dimension=dimension,
        modality=modality,
        f_max=f_max,
        f_actual=float(f_actual),
        feasible=raw > 0 and f_actual < f_max,
    )
