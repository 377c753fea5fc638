"""
Retrieve - Multi-Restart-HIO mit Auswahl, Ausrichtung und Mittelung

Ablauf: alle Restarts rechnen (parallelisierbar), nach dem Auswahlmass der letzten
Iteration sortieren, die keep_best besten auf den bestplatzierten ausrichten,
pixelweise mitteln, negative Werte im Support auf 0 setzen, ausserhalb 0.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..degradation.pattern import MeasuredPattern
from ..errors import KindError, RetrievalConfigError
from ..field.core import RealImage
from ..metrics.trace import ErrorTrace
from .align import ReferenceAligner
from .config import HioConfig, SupportSpec
from .hio import object_estimate, restart_estimate

logger = logging.getLogger(__name__)


@dataclass
class RetrievalResult:
    """Ergebnis einer Rekonstruktion (CDI oder Holographie)"""
    object: RealImage
    recovered_pattern: MeasuredPattern
    traces: List[ErrorTrace]
    selected: List[int]
    final_errors: List[Dict[str, float]] = field(default_factory=list)

    @property
    def amplitude_max(self) -> float:
        """Maximale Amplitude des Objekts (a.u.)"""
        return float(self.object.data.max())


def resolve_selection_metric(config: HioConfig, has_ground_truth: bool) -> str:
    metric = config.selection_metric or ("eq8" if has_ground_truth else "eq9")
    if metric == "eq8" and not has_ground_truth:
        raise RetrievalConfigError({
            "message": "selection by eq8 requires ground truth",
            "selection_metric": metric,
        })
    return metric


def _restart_job(pattern: MeasuredPattern, support: SupportSpec, config: HioConfig,
                 ground_truth: Optional[RealImage], restart_index: int) -> Tuple[np.ndarray, ErrorTrace]:
    return restart_estimate(pattern, support, config, restart_index, ground_truth=ground_truth)


def recover_pattern(pattern: MeasuredPattern, estimate: np.ndarray) -> MeasuredPattern:
    """Fehlende Amplituden aus |dft2(objekt)|, gemessene unveraendert; alles gemessen."""
    amplitude = np.where(pattern.mask, pattern.amplitude, np.abs(np.fft.fft2(estimate)))
    return MeasuredPattern(
        amplitude=amplitude,
        mask=np.ones_like(pattern.mask),
        geometry=pattern.geometry,
        kind=pattern.kind,
    )


def retrieve(pattern: MeasuredPattern, support: SupportSpec, config: HioConfig,
             ground_truth: Optional[RealImage] = None, workers: int = 1) -> RetrievalResult:
    """Multi-Restart-HIO; bit-reproduzierbar unabhaengig von workers."""
    if pattern.kind != "diffraction":
        raise KindError({
            "message": f"CDI retrieval requires a diffraction pattern, got '{pattern.kind}'",
            "kind": pattern.kind,
        })
    metric = resolve_selection_metric(config, ground_truth is not None)
    inside = support.indicator(pattern.N)
    job = partial(_restart_job, pattern, support, config, ground_truth)
    indices = range(config.restarts)

    logger.info(
        "HIO: N=%d, f=%.4f, %d restarts x (%d HIO + %d ER) iterations, beta=%g, selection=%s, workers=%d",
        pattern.N, pattern.missing_fraction, config.restarts, config.iterations, config.er_iterations,
        config.beta, metric, workers,
    )

    traces: List[ErrorTrace] = []
    kept: List[Tuple[float, int, np.ndarray]] = []

    def collect(results) -> None:
        for index, (estimate, trace) in zip(indices, results):
            traces.append(trace)
            value = trace.final(metric)
            kept.append((np.inf if np.isnan(value) else value, index, estimate))
            kept.sort(key=lambda item: (item[0], item[1]))
            del kept[config.keep_best:]

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            collect(pool.map(job, indices))
    else:
        collect(map(job, indices))

    selected = [index for _, index, _ in kept]
    best = kept[0][2]
    aligner = ReferenceAligner(best)
    stack = [best] + [aligner.align(estimate) for _, _, estimate in kept[1:]]
    average = np.mean(stack, axis=0)
    final = object_estimate(average, inside)

    logger.info("HIO: selected restarts %s (best %s=%.3e)", selected, metric, kept[0][0])
    return RetrievalResult(
        object=RealImage(final, geometry=pattern.geometry),
        recovered_pattern=recover_pattern(pattern, final),
        traces=traces,
        selected=selected,
        final_errors=[t.final_errors() for t in traces],
    )
