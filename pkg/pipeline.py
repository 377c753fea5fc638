"""
Sweep Pipeline - Orchestriert Experimente ueber sigma x f x Seed

Pro Zelle: Objekt einbetten, Muster simulieren, Samples loeschen (ggf. symmetrisieren),
Baseline (eine inverse Transformation bzw. Rueckpropagation bei bekannter Phase)
und iterative Rekonstruktion rechnen, Objektfehler (eq8) vergleichen.
Ausgabe: results.csv (Methoden x f), cells.csv (Langform), Zellverzeichnisse, grid.pgm.
"""

import csv
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from phasing_core.cdi import ObjectErrorProbe, SupportSpec, retrieve
from phasing_core.degradation import MeasuredPattern, apply_central_mask, apply_random_mask, symmetrize
from phasing_core.field import RealImage, crop_center
from phasing_core.forward import (
    asm_propagate,
    backpropagation_baseline,
    embed_object,
    inverse_ft_baseline,
    aperture_envelope,
    make_exit_wave,
    make_test_object,
    simulate_diffraction,
    simulate_hologram,
)
from phasing_core.holo import reconstruct_hologram
from phasing_core.io import (
    ExperimentConfig,
    config_hash,
    image_grid,
    load_experiment,
    make_provenance,
    read_pgm,
    save_object,
    save_pattern,
    write_mask,
    write_pgm8,
    write_sidecar,
    write_trace,
)
from phasing_core.metrics import error_rms, feasibility_report, metric_overlap

logger = logging.getLogger(__name__)

METHODS = ("inverse-FT", "iterative")
CELL_COLUMNS = (
    "scenario", "sigma", "seed", "f_target", "f_realized", "f_max", "feasible",
    "baseline_eq8", "iterative_eq8", "amplitude_max", "overlap_eq9", "overlap_eq10",
)


class PipelineError(Exception):
    def __init__(self, payload: Dict[str, Any]):
        self.payload = payload
        super().__init__(payload.get("message", "Pipeline failed"))


@dataclass
class SweepSettings:
    out_dir: Optional[str] = None
    workers: Optional[int] = None
    write_cells: bool = True
    validate: bool = True


@dataclass(frozen=True)
class Cell:
    sigma: float
    seed: int
    f: float


@dataclass
class CellResult:
    cell: Cell
    f_realized: float
    f_max: float
    feasible: bool
    baseline_eq8: float
    iterative_eq8: float
    amplitude_max: float
    overlap: Optional[Dict[str, int]] = None
    baseline_object: Optional[np.ndarray] = field(default=None, repr=False)
    iterative_object: Optional[np.ndarray] = field(default=None, repr=False)

    def csv_row(self, scenario: str) -> List[str]:
        overlap = self.overlap or {}
        return [
            scenario,
            _fmt(self.cell.sigma),
            str(self.cell.seed),
            _fmt(self.cell.f),
            _fmt(self.f_realized),
            _fmt(self.f_max),
            str(self.feasible).lower(),
            _fmt(self.baseline_eq8),
            _fmt(self.iterative_eq8),
            _fmt(self.amplitude_max),
            str(overlap.get("overlap_eq9", "")),
            str(overlap.get("overlap_eq10", "")),
        ]


@dataclass
class SweepSummary:
    config: ExperimentConfig
    cells: List[CellResult]
    out_dir: Path
    results_path: Path
    cells_path: Path


def _fmt(value: float) -> str:
    return repr(float(value))


def cell_label(cell: Cell) -> str:
    return f"sigma{cell.sigma:g}_seed{cell.seed}_f{cell.f:g}"


def enumerate_cells(config: ExperimentConfig) -> List[Cell]:
    """Reihenfolge: sigma, Seed, f wie in der Konfiguration."""
    return [Cell(sigma, seed, f) for sigma in config.sigmas for seed in config.seeds for f in config.fractions]


def load_object(config: ExperimentConfig) -> RealImage:
    if config.object_source == "synthetic":
        return make_test_object(config.object_side)
    try:
        obj = read_pgm(config.object_source)
    except OSError as e:
        raise PipelineError({"message": f"cannot read object '{config.object_source}': {e}"})
    if obj.side != config.object_side:
        raise PipelineError({
            "message": f"object image is {obj.side}x{obj.side}, config expects {config.object_side}",
            "object_side": obj.side,
        })
    return obj


# ---------------------------------------------------------------------------
# Zellen
# ---------------------------------------------------------------------------

def _degrade(pattern: MeasuredPattern, scenario: str, f: float,
             seed: int) -> Tuple[MeasuredPattern, MeasuredPattern]:
    """Liefert (maskiertes Muster, Eingabe der Rekonstruktion); verschieden nur bei Symmetrisierung."""
    if scenario == "cdi-central":
        masked = apply_central_mask(pattern, f)
    else:
        masked = apply_random_mask(pattern, f, seed)
    if scenario == "cdi-symmetrized":
        return masked, symmetrize(masked)
    return masked, masked


def _run_cdi_cell(config: ExperimentConfig, obj: RealImage, cell: Cell,
                  cell_dir: Optional[Path]) -> CellResult:
    N = config.grid_size(cell.sigma)
    padded = embed_object(obj, N)
    pattern = simulate_diffraction(padded, envelope=config.envelope)
    masked, degraded = _degrade(pattern, config.scenario, cell.f, cell.seed)

    spectrum = np.fft.fft2(padded.data)
    if config.envelope:
        spectrum = spectrum * aperture_envelope(N)
    # Baseline ohne Symmetrisierung
    baseline_full = inverse_ft_baseline(spectrum, masked.mask)
    baseline = crop_center(baseline_full, obj.side)

    hio = config.hio.model_copy(update={"seed": cell.seed})
    support = SupportSpec(side=obj.side)
    result = retrieve(degraded, support, hio, ground_truth=obj)
    probe = ObjectErrorProbe(obj, N)
    iterative = crop_center(probe.aligned(result.object.data), obj.side)

    report = feasibility_report(cell.sigma, degraded.missing_fraction, modality="cdi")
    out = CellResult(
        cell=cell,
        f_realized=degraded.missing_fraction,
        f_max=report.f_max,
        feasible=report.feasible,
        baseline_eq8=error_rms(baseline, obj),
        iterative_eq8=error_rms(iterative, obj),
        amplitude_max=result.amplitude_max,
        overlap=metric_overlap(result.final_errors, k=config.overlap_k),
        baseline_object=baseline,
        iterative_object=iterative,
    )
    if cell_dir is not None:
        meta = _cell_meta(config, cell, degraded)
        save_pattern(cell_dir / "degraded.f64", degraded, meta=meta)
        write_mask(cell_dir / "mask.pbm", degraded.mask)
        save_pattern(cell_dir / "recovered.f64", result.recovered_pattern, meta=meta)
        save_object(cell_dir / "object.pgm", result.object, meta=meta)
        save_object(cell_dir / "baseline.pgm", np.maximum(baseline_full, 0.0), meta=meta)
        traces = cell_dir / "traces"
        traces.mkdir(exist_ok=True)
        for index, trace in enumerate(result.traces):
            write_trace(traces / f"restart_{index:03d}.csv", trace)
    return out


def _run_holo_cell(config: ExperimentConfig, obj: RealImage, cell: Cell,
                   cell_dir: Optional[Path]) -> CellResult:
    N = config.grid_size(cell.sigma)
    holo = config.holo.to_config(N, obj.side, seed=cell.seed)
    exit_wave = make_exit_wave(embed_object(obj, N))
    hologram = simulate_hologram(exit_wave, holo.params)
    degraded = apply_random_mask(hologram, cell.f, cell.seed)

    detector = asm_propagate(exit_wave.t, holo.params)
    baseline_full = backpropagation_baseline(detector, degraded.mask, holo.params)
    baseline = crop_center(baseline_full, obj.side)

    result = reconstruct_hologram(degraded, holo, ground_truth=obj)
    iterative = crop_center(result.object.data, obj.side)

    report = feasibility_report(cell.sigma, degraded.missing_fraction, modality="holography")
    out = CellResult(
        cell=cell,
        f_realized=degraded.missing_fraction,
        f_max=report.f_max,
        feasible=report.feasible,
        baseline_eq8=error_rms(baseline, obj),
        iterative_eq8=error_rms(iterative, obj),
        amplitude_max=result.amplitude_max,
        baseline_object=baseline,
        iterative_object=iterative,
    )
    if cell_dir is not None:
        meta = _cell_meta(config, cell, degraded)
        save_pattern(cell_dir / "degraded.f64", degraded, meta=meta)
        write_mask(cell_dir / "mask.pbm", degraded.mask)
        save_pattern(cell_dir / "recovered.f64", result.recovered_pattern, meta=meta)
        save_object(cell_dir / "object.pgm", result.object, meta=meta)
        save_object(cell_dir / "baseline.pgm", np.clip(baseline_full, 0.0, None), meta=meta)
        write_trace(cell_dir / "trace.csv", result.traces[0])
    return out


def _cell_meta(config: ExperimentConfig, cell: Cell, degraded: MeasuredPattern) -> Dict[str, Any]:
    return make_provenance(
        "sweep",
        config_hash=config_hash(config),
        seed=cell.seed,
        scenario=config.scenario,
        sigma=cell.sigma,
        f_target=cell.f,
        f_realized=degraded.missing_fraction,
    )


def run_cell(config: ExperimentConfig, cell: Cell, out_dir: Optional[str] = None) -> CellResult:
    """Eine Zelle, allein aus (config, cell) reproduzierbar."""
    obj = load_object(config)
    cell_dir = None
    if out_dir is not None:
        cell_dir = Path(out_dir) / "cells" / cell_label(cell)
        cell_dir.mkdir(parents=True, exist_ok=True)
    runner = _run_holo_cell if config.modality == "holography" else _run_cdi_cell
    result = runner(config, obj, cell, cell_dir)
    logger.info(
        "cell %s: f=%.4f baseline eq8=%.3e iterative eq8=%.3e",
        cell_label(cell), result.f_realized, result.baseline_eq8, result.iterative_eq8,
    )
    return result


def _cell_job(config: ExperimentConfig, out_dir: Optional[str], cell: Cell) -> CellResult:
    return run_cell(config, cell, out_dir)


# ---------------------------------------------------------------------------
# Sweep
# ---------------------------------------------------------------------------

def run_sweep(config: ExperimentConfig, *, settings: Optional[SweepSettings] = None) -> SweepSummary:
    """
    Fuehrt alle Zellen aus und schreibt die Tabellen. Ergebnisse werden in
    Konfigurationsreihenfolge gesammelt, daher byte-identisch bei Wiederholung.
    """
    settings = settings or SweepSettings()
    if settings.validate:
        validate_experiment(config)

    out_dir = Path(settings.out_dir or config.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    workers = settings.workers or config.workers
    cells = enumerate_cells(config)
    cell_out = str(out_dir) if settings.write_cells else None

    logger.info("sweep '%s': %s, %d cells, workers=%d", config.name, config.scenario, len(cells), workers)

    job = partial(_cell_job, config, cell_out)
    if workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(job, cells))
    else:
        results = [job(cell) for cell in cells]

    provenance = make_provenance("sweep", config_hash=config_hash(config), seed=list(config.seeds),
                                 scenario=config.scenario, name=config.name)
    results_path = out_dir / "results.csv"
    write_results_table(results_path, config, results)
    write_sidecar(results_path, provenance)
    cells_path = out_dir / "cells.csv"
    write_cells_table(cells_path, config, results)
    write_sidecar(cells_path, provenance)
    if results:
        grid_path = out_dir / "grid.pgm"
        write_pgm8(grid_path, result_grid(config, results))
        write_sidecar(grid_path, provenance)

    logger.info("sweep '%s' finished: %s", config.name, results_path)
    return SweepSummary(config, results, out_dir, results_path, cells_path)


def table_blocks(config: ExperimentConfig,
                 results: List[CellResult]) -> List[Tuple[float, int, List[CellResult]]]:
    """Gruppiert Zellen je (sigma, Seed) in f-Reihenfolge."""
    lookup = {(r.cell.sigma, r.cell.seed, r.cell.f): r for r in results}
    blocks = []
    for sigma in config.sigmas:
        for seed in config.seeds:
            row = [lookup[(sigma, seed, f)] for f in config.fractions if (sigma, seed, f) in lookup]
            if row:
                blocks.append((sigma, seed, row))
    return blocks


def write_results_table(path: Path, config: ExperimentConfig, results: List[CellResult]) -> None:
    """Tabellenform: Zeilen = Methode, Spalten = f, ein Block je (sigma, Seed)."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["method", "sigma", "seed"] + [f"{frac:g}" for frac in config.fractions])
        for sigma, seed, row in table_blocks(config, results):
            writer.writerow([METHODS[0], f"{sigma:g}", seed] + [f"{r.baseline_eq8:.6e}" for r in row])
            writer.writerow([METHODS[1], f"{sigma:g}", seed] + [f"{r.iterative_eq8:.6e}" for r in row])


def write_cells_table(path: Path, config: ExperimentConfig, results: List[CellResult]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CELL_COLUMNS)
        for result in results:
            writer.writerow(result.csv_row(config.scenario))


def result_grid(config: ExperimentConfig, results: List[CellResult]) -> np.ndarray:
    """Je (sigma, Seed) zwei Zeilen: Baseline und iterative Rekonstruktion pro f."""
    rows = []
    for _, _, row in table_blocks(config, results):
        rows.append([np.maximum(r.baseline_object, 0.0) for r in row])
        rows.append([r.iterative_object for r in row])
    return image_grid(rows)


def validate_experiment(config: ExperimentConfig) -> None:
    """
    Fuehrt Vertragspruefungen aus. Wirft ValidationError bei Fehlern, sonst None.
    """
    from validation import ValidationError, infeasible_cells, validate_experiment_contract

    try:
        validate_experiment_contract(config)
    except ValidationError:
        raise
    except Exception as e:
        raise ValidationError({"message": str(e)})

    for sigma, fractions in infeasible_cells(config).items():
        logger.info("sigma=%g: f=%s at or above the feasibility bound, failure expected", sigma, fractions)


def load_sweep_config(path: str) -> ExperimentConfig:
    from validation import validate_experiment_mapping

    return load_experiment(path, check=validate_experiment_mapping)
