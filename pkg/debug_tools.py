import json
from typing import Any, Dict, Iterable


def summary_dict(summary) -> Dict[str, Any]:
    cfg = summary.config
    return {
        "name": cfg.name,
        "scenario": cfg.scenario,
        "out_dir": str(summary.out_dir),
        "cells": [
            {
                "sigma": r.cell.sigma,
                "seed": r.cell.seed,
                "f_target": r.cell.f,
                "f_realized": r.f_realized,
                "f_max": r.f_max,
                "feasible": r.feasible,
                "baseline_eq8": r.baseline_eq8,
                "iterative_eq8": r.iterative_eq8,
                "amplitude_max": r.amplitude_max,
                "overlap": r.overlap,
            }
            for r in summary.cells
        ],
    }


def print_summary(summary) -> None:
    cells = summary.cells
    feasible = sum(1 for r in cells if r.feasible)
    better = sum(1 for r in cells if r.iterative_eq8 < r.baseline_eq8)
    print(
        f"scenario={summary.config.scenario} cells={len(cells)} feasible={feasible} iterative_better={better}"
    )


def dump_snapshot(summary, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(summary_dict(summary), f, ensure_ascii=False, indent=2)


def iter_failed_cells(summary, threshold: float = 1e-3) -> Iterable[str]:
    """Zellen, deren iterativer Fehler ueber threshold (relativ zum Objektmaximum) liegt."""
    for r in summary.cells:
        if r.iterative_eq8 > threshold * max(r.amplitude_max, 1e-300):
            yield f"sigma={r.cell.sigma:g} seed={r.cell.seed} f={r.cell.f:g}"
