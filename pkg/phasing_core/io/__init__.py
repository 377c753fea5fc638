"""
IO Module - Dateiformate und Experiment-Konfiguration
"""

from .formats import (
    PR2D_KINDS,
    sidecar_path,
    write_sidecar,
    read_sidecar,
    geometry_to_meta,
    geometry_from_meta,
    write_pr2d,
    read_pr2d,
    save_pattern,
    load_pattern,
    read_pgm,
    write_pgm8,
    write_pgm16,
    write_mask,
    read_mask,
    load_image,
    save_object,
    log_preview,
    image_grid,
    write_trace,
    read_trace,
    make_provenance,
)
from .config import (
    SCENARIOS,
    HoloSettings,
    ExperimentConfig,
    load_experiment,
    dump_experiment,
    experiment_dict,
    config_hash,
)

__all__ = [
    'PR2D_KINDS', 'sidecar_path', 'write_sidecar', 'read_sidecar',
    'geometry_to_meta', 'geometry_from_meta',
    'write_pr2d', 'read_pr2d', 'save_pattern', 'load_pattern',
    'read_pgm', 'write_pgm8', 'write_pgm16', 'write_mask', 'read_mask',
    'load_image', 'save_object', 'log_preview', 'image_grid',
    'write_trace', 'read_trace', 'make_provenance',
    'SCENARIOS', 'HoloSettings', 'ExperimentConfig',
    'load_experiment', 'dump_experiment', 'experiment_dict', 'config_hash',
]
