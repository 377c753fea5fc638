"""
File Formats - PR2D-Rohdaten, PGM/PBM-Bilder, Trace-CSV und Sidecar-Metadaten

PR2D: 32 Byte ASCII-Header "PR2D <N> <kind> <dc>" (mit Leerzeichen aufgefuellt,
letztes Byte '\\n'), danach N*N little-endian float64, zeilenweise.
Masken: PBM (P4), Bit 1 = gemessen, DC in der Ecke wie die Daten.
Bilder: PGM 8 bit ein, 16 bit aus; Skalierung steht im Sidecar <datei>.meta.yaml.
"""

import csv
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Tuple, Union

import numpy as np
import yaml
from PIL import Image

from ..degradation.pattern import MeasuredPattern
from ..errors import FileFormatError
from ..field.core import FieldLike, RealImage, as_array, shift_dc_to_center, shift_dc_to_corner
from ..field.geometry import GridGeometry
from ..metrics.trace import ErrorTrace

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

PR2D_MAGIC = "PR2D"
PR2D_HEADER_SIZE = 32
PR2D_KINDS = ("diffraction", "hologram", "object")
DC_CONVENTIONS = ("corner", "center")
LOG_PREVIEW_DYNAMIC = 1e6


# ---------------------------------------------------------------------------
# Sidecars
# ---------------------------------------------------------------------------

def sidecar_path(path: PathLike) -> Path:
    p = Path(path)
    return p.with_name(p.name + ".meta.yaml")


def _plain(value: Any) -> Any:
    """numpy-Skalare/Tupel -> YAML-taugliche Python-Typen"""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.generic):
        return value.item()
    return value


def write_sidecar(path: PathLike, meta: Dict[str, Any]) -> Path:
    target = sidecar_path(path)
    with open(target, "w", encoding="utf-8") as f:
        yaml.safe_dump(_plain(meta), f, sort_keys=True, default_flow_style=False, allow_unicode=True)
    return target


def read_sidecar(path: PathLike) -> Dict[str, Any]:
    """Metadaten zur Datei; {} wenn kein Sidecar existiert."""
    target = sidecar_path(path)
    if not target.exists():
        return {}
    with open(target, "r", encoding="utf-8") as f:
        return yaml.safe_load(f) or {}


def geometry_to_meta(geometry: Optional[GridGeometry]) -> Optional[Dict[str, Any]]:
    if geometry is None:
        return None
    return {
        "N": geometry.N,
        "N0": geometry.N0,
        "pixel_size": geometry.pixel_size,
        "wavelength": geometry.wavelength,
        "distance": geometry.distance,
    }


def geometry_from_meta(meta: Optional[Dict[str, Any]]) -> Optional[GridGeometry]:
    if not meta:
        return None
    return GridGeometry(
        N=int(meta["N"]),
        N0=int(meta["N0"]),
        pixel_size=meta.get("pixel_size"),
        wavelength=meta.get("wavelength"),
        distance=meta.get("distance"),
    )


# ---------------------------------------------------------------------------
# PR2D
# ---------------------------------------------------------------------------

def _pr2d_header(N: int, kind: str, dc: str) -> bytes:
    if kind not in PR2D_KINDS:
        raise FileFormatError({"message": f"unknown PR2D kind '{kind}'", "kind": kind})
    if dc not in DC_CONVENTIONS:
        raise FileFormatError({"message": f"unknown DC convention '{dc}'", "dc": dc})
    text = f"{PR2D_MAGIC} {N} {kind} {dc}"
    if len(text) > PR2D_HEADER_SIZE - 1:
        raise FileFormatError({"message": f"PR2D header too long: '{text}'"})
    return (text.ljust(PR2D_HEADER_SIZE - 1) + "\n").encode("ascii")


def write_pr2d(path: PathLike, data: FieldLike, kind: str, dc: str = "corner") -> None:
    """Schreibt ein reelles N x N Gitter; data liegt mit DC in der Ecke vor."""
    arr = np.asarray(as_array(data), dtype=np.float64)
    stored = shift_dc_to_center(arr) if dc == "center" else arr
    header = _pr2d_header(arr.shape[0], kind, dc)
    with open(path, "wb") as f:
        f.write(header)
        f.write(np.ascontiguousarray(stored, dtype="<f8").tobytes())


def read_pr2d(path: PathLike) -> Tuple[np.ndarray, str]:
    """Liest ein PR2D-Gitter; liefert (daten mit DC in der Ecke, kind)."""
    raw = Path(path).read_bytes()
    head = raw[:PR2D_HEADER_SIZE]
    if len(head) < PR2D_HEADER_SIZE or not head.endswith(b"\n"):
        raise FileFormatError({"message": f"{path}: truncated PR2D header", "path": str(path)})
    parts = head.decode("ascii", errors="replace").split()
    if len(parts) != 4 or parts[0] != PR2D_MAGIC:
        raise FileFormatError({"message": f"{path}: not a PR2D file", "path": str(path)})
    try:
        N = int(parts[1])
    except ValueError:
        raise FileFormatError({"message": f"{path}: invalid size '{parts[1]}'", "path": str(path)})
    kind, dc = parts[2], parts[3]
    if kind not in PR2D_KINDS or dc not in DC_CONVENTIONS:
        raise FileFormatError({"message": f"{path}: invalid header '{' '.join(parts)}'", "path": str(path)})
    body = raw[PR2D_HEADER_SIZE:]
    if len(body) != N * N * 8:
        raise FileFormatError({
            "message": f"{path}: expected {N * N * 8} data bytes, found {len(body)}",
            "path": str(path),
        })
    arr = np.frombuffer(body, dtype="<f8").reshape(N, N).astype(np.float64)
    if dc == "center":
        arr = shift_dc_to_corner(arr)
    return arr, kind


def save_pattern(path: PathLike, pattern: MeasuredPattern, dc: str = "corner",
                 meta: Optional[Dict[str, Any]] = None) -> None:
    """Amplitude als PR2D, Geometrie und Zusatzangaben im Sidecar."""
    write_pr2d(path, pattern.amplitude, pattern.kind, dc=dc)
    record = dict(meta or {})
    record["geometry"] = geometry_to_meta(pattern.geometry)
    record["missing_fraction"] = pattern.missing_fraction
    write_sidecar(path, record)


def load_pattern(path: PathLike, mask_path: Optional[PathLike] = None) -> MeasuredPattern:
    amplitude, kind = read_pr2d(path)
    if kind not in ("diffraction", "hologram"):
        raise FileFormatError({"message": f"{path}: PR2D kind '{kind}' is not a pattern", "kind": kind})
    mask = read_mask(mask_path) if mask_path is not None else None
    meta = read_sidecar(path)
    if mask is None and (meta.get("missing_fraction") or 0.0) > 0.0:
        logger.warning(
            "%s: sidecar reports missing_fraction=%g but no mask was given; "
            "zeros at missing samples are treated as measured", path, meta["missing_fraction"],
        )
    geometry = geometry_from_meta(meta.get("geometry"))
    return MeasuredPattern(amplitude=amplitude, mask=mask, geometry=geometry, kind=kind)


# ---------------------------------------------------------------------------
# PGM / PBM
# ---------------------------------------------------------------------------

def read_pgm(path: PathLike) -> RealImage:
    """PGM nach [0, 1] normiert; mit Sidecar-'scale' zurueck in absolute Werte."""
    with Image.open(path) as img:
        if img.format != "PPM" or img.mode not in ("L", "I", "I;16", "I;16B"):
            raise FileFormatError({
                "message": f"{path}: expected a grayscale PGM, got {img.format}/{img.mode}",
                "path": str(path),
            })
        maxval = 255.0 if img.mode == "L" else 65535.0
        data = np.asarray(img, dtype=np.float64) / maxval
    scale = read_sidecar(path).get("scale")
    if scale is not None:
        data = data * float(scale)
    return RealImage(data)


def write_pgm8(path: PathLike, image01: np.ndarray) -> None:
    q = np.rint(np.clip(image01, 0.0, 1.0) * 255.0).astype(np.uint8)
    Image.fromarray(q).save(path, format="PPM")


def write_pgm16(path: PathLike, image: FieldLike, meta: Optional[Dict[str, Any]] = None) -> float:
    """Linear auf das Maximum normiert (16 bit); gibt den Skalenfaktor zurueck."""
    data = np.asarray(as_array(image), dtype=np.float64)
    peak = float(data.max()) if data.size else 0.0
    scale = peak if peak > 0 else 1.0
    q = np.rint(np.clip(data / scale, 0.0, 1.0) * 65535.0).astype(np.int32)
    Image.fromarray(q).save(path, format="PPM")
    record = dict(meta or {})
    record["scale"] = scale
    write_sidecar(path, record)
    return scale


def write_mask(path: PathLike, mask: np.ndarray) -> None:
    """PBM P4: gemessen = 1 = schwarz (Pillow-Wert 0)."""
    pixels = np.where(np.asarray(mask, dtype=bool), 0, 255).astype(np.uint8)
    Image.fromarray(pixels).convert("1", dither=Image.Dither.NONE).save(path, format="PPM")


def read_mask(path: PathLike) -> np.ndarray:
    with Image.open(path) as img:
        if img.mode != "1":
            raise FileFormatError({"message": f"{path}: expected a PBM bitmap, got {img.mode}", "path": str(path)})
        return np.asarray(img.convert("L")) == 0


def load_image(path: PathLike) -> RealImage:
    """PGM oder PR2D (kind 'object') als RealImage."""
    if Path(path).suffix.lower() == ".pgm":
        return read_pgm(path)
    data, kind = read_pr2d(path)
    if kind != "object":
        raise FileFormatError({"message": f"{path}: PR2D kind '{kind}' is not an object image", "kind": kind})
    return RealImage(data)


def save_object(path: PathLike, image: FieldLike, meta: Optional[Dict[str, Any]] = None) -> float:
    """Objekt als 16-bit PGM plus bit-exakte PR2D-Kopie daneben."""
    scale = write_pgm16(path, image, meta)
    write_pr2d(Path(path).with_suffix(".f64"), image, "object")
    return scale


# ---------------------------------------------------------------------------
# Vorschau
# ---------------------------------------------------------------------------

def log_preview(intensity: FieldLike) -> np.ndarray:
    """log10(1 + I/I_max * 1e6), auf [0, 1] normiert und zentriert. Nur Anzeige."""
    I = np.asarray(as_array(intensity), dtype=np.float64)
    peak = float(I.max())
    if peak <= 0:
        return np.zeros_like(I)
    shown = np.log10(1.0 + I / peak * LOG_PREVIEW_DYNAMIC) / np.log10(1.0 + LOG_PREVIEW_DYNAMIC)
    return shift_dc_to_center(shown)


def image_grid(rows: Sequence[Sequence[np.ndarray]], pad: int = 2) -> np.ndarray:
    """Kachelbild; jede Kachel einzeln auf ihr Maximum normiert."""
    if not rows or not rows[0]:
        return np.zeros((1, 1))
    h, w = np.asarray(rows[0][0]).shape
    n_rows, n_cols = len(rows), max(len(r) for r in rows)
    grid = np.zeros((n_rows * (h + pad) + pad, n_cols * (w + pad) + pad))
    for i, row in enumerate(rows):
        for j, tile in enumerate(row):
            tile = np.asarray(tile, dtype=np.float64)
            peak = tile.max()
            y, x = pad + i * (h + pad), pad + j * (w + pad)
            grid[y:y + h, x:x + w] = tile / peak if peak > 0 else tile
    return grid


# ---------------------------------------------------------------------------
# Traces
# ---------------------------------------------------------------------------

def write_trace(path: PathLike, trace: ErrorTrace) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(trace.columns())
        for row in trace.rows():
            writer.writerow([row[0]] + [repr(float(v)) for v in row[1:]])


def read_trace(path: PathLike) -> ErrorTrace:
    with open(path, "r", encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        trace = ErrorTrace()
        for row in reader:
            eq8 = float(row["eq8"]) if "eq8" in row else None
            trace.record(int(row["iteration"]), float(row["eq9"]), float(row["eq10"]), eq8)
    return trace


# ---------------------------------------------------------------------------
# Provenienz
# ---------------------------------------------------------------------------

def make_provenance(command: str, config_hash: Optional[str] = None, seed: Optional[int] = None,
                    **extra: Any) -> Dict[str, Any]:
    """Herkunftsangaben fuer jedes geschriebene Artefakt (ohne Zeitstempel)."""
    from .. import __version__

    record: Dict[str, Any] = {
        "command": command,
        "config_hash": config_hash,
        "seed": seed,
        "version": __version__,
    }
    record.update(extra)
    return record
