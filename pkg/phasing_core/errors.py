"""
Phasing Errors - Einheitliche Fehlerklassen

Alle numerischen Module werfen Unterklassen von PhasingError. Das payload-Dict
enthaelt immer 'message' und je nach Fehler weitere Kontext-Schluessel
(z.B. 'shape', 'value', 'kind').
"""

from typing import Any, Dict


class PhasingError(Exception):
    """Basis-Exception fuer Fehler in Feldern, Modellen und Rekonstruktion"""
    def __init__(self, payload: Dict[str, Any]):
        self.payload = payload
        super().__init__(payload.get("message", "Phasing failed"))


class DimensionError(PhasingError):
    """Nicht-quadratisches Gitter oder unpassende Groessen"""


class UnsupportedSizeError(PhasingError):
    """Gittergroesse wird nicht unterstuetzt (z.B. ungerades N)"""


class GridIndexError(PhasingError, IndexError):
    """Index ausserhalb von [0, N)"""


class DomainError(PhasingError, ValueError):
    """Werte ausserhalb des erlaubten Bereichs (negative Pixel, f > 1, ...)"""


class KindError(PhasingError):
    """Falsche Art des Musters (diffraction vs. hologram)"""


class UndefinedMetricError(PhasingError):
    """Fehlermass mit leerem oder verschwindendem Nenner"""


class RetrievalConfigError(PhasingError):
    """Ungueltige Rekonstruktions-Konfiguration"""


class FileFormatError(PhasingError, ValueError):
    """Datei entspricht nicht dem erwarteten Format (Header, Groesse, Modus)"""
