"""
CSV and JSON writers for command output.

Floats are printed with repr(), the shortest decimal string that reads back
to the same double, so CSV and JSON carry identical numbers.
"""

import csv
import io
import json
import math
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Sequence

import numpy as np

from ..domain.errors import ExportError
from ..interfaces import IResultWriter

MESH_HEADER = ("surface", "z", "t", "Y")


def format_number(value: Any) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if value is None:
        return ""
    return str(value)


def to_plain(value: Any) -> Any:
    """Convert numpy scalars/arrays and non-finite floats into JSON-safe values"""
    if isinstance(value, dict):
        return {str(k): to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_plain(value.tolist())
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    return value


class CsvWriter(IResultWriter):
    """Header row, comma separated, '.' decimal"""

    def write_rows(self, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_number(v) for v in row])
        return buffer.getvalue()

    def write_document(self, document: Dict[str, Any]) -> str:
        """Flatten a document into key,value rows"""
        rows = []
        for key, value in document.items():
            if isinstance(value, (dict, list, tuple)):
                value = json.dumps(to_plain(value), separators=(",", ":"))
            rows.append((key, value))
        return self.write_rows(("key", "value"), rows)


class JsonWriter(IResultWriter):
    """UTF-8 JSON, arrays of objects for tabular output"""

    def __init__(self, indent: Optional[int] = 2):
        self.indent = indent

    def write_rows(self, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
        records = [dict(zip(header, row)) for row in rows]
        return self._dump(records)

    def write_document(self, document: Dict[str, Any]) -> str:
        return self._dump(document)

    def _dump(self, payload: Any) -> str:
        return json.dumps(to_plain(payload), indent=self.indent, ensure_ascii=False) + "\n"


def writer_for(output_format: str) -> IResultWriter:
    if output_format == "csv":
        return CsvWriter()
    return JsonWriter()


def mesh_rows(surface: str, points: np.ndarray) -> Iterable[Sequence[Any]]:
    for z, t, y in points:
        yield (surface, float(z), float(t), float(y))


def mesh_document(meshes: Dict[str, np.ndarray]) -> Dict[str, Any]:
    """JSON form of meshes: surface name -> list of [z, t, Y] triples"""
    return {name: points.tolist() for name, points in meshes.items()}


def write_text(path: Path, text: str) -> Path:
    """Write text to path, creating parent directories; OSError becomes ExportError"""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as e:
        raise ExportError(str(path), e) from e
    return path
