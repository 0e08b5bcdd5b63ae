# core/export.py
"""
Thin persistence helper for command output.

- OutputEnvelope: the JSON document every command prints or writes.
- Complex matrices travel as nested [re, im] pairs.
- CSV carries real-valued rows only; numbers use the shortest repr that
  round-trips, invalid grid cells are written as nan (null in JSON).
- Files are written once, atomically (temp file in the target directory,
  then rename).
"""

import json
import os
import tempfile
from typing import Any, Dict, Iterable, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from core.models import ContourGrid, RegionPoint

SCHEMA_VERSION = "1.0"


class OutputEnvelope(BaseModel):
    model_config = ConfigDict(frozen=True)

    schema_version: str = SCHEMA_VERSION
    command: str
    inputs: Dict[str, Any]
    results: Any


# -------------------------------------------------------------------------
# ENCODING
# -------------------------------------------------------------------------
def encode_matrix(mat) -> List[List[List[float]]]:
    arr = np.asarray(mat, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in arr]


def decode_matrix(data) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    return arr[..., 0] + 1j * arr[..., 1]


def read_matrix(entries) -> np.ndarray:
    """Accept plain nested numbers or the [re, im] pair encoding."""
    if np.asarray(entries).ndim == 3:
        return decode_matrix(entries)
    return np.asarray(entries, dtype=complex)


def format_number(value: Optional[float]) -> str:
    if value is None:
        return "nan"
    return repr(float(value))


def render_json(envelope: OutputEnvelope) -> str:
    return json.dumps(envelope.model_dump(mode="json"), indent=2, allow_nan=False) + "\n"


def region_csv(points: Iterable[RegionPoint]) -> str:
    lines = ["d1,d2,tag"]
    lines.extend(f"{format_number(p.d1)},{format_number(p.d2)},{p.tag}" for p in points)
    return "\n".join(lines) + "\n"


def grid_csv(grid: ContourGrid) -> str:
    lines = [f"{grid.x_name},{grid.y_name},{grid.z_name}"]
    lines.extend(
        f"{format_number(x)},{format_number(y)},{format_number(z)}" for x, y, z in grid.rows()
    )
    return "\n".join(lines) + "\n"


# -------------------------------------------------------------------------
# WRITING
# -------------------------------------------------------------------------
def write_atomic(path: str, text: str) -> None:
    """Write text to path via a temp file + os.replace; raises OSError on failure."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(prefix=".tmp-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise
