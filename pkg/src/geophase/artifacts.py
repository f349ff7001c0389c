"""CSV and JSON artifacts: formatting, parsing back, and atomic writes.

Floats are printed with 12 significant digits and rows end in ``\\n``.
JSON is UTF-8 with sorted keys. Files are written to a temporary sibling
and renamed into place, so readers never see a partial artifact.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from pathlib import Path

import numpy as np

from .pancharatnam import JumpReport, PhaseTrace

TRACE_HEADER = ("index", "cumulative_phase_rad", "step_overlap_magnitude")
JUMP_HEADER = ("index", "magnitude_rad", "sign", "min_overlap")
FLUX_HEADER = ("n_or_branch", "flux_phi0", "energy")


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    x = float(x)
    if x == 0.0:
        x = 0.0  # no "-0"
    if math.isnan(x):
        return "nan"
    return f"{x:.12g}"


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def json_text(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def trace_rows(trace: PhaseTrace):
    """Row k pairs phase k with the overlap of the step that arrived there.

    Row 0 has an empty overlap field.
    """
    ov = trace.step_overlap_magnitude
    for k, phi in enumerate(trace.cumulative_phase):
        yield (k, phi, ov[k - 1] if k else None)


def trace_csv(trace: PhaseTrace) -> str:
    return csv_text(TRACE_HEADER, trace_rows(trace))


def jumps_csv(reports: list[JumpReport]) -> str:
    return csv_text(JUMP_HEADER, ((r.index, r.magnitude, r.sign, r.min_overlap) for r in reports))


def read_csv(path_or_text) -> tuple[list[str], list[list[str]]]:
    text = path_or_text
    if isinstance(path_or_text, Path) or (
        isinstance(path_or_text, str) and "\n" not in path_or_text
    ):
        text = Path(path_or_text).read_text(encoding="utf-8")
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], rows[1:]


def parse_trace_csv(path_or_text) -> PhaseTrace:
    """Inverse of :func:`trace_csv`, up to the 12-digit rounding."""
    header, rows = read_csv(path_or_text)
    if tuple(header) != TRACE_HEADER:
        raise ValueError(f"unexpected trace header {header}")
    idx = [int(r[0]) for r in rows]
    if idx != list(range(len(rows))):
        raise ValueError("trace indices must run 0..N-1")
    if rows[0][2] != "":
        raise ValueError("row 0 must have an empty overlap field")
    cp = [float(r[1]) for r in rows]
    ov = [float(r[2]) for r in rows[1:]]
    return PhaseTrace(np.array(cp), np.array(ov))


def atomic_write(path: Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise


def write_all(files: dict) -> None:
    """Write a set of artifacts; every file's content is rendered beforehand."""
    for path, text in files.items():
        atomic_write(Path(path), text)
