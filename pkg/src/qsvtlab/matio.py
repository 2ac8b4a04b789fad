"""File formats for matrices and schedules.

Matrices are JSON objects with fields ``rows``, ``cols``, ``re`` and ``im``
(nested row-major arrays); schedules are JSON objects with ``pairs`` (array
of [domain_angle, codomain_angle]) and optional ``final_phi``.  Floats are
written with ``repr`` precision, so save/load round-trips exactly.
"""

from __future__ import annotations

import json
import os

import numpy as np

from .errors import ParseError
from .linalg import as_matrix
from .polynomials import PhaseSchedule


def save_matrix(m: np.ndarray, path: str | os.PathLike) -> None:
    m = as_matrix(m)
    payload = {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "re": m.real.tolist(),
        "im": m.imag.tolist(),
    }
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=1)
        handle.write("\n")


def _load_json(path: str | os.PathLike) -> dict:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            payload = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(payload, dict):
        raise ParseError(f"{path}: expected a JSON object at top level")
    return payload


def _nested_floats(payload: dict, field: str, rows: int, cols: int, path) -> np.ndarray:
    if field not in payload:
        raise ParseError(f"{path}: missing field {field!r}")
    raw = payload[field]
    try:
        arr = np.asarray(raw, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{path}: field {field!r} is not numeric") from exc
    if arr.shape != (rows, cols):
        raise ParseError(f"{path}: field {field!r} has shape {arr.shape}, expected {(rows, cols)}")
    if arr.size and not np.all(np.isfinite(arr)):
        raise ParseError(f"{path}: field {field!r} contains non-finite values")
    return arr


def load_matrix(path: str | os.PathLike) -> np.ndarray:
    payload = _load_json(path)
    for field in ("rows", "cols"):
        if field not in payload:
            raise ParseError(f"{path}: missing field {field!r}")
        if not isinstance(payload[field], int) or payload[field] < 0:
            raise ParseError(f"{path}: field {field!r} must be a nonnegative integer")
    rows, cols = payload["rows"], payload["cols"]
    re = _nested_floats(payload, "re", rows, cols, path)
    im = _nested_floats(payload, "im", rows, cols, path)
    return re + 1j * im


def save_schedule(schedule: PhaseSchedule, path: str | os.PathLike) -> None:
    payload = {
        "pairs": [[t, f] for t, f in schedule.pairs],
        "final_phi": schedule.final_angle,
    }
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=1)
        handle.write("\n")


def load_schedule(path: str | os.PathLike) -> PhaseSchedule:
    payload = _load_json(path)
    if "pairs" not in payload:
        raise ParseError(f"{path}: missing field 'pairs'")
    raw_pairs = payload["pairs"]
    if not isinstance(raw_pairs, list):
        raise ParseError(f"{path}: field 'pairs' must be an array")
    pairs = []
    for k, entry in enumerate(raw_pairs):
        if not isinstance(entry, list) or len(entry) != 2:
            raise ParseError(f"{path}: field 'pairs[{k}]' must be a [theta, phi] pair")
        try:
            pairs.append((float(entry[0]), float(entry[1])))
        except (TypeError, ValueError) as exc:
            raise ParseError(f"{path}: field 'pairs[{k}]' is not numeric") from exc
    final = payload.get("final_phi")
    if final is not None:
        try:
            final = float(final)
        except (TypeError, ValueError) as exc:
            raise ParseError(f"{path}: field 'final_phi' is not numeric") from exc
    try:
        return PhaseSchedule(tuple(pairs), final)
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from exc
