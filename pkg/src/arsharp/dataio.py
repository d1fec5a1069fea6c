"""CSV ingestion and deterministic emission, plus run manifests.

All numeric output uses 17 significant digits so repeated runs are
byte-comparable and values round-trip exactly through text.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
from pathlib import Path

import numpy as np


class DataError(Exception):
    """Unreadable, unparseable, or empty input data."""


def fmt(x: float) -> str:
    """Render a float with 17 significant digits (round-trip exact)."""
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    return f"{float(x):.17g}"


def read_series(path, column=None) -> np.ndarray:
    """Read one real value per row from a CSV file.

    ``column`` selects a named column (header row required) or a 0-based
    index; with no column the file must have exactly one value per row.
    Non-numeric cells raise a row-numbered error.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    rows = [r for r in csv.reader(text.splitlines()) if r and any(c.strip() for c in r)]
    if not rows:
        raise DataError(f"{path}: no data rows")

    start = 0
    if column is None:
        col_idx = 0
    elif isinstance(column, int) or (isinstance(column, str) and column.isdigit()):
        col_idx = int(column)
    else:
        header = [c.strip() for c in rows[0]]
        if column not in header:
            raise DataError(f"{path}: no column named {column!r} in header {header}")
        col_idx = header.index(column)
        start = 1

    values = []
    for i, row in enumerate(rows[start:], start=start + 1):
        if col_idx >= len(row):
            raise DataError(f"{path}: row {i} has no column {col_idx}")
        cell = row[col_idx].strip()
        try:
            v = float(cell)
        except ValueError:
            # A lone header row is tolerated when reading positionally.
            if i == 1 and column is None:
                continue
            raise DataError(f"{path}: row {i}: not a number: {cell!r}") from None
        if not math.isfinite(v):
            raise DataError(f"{path}: row {i}: non-finite value {cell!r}")
        values.append(v)
    if not values:
        raise DataError(f"{path}: no numeric values found")
    return np.asarray(values, dtype=float)


def _write_rows(path, header: list[str], rows) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(",".join(header) + "\n")
        for row in rows:
            f.write(",".join(row) + "\n")


def write_series_csv(path, values) -> None:
    """One value per row, headed by ``value``."""
    _write_rows(path, ["value"], ([fmt(v)] for v in np.asarray(values, dtype=float)))


def write_curve_csv(path, curve) -> None:
    """Columns z, ghat, defined."""
    rows = (
        [fmt(z), fmt(v), "1" if d else "0"]
        for z, v, d in zip(curve.grid, curve.values, curve.defined)
    )
    _write_rows(path, ["z", "ghat", "defined"], rows)


def write_bands_csv(path, observed, bands) -> None:
    """Columns z, observed, lower, upper, outside."""
    outside = (
        observed.defined
        & np.isfinite(bands.lower)
        & np.isfinite(bands.upper)
        & ((observed.values < bands.lower) | (observed.values > bands.upper))
    )
    rows = (
        [fmt(z), fmt(o), fmt(lo), fmt(hi), "1" if out else "0"]
        for z, o, lo, hi, out in zip(
            bands.grid, observed.values, bands.lower, bands.upper, outside
        )
    )
    _write_rows(path, ["z", "observed", "lower", "upper", "outside"], rows)


def write_study_csv(path, study, decomposition=None) -> None:
    """Long-format study table: z, method, bias, mae, b_ghat, err, combination, defined_count.

    Decomposition columns are filled on the sharpened rows when a
    decomposition result is supplied, and left empty elsewhere.
    """
    rows = []
    for method, curves in study.curves.items():
        for j, z in enumerate(study.grid):
            b_ghat = err = comb = ""
            if decomposition is not None and method == "sharpened":
                b_ghat = fmt(decomposition.b_ghat[j])
                err = fmt(decomposition.err[j])
                comb = fmt(decomposition.combination[j])
            rows.append([
                fmt(z), method, fmt(curves.bias[j]), fmt(curves.mae[j]),
                b_ghat, err, comb, str(int(curves.defined_count[j])),
            ])
    _write_rows(
        path,
        ["z", "method", "bias", "mae", "b_ghat", "err", "combination", "defined_count"],
        rows,
    )


def sha256_hex(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def file_checksum(path) -> str:
    try:
        return sha256_hex(Path(path).read_bytes())
    except OSError as exc:
        raise DataError(f"cannot checksum {path}: {exc}") from exc


def write_manifest(out_path, subcommand: str, argv: list[str], seed,
                   dataset_checksum: str | None) -> Path:
    """Write the reproduction manifest next to an output file."""
    from . import __version__

    manifest = {
        "subcommand": subcommand,
        "argv": list(argv),
        "seed": seed,
        "dataset_sha256": dataset_checksum,
        "version": __version__,
    }
    path = Path(str(out_path) + ".manifest.json")
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path
