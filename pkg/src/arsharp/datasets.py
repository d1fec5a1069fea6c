"""Bundled example series, vendored as package data for hermetic tests."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from importlib import resources

import numpy as np

_PROVENANCE = {
    "earthquakes": (
        "Annual counts of worldwide earthquakes of magnitude 7 and greater, "
        "1916-2015 (n=100). Substitute transcription: 1916-1999 from the widely "
        "circulated NEIC annual-count summary table, 2000-2015 from USGS annual "
        "seismicity summaries. The course-page export originally cited for this "
        "series (online.stat.psu.edu, stat501 book export 995) was not reachable "
        "when the data were vendored, so per-year values may differ from that "
        "source; see the dataset reproduction checks in the test suite."
    ),
    "lynx": (
        "Annual Canadian lynx trappings, MacKenzie River district, 1821-1934 "
        "(n=114). Classic public dataset as distributed with R (datasets::lynx). "
        "Analyses conventionally use the square-root scale."
    ),
}


@dataclass
class Dataset:
    name: str
    values: np.ndarray
    years: np.ndarray
    provenance: str


def dataset_names() -> tuple[str, ...]:
    return tuple(sorted(_PROVENANCE))


def _resource_bytes(name: str) -> bytes:
    return resources.files("arsharp").joinpath(f"data/{name}.csv").read_bytes()


def bundled_dataset(name: str) -> Dataset:
    """Load a bundled dataset by name ("earthquakes" or "lynx")."""
    if name not in _PROVENANCE:
        raise ValueError(f"unknown dataset {name!r}; available: {dataset_names()}")
    text = _resource_bytes(name).decode("utf-8").splitlines()
    rows = list(csv.DictReader(text))
    years = np.array([int(r["year"]) for r in rows])
    values = np.array([float(r["value"]) for r in rows])
    return Dataset(name=name, values=values, years=years, provenance=_PROVENANCE[name])


def dataset_checksum(name: str) -> str:
    """SHA-256 of the vendored CSV bytes, for run manifests."""
    import hashlib

    return hashlib.sha256(_resource_bytes(name)).hexdigest()
