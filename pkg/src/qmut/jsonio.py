"""Canonical JSON serialization shared by the CLI and the HTTP service.

Both surfaces emit byte-identical payloads for the same object, so golden
fixtures captured from one can be compared against the other.
"""

from __future__ import annotations

import json

from .torus import GradedSeries


def dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=True)


def series_payload(series: GradedSeries) -> dict:
    """Series JSON with a human-readable rendering attached to each term."""
    obj = series.to_json()
    for term, (beta, coeff) in zip(obj["terms"], sorted(series.terms.items())):
        term["pretty"] = coeff.pretty()
    return obj
