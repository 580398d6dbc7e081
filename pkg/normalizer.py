"""OGC normalizer: JSON-safe values and canonical JSON for reproducible payloads."""

import hashlib
import json
from typing import Any

import numpy as np


def to_jsonable(value: Any) -> Any:
    """Convert numpy scalars/arrays, tuples, sets and dataclass-like objects to JSON types."""
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (set, frozenset)):
        return [to_jsonable(v) for v in sorted(value)]
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if hasattr(value, "to_dict"):
        return to_jsonable(value.to_dict())
    return str(value)


def canonical_json(value: Any, indent: int = None) -> str:
    """Sorted keys and fixed separators: equal inputs give byte-identical text."""
    separators = (",", ":") if indent is None else (",", ": ")
    return json.dumps(to_jsonable(value), sort_keys=True, separators=separators,
                      indent=indent, ensure_ascii=False)


def payload_checksum(results: Any) -> str:
    """SHA-256 of the canonical JSON of a results payload."""
    return hashlib.sha256(canonical_json(results).encode("utf-8")).hexdigest()
