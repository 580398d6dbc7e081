"""OGC data models: projective points, projective systems and run reports."""

import hashlib
from dataclasses import dataclass, field, asdict
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from config import SCHEMA_VERSION


def _utc_now_iso() -> str:
    return datetime.now(timezone.utc).isoformat()


@dataclass(frozen=True)
class ProjVec:
    """A point of a projective space: nonzero coordinates over GF(q).

    When ``canonical`` is set the first nonzero coordinate equals 1, so two
    canonical ProjVecs name the same point exactly when they compare equal.
    """
    coords: Tuple[int, ...]
    canonical: bool = True

    def __len__(self) -> int:
        return len(self.coords)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coords, dtype=np.int64)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class ProjSystem:
    """Deduplicated projective points of PG(ambient_dim - 1, q).

    ``points`` is an N x ambient_dim array of canonical coordinate rows; the row
    order is the column order of the generator matrix built from the system.
    """
    q: int
    ambient_dim: int
    points: np.ndarray
    label: str = ""

    @property
    def size(self) -> int:
        return int(self.points.shape[0])

    def vectors(self) -> List[ProjVec]:
        return [ProjVec(tuple(int(c) for c in row)) for row in self.points]

    def checksum(self) -> str:
        data = np.ascontiguousarray(self.points, dtype=np.uint16).tobytes()
        return hashlib.sha256(data).hexdigest()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "q": self.q,
            "ambient_dim": self.ambient_dim,
            "label": self.label,
            "size": self.size,
            "points": self.points.tolist(),
        }


@dataclass
class RunReport:
    """Outcome of one CLI command.

    ``results`` is the deterministic payload; ``runtime_ms`` and ``created`` are
    the only fields that may differ between two runs with equal parameters.
    """
    command: str
    parameters: Dict[str, Any] = field(default_factory=dict)
    results: Dict[str, Any] = field(default_factory=dict)
    runtime_ms: int = 0
    cache_hits: int = 0
    artifacts: List[str] = field(default_factory=list)
    ok: bool = True
    failures: List[str] = field(default_factory=list)
    schema: int = SCHEMA_VERSION
    created: str = field(default_factory=_utc_now_iso)
    error: Optional[str] = None

    def fail(self, message: str) -> None:
        self.ok = False
        self.failures.append(message)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
