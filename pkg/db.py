"""OGC cache layer: SQLite with WAL mode for enumerated Grassmannians."""

import hashlib
import json
import os
import sqlite3
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional

import numpy as np

from config import CACHE_DIR, CACHE_PATH

ENUMERATION_COLUMNS = [
    "n", "k", "q", "count", "checksum", "shape", "payload", "created",
]


def _get_connection() -> sqlite3.Connection:
    conn = sqlite3.connect(CACHE_PATH, uri=False)
    conn.execute("PRAGMA journal_mode=WAL")
    conn.row_factory = sqlite3.Row
    return conn


def ensure_db() -> str:
    """Create the cache directory and table if they don't exist. Returns DB path."""
    os.makedirs(CACHE_DIR, mode=0o700, exist_ok=True)
    conn = _get_connection()
    try:
        # Restrict DB file permissions to owner-only
        if os.path.isfile(CACHE_PATH):
            os.chmod(CACHE_PATH, 0o600)
        conn.executescript("""
            CREATE TABLE IF NOT EXISTS enumerations (
                n INTEGER NOT NULL,
                k INTEGER NOT NULL,
                q INTEGER NOT NULL,
                count INTEGER NOT NULL,
                checksum TEXT NOT NULL,
                shape TEXT NOT NULL,
                payload BLOB NOT NULL,
                created TEXT NOT NULL,
                PRIMARY KEY (n, k, q)
            );
        """)
        conn.commit()
    finally:
        conn.close()
    return CACHE_PATH


def stack_checksum(bases: np.ndarray) -> str:
    """SHA-256 of the row-major uint16 bytes of a basis stack."""
    return hashlib.sha256(np.ascontiguousarray(bases, dtype=np.uint16).tobytes()).hexdigest()


def store_enumeration(n: int, k: int, q: int, bases: np.ndarray) -> str:
    """Insert or replace the sorted basis stack of Δ_k(n, q). Returns its checksum."""
    ensure_db()
    payload = np.ascontiguousarray(bases, dtype=np.uint16).tobytes()
    checksum = stack_checksum(bases)
    conn = _get_connection()
    try:
        placeholders = ", ".join(["?"] * len(ENUMERATION_COLUMNS))
        cols = ", ".join(ENUMERATION_COLUMNS)
        conn.execute(
            "INSERT OR REPLACE INTO enumerations ({}) VALUES ({})".format(cols, placeholders),
            [n, k, q, int(bases.shape[0]), checksum, json.dumps(list(bases.shape)),
             sqlite3.Binary(payload), datetime.now(timezone.utc).isoformat()],
        )
        conn.commit()
    finally:
        conn.close()
    return checksum


def load_enumeration(n: int, k: int, q: int) -> Optional[np.ndarray]:
    """Cached basis stack, or None.  Rows whose checksum no longer matches are ignored."""
    ensure_db()
    conn = _get_connection()
    try:
        row = conn.execute(
            "SELECT * FROM enumerations WHERE n = ? AND k = ? AND q = ?", [n, k, q]
        ).fetchone()
    finally:
        conn.close()
    if row is None:
        return None
    shape = tuple(json.loads(row["shape"]))
    bases = np.frombuffer(row["payload"], dtype=np.uint16).reshape(shape).astype(np.int64)
    if stack_checksum(bases) != row["checksum"]:
        return None
    return bases


def list_enumerations() -> List[Dict[str, Any]]:
    """Summary rows of the cache (no payloads)."""
    ensure_db()
    conn = _get_connection()
    try:
        rows = conn.execute(
            "SELECT n, k, q, count, checksum, created FROM enumerations ORDER BY n, k, q"
        ).fetchall()
        return [dict(r) for r in rows]
    finally:
        conn.close()


def clear_cache() -> int:
    """Delete every cached enumeration. Returns the number of rows removed."""
    ensure_db()
    conn = _get_connection()
    try:
        cur = conn.execute("DELETE FROM enumerations")
        conn.commit()
        return cur.rowcount
    finally:
        conn.close()
