"""OGC export: generator-matrix files, enumeration JSON, sign grids and run reports."""

import os
import sys
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

# Allow imports from the project root.
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from analyzers.codes import LinearCode
from analyzers.hadamard import SignMatrix, sign_grid
from config import SCHEMA_VERSION
from errors import UsageError
from geometry.field import field_from_order
from normalizer import canonical_json


def _prepare(output_path: str) -> str:
    output_path = os.path.abspath(output_path)
    os.makedirs(os.path.dirname(output_path) or ".", exist_ok=True)
    return output_path


# ------------------------------------------------------------------
# Generator matrices
# ------------------------------------------------------------------

def generator_text(code: LinearCode) -> str:
    """Line 1 ``q N K``, then K lines of N space-separated integers in [0, q)."""
    lines = ["{} {} {}".format(code.q, code.N, code.K)]
    for row in code.G:
        lines.append(" ".join(str(int(x)) for x in row))
    return "\n".join(lines) + "\n"


def write_generator(code: LinearCode, output_path: str) -> str:
    """Write the generator file. Returns the absolute path of the written file."""
    output_path = _prepare(output_path)
    with open(output_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(generator_text(code))
    return output_path


def read_generator(path: str) -> LinearCode:
    """Parse a generator file written by :func:`write_generator`."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [line.split() for line in fh if line.strip()]
    if not lines or len(lines[0]) != 3:
        raise UsageError("{}: first line must be 'q N K'".format(path))
    try:
        q, N, K = (int(x) for x in lines[0])
        rows = [[int(x) for x in line] for line in lines[1:]]
    except ValueError:
        raise UsageError("{}: entries must be integers".format(path))
    if len(rows) != K or any(len(r) != N for r in rows):
        raise UsageError("{}: expected {} rows of {} entries".format(path, K, N))
    G = np.array(rows, dtype=np.int64).reshape(K, N)
    if G.size and (G.min() < 0 or G.max() >= q):
        raise UsageError("{}: entries must lie in [0, {})".format(path, q))
    return LinearCode(field=field_from_order(q), G=G, label=os.path.basename(path))


# ------------------------------------------------------------------
# JSON
# ------------------------------------------------------------------

def enumeration_payload(n: int, k: int, q: int, bases: np.ndarray) -> Dict[str, Any]:
    return {
        "schema": SCHEMA_VERSION,
        "n": n,
        "k": k,
        "q": q,
        "count": int(bases.shape[0]),
        "points": bases.tolist(),
    }


def write_json(payload: Any, output_path: str, indent: Optional[int] = 2) -> str:
    """Canonical JSON (sorted keys) to a file. Returns the absolute path."""
    output_path = _prepare(output_path)
    with open(output_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(canonical_json(payload, indent=indent) + "\n")
    return output_path


# ------------------------------------------------------------------
# Sign matrices
# ------------------------------------------------------------------

def write_sign_grid(matrix: SignMatrix, output_path: str) -> str:
    output_path = _prepare(output_path)
    with open(output_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(sign_grid(matrix))
    return output_path


def read_sign_grid(path: str) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        rows = [[int(x) for x in line.split()] for line in fh if line.strip()]
    return np.array(rows, dtype=np.int64)


# ------------------------------------------------------------------
# Markdown summary of an acceptance run
# ------------------------------------------------------------------

def _md_escape(text: str) -> str:
    return text.replace("|", "\\|")


def _md_table(headers: List[str], rows: List[List[str]]) -> str:
    lines = []  # type: List[str]
    lines.append("| " + " | ".join(_md_escape(h) for h in headers) + " |")
    lines.append("| " + " | ".join(["---"] * len(headers)) + " |")
    for row in rows:
        lines.append("| " + " | ".join(_md_escape(c) for c in row) + " |")
    return "\n".join(lines)


def suite_report(suite: str, rows: List[Tuple[str, str, bool, str]], output_path: str) -> str:
    """Markdown table of (id, title, passed, detail) rows. Returns the absolute path."""
    output_path = _prepare(output_path)
    passed = sum(1 for r in rows if r[2])
    sections = [
        "# Acceptance suite: {}".format(suite),
        "",
        "**Passed:** {} / {}".format(passed, len(rows)),
        "",
        _md_table(["Check", "Title", "Result", "Detail"],
                  [[cid, title, "pass" if ok else "FAIL", detail] for cid, title, ok, detail in rows]),
        "",
    ]
    with open(output_path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(sections))
    return output_path
