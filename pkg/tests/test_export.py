"""Tests for analyzers/export.py: generator files, JSON and sign grids."""

import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np
import pytest

from analyzers import export, hadamard
from analyzers.codes import LinearCode
from errors import UsageError
from geometry.field import field_from_order


@pytest.fixture
def small_code():
    G = np.array([[1, 0, 2, 1], [0, 1, 1, 2]], dtype=np.int64)
    return LinearCode(field=field_from_order(3), G=G, label="toy")


class TestGenerator:
    """Tests for the generator-matrix file format."""

    def test_text_layout(self, small_code):
        text = export.generator_text(small_code)
        assert text == "3 4 2\n1 0 2 1\n0 1 1 2\n"

    def test_write_then_read(self, tmp_path, small_code):
        path = export.write_generator(small_code, str(tmp_path / "sub" / "g.txt"))
        assert os.path.isfile(path)
        code = export.read_generator(path)
        assert (code.q, code.N, code.K) == (3, 4, 2)
        assert np.array_equal(code.G, small_code.G)

    @pytest.mark.parametrize("content", [
        "",
        "3 4\n1 0 2 1\n",
        "3 4 2\n1 0 2 1\n",
        "3 4 1\n1 0 3 1\n",
        "3 4 1\n1 0 a 1\n",
    ])
    def test_malformed(self, tmp_path, content):
        path = tmp_path / "bad.txt"
        path.write_text(content)
        with pytest.raises(UsageError):
            export.read_generator(str(path))


class TestJson:
    """Tests for enumeration payloads."""

    def test_payload(self, tmp_path):
        bases = np.zeros((3, 1, 5), dtype=np.int64)
        payload = export.enumeration_payload(2, 1, 2, bases)
        assert payload["schema"] == 1
        assert payload["count"] == 3
        path = export.write_json(payload, str(tmp_path / "delta.json"))
        with open(path, encoding="utf-8") as fh:
            loaded = json.load(fh)
        assert loaded == payload
        assert list(loaded) == sorted(loaded)

    def test_byte_identical(self, tmp_path):
        payload = {"b": np.int64(2), "a": [1, 2]}
        a = export.write_json(payload, str(tmp_path / "a.json"))
        b = export.write_json(dict(reversed(list(payload.items()))), str(tmp_path / "b.json"))
        with open(a, "rb") as fa, open(b, "rb") as fb:
            assert fa.read() == fb.read()


class TestSignGrid:
    """Tests for sign-grid files and suite reports."""

    def test_grid(self, tmp_path):
        A = hadamard.sylvester(3)
        path = export.write_sign_grid(A, str(tmp_path / "a3.txt"))
        assert np.array_equal(export.read_sign_grid(path), A.entries)

    def test_suite_report(self, tmp_path):
        rows = [("1", "point counts", True, "ok"), ("2", "a|b", False, "mismatch")]
        path = export.suite_report("quick", rows, str(tmp_path / "r.md"))
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
        assert "**Passed:** 1 / 2" in text
        assert "a\\|b" in text
        assert "| 2 |" in text
