"""Tests for geometry/grassmann.py: points, lines, embedding and the cache."""

import itertools
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np
import pytest

import config
import db
from errors import BudgetExceeded, UsageError, VerificationFailed
from geometry import linalg
from geometry.grassmann import (
    GrassCtx,
    Subspace,
    collinear,
    delta_size,
    embed,
    enumerate_delta,
    enumerate_lines,
    line_embedding_ok,
    load_or_enumerate,
)
from geometry.quadform import is_totally_singular


@pytest.fixture(autouse=True)
def temp_cache(tmp_path, monkeypatch):
    """Redirect the enumeration cache to a temp directory for every test."""
    cache_dir = str(tmp_path / "ogc_test")
    cache_path = os.path.join(cache_dir, "ogc_test.db")
    monkeypatch.setattr(config, "CACHE_DIR", cache_dir)
    monkeypatch.setattr(config, "CACHE_PATH", cache_path)
    monkeypatch.setattr(db, "CACHE_DIR", cache_dir)
    monkeypatch.setattr(db, "CACHE_PATH", cache_path)
    return cache_path


class TestEnumeration:
    """Tests for enumerate_delta and delta_size."""

    @pytest.mark.parametrize("n,k,q,expected", [
        (2, 1, 2, 15), (2, 2, 2, 15), (2, 2, 3, 40), (3, 1, 2, 63), (3, 2, 2, 315), (3, 3, 2, 135),
    ])
    def test_counts(self, n, k, q, expected):
        assert delta_size(n, k, q) == expected
        assert len(enumerate_delta(GrassCtx.from_params(n, k, q))) == expected

    def test_points_are_totally_singular_rref(self):
        ctx = GrassCtx.from_params(2, 2, 3)
        pts = enumerate_delta(ctx)
        assert all(is_totally_singular(ctx.polar, p.basis) for p in pts)
        assert all(linalg.is_rref(ctx.field, p.basis) for p in pts)
        assert [p.id for p in pts] == list(range(40))

    def test_bad_parameters(self):
        with pytest.raises(UsageError):
            GrassCtx.from_params(2, 3, 3)

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            enumerate_delta(GrassCtx.from_params(2, 2, 3), cap=10)


class TestLines:
    """Tests for enumerate_lines and collinearity."""

    def test_dual_polar_lines(self):
        """Each point of Δ_2(n=2) lies on q+1 lines."""
        ctx = GrassCtx.from_params(2, 2, 2)
        pts = enumerate_delta(ctx)
        lines = enumerate_lines(ctx, pts)
        assert len(lines) == 15
        per_point = np.bincount([i for ln in lines for i in ln.points], minlength=15)
        assert np.all(per_point == 3)

    def test_interior_lines(self):
        ctx = GrassCtx.from_params(2, 1, 3)
        lines = enumerate_lines(ctx, enumerate_delta(ctx))
        assert len(lines) == 40
        assert all(ln.kind == "interior" for ln in lines)

    def test_interior_lines_below_top_rank(self):
        """Δ_2(n=3, q=2): each collinear pair lies on exactly one line."""
        ctx = GrassCtx.from_params(3, 2, 2)
        pts = enumerate_delta(ctx)
        assert len(pts) == 315
        lines = enumerate_lines(ctx, pts)
        assert len(lines) == 945
        assert all(ln.kind == "interior" and len(ln.points) == 3 for ln in lines)
        on_line = {}
        for ln in lines:
            for pair in itertools.combinations(ln.points, 2):
                on_line[pair] = on_line.get(pair, 0) + 1
        assert set(on_line.values()) == {1}
        for a, b in itertools.combinations(pts, 2):
            assert collinear(ctx, a, b) == ((a.id, b.id) in on_line)

    def test_collinear(self):
        ctx = GrassCtx.from_params(2, 2, 2)
        pts = enumerate_delta(ctx)
        line = enumerate_lines(ctx, pts)[0]
        a, b = pts[line.points[0]], pts[line.points[1]]
        assert collinear(ctx, a, b)
        with pytest.raises(UsageError):
            collinear(ctx, a, a)

    def test_subspace_equality(self):
        ctx = GrassCtx.from_params(2, 1, 3)
        s = Subspace.from_rows(ctx.field, [[2, 0, 0, 0, 0]])
        assert s == Subspace(np.array([[1, 0, 0, 0, 0]]))


class TestEmbedding:
    """Tests for the Plücker embedding of Δ_k."""

    def test_embedding_is_injective(self):
        ctx = GrassCtx.from_params(2, 2, 3)
        system = embed(ctx, enumerate_delta(ctx))
        assert system.size == 40
        assert system.ambient_dim == 10

    def test_line_images(self):
        """Interior lines map to projective lines; conic lines have no three collinear images."""
        for n, k in ((3, 1), (2, 2)):
            ctx = GrassCtx.from_params(n, k, 2)
            pts = enumerate_delta(ctx)
            system = embed(ctx, pts)
            assert all(line_embedding_ok(ctx, ln, system) for ln in enumerate_lines(ctx, pts)[:50])


class TestCache:
    """Tests for load_or_enumerate through the SQLite cache."""

    def test_second_load_hits(self):
        ctx = GrassCtx.from_params(2, 2, 3)
        first, hit1 = load_or_enumerate(ctx)
        second, hit2 = load_or_enumerate(ctx)
        assert (hit1, hit2) == (False, True)
        assert all(np.array_equal(a.basis, b.basis) for a, b in zip(first, second))

    def test_no_cache_compares(self):
        ctx = GrassCtx.from_params(2, 1, 2)
        load_or_enumerate(ctx)
        pts, hit = load_or_enumerate(ctx, use_cache=False)
        assert not hit and len(pts) == 15

    def test_no_cache_detects_mismatch(self):
        ctx = GrassCtx.from_params(2, 1, 2)
        bases = np.stack([p.basis for p in enumerate_delta(ctx)])
        db.store_enumeration(2, 1, 2, bases[::-1].copy())
        with pytest.raises(VerificationFailed):
            load_or_enumerate(ctx, use_cache=False)
