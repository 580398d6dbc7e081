"""Tests for analyzers/codes.py: parameters of C_{k,n}, duality and bounds."""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np
import pytest

import config
import db
from analyzers import codes
from errors import BudgetExceeded, UsageError
from schema import ProjSystem


@pytest.fixture(autouse=True)
def temp_cache(tmp_path, monkeypatch):
    """Redirect the enumeration cache to a temp directory for every test."""
    cache_dir = str(tmp_path / "ogc_test")
    cache_path = os.path.join(cache_dir, "ogc_test.db")
    monkeypatch.setattr(config, "CACHE_DIR", cache_dir)
    monkeypatch.setattr(config, "CACHE_PATH", cache_path)
    monkeypatch.setattr(db, "CACHE_DIR", cache_dir)
    monkeypatch.setattr(db, "CACHE_PATH", cache_path)


class TestKnownCodes:
    """Exact parameters of the small orthogonal Grassmann codes."""

    @pytest.mark.parametrize("n,k,q,N,K,d", [
        (2, 1, 2, 15, 5, 6),
        (2, 1, 3, 40, 5, 24),
        (2, 2, 2, 15, 9, 4),
        (2, 2, 3, 40, 10, 18),
    ])
    def test_parameters(self, n, k, q, N, K, d):
        code, _, _ = codes.orthogonal_code(n, k, q)
        assert (code.N, code.K) == (N, K)
        found, witness = codes.min_distance(code)
        assert found == d
        word = codes.gray.encode(code.field, code.G, witness)
        assert int(np.count_nonzero(word)) == d
        expected = codes.expected_parameters(n, k, q)
        assert (expected["N"], expected["K"], expected["d"]) == (N, K, d)

    def test_c22_q3_weight_support(self):
        code, _, _ = codes.orthogonal_code(2, 2, 3)
        weights = codes.weight_enumerator(code)
        assert sum(weights.values()) == 3 ** 10
        assert weights[0] == 1
        support = sorted(w for w in weights if w)
        assert support == [18, 24, 27, 30, 36]
        assert support == codes.expected_parameters(2, 2, 3)["weight_support"]

    def test_singleton(self):
        code, _, _ = codes.orthogonal_code(2, 2, 2)
        codes.min_distance(code)
        assert codes.singleton_ok(code)

    def test_c33_q2_expected(self):
        expected = codes.expected_parameters(3, 3, 2)
        assert (expected["N"], expected["K"], expected["d"]) == (135, 28, 32)


class TestDuality:
    """d from codeword weights equals N minus the largest hyperplane section."""

    @pytest.mark.parametrize("n,k,q", [(2, 1, 2), (2, 1, 3), (2, 2, 2), (2, 2, 3)])
    def test_gray_equals_hyperplanes(self, n, k, q):
        code, system, _ = codes.orthogonal_code(n, k, q)
        d, _ = codes.min_distance(code)
        assert codes.min_distance_by_hyperplanes(system) == d

    @pytest.mark.parametrize("n,k,q", [(2, 1, 3), (2, 2, 2)])
    def test_random_subsystems(self, n, k, q):
        """Ten random point subsets per system, spanning or not."""
        _, system, _ = codes.orthogonal_code(n, k, q)
        rng = np.random.default_rng(1000 * q + k)
        for _ in range(10):
            size = int(rng.integers(3, system.size + 1))
            rows = np.sort(rng.choice(system.size, size=size, replace=False))
            sub = ProjSystem(q=q, ambient_dim=system.ambient_dim, points=system.points[rows],
                             label="subset of {}".format(system.label))
            code = codes.code_from_system(sub)
            d, _ = codes.min_distance(code)
            assert codes.min_distance_by_hyperplanes(sub) == d

    def test_c1n_hyperplane_section(self):
        _, system, _ = codes.orthogonal_code(2, 1, 3)
        assert codes.max_hyperplane_section(system) == codes.c1n_max_section(2, 3)

    def test_hyperplane_budget(self):
        _, system, _ = codes.orthogonal_code(2, 2, 3)
        with pytest.raises(BudgetExceeded):
            codes.hyperplane_scan(system, budget=1000)


class TestBounds:
    """Tests for the partial-spread bound and fallback bounds."""

    def test_mr1_value(self):
        assert codes.mr1_lower_bound(3, 2, 2, 3) == 10
        assert codes.mr1_lower_bound(2, 1, 3, 4) == 4 * (3 - 1) + 1

    def test_mr1_needs_k_below_n(self):
        with pytest.raises(UsageError):
            codes.mr1_lower_bound(2, 2, 3, 4)
        with pytest.raises(UsageError):
            codes.mr1_lower_bound(3, 1, 3, 0)

    def test_bounds_bracket_exact(self):
        code, _, _ = codes.orthogonal_code(2, 1, 3)
        lower, upper = codes.distance_bounds(code, 2, 1, psi=4, prefix_blocks=1, probes=64)
        assert lower <= 24 <= upper
        assert upper <= code.N - code.K + 1

    def test_budget_exceeded(self):
        code, _, _ = codes.orthogonal_code(2, 2, 3)
        with pytest.raises(BudgetExceeded):
            codes.min_distance(code, budget=100)
        with pytest.raises(BudgetExceeded):
            codes.weight_enumerator(code, budget=100)


class TestCodeFromSystem:
    """Tests for code_from_system."""

    def test_rank_deficient_points(self):
        system = ProjSystem(q=3, ambient_dim=3, points=np.array([[1, 0, 0], [0, 1, 0], [1, 1, 0]]))
        code = codes.code_from_system(system)
        assert (code.N, code.K) == (3, 2)

    def test_empty_system(self):
        system = ProjSystem(q=2, ambient_dim=3, points=np.zeros((0, 3), dtype=np.int64))
        with pytest.raises(UsageError):
            codes.code_from_system(system)

    def test_dimension_formula(self):
        assert codes.expected_dimension(3, 3, 3) == 35
        assert codes.expected_dimension(3, 3, 2) == 28
        assert codes.expected_dimension(3, 1, 2) == 7
