"""Tests for geometry/intersections.py: quadric sections of Q+(3, q)."""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np
import pytest

from errors import BudgetExceeded, EvenCharacteristic, UsageError
from geometry import intersections
from geometry.field import field_new
from geometry.quadform import hyperbolic_form, polar_ctx, singular_points


class TestClosedForms:
    """Tests for the closed-form values."""

    @pytest.mark.parametrize("q", [3, 5, 7])
    def test_line_case(self, q):
        assert intersections.odd_intersection_max(1, q) == 4 * q
        assert intersections.no_shared_generator_bound(1, q) == 2 * (q + 1)

    def test_hyperbolic_size(self):
        assert intersections.hyperbolic_size(1, 3) == 16
        assert intersections.hyperbolic_size(1, 3) == singular_points(polar_ctx(hyperbolic_form(field_new(3), 2))).shape[0]


class TestIntersectionMax:
    """Brute force over every quadric of PG(3, 3)."""

    def test_all_quadrics(self):
        res = intersections.intersection_max(field_new(3), 1, "all")
        assert res.max_size == 12
        assert res.match is True
        assert res.quadrics_scanned == (3 ** 10 - 1) // 2 - 1
        assert res.split is not None

    def test_no_shared_generator(self):
        res = intersections.intersection_max(field_new(3), 1, "no_shared_generator")
        assert res.max_size <= 8
        assert res.match is True

    def test_even_q_reports_only(self):
        res = intersections.intersection_max(field_new(2), 1, "all")
        assert res.formula_value is None and res.match is None
        assert res.max_size > 0

    def test_bad_mode(self):
        with pytest.raises(UsageError):
            intersections.intersection_max(field_new(3), 1, "some")

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            intersections.intersection_max(field_new(3), 1, "all", budget=100)

    def test_split_witness_product(self):
        """The witness minus λ Q+ is the product of the two returned forms."""
        F = field_new(3)
        res = intersections.intersection_max(F, 1, "all")
        split = res.split
        prod = intersections.product_coefficients(F, np.array([split["l1"]]), np.array([split["l2"]]))
        from geometry.quadform import coefficient_vector
        from geometry import linalg
        hyp = coefficient_vector(hyperbolic_form(F, 2))
        rest = F.sub(np.array(res.witness), F.mul(split["lambda"], hyp))
        assert np.array_equal(linalg.canonicalize_rows(F, prod)[0], linalg.canonicalize_rows(F, rest[None, :])[0])


class TestCountingFormula:
    """Tests for the eigenvector counting formula."""

    def test_random_instances(self):
        F = field_new(3)
        checks = [intersections.intersection_formula_check(F, M, B, 1)
                  for M, B in intersections.random_formula_instances(F, 1, 30, seed=7)]
        assert all(c.equal for c in checks)

    def test_instances_are_seeded(self):
        F = field_new(5)
        a = intersections.random_formula_instances(F, 1, 3, seed=1)
        b = intersections.random_formula_instances(F, 1, 3, seed=1)
        assert all(np.array_equal(x[0], y[0]) and np.array_equal(x[1], y[1]) for x, y in zip(a, b))
        assert all(np.array_equal(B, B.T) for _, B in a)

    def test_even_characteristic(self):
        with pytest.raises(EvenCharacteristic):
            intersections.intersection_formula_check(field_new(2), np.eye(2), np.zeros((2, 2)), 1)
