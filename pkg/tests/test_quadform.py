"""Tests for geometry/quadform.py: forms, polarity and totally singular subspaces."""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np
import pytest

from errors import BudgetExceeded, DimMismatch
from geometry.field import field_new
from geometry.quadform import (
    coefficient_vector,
    evaluate,
    from_coefficients,
    generator_count_hyperbolic,
    hyperbolic_form,
    is_totally_singular,
    kappa,
    parabolic_form,
    polar,
    polar_ctx,
    radical,
    singular_points,
    totally_singular_subspaces,
)


class TestForms:
    """Tests for evaluation and the polar form."""

    def test_parabolic_values(self):
        F = field_new(3)
        form = parabolic_form(F, 2)
        assert evaluate(form, [1, 0, 1, 0, 0]) == 1
        assert evaluate(form, [0, 0, 0, 0, 1]) == 1
        assert evaluate(form, [1, 0, 2, 0, 1]) == 0

    def test_dim_mismatch(self):
        with pytest.raises(DimMismatch):
            evaluate(parabolic_form(field_new(3), 1), [1, 0])

    def test_coefficients_round_trip(self):
        F = field_new(5)
        form = hyperbolic_form(F, 2)
        again = from_coefficients(F, 4, coefficient_vector(form))
        assert np.array_equal(again.coeffs, form.coeffs)

    def test_polar_is_symmetric(self):
        F = field_new(3)
        ctx = polar_ctx(parabolic_form(F, 2))
        x = np.array([1, 2, 0, 1, 1])
        y = np.array([0, 1, 1, 2, 0])
        assert polar(ctx, x, y) == polar(ctx, y, x)
        assert polar(ctx, [1, 0, 0, 0, 0], [0, 0, 1, 0, 0]) == 1

    def test_radical(self):
        """In characteristic 2 the parabolic polar form has the nucleus as radical."""
        assert radical(polar_ctx(parabolic_form(field_new(2), 2))).tolist() == [[0, 0, 0, 0, 1]]
        assert radical(polar_ctx(parabolic_form(field_new(3), 2))).shape[0] == 0


class TestSingular:
    """Tests for singular points and totally singular subspaces."""

    @pytest.mark.parametrize("q", [2, 3, 4])
    def test_point_count_q4(self, q):
        """Q(4, q) has (q^4 - 1)/(q - 1) points."""
        ctx = polar_ctx(parabolic_form(field_new(2, 2) if q == 4 else field_new(q), 2))
        assert singular_points(ctx).shape[0] == (q ** 4 - 1) // (q - 1)

    def test_hyperbolic_points(self):
        ctx = polar_ctx(hyperbolic_form(field_new(3), 2))
        assert singular_points(ctx).shape[0] == 16

    def test_lines_of_q4(self):
        """Q(4, q) has (q + 1)(q^2 + 1) lines."""
        ctx = polar_ctx(parabolic_form(field_new(3), 2))
        lines = totally_singular_subspaces(ctx, 2)
        assert lines.shape == (40, 2, 5)
        assert all(is_totally_singular(ctx, b) for b in lines)

    def test_is_totally_singular(self):
        ctx = polar_ctx(parabolic_form(field_new(3), 2))
        assert is_totally_singular(ctx, [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0]])
        assert not is_totally_singular(ctx, [[1, 0, 0, 0, 0], [0, 0, 1, 0, 0]])

    def test_budget(self):
        ctx = polar_ctx(parabolic_form(field_new(3), 2))
        with pytest.raises(BudgetExceeded):
            totally_singular_subspaces(ctx, 2, cap=10)

    @pytest.mark.parametrize("q", [2, 3])
    def test_hyperbolic_generators(self, q):
        assert generator_count_hyperbolic(field_new(q), 1) == kappa(1, q) == 2 * (q + 1)
