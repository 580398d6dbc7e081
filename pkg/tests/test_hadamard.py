"""Tests for analyzers/hadamard.py: sign matrices, designs and Reed-Muller codes."""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np
import pytest

from analyzers import caps, codes, hadamard
from errors import BudgetExceeded, NotHadamard, NotTruncated, UsageError


def _family(n, q, J):
    return caps.truncate(caps.build_cap(caps.cap_spec(n, q, J)))


class TestClosedForms:
    """Formula matrix, Sylvester recursion and subset order."""

    def test_rank_one(self):
        assert hadamard.sylvester(1).entries.tolist() == [[1, 1], [1, -1]]
        assert hadamard.a_matrix_formula(1).entries.tolist() == [[1, 1], [1, -1]]

    @pytest.mark.parametrize("r", range(1, 7))
    def test_formula_is_sylvester(self, r):
        A = hadamard.a_matrix_formula(r)
        assert np.array_equal(A.entries, hadamard.sylvester(r).entries)
        assert hadamard.is_hadamard(A)
        assert hadamard.kronecker_blocks_ok(r)

    def test_subset_order(self):
        order = hadamard.subset_order_recursive(3)
        assert order == [frozenset(), {1}, {2}, {1, 2}, {3}, {1, 3}, {2, 3}, {1, 2, 3}]
        assert hadamard.sylvester(3).index_order == order
        assert hadamard.subset_index({4, 3}, (3, 4)) == 3

    def test_not_hadamard(self):
        ones = hadamard.SignMatrix(r=1, entries=np.ones((2, 2), dtype=np.int64))
        assert not hadamard.is_hadamard(ones)
        assert not hadamard.is_hadamard(hadamard.SignMatrix(r=1, entries=np.array([[1, 0], [0, 1]])))

    def test_bad_r(self):
        with pytest.raises(UsageError):
            hadamard.sylvester(0)
        with pytest.raises(BudgetExceeded):
            hadamard.a_matrix_formula(9999)


class TestFromCaps:
    """Sign matrices read off truncated cap members."""

    @pytest.mark.parametrize("n,q,J", [(2, 3, (1, 3)), (3, 3, (1, 4, 7)), (4, 3, (1, 2, 5, 6)), (2, 5, (1, 3))])
    def test_matches_formula(self, n, q, J):
        fam = _family(n, q, J)
        A = hadamard.a_matrix_from_cap(fam)
        assert np.array_equal(A.entries, hadamard.a_matrix_formula(fam.spec.r).entries)
        assert hadamard.sigma_empty_ok(fam)
        assert all(hadamard.xi_matches_field(fam, mask) for mask in range(fam.size))

    def test_xi_of_empty_set(self):
        fam = _family(2, 3, (1, 3))
        xi = hadamard.xi_from_cap(fam, 0)
        assert xi.S == frozenset()
        assert xi.components == {frozenset(): 1, frozenset({2}): -1}

    def test_needs_truncation(self):
        fam = caps.build_cap(caps.cap_spec(2, 3, (1, 3)))
        with pytest.raises(NotTruncated):
            hadamard.xi_from_cap(fam, 0)


class TestDesigns:
    """Symmetric designs from normalized Hadamard matrices."""

    @pytest.mark.parametrize("r,expected", [(2, (3, 1, 0)), (3, (7, 3, 1)), (4, (15, 7, 3)), (5, (31, 15, 7))])
    def test_parameters(self, r, expected):
        design = hadamard.hadamard_design(hadamard.sylvester(r))
        assert (design.v, design.k, design.lam) == expected
        assert design.is_2design
        assert design.symmetric
        assert design.label == "point-hyperplane design of PG({},2)".format(r - 1)

    def test_degenerate_small_r(self):
        assert hadamard.hadamard_design(hadamard.sylvester(1)).degenerate
        assert hadamard.hadamard_design(hadamard.sylvester(2)).degenerate
        assert not hadamard.hadamard_design(hadamard.sylvester(3)).degenerate

    def test_rejects_non_normalized(self):
        neg = hadamard.SignMatrix(r=2, entries=-hadamard.sylvester(2).entries)
        with pytest.raises(NotHadamard):
            hadamard.hadamard_design(neg)
        with pytest.raises(NotHadamard):
            hadamard.hadamard_design(hadamard.SignMatrix(r=1, entries=np.ones((2, 2), dtype=np.int64)))


class TestReedMuller:
    """The binary code of A_r is RM(1, r)."""

    @pytest.mark.parametrize("r", range(1, 6))
    def test_oracle(self, r):
        assert hadamard.rm_matches_oracle(r)

    @pytest.mark.parametrize("r", [2, 3, 4])
    def test_parameters(self, r):
        code = hadamard.rm_code(r)
        d, _ = codes.min_distance(code)
        assert (code.N, code.K, d) == (2 ** r, r + 1, 2 ** (r - 1))

    def test_sign_grid(self):
        assert hadamard.sign_grid(hadamard.sylvester(1)) == "1 1\n1 -1\n"
