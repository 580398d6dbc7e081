"""Tests for analyzers/gray.py: Gray order, the blocked engine and sharding."""

import itertools
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np
import pytest

from analyzers import gray
from errors import BudgetExceeded
from geometry.field import field_from_order


def _random_generator(q, K, N, seed):
    rng = np.random.default_rng(seed)
    return rng.integers(0, q, size=(K, N), dtype=np.int64)


def _brute_force(F, G):
    K, N = G.shape
    weights = {}
    for msg in itertools.product(range(F.q), repeat=K):
        w = int(np.count_nonzero(gray.encode(F, G, list(msg))))
        weights[w] = weights.get(w, 0) + 1
    d = min((w for w in weights if w), default=None)
    return d, weights


class TestGrayOrder:
    """Tests for gray_digits and gray_walk."""

    @pytest.mark.parametrize("q,length", [(2, 5), (3, 3), (4, 3), (5, 2)])
    def test_single_digit_steps(self, q, length):
        words = list(gray.iter_gray(length, q))
        assert len({tuple(w) for w in words}) == q ** length
        for a, b in zip(words, words[1:]):
            diff = [i for i in range(length) if a[i] != b[i]]
            assert len(diff) == 1
            assert abs(a[diff[0]] - b[diff[0]]) == 1

    def test_walk_matches_encode(self):
        F = field_from_order(3)
        G = _random_generator(3, 3, 7, seed=1)
        for digits, word in gray.gray_walk(F, G):
            assert np.array_equal(word, gray.encode(F, G, digits))

    def test_low_block_order(self):
        F = field_from_order(3)
        G = _random_generator(3, 3, 6, seed=2)
        words, msgs = gray.low_block(F, G)
        assert msgs.tolist() == [list(d) for d in gray.iter_gray(3, 3)]
        for m, w in zip(msgs, words):
            assert np.array_equal(w, gray.encode(F, G, m))


class TestEngine:
    """Tests for enumerate_codewords against brute force."""

    @pytest.mark.parametrize("q,K,N,seed", [(2, 6, 20, 3), (3, 4, 9, 4), (4, 3, 7, 5), (2, 18, 40, 6)])
    def test_matches_brute_force(self, q, K, N, seed):
        F = field_from_order(q)
        G = _random_generator(q, K, N, seed)
        result = gray.enumerate_codewords(F, G, want_weights=True)
        if q ** K <= 5000:
            d, weights = _brute_force(F, G)
            assert result.d == d
            assert result.weights == weights
        assert sum(result.weights.values()) == q ** K
        assert result.complete and result.messages == q ** K

    def test_witness_has_minimum_weight(self):
        F = field_from_order(3)
        G = _random_generator(3, 5, 12, seed=7)
        result = gray.enumerate_codewords(F, G)
        word = gray.encode(F, G, result.witness)
        assert int(np.count_nonzero(word)) == result.d

    def test_witness_is_first_visited(self):
        F = field_from_order(2)
        G = np.eye(4, dtype=np.int64)
        result = gray.enumerate_codewords(F, G)
        assert result.d == 1
        assert result.witness == [1, 0, 0, 0]

    def test_sharded_equals_single(self):
        F = field_from_order(2)
        G = _random_generator(2, 20, 48, seed=8)
        single = gray.enumerate_codewords(F, G, want_weights=True)
        sharded = gray.enumerate_codewords(F, G, want_weights=True, threads=2)
        assert sharded.shards == 2
        assert (single.d, single.witness, single.weights) == (sharded.d, sharded.witness, sharded.weights)

    def test_prefix_scan_is_upper_bound(self):
        F = field_from_order(2)
        G = _random_generator(2, 20, 48, seed=9)
        full = gray.enumerate_codewords(F, G)
        prefix = gray.enumerate_codewords(F, G, high_limit=2)
        assert not prefix.complete
        assert prefix.d >= full.d

    def test_budget(self):
        F = field_from_order(3)
        G = _random_generator(3, 6, 10, seed=10)
        with pytest.raises(BudgetExceeded):
            gray.enumerate_codewords(F, G, budget=100)
