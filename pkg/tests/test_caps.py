"""Tests for analyzers/caps.py: index bookkeeping, cap members and verifiers."""

import itertools
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np
import pytest

from analyzers import caps
from errors import EvenCharacteristic, InvalidJ, TableMismatch
from geometry import linalg
from geometry.field import field_from_order
from geometry.grassmann import GrassCtx, embed, enumerate_delta


def _row(F, entries, dim):
    v = np.zeros(dim, dtype=np.int64)
    for index, sign in entries.items():
        v[index - 1] = 1 if sign > 0 else F.neg(1)
    return v


class TestIndexSets:
    """Tests for parse_J, choose_M and cap_spec."""

    def test_parse(self):
        assert caps.parse_J("5, 1,3") == (1, 3, 5)
        with pytest.raises(InvalidJ):
            caps.parse_J("1,x")
        with pytest.raises(InvalidJ):
            caps.parse_J("")

    def test_single_pair(self):
        assert caps.choose_M(2, (1, 3)) == ((2,), None)

    def test_pair_with_last_index(self):
        spec = caps.cap_spec(3, 3, (1, 4, 7))
        assert spec.M == (2,)
        assert spec.ell == 3
        assert spec.table == 2
        assert spec.pairs == [(1, 4)]

    def test_two_pairs(self):
        spec = caps.cap_spec(4, 3, (1, 2, 5, 6))
        assert spec.pairs == [(1, 5), (2, 6)]
        assert spec.M == (3, 4)
        assert (spec.r, spec.k, spec.table) == (2, 4, 1)

    def test_unpaired_indices(self):
        spec = caps.cap_spec(5, 3, (1, 2, 6))
        assert spec.pairs == [(1, 6)]
        assert spec.Jbar == (2,)
        assert spec.M == (3,)

    def test_tau_permutes_M(self):
        spec = caps.cap_spec(4, 3, (1, 2, 5, 6), tau=(1, 0))
        assert spec.M == (4, 3)
        assert spec.tau == {1: 4, 2: 3}
        with pytest.raises(InvalidJ):
            caps.cap_spec(4, 3, (1, 2, 5, 6), tau=(0, 0))

    @pytest.mark.parametrize("n,J", [
        (2, (1, 3, 5)),     # |J| > n
        (2, (1, 1)),        # repeated
        (2, (0, 3)),        # out of range
        (3, (1, 2, 4, 5)),  # |J| > n
        (3, (1, 4, 9)),     # beyond 2n+1
    ])
    def test_invalid(self, n, J):
        with pytest.raises(InvalidJ):
            caps.cap_spec(n, 3, J)

    def test_table_mismatch(self):
        with pytest.raises(TableMismatch):
            caps.cap_spec(3, 3, (1, 4, 7), table="1")
        with pytest.raises(TableMismatch):
            caps.cap_spec(2, 3, (1, 3), table="2")
        assert caps.cap_spec(2, 3, (1, 3), table="1").table == 1


class TestBuild:
    """Worked examples of cap members."""

    def test_single_pair_members(self):
        F = field_from_order(3)
        fam = caps.build_cap(caps.cap_spec(2, 3, (1, 3)))
        assert fam.size == 2
        x0 = np.vstack([_row(F, {1: 1, 2: 1}, 5), _row(F, {3: 1, 4: -1}, 5)])
        x1 = np.vstack([_row(F, {1: 1, 4: -1}, 5), _row(F, {3: 1, 2: 1}, 5)])
        assert np.array_equal(fam.members[0], x0)
        assert np.array_equal(fam.members[1], x1)
        # Both contain e1 + e2 + e3 - e4.
        assert linalg.intersection_dim(F, x0, x1) == 1

    def test_table_two_member(self):
        F = field_from_order(3)
        fam = caps.build_cap(caps.cap_spec(3, 3, (1, 4, 7)))
        expected = np.vstack([_row(F, {1: 1, 2: 1}, 7), _row(F, {4: 1, 5: -1}, 7),
                              _row(F, {3: 1, 7: 1, 6: -1}, 7)])
        assert np.array_equal(fam.members[0], expected)

    @pytest.mark.parametrize("n,q,J", [(2, 3, (1, 3)), (4, 3, (1, 2, 5, 6)), (2, 5, (1, 3)), (5, 3, (1, 2, 6))])
    def test_member_count(self, n, q, J):
        fam = caps.build_cap(caps.cap_spec(n, q, J))
        assert fam.size == 2 ** fam.spec.r
        assert all(linalg.rank(fam.field, rows) == len(J) for rows in fam.members.values())

    def test_even_characteristic(self):
        with pytest.raises(EvenCharacteristic):
            caps.build_cap(caps.cap_spec(2, 4, (1, 3)))

    def test_truncation(self):
        fam = caps.truncate(caps.build_cap(caps.cap_spec(5, 3, (1, 2, 6))))
        assert all(rows.shape[0] == 2 for rows in fam.truncated.values())
        fam2 = caps.truncate(caps.build_cap(caps.cap_spec(3, 3, (1, 4, 7))))
        assert caps.truncated_dim(fam2.spec) == 3
        assert np.array_equal(fam2.truncated[1], fam2.members[1])

    @pytest.mark.parametrize("n,J", [(4, (1, 2, 5, 6)), (5, (1, 2, 6, 7))])
    def test_min_pair_distance(self, n, J):
        fam = caps.build_cap(caps.cap_spec(n, 3, J))
        points = fam.subspaces()
        assert caps.min_pair_distance(fam.field, points) == 1
        # Members two pairs apart.
        assert caps.min_pair_distance(fam.field, [points[0], points[3]]) == 2


class TestVerifiers:
    """Polar, Grassmann and projective cap checks."""

    @pytest.mark.parametrize("n,q,J", [(3, 3, (1, 4)), (4, 3, (1, 5)), (4, 3, (1, 5, 9)),
                                       (5, 3, (1, 2, 6)), (5, 3, (1, 2, 6, 7)), (3, 5, (1, 4))])
    def test_families_below_top_rank_are_polar_caps(self, n, q, J):
        fam = caps.truncate(caps.build_cap(caps.cap_spec(n, q, J)))
        for truncated in (False, True):
            report = caps.check_family(fam, truncated)
            assert report["polar_cap_expected"]
            assert report["totally_singular"]
            assert report["polar_cap_ok"]
            assert report["collinear_pairs"] == []
            assert report["grassmann_cap_ok"]
            assert report["projective_cap_ok"]

    @pytest.mark.parametrize("n,q,J", [(2, 3, (1, 3)), (3, 3, (1, 4, 7)), (4, 3, (1, 2, 5, 6)), (2, 5, (1, 3))])
    def test_top_rank_families_are_only_grassmann_caps(self, n, q, J):
        """For k = n, members one pair apart lie on a conic line of the dual polar space."""
        fam = caps.build_cap(caps.cap_spec(n, q, J))
        report = caps.check_family(fam)
        assert not report["polar_cap_expected"]
        assert report["totally_singular"]
        assert not report["polar_cap_ok"]
        assert report["polar_max_incidence"] == 2
        expected = [[a, b] for a, b in itertools.combinations(range(fam.size), 2)
                    if bin(a ^ b).count("1") == 1]
        assert report["collinear_pairs"] == expected
        assert report["grassmann_cap_ok"]
        assert report["projective_cap_ok"]

    def test_single_pair_counterexample(self):
        fam = caps.build_cap(caps.cap_spec(2, 3, (1, 3)))
        ctx = GrassCtx.from_params(2, 2, 3)
        assert caps.verify_polar_cap(ctx, fam.subspaces()) == (2, [0, 1])
        ctx3 = GrassCtx.from_params(3, 2, 3)
        fam3 = caps.build_cap(caps.cap_spec(3, 3, (1, 4)))
        assert caps.verify_polar_cap(ctx3, fam3.subspaces()) == (1, None)

    def test_full_dual_polar_space_is_not_polar_cap(self):
        ctx = GrassCtx.from_params(2, 2, 3)
        best, line = caps.verify_polar_cap(ctx, enumerate_delta(ctx))
        assert best == 4
        assert len(line) == 4

    def test_single_point(self):
        ctx = GrassCtx.from_params(2, 2, 3)
        assert caps.verify_polar_cap(ctx, enumerate_delta(ctx)[:1]) == (1, None)

    def test_full_quadric_is_not_grassmann_cap(self):
        ctx = GrassCtx.from_params(2, 1, 2)
        ok, best, _ = caps.verify_grassmann_cap(ctx.field, enumerate_delta(ctx))
        assert not ok and best == 3

    def test_dual_polar_image_is_projective_cap(self):
        ctx = GrassCtx.from_params(2, 2, 2)
        system = embed(ctx, enumerate_delta(ctx))
        ok, triple = caps.verify_projective_cap(ctx.field, system.points)
        assert ok and triple is None
        assert caps.verify_projective_cap(ctx.field, system.vectors())[0]

    def test_collinear_triple(self):
        F = field_from_order(2)
        ok, triple = caps.verify_projective_cap(F, np.array([[1, 0, 0], [0, 1, 0], [1, 1, 0]]))
        assert not ok
        assert triple == [0, 1, 2]
