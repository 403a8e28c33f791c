import numpy as np
import pytest

from gmmbool.construct import (GmmPlan, Piece, apply_degree_fix, assemble, build_c1, build_c2,
                               build_c3, build_generalized, coverage, make_prefix_tiling,
                               masks_by_weight, walsh_value_set_c1)
from gmmbool.core import (autocorrelation, certify, degree, nonlinearity,
                          resiliency_order, sac_check, walsh_spectrum)
from gmmbool.params import GmmProfile, Infeasible, ProfileError, k_degopt, k_sac


def measure(f):
    s = walsh_spectrum(f)
    assert s.parseval_ok()
    return resiliency_order(s), nonlinearity(s), degree(f)


def assert_common(f, plan):
    """Checks every built function must pass."""
    assert (coverage(plan.n, plan.pieces) == 1).all()
    m, N, d = measure(f)
    assert m >= plan.m
    assert d <= plan.n - m - 1  # Siegenthaler
    if plan.claimed_N is not None:
        assert N == plan.claimed_N
    return m, N, d


class TestHelpers:
    def test_masks_by_weight(self):
        assert list(masks_by_weight(3, 1)) == [3, 5, 6, 7]
        assert list(masks_by_weight(4, 1, 3)) == [3, 5, 6, 9, 10, 12]
        assert masks_by_weight(6, 1).size == 57

    def test_tiling_small(self):
        t = make_prefix_tiling(2, [(1, 1), (2, 2)])
        assert list(t.assignment[1]) == [0]
        assert list(t.assignment[2]) == [2, 3]
        assert t.is_prefix_free()

    def test_tiling_two_piece_shape(self):
        t = make_prefix_tiling(12, [(6, 57), (7, 14)])
        assert list(t.assignment[6]) == list(range(57))
        assert list(t.assignment[7]) == list(range(114, 128))
        assert t.is_prefix_free()

    def test_tiling_rejects_kraft_violation(self):
        with pytest.raises(ProfileError):
            make_prefix_tiling(3, [(1, 1), (2, 1)])
        with pytest.raises(ProfileError):
            make_prefix_tiling(3, [(1, 2), (2, 1)])

    def test_coverage_detects_overlap(self):
        plan = GmmPlan(3, 0, "x", [Piece(2, [0, 1], [1, 2]), Piece(2, [1], [3])])
        cov = coverage(3, plan.pieces)
        assert list(cov) == [1, 1, 1, 1, 2, 2, 2, 2]
        with pytest.raises(AssertionError):
            assemble(plan)

    def test_assemble_concatenation(self):
        # two blocks of 2 bits: x2 and x1+x2 on the suffix
        plan = GmmPlan(3, 0, "x", [Piece(2, [0, 1], [0b01, 0b11])])
        f = assemble(plan)
        assert list(f.bits) == [0, 1, 0, 1, 0, 1, 1, 0]

    def test_monomial_term(self):
        plan = GmmPlan(2, 0, "x", [Piece(2, [0], [0], monomial=0b11)])
        assert list(assemble(plan).bits) == [0, 0, 0, 1]


class TestDegreeFix:
    def _plan(self, images, pool):
        return GmmPlan(4, 0, "x", [Piece(2, [0, 1], [1, 2], np.array([1, 2])),
                                   Piece(2, [2, 3], images, np.array(pool))])

    def test_swap_when_parity_even(self):
        plan = GmmPlan(5, 0, "x", [Piece(2, [0, 1, 2, 3], [1, 2, 3, 1]),
                                   Piece(2, [4, 5, 6], [1, 2, 3], np.array([0, 1, 2, 3]))])
        fix = apply_degree_fix(plan)
        assert fix.ok and fix.swapped is not None
        assert int(np.bitwise_xor.reduce(plan.pieces[1].images)) != 0

    def test_noop_when_odd(self):
        plan = self._plan([1, 2], [1, 2, 3])
        before = plan.pieces[1].images.copy()
        fix = apply_degree_fix(plan)
        assert fix.ok and fix.swapped is None
        assert np.array_equal(plan.pieces[1].images, before)

    def test_no_swap_without_spare(self):
        plan = GmmPlan(4, 0, "x", [Piece(2, [0, 1], [1, 2]), Piece(2, [2, 3, 4], [1, 2, 3], np.array([1, 2, 3]))])
        assert not apply_degree_fix(plan).ok


class TestTwoPiece:
    def test_n12_m1(self):
        f, plan = build_c1(12, 1)
        assert plan.k == 5
        assert assert_common(f, plan) == (1, 2000, 8)
        cert = certify(f, {"m": 1, "N": 2000, "d": 8})
        assert cert.passed

    def test_n16_m2(self):
        f, plan = build_c1(16, 2)
        m, N, d = assert_common(f, plan)
        assert (N, d) == (2**15 - 2**7 - 2**6, 10)

    def test_piece0_is_bijective_onto_pool(self):
        _, plan = build_c1(12, 1)
        assert np.array_equal(np.sort(plan.pieces[0].images), masks_by_weight(6, 1))

    @pytest.mark.parametrize("n,m", [(12, 1), (14, 1), (16, 2), (18, 2)])
    def test_spectrum_values(self, n, m):
        f, plan = build_c1(n, m, seed=7)
        assert_common(f, plan)
        assert set(np.unique(walsh_spectrum(f).values).tolist()) <= walsh_value_set_c1(n, plan.k)
        assert degree(f) == n - plan.k + 1

    def test_determinism(self):
        a, _ = build_c1(14, 1, seed=3)
        b, _ = build_c1(14, 1, seed=3)
        c, _ = build_c1(14, 1, seed=4)
        assert a == b and a != c
        assert measure(a) == measure(c)

    def test_without_degree_fix(self):
        f, plan = build_c1(12, 1, fix_degree=False)
        assert plan.degree_fix is None and plan.claimed_d is None
        assert_common(f, plan)

    def test_k_override(self):
        f, plan = build_c1(16, 1, k=7)
        assert plan.k == 7
        assert measure(f)[:2] == (1, 2**15 - 2**7 - 2**6)

    def test_cap(self):
        from gmmbool.core import CapExceeded
        with pytest.raises(CapExceeded):
            build_c1(20, 1, cap=16)


class TestSac:
    def test_n14(self):
        f, plan = build_c2(14, 1)
        assert plan.k == k_sac(14, 1).k == 6
        m, N, d = assert_common(f, plan)
        assert N == 2**13 - 2**6 - 2**5
        assert sac_check(autocorrelation(f))

    def test_images_complement_closed(self):
        for seed in (None, 1, 2):
            _, plan = build_c2(16, 1, seed=seed)
            for p in plan.pieces:
                full = (1 << p.suffix_len) - 1
                imgs = set(p.images.tolist())
                assert {full ^ b for b in imgs} == imgs

    @pytest.mark.parametrize("n,m,seed", [(16, 1, None), (16, 1, 5), (18, 1, 2)])
    def test_sac_across_builds(self, n, m, seed):
        f, plan = build_c2(n, m, seed=seed)
        assert_common(f, plan)
        assert sac_check(autocorrelation(f))

    def test_infeasible(self):
        with pytest.raises(Infeasible, match="SAC capacity"):
            build_c2(12, 1)


class TestDegreeOptimized:
    def test_n12(self):
        f, plan = build_c3(12, 1)
        assert plan.k == k_degopt(12, 1).k == 5
        assert assert_common(f, plan) == (1, 2000, 10)

    def test_index_partition(self):
        _, plan = build_c3(16, 2)
        lin, mono = plan.notes["linear_coords"], plan.notes["monomial_coords"]
        assert not set(lin) & set(mono)
        assert sorted(lin + mono) == list(range(16 - plan.k + 1, 17))

    @pytest.mark.parametrize("n,m", [(16, 1), (16, 2), (18, 2)])
    def test_degree_is_maximal(self, n, m):
        f, plan = build_c3(n, m, seed=1)
        _, _, d = assert_common(f, plan)
        assert d == n - m - 1

    def test_infeasible_at_14_2(self):
        with pytest.raises(Infeasible, match="degree-shifted capacity"):
            build_c3(14, 2)


class TestGeneralized:
    def test_two_piece_profile_matches_c1(self):
        g, gplan = build_generalized(GmmProfile(12, 1, ((6, 57), (5, 14))))
        f, _ = build_c1(12, 1, fix_degree=False)
        assert gplan.profile().pieces == ((6, 57), (5, 14))
        assert measure(g)[:2] == measure(f)[:2]

    def test_three_piece_reference_profile(self):
        f, plan = build_generalized(GmmProfile.parse(20, 2, "10:968,8:219,7:10"))
        m, N, d = assert_common(f, plan)
        assert N == 2**19 - 2**9 - 2**7 - 2**6 == 523584
        assert m >= 2

    def test_searched_profile(self):
        from gmmbool.params import profile_search
        profile = profile_search(16, 2)
        f, plan = build_generalized(profile, seed=2)
        assert assert_common(f, plan)[1] == profile.claimed_N

    def test_offsets_keep_profile(self):
        profile = GmmProfile(12, 1, ((6, 57), (5, 14)))
        rng = np.random.default_rng(0)
        offsets = {6: rng.integers(0, 2, 64), 5: rng.integers(0, 2, 128)}
        f, plan = build_generalized(profile, offsets=offsets)
        g, _ = build_generalized(profile)
        assert f != g
        assert measure(f)[:2] == measure(g)[:2]

    def test_rejects_bad_profiles(self):
        with pytest.raises(ProfileError):
            build_generalized(GmmProfile(12, 1, ((6, 64),)))  # beyond capacity
        with pytest.raises(ProfileError):
            build_generalized(GmmProfile(12, 1, ((6, 50), (5, 14))))  # Kraft sum short
