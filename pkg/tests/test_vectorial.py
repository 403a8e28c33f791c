import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gmmbool.construct import coverage
from gmmbool.core import TruthTable, nonlinearity, resiliency_order, walsh_spectrum
from gmmbool.params import Infeasible, claimed_nonlinearity, k_multi
from gmmbool.vectorial import (BlockMatrix, CodeSearchError, DisjointCodeSet, LinearCode,
                               VectorialFunction, build_c4, gf_mul, gf_powers, primitive_polynomial,
                               rho_map, search_disjoint_codes, vectorial_profile)


def span(basis):
    out = {0}
    for b in basis:
        out |= {w ^ b for w in out}
    return out


class TestField:
    @pytest.mark.parametrize("r,poly", [(1, 0b11), (2, 0b111), (3, 0b1011), (4, 0b10011)])
    def test_primitive(self, r, poly):
        assert primitive_polynomial(r) == poly
        powers = gf_powers(r)
        assert sorted(powers) == list(range(1, 1 << r))

    def test_mul_is_field_multiplication(self):
        r, poly = 3, primitive_polynomial(3)
        powers = gf_powers(r)
        log = {v: i for i, v in enumerate(powers)}
        for a, b in itertools.product(range(1, 8), repeat=2):
            assert gf_mul(a, b, poly) == powers[(log[a] + log[b]) % 7]


class TestCodes:
    def test_linear_code(self):
        c = LinearCode(3, (0b011, 0b101))
        assert c.dim == 2 and c.min_weight == 2
        assert set(c.codewords()) == {0, 3, 5, 6}
        with pytest.raises(ValueError):
            LinearCode(3, (0b011, 0b011))

    def test_length3_single_code(self):
        s = search_disjoint_codes(3, 2, 2)
        assert len(s) == 1 and s.exhaustive
        assert s.codes[0].nonzero_set() == {0b011, 0b101, 0b110}

    def test_length2_fails(self):
        with pytest.raises(CodeSearchError):
            search_disjoint_codes(2, 2, 2)

    def test_length6_planes(self):
        s = search_disjoint_codes(6, 2, 2)
        assert len(s) >= 2
        # weight >= 2 leaves 57 words; 19 planes would need a partition, the solver proves 18
        assert len(s) == 18 and s.exhaustive

    @pytest.mark.parametrize("length,r,w", [(4, 2, 2), (5, 2, 2), (6, 3, 3), (6, 3, 2), (5, 2, 3)])
    def test_disjoint_by_brute_force(self, length, r, w):
        s = search_disjoint_codes(length, r, w)
        seen = set()
        for c in s.codes:
            words = span(c.basis) - {0}
            assert len(words) == (1 << r) - 1
            assert min(bin(x).count("1") for x in words) >= w
            assert not seen & words
            seen |= words

    def test_small_maximum_by_exhaustion(self):
        # every 2-dim [4, 2, >=2] code, then the largest disjoint family
        words = [x for x in range(16) if bin(x).count("1") >= 2]
        planes = {frozenset(span((a, b)) - {0}) for a, b in itertools.combinations(words, 2)}
        planes = [p for p in planes if all(bin(x).count("1") >= 2 for x in p)]
        best = 0
        for size in range(1, len(planes) + 1):
            if any(all(not a & b for a, b in itertools.combinations(combo, 2))
                   for combo in itertools.combinations(planes, size)):
                best = size
            else:
                break
        assert len(search_disjoint_codes(4, 2, 2)) == best

    def test_seeded_search_is_deterministic(self):
        a = search_disjoint_codes(5, 2, 2, seed=4)
        b = search_disjoint_codes(5, 2, 2, seed=4)
        assert [c.basis for c in a.codes] == [c.basis for c in b.codes]

    def test_greedy_path(self):
        s = search_disjoint_codes(9, 3, 3, enumerate_limit=10, target_count=5, seed=0)
        assert 1 <= len(s) <= 5
        s.validate()

    def test_validate_catches_overlap(self):
        c = LinearCode(3, (0b011, 0b101))
        with pytest.raises(AssertionError):
            DisjointCodeSet([c, c], 2).validate()

    def test_argument_checks(self):
        with pytest.raises(ValueError):
            search_disjoint_codes(3, 4, 1)


class TestRho:
    code = LinearCode(4, (0b0011, 0b0101, 0b1001))

    def test_zero_and_image(self):
        assert rho_map(self.code, 0) == 0
        assert {rho_map(self.code, e) for e in range(8)} == set(self.code.codewords())

    @given(st.integers(0, 7), st.integers(0, 7))
    def test_linear(self, a, b):
        assert rho_map(self.code, a ^ b) == rho_map(self.code, a) ^ rho_map(self.code, b)

    def test_block_matrix_combinations(self):
        poly = primitive_polynomial(3)
        m = BlockMatrix.build(self.code, poly)
        powers = gf_powers(3, poly)
        words = set(self.code.codewords())
        assert len(m.rows) == 7
        for t, row in enumerate(m.rows):
            assert all(x in words for x in row)
            for c in range(1, 8):
                comb = 0
                c_elt = 0
                for j in range(3):
                    if c >> j & 1:
                        comb ^= row[j]
                        c_elt ^= powers[j]
                assert comb != 0
                assert comb == rho_map(self.code, gf_mul(powers[t], c_elt, poly))


class TestConstruction:
    def test_n12(self):
        F, plan = build_c4(12, 1, 2)

        def v(s):
            try:
                return len(search_disjoint_codes(s, 2, 2))
            except CodeSearchError:
                return 0

        k = k_multi(12, 1, 2, plan.u, v).k
        assert plan.k == k == 5
        expected = 2**11 - 2**5 - 2 ** (k - 1)
        for c in range(1, 4):
            s = walsh_spectrum(F.combination(c))
            assert resiliency_order(s) >= 1
            assert nonlinearity(s) == expected
        assert vectorial_profile(F) == (expected, 1)
        assert expected > 2**11 - 2**6

    def test_tables(self):
        _, plan = build_c4(12, 1, 2)
        assert plan.kappa == plan.u * 3
        assert plan.lam == ((1 << 6) - plan.kappa) << (6 - plan.k)
        for rows in (plan.prefix_rows, plan.suffix_rows):
            assert len(set(rows)) == len(rows)
        for p in plan.component_plans:
            assert (coverage(12, p.pieces) == 1).all()

    @pytest.mark.slow
    def test_n16(self):
        F, plan = build_c4(16, 1, 2)
        nl, m = vectorial_profile(F)
        assert m >= 1 and nl == claimed_nonlinearity(16, plan.k)
        assert nl > 2**15 - 2**8

    def test_code_search_failure(self):
        with pytest.raises(Infeasible) as err:
            build_c4(12, 3, 3)
        assert err.value.formula == "prefix code search"

    def test_preconditions(self):
        with pytest.raises(Infeasible):
            build_c4(12, 1, 4)
        with pytest.raises(Infeasible):
            build_c4(13, 1, 2)

    def test_deterministic(self):
        a, _ = build_c4(12, 1, 2, seed=9)
        b, _ = build_c4(12, 1, 2, seed=9)
        assert all(x == y for x, y in zip(a.components, b.components))


class TestProfile:
    def test_duplicate_component(self):
        f = TruthTable.from_function(4, lambda x: (x[0] & x[1]) ^ x[2])
        assert vectorial_profile(VectorialFunction(4, (f, f))) == (0, -1)

    def test_single_output(self):
        f = TruthTable(6, np.random.default_rng(2).integers(0, 2, 64).astype(np.uint8))
        s = walsh_spectrum(f)
        assert vectorial_profile(VectorialFunction(6, (f,))) == (nonlinearity(s), resiliency_order(s))

    def test_combination_order(self):
        a, b = TruthTable.variable(3, 1), TruthTable.variable(3, 2)
        F = VectorialFunction(3, (a, b))
        assert F.combination(0b10) == a and F.combination(0b01) == b
        assert F.combination(0b11) == a ^ b
