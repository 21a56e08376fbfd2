import math

import numpy as np
import pytest

from qgreedy.errors import InvalidExponentError, PreconditionError
from qgreedy.spaces import lp_gauge
from qgreedy.strongly_absolute import (
    PairFamily,
    concentration_set,
    counting_inequality_check,
    counting_parameters,
    khintchine_square_function,
    random_pair_family,
    strongly_absolute_check,
    strongly_absolute_function,
)


class TestAbsoluteFunction:
    def test_half_half(self):
        assert strongly_absolute_function(0.5, 0.5) == pytest.approx(2.0)

    def test_unit_eps(self):
        assert strongly_absolute_function(0.5, 1.0) == pytest.approx(1.0)

    def test_two_thirds(self):
        assert strongly_absolute_function(2 / 3, 1 / 8) == pytest.approx(64.0)

    def test_rejects_p_outside_unit_interval(self):
        for p in (1.0, 1.5, 0.0, -0.2):
            with pytest.raises(InvalidExponentError):
                strongly_absolute_function(p, 0.5)


class TestAbsoluteCheck:
    def test_flat_pair(self):
        res = strongly_absolute_check([1, 1], 0.5, 1.0)
        assert res.lhs == pytest.approx(2.0)
        assert res.rhs == pytest.approx(4.0)
        assert res.holds

    def test_single_coordinate(self):
        res = strongly_absolute_check([7.5, 0.0], 0.5, 1.0)
        assert res.lhs <= res.rhs + 1e-12
        assert res.holds

    def test_zero_vector(self):
        res = strongly_absolute_check([0.0, 0.0], 0.5, 2.0)
        assert res.lhs == 0.0 and res.rhs == 0.0 and res.holds

    def test_no_violations_over_grid(self):
        rng = np.random.default_rng(7)
        for _ in range(500):
            f = rng.standard_normal(12) * 10.0 ** rng.integers(-2, 3)
            for p in (0.3, 0.5, 0.7):
                for eps in (0.1, 1.0, 10.0):
                    assert strongly_absolute_check(f, p, eps).holds


class TestPairFamily:
    def test_unit_family(self):
        fam = PairFamily(np.eye(4), np.eye(4), 0.5)
        assert fam.size == 4
        assert fam.a == pytest.approx(1.0)
        assert fam.b == pytest.approx(1.0)

    def test_rejects_unnormalized(self):
        with pytest.raises(PreconditionError, match="pair 1"):
            PairFamily(np.eye(3), np.diag([1.0, 2.0, 1.0]), 0.5)

    def test_random_family_is_normalized_and_reproducible(self):
        fam = random_pair_family(8, 5, 0.5, seed=9)
        pairing = np.einsum("ij,ij->i", fam.duals, fam.vectors)
        assert np.allclose(pairing, 1.0, atol=1e-12)
        fam2 = random_pair_family(8, 5, 0.5, seed=9)
        assert np.array_equal(fam.vectors, fam2.vectors)


class TestConcentrationSet:
    def test_unit_family_small_delta(self):
        fam = PairFamily(np.eye(5)[:3], np.eye(5)[:3], 0.5)
        assert concentration_set(fam, 0.5).tolist() == [0, 1, 2]

    def test_unit_family_large_delta(self):
        fam = PairFamily(np.eye(5)[:3], np.eye(5)[:3], 0.5)
        assert concentration_set(fam, 1.5).size == 0

    def test_skewed_pair(self):
        vec = np.array([[0.8, 0.6]])
        dual = np.array([[1.25, 0.0]])
        fam = PairFamily(vec, dual, 0.5)
        assert concentration_set(fam, 0.9).tolist() == [0]

    def test_monotone_in_delta(self):
        fam = random_pair_family(10, 6, 0.5, seed=1)
        small = set(concentration_set(fam, 0.05).tolist())
        large = set(concentration_set(fam, 0.2).tolist())
        assert large <= small


class TestCountingParameters:
    def test_all_ones(self):
        eps, delta = counting_parameters(2.0, 1, 1, 1, 1, 0.5)
        assert eps == pytest.approx(0.5)
        assert delta == pytest.approx(0.25)

    def test_product_four(self):
        eps, delta = counting_parameters(2.0, 4, 1, 1, 1, 0.5)
        assert eps == pytest.approx(1 / 8)
        assert delta == pytest.approx(1 / 16)

    def test_degenerate_limit(self):
        eps1, delta1 = counting_parameters(1.01, 1, 1, 1, 1, 0.5)
        eps2, delta2 = counting_parameters(1.001, 1, 1, 1, 1, 0.5)
        assert eps2 < eps1 and delta2 < delta1

    def test_rejects_bad_c(self):
        with pytest.raises(PreconditionError):
            counting_parameters(1.0, 1, 1, 1, 1, 0.5)


class TestCountingInequality:
    def test_unit_family_bound_is_c_times_m(self):
        fam = PairFamily(np.eye(6)[:4], np.eye(6)[:4], 0.5)
        check = counting_inequality_check(fam, 2.0)
        assert check.size == 4
        assert check.bound == pytest.approx(8.0)
        assert check.holds
        assert check.omega == (0, 1, 2, 3)

    def test_random_families_never_violate(self):
        for i in range(200):
            size = (i % 6) + 1
            fam = random_pair_family(6, size, 0.5, seed=100 + i)
            assert counting_inequality_check(fam, 2.0).holds

    def test_various_c_values(self):
        fam = random_pair_family(8, 5, 0.5, seed=42)
        for c in (1.2, 2.0, 10.0):
            assert counting_inequality_check(fam, c).holds


class TestKhintchine:
    def test_disjoint_unit_vectors(self):
        cmp = khintchine_square_function(np.eye(3), 0.5, mode="exact")
        assert cmp.lhs == pytest.approx(3.0, abs=1e-12)
        assert cmp.rhs == pytest.approx(3.0, abs=1e-12)
        assert cmp.ratio == pytest.approx(1.0, abs=1e-12)

    def test_two_vector_hand_oracle(self):
        # all four sign choices of (e1+e2) +/- (e1-e2) collapse to 2 e_j, so
        # every pattern has gauge 2 and gauge^(1/2) = sqrt 2
        x = np.array([[1.0, 1.0], [1.0, -1.0]])
        patterns = [(1, 1), (1, -1), (-1, 1), (-1, -1)]
        oracle = np.mean([lp_gauge(a * x[0] + b * x[1], 0.5) ** 0.5 for a, b in patterns])
        cmp = khintchine_square_function(x, 0.5, mode="exact")
        assert cmp.lhs == pytest.approx(oracle, abs=1e-12)
        assert cmp.lhs == pytest.approx(math.sqrt(2), abs=1e-12)
        assert cmp.rhs == pytest.approx(2 * 2**0.25, abs=1e-12)
        assert cmp.ratio == pytest.approx(0.5946035575013605, abs=1e-12)

    def test_sign_flip_and_permutation_invariance(self):
        rng = np.random.default_rng(3)
        x = rng.standard_normal((5, 7))
        base = khintchine_square_function(x, 0.5, mode="exact").lhs
        flipped = x.copy()
        flipped[2] *= -1.0
        assert khintchine_square_function(flipped, 0.5, mode="exact").lhs == pytest.approx(
            base, rel=1e-12)
        assert khintchine_square_function(x[::-1], 0.5, mode="exact").lhs == pytest.approx(
            base, rel=1e-12)

    def test_mc_agrees_with_exact(self):
        rng = np.random.default_rng(4)
        x = rng.standard_normal((10, 12))
        exact = khintchine_square_function(x, 0.5, mode="exact")
        mc = khintchine_square_function(x, 0.5, mode="mc", samples=20000, seed=5)
        assert abs(mc.lhs - exact.lhs) <= 3 * mc.stderr

    def test_ratio_bracket_regression_guard(self):
        # fixed bracket for random stacks at p = 1/2; a regression guard, not
        # a sharp constant
        rng = np.random.default_rng(6)
        for _ in range(30):
            k = int(rng.integers(2, 13))
            x = rng.standard_normal((k, 12))
            cmp = khintchine_square_function(x, 0.5, mode="exact")
            assert 0.3 <= cmp.ratio <= 3.5

    def test_exact_cap(self):
        with pytest.raises(PreconditionError):
            khintchine_square_function(np.eye(21), 0.5, mode="exact")

    def test_mc_needs_samples(self):
        with pytest.raises(PreconditionError):
            khintchine_square_function(np.eye(3), 0.5, mode="mc", samples=1)
