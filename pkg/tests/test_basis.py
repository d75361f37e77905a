import numpy as np
import pytest

from src.core.basis import SplineBasis, eval_basis, eval_continuous_many, eval_continuous_part
from src.core.errors import DimensionError
from src.core.grid import make_grid


def basis_for(n):
    return SplineBasis.for_grid(make_grid(n))


def naive_sum(b, coeffs, x):
    return sum(c * eval_basis(b, j + 1, x) for j, c in enumerate(coeffs))


class TestSplineBasis:
    def test_knots_n6(self):
        b = basis_for(6)
        np.testing.assert_allclose(b.knots, [-1, -1 / 3, 1 / 3, 1], atol=1e-15)
        assert b.m == 4
        assert b.half_width == pytest.approx(2 / 3)

    @pytest.mark.parametrize("n", [6, 32, 232])
    def test_knot_layout(self, n):
        b = basis_for(n)
        assert b.knots[0] == -1.0
        assert b.knots[-1] == 1.0
        np.testing.assert_allclose(np.diff(b.knots), 4.0 / n, rtol=1e-12)
        # knots sit on every other collocation point
        np.testing.assert_allclose(b.knots[:-1], make_grid(n).points[::2], atol=1e-15)

    @pytest.mark.parametrize("x, want", [(-1.0, 0), (-0.9, 0), (-0.5, 0), (0.0, 1), (0.5, 2), (1.0, 2)])
    def test_locate_prefers_left_interval(self, x, want):
        assert basis_for(6).locate(x) == want


class TestEvalBasis:
    def test_peak_and_edges(self):
        b = basis_for(10)
        for j in range(1, b.m + 1):
            assert eval_basis(b, j, b.knots[j - 1]) == 1.0
            if j < b.m:
                assert eval_basis(b, j, b.knots[j]) == pytest.approx(0.0, abs=1e-14)

    def test_midpoints_n6(self):
        b = basis_for(6)
        assert eval_basis(b, 2, -2 / 3) == pytest.approx(0.5)
        assert eval_basis(b, 2, -0.5) == pytest.approx(0.75)
        assert eval_basis(b, 1, -2 / 3) == pytest.approx(0.5)

    def test_half_hats(self):
        b = basis_for(6)
        assert eval_basis(b, 1, 0.5) == 0.0
        assert eval_basis(b, 4, 1.0) == 1.0

    @pytest.mark.parametrize("j", [0, 5])
    def test_index_out_of_range(self, j):
        with pytest.raises(IndexError):
            eval_basis(basis_for(6), j, 0.0)

    @pytest.mark.parametrize("n", [6, 10, 50])
    def test_partition_of_unity(self, n):
        b = basis_for(n)
        rng = np.random.default_rng(n)
        for x in rng.uniform(-1, 1, 1000):
            assert abs(sum(eval_basis(b, j, x) for j in range(1, b.m + 1)) - 1.0) <= 1e-14

    def test_local_support(self):
        b = basis_for(20)
        for x in np.linspace(-1, 1, 333):
            alive = [j for j in range(1, b.m + 1) if eval_basis(b, j, x) > 1e-12]
            assert len(alive) <= 2


class TestContinuousPart:
    def test_constant_coefficients(self):
        b = basis_for(12)
        coeffs = np.full(b.m, 2.5)
        for x in np.linspace(-1, 1, 37):
            assert eval_continuous_part(b, coeffs, x) == pytest.approx(2.5, abs=1e-14)

    def test_knot_returns_coefficient(self):
        b = basis_for(8)
        coeffs = np.array([3.0, -1.0, 4.0, 1.5, -9.0])
        for l, t in enumerate(b.knots):
            assert eval_continuous_part(b, coeffs, t) == coeffs[l]

    def test_matches_naive_sum(self):
        b = basis_for(16)
        rng = np.random.default_rng(3)
        coeffs = rng.normal(size=b.m)
        for x in rng.uniform(-1, 1, 50):
            assert eval_continuous_part(b, coeffs, x) == pytest.approx(naive_sum(b, coeffs, x), abs=1e-13)

    def test_reproduces_piecewise_linear(self):
        b = basis_for(10)
        knot_values = np.abs(b.knots) - 0.3 * b.knots
        xs = np.linspace(-1, 1, 101)
        np.testing.assert_allclose(eval_continuous_many(b, knot_values, xs),
                                   np.interp(xs, b.knots, knot_values), atol=1e-14)

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            eval_continuous_part(basis_for(6), [1.0, 2.0], 0.0)
