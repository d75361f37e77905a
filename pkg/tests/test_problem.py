import math

import numpy as np
import pytest

from src.core.errors import DomainError
from src.core.expr import eval_jet, parse
from src.core.grid import make_grid
from src.models.problem import (
    ExactSolution,
    Problem,
    apply_R_to_exact,
    builtin_example,
    builtin_examples,
    exact_from_f,
    has_boundary_deltas,
)


# ─────────────────────────────────────────────────────────────
# Built-in examples
# ─────────────────────────────────────────────────────────────

class TestBuiltinExamples:
    def test_four_examples(self, examples):
        assert [p.label for p in examples] == ["example 1", "example 2", "example 3", "example 4"]
        assert all(p.exact is not None for p in examples)

    def test_example_one(self, examples):
        p = examples[0]
        assert p.exact.a_minus1 == 0.0
        assert p.exact.a_0 == 0.0
        x = 0.3
        assert p.exact.g(x) == pytest.approx(-1 + (1 + math.pi ** 2) * math.cos(math.pi * (x + 1)))

    def test_example_four(self, examples):
        p = examples[3]
        assert p.exact.a_minus1 == pytest.approx(math.e - 2 * math.pi)
        assert p.exact.a_0 == pytest.approx(2 * math.pi)
        x = -0.4
        assert p.exact.g(x) == pytest.approx((1 + 4 * math.pi ** 2) * math.sin(2 * math.pi * (x + 1)))

    def test_lookup(self):
        assert builtin_example(3).label == "example 3"
        with pytest.raises(ValueError):
            builtin_example(5)
        with pytest.raises(ValueError):
            builtin_example(0)

    @pytest.mark.parametrize("index", range(4))
    def test_stored_solution_matches_derived(self, examples, index):
        p = examples[index]
        derived = exact_from_f(p)
        assert derived.a_minus1 == pytest.approx(p.exact.a_minus1, abs=1e-12)
        assert derived.a_0 == pytest.approx(p.exact.a_0, abs=1e-12)
        for x in np.linspace(-1, 1, 41):
            assert derived.g(float(x)) == pytest.approx(p.exact.g(float(x)), rel=1e-10, abs=1e-10)


# ─────────────────────────────────────────────────────────────
# Analytic solution
# ─────────────────────────────────────────────────────────────

class TestExactFromF:
    def test_example_three_deltas(self, examples):
        e = exact_from_f(examples[2])
        assert e.a_minus1 == pytest.approx(1.75)
        assert e.a_0 == pytest.approx(2.25)

    def test_example_four_deltas(self, examples):
        e = exact_from_f(examples[3])
        assert e.a_minus1 == pytest.approx(-3.565, abs=5e-4)
        assert e.a_0 == pytest.approx(6.283, abs=5e-4)

    def test_zero(self):
        e = exact_from_f(Problem.from_text("0"))
        assert (e.a_minus1, e.a_0) == (0.0, 0.0)
        assert e.g(0.2) == 0.0
        assert not e.has_deltas

    def test_domain_error_propagates(self):
        with pytest.raises(DomainError):
            exact_from_f(Problem.from_text("sqrt(x+1)"))

    def test_boundary_deltas(self, examples):
        assert [has_boundary_deltas(p) for p in examples] == [False, False, True, True]


class TestProblem:
    def test_from_text(self):
        p = Problem.from_text("exp(-x)")
        assert p.label == "exp(-x)"
        assert p.exact is None
        assert p.f_text == "exp(-x)"

    def test_from_text_with_oracle(self):
        p = Problem.from_text("exp(-(x+1))", label="pure delta", with_oracle=True)
        assert p.label == "pure delta"
        assert p.exact.a_minus1 == pytest.approx(1.0)
        assert p.exact.a_0 == pytest.approx(0.0, abs=1e-15)
        assert p.exact.g(0.5) == pytest.approx(0.0, abs=1e-15)

    def test_sample(self, examples):
        g = make_grid(8)
        pair = examples[3].sample(g)
        assert len(pair) == 8
        for x, v, d in zip(g.points, pair.values, pair.derivs):
            jet = eval_jet(examples[3].f, float(x))
            assert v == pytest.approx(jet.v)
            assert d == pytest.approx(jet.d1)

    @pytest.mark.parametrize("text", ["1e300*1e300*x", "x*0+1e300*1e300", "(10*x)^400"])
    def test_sample_rejects_non_finite(self, text):
        grid = make_grid(8)
        with pytest.raises(DomainError) as exc:
            Problem.from_text(text).sample(grid)
        assert exc.value.x in list(grid.points)

    def test_sample_reports_first_bad_point(self):
        grid = make_grid(8)
        with pytest.raises(DomainError) as exc:
            Problem.from_text("exp(1000*x)").sample(grid)
        assert exc.value.x == pytest.approx(0.75)

    def test_scaled(self, examples):
        p = examples[2].scaled(4.0)
        assert p.exact.a_minus1 == pytest.approx(7.0)
        assert p.exact.g(0.1) == pytest.approx(4.0 * examples[2].exact.g(0.1))
        assert eval_jet(p.f, 0.1).v == pytest.approx(4.0 * eval_jet(examples[2].f, 0.1).v)


# ─────────────────────────────────────────────────────────────
# Applying the operator to the analytic solution
# ─────────────────────────────────────────────────────────────

class TestApplyR:
    def test_pure_left_delta(self):
        e = ExactSolution(1.0, 0.0, lambda x: 0.0)
        assert apply_R_to_exact(e, 0.0) == pytest.approx(math.exp(-1.0), abs=1e-14)

    @pytest.mark.parametrize("x", [-1.0, -0.3, 0.0, 0.8, 1.0])
    def test_constant_continuous_part(self, x):
        e = ExactSolution(0.0, 0.0, lambda y: 1.0)
        want = 2 - math.exp(-1 - x) - math.exp(-1 + x)
        assert apply_R_to_exact(e, x) == pytest.approx(want, abs=1e-12)

    def test_example_one_at_point(self, examples):
        p = examples[0]
        f = eval_jet(p.f, 0.3).v
        assert apply_R_to_exact(p.exact, 0.3) == pytest.approx(f, abs=1e-10)

    @pytest.mark.parametrize("x", [-1.0, 0.0, 1.0])
    def test_oscillating_part_zero_at_coarse_samples(self, examples, x):
        p = examples[3]
        want = eval_jet(p.f, x).v
        if x == -1.0:
            assert want == pytest.approx(math.e)
        assert apply_R_to_exact(p.exact, x) == pytest.approx(want, abs=1e-9)

    @pytest.mark.parametrize("index", range(4))
    def test_round_trip(self, examples, index):
        p = examples[index]
        exact = exact_from_f(p)
        worst = max(
            abs(apply_R_to_exact(exact, float(x)) - eval_jet(p.f, float(x)).v)
            for x in np.linspace(-1, 1, 101)
        )
        assert worst <= 1e-8
