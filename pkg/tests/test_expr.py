import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.core.errors import DomainError, ExprSyntaxError, UnknownIdentifierError
from src.core.expr import (
    Binary,
    Const,
    NamedConst,
    Unary,
    Var,
    compile_jet,
    compile_value,
    eval_jet,
    parse,
    to_text,
)
from src.models.problem import _EXAMPLES

EXAMPLE_FS = [e["f"] for e in _EXAMPLES]


# ─────────────────────────────────────────────────────────────
# Parsing
# ─────────────────────────────────────────────────────────────

class TestParse:
    def test_variable(self):
        assert parse("x") == Var()

    def test_example_one(self):
        node = parse("-2+2*cos(pi*(x+1))")
        assert node == Binary(
            "+",
            Unary("neg", Const(2.0)),
            Binary("*", Const(2.0),
                   Unary("cos", Binary("*", NamedConst("pi"), Binary("+", Var(), Const(1.0))))),
        )

    def test_unary_minus_binds_looser_than_power(self):
        assert parse("-x^2") == Unary("neg", Binary("^", Var(), Const(2.0)))

    def test_negative_exponent(self):
        assert parse("2^-1") == Binary("^", Const(2.0), Unary("neg", Const(1.0)))

    def test_power_is_right_associative(self):
        assert parse("2^3^2") == Binary("^", Const(2.0), Binary("^", Const(3.0), Const(2.0)))

    def test_left_associative_minus(self):
        assert parse("x-1-2") == Binary("-", Binary("-", Var(), Const(1.0)), Const(2.0))

    def test_scientific_literal(self):
        assert parse("1.5e-3") == Const(1.5e-3)

    def test_whitespace(self):
        assert parse(" x * 2 ") == parse("x*2")

    def test_unbalanced_parenthesis(self):
        with pytest.raises(ExprSyntaxError) as exc:
            parse("sin(")
        assert exc.value.offset == 4

    def test_empty(self):
        with pytest.raises(ExprSyntaxError) as exc:
            parse("   ")
        assert exc.value.offset == 0

    def test_unknown_identifier(self):
        with pytest.raises(UnknownIdentifierError) as exc:
            parse("2*y")
        assert exc.value.name == "y"
        assert exc.value.offset == 2

    def test_log_is_not_a_function(self):
        with pytest.raises(UnknownIdentifierError):
            parse("log(x)")

    def test_no_implicit_multiplication(self):
        with pytest.raises(ExprSyntaxError):
            parse("2x")

    def test_bad_character(self):
        with pytest.raises(ExprSyntaxError) as exc:
            parse("x % 2")
        assert exc.value.offset == 2

    def test_trailing_operator(self):
        with pytest.raises(ExprSyntaxError) as exc:
            parse("x+")
        assert exc.value.offset == 2

    @pytest.mark.parametrize("text, offset", [("1e999", 0), ("2*1e999", 2), ("x+1.5E400*x", 2)])
    def test_overflowing_literal_is_rejected(self, text, offset):
        with pytest.raises(ExprSyntaxError) as exc:
            parse(text)
        assert exc.value.offset == offset

    def test_largest_finite_literal_is_kept(self):
        assert parse("1e308") == Const(1e308)


# ─────────────────────────────────────────────────────────────
# Printing
# ─────────────────────────────────────────────────────────────

class TestPrint:
    @pytest.mark.parametrize("text", EXAMPLE_FS + [e["g"] for e in _EXAMPLES])
    def test_round_trip_examples(self, text):
        node = parse(text)
        assert parse(to_text(node)) == node

    @pytest.mark.parametrize("text", [
        "-x^2", "(-x)^2", "2^-1", "2^3^2", "(2^3)^2", "x-(1-x)", "-(x*2)",
        "x*-2", "x--x", "x/(2*x)", "abs(x)^0.5",
    ])
    def test_round_trip_precedence(self, text):
        node = parse(text)
        assert parse(to_text(node)) == node

    def test_minimal_parentheses(self):
        assert to_text(parse("((x))+(1)")) == "x+1.0"


@st.composite
def expressions(draw, depth=3):
    if depth == 0 or draw(st.booleans()):
        return draw(st.sampled_from(["x", "pi", "e", "2", "0.5", "3"]))
    kind = draw(st.sampled_from(["bin", "neg", "fn"]))
    if kind == "neg":
        return f"-{draw(expressions(depth=depth - 1))}"
    if kind == "fn":
        fn = draw(st.sampled_from(["sin", "cos", "exp", "sqrt", "abs"]))
        return f"{fn}({draw(expressions(depth=depth - 1))})"
    op = draw(st.sampled_from(["+", "-", "*", "/", "^"]))
    left = draw(expressions(depth=depth - 1))
    right = draw(expressions(depth=depth - 1))
    return f"({left}){op}({right})"


@settings(max_examples=200)
@given(expressions())
def test_parse_print_parse_is_stable(text):
    node = parse(text)
    assert parse(to_text(node)) == node


# ─────────────────────────────────────────────────────────────
# Evaluation
# ─────────────────────────────────────────────────────────────

def _richardson(fn, x):
    """Central differences with h = 1e-4 and 1e-5, Richardson combined."""
    def d1(h):
        return (fn(x + h) - fn(x - h)) / (2 * h)

    def d2(h):
        return (fn(x + h) - 2 * fn(x) + fn(x - h)) / (h * h)

    h1, h2 = 1e-4, 1e-5
    r = (h1 / h2) ** 2
    return (r * d1(h2) - d1(h1)) / (r - 1), d2(h1)


class TestEvalJet:
    def test_square(self):
        assert eval_jet(parse("x^2"), 3.0).as_tuple() == pytest.approx((9.0, 6.0, 2.0))

    def test_exp_minus_x(self):
        assert eval_jet(parse("exp(-x)"), 0.0).as_tuple() == pytest.approx((1.0, -1.0, 1.0))

    def test_example_one_at_left_end(self):
        v, d1, d2 = eval_jet(parse("-2+2*cos(pi*(x+1))"), -1.0).as_tuple()
        assert v == pytest.approx(0.0, abs=1e-15)
        assert d1 == pytest.approx(0.0, abs=1e-15)
        assert d2 == pytest.approx(-2 * math.pi ** 2)

    @pytest.mark.parametrize("text", EXAMPLE_FS)
    def test_derivatives_match_finite_differences(self, text):
        node = parse(text)
        f = compile_value(node)
        rng = np.random.default_rng(7)
        for x in rng.uniform(-0.99, 0.99, 50):
            _, d1, d2 = eval_jet(node, float(x)).as_tuple()
            fd1, fd2 = _richardson(f, float(x))
            assert fd1 == pytest.approx(d1, rel=1e-6, abs=1e-6)
            assert fd2 == pytest.approx(d2, rel=1e-4, abs=1e-4)

    def test_array_evaluation_matches_scalar(self):
        node = parse(EXAMPLE_FS[3])
        xs = np.linspace(-1, 1, 7)
        jet = eval_jet(node, xs)
        for i, x in enumerate(xs):
            scalar = eval_jet(node, float(x))
            assert jet.v[i] == pytest.approx(scalar.v)
            assert jet.d2[i] == pytest.approx(scalar.d2)

    def test_array_of_constant_broadcasts(self):
        jet = eval_jet(parse("3"), np.zeros(4))
        assert jet.v.shape == (4,)
        np.testing.assert_array_equal(jet.d1, 0.0)

    @pytest.mark.parametrize("text, x", [
        ("1/x", 0.0),
        ("sqrt(x)", -0.5),
        ("sqrt(x)", 0.0),
        ("abs(x)", 0.0),
        ("x^0.5", -1.0),
        ("2^x*x^x", -0.5),
    ])
    def test_domain_errors_carry_x(self, text, x):
        with pytest.raises(DomainError) as exc:
            eval_jet(parse(text), x)
        assert exc.value.x == x


class TestCompiled:
    @pytest.mark.parametrize("text", EXAMPLE_FS + ["x^3/(1+x^2)", "sqrt(2+x)*abs(x-3)", "(2+x)^x"])
    def test_compile_jet_matches_eval_jet(self, text):
        node = parse(text)
        fast = compile_jet(node)
        for x in np.linspace(-0.95, 0.95, 11):
            want = eval_jet(node, float(x)).as_tuple()
            assert fast(float(x)) == pytest.approx(want, rel=1e-12, abs=1e-12)

    @pytest.mark.parametrize("text", EXAMPLE_FS)
    def test_compile_value_matches_eval_jet(self, text):
        node = parse(text)
        f = compile_value(node)
        for x in np.linspace(-1, 1, 9):
            assert f(float(x)) == pytest.approx(eval_jet(node, float(x)).v, rel=1e-13, abs=1e-13)

    @pytest.mark.parametrize("text, x", [("1/x", 0.0), ("sqrt(x)", -1.0), ("abs(x)", 0.0)])
    def test_compile_jet_domain_errors(self, text, x):
        with pytest.raises(DomainError) as exc:
            compile_jet(parse(text))(x)
        assert exc.value.x == x

    def test_compile_value_domain_error(self):
        with pytest.raises(DomainError):
            compile_value(parse("sqrt(x)"))(-1.0)

    @pytest.mark.parametrize("text, x", [("x^0.5", -1.0), ("(x-1)^-2", 1.0), ("exp(exp(x))", 10.0)])
    def test_compile_value_maps_math_errors(self, text, x):
        with pytest.raises(DomainError) as exc:
            compile_value(parse(text))(x)
        assert exc.value.x == x

    def test_compile_jet_folds_constant_exponent(self):
        fast = compile_jet(parse("x^(2+1)"))
        assert fast(2.0) == pytest.approx((8.0, 12.0, 12.0))
        with pytest.raises(DomainError) as exc:
            compile_jet(parse("x^(1/2)"))(-4.0)
        assert exc.value.x == -4.0


def _jet_or_none(fn):
    try:
        return tuple(float(part) for part in fn())
    except (DomainError, ArithmeticError):
        return None


@settings(max_examples=200)
@given(expressions())
def test_compile_jet_agrees_with_eval_jet(text):
    node = parse(text)
    slow = _jet_or_none(lambda: eval_jet(node, 0.3).as_tuple())
    fast = _jet_or_none(lambda: compile_jet(node)(0.3))
    if slow is None or fast is None:
        return
    if not all(math.isfinite(p) and abs(p) < 1e6 for p in slow + fast):
        return
    assert fast == pytest.approx(slow, rel=1e-9, abs=1e-6)
