"""
Expressions in one variable x.

Parses text such as "-2+2*cos(pi*(x+1))" into an immutable tree and evaluates
it with second-order forward differentiation, so a single user string yields
f, f' and f''. See EXPRESSION_GRAMMAR.md for the accepted grammar.

Usage:
    node = parse("exp(-x)+2*sin(2*pi*(x+1))")
    jet = eval_jet(node, 0.25)       # Jet2(v, d1, d2)
    f = compile_value(node)          # fast float -> float, value only
    jet_of = compile_jet(node)       # fast float -> (f, f', f'')
"""

import math
import re
from dataclasses import dataclass
from typing import Callable, List, Tuple, Union

import numpy as np

from src.core.errors import DomainError, ExprSyntaxError, UnknownIdentifierError
from src.core.jet import Jet2, Number

FUNCTIONS = ("sin", "cos", "exp", "sqrt", "abs")
NAMED_CONSTANTS = {"pi": math.pi, "e": math.e}


# ─────────────────────────────────────────────────────────────
# Tree
# ─────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class NamedConst:
    name: str


@dataclass(frozen=True)
class Unary:
    op: str          # "neg" or one of FUNCTIONS
    arg: "ExprNode"


@dataclass(frozen=True)
class Binary:
    op: str          # one of + - * / ^
    left: "ExprNode"
    right: "ExprNode"


ExprNode = Union[Const, Var, NamedConst, Unary, Binary]


def contains_x(node: ExprNode) -> bool:
    if isinstance(node, Var):
        return True
    if isinstance(node, Unary):
        return contains_x(node.arg)
    if isinstance(node, Binary):
        return contains_x(node.left) or contains_x(node.right)
    return False


# ─────────────────────────────────────────────────────────────
# Tokenizer
# ─────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class _Token:
    kind: str        # NUMBER, NAME, OP, EOF
    text: str
    offset: int      # byte offset into the source


_NUMBER = re.compile(r"(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?")
_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_OPERATORS = "+-*/^()"


def _tokenize(text: str) -> List[_Token]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        offset = len(text[:i].encode("utf-8"))
        if ch.isspace():
            i += 1
            continue
        m = _NUMBER.match(text, i)
        if m:
            tokens.append(_Token("NUMBER", m.group(0), offset))
            i = m.end()
            continue
        m = _NAME.match(text, i)
        if m:
            tokens.append(_Token("NAME", m.group(0), offset))
            i = m.end()
            continue
        if ch in _OPERATORS:
            tokens.append(_Token("OP", ch, offset))
            i += 1
            continue
        raise ExprSyntaxError(f"Unexpected character '{ch}'", offset)
    tokens.append(_Token("EOF", "", len(text.encode("utf-8"))))
    return tokens


# ─────────────────────────────────────────────────────────────
# Parser
# ─────────────────────────────────────────────────────────────

class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.pos]

    def _advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def _accept(self, op: str) -> bool:
        if self.current.kind == "OP" and self.current.text == op:
            self.pos += 1
            return True
        return False

    def _expect(self, op: str):
        if not self._accept(op):
            tok = self.current
            found = "end of input" if tok.kind == "EOF" else f"'{tok.text}'"
            raise ExprSyntaxError(f"Expected '{op}' but found {found}", tok.offset)

    def parse(self) -> ExprNode:
        node = self._expr()
        if self.current.kind != "EOF":
            raise ExprSyntaxError(f"Unexpected '{self.current.text}'", self.current.offset)
        return node

    def _expr(self) -> ExprNode:
        node = self._term()
        while self.current.kind == "OP" and self.current.text in "+-":
            op = self._advance().text
            node = Binary(op, node, self._term())
        return node

    def _term(self) -> ExprNode:
        node = self._unary()
        while self.current.kind == "OP" and self.current.text in "*/":
            op = self._advance().text
            node = Binary(op, node, self._unary())
        return node

    def _unary(self) -> ExprNode:
        if self._accept("-"):
            return Unary("neg", self._unary())
        return self._power()

    def _power(self) -> ExprNode:
        base = self._atom()
        if self._accept("^"):
            # right-associative, exponent may carry a unary minus
            return Binary("^", base, self._unary())
        return base

    def _atom(self) -> ExprNode:
        tok = self.current
        if tok.kind == "NUMBER":
            self._advance()
            value = float(tok.text)
            if not math.isfinite(value):
                raise ExprSyntaxError(f"Number out of range: {tok.text}", tok.offset)
            return Const(value)
        if tok.kind == "NAME":
            self._advance()
            if tok.text == "x":
                return Var()
            if tok.text in NAMED_CONSTANTS:
                return NamedConst(tok.text)
            if tok.text in FUNCTIONS:
                self._expect("(")
                arg = self._expr()
                self._expect(")")
                return Unary(tok.text, arg)
            raise UnknownIdentifierError(tok.text, tok.offset)
        if self._accept("("):
            node = self._expr()
            self._expect(")")
            return node
        found = "end of input" if tok.kind == "EOF" else f"'{tok.text}'"
        raise ExprSyntaxError(f"Expected an operand but found {found}", tok.offset)


def parse(text: str) -> ExprNode:
    """Parse an expression of x. Raises ExprSyntaxError / UnknownIdentifierError."""
    if not text or not text.strip():
        raise ExprSyntaxError("Empty expression", 0)
    return _Parser(text).parse()


# ─────────────────────────────────────────────────────────────
# Printer
# ─────────────────────────────────────────────────────────────

_BINARY_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}
_NEG_PREC = 3
_ATOM_PREC = 5


def _prec(node: ExprNode) -> int:
    if isinstance(node, Binary):
        return _BINARY_PREC[node.op]
    if isinstance(node, Unary) and node.op == "neg":
        return _NEG_PREC
    if isinstance(node, Const) and node.value < 0:
        return _NEG_PREC
    return _ATOM_PREC


def _fmt(node: ExprNode, min_prec: int) -> str:
    if isinstance(node, Const):
        text = repr(float(node.value))
    elif isinstance(node, Var):
        text = "x"
    elif isinstance(node, NamedConst):
        text = node.name
    elif isinstance(node, Unary):
        if node.op == "neg":
            text = "-" + _fmt(node.arg, _NEG_PREC)
        else:
            text = f"{node.op}({_fmt(node.arg, 0)})"
    else:
        p = _BINARY_PREC[node.op]
        if node.op == "^":
            text = f"{_fmt(node.left, _ATOM_PREC)}^{_fmt(node.right, _NEG_PREC)}"
        else:
            text = f"{_fmt(node.left, p)}{node.op}{_fmt(node.right, p + 1)}"
    if _prec(node) < min_prec:
        return f"({text})"
    return text


def to_text(node: ExprNode) -> str:
    """Render a tree back to text; parse(to_text(parse(s))) == parse(s)."""
    return _fmt(node, 0)


# ─────────────────────────────────────────────────────────────
# Evaluation
# ─────────────────────────────────────────────────────────────

def constant_value(node: ExprNode) -> float:
    """Value of an x-free subtree."""
    return float(eval_jet(node, 0.0).v)


def _jet(node: ExprNode, x: Number) -> Jet2:
    if isinstance(node, Const):
        return Jet2.constant(node.value)
    if isinstance(node, Var):
        return Jet2.variable(x)
    if isinstance(node, NamedConst):
        return Jet2.constant(NAMED_CONSTANTS[node.name])
    if isinstance(node, Unary):
        arg = _jet(node.arg, x)
        if node.op == "neg":
            return -arg
        return getattr(arg, node.op)()
    left = _jet(node.left, x)
    if node.op == "^":
        if contains_x(node.right):
            return left.pow(_jet(node.right, x))
        return left.pow_const(constant_value(node.right))
    right = _jet(node.right, x)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    return left / right


def eval_jet(node: ExprNode, x: Number) -> Jet2:
    """
    Evaluate (f(x), f'(x), f''(x)).

    x may be a float or a numpy array; the variable is seeded as (x, 1, 0).
    Raises DomainError when any subexpression leaves its domain.
    """
    try:
        jet = _jet(node, x)
    except DomainError as e:
        if e.x is None and np.ndim(x) == 0:
            raise DomainError(e.operation, float(x)) from None
        raise
    if isinstance(x, np.ndarray):
        shape = np.shape(x)
        return Jet2(*(np.broadcast_to(np.asarray(part, dtype=float), shape) for part in jet.as_tuple()))
    return jet


# ─────────────────────────────────────────────────────────────
# Compiled evaluators
# ─────────────────────────────────────────────────────────────

_VALUE_FUNCTIONS = {"sin": math.sin, "cos": math.cos, "exp": math.exp, "sqrt": math.sqrt, "abs": abs}

_BINARY_VALUE = {
    "+": lambda a, b: a + b,
    "-": lambda a, b: a - b,
    "*": lambda a, b: a * b,
    "/": lambda a, b: a / b,
    "^": math.pow,
}


def _value_closure(node: ExprNode) -> Callable[[float], float]:
    if isinstance(node, Var):
        return lambda x: x
    if isinstance(node, (Const, NamedConst)):
        c = constant_value(node) if isinstance(node, NamedConst) else float(node.value)
        return lambda x: c
    if isinstance(node, Unary):
        arg = _value_closure(node.arg)
        if node.op == "neg":
            return lambda x: -arg(x)
        fn = _VALUE_FUNCTIONS[node.op]
        return lambda x: fn(arg(x))
    left, right = _value_closure(node.left), _value_closure(node.right)
    op = _BINARY_VALUE[node.op]
    return lambda x: op(left(x), right(x))


def compile_value(node: ExprNode) -> Callable[[float], float]:
    """
    Value-only evaluator for hot loops (quadrature).

    The tree is walked once into nested closures over the math module.
    """
    fn = _value_closure(node)

    def evaluate(x: float) -> float:
        try:
            return fn(float(x))
        except (ValueError, ZeroDivisionError, OverflowError):
            raise DomainError("evaluation", float(x)) from None

    return evaluate


JetTuple = Tuple[float, float, float]


def _sin_jet(v, a, b):
    s, c = math.sin(v), math.cos(v)
    return s, c * a, -s * a * a + c * b


def _cos_jet(v, a, b):
    s, c = math.sin(v), math.cos(v)
    return c, -s * a, -c * a * a - s * b


def _exp_jet(v, a, b):
    e = math.exp(v)
    return e, e * a, e * (a * a + b)


def _abs_jet(v, a, b):
    if v == 0.0:
        raise DomainError("abs differentiation")
    sign = 1.0 if v > 0 else -1.0
    return abs(v), sign * a, sign * b


def _sqrt_jet(v, a, b):
    r = math.sqrt(v)
    g1 = 0.5 / r
    g2 = -0.25 / (r * v)
    return r, g1 * a, g2 * a * a + g1 * b


_JET_FUNCTIONS = {"sin": _sin_jet, "cos": _cos_jet, "exp": _exp_jet, "sqrt": _sqrt_jet, "abs": _abs_jet}


def _add_jet(u: JetTuple, w: JetTuple) -> JetTuple:
    return u[0] + w[0], u[1] + w[1], u[2] + w[2]


def _sub_jet(u: JetTuple, w: JetTuple) -> JetTuple:
    return u[0] - w[0], u[1] - w[1], u[2] - w[2]


def _mul_jet(u: JetTuple, w: JetTuple) -> JetTuple:
    lv, la, lb = u
    rv, ra, rb = w
    return lv * rv, la * rv + lv * ra, lb * rv + 2.0 * la * ra + lv * rb


def _div_jet(u: JetTuple, w: JetTuple) -> JetTuple:
    rv, ra, rb = w
    q = 1.0 / rv
    # reciprocal jet, then product
    return _mul_jet(u, (q, -q * q * ra, 2.0 * q * q * q * ra * ra - q * q * rb))


def _pow_var_jet(u: JetTuple, w: JetTuple) -> JetTuple:
    return tuple(map(float, Jet2(*u).pow(Jet2(*w)).as_tuple()))


_BINARY_JET = {"+": _add_jet, "-": _sub_jet, "*": _mul_jet, "/": _div_jet, "^": _pow_var_jet}


def _jet_closure(node: ExprNode) -> Callable[[float], JetTuple]:
    if isinstance(node, Var):
        return lambda x: (x, 1.0, 0.0)
    if isinstance(node, (Const, NamedConst)):
        const = (constant_value(node), 0.0, 0.0)
        return lambda x: const
    if isinstance(node, Unary):
        arg = _jet_closure(node.arg)
        if node.op == "neg":
            def neg(x):
                v, a, b = arg(x)
                return -v, -a, -b
            return neg
        fn = _JET_FUNCTIONS[node.op]
        return lambda x: fn(*arg(x))
    left = _jet_closure(node.left)
    if node.op == "^" and not contains_x(node.right):
        c = constant_value(node.right)
        return lambda x: tuple(map(float, Jet2(*left(x)).pow_const(c).as_tuple()))
    right = _jet_closure(node.right)
    op = _BINARY_JET[node.op]
    return lambda x: op(left(x), right(x))


def compile_jet(node: ExprNode) -> Callable[[float], JetTuple]:
    """
    Float-only equivalent of eval_jet for hot loops: x -> (f, f', f'').

    Constant exponents are folded when the closures are built.
    """
    fn = _jet_closure(node)

    def evaluate(x: float) -> JetTuple:
        x = float(x)
        try:
            return tuple(float(part) for part in fn(x))
        except DomainError as e:
            raise DomainError(e.operation, x) from None
        except (ValueError, ZeroDivisionError, OverflowError):
            raise DomainError("evaluation", x) from None

    return evaluate
