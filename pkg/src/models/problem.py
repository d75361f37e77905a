"""
Problem instances of  int_{-1}^{1} e^{-|x-y|} h(y) dy = f(x)  and their
analytic solutions.

For f in C^2[-1, 1] the solution is
    h = a_{-1} delta(x+1) + a_0 delta(x-1) + g(x),
    a_{-1} = (f(-1) - f'(-1)) / 2,  a_0 = (f'(1) + f(1)) / 2,  g = (f - f'') / 2.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional

import numpy as np

from src.core.errors import DomainError
from src.core.expr import ExprNode, compile_jet, compile_value, eval_jet, parse, to_text
from src.core.grid import Grid, SampledPair
from src.utils.quadrature import DEFAULT_MAX_DEPTH, DEFAULT_TOLERANCE, integrate_piecewise

BOUNDARY_TOLERANCE = 1e-12


@dataclass(frozen=True)
class ExactSolution:
    a_minus1: float
    a_0: float
    g: Callable[[float], float] = field(repr=False, compare=False)
    g_text: Optional[str] = None

    @property
    def has_deltas(self) -> bool:
        return self.a_minus1 != 0.0 or self.a_0 != 0.0


@dataclass(frozen=True)
class Problem:
    f: ExprNode = field(repr=False)
    label: str
    exact: Optional[ExactSolution] = None

    @property
    def f_text(self) -> str:
        return to_text(self.f)

    @classmethod
    def from_text(cls, text: str, label: str = "", with_oracle: bool = False) -> "Problem":
        """Problem for a user expression; with_oracle attaches the analytic solution."""
        problem = cls(f=parse(text), label=label or text)
        if with_oracle:
            problem = cls(f=problem.f, label=problem.label, exact=exact_from_f(problem))
        return problem

    def sample(self, grid: Grid) -> SampledPair:
        """f and f' at the collocation points. Raises DomainError on a non-finite sample."""
        points = np.asarray(grid.points)
        jet = eval_jet(self.f, points)
        values, derivs = np.array(jet.v, dtype=float), np.array(jet.d1, dtype=float)
        bad = ~(np.isfinite(values) & np.isfinite(derivs))
        if bad.any():
            raise DomainError("non-finite f", float(points[np.argmax(bad)]))
        return SampledPair(values, derivs)

    def scaled(self, factor: float) -> "Problem":
        """factor * f with the exact solution scaled alike (the equation is linear)."""
        f = parse(f"{factor!r}*({self.f_text})")
        exact = None
        if self.exact is not None:
            e = self.exact
            g_text = f"{factor!r}*({e.g_text})" if e.g_text else None
            exact = ExactSolution(
                a_minus1=factor * e.a_minus1,
                a_0=factor * e.a_0,
                g=compile_value(parse(g_text)) if g_text else (lambda x, g=e.g: factor * g(x)),
                g_text=g_text,
            )
        return Problem(f=f, label=f"{factor!r}*{self.label}", exact=exact)


# ─────────────────────────────────────────────────────────────
# Analytic solution
# ─────────────────────────────────────────────────────────────

def exact_from_f(p: Problem) -> ExactSolution:
    """Delta weights and continuous part from f, f', f'' via autodiff."""
    left = eval_jet(p.f, -1.0)
    right = eval_jet(p.f, 1.0)
    jet_of = compile_jet(p.f)

    def g(x: float) -> float:
        v, _, d2 = jet_of(x)
        return 0.5 * (v - d2)

    return ExactSolution(
        a_minus1=0.5 * (left.v - left.d1),
        a_0=0.5 * (right.d1 + right.v),
        g=g,
    )


def has_boundary_deltas(p: Problem) -> bool:
    """False exactly when f(-1) = f'(-1) and f(1) = -f'(1), i.e. h = g."""
    left = eval_jet(p.f, -1.0)
    right = eval_jet(p.f, 1.0)
    return (abs(left.v - left.d1) > BOUNDARY_TOLERANCE
            or abs(right.v + right.d1) > BOUNDARY_TOLERANCE)


def apply_R_to_exact(
    e: ExactSolution,
    x: float,
    tol: float = DEFAULT_TOLERANCE,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> float:
    """
    (R h)(x) for h = a_{-1} delta(x+1) + a_0 delta(x-1) + g by adaptive
    quadrature of the continuous part. Oracle use only.
    """
    inside = e.g
    lower = integrate_piecewise(lambda y: math.exp(y - x) * inside(y), [-1.0, x], tol / 2.0, max_depth)
    upper = integrate_piecewise(lambda y: math.exp(x - y) * inside(y), [x, 1.0], tol / 2.0, max_depth)
    return (e.a_minus1 * math.exp(-(x + 1.0))
            + e.a_0 * math.exp(-(1.0 - x))
            + lower + upper)


# ─────────────────────────────────────────────────────────────
# Built-in benchmark problems
# ─────────────────────────────────────────────────────────────

_EXAMPLES = [
    {
        "label": "example 1",
        "f": "-2+2*cos(pi*(x+1))",
        "g": "-1+(1+pi^2)*cos(pi*(x+1))",
        "a_minus1": "0",
        "a_0": "0",
    },
    {
        "label": "example 2",
        "f": "-2*exp(x-1)+2/pi*sin(pi*(x+1))+2*cos(pi*(x+1))",
        # the sin coefficient follows from g = (f - f'')/2
        "g": "(pi+1/pi)*sin(pi*(x+1))+(1+pi^2)*cos(pi*(x+1))",
        "a_minus1": "0",
        "a_0": "0",
    },
    {
        "label": "example 3",
        "f": "cos(pi*(x+1)/2)+4*cos(2*pi*(x+1))-1.5*cos(7*pi*(x+1)/2)",
        "g": "0.5*(1+pi^2/4)*cos(pi*(x+1)/2)+(2+8*pi^2)*cos(2*pi*(x+1))"
             "-0.75*(1+12.25*pi^2)*cos(7*pi*(x+1)/2)",
        "a_minus1": "1.75",
        "a_0": "2.25",
    },
    {
        "label": "example 4",
        "f": "exp(-x)+2*sin(2*pi*(x+1))",
        "g": "(1+4*pi^2)*sin(2*pi*(x+1))",
        "a_minus1": "e-2*pi",
        "a_0": "2*pi",
    },
]


def _constant(text: str) -> float:
    return float(eval_jet(parse(text), 0.0).v)


def builtin_examples() -> List[Problem]:
    """The four benchmark problems with their exact solutions attached."""
    problems = []
    for entry in _EXAMPLES:
        exact = ExactSolution(
            a_minus1=_constant(entry["a_minus1"]),
            a_0=_constant(entry["a_0"]),
            g=compile_value(parse(entry["g"])),
            g_text=entry["g"],
        )
        problems.append(Problem(f=parse(entry["f"]), label=entry["label"], exact=exact))
    return problems


def builtin_example(example_id: int) -> Problem:
    """1-based lookup into builtin_examples()."""
    if not 1 <= example_id <= len(_EXAMPLES):
        raise ValueError(f"Example id must be in 1..{len(_EXAMPLES)}, got {example_id}")
    return builtin_examples()[example_id - 1]
