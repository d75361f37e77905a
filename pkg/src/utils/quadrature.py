"""
Adaptive Simpson quadrature.

Used as an independent numerical oracle: nothing here knows about the closed
forms in src.core.operator.

Usage:
    value = adaptive_simpson(math.exp, 0.0, 1.0, tol=1e-12)
    value = integrate_piecewise(f, [-1.0, x, 1.0])   # split at kinks
"""

from typing import Callable, Sequence

from src.core.errors import QuadratureError

DEFAULT_TOLERANCE = 1e-12
DEFAULT_MAX_DEPTH = 40
# bisection levels taken before the error estimate is trusted
DEFAULT_MIN_DEPTH = 5


class _Tally:
    def __init__(self):
        self.unresolved = 0.0
        self.failed = False


def _simpson(fa: float, fm: float, fb: float, a: float, b: float) -> float:
    return (b - a) * (fa + 4.0 * fm + fb) / 6.0


def _refine(f, a, b, fa, fm, fb, whole, tol, depth, floor, tally):
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    left = _simpson(fa, flm, fm, a, m)
    right = _simpson(fm, frm, fb, m, b)
    delta = left + right - whole
    converged = abs(delta) <= 15.0 * tol
    if converged and (floor <= 0 or depth <= 0):
        return left + right + delta / 15.0
    if depth <= 0:
        tally.failed = True
        tally.unresolved += abs(delta) / 15.0
        return left + right + delta / 15.0
    return (_refine(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1, floor - 1, tally)
            + _refine(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1, floor - 1, tally))


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = DEFAULT_TOLERANCE,
    max_depth: int = DEFAULT_MAX_DEPTH,
    min_depth: int = DEFAULT_MIN_DEPTH,
) -> float:
    """
    Integrate f over [a, b] to absolute tolerance tol.

    Every branch is bisected at least min_depth times before its error
    estimate is accepted.

    Raises QuadratureError carrying the achieved error estimate when some
    subinterval is still unresolved at max_depth.
    """
    if a == b:
        return 0.0
    fa, fb = f(a), f(b)
    fm = f(0.5 * (a + b))
    tally = _Tally()
    value = _refine(f, a, b, fa, fm, fb, _simpson(fa, fm, fb, a, b), tol, max_depth, min_depth, tally)
    if tally.failed:
        raise QuadratureError("Adaptive Simpson did not converge", tally.unresolved)
    return value


def integrate_piecewise(
    f: Callable[[float], float],
    breakpoints: Sequence[float],
    tol: float = DEFAULT_TOLERANCE,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> float:
    """Sum of adaptive_simpson over consecutive breakpoints (sorted, deduplicated)."""
    pts = sorted(set(float(p) for p in breakpoints))
    pieces = max(len(pts) - 1, 1)
    return sum(
        adaptive_simpson(f, lo, hi, tol / pieces, max_depth)
        for lo, hi in zip(pts[:-1], pts[1:])
    )
