"""
Second-order truncated Taylor arithmetic.

A Jet2 carries (v, d1, d2) = (f, f', f'') of some function at a point. The
variable itself is seeded as Jet2(x, 1, 0); every operation below propagates
the first two derivatives exactly (up to rounding). Fields may be floats or
numpy arrays of equal shape, so one pass can differentiate at many points.
"""

from dataclasses import dataclass
from typing import Union

import numpy as np

from src.core.errors import DomainError

Number = Union[float, np.ndarray]


@dataclass(frozen=True)
class Jet2:
    v: Number
    d1: Number = 0.0
    d2: Number = 0.0

    @classmethod
    def variable(cls, x: Number) -> "Jet2":
        return cls(x, np.ones_like(x, dtype=float) if isinstance(x, np.ndarray) else 1.0, 0.0 * x)

    @classmethod
    def constant(cls, c: float) -> "Jet2":
        return cls(c, 0.0, 0.0)

    # ─────────────────────────────────────────────────────────────
    # Arithmetic
    # ─────────────────────────────────────────────────────────────

    def __neg__(self) -> "Jet2":
        return Jet2(-self.v, -self.d1, -self.d2)

    def __add__(self, other: "Jet2") -> "Jet2":
        return Jet2(self.v + other.v, self.d1 + other.d1, self.d2 + other.d2)

    def __sub__(self, other: "Jet2") -> "Jet2":
        return Jet2(self.v - other.v, self.d1 - other.d1, self.d2 - other.d2)

    def __mul__(self, other: "Jet2") -> "Jet2":
        return Jet2(
            self.v * other.v,
            self.d1 * other.v + self.v * other.d1,
            self.d2 * other.v + 2.0 * self.d1 * other.d1 + self.v * other.d2,
        )

    def __truediv__(self, other: "Jet2") -> "Jet2":
        if np.any(other.v == 0):
            raise DomainError("division by zero")
        return self * other.reciprocal()

    def reciprocal(self) -> "Jet2":
        r = 1.0 / self.v
        return self._chain(r, -r * r, 2.0 * r * r * r)

    # ─────────────────────────────────────────────────────────────
    # Elementary functions
    # ─────────────────────────────────────────────────────────────

    def _chain(self, g0: Number, g1: Number, g2: Number) -> "Jet2":
        """Compose an outer function with value g0, g', g'' at self.v."""
        return Jet2(g0, g1 * self.d1, g2 * self.d1 * self.d1 + g1 * self.d2)

    def sin(self) -> "Jet2":
        s, c = np.sin(self.v), np.cos(self.v)
        return self._chain(s, c, -s)

    def cos(self) -> "Jet2":
        s, c = np.sin(self.v), np.cos(self.v)
        return self._chain(c, -s, -c)

    def exp(self) -> "Jet2":
        e = np.exp(self.v)
        return self._chain(e, e, e)

    def log(self) -> "Jet2":
        if np.any(self.v <= 0):
            raise DomainError("log")
        r = 1.0 / self.v
        return self._chain(np.log(self.v), r, -r * r)

    def sqrt(self) -> "Jet2":
        if np.any(self.v < 0):
            raise DomainError("sqrt")
        if np.any(self.v == 0):
            raise DomainError("sqrt differentiation")
        r = np.sqrt(self.v)
        return self._chain(r, 0.5 / r, -0.25 / (r * self.v))

    def abs(self) -> "Jet2":
        if np.any(self.v == 0):
            raise DomainError("abs differentiation")
        sign = np.sign(self.v)
        return self._chain(np.abs(self.v), sign, 0.0 * self.v)

    def pow_const(self, c: float) -> "Jet2":
        """self ** c for a constant exponent c."""
        is_int = float(c).is_integer()
        if not is_int and np.any(self.v < 0):
            raise DomainError("non-integer power of a negative base")
        if np.any(self.v == 0) and (c < 0 or (not is_int and c < 2)):
            raise DomainError("power at zero")
        if c == 0:
            return Jet2(np.ones_like(self.v) if isinstance(self.v, np.ndarray) else 1.0,
                        0.0 * self.d1, 0.0 * self.d2)
        g0 = self.v ** c
        g1 = c * self.v ** (c - 1) if c != 1 else 1.0 + 0.0 * self.v
        if c == 1:
            g2 = 0.0 * self.v
        elif c == 2:
            g2 = 2.0 + 0.0 * self.v
        else:
            g2 = c * (c - 1) * self.v ** (c - 2)
        return self._chain(g0, g1, g2)

    def pow(self, other: "Jet2") -> "Jet2":
        """self ** other for a non-constant exponent; needs a positive base."""
        if np.any(self.v <= 0):
            raise DomainError("power with variable exponent needs a positive base")
        return (other * self.log()).exp()

    def as_tuple(self):
        return (self.v, self.d1, self.d2)

