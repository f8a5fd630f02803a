"""Second-order forward-mode dual numbers.

A ``Dual2`` carries value, first and second derivative with respect to a single
scalar seed. Components may be floats or numpy arrays, so a parsed profile
expression evaluates vectorised over sample grids.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _as_dual(x):
    if isinstance(x, Dual2):
        return x
    return Dual2(x, 0.0, 0.0)


@dataclass(frozen=True)
class Dual2:
    val: object
    d1: object = 0.0
    d2: object = 0.0

    @staticmethod
    def seed(x):
        """The independent variable: derivative 1, curvature 0."""
        return Dual2(x, np.ones_like(np.asarray(x, dtype=float)) if np.ndim(x) else 1.0, 0.0)

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        o = _as_dual(other)
        return Dual2(self.val + o.val, self.d1 + o.d1, self.d2 + o.d2)

    __radd__ = __add__

    def __sub__(self, other):
        o = _as_dual(other)
        return Dual2(self.val - o.val, self.d1 - o.d1, self.d2 - o.d2)

    def __rsub__(self, other):
        o = _as_dual(other)
        return Dual2(o.val - self.val, o.d1 - self.d1, o.d2 - self.d2)

    def __neg__(self):
        return Dual2(-self.val, -self.d1, -self.d2)

    def __mul__(self, other):
        o = _as_dual(other)
        return Dual2(
            self.val * o.val,
            self.d1 * o.val + self.val * o.d1,
            self.d2 * o.val + 2.0 * self.d1 * o.d1 + self.val * o.d2,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _as_dual(other)
        v = self.val / o.val
        d1 = (self.d1 - v * o.d1) / o.val
        d2 = (self.d2 - 2.0 * d1 * o.d1 - v * o.d2) / o.val
        return Dual2(v, d1, d2)

    def __rtruediv__(self, other):
        return _as_dual(other) / self

    def pow_const(self, p: float):
        """self**p for a constant real exponent."""
        v = self.val ** p
        dv = p * self.val ** (p - 1.0)
        ddv = p * (p - 1.0) * self.val ** (p - 2.0)
        return self._chain(v, dv, ddv)

    # -- chain rule helper ----------------------------------------------------

    def _chain(self, v, dv, ddv):
        """Lift f with f(u)=v, f'(u)=dv, f''(u)=ddv through u = self."""
        return Dual2(v, dv * self.d1, dv * self.d2 + ddv * self.d1 * self.d1)


def sin(x: Dual2) -> Dual2:
    s, c = np.sin(x.val), np.cos(x.val)
    return x._chain(s, c, -s)


def cos(x: Dual2) -> Dual2:
    s, c = np.sin(x.val), np.cos(x.val)
    return x._chain(c, -s, -c)


def tan(x: Dual2) -> Dual2:
    t = np.tan(x.val)
    sec2 = 1.0 + t * t
    return x._chain(t, sec2, 2.0 * t * sec2)


def sqrt(x: Dual2) -> Dual2:
    r = np.sqrt(x.val)
    return x._chain(r, 0.5 / r, -0.25 / (r * x.val))


def exp(x: Dual2) -> Dual2:
    e = np.exp(x.val)
    return x._chain(e, e, e)


def log(x: Dual2) -> Dual2:
    return x._chain(np.log(x.val), 1.0 / x.val, -1.0 / (x.val * x.val))


def atan(x: Dual2) -> Dual2:
    den = 1.0 + x.val * x.val
    return x._chain(np.arctan(x.val), 1.0 / den, -2.0 * x.val / (den * den))


def absval(x: Dual2) -> Dual2:
    s = np.sign(x.val)
    return x._chain(np.abs(x.val), s, 0.0 * s)


FUNCTIONS = {
    "sin": sin,
    "cos": cos,
    "tan": tan,
    "sqrt": sqrt,
    "exp": exp,
    "log": log,
    "atan": atan,
    "abs": absval,
}
