"""Forward-mode automatic differentiation on truncated Taylor jets.

Degree-1 jets carry a value and a gradient, degree-2 jets additionally a
Hessian, taken with respect to a fixed tuple of seed variables. Every
derivative of metric, frame, immersion and curve components in this package
flows through these classes, so the differentiation layer is exact to
machine precision and needs no step-size tuning.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "Jet",
    "Jet2",
    "jet_vars",
    "jet2_vars",
    "value_of",
    "grad_of",
    "hess_of",
    "taylor_compose",
    "sqrt",
    "exp",
    "sin",
    "cos",
    "det3",
    "inv3",
    "dot_quadratic",
]


class Jet:
    """Degree-1 jet: value plus gradient w.r.t. the seed variables."""

    __slots__ = ("val", "grad")

    def __init__(self, val, grad):
        self.val = val
        self.grad = grad

    def __add__(self, other):
        if isinstance(other, Jet):
            return Jet(self.val + other.val, self.grad + other.grad)
        return Jet(self.val + float(other), self.grad)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Jet):
            return Jet(self.val - other.val, self.grad - other.grad)
        return Jet(self.val - float(other), self.grad)

    def __rsub__(self, other):
        return Jet(float(other) - self.val, -self.grad)

    def __mul__(self, other):
        if isinstance(other, Jet):
            return Jet(self.val * other.val, self.val * other.grad + other.val * self.grad)
        c = float(other)
        return Jet(self.val * c, self.grad * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet):
            q = self.val / other.val
            return Jet(q, (self.grad - q * other.grad) / other.val)
        c = float(other)
        return Jet(self.val / c, self.grad / c)

    def __rtruediv__(self, other):
        c = float(other)
        q = c / self.val
        return Jet(q, (-q / self.val) * self.grad)

    def __neg__(self):
        return Jet(-self.val, -self.grad)

    def __pow__(self, n):
        if not isinstance(n, (int, float)):
            return NotImplemented
        f0 = self.val**n
        f1 = n * self.val ** (n - 1)
        return Jet(f0, f1 * self.grad)

    def __repr__(self):
        return f"Jet({self.val!r}, grad={self.grad!r})"


class Jet2:
    """Degree-2 jet: value, gradient, and Hessian w.r.t. the seed variables."""

    __slots__ = ("val", "grad", "hess")

    def __init__(self, val, grad, hess):
        self.val = val
        self.grad = grad
        self.hess = hess

    def __add__(self, other):
        if isinstance(other, Jet2):
            return Jet2(self.val + other.val, self.grad + other.grad, self.hess + other.hess)
        return Jet2(self.val + float(other), self.grad, self.hess)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Jet2):
            return Jet2(self.val - other.val, self.grad - other.grad, self.hess - other.hess)
        return Jet2(self.val - float(other), self.grad, self.hess)

    def __rsub__(self, other):
        return Jet2(float(other) - self.val, -self.grad, -self.hess)

    def __mul__(self, other):
        if isinstance(other, Jet2):
            cross = np.outer(self.grad, other.grad)
            return Jet2(
                self.val * other.val,
                self.val * other.grad + other.val * self.grad,
                self.val * other.hess + other.val * self.hess + cross + cross.T,
            )
        c = float(other)
        return Jet2(self.val * c, self.grad * c, self.hess * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet2):
            q = self.val / other.val
            qg = (self.grad - q * other.grad) / other.val
            cross = np.outer(qg, other.grad)
            qh = (self.hess - q * other.hess - cross - cross.T) / other.val
            return Jet2(q, qg, qh)
        c = float(other)
        return Jet2(self.val / c, self.grad / c, self.hess / c)

    def __rtruediv__(self, other):
        c = float(other)
        v = self.val
        q = c / v
        return _chain2(self, q, -q / v, 2.0 * q / (v * v))

    def __neg__(self):
        return Jet2(-self.val, -self.grad, -self.hess)

    def __pow__(self, n):
        if not isinstance(n, (int, float)):
            return NotImplemented
        v = self.val
        return _chain2(self, v**n, n * v ** (n - 1), n * (n - 1) * v ** (n - 2))

    def __repr__(self):
        return f"Jet2({self.val!r}, grad={self.grad!r})"


def _chain1(u: Jet, f0: float, f1: float) -> Jet:
    return Jet(f0, f1 * u.grad)


def _chain2(u: Jet2, f0: float, f1: float, f2: float) -> Jet2:
    outer = np.outer(u.grad, u.grad)
    return Jet2(f0, f1 * u.grad, f1 * u.hess + f2 * outer)


def jet_vars(values) -> list[Jet]:
    """Seed degree-1 jet variables, one per coordinate value."""
    vals = [float(v) for v in values]
    eye = np.eye(len(vals))
    return [Jet(v, eye[i]) for i, v in enumerate(vals)]


def jet2_vars(values) -> list[Jet2]:
    """Seed degree-2 jet variables, one per coordinate value."""
    vals = [float(v) for v in values]
    n = len(vals)
    eye = np.eye(n)
    return [Jet2(v, eye[i], np.zeros((n, n))) for i, v in enumerate(vals)]


def value_of(x) -> float:
    return float(x.val) if isinstance(x, (Jet, Jet2)) else float(x)


def grad_of(x, n: int) -> np.ndarray:
    if isinstance(x, (Jet, Jet2)):
        return np.asarray(x.grad, dtype=float)
    return np.zeros(n)


def hess_of(x, n: int) -> np.ndarray:
    if isinstance(x, Jet2):
        return np.asarray(x.hess, dtype=float)
    return np.zeros((n, n))


def taylor_compose(outer, f0: float, f1: float, f2: float = 0.0):
    """Compose a scalar function, given by its value and derivatives at
    ``value_of(outer)``, with an existing jet (chain rule through ``outer``)."""
    if isinstance(outer, Jet2):
        return _chain2(outer, f0, f1, f2)
    if isinstance(outer, Jet):
        return _chain1(outer, f0, f1)
    return f0


def sqrt(x):
    if isinstance(x, Jet):
        s = math.sqrt(x.val)
        return _chain1(x, s, 0.5 / s)
    if isinstance(x, Jet2):
        s = math.sqrt(x.val)
        return _chain2(x, s, 0.5 / s, -0.25 / (s * x.val))
    return math.sqrt(x)


def exp(x):
    if isinstance(x, Jet):
        e = math.exp(x.val)
        return _chain1(x, e, e)
    if isinstance(x, Jet2):
        e = math.exp(x.val)
        return _chain2(x, e, e, e)
    return math.exp(x)


def sin(x):
    if isinstance(x, Jet):
        return _chain1(x, math.sin(x.val), math.cos(x.val))
    if isinstance(x, Jet2):
        s = math.sin(x.val)
        return _chain2(x, s, math.cos(x.val), -s)
    return math.sin(x)


def cos(x):
    if isinstance(x, Jet):
        return _chain1(x, math.cos(x.val), -math.sin(x.val))
    if isinstance(x, Jet2):
        c = math.cos(x.val)
        return _chain2(x, c, -math.sin(x.val), -c)
    return math.cos(x)


# -- small generic linear algebra over jet-or-float entries -----------------

def det3(a):
    """Determinant of a 3x3 nested-list matrix with jet or float entries."""
    return (
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    )


def inv3(a, det=None):
    """Inverse of a 3x3 nested-list matrix via the adjugate (jet-generic)."""
    d = det3(a) if det is None else det
    c00 = a[1][1] * a[2][2] - a[1][2] * a[2][1]
    c01 = a[0][2] * a[2][1] - a[0][1] * a[2][2]
    c02 = a[0][1] * a[1][2] - a[0][2] * a[1][1]
    c10 = a[1][2] * a[2][0] - a[1][0] * a[2][2]
    c11 = a[0][0] * a[2][2] - a[0][2] * a[2][0]
    c12 = a[0][2] * a[1][0] - a[0][0] * a[1][2]
    c20 = a[1][0] * a[2][1] - a[1][1] * a[2][0]
    c21 = a[0][1] * a[2][0] - a[0][0] * a[2][1]
    c22 = a[0][0] * a[1][1] - a[0][1] * a[1][0]
    return [
        [c00 / d, c01 / d, c02 / d],
        [c10 / d, c11 / d, c12 / d],
        [c20 / d, c21 / d, c22 / d],
    ]


def dot_quadratic(g, u, v):
    """sum_ij g[i][j] u[i] v[j] over jet-or-float entries."""
    total = 0.0
    for i in range(len(u)):
        row = g[i]
        ui = u[i]
        for j in range(len(v)):
            total = total + row[j] * ui * v[j]
    return total
