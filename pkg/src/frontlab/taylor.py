"""Truncated multivariate Taylor arithmetic: forward-mode jets up to order 3.

A `Series` holds the Taylor coefficients (derivative / multi-factorial
convention) of one scalar quantity at a point, in one to three variables.
Coefficients may be python floats or numpy arrays, so a single sweep can
evaluate jets on a whole grid.  `JetSpace` instances are cached and carry the
monomial bookkeeping shared by every series of the same shape.
"""

import math
from functools import lru_cache

import numpy as np

from .errors import ExprDomainError

_ZERO = 0.0  # shared sentinel; `is _ZERO` marks coefficients never written to


def _compositions(nvars, total):
    if nvars == 1:
        return [(total,)]
    out = []
    for first in range(total, -1, -1):
        for rest in _compositions(nvars - 1, total - first):
            out.append((first,) + rest)
    return out


@lru_cache(maxsize=None)
def jet_space(nvars, order):
    return JetSpace(nvars, order)


class JetSpace:
    """Monomial tables for truncated Taylor series in `nvars` variables."""

    def __init__(self, nvars, order):
        if not 1 <= nvars <= 3 or not 0 <= order <= 3:
            raise ValueError(f"unsupported jet space: {nvars} vars, order {order}")
        self.nvars = nvars
        self.order = order
        monomials = []
        for total in range(order + 1):
            monomials.extend(_compositions(nvars, total))
        self.monomials = tuple(monomials)
        self.index = {m: i for i, m in enumerate(self.monomials)}
        self.ncoef = len(self.monomials)
        self.factorial = tuple(
            math.prod(math.factorial(a) for a in m) for m in self.monomials
        )
        triples = []
        for i, mi in enumerate(self.monomials):
            for j, mj in enumerate(self.monomials):
                k = self.index.get(tuple(a + b for a, b in zip(mi, mj)))
                if k is not None:
                    triples.append((i, j, k))
        self.triples = tuple(triples)

    def const(self, value):
        c = [_ZERO] * self.ncoef
        c[0] = value
        return Series(self, c)

    def var(self, i, value):
        c = [_ZERO] * self.ncoef
        c[0] = value
        if self.order >= 1:
            unit = tuple(1 if j == i else 0 for j in range(self.nvars))
            c[self.index[unit]] = 1.0
        return Series(self, c)


class Series:
    """Taylor coefficients of one scalar quantity at a point."""

    __slots__ = ("space", "c")

    def __init__(self, space, coeffs):
        self.space = space
        self.c = coeffs

    @property
    def value(self):
        return self.c[0]

    def partial(self, alpha):
        """Exact partial derivative for the multi-index `alpha`."""
        k = self.space.index[tuple(alpha)]
        coeff = self.c[k]
        fact = self.space.factorial[k]
        return coeff * fact if fact != 1 else coeff

    def deriv(self, var):
        """Series of the partial derivative with respect to variable `var`.

        Valid one order lower than `self`; the top-degree coefficients of the
        result are left at zero.
        """
        sp = self.space
        out = [_ZERO] * sp.ncoef
        for k, m in enumerate(sp.monomials):
            src = list(m)
            src[var] += 1
            j = sp.index.get(tuple(src))
            if j is not None and self.c[j] is not _ZERO:
                out[k] = self.c[j] * (m[var] + 1)
        return Series(sp, out)

    def scale(self, factor):
        out = [ci if ci is _ZERO else ci * factor for ci in self.c]
        return Series(self.space, out)

    def __add__(self, other):
        sp = self.space
        if isinstance(other, Series):
            return Series(sp, [a + b for a, b in zip(self.c, other.c)])
        out = list(self.c)
        out[0] = out[0] + other
        return Series(sp, out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Series):
            return Series(self.space, [a - b for a, b in zip(self.c, other.c)])
        out = list(self.c)
        out[0] = out[0] - other
        return Series(self.space, out)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Series(self.space, [ci if ci is _ZERO else -ci for ci in self.c])

    def __mul__(self, other):
        sp = self.space
        if not isinstance(other, Series):
            return self.scale(other)
        out = [_ZERO] * sp.ncoef
        a, b = self.c, other.c
        for i, j, k in sp.triples:
            ai = a[i]
            bj = b[j]
            if ai is _ZERO or bj is _ZERO:
                continue
            out[k] = out[k] + ai * bj
        return Series(sp, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Series):
            return self * other.reciprocal()
        return self.scale(1.0 / other)

    def __rtruediv__(self, other):
        return other * self.reciprocal()

    def __pow__(self, k):
        if not isinstance(k, (int, np.integer)):
            raise TypeError("Series ** exponent must be an integer; use powr")
        return self.powi(int(k))

    def powi(self, k):
        if k < 0:
            return self.powi(-k).reciprocal()
        out = self.space.const(1.0)
        for _ in range(k):
            out = out * self
        return out

    def powr(self, r):
        return _compose(self, _d_pow(self.c[0], r, self.space.order))

    def reciprocal(self):
        return _compose(self, _d_reciprocal(self.c[0], self.space.order))


def _compose(series, d):
    """Chain rule: apply a scalar function given its derivatives `d` at the
    series' value.  `d[k]` is the k-th derivative (not Taylor-normalized)."""
    sp = series.space
    out = sp.const(d[0])
    if len(d) == 1:
        return out
    p = list(series.c)
    p[0] = _ZERO
    ps = Series(sp, p)
    pk = ps
    fact = 1.0
    for k in range(1, len(d)):
        if k > 1:
            pk = pk * ps
            fact *= k
        if d[k] is _ZERO:
            continue
        out = out + pk.scale(d[k] / fact)
    return out


# --- derivative tables --------------------------------------------------
# Each returns [g(c), g'(c), ..., g^(n)(c)]; domain violations raise for
# scalar arguments and turn into NaN entries for array arguments.


def _d_sin(c, n):
    s, co = np.sin(c), np.cos(c)
    return [s, co, -s, -co][: n + 1]


def _d_cos(c, n):
    s, co = np.sin(c), np.cos(c)
    return [co, -s, -co, s][: n + 1]


def _d_tan(c, n):
    t = np.tan(c)
    q = 1.0 + t * t
    return [t, q, 2.0 * t * q, q * (2.0 + 6.0 * t * t)][: n + 1]


def _d_sinh(c, n):
    s, co = np.sinh(c), np.cosh(c)
    return [s, co, s, co][: n + 1]


def _d_cosh(c, n):
    s, co = np.sinh(c), np.cosh(c)
    return [co, s, co, s][: n + 1]


def _d_tanh(c, n):
    t = np.tanh(c)
    q = 1.0 - t * t
    return [t, q, -2.0 * t * q, q * (6.0 * t * t - 2.0)][: n + 1]


def _d_sech(c, n):
    t = np.tanh(c)
    s = 1.0 / np.cosh(c)
    return [s, -s * t, s * (2.0 * t * t - 1.0), s * t * (5.0 - 6.0 * t * t)][: n + 1]


def _d_exp(c, n):
    e = np.exp(c)
    return [e] * (n + 1)


def _d_atan(c, n):
    q = 1.0 / (1.0 + c * c)
    return [np.arctan(c), q, -2.0 * c * q * q, (6.0 * c * c - 2.0) * q * q * q][: n + 1]


def _d_log(c, n):
    if np.ndim(c) == 0:
        if not c > 0:
            raise ExprDomainError(f"log of non-positive value {float(c)!r}")
        inv = 1.0 / c
        return [math.log(c), inv, -inv * inv, 2.0 * inv**3][: n + 1]
    with np.errstate(divide="ignore", invalid="ignore"):
        safe = np.where(c > 0, c, np.nan)
        inv = 1.0 / safe
        return [np.log(safe), inv, -inv * inv, 2.0 * inv**3][: n + 1]


def _d_sqrt(c, n):
    if np.ndim(c) == 0:
        if c < 0 or not np.isfinite(c):
            raise ExprDomainError(f"sqrt of negative value {float(c)!r}")
        if c == 0 and n >= 1:
            raise ExprDomainError("sqrt is not differentiable at 0")
        r = math.sqrt(c)
        if n == 0:
            return [r]
        return [r, 0.5 / r, -0.25 / r**3, 0.375 / r**5][: n + 1]
    with np.errstate(divide="ignore", invalid="ignore"):
        value = np.sqrt(np.where(c >= 0, c, np.nan))
        if n == 0:
            return [value]
        r = np.sqrt(np.where(c > 0, c, np.nan))
        return [value, 0.5 / r, -0.25 / r**3, 0.375 / r**5][: n + 1]


def _d_reciprocal(c, n):
    if np.ndim(c) == 0:
        if c == 0:
            raise ExprDomainError("division by zero")
        inv = 1.0 / c
    else:
        with np.errstate(divide="ignore", invalid="ignore"):
            inv = np.where(c != 0, 1.0 / np.where(c != 0, c, 1.0), np.nan)
    return [inv, -inv * inv, 2.0 * inv**3, -6.0 * inv**4][: n + 1]


def _d_pow(c, r, n):
    if np.ndim(c) == 0:
        if not c > 0:
            raise ExprDomainError(f"{float(c)!r} ^ {r} needs a positive base")
        base = c
    else:
        with np.errstate(invalid="ignore"):
            base = np.where(c > 0, c, np.nan)
    out = [base**r]
    coef = 1.0
    for k in range(1, n + 1):
        coef *= r - (k - 1)
        out.append(coef * base ** (r - k))
    return out


_TABLES = {
    "sin": _d_sin,
    "cos": _d_cos,
    "tan": _d_tan,
    "sinh": _d_sinh,
    "cosh": _d_cosh,
    "tanh": _d_tanh,
    "sech": _d_sech,
    "exp": _d_exp,
    "log": _d_log,
    "sqrt": _d_sqrt,
    "atan": _d_atan,
}

FUNCTION_NAMES = frozenset(_TABLES) | {"abs"}


def apply_function(name, series):
    """Apply a named unary function through the chain rule."""
    d = _TABLES[name](series.c[0], series.space.order)
    return _compose(series, d)


def apply_abs(series):
    """abs with the right-derivative convention at 0.

    Returns (result, hit_zero); callers surface `hit_zero` as a diagnostic.
    """
    c = series.c[0]
    if np.ndim(c) == 0:
        hit = c == 0
        sign = 1.0 if c >= 0 else -1.0
        mag = abs(c)
    else:
        hit = bool(np.any(c == 0))
        sign = np.where(c >= 0, 1.0, -1.0)
        mag = np.abs(c)
    d = [mag, sign, _ZERO, _ZERO][: series.space.order + 1]
    return _compose(series, d), bool(hit)


def sqrt(series):
    return apply_function("sqrt", series)
