"""Symmetric q-number primitives over configurable-precision reals.

Everything is built on the symmetric quantum number
``[x] = (q^x - q^-x)/(q - q^-1)``, which is invariant under q <-> 1/q.
A :class:`QContext` carries the deformation parameter, the working
precision and memo tables for factorials and Pochhammer symbols.

The symmetric q-Gamma function is related to a classical q-Gamma at base
q^2: requiring Gamma_tilde(n+1) = [n]! forces that base (the symmetric
[x] at base q equals q^(1-x) times the classical q-number at base q^2).
"""

from __future__ import annotations

import threading
from fractions import Fraction

from mpmath import mp, mpf

from .halfint import HalfInt

GUARD_DIGITS = 10


class QDomainError(ValueError):
    """Argument outside the domain of a q-primitive."""


class QContext:
    """Deformation parameter, working precision and memo tables.

    Immutable after construction except for the caches, which are only
    ever filled with values that are bit-identical to recomputation
    (guarded by a lock for concurrent use).
    """

    def __init__(self, q="0.5", precision=50, invert=False):
        if precision < 30:
            raise QDomainError("precision must be at least 30 significant digits")
        self.precision = int(precision)
        self.dps = self.precision + GUARD_DIGITS
        # keep the exact constructor argument so derived contexts
        # (reciprocal base, boosted precision) can re-evaluate q without
        # inheriting rounding from this context
        self._q_arg = q if isinstance(q, (str, int, Fraction, HalfInt)) else q
        self._invert = bool(invert)
        with mp.workdps(self.dps):
            self.q = _as_mpf(q)
            if not self.q > 0:
                raise QDomainError("q must be positive")
            if self._invert:
                self.q = 1 / self.q
            self.qinv = 1 / self.q
        self.is_classical = self.q == 1
        # relative tolerance with an absolute floor, leaving guard digits
        # for cancellation in alternating sums
        with mp.workdps(self.dps):
            self.tol = mpf(10) ** -(self.precision - 10)
        self._cache = {}
        self._lock = threading.Lock()

    def work(self):
        """Context manager setting the working precision of this context."""
        return mp.workdps(self.dps)

    def reciprocal(self):
        """A context with q -> 1/q at identical precision."""
        return QContext(q=self._q_arg, precision=self.precision,
                        invert=not self._invert)

    def with_precision(self, precision):
        """The same deformation parameter at a different precision."""
        return QContext(q=self._q_arg, precision=precision,
                        invert=self._invert)

    def to_mpf(self, x):
        """Coerce HalfInt, Fraction, int, str or float to mpf at full precision."""
        with self.work():
            if isinstance(x, HalfInt):
                return mpf(x.twice) / 2
            if isinstance(x, Fraction):
                return mpf(x.numerator) / x.denominator
            return _as_mpf(x)

    def qpow(self, e):
        """q raised to an exact half-integer/rational exponent."""
        with self.work():
            return self.q ** self.to_mpf(e)

    def close(self, a, b, scale=1):
        """True if a and b agree to the context tolerance (relative, with floor)."""
        with self.work():
            bound = self.tol * max(abs(mpf(scale)), abs(a), abs(b), 1)
            return abs(a - b) <= bound

    def _memo(self, key, compute):
        try:
            return self._cache[key]
        except KeyError:
            value = compute()
            with self._lock:
                return self._cache.setdefault(key, value)


def _as_mpf(x):
    if isinstance(x, mpf):
        return x
    if isinstance(x, (int, str)):
        return mpf(x)
    if isinstance(x, HalfInt):
        return mpf(x.twice) / 2
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpf(str(x))


def qnum(x, ctx):
    """Symmetric quantum number [x] = (q^x - q^-x)/(q - q^-1)."""
    with ctx.work():
        xv = ctx.to_mpf(x)
        if ctx.is_classical:
            return xv
        if isinstance(x, HalfInt):
            return ctx._memo(("num", x.twice), lambda: _qnum_raw(xv, ctx))
        return _qnum_raw(xv, ctx)


def _qnum_raw(xv, ctx):
    return (ctx.q ** xv - ctx.q ** -xv) / (ctx.q - ctx.qinv)


def q_factorial(n, ctx):
    """Symmetric q-factorial [n]! = [1][2]...[n]."""
    n = _as_index(n)
    if n < 0:
        raise QDomainError(f"q_factorial: negative argument {n}")
    return ctx._memo(("fact", n), lambda: _q_factorial_raw(n, ctx))


def _q_factorial_raw(n, ctx):
    with ctx.work():
        if n == 0:
            return mpf(1)
        return q_factorial(n - 1, ctx) * qnum(HalfInt(n), ctx)


def q_pochhammer(a, n, ctx):
    """Symmetric q-Pochhammer (a|q)_n = [a][a+1]...[a+n-1]."""
    n = _as_index(n)
    if n < 0:
        raise QDomainError(f"q_pochhammer: negative length {n}")
    if isinstance(a, HalfInt):
        return ctx._memo(("poch", a.twice, n), lambda: _q_pochhammer_raw(a, n, ctx))
    return _q_pochhammer_raw(a, n, ctx)


def _q_pochhammer_raw(a, n, ctx):
    with ctx.work():
        value = mpf(1)
        for m in range(n):
            value *= qnum(a + m if isinstance(a, HalfInt) else ctx.to_mpf(a) + m, ctx)
        return value


def q_binomial(n, k, ctx):
    """Symmetric q-binomial [n]!/([k]![n-k]!); returns 0 outside 0 <= k <= n."""
    n, k = _as_index(n), _as_index(k)
    if k < 0 or k > n:
        return ctx.to_mpf(0)
    with ctx.work():
        return q_factorial(n, ctx) / (q_factorial(k, ctx) * q_factorial(n - k, ctx))


def q_gamma_classical(s, ctx):
    """Classical q-Gamma at base q^2 (the base the symmetric calculus lives on).

    For 0 < base < 1 the infinite products are truncated once the
    multiplicative tail deviates from 1 by less than 10^-(precision+5);
    base > 1 is routed through the reciprocal base.
    """
    with ctx.work():
        sv = ctx.to_mpf(s)
        if sv <= 0 and sv == mp.floor(sv):
            raise QDomainError(f"q-Gamma pole at s={s}")
        if ctx.is_classical:
            return mp.gamma(sv)
        base = ctx.q ** 2
        return _gamma_base(sv, base, ctx)


def _gamma_base(sv, base, ctx):
    if base > 1:
        rb = 1 / base
        return base ** ((sv - 1) * (sv - 2) / 2) * _gamma_base(sv, rb, ctx)
    cutoff = mpf(10) ** -(ctx.precision + 5)
    num = mpf(1)
    den = mpf(1)
    k = 0
    while True:
        f_num = 1 - base ** (k + 1)
        f_den = 1 - base ** (sv + k)
        num *= f_num
        den *= f_den
        if abs(1 - f_num) < cutoff and abs(1 - f_den) < cutoff:
            break
        k += 1
    return (1 - base) ** (1 - sv) * num / den


def q_gamma_tilde(s, ctx):
    """Symmetric q-Gamma: Gamma_tilde(n+1) = [n]! for integer n >= 0."""
    with ctx.work():
        sv = ctx.to_mpf(s)
        if sv <= 0 and sv == mp.floor(sv):
            raise QDomainError(f"q-Gamma pole at s={s}")
        if ctx.is_classical:
            return mp.gamma(sv)
        if sv == mp.floor(sv):
            # factorial shortcut for positive integer arguments
            return q_factorial(int(sv) - 1, ctx)
        base = ctx.q ** 2
        return base ** (-(sv - 1) * (sv - 2) / 4) * _gamma_base(sv, base, ctx)


def _as_index(n):
    if isinstance(n, HalfInt):
        return n.as_int()
    if isinstance(n, int):
        return n
    if isinstance(n, float) and n == int(n):
        return int(n)
    raise QDomainError(f"expected an integer index, got {n!r}")
