"""Terminating symmetric q-hypergeometric series and their identities.

Series arguments are carried as signed q-exponents, never as pre-evaluated
reals, so the q <-> 1/q flips and the pattern matching behind the two
3F2 transformation rewrites stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from mpmath import mp, mpf

from .halfint import HalfInt, halfint
from .qcore import QDomainError, q_factorial, q_pochhammer, qnum


class SeriesIllPosed(ValueError):
    """A denominator Pochhammer vanishes inside the live summation range."""


@dataclass(frozen=True)
class HyperSeriesSpec:
    """A terminating p+1_F_p instance with argument z = q^(sign*exponent)."""

    numerator: tuple
    denominator: tuple
    arg_exponent: HalfInt
    arg_sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, "numerator", tuple(halfint(a) for a in self.numerator))
        object.__setattr__(self, "denominator", tuple(halfint(b) for b in self.denominator))
        object.__setattr__(self, "arg_exponent", halfint(self.arg_exponent))
        if self.arg_sign not in (1, -1):
            raise ValueError("arg_sign must be +1 or -1")

    def signed_exponent(self):
        return self.arg_exponent * self.arg_sign

    def termination_order(self):
        """Smallest cutoff forced by a nonpositive-integer numerator parameter."""
        cutoffs = [-a.as_int() for a in self.numerator if a.is_integer and a <= 0]
        if not cutoffs:
            raise QDomainError("series is not terminating")
        return min(cutoffs)

    def reciprocal(self):
        """The same series under q -> 1/q (argument sign flips)."""
        return HyperSeriesSpec(self.numerator, self.denominator,
                               self.arg_exponent, -self.arg_sign)


@dataclass(frozen=True)
class BasicSeriesSpec:
    """A terminating basic series with parameters q^e and free argument z."""

    numerator: tuple
    denominator: tuple
    z: object

    def __post_init__(self):
        object.__setattr__(self, "numerator", tuple(halfint(a) for a in self.numerator))
        object.__setattr__(self, "denominator", tuple(halfint(b) for b in self.denominator))

    def termination_order(self):
        cutoffs = [-a.as_int() for a in self.numerator if a.is_integer and a <= 0]
        if not cutoffs:
            raise QDomainError("basic series is not terminating")
        return min(cutoffs)


def eval_terminating(spec, ctx):
    """Evaluate a terminating symmetric q-hypergeometric series.

    The live range is fixed a priori by the numerator cutoffs; a
    denominator Pochhammer vanishing inside that range is an error.
    Alternating sums can cancel many digits, so the summation tracks the
    peak term magnitude and re-runs at boosted working precision until
    the result carries the full context accuracy.
    """
    n_eff = spec.termination_order()
    if n_eff == 0:
        return ctx.to_mpf(1)
    for b in spec.denominator:
        if b.is_integer and b <= 0 and -b.as_int() < n_eff:
            raise SeriesIllPosed(
                f"denominator parameter {b} vanishes at term {-b.as_int() + 1}")

    def one_pass(c):
        z = c.qpow(spec.signed_exponent().as_fraction())
        total = mpf(1)
        term = mpf(1)
        peak = mpf(1)
        for k in range(n_eff):
            for a in spec.numerator:
                term *= qnum(a + k, c)
            for b in spec.denominator:
                term /= qnum(b + k, c)
            term *= z / qnum(HalfInt(k + 1), c)
            total += term
            peak = max(peak, abs(term))
        return total, peak

    return _sum_with_guard(one_pass, ctx)


def _sum_with_guard(one_pass, ctx):
    """Run a (total, peak-term) summation, boosting precision on cancellation.

    The pass is repeated in a genuinely higher-precision context (same
    deformation parameter) with enough extra digits that the returned
    total is accurate to the requested working precision even when the
    terms cancel; a total that stays exactly zero relative to the peak
    is resolved down to the context's absolute floor.
    """
    c = ctx
    for _ in range(4):
        with c.work():
            total, peak = one_pass(c)
            if total == 0:
                lost = ctx.precision
            else:
                lost = max(0, int(mp.ceil(mp.log10(peak / abs(total)))))
            if c.dps >= ctx.dps + lost:
                return total
        c = ctx.with_precision(ctx.precision + lost + 5)
    return total


def eval_basic(spec, ctx):
    """Evaluate a terminating basic series with (a;q)_k coefficients."""
    n_eff = spec.termination_order()
    if n_eff == 0:
        return ctx.to_mpf(1)
    with ctx.work():
        z = ctx.to_mpf(spec.z)
        q = ctx.q
        for b in spec.denominator:
            if b.is_integer and b <= 0 and -b.as_int() < n_eff:
                raise SeriesIllPosed(
                    f"denominator parameter q^{b} yields a vanishing factor "
                    f"at term {-b.as_int() + 1}")
        total = mpf(1)
        term = mpf(1)
        for k in range(n_eff):
            qk = q ** k
            for a in spec.numerator:
                term *= 1 - ctx.qpow(a.as_fraction()) * qk
            for b in spec.denominator:
                term /= 1 - ctx.qpow(b.as_fraction()) * qk
            term *= z / (1 - q ** (k + 1))
            total += term
        return total


@dataclass(frozen=True)
class Prefactor:
    """q^exponent times a ratio of symmetric Pochhammer symbols."""

    q_exponent: Fraction
    poch_num: tuple = field(default_factory=tuple)  # pairs (a, n)
    poch_den: tuple = field(default_factory=tuple)

    def value(self, ctx):
        with ctx.work():
            v = ctx.qpow(self.q_exponent)
            for a, n in self.poch_num:
                v *= q_pochhammer(a, n, ctx)
            for a, n in self.poch_den:
                v /= q_pochhammer(a, n, ctx)
            return v


def _match_321_pattern(spec):
    """Decompose a 3F2 spec as (-n, a, b; d, e | q, q^(pm*(a+b-n-d-e+1)))."""
    if len(spec.numerator) != 3 or len(spec.denominator) != 2:
        raise QDomainError("transformation requires a 3F2 spec")
    exponent = spec.signed_exponent()
    for i in range(3):
        minus_n = spec.numerator[i]
        if not (minus_n.is_integer and minus_n <= 0):
            continue
        n = -minus_n.as_int()
        rest = [spec.numerator[k] for k in range(3) if k != i]
        for a, b in permutations(rest):
            for d, e in permutations(spec.denominator):
                t = a + b - n - d - e + 1
                for pm in (1, -1):
                    if t * pm == exponent:
                        return n, a, b, d, e, pm
    raise QDomainError("spec does not match the 3F2 transformation pattern")


def transform_142(spec):
    """Rewrite via the first 3F2 transformation; value is preserved.

    Returns (new_spec, prefactor) with
    value(spec) = prefactor * value(new_spec).
    """
    n, a, b, d, e, pm = _match_321_pattern(spec)
    new = HyperSeriesSpec(
        numerator=(HalfInt(-n), a, d - b),
        denominator=(d, a - e - n + 1),
        arg_exponent=b - e,
        arg_sign=pm,
    )
    pre = Prefactor(
        q_exponent=Fraction(pm) * a.as_fraction() * n,
        poch_num=((e - a, n),),
        poch_den=((e, n),),
    )
    return new, pre


def transform_141(spec):
    """Rewrite via the second 3F2 transformation; value is preserved."""
    n, a, b, d, e, pm = _match_321_pattern(spec)
    new = HyperSeriesSpec(
        numerator=(HalfInt(-n), a, a + b - d - e - n + 1),
        denominator=(a - d - n + 1, a - e - n + 1),
        arg_exponent=b,
        arg_sign=pm,
    )
    pre = Prefactor(
        q_exponent=Fraction(0),
        poch_num=((d - a, n), (e - a, n)),
        poch_den=((d, n), (e, n)),
    )
    return new, pre


def vandermonde_spec(n, b, c, sign):
    """The 2F1 instance summed by the q-Vandermonde formula."""
    b, c = halfint(b), halfint(c)
    return HyperSeriesSpec(
        numerator=(HalfInt(-n), b),
        denominator=(c,),
        arg_exponent=b - c - n + 1,
        arg_sign=sign,
    )


def closed_sum_vandermonde(n, b, c, sign, ctx):
    """q-Vandermonde closed form (c-b|q)_n/(c|q)_n * q^(pm*n*b)."""
    b, c = halfint(b), halfint(c)
    _check_vandermonde_domain(n, b, c)
    with ctx.work():
        return (q_pochhammer(c - b, n, ctx) / q_pochhammer(c, n, ctx)
                * ctx.qpow(Fraction(sign * n) * b.as_fraction()))


def _check_vandermonde_domain(n, b, c):
    if n < 0:
        raise QDomainError("vandermonde: n must be nonnegative")
    if b.is_integer and b <= 0 and n >= -b.as_int() + 1:
        pass  # series terminates earlier through b; harmless
    if c.is_integer and c <= 0 and n > -c.as_int():
        raise QDomainError("vandermonde: n < |c| required for negative integer c")


def closed_sum_positive(n, b, c, sign, ctx):
    """Factorial form of the q-Vandermonde sum for positive integers, c > b.

    The parent display drops a factorial mark on the [c-1+n] denominator;
    matching the series numerically confirms it must read [c-1+n]!.
    """
    n, b, c = int(n), int(b), int(c)
    if not (n >= 0 and b > 0 and c > b and n < min(b, c)):
        raise QDomainError("closed_sum_positive requires n,b,c in Z+, n<min(b,c), c>b")
    with ctx.work():
        value = (q_factorial(c - b - 1 + n, ctx) * q_factorial(c - 1, ctx)
                 / (q_factorial(c - b - 1, ctx) * q_factorial(c - 1 + n, ctx)))
        return value * ctx.qpow(sign * b * n)


def closed_sum_negative(n, b, c, sign, ctx):
    """Closed form of 2F1(-n,-b;-c | q, q^(pm*(b-c+n-1))) for b > c > 0."""
    n, b, c = int(n), int(b), int(c)
    if not (n >= 0 and c > 0 and b > c and n < min(b, c)):
        raise QDomainError("closed_sum_negative requires b>c>0 and n<min(b,c)")
    with ctx.work():
        value = ((-1) ** n * q_factorial(c - n, ctx) * q_factorial(b + n - c - 1, ctx)
                 / (q_factorial(c, ctx) * q_factorial(b - c - 1, ctx)))
        return value * ctx.qpow(sign * b * n)


def negative_spec(n, b, c, sign):
    """The 2F1 instance summed by closed_sum_negative."""
    return HyperSeriesSpec(
        numerator=(HalfInt(-n), HalfInt(-b)),
        denominator=(HalfInt(-c),),
        arg_exponent=HalfInt(b - c + n - 1),
        arg_sign=sign,
    )


def dixon_spec(n, b, c):
    """The 3F2 instance summed by the terminating q-Dixon formula."""
    b, c = halfint(b), halfint(c)
    return HyperSeriesSpec(
        numerator=(HalfInt(-2 * n), b, c),
        denominator=(1 - 2 * n - b, 1 - 2 * n - c),
        arg_exponent=HalfInt(1),
        arg_sign=1,
    )


def closed_sum_dixon(n, b, c, ctx):
    """Terminating q-Dixon sum: q^n [2n]! (b+c+n|q)_n / ([n]! (b+n|q)_n (c+n|q)_n)."""
    n = int(n)
    if n < 0:
        raise QDomainError("dixon: n must be nonnegative")
    b, c = halfint(b), halfint(c)
    with ctx.work():
        return (ctx.qpow(n) * q_factorial(2 * n, ctx)
                * q_pochhammer(b + c + n, n, ctx)
                / (q_factorial(n, ctx) * q_pochhammer(b + n, n, ctx)
                   * q_pochhammer(c + n, n, ctx)))


def connection_pair(num_exps, den_exps, z_exp, ctx):
    """Build both sides of the basic/symmetric connection identity.

    phi(q^a1..; q^b1.. | q, q^z) equals F(a1..; b1.. | q^(1/2), w) where
    w = q^(z + (sum a - sum b - 1)/2), i.e. w has exponent
    2*z + sum a - sum b - 1 in the base q^(1/2).

    Returns (basic_spec, f_spec); evaluate the former in ctx (base q) and
    the latter in a context at sqrt(q).
    """
    num = tuple(halfint(a) for a in num_exps)
    den = tuple(halfint(b) for b in den_exps)
    z_exp = halfint(z_exp)
    basic = BasicSeriesSpec(numerator=num, denominator=den,
                            z=ctx.qpow(z_exp.as_fraction()))
    shifted = 2 * z_exp + sum(num, HalfInt(0)) - sum(den, HalfInt(0)) - 1
    f_spec = HyperSeriesSpec(numerator=num, denominator=den,
                             arg_exponent=shifted, arg_sign=1)
    return basic, f_spec
