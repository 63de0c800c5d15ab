"""Clebsch-Gordan coefficients of the q-deformed angular momentum algebra.

Five independent closed forms (double-checked against each other and
against the matrix-level oracle in :mod:`qcgc.repsu`), the symmetry
relations stored as data, special-value fast paths and two three-term
recurrences.

Conventions: the stretched coefficient <j1 j1, j2 j2|j1+j2 j1+j2> is 1,
all coefficients are real, and structural zeros (selection-rule
failures) are returned as exact 0 without touching any arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from .halfint import HalfInt, halfint, halfint_range
from .qcore import QDomainError, q_binomial, q_factorial, q_pochhammer, qnum
from .qhyper import HyperSeriesSpec, _sum_with_guard, eval_terminating


@dataclass(frozen=True)
class CgcKey:
    """The sextuple (j1, m1, j2, m2, j, m) addressing one coefficient."""

    j1: HalfInt
    m1: HalfInt
    j2: HalfInt
    m2: HalfInt
    j: HalfInt
    m: HalfInt

    def __post_init__(self):
        for name in ("j1", "m1", "j2", "m2", "j", "m"):
            object.__setattr__(self, name, halfint(getattr(self, name)))

    def labels(self):
        return (self.j1, self.m1, self.j2, self.m2, self.j, self.m)

    def __str__(self):
        j1, m1, j2, m2, j, m = self.labels()
        return f"<{j1} {m1}, {j2} {m2}|{j} {m}>"


def selection_failure(key):
    """Reason the key fails the selection rules, or None if it passes."""
    j1, m1, j2, m2, j, m = key.labels()
    if j1 < 0 or j2 < 0 or j < 0:
        return "selection: negative spin"
    if m != m1 + m2:
        return "selection: m != m1+m2"
    if abs(m1) > j1 or abs(m2) > j2 or abs(m) > j:
        return "selection: |m| > j"
    if j < abs(j1 - j2) or j > j1 + j2:
        return "selection: triangle rule"
    if not (j1 + j2 + j).is_integer:
        return "selection: j1+j2+j not integral"
    if not ((j1 - m1).is_integer and (j2 - m2).is_integer and (j - m).is_integer):
        return "selection: j-m not integral"
    return None


def selection_rules(key):
    """True iff the key addresses an admissible coefficient."""
    return selection_failure(key) is None


def admissible_keys(j1, j2, j_cap=None):
    """All admissible keys for fixed (j1, j2), in deterministic order."""
    j1, j2 = halfint(j1), halfint(j2)
    keys = []
    for j in halfint_range(abs(j1 - j2), j1 + j2):
        if j_cap is not None and j > j_cap:
            break
        for m in halfint_range(-j, j):
            for m1 in halfint_range(-j1, j1):
                m2 = m - m1
                if abs(m2) <= j2:
                    keys.append(CgcKey(j1, m1, j2, m2, j, m))
    return keys


def _fact(x, ctx):
    return q_factorial(halfint(x).as_int(), ctx)


def _phase(x):
    return (-1) ** halfint(x).as_int()


def _fr(x):
    return halfint(x).as_fraction()


# ---------------------------------------------------------------------------
# single-sum closed forms
# ---------------------------------------------------------------------------

def cgc_sum(key, ctx):
    """Finite-sum closed form (index running down from the stretched end)."""
    if not selection_rules(key):
        return ctx.to_mpf(0)
    j1, m1, j2, m2, j, m = key.labels()
    with ctx.work():
        pre = qnum(2 * j + 1, ctx) * (
            _fact(j1 + j2 + j + 1, ctx) * _fact(j + j1 - j2, ctx)
            * _fact(j1 + j2 - j, ctx) * _fact(j + m, ctx) * _fact(j2 - m2, ctx)
        ) / (
            _fact(j + j2 - j1, ctx) * _fact(j - m, ctx) * _fact(j1 + m1, ctx)
            * _fact(j1 - m1, ctx) * _fact(j2 + m2, ctx)
        )
        expo = (_fr(j1) * _fr(m2) - _fr(j2) * _fr(m1)
                - Fraction(1, 2) * _fr(j1 + j2 - j) * _fr(j1 + j2 + j + 1))
        total = mpf(0)
        rmax = min((j2 - m2).as_int(), (j1 + j2 - j).as_int())
        for r in range(rmax + 1):
            term = (_phase(j1 + j2 - j) * (-1) ** r
                    * _fact(j1 + j2 - m - r, ctx) * _fact(2 * j2 - r, ctx)
                    * ctx.qpow(_fr(j1 + m1) * r)
                    / (q_factorial(r, ctx) * _fact(j + j1 + j2 + 1 - r, ctx)
                       * _fact(j2 - m2 - r, ctx) * _fact(j1 + j2 - j - r, ctx)))
            total += term
        return mp.sqrt(pre) * ctx.qpow(expo) * total


def cgc_sum_alt(key, ctx):
    """Pre-substitution form of the finite sum (same value as cgc_sum)."""
    if not selection_rules(key):
        return ctx.to_mpf(0)
    j1, m1, j2, m2, j, m = key.labels()
    with ctx.work():
        pre = qnum(2 * j + 1, ctx) * (
            _fact(j1 + j2 + j + 1, ctx) * _fact(j + j1 - j2, ctx)
            * _fact(j1 + j2 - j, ctx) * _fact(j + m, ctx) * _fact(j2 - m2, ctx)
        ) / (
            _fact(j + j2 - j1, ctx) * _fact(j - m, ctx) * _fact(j1 + m1, ctx)
            * _fact(j1 - m1, ctx) * _fact(j2 + m2, ctx)
        )
        expo = (_fr(m) * _fr(j1) - _fr(m1) * _fr(j)
                - Fraction(1, 2) * _fr(j2 + j - j1 + 1) * _fr(j1 + j2 - j))
        rmin = max(0, (j1 - j + m2).as_int())
        rmax = (j1 + j2 - j).as_int()
        total = mpf(0)
        for r in range(rmin, rmax + 1):
            term = ((-1) ** r * _fact(j - m + r, ctx) * _fact(j + j2 - j1 + r, ctx)
                    * ctx.qpow(-_fr(j1 + m1) * r)
                    / (q_factorial(r, ctx) * _fact(2 * j + 1 + r, ctx)
                       * _fact(j - j1 - m2 + r, ctx) * _fact(j1 + j2 - j - r, ctx)))
            total += term
        return mp.sqrt(pre) * ctx.qpow(expo) * total


def cgc_racah(key, ctx):
    """Racah-type single sum, symmetric in all factorial arguments.

    This is the default production formula; the summation bounds come
    from factorial-argument nonnegativity.
    """
    if not selection_rules(key):
        return ctx.to_mpf(0)
    j1, m1, j2, m2, j, m = key.labels()
    with ctx.work():
        # sign of the quadratic exponent fixed by matching the other
        # closed forms and the matrix-level oracles
        expo = (_fr(j1) * _fr(m2) - _fr(j2) * _fr(m1)
                + Fraction(1, 2) * _fr(j1 + j2 - j) * _fr(j1 + j2 + j + 1))
        pre = (_fact(j1 + m1, ctx) * _fact(j1 - m1, ctx) * _fact(j2 + m2, ctx)
               * _fact(j2 - m2, ctx) * _fact(j + m, ctx) * _fact(j - m, ctx)
               * _fact(j1 + j2 - j, ctx) * _fact(j + j1 - j2, ctx)
               * _fact(j + j2 - j1, ctx) / _fact(j1 + j2 + j + 1, ctx))
        rmin = max(0, (j2 - j - m1).as_int(), (j1 + m2 - j).as_int())
        rmax = min((j1 + j2 - j).as_int(), (j2 + m2).as_int(), (j1 - m1).as_int())
        total = mpf(0)
        for r in range(rmin, rmax + 1):
            total += ((-1) ** r * ctx.qpow(-_fr(j1 + j2 + j + 1) * r)
                      / (q_factorial(r, ctx) * _fact(j1 + j2 - j - r, ctx)
                         * _fact(j2 + m2 - r, ctx) * _fact(j1 - m1 - r, ctx)
                         * _fact(j - j2 + m1 + r, ctx) * _fact(j - j1 - m2 + r, ctx)))
        return ctx.qpow(expo) * mp.sqrt(qnum(2 * j + 1, ctx)) * mp.sqrt(pre) * total


def cgc_racah_binomial(key, ctx):
    """Racah sum rewritten through q-binomial coefficients."""
    if not selection_rules(key):
        return ctx.to_mpf(0)
    j1, m1, j2, m2, j, m = key.labels()
    with ctx.work():
        expo = (_fr(j1) * _fr(m2) - _fr(j2) * _fr(m1)
                + Fraction(1, 2) * _fr(j1 + j2 - j) * _fr(j1 + j2 + j + 1))
        n = (j1 + j2 - j).as_int()
        pre = (q_binomial((2 * j1).as_int(), n, ctx)
               * q_binomial((2 * j2).as_int(), n, ctx)
               / (q_binomial((j1 + j2 + j + 1).as_int(), n, ctx)
                  * q_binomial((2 * j1).as_int(), (j1 - m1).as_int(), ctx)
                  * q_binomial((2 * j2).as_int(), (j2 - m2).as_int(), ctx)
                  * q_binomial((2 * j).as_int(), (j - m).as_int(), ctx)))
        total = mpf(0)
        for r in range(n + 1):
            total += ((-1) ** r * q_binomial(n, r, ctx)
                      * q_binomial((j + j1 - j2).as_int(), (j1 - m1).as_int() - r, ctx)
                      * q_binomial((j + j2 - j1).as_int(), (j2 + m2).as_int() - r, ctx)
                      * ctx.qpow(-_fr(j1 + j2 + j + 1) * r))
        return ctx.qpow(expo) * mp.sqrt(pre) * total


# ---------------------------------------------------------------------------
# 3F2 representations
# ---------------------------------------------------------------------------

def cgc_3f2_spec(key):
    """The terminating 3F2 instance behind the hypergeometric representation."""
    j1, m1, j2, m2, j, m = key.labels()
    return HyperSeriesSpec(
        numerator=(j - j1 - j2, m2 - j2, -j - j1 - j2 - 1),
        denominator=(m - j1 - j2, -2 * j2),
        arg_exponent=j1 + m1,
        arg_sign=1,
    )


def _gamma_coefficient(key, ctx):
    j1, m1, j2, m2, j, m = key.labels()
    expo = (_fr(j1) * _fr(m2) - _fr(j2) * _fr(m1)
            - Fraction(1, 2) * _fr(j1 + j2 - j) * _fr(j1 + j2 + j + 1))
    num = _fact(2 * j2, ctx) * _fact(j1 + j2 - m, ctx)
    rad = (qnum(2 * j + 1, ctx) * _fact(j + m, ctx) * _fact(j + j1 - j2, ctx)
           / (_fact(j1 + j2 + j + 1, ctx) * _fact(j + j2 - j1, ctx)
              * _fact(j1 + j2 - j, ctx) * _fact(j1 + m1, ctx) * _fact(j1 - m1, ctx)
              * _fact(j2 + m2, ctx) * _fact(j2 - m2, ctx) * _fact(j - m, ctx)))
    return ctx.qpow(expo) * num * mp.sqrt(rad)


def cgc_3f2(key, ctx):
    """Hypergeometric representation: prefactor times a terminating 3F2."""
    if not selection_rules(key):
        return ctx.to_mpf(0)
    j1 = key.j1
    j2 = key.j2
    j = key.j
    with ctx.work():
        return (_phase(j1 + j2 - j) * _gamma_coefficient(key, ctx)
                * eval_terminating(cgc_3f2_spec(key), ctx))


def _merged_3f2_sum(num_params, den_offsets, arg_exponent, ctx):
    """sum_k prod (a|q)_k q^(e k) / ([k]! prod [d+k]!) with 1/[neg]! := 0.

    This is the analytic continuation of prod 1/[d]! times the 3F2 with
    denominator parameters d+1; it stays finite when some d is a negative
    integer (where the naive prefactor-times-series split breaks down).
    """
    cutoffs = [-halfint(a).as_int() for a in num_params
               if halfint(a).is_integer and halfint(a) <= 0]
    kmax = min(cutoffs)

    def one_pass(c):
        total = mpf(0)
        peak = mpf(1)
        for k in range(kmax + 1):
            if any((halfint(d) + k) < 0 for d in den_offsets):
                continue
            term = c.qpow(arg_exponent * k) / q_factorial(k, c)
            for a in num_params:
                term *= q_pochhammer(halfint(a), k, c)
            for d in den_offsets:
                term /= _fact(halfint(d) + k, c)
            total += term
            peak = max(peak, abs(term))
        return total, peak

    return _sum_with_guard(one_pass, ctx)


def cgc_3f2_rw1(key, ctx):
    """First rewritten 3F2 representation (argument q^(j1+j2+j+1)).

    Where the printed split into prefactor and series is well posed it is
    used literally; on the boundary keys where a prefactor factorial has
    a negative argument, the limit form with merged factorial
    denominators is evaluated instead.
    """
    if not selection_rules(key):
        return ctx.to_mpf(0)
    j1, m1, j2, m2, j, m = key.labels()
    with ctx.work():
        rad = (qnum(2 * j + 1, ctx) * _fact(j1 - m1, ctx) * _fact(j2 + m2, ctx)
               * _fact(j - m, ctx) * _fact(j + m, ctx) * _fact(j + j1 - j2, ctx)
               * _fact(j + j2 - j1, ctx)
               / (_fact(j1 + m1, ctx) * _fact(j2 - m2, ctx)
                  * _fact(j1 + j2 + j + 1, ctx) * _fact(j1 + j2 - j, ctx)))
        expo = (_fr(j1) * _fr(m2) - _fr(j2) * _fr(m1)
                - Fraction(1, 2) * _fr(j1 + j2 - j) * _fr(j1 + j2 + j + 1))
        coeff = _phase(j1 + j2 - j) * mp.sqrt(rad) * ctx.qpow(expo)
        d1 = j - j2 - m1
        d2 = j - j1 + m2
        num_params = (j - j1 - j2, m2 - j2, -m1 - j1)
        if d1 >= 0 and d2 >= 0:
            spec = HyperSeriesSpec(numerator=num_params,
                                   denominator=(d1 + 1, d2 + 1),
                                   arg_exponent=j1 + j2 + j + 1, arg_sign=1)
            series = eval_terminating(spec, ctx)
            return coeff / (_fact(d1, ctx) * _fact(d2, ctx)) * series
        return coeff * _merged_3f2_sum(num_params, (d1, d2),
                                       _fr(j1 + j2 + j + 1), ctx)


def cgc_3f2_rw2(key, ctx):
    """Second rewritten 3F2 representation (argument q^-(j1+j2+j+1))."""
    if not selection_rules(key):
        return ctx.to_mpf(0)
    j1, m1, j2, m2, j, m = key.labels()
    with ctx.work():
        rad = (qnum(2 * j + 1, ctx) * _fact(j1 + m1, ctx) * _fact(j2 - m2, ctx)
               * _fact(j - m, ctx) * _fact(j + m, ctx) * _fact(j + j1 - j2, ctx)
               * _fact(j + j2 - j1, ctx)
               / (_fact(j1 - m1, ctx) * _fact(j2 + m2, ctx)
                  * _fact(j1 + j2 + j + 1, ctx) * _fact(j1 + j2 - j, ctx)))
        expo = (_fr(j1) * _fr(m2) - _fr(j2) * _fr(m1)
                + Fraction(1, 2) * _fr(j1 + j2 - j) * _fr(j1 + j2 + j + 1))
        coeff = mp.sqrt(rad) * ctx.qpow(expo)
        d1 = j - j2 + m1
        d2 = j - j1 - m2
        num_params = (j - j1 - j2, m1 - j1, -m2 - j2)
        if d1 >= 0 and d2 >= 0:
            spec = HyperSeriesSpec(numerator=num_params,
                                   denominator=(d1 + 1, d2 + 1),
                                   arg_exponent=j1 + j2 + j + 1, arg_sign=-1)
            series = eval_terminating(spec, ctx)
            return coeff / (_fact(d1, ctx) * _fact(d2, ctx)) * series
        return coeff * _merged_3f2_sum(num_params, (d1, d2),
                                       -_fr(j1 + j2 + j + 1), ctx)


def cgc_3f2_long_equiv(key, ctx):
    """Alternative 3F2 representation obtained through the j <-> j2 exchange."""
    if not selection_rules(key):
        return ctx.to_mpf(0)
    j1, m1, j2, m2, j, m = key.labels()
    with ctx.work():
        expo = (_fr(j1) * _fr(m) + _fr(j) * _fr(m1) + _fr(m1)
                - Fraction(1, 2) * _fr(j1 + j - j2) * _fr(j1 + j2 + j + 1))
        head = (_fact(2 * j, ctx) * _fact(j1 + j - m2, ctx)
                / mp.sqrt(_fact(j1 + m1, ctx) * _fact(j1 - m1, ctx)
                          * _fact(j + m, ctx) * _fact(j2 - m2, ctx)
                          * _fact(j - m, ctx)))
        rad = (qnum(2 * j + 1, ctx) * _fact(j2 + m2, ctx) * _fact(j1 + j2 - j, ctx)
               / (_fact(j1 + j2 + j + 1, ctx) * _fact(j + j2 - j1, ctx)
                  * _fact(j1 + j - j2, ctx)))
        spec = HyperSeriesSpec(
            numerator=(j2 - j1 - j, m - j, -j - j1 - j2 - 1),
            denominator=(m2 - j1 - j, -2 * j),
            arg_exponent=j1 - m1,
            arg_sign=1,
        )
        return (_phase(j1 - m1) * ctx.qpow(expo) * head * mp.sqrt(rad)
                * eval_terminating(spec, ctx))


# ---------------------------------------------------------------------------
# symmetry relations, stored as data
# ---------------------------------------------------------------------------

_LABELS = ("j1", "m1", "j2", "m2", "j", "m")


@dataclass(frozen=True)
class SymmetryRelation:
    """A linear label substitution with its prefactor descriptor.

    The descriptor equation is
    CGC_q(key) = (-1)^phase * q^power * sqrt([2a+1]/[2b+1]) * CGC_q'(key')
    with q' = 1/q iff q_flip; phase, power and the norm-ratio labels a, b
    are linear forms in the six original labels.
    """

    name: str
    key_map: tuple          # six linear forms
    q_flip: bool
    phase_form: tuple = ()
    power_form: tuple = ()
    norm_num: tuple = None  # linear form a of sqrt([2a+1]/..)
    norm_den: tuple = None


def _form(*terms):
    """Linear form as ((coeff, label), ...); coeff is a Fraction-compatible."""
    return tuple((Fraction(c), lab) for c, lab in terms)


def _eval_form(form, values):
    return sum((c * values[lab] for c, lab in form), Fraction(0))


SYMMETRIES = {
    "swap12": SymmetryRelation(
        name="swap12",
        key_map=(_form((1, "j2")), _form((1, "m2")), _form((1, "j1")),
                 _form((1, "m1")), _form((1, "j")), _form((1, "m"))),
        q_flip=True,
        phase_form=_form((1, "j1"), (1, "j2"), (-1, "j")),
    ),
    "negate_m": SymmetryRelation(
        name="negate_m",
        key_map=(_form((1, "j2")), _form((-1, "m2")), _form((1, "j1")),
                 _form((-1, "m1")), _form((1, "j")), _form((-1, "m"))),
        q_flip=False,
    ),
    "j_j1": SymmetryRelation(
        name="j_j1",
        key_map=(_form((1, "j")), _form((-1, "m")), _form((1, "j2")),
                 _form((1, "m2")), _form((1, "j1")), _form((-1, "m1"))),
        q_flip=True,
        phase_form=_form((1, "j2"), (1, "m2")),
        power_form=_form((-1, "m2")),
        norm_num=_form((1, "j")),
        norm_den=_form((1, "j1")),
    ),
    "j_j1_composed": SymmetryRelation(
        name="j_j1_composed",
        key_map=(_form((1, "j2")), _form((-1, "m2")), _form((1, "j")),
                 _form((1, "m")), _form((1, "j1")), _form((1, "m1"))),
        q_flip=True,
        phase_form=_form((1, "j2"), (1, "m2")),
        power_form=_form((-1, "m2")),
        norm_num=_form((1, "j")),
        norm_den=_form((1, "j1")),
    ),
    "j_j2": SymmetryRelation(
        name="j_j2",
        key_map=(_form((1, "j")), _form((1, "m")), _form((1, "j1")),
                 _form((-1, "m1")), _form((1, "j2")), _form((1, "m2"))),
        q_flip=True,
        phase_form=_form((1, "j1"), (-1, "m1")),
        power_form=_form((1, "m1")),
        norm_num=_form((1, "j")),
        norm_den=_form((1, "j2")),
    ),
    "rose_jj2": SymmetryRelation(
        name="rose_jj2",
        key_map=(_form((1, "j1")), _form((1, "m1")), _form((1, "j")),
                 _form((-1, "m")), _form((1, "j2")), _form((-1, "m2"))),
        q_flip=True,
        phase_form=_form((1, "j1"), (-1, "m1")),
        power_form=_form((1, "m1")),
        norm_num=_form((1, "j")),
        norm_den=_form((1, "j2")),
    ),
    "regge": SymmetryRelation(
        name="regge",
        key_map=(
            _form((Fraction(1, 2), "j1"), (Fraction(1, 2), "j2"),
                  (Fraction(1, 2), "m1"), (Fraction(1, 2), "m2")),
            _form((Fraction(1, 2), "j1"), (Fraction(-1, 2), "j2"),
                  (Fraction(1, 2), "m1"), (Fraction(-1, 2), "m2")),
            _form((Fraction(1, 2), "j1"), (Fraction(1, 2), "j2"),
                  (Fraction(-1, 2), "m1"), (Fraction(-1, 2), "m2")),
            _form((Fraction(1, 2), "j1"), (Fraction(-1, 2), "j2"),
                  (Fraction(-1, 2), "m1"), (Fraction(1, 2), "m2")),
            _form((1, "j")),
            _form((1, "j1"), (-1, "j2")),
        ),
        q_flip=False,
    ),
}


@dataclass(frozen=True)
class SymmetryDescriptor:
    """Concrete instance of a relation applied to one key."""

    key: CgcKey
    q_flip: bool
    phase: int
    q_power: Fraction
    norm_pair: tuple  # (a, b) for sqrt([2a+1]/[2b+1]) or None

    def prefactor(self, ctx):
        with ctx.work():
            v = (-1) ** self.phase * ctx.qpow(self.q_power)
            if self.norm_pair is not None:
                a, b = self.norm_pair
                v *= mp.sqrt(qnum(2 * a + 1, ctx) / qnum(2 * b + 1, ctx))
            return v


def apply_symmetry(key, relation):
    """Descriptor such that CGC_q(key) = prefactor * CGC_q'(mapped key)."""
    if isinstance(relation, str):
        relation = SYMMETRIES[relation]
    values = {lab: _fr(v) for lab, v in zip(_LABELS, key.labels())}
    mapped = [HalfInt(_eval_form(f, values)) for f in relation.key_map]
    new_key = CgcKey(*mapped)
    phase = _eval_form(relation.phase_form, values)
    if phase.denominator != 1:
        raise QDomainError(f"non-integer phase for {relation.name} on {key}")
    norm_pair = None
    if relation.norm_num is not None:
        norm_pair = (HalfInt(_eval_form(relation.norm_num, values)),
                     HalfInt(_eval_form(relation.norm_den, values)))
    return SymmetryDescriptor(
        key=new_key,
        q_flip=relation.q_flip,
        phase=int(phase) % 2,
        q_power=_eval_form(relation.power_form, values),
        norm_pair=norm_pair,
    )


# ---------------------------------------------------------------------------
# special values
# ---------------------------------------------------------------------------

def special_value(key, ctx):
    """Closed-form fast path when the key matches a special pattern.

    Returns None when no pattern applies.  Pattern priority: j=0,
    stretched, stretched-minus-one, antistretched, then the edge-m
    patterns, then m1=m2=m=0.
    """
    if not selection_rules(key):
        return None
    j1, m1, j2, m2, j, m = key.labels()
    if j == 0:
        return _sv_j0(key, ctx)
    if j == j1 + j2:
        return _sv_stretched(key, ctx)
    if j == j1 + j2 - 1:
        return _sv_stretched_minus_one(key, ctx)
    if j == j1 - j2 and j1 >= j2:
        return _sv_antistretched(key, ctx)
    if m == j:
        return _sv_m_eq_j(key, ctx)
    if m2 == j2:
        return _sv_m2_eq_j2(key, ctx)
    if m1 == j1:
        return _sv_m1_eq_j1(key, ctx)
    if m1 == -j1:
        return _sv_m1_eq_minus_j1(key, ctx)
    if m2 == -j2:
        return _sv_m2_eq_minus_j2(key, ctx)
    if m1 == 0 and m2 == 0 and m == 0:
        return _sv_all_m_zero(key, ctx)
    return None


def _sv_j0(key, ctx):
    j1, m1 = key.j1, key.m1
    with ctx.work():
        return (_phase(j1 - m1) * ctx.qpow(_fr(m1))
                / mp.sqrt(qnum(2 * j1 + 1, ctx)))


def _sv_stretched(key, ctx):
    j1, m1, j2, m2, j, m = key.labels()
    with ctx.work():
        rad = (_fact(2 * j1, ctx) * _fact(2 * j2, ctx)
               * _fact(j1 + j2 + m, ctx) * _fact(j1 + j2 - m, ctx)
               / (_fact(2 * j1 + 2 * j2, ctx) * _fact(j1 + m1, ctx)
                  * _fact(j1 - m1, ctx) * _fact(j2 + m2, ctx)
                  * _fact(j2 - m2, ctx)))
        return ctx.qpow(_fr(j1) * _fr(m2) - _fr(j2) * _fr(m1)) * mp.sqrt(rad)


def _sv_stretched_minus_one(key, ctx):
    j1, m1, j2, m2, j, m = key.labels()
    with ctx.work():
        # first bracket factor rederived from the two-term 3F2; it reads
        # [2j1+2j2], not the difference of the spins
        bracket = (qnum(2 * j1 + 2 * j2, ctx) * qnum(j2 - m2, ctx)
                   * ctx.qpow(_fr(j1 + m1))
                   - qnum(2 * j2, ctx) * qnum(j1 + j2 - m, ctx))
        rad = (qnum(2 * j1 + 2 * j2 - 1, ctx) * _fact(2 * j1 - 1, ctx)
               * _fact(2 * j2 - 1, ctx) * _fact(j1 + j2 + m - 1, ctx)
               * _fact(j1 + j2 - m - 1, ctx)
               / (_fact(2 * j1 + 2 * j2, ctx) * _fact(j1 + m1, ctx)
                  * _fact(j1 - m1, ctx) * _fact(j2 + m2, ctx)
                  * _fact(j2 - m2, ctx)))
        expo = _fr(j1) * _fr(m2) - _fr(j2) * _fr(m1) - _fr(j1 + j2)
        return ctx.qpow(expo) * bracket * mp.sqrt(rad)


def _sv_antistretched(key, ctx):
    j1, m1, j2, m2, j, m = key.labels()
    with ctx.work():
        expo = -_fr(j1) * _fr(m2) - _fr(j2) * _fr(m1) - _fr(m2)
        rad = (_fact(2 * j1 - 2 * j2 + 1, ctx) * _fact(2 * j2, ctx)
               * _fact(j1 + m1, ctx) * _fact(j1 - m1, ctx)
               / (_fact(2 * j1 + 1, ctx) * _fact(j1 - j2 - m, ctx)
                  * _fact(j1 - j2 + m, ctx) * _fact(j2 + m2, ctx)
                  * _fact(j2 - m2, ctx)))
        return _phase(j2 + m2) * ctx.qpow(expo) * mp.sqrt(rad)


def _sv_m_eq_j(key, ctx):
    j1, m1, j2, m2, j, m = key.labels()
    with ctx.work():
        expo = (Fraction(1, 2) * _fr(j1 + j2 - j) * _fr(j + j2 - j1 + 1)
                - _fr(j + 1) * _fr(j1 - m1))
        rad = (_fact(2 * j + 1, ctx) * _fact(j1 + m1, ctx) * _fact(j2 + m2, ctx)
               * _fact(j1 + j2 - j, ctx)
               / (_fact(j1 - j2 + j, ctx) * _fact(j2 - j1 + j, ctx)
                  * _fact(j1 + j2 + j + 1, ctx) * _fact(j1 - m1, ctx)
                  * _fact(j2 - m2, ctx)))
        return _phase(j1 - m1) * ctx.qpow(expo) * mp.sqrt(rad)


def _sv_m2_eq_j2(key, ctx):
    j1, m1, j2, m2, j, m = key.labels()
    with ctx.work():
        expo = (_fr(j2) * _fr(j1 - m1)
                - Fraction(1, 2) * _fr(j1 + j2 - j) * _fr(j1 + j2 + j + 1))
        rad = (qnum(2 * j + 1, ctx) * _fact(j + j1 - j2, ctx) * _fact(j + m, ctx)
               * _fact(j1 - m1, ctx) * _fact(2 * j2, ctx)
               / (_fact(j1 + j2 + j + 1, ctx) * _fact(j1 + j2 - j, ctx)
                  * _fact(j + j2 - j1, ctx) * _fact(j - m, ctx)
                  * _fact(j1 + m1, ctx)))
        return _phase(key.j1 + key.j2 - key.j) * ctx.qpow(expo) * mp.sqrt(rad)


def _sv_m1_eq_j1(key, ctx):
    j1, m1, j2, m2, j, m = key.labels()
    with ctx.work():
        expo = (-_fr(j1) * _fr(j2 - m2)
                + Fraction(1, 2) * _fr(j1 + j2 - j) * _fr(j1 + j2 + j + 1))
        rad = (qnum(2 * j + 1, ctx) * _fact(j + j2 - j1, ctx) * _fact(j + m, ctx)
               * _fact(j2 - m2, ctx) * _fact(2 * j1, ctx)
               / (_fact(j1 + j2 + j + 1, ctx) * _fact(j1 + j2 - j, ctx)
                  * _fact(j + j1 - j2, ctx) * _fact(j - m, ctx)
                  * _fact(j2 + m2, ctx)))
        return ctx.qpow(expo) * mp.sqrt(rad)


def _sv_m1_eq_minus_j1(key, ctx):
    j1, m1, j2, m2, j, m = key.labels()
    with ctx.work():
        # the quadratic exponent enters with the minus sign here (the
        # plus-sign variant fails against the 3F2 form and the oracles)
        expo = (_fr(j1) * _fr(j2 + m2)
                - Fraction(1, 2) * _fr(j1 + j2 - j) * _fr(j1 + j2 + j + 1))
        rad = (qnum(2 * j + 1, ctx) * _fact(2 * j1, ctx) * _fact(j2 + m2, ctx)
               * _fact(j - m, ctx) * _fact(j + j2 - j1, ctx)
               / (_fact(j1 + j2 + j + 1, ctx) * _fact(j + j1 - j2, ctx)
                  * _fact(j1 + j2 - j, ctx) * _fact(j + m, ctx)
                  * _fact(j2 - m2, ctx)))
        return _phase(j1 + j2 - j) * ctx.qpow(expo) * mp.sqrt(rad)


def _sv_m2_eq_minus_j2(key, ctx):
    j1, m1, j2, m2, j, m = key.labels()
    with ctx.work():
        # the quadratic exponent enters with the plus sign here (mirror of
        # the m1 = -j1 case)
        expo = (-_fr(j2) * _fr(j1 + m1)
                + Fraction(1, 2) * _fr(j1 + j2 - j) * _fr(j1 + j2 + j + 1))
        rad = (qnum(2 * j + 1, ctx) * _fact(2 * j2, ctx) * _fact(j1 + m1, ctx)
               * _fact(j - m, ctx) * _fact(j + j1 - j2, ctx)
               / (_fact(j1 + j2 + j + 1, ctx) * _fact(j + j2 - j1, ctx)
                  * _fact(j1 + j2 - j, ctx) * _fact(j + m, ctx)
                  * _fact(j1 - m1, ctx)))
        return ctx.qpow(expo) * mp.sqrt(rad)


def _sv_all_m_zero(key, ctx):
    j1, j2, j = key.j1, key.j2, key.j
    if ctx.is_classical:
        return classical_parity_zero_value(j1, j2, j, ctx)
    with ctx.work():
        rad = (qnum(2 * j + 1, ctx) * _fact(j + j1 - j2, ctx)
               * _fact(j + j2 - j1, ctx)
               / (_fact(j1 + j2 + j + 1, ctx) * _fact(j1 + j2 - j, ctx)))
        expo = -Fraction(1, 2) * _fr(j1 + j2 - j) * _fr(j1 + j2 + j + 1)
        # merged-denominator form of [j]!/([j-j2]![j-j1]!) 3F2(..; j-j1+1,
        # j-j2+1 | ..): stays finite when j < max(j1, j2)
        series = _merged_3f2_sum((j - j1 - j2, -j1, -j2), (j - j1, j - j2),
                                 _fr(j1 + j2 + j + 1), ctx)
        return (mp.sqrt(rad) * ctx.qpow(expo) * _phase(j1 + j2 - j)
                * _fact(j, ctx) * series)


def classical_parity_zero_value(j1, j2, j, ctx):
    """Classical (q=1) value of <j1 0, j2 0|j 0> from the Dixon summation."""
    j1, j2, j = halfint(j1).as_int(), halfint(j2).as_int(), halfint(j).as_int()
    total = j1 + j2 + j
    with ctx.work():
        if total % 2 == 1:
            return mpf(0)
        k = total // 2
        head = ((-1) ** (k - j) * mp.factorial(k)
                / (mp.factorial(k - j1) * mp.factorial(k - j2)
                   * mp.factorial(k - j)))
        rad = ((2 * j + 1) * mp.factorial(2 * k - 2 * j1)
               * mp.factorial(2 * k - 2 * j2) * mp.factorial(2 * k - 2 * j)
               / mp.factorial(2 * k + 1))
        return head * mp.sqrt(rad)


# ---------------------------------------------------------------------------
# recurrence relations
# ---------------------------------------------------------------------------

def _value_or_zero(key, ctx, evaluator):
    return evaluator(key, ctx) if selection_rules(key) else ctx.to_mpf(0)


def recurrence_j_residual(key, ctx, evaluator=cgc_racah):
    """Residual of the three-term recurrence in j at fixed magnetic labels.

    The relation is the three-term recurrence of the underlying discrete
    orthogonal polynomial family transported through the normalized
    connection: a coupling coefficient is a fixed sign times
    sqrt(rho(s) delta-x / d_n^2) times a polynomial of degree n = j - m
    at the lattice point s = j2 - m2, and everything except the norm is
    independent of j.  Dividing the polynomial recurrence by sqrt(d_n^2)
    gives

        x(s) C(j) = A_up(j) C(j+1) + B(j) C(j) + A_dn(j) C(j-1)

    with A_up(j) = alpha_n sqrt(d_{n+1}^2/d_n^2) and
    A_dn(j) = gamma_n sqrt(d_{n-1}^2/d_n^2), written below directly in
    the coupling labels.  A published coefficient table for this
    relation could not be reconciled with the values (only its
    m1-dependent part checks out), so the coefficients here come from
    the polynomial route, which is anchored to the norms and the
    brute-force Gram matrix.
    """
    j1, m1, j2, m2, j, m = key.labels()
    if j == 0:
        raise QDomainError("three-term recurrence in j is singular at j=0")
    with ctx.work():
        key_dn = CgcKey(j1, m1, j2, m2, j - 1, m)
        key_up = CgcKey(j1, m1, j2, m2, j + 1, m)
        half = Fraction(1, 2)
        # lattice value x(s) at s = j2 - m2
        x_val = ctx.qpow(_fr(j2 - m2 - 1)) * qnum(j2 - m2, ctx)
        # norm ratio d_n^2 / d_{n-1}^2 expressed at level j (n = j - m)
        def _norm_ratio(jj):
            return (ctx.qpow(-_fr(jj - m))
                    * qnum(jj - j1 + j2, ctx) * qnum(jj + j1 - j2, ctx)
                    * qnum(jj + j1 + j2 + 1, ctx) * qnum(j1 + j2 - jj + 1, ctx)
                    * qnum(2 * jj - 1, ctx)
                    / (qnum(jj - m, ctx) * qnum(jj + m, ctx)
                       * qnum(2 * jj + 1, ctx)))
        b_coef = ctx.to_mpf(0)
        if selection_rules(key_up):
            alpha_n = (ctx.qpow(half * _fr(4 * j2 + j - 3 * m - 1))
                       * qnum(j - m + 1, ctx) * qnum(j + m + 1, ctx)
                       / (qnum(2 * j + 2, ctx) * qnum(2 * j + 1, ctx)))
            b_coef = alpha_n * mp.sqrt(_norm_ratio(j + 1))
        a_coef = ctx.to_mpf(0)
        if j > m and selection_rules(key_dn):
            gamma_n = (ctx.qpow(half * _fr(4 * j2 - j - m - 2))
                       * qnum(j - j1 + j2, ctx) * qnum(j + j1 - j2, ctx)
                       * qnum(j + j1 + j2 + 1, ctx) * qnum(j1 + j2 - j + 1, ctx)
                       / (qnum(2 * j, ctx) * qnum(2 * j + 1, ctx)))
            a_coef = gamma_n / mp.sqrt(_norm_ratio(j))
        d_coef = (-ctx.qpow(-_fr(j + j1 - j2 + 2)) * qnum(j + j1 - j2 + 1, ctx)
                  + ctx.qpow(_fr(2 * j2 - j - m - 2))
                  * qnum(j - m + 1, ctx) * qnum(j + j1 - j2 + 1, ctx)
                  * qnum(j + j1 + j2 + 2, ctx) / qnum(2 * j + 2, ctx))
        if j > m:
            d_coef -= (ctx.qpow(_fr(2 * j2 - j - m - 1))
                       * qnum(j - m, ctx) * qnum(j + j1 - j2, ctx)
                       * qnum(j + j1 + j2 + 1, ctx) / qnum(2 * j, ctx))
        c_dn = _value_or_zero(key_dn, ctx, evaluator)
        c_up = _value_or_zero(key_up, ctx, evaluator)
        c_md = _value_or_zero(key, ctx, evaluator)
        terms = [a_coef * c_dn, b_coef * c_up,
                 (d_coef - x_val) * c_md]
        scale = max(max(abs(t) for t in terms),
                    abs(c_dn), abs(c_up), abs(c_md))
        if scale == 0:
            return mpf(0)
        return abs(sum(terms)) / scale


def recurrence_m_residual(key, ctx, evaluator=cgc_racah):
    """Residual of the recurrence moving one unit between m1 and m2.

    The relation is the product-basis expansion of the raising-lowering
    part of the coupled Casimir element: with Dm(J-)Dm(J+) acting on a
    coupled vector as [j+1/2]^2 - [m+1/2]^2 (because [a][b] equals
    [(a+b)/2]^2 - [(a-b)/2]^2), collecting the four coproduct cross
    terms on a fixed product state gives a three-term relation in
    (m1, m2) at fixed m.  A published variant of this relation carries
    a sign slip on the eigenvalue term and drops a factor q on the
    raising-side coefficient; the coefficients below are rederived from
    the coproduct expansion and vanish to working precision on every
    admissible key.
    """
    j1, m1, j2, m2, j, m = key.labels()
    with ctx.work():
        a_coef = ctx.qinv * mp.sqrt(
            qnum(j1 + m1 + 1, ctx) * qnum(j1 - m1, ctx)
            * qnum(j2 + m2, ctx) * qnum(j2 - m2 + 1, ctx))
        b_coef = ctx.q * mp.sqrt(
            qnum(j1 + m1, ctx) * qnum(j1 - m1 + 1, ctx)
            * qnum(j2 + m2 + 1, ctx) * qnum(j2 - m2, ctx))
        x1 = qnum(j1 - m1, ctx) * qnum(j1 + m1 + 1, ctx)
        x2 = qnum(j2 - m2, ctx) * qnum(j2 + m2 + 1, ctx)
        eig = (qnum(j + HalfInt("1/2"), ctx) ** 2
               - qnum(m + HalfInt("1/2"), ctx) ** 2)
        d_coef = (ctx.qpow(_fr(m)) * x1 + ctx.qpow(-_fr(m)) * x2
                  - ctx.qpow(_fr(m1 - m2)) * eig)
        c_a = _value_or_zero(CgcKey(j1, m1 + 1, j2, m2 - 1, j, m), ctx, evaluator)
        c_b = _value_or_zero(CgcKey(j1, m1 - 1, j2, m2 + 1, j, m), ctx, evaluator)
        c_d = _value_or_zero(key, ctx, evaluator)
        terms = [a_coef * c_a, b_coef * c_b, d_coef * c_d]
        scale = max(max(abs(t) for t in terms),
                    abs(c_a), abs(c_b), abs(c_d))
        if scale == 0:
            return mpf(0)
        return abs(sum(terms)) / scale


# ---------------------------------------------------------------------------
# dispatcher
# ---------------------------------------------------------------------------

ALL_FORMULAS = {
    "sum": cgc_sum,
    "sum_alt": cgc_sum_alt,
    "3f2": cgc_3f2,
    "3f2_rw1": cgc_3f2_rw1,
    "3f2_rw2": cgc_3f2_rw2,
    "3f2_long_equiv": cgc_3f2_long_equiv,
    "racah": cgc_racah,
    "racah_binomial": cgc_racah_binomial,
}


@dataclass(frozen=True)
class CgcValue:
    value: object
    formula: str
    precision: int
    deviation: object = None
    reason: str = None


def compute(key, ctx, mode="default"):
    """Evaluate one coefficient; mode="crosscheck" runs every closed form.

    In crosscheck mode the reported deviation is the maximum pairwise
    difference across all formulas (plus the special-value fast path
    when one applies).
    """
    reason = selection_failure(key)
    if reason is not None:
        return CgcValue(value=ctx.to_mpf(0), formula="selection",
                        precision=ctx.precision, reason=reason)
    if mode == "default":
        return CgcValue(value=cgc_racah(key, ctx), formula="racah",
                        precision=ctx.precision)
    if mode != "crosscheck":
        raise QDomainError(f"unknown mode {mode!r}")
    with ctx.work():
        values = {name: fn(key, ctx) for name, fn in ALL_FORMULAS.items()}
        sv = special_value(key, ctx)
        if sv is not None:
            values["special"] = sv
        vals = list(values.values())
        deviation = max(abs(a - b) for a in vals for b in vals)
        return CgcValue(value=values["racah"], formula="racah",
                        precision=ctx.precision, deviation=deviation)
