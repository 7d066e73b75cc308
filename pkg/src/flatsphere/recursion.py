"""The normalized intersection-number recursion and its specializations.

``a_n`` computes the denominator-free intersection function on weight
vectors; ``j_n`` restores the minimal-denominator power.  The quadratic
(level-2, all-odd) specialization has a closed form and its own two-term
recursion, and the five-point case has an independent evaluation through
the boundary intersection matrix of the five-point stable-curve space.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import MutableMapping, Optional

from .closed_forms import double_factorial
from .core import (
    PiValue,
    Signature,
    ValidationError,
    WeightVector,
    canonicalize,
    minimal_denominator,
    weights_from_signature,
)
from .partitions import enum_T1a, enum_T1b, enum_T2a, enum_T2b

MemoCache = MutableMapping


def a4_closed(nu) -> Fraction:
    """Closed form of the four-point function:
    1/2 - (|d12| + |d13| + |d14|)/4 with dij the pairing differences."""
    nu = WeightVector.coerce(nu)
    if nu.n != 4:
        raise ValidationError("a4_closed needs exactly 4 weights")
    m1, m2, m3, m4 = nu.entries
    total = abs(m1 + m2 - m3 - m4) + abs(m1 + m3 - m2 - m4) + abs(m1 + m4 - m2 - m3)
    return Fraction(1, 2) - total / 4


def _t1a_coeff(mu_bar: Fraction, n: int) -> Fraction:
    return Fraction(n - 3, (n - 1) * (n - 2)) - mu_bar / (n - 2)


def _t1b_coeff(mu_bar: Fraction, n: int) -> Fraction:
    return Fraction(n - 3, (n - 1) * (n - 2)) * mu_bar


def _t2a_coeff(mb1, mb2, n1: int, n2: int, n: int) -> Fraction:
    lead = Fraction(n1 * n2 * (mb1 + mb2) - mb1 * n1 - mb2 * n2, 1)
    return lead / ((n - 1) * (n - 2)) - mb1 * mb2 / (n - 2)


def _t2b_coeff(mb1, mb2, n1: int, n2: int, eps: int, n: int) -> Fraction:
    return Fraction(eps * n1 * n2, (n - 1) * (n - 2)) * mb1 * mb2


def a_n(mu, cache: Optional[MemoCache] = None) -> Fraction:
    """The normalized intersection function on a weight vector.

    Vanishes when any entry is an integer; equals 1 for n = 3 and the
    closed form for n = 4; for n >= 5 it is the four-family recursion with
    denominator-free coefficients.
    """
    mu = WeightVector.coerce(mu)
    if any(x.denominator == 1 for x in mu):
        return Fraction(0)
    key = canonicalize(mu).entries
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            return hit
    n = mu.n
    if n == 3:
        value = Fraction(1)
    elif n == 4:
        value = a4_closed(mu)
    else:
        value = Fraction(0)
        for rec in enum_T1a(mu):
            value += _t1a_coeff(rec.mu_bars[0], n) * a_n(rec.sub_weights[0], cache)
        for rec in enum_T1b(mu):
            value -= _t1b_coeff(rec.mu_bars[0], n) * a_n(rec.sub_weights[0], cache)
        for rec in enum_T2a(mu):
            value -= (
                _t2a_coeff(*rec.mu_bars, *rec.block_sizes, n)
                * a_n(rec.sub_weights[0], cache)
                * a_n(rec.sub_weights[1], cache)
            )
        for rec in enum_T2b(mu):
            value += (
                _t2b_coeff(*rec.mu_bars, *rec.block_sizes, rec.epsilon, n)
                * a_n(rec.sub_weights[0], cache)
                * a_n(rec.sub_weights[1], cache)
            )
    if cache is not None:
        cache[key] = value
    return value


def j_n(nu, cache: Optional[MemoCache] = None) -> Fraction:
    """Integer-valued intersection number: e**(n-3) * a_n with e minimal."""
    nu = WeightVector.coerce(nu)
    e = minimal_denominator(nu)
    return Fraction(e) ** (nu.n - 3) * a_n(nu, cache)


def recursive_rhs_dform(mu, d: int, cache: Optional[MemoCache] = None) -> Fraction:
    """Literal right-hand side of the level-d recursion, as a cross-check.

    Evaluates the d-dependent coefficient table and the d/e power bookkeeping
    verbatim; must equal (d/e)**(n-3) * j_n(mu).  Only defined for n >= 5
    (the boundary expansion degenerates below that), and returns 0 outright
    for integer-entry weights, mirroring the vanishing statement.
    """
    mu = WeightVector.coerce(mu)
    n = mu.n
    if any((d * x).denominator != 1 for x in mu):
        raise ValidationError(f"{d} is not a common denominator of the weights")
    if n < 5:
        raise ValidationError("the literal recursion needs n >= 5")
    if any(x.denominator == 1 for x in mu):
        return Fraction(0)
    dd = Fraction(d)
    total = Fraction(0)
    for rec in enum_T1a(mu):
        m = d * rec.mu_bars[0]
        a_s = Fraction(d * (n - 3), (n - 1) * (n - 2)) - m / (n - 2)
        total += a_s * (dd / rec.min_denoms[0]) ** (n - 4) * j_n(rec.sub_weights[0], cache)
    for rec in enum_T1b(mu):
        m = d * rec.mu_bars[0]
        a_s = Fraction(d * (n - 3), (n - 1) * (n - 2)) * m
        total -= a_s * (dd / rec.min_denoms[0]) ** (n - 5) * j_n(rec.sub_weights[0], cache)
    for rec in enum_T2a(mu):
        m1, m2 = (d * x for x in rec.mu_bars)
        n1, n2 = rec.block_sizes
        a_s = (
            Fraction(d, (n - 1) * (n - 2)) * (n1 * n2 * (m1 + m2) - m1 * n1 - m2 * n2)
            - m1 * m2 / (n - 2)
        )
        e1, e2 = rec.min_denoms
        total -= (
            a_s
            * dd ** (n - 5)
            / (Fraction(e1) ** (n1 - 2) * Fraction(e2) ** (n2 - 2))
            * j_n(rec.sub_weights[0], cache)
            * j_n(rec.sub_weights[1], cache)
        )
    for rec in enum_T2b(mu):
        m1, m2 = (d * x for x in rec.mu_bars)
        n1, n2 = rec.block_sizes
        a_s = Fraction(rec.epsilon * d * n1 * n2, (n - 1) * (n - 2)) * m1 * m2
        e1, e2 = rec.min_denoms
        total += (
            a_s
            * dd ** (n - 6)
            / (Fraction(e1) ** (n1 - 2) * Fraction(e2) ** (n2 - 2))
            * j_n(rec.sub_weights[0], cache)
            * j_n(rec.sub_weights[1], cache)
        )
    return total


def vol1(mu, cache: Optional[MemoCache] = None) -> PiValue:
    """Normalized volume (-1)**(n-3) * pi**(n-2) / (n-2)! times a_n; signed."""
    mu = WeightVector.coerce(mu)
    n = mu.n
    coeff = Fraction((-1) ** (n - 3), math.factorial(n - 2)) * a_n(mu, cache)
    return PiValue(coeff, n - 2)


@dataclass(frozen=True)
class QuadSignature:
    """All-odd orders >= -1 summing to -4 (level-2 strata with simple poles)."""

    orders: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(not isinstance(k, int) for k in self.orders):
            raise ValidationError("orders must be integers")
        orders = tuple(self.orders)
        object.__setattr__(self, "orders", orders)
        if any(k < -1 or k % 2 == 0 for k in orders):
            raise ValidationError("orders must be odd and >= -1")
        if sum(orders) != -4:
            raise ValidationError("orders must sum to -4")

    @classmethod
    def coerce(cls, value) -> "QuadSignature":
        if isinstance(value, QuadSignature):
            return value
        return cls(tuple(value))

    @property
    def n(self) -> int:
        return len(self.orders)


def quad_V(kappa, cache: Optional[MemoCache] = None) -> Fraction:
    """Intersection number of a quadratic stratum, via the generic recursion."""
    kappa = QuadSignature.coerce(kappa)
    mu = weights_from_signature(Signature(kappa.orders, 2))
    return j_n(mu, cache)


def quad_V_closed(kappa) -> Fraction:
    """Closed form (-1)**(n/2) * (n-3)! * prod k!!/(k+1)!!."""
    kappa = QuadSignature.coerce(kappa)
    n = kappa.n
    value = Fraction((-1) ** (n // 2) * math.factorial(n - 3))
    for k in kappa.orders:
        value *= Fraction(double_factorial(k), double_factorial(k + 1))
    return value


def quad_V_recursive(kappa, memo: Optional[MemoCache] = None) -> Fraction:
    """The quadratic two-family recursion, evaluated on integer orders only."""
    kappa = QuadSignature.coerce(kappa)
    n = kappa.n
    if n == 4:
        return Fraction(1)  # only (-1,-1,-1,-1) exists at n = 4
    key = tuple(sorted(kappa.orders))
    if memo is not None:
        hit = memo.get(key)
        if hit is not None:
            return hit
    orders = kappa.orders
    value = Fraction(0)
    # pair of simple poles plus a positive singleton
    for pair in combinations(range(n), 2):
        if orders[pair[0]] != -1 or orders[pair[1]] != -1:
            continue
        rest = sorted(set(range(n)) - set(pair))
        for single in rest:
            k1 = orders[single]
            if k1 <= 0:
                continue
            tail = tuple(orders[i] for i in rest if i != single)
            sub = QuadSignature((k1 - 2, *tail))
            value -= (
                Fraction(2 * (n - 3), (n - 1) * (n - 2))
                * k1
                * quad_V_recursive(sub, memo)
            )
    # two positive singletons paired with blocks summing to -2 with them
    for s1, s2 in combinations(range(n), 2):
        if orders[s1] <= 0 or orders[s2] <= 0:
            continue
        rest = sorted(set(range(n)) - {s1, s2})
        anchor, others = rest[0], rest[1:]
        for size in range(1, len(rest)):
            for tail in combinations(others, size - 1):
                block1 = sorted((anchor, *tail))
                block2 = sorted(set(rest) - set(block1))
                if not block2:
                    continue
                sum1 = sum(orders[i] for i in block1)
                sum2 = sum(orders[i] for i in block2)
                direct = sum1 + orders[s1] == -2 and sum2 + orders[s2] == -2
                swapped = sum1 + orders[s2] == -2 and sum2 + orders[s1] == -2
                if not (direct or swapped):
                    continue
                first, second = (s1, s2) if direct else (s2, s1)
                eps = 2 if orders[s1] == orders[s2] else 1
                n1, n2 = len(block1), len(block2)
                sub1 = QuadSignature(
                    (orders[first] - 2, *(orders[i] for i in block1)))
                sub2 = QuadSignature(
                    (orders[second] - 2, *(orders[i] for i in block2)))
                value += (
                    Fraction(eps * 2 * n1 * n2, (n - 1) * (n - 2))
                    * orders[s1]
                    * orders[s2]
                    * quad_V_recursive(sub1, memo)
                    * quad_V_recursive(sub2, memo)
                )
    if memo is not None:
        memo[key] = value
    return value


def mv_quadratic_aez(kappa) -> PiValue:
    """Masur-Veech volume of an all-odd quadratic stratum in the
    dimension-normalized convention: 2 * pi**(n-2) * prod k!!/(k+1)!!."""
    kappa = QuadSignature.coerce(kappa)
    coeff = Fraction(2)
    for k in kappa.orders:
        coeff *= Fraction(double_factorial(k), double_factorial(k + 1))
    return PiValue(coeff, kappa.n - 2)


def _boundary_pairing(s: frozenset, t: frozenset) -> int:
    if s == t:
        return -1
    if s & t:
        return 0
    return 1


def a5_direct(mu, d: int) -> Fraction:
    """Five-point value through the boundary self-intersection computation.

    Independent of the recursion: expands the tautological divisor in the
    ten boundary classes of the five-point space, pairs them with the
    standard intersection matrix, and corrects by the exceptional
    contribution -r1*r2 for each doubly-heavy degeneration.
    """
    mu = WeightVector.coerce(mu)
    if mu.n != 5:
        raise ValidationError("a5_direct needs exactly 5 weights")
    if any((d * x).denominator != 1 for x in mu):
        raise ValidationError(f"{d} is not a common denominator of the weights")
    pairs = [frozenset(p) for p in combinations(range(5), 2)]

    def coefficient(pair: frozenset) -> Fraction:
        comp = frozenset(range(5)) - pair
        light, heavy = pair, comp
        if mu.subset_sum(light) > mu.subset_sum(heavy):
            light, heavy = heavy, light
        mu_s = mu.subset_sum(heavy) - 1
        return (
            Fraction(d, 12)
            * (len(light) - 1)
            * ((len(heavy) - 1) - 4 * mu_s)
        )

    coeffs = {p: coefficient(p) for p in pairs}
    d_squared = Fraction(0)
    for s in pairs:
        for t in pairs:
            inter = _boundary_pairing(s, t)
            if inter:
                d_squared += coeffs[s] * coeffs[t] * inter

    exceptional = Fraction(0)
    for single in range(5):
        rest = sorted(set(range(5)) - {single})
        anchor, others = rest[0], rest[1:]
        for partner in others:
            block1 = (anchor, partner)
            block2 = tuple(i for i in others if i != partner)
            w1, w2 = mu.subset_sum(block1), mu.subset_sum(block2)
            if w1 <= 1 or w2 <= 1:
                continue
            r1 = d * (w1 - 1)
            r2 = d * (w2 - 1)
            exceptional -= r1 * r2

    return (d_squared + exceptional) / Fraction(d) ** 2


def enumerate_odd_signatures(n: int, max_order: int = 9) -> list[QuadSignature]:
    """All odd signatures with n entries in [-1, max_order], up to reordering."""
    if n % 2 or n < 4:
        return []
    out = []

    def descend(slots: int, remaining: int, lo: int, acc: tuple[int, ...]):
        if slots == 0:
            if remaining == 0:
                out.append(QuadSignature(acc + (-1,) * (n - len(acc))))
            return
        k = lo
        while k <= min(remaining - (slots - 1), max_order):
            descend(slots - 1, remaining - k, k, acc + (k,))
            k += 2

    for positives in range(0, n - 3):
        # q entries equal to -1, the rest positive odd summing to q - 4
        q = n - positives
        target = q - 4
        if positives == 0:
            if n == 4:
                out.append(QuadSignature((-1, -1, -1, -1)))
            continue
        if target < positives:  # each positive is >= 1
            continue
        descend(positives, target, 1, ())
    return out
