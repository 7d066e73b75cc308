"""Double factorials, the odd-order volume constants, and two exact
combinatorial identities used as executable checks."""
from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Sequence

from .core import PiValue, ValidationError, _as_fraction
from .partitions import enum_P0


def double_factorial(k: int) -> int:
    """k!! with the convention 0!! = (-1)!! = 1."""
    if k < -1:
        raise ValidationError("double factorial needs k >= -1")
    result = 1
    while k > 1:
        result *= k
        k -= 2
    return result


def v_kontsevich(k: int) -> PiValue:
    """The per-singularity factor k!!/(k+1)!! * pi**k * (pi if k odd else 2)."""
    if k < -1:
        raise ValidationError("v(k) needs k >= -1")
    ratio = Fraction(double_factorial(k), double_factorial(k + 1))
    if k % 2:  # odd, including k = -1
        return PiValue(ratio, k + 1)
    return PiValue(2 * ratio, k)


def identity_n_minus_1(kappa) -> tuple[int, int]:
    """Both sides of the boundary-count identity: the factorial-weighted sum
    over all order-(-2) subsets, against (n-1)!."""
    orders = tuple(getattr(kappa, "orders", kappa))
    n = len(orders)
    lhs = 0
    for block in enum_P0(orders):
        lhs += math.factorial(len(block) - 1) * math.factorial(n - len(block) - 1)
    return lhs, math.factorial(n - 1)


def rising_product(k: int, shift, x):
    """prod_{i=1..k} (x + shift + i); empty product is 1.  Ring-generic."""
    result = 1
    for i in range(1, k + 1):
        result = result * (x + shift + i)
    return result


def f_nab(n: int, a, b, xs: Sequence):
    """Two-sided subset sum of shifted rising products over proper nonempty
    subsets.  Works over any commutative ring containing the inputs."""
    if n < 2 or len(xs) != n:
        raise ValidationError("f_nab needs n = len(xs) >= 2")
    xs = list(xs)
    full = (1 << n) - 1
    sums = [0] * (full + 1)
    sizes = [0] * (full + 1)
    for mask in range(1, full + 1):
        low = mask & -mask
        rest = mask ^ low
        sums[mask] = xs[low.bit_length() - 1] + sums[rest] if rest else xs[
            low.bit_length() - 1]
        sizes[mask] = sizes[rest] + 1
    total = 0
    for mask in range(1, full):
        comp = full ^ mask
        left = rising_product(sizes[mask] - 1, a, sums[mask])
        right = rising_product(sizes[comp] - 1, b, sums[comp])
        total = total + left * right
    return total


def _random_fraction(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-100, 100), rng.randint(1, 100))


def sum_dependence_check(n: int, a, b, trials: int, seed: int = 0) -> bool:
    """True iff f_nab agrees on `trials` random pairs with equal entry sums."""
    if n > 9:
        raise ValidationError("sum_dependence_check is desk-scale: n <= 9")
    a, b = _as_fraction(a), _as_fraction(b)
    rng = random.Random(seed)
    for _ in range(trials):
        xs = [_random_fraction(rng) for _ in range(n)]
        ys = [_random_fraction(rng) for _ in range(n - 1)]
        ys.append(sum(xs) - sum(ys))
        if f_nab(n, a, b, xs) != f_nab(n, a, b, ys):
            return False
    return True


def f_p22_bridge(kappa, minus_ones: int = 0) -> tuple[Fraction, Fraction]:
    """Both sides of the bridge between the factorial identity and the
    shift-2 symmetric function.

    P is the set of positive-order indices plus `minus_ones` (at most two)
    simple-pole indices; the right side is the closed two-term expression in
    q = n - |P|.
    """
    orders = tuple(getattr(kappa, "orders", kappa))
    if not 0 <= minus_ones <= 2:
        raise ValidationError("at most two simple-pole indices may join P")
    n = len(orders)
    p_indices = [i for i in range(n) if orders[i] > 0]
    poles = [i for i in range(n) if orders[i] == -1]
    if len(poles) < minus_ones:
        raise ValidationError("not enough simple poles")
    p_indices += poles[:minus_ones]
    if not p_indices:
        raise ValidationError("P must be nonempty")
    q = n - len(p_indices)

    lhs, _ = identity_n_minus_1(orders)

    p_orders = [Fraction(orders[i]) for i in p_indices]
    rhs = Fraction(math.comb(q, 2) * 2 * math.factorial(n - 3))
    if len(p_orders) >= 2:
        rhs += math.factorial(q) * f_nab(len(p_orders), Fraction(2), Fraction(2),
                                         p_orders)
    return Fraction(lhs), rhs
