"""Exact rational weight vectors, integer signatures, and pi-multiples.

Everything here is plain exact arithmetic: weights are `fractions.Fraction`,
volumes are a rational coefficient times a power of pi carried symbolically.
No value-producing path ever touches a float.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

Rational = Fraction


class ValidationError(ValueError):
    """Raised when an input violates a domain invariant."""


def _as_fraction(value) -> Fraction:
    if isinstance(value, float):
        raise ValidationError("floats are not accepted; pass exact rationals")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ValidationError(f"invalid rational {value!r}") from exc


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into an exact rational."""
    return _as_fraction(text.strip())


@dataclass(frozen=True)
class WeightVector:
    """A curvature-weight tuple: n >= 3 rationals, each < 1, summing to 2."""

    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        entries = tuple(_as_fraction(x) for x in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) < 3:
            raise ValidationError("a weight vector needs at least 3 entries")
        bad = [x for x in entries if x >= 1]
        if bad:
            raise ValidationError(f"every weight must be < 1, got {bad[0]}")
        total = sum(entries)
        if total != 2:
            raise ValidationError(f"weights must sum to 2, got {total}")

    @classmethod
    def coerce(cls, value) -> "WeightVector":
        if isinstance(value, WeightVector):
            return value
        return cls(tuple(value))

    @property
    def n(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.entries)

    def __getitem__(self, i: int) -> Fraction:
        return self.entries[i]

    def subset_sum(self, indices: Iterable[int]) -> Fraction:
        return sum((self.entries[i] for i in indices), Fraction(0))

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.entries)


@dataclass(frozen=True)
class Signature:
    """Integer zero/pole orders (k_1, ..., k_n) of a level-d differential.

    Genus-0 constraints: d >= 1, n >= 3, each k_i >= 1 - d, sum(k_i) = -2d.
    """

    orders: tuple[int, ...]
    level: int

    def __post_init__(self) -> None:
        if any(not isinstance(k, int) for k in self.orders):
            raise ValidationError("orders must be integers")
        orders = tuple(self.orders)
        object.__setattr__(self, "orders", orders)
        if self.level < 1:
            raise ValidationError("level d must be >= 1")
        if len(orders) < 3:
            raise ValidationError("a signature needs at least 3 orders")
        if any(k < 1 - self.level for k in orders):
            raise ValidationError(f"every order must be >= 1-d = {1 - self.level}")
        total = sum(orders)
        if total != -2 * self.level:
            raise ValidationError(
                f"orders must sum to -2d = {-2 * self.level}, got {total}"
            )

    @property
    def n(self) -> int:
        return len(self.orders)

    def __str__(self) -> str:
        return ",".join(str(k) for k in self.orders) + f":{self.level}"


@dataclass(frozen=True, eq=False)
class PiValue:
    """An exact value ``coefficient * pi**pi_power``; the power stays symbolic."""

    coefficient: Fraction
    pi_power: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficient", _as_fraction(self.coefficient))
        if not isinstance(self.pi_power, int) or self.pi_power < 0:
            raise ValidationError("pi_power must be a non-negative integer")

    def __eq__(self, other) -> bool:
        if not isinstance(other, PiValue):
            return NotImplemented
        if self.coefficient == 0 and other.coefficient == 0:
            return True
        return (self.coefficient, self.pi_power) == (other.coefficient, other.pi_power)

    def __hash__(self) -> int:
        if self.coefficient == 0:
            return hash((Fraction(0), 0))
        return hash((self.coefficient, self.pi_power))

    def __mul__(self, other):
        if isinstance(other, PiValue):
            return PiValue(self.coefficient * other.coefficient,
                           self.pi_power + other.pi_power)
        return PiValue(self.coefficient * _as_fraction(other), self.pi_power)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.coefficient == 0

    def approx(self) -> float:
        """Floating-point rendering; never used in exact paths."""
        return float(self.coefficient) * math.pi ** self.pi_power

    def __str__(self) -> str:
        if self.coefficient == 0:
            return "0"
        if self.pi_power == 0:
            return str(self.coefficient)
        return f"{self.coefficient}*pi^{self.pi_power}"

    _PATTERN = re.compile(r"^(?P<coeff>-?\d+(?:/\d+)?)(?:\*pi\^(?P<pow>\d+))?$")

    @classmethod
    def parse(cls, text: str) -> "PiValue":
        text = text.strip()
        if text == "0":
            return cls(Fraction(0), 0)
        m = cls._PATTERN.match(text)
        if not m:
            raise ValidationError(f"invalid pi-value {text!r}")
        power = int(m.group("pow")) if m.group("pow") else 0
        return cls(Fraction(m.group("coeff")), power)


def weights_from_signature(kappa: Signature) -> WeightVector:
    """Weights mu_i = -k_i / d of a signature; always a valid weight vector."""
    return WeightVector(tuple(Fraction(-k, kappa.level) for k in kappa.orders))


def minimal_denominator(nu) -> int:
    """Least e >= 1 with e*nu_i integral for all i (lcm of the denominators)."""
    nu = WeightVector.coerce(nu)
    return math.lcm(*(x.denominator for x in nu.entries))


def canonicalize(nu) -> WeightVector:
    """Sort the entries; value-equal vectors get identical memo keys."""
    nu = WeightVector.coerce(nu)
    return WeightVector(tuple(sorted(nu.entries)))


def parse_weights(text: str) -> WeightVector:
    """Parse a comma-separated weight list like ``"2/3,1/3,1/3,1/3,1/3"``."""
    parts = [p for p in text.split(",") if p.strip()]
    return WeightVector(tuple(parse_rational(p) for p in parts))


def parse_signature(text: str, negate_orders: bool = False) -> Signature:
    """Parse ``"k1,k2,...,kn:d"``; with negate_orders, flip each k_i.

    The negated form mirrors the (-k_i) labels used by the reference tables.
    """
    if ":" not in text:
        raise ValidationError("signature syntax is 'k1,k2,...,kn:d'")
    orders_part, _, level_part = text.rpartition(":")
    try:
        level = int(level_part.strip())
        orders = tuple(int(p.strip()) for p in orders_part.split(",") if p.strip())
    except ValueError as exc:
        raise ValidationError(f"invalid signature {text!r}") from exc
    if negate_orders:
        orders = tuple(-k for k in orders)
    return Signature(orders, level)
