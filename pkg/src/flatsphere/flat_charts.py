"""Polygon-chart linear algebra over the 24th cyclotomic field.

A flat sphere with at most one reflex cone angle is cut out of a single
polygon; the side identifications impose one linear constraint on the side
vectors, the surface area is a Hermitian form in the free sides, and the
period lattice projects to a finite-index sublattice of the Gaussian or
Eisenstein lattice.  Everything is computed exactly in Q(zeta_24), which
contains i, omega, and sqrt(3) at once.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import (
    PiValue,
    Signature,
    ValidationError,
    _as_fraction,
    weights_from_signature,
)
from .recursion import vol1

_DEGREE = 8  # minimal polynomial x^8 - x^4 + 1


class UnsupportedChart(ValidationError):
    """More than one reflex angle: no single-polygon chart."""


class UnsupportedLevel(ValidationError):
    """No square or triangular period lattice at this level."""


def _reduce(coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    """Reduce a polynomial in zeta modulo zeta^8 = zeta^4 - 1."""
    coeffs = list(coeffs)
    for k in range(len(coeffs) - 1, _DEGREE - 1, -1):
        c = coeffs[k]
        if c:
            coeffs[k - 4] += c
            coeffs[k - 8] -= c
        coeffs[k] = Fraction(0)
    out = coeffs[:_DEGREE]
    out += [Fraction(0)] * (_DEGREE - len(out))
    return tuple(out)


def _poly_divmod(num: list[Fraction], den: list[Fraction]):
    num = list(num)
    dden = len(den) - 1
    lead = den[-1]
    quot = [Fraction(0)] * max(1, len(num) - dden)
    for k in range(len(num) - 1, dden - 1, -1):
        factor = num[k] / lead
        if factor:
            quot[k - dden] = factor
            for j in range(dden + 1):
                num[k - dden + j] -= factor * den[j]
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return quot, num


def _poly_trim(p: Sequence[Fraction]) -> list[Fraction]:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


class Cyclo24:
    """Element of Q(zeta) with zeta a primitive 24th root of unity."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Fraction]):
        coeffs = [_as_fraction(c) for c in coeffs]
        if len(coeffs) > _DEGREE:
            self.coeffs = _reduce(coeffs)
        else:
            coeffs += [Fraction(0)] * (_DEGREE - len(coeffs))
            self.coeffs = tuple(coeffs)

    @classmethod
    def from_rational(cls, value) -> "Cyclo24":
        return cls([Fraction(value)])

    @classmethod
    def zeta_pow(cls, m: int) -> "Cyclo24":
        m %= 24
        raw = [Fraction(0)] * (m + 1)
        raw[m] = Fraction(1)
        return cls(raw)

    def __add__(self, other):
        other = _coerce_cyclo(other)
        return Cyclo24([a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclo24([-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-_coerce_cyclo(other))

    def __rsub__(self, other):
        return (-self) + _coerce_cyclo(other)

    def __mul__(self, other):
        other = _coerce_cyclo(other)
        prod = [Fraction(0)] * (2 * _DEGREE - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    prod[i + j] += a * b
        return Cyclo24(list(_reduce(prod)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * _coerce_cyclo(other).inverse()

    def __rtruediv__(self, other):
        return _coerce_cyclo(other) * self.inverse()

    def __eq__(self, other) -> bool:
        try:
            other = _coerce_cyclo(other)
        except (ValidationError, TypeError, ValueError):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def inverse(self) -> "Cyclo24":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_24)")
        phi = [Fraction(1), 0, 0, 0, Fraction(-1), 0, 0, 0, Fraction(1)]
        phi = [Fraction(c) for c in phi]
        # extended Euclid in Q[x]: s*self + t*phi = gcd (a nonzero constant)
        r0, r1 = _poly_trim(self.coeffs), phi
        s0, s1 = [Fraction(1)], [Fraction(0)]
        while len(r1) > 1 or r1[0] != 0:
            quot, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, _poly_trim(rem)
            prod = [Fraction(0)] * (len(quot) + len(s1) - 1)
            for i, a in enumerate(quot):
                if a:
                    for j, b in enumerate(s1):
                        if b:
                            prod[i + j] += a * b
            new_s = [Fraction(0)] * max(len(s0), len(prod))
            for i, a in enumerate(s0):
                new_s[i] += a
            for i, a in enumerate(prod):
                new_s[i] -= a
            s0, s1 = s1, _poly_trim(new_s)
        const = r0[0]
        if len(r0) > 1 or const == 0:
            raise ArithmeticError("minimal polynomial is not coprime to element")
        inv = [c / const for c in s0]
        return Cyclo24(inv)

    def __pow__(self, exponent: int) -> "Cyclo24":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CY_ONE
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conj(self) -> "Cyclo24":
        """Complex conjugation: zeta maps to zeta**(-1)."""
        result = Cyclo24([Fraction(0)])
        for k, c in enumerate(self.coeffs):
            if c:
                result = result + c * _CONJ_BASIS[k]
        return result

    def is_real(self) -> bool:
        return self == self.conj()

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValidationError(f"{self!r} is not rational")
        return self.coeffs[0]

    def imag(self) -> "Cyclo24":
        """(z - conj(z)) / (2i), an element of the maximal real subfield."""
        return (self - self.conj()) * _INV_2I

    def __repr__(self) -> str:
        return f"Cyclo24({list(self.coeffs)!r})"


def _coerce_cyclo(value) -> Cyclo24:
    if isinstance(value, Cyclo24):
        return value
    if isinstance(value, float):
        raise ValidationError("floats are not accepted in exact arithmetic")
    return Cyclo24([Fraction(value)])


CY_ZERO = Cyclo24([Fraction(0)])
CY_ONE = Cyclo24([Fraction(1)])
CY_I = Cyclo24.zeta_pow(6)
CY_OMEGA = Cyclo24.zeta_pow(8)
_CONJ_BASIS = [Cyclo24.zeta_pow((-k) % 24) for k in range(_DEGREE)]
_INV_2I = (CY_I + CY_I).inverse()
CY_SQRT3 = Cyclo24.zeta_pow(2) + Cyclo24.zeta_pow(-2)


@dataclass(frozen=True)
class QuadInt:
    """a + b*zeta with zeta = i (Gaussian) or zeta = omega (Eisenstein)."""

    a: int
    b: int
    omega: bool

    def __post_init__(self) -> None:
        if not isinstance(self.a, int) or not isinstance(self.b, int):
            raise ValidationError("quadratic integers need integer parts")

    def norm(self) -> int:
        if self.omega:
            return self.a * self.a - self.a * self.b + self.b * self.b
        return self.a * self.a + self.b * self.b

    def conj(self) -> "QuadInt":
        if self.omega:
            return QuadInt(self.a - self.b, -self.b, True)
        return QuadInt(self.a, -self.b, False)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def _check_ring(self, other: "QuadInt") -> None:
        if self.omega != other.omega:
            raise ValidationError("mixed quadratic integer rings")

    def __add__(self, other: "QuadInt") -> "QuadInt":
        self._check_ring(other)
        return QuadInt(self.a + other.a, self.b + other.b, self.omega)

    def __sub__(self, other: "QuadInt") -> "QuadInt":
        self._check_ring(other)
        return QuadInt(self.a - other.a, self.b - other.b, self.omega)

    def __neg__(self) -> "QuadInt":
        return QuadInt(-self.a, -self.b, self.omega)

    def __mul__(self, other: "QuadInt") -> "QuadInt":
        self._check_ring(other)
        if self.omega:  # omega^2 = -1 - omega
            a = self.a * other.a - self.b * other.b
            b = self.a * other.b + self.b * other.a - self.b * other.b
        else:  # i^2 = -1
            a = self.a * other.a - self.b * other.b
            b = self.a * other.b + self.b * other.a
        return QuadInt(a, b, self.omega)

    def __divmod__(self, other: "QuadInt"):
        self._check_ring(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero quadratic integer")
        numer = self * other.conj()
        n = other.norm()
        qa = round(Fraction(numer.a, n))
        qb = round(Fraction(numer.b, n))
        quotient = QuadInt(qa, qb, self.omega)
        return quotient, self - other * quotient

    def __mod__(self, other: "QuadInt") -> "QuadInt":
        return divmod(self, other)[1]

    def to_cyclo(self) -> Cyclo24:
        gen = CY_OMEGA if self.omega else CY_I
        return Cyclo24.from_rational(self.a) + Fraction(self.b) * gen

    def __str__(self) -> str:
        unit = "w" if self.omega else "i"
        return f"{self.a}{self.b:+}{unit}"


def quadint_gcd(*values: QuadInt) -> QuadInt:
    """Euclidean gcd, defined up to a unit."""
    items = [v for v in values if not v.is_zero()]
    if not items:
        raise ValidationError("gcd of all-zero inputs")
    g = items[0]
    for v in items[1:]:
        a, b = g, v
        while not b.is_zero():
            a, b = b, a % b
        g = a
    return g


def _ring_zeta(d: int) -> QuadInt:
    """The level root of unity zeta_d inside its ring of integers."""
    if d == 2:
        return QuadInt(-1, 0, False)
    if d == 4:
        return QuadInt(0, 1, False)
    if d == 3:
        return QuadInt(0, 1, True)
    if d == 6:
        return QuadInt(1, 1, True)  # e^{i pi/3} = 1 + omega
    raise UnsupportedLevel(f"no period lattice at level {d}")


def _zeta_power(d: int, k: int) -> QuadInt:
    base = _ring_zeta(d)
    result = QuadInt(1, 0, base.omega)
    for _ in range(k % d):
        result = result * base
    return result


def _chart_data(kappa: Signature):
    """Validated and reordered chart data: orders with the unique reflex
    point (if any) moved last, plus the constraint coefficients."""
    d = kappa.level
    if d not in (2, 3, 4, 6):
        raise UnsupportedLevel(f"no period lattice at level {d}")
    if any(k % d == 0 for k in kappa.orders):
        raise ValidationError("chart needs d not dividing any order")
    reflex = [i for i, k in enumerate(kappa.orders) if k >= 0]
    if len(reflex) > 1:
        raise UnsupportedChart(
            f"{len(reflex)} reflex angles; single-polygon charts need at most one")
    order = list(range(kappa.n))
    if reflex:
        order.remove(reflex[0])
        order.append(reflex[0])
    ks = [kappa.orders[i] for i in order]
    one = QuadInt(1, 0, _ring_zeta(d).omega)
    constraint = [one - _zeta_power(d, k) for k in ks[:-1]]
    if any(c.is_zero() for c in constraint):
        raise ValidationError("zero constraint coefficient")
    return d, ks, constraint


def chart_constraint(kappa: Signature) -> list[QuadInt]:
    """Side-identification coefficients 1 - e^{i alpha_k} of the polygon
    chart, as exact Gaussian or Eisenstein integers."""
    return _chart_data(kappa)[2]


@dataclass(frozen=True)
class HermitianForm:
    """Hermitian matrix over Q(zeta_24) representing the area form."""

    entries: tuple[tuple[Cyclo24, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def is_hermitian(self) -> bool:
        n = self.size
        return all(
            self.entries[r][s] == self.entries[s][r].conj()
            for r in range(n) for s in range(n)
        )

    def evaluate(self, z: Sequence[Cyclo24]) -> Cyclo24:
        if len(z) != self.size:
            raise ValidationError("evaluation vector length mismatch")
        total = CY_ZERO
        for r in range(self.size):
            zr = z[r].conj()
            for s in range(self.size):
                total = total + zr * self.entries[r][s] * z[s]
        return total

    def det(self) -> Cyclo24:
        n = self.size
        rows = [list(row) for row in self.entries]
        det = CY_ONE
        for col in range(n):
            pivot_row = next(
                (r for r in range(col, n) if not rows[r][col].is_zero()), None)
            if pivot_row is None:
                return CY_ZERO
            if pivot_row != col:
                rows[col], rows[pivot_row] = rows[pivot_row], rows[col]
                det = -det
            pivot = rows[col][col]
            det = det * pivot
            inv = pivot.inverse()
            for r in range(col + 1, n):
                factor = rows[r][col] * inv
                if factor.is_zero():
                    continue
                for s in range(col, n):
                    rows[r][s] = rows[r][s] - factor * rows[col][s]
        return det


def _vertices(kappa: Signature):
    """Symbolic polygon vertices as Cyclo24 vectors over the free sides."""
    d, ks, constraint = _chart_data(kappa)
    n = len(ks)
    m = n - 2
    step = 24 // d
    inv_last = constraint[-1].to_cyclo().inverse()
    side_vectors = []
    for k in range(m):
        vec = [CY_ZERO] * m
        vec[k] = CY_ONE
        side_vectors.append(vec)
    side_vectors.append(
        [-(constraint[k].to_cyclo() * inv_last) for k in range(m)])

    verts = [[CY_ZERO] * m]
    for i in range(n - 1):
        rot = Cyclo24.zeta_pow(step * ks[i])
        prev = verts[-1]
        mid = [prev[r] - side_vectors[i][r] for r in range(m)]
        verts.append(mid)
        nxt = [mid[r] + rot * side_vectors[i][r] for r in range(m)]
        verts.append(nxt)
    closure = verts.pop()
    if any(not c.is_zero() for c in closure):
        raise ArithmeticError("polygon chart failed to close up")
    return verts


def area_form(kappa: Signature) -> HermitianForm:
    """The Hermitian matrix H with area = z^* H z on the polygon chart.

    Assembled from the signed shoelace area of the glued polygon after
    eliminating the dependent side through the chart constraint.
    """
    verts = _vertices(kappa)
    m = len(verts[0])
    count = len(verts)
    pairing = [[CY_ZERO] * m for _ in range(m)]
    for k in range(count):
        current = verts[k]
        following = verts[(k + 1) % count]
        for r in range(m):
            cr = current[r].conj()
            if cr.is_zero():
                continue
            for s in range(m):
                if following[s].is_zero():
                    continue
                pairing[r][s] = pairing[r][s] + cr * following[s]
    # The vertex recurrence traverses genuine polygons clockwise (checked by
    # the chart-form signature (1, n-3) on all-positive weights), so the area
    # is minus the counterclockwise shoelace sum.
    quarter = (Fraction(-4) * CY_I).inverse()
    entries = tuple(
        tuple((pairing[r][s] - pairing[s][r].conj()) * quarter for s in range(m))
        for r in range(m)
    )
    return HermitianForm(entries)


def lattice_index(constraint: Sequence[QuadInt]) -> int:
    """Index of the projected period lattice in the full quadratic lattice:
    the norm quotient N(c_last) / N(gcd(c_1, ..., c_last))."""
    if any(c.is_zero() for c in constraint):
        raise ValidationError("zero constraint entry")
    last = constraint[-1]
    g = quadint_gcd(*constraint)
    quotient, remainder = divmod(last.norm(), g.norm())
    if remainder:
        raise ArithmeticError("gcd norm does not divide the last norm")
    return quotient


def mv_ratio(kappa: Signature) -> Fraction:
    """Exact ratio of the lattice-normalized volume form to the area-form
    volume form: 1 / (index * Im(zeta)**(n-2) * det H).  May be negative."""
    d, ks, constraint = _chart_data(kappa)
    n = len(ks)
    index = lattice_index(constraint)
    h_det = area_form(kappa).det()
    zeta = CY_I if d in (2, 4) else CY_OMEGA
    denominator = Fraction(index) * zeta.imag() ** (n - 2) * h_det
    value = denominator.inverse()
    if not value.is_rational():
        raise ArithmeticError("volume-form ratio fell outside the rationals")
    return value.rational_value()


def mv_table_entry(kappa: Signature, cache=None) -> PiValue:
    """Lattice-normalized volume of the projectivized stratum:
    (1/d) * ratio * vol1(mu)."""
    mu = weights_from_signature(kappa)
    ratio = mv_ratio(kappa)
    return vol1(mu, cache) * (ratio / kappa.level)


def is_single_polygon(kappa: Signature) -> bool:
    """Does the chart construction apply (at most one reflex angle)?"""
    if kappa.level not in (2, 3, 4, 6):
        return False
    if any(k % kappa.level == 0 for k in kappa.orders):
        return False
    return sum(1 for k in kappa.orders if k >= 0) <= 1
