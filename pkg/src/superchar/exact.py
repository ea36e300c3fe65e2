"""Exact arithmetic: prime fields and cyclotomic numbers.

Every character value in this package lives in ``Q(zeta_m)`` and is stored as
an integer coefficient vector over the power basis ``1, z, ..., z^(phi(m)-1)``
together with a positive common denominator.  Nothing here touches floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "FieldElement",
    "field_arithmetic",
    "is_prime",
    "primitive_root",
    "discrete_log_table",
    "cyclotomic_polynomial",
    "cyclotomic_ring",
    "CyclotomicRing",
    "Cyclotomic",
    "session_conductor",
    "additive_character",
    "multiplicative_character",
    "conjugate",
]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldElement:
    """Residue ``value`` modulo the prime ``modulus``."""

    value: int
    modulus: int

    def __post_init__(self):
        if not is_prime(self.modulus):
            raise ValueError(f"modulus {self.modulus} is not prime")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _check(self, other) -> "FieldElement":
        if isinstance(other, int):
            return FieldElement(other, self.modulus)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.modulus != self.modulus:
            raise ValueError(f"modulus mismatch: {self.modulus} vs {other.modulus}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.value + other.value, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.value - other.value, self.modulus)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.value * other.value, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.modulus)

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.modulus}")
        return FieldElement(pow(self.value, -1, self.modulus), self.modulus)

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.modulus})"


def field_arithmetic(a: FieldElement, b: FieldElement | None, op: str) -> FieldElement:
    """Dispatch ``add``, ``mul``, ``inv`` or ``neg`` on field elements."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "neg":
        return -a
    raise ValueError(f"unknown field operation {op!r}")


@lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    """Smallest generator of the multiplicative group of F_p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        return 1
    order = p - 1
    factors = {d for d in range(2, order + 1) if order % d == 0 and is_prime(d)}
    for g in range(2, p):
        if all(pow(g, order // r, p) != 1 for r in factors):
            return g
    raise AssertionError("unreachable")


@lru_cache(maxsize=None)
def discrete_log_table(p: int) -> dict[int, int]:
    """Map ``u -> a`` with ``u = g^a`` for the fixed primitive root ``g``."""
    g = primitive_root(p)
    table = {}
    u = 1
    for a in range(p - 1):
        table[u] = a
        u = u * g % p
    return table


# -- polynomials over Z, coefficient lists low -> high ------------------------

def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divexact(num: Sequence[int], den: Sequence[int]) -> list[int]:
    # den is monic
    num = list(num)
    dn = len(den) - 1
    q = [0] * (len(num) - dn)
    for k in range(len(q) - 1, -1, -1):
        c = num[k + dn]
        q[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise ValueError("conductor must be positive")
    num = [-1] + [0] * (m - 1) + [1]
    den = [1]
    for d in range(1, m):
        if m % d == 0:
            den = _poly_mul(den, cyclotomic_polynomial(d))
    return tuple(_poly_divexact(num, den))


class CyclotomicRing:
    """Arithmetic tables for Q(zeta_m) in the power basis."""

    def __init__(self, m: int):
        self.m = m
        self.poly = cyclotomic_polynomial(m)
        self.degree = len(self.poly) - 1
        # x^k mod Phi_m for 0 <= k < 2m; covers every product and root exponent
        deg = self.degree
        rows = []
        cur = [0] * deg
        cur[0] = 1
        for _ in range(2 * m):
            rows.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for j in range(deg):
                    cur[j] -= top * self.poly[j]
        self.powers = rows
        self.power_matrix = np.array(rows[:m], dtype=object)

    def zeta(self, k: int = 1) -> "Cyclotomic":
        return Cyclotomic._raw(self.m, self.powers[k % self.m], 1)

    def from_root_counts(self, counts: Sequence[int], den: int = 1) -> "Cyclotomic":
        """The number ``(sum_k counts[k] z^k) / den``."""
        deg = self.degree
        acc = [0] * deg
        for k, c in enumerate(counts):
            c = int(c)
            if c:
                row = self.powers[k % self.m]
                for j in range(deg):
                    if row[j]:
                        acc[j] += c * row[j]
        return Cyclotomic(self.m, acc, den)

    def __repr__(self):
        return f"CyclotomicRing({self.m})"


@lru_cache(maxsize=None)
def cyclotomic_ring(m: int) -> CyclotomicRing:
    if m < 1:
        raise ValueError("conductor must be positive")
    return CyclotomicRing(m)


class Cyclotomic:
    """An element of Q(zeta_m): ``sum(coeffs[i] * z^i) / den``.

    The representation is canonical for a fixed conductor: the coefficient
    vector is reduced modulo Phi_m and ``gcd(coeffs, den) == 1`` with
    ``den > 0``.  Numbers of different conductors are compared and combined in
    the ring of the least common multiple.
    """

    __slots__ = ("m", "coeffs", "den")

    def __init__(self, m: int, coeffs: Iterable[int], den: int = 1):
        coeffs = [int(c) for c in coeffs]
        ring = cyclotomic_ring(m)
        if len(coeffs) > ring.degree:
            acc = coeffs[: ring.degree]
            for k in range(ring.degree, len(coeffs)):
                c = coeffs[k]
                if c:
                    row = ring.powers[k] if k < 2 * m else ring.powers[k % m]
                    for j in range(ring.degree):
                        acc[j] += c * row[j]
            coeffs = acc
        elif len(coeffs) < ring.degree:
            coeffs = coeffs + [0] * (ring.degree - len(coeffs))
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            den, coeffs = -den, [-c for c in coeffs]
        g = den
        for c in coeffs:
            g = math.gcd(g, c)
            if g == 1:
                break
        if g > 1:
            den //= g
            coeffs = [c // g for c in coeffs]
        self.m = m
        self.coeffs = tuple(coeffs)
        self.den = den

    @classmethod
    def _raw(cls, m, coeffs, den):
        obj = object.__new__(cls)
        obj.m, obj.coeffs, obj.den = m, tuple(coeffs), den
        return obj

    # -- constructors ---------------------------------------------------------
    @classmethod
    def rational(cls, value, m: int = 1) -> "Cyclotomic":
        f = Fraction(value)
        ring = cyclotomic_ring(m)
        return cls(m, [f.numerator] + [0] * (ring.degree - 1), f.denominator)

    @classmethod
    def root_of_unity(cls, order: int, k: int = 1) -> "Cyclotomic":
        return cyclotomic_ring(order).zeta(k)

    @classmethod
    def coerce(cls, value, m: int = 1) -> "Cyclotomic":
        if isinstance(value, Cyclotomic):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.rational(value, m)
        raise TypeError(f"cannot coerce {type(value).__name__} to Cyclotomic")

    # -- structure ------------------------------------------------------------
    def lift(self, m: int) -> "Cyclotomic":
        """Same number written in Q(zeta_m); ``self.m`` must divide ``m``."""
        if m == self.m:
            return self
        if m % self.m:
            raise ValueError(f"conductor {self.m} does not divide {m}")
        step = m // self.m
        ring = cyclotomic_ring(m)
        acc = [0] * ring.degree
        for i, c in enumerate(self.coeffs):
            if c:
                row = ring.powers[(i * step) % m]
                for j in range(ring.degree):
                    acc[j] += c * row[j]
        return Cyclotomic(m, acc, self.den)

    def _pair(self, other):
        if not isinstance(other, Cyclotomic):
            try:
                other = Cyclotomic.rational(other, self.m)
            except (TypeError, ValueError):
                return None, None
        if other.m == self.m:
            return self, other
        m = math.lcm(self.m, other.m)
        return self.lift(m), other.lift(m)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.coeffs[0], self.den)

    def is_integral(self) -> bool:
        """True iff the number lies in Z[zeta_m] (integer power-basis coords)."""
        return self.den == 1

    def fractions(self) -> list[Fraction]:
        return [Fraction(c, self.den) for c in self.coeffs]

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        d = a.den * b.den // math.gcd(a.den, b.den)
        fa, fb = d // a.den, d // b.den
        return Cyclotomic(a.m, [x * fa + y * fb for x, y in zip(a.coeffs, b.coeffs)], d)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self.m, tuple(-c for c in self.coeffs), self.den)

    def __sub__(self, other):
        if not isinstance(other, (Cyclotomic, int, Fraction)):
            return NotImplemented
        return self + (-Cyclotomic.coerce(other, self.m))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return Cyclotomic(self.m, [c * f.numerator for c in self.coeffs], self.den * f.denominator)
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        ring = cyclotomic_ring(a.m)
        deg = ring.degree
        conv = [0] * (2 * deg - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        conv[i + j] += x * y
        acc = conv[:deg]
        for k in range(deg, len(conv)):
            c = conv[k]
            if c:
                row = ring.powers[k]
                for j in range(deg):
                    acc[j] += c * row[j]
        return Cyclotomic(a.m, acc, a.den * b.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            if f == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / f)
        if isinstance(other, Cyclotomic):
            if other.is_rational():
                return self / other.to_fraction()
            return self * other.inverse()
        return NotImplemented

    def inverse(self) -> "Cyclotomic":
        """Multiplicative inverse via the product of the Galois conjugates."""
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        if self.is_rational():
            return Cyclotomic.rational(1 / self.to_fraction(), self.m)
        m = self.m
        others = Cyclotomic.rational(1, m)
        for k in range(2, m):
            if math.gcd(k, m) == 1:
                others = others * self.galois(k)
        norm = (self * others).to_fraction()
        return others / norm

    def galois(self, k: int) -> "Cyclotomic":
        """Image under the automorphism ``z -> z^k`` (``gcd(k, m) == 1``)."""
        m = self.m
        if math.gcd(k, m) != 1:
            raise ValueError(f"{k} is not a unit modulo {m}")
        ring = cyclotomic_ring(m)
        acc = [0] * ring.degree
        for i, c in enumerate(self.coeffs):
            if c:
                row = ring.powers[(i * k) % m]
                for j in range(ring.degree):
                    acc[j] += c * row[j]
        return Cyclotomic(m, acc, self.den)

    def conjugate(self) -> "Cyclotomic":
        return self.galois(-1 % self.m) if self.m > 2 else self

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = Cyclotomic.rational(1, self.m)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- comparison -----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.to_fraction() == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._pair(other)
        return a.den == b.den and a.coeffs == b.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.to_fraction())
        return hash((self.m, self.coeffs, self.den))

    def __bool__(self):
        return not self.is_zero()

    # -- display --------------------------------------------------------------
    def __str__(self):
        if self.is_rational():
            return str(self.to_fraction())
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            f = Fraction(c, self.den)
            if i == 0:
                terms.append(str(f))
                continue
            mono = f"E({self.m})" if i == 1 else f"E({self.m})^{i}"
            if f == 1:
                terms.append(mono)
            elif f == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{f}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    def __repr__(self):
        return f"Cyclotomic({self})"

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "coeffs": [[f.numerator, f.denominator] for f in self.fractions()],
            "str": str(self),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Cyclotomic":
        fr = [Fraction(n, d) for n, d in data["coeffs"]]
        den = math.lcm(*(f.denominator for f in fr)) if fr else 1
        return cls(data["m"], [f.numerator * (den // f.denominator) for f in fr], den)


def conjugate(c: Cyclotomic) -> Cyclotomic:
    return c.conjugate()


def session_conductor(p: int) -> int:
    """Conductor holding both additive (order p) and multiplicative (order p-1) values."""
    return math.lcm(p, p - 1)


def additive_character(t, p: int | None = None) -> Cyclotomic:
    """``t -> z_p^t``, embedded in the session ring of conductor lcm(p, p-1)."""
    if isinstance(t, FieldElement):
        p, t = t.modulus, t.value
    if p is None:
        raise ValueError("prime modulus required")
    m = session_conductor(p)
    return cyclotomic_ring(m).zeta((m // p) * (t % p))


def multiplicative_character(k: int, u, p: int | None = None) -> Cyclotomic:
    """``theta_k(g^a) = z_(p-1)^(k a)`` for the smallest primitive root ``g``."""
    if isinstance(u, FieldElement):
        p, u = u.modulus, u.value
    if p is None:
        raise ValueError("prime modulus required")
    u %= p
    if u == 0:
        raise ValueError("multiplicative character undefined at 0")
    if not 0 <= k < max(p - 1, 1):
        raise ValueError(f"character index {k} out of range for p={p}")
    m = session_conductor(p)
    a = discrete_log_table(p)[u]
    return cyclotomic_ring(m).zeta((m // (p - 1)) * k * a)
