import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from superchar.exact import (Cyclotomic, FieldElement, additive_character, conjugate, cyclotomic_polynomial,
                             cyclotomic_ring, field_arithmetic, multiplicative_character, primitive_root,
                             session_conductor)


def to_complex(c: Cyclotomic) -> complex:
    z = cmath.exp(2j * math.pi / c.m)
    return sum(float(Fraction(a, c.den)) * z**i for i, a in enumerate(c.coeffs))


# -- prime fields ------------------------------------------------------------------

def test_field_examples():
    assert field_arithmetic(FieldElement(2, 3), FieldElement(2, 3), "add") == FieldElement(1, 3)
    assert field_arithmetic(FieldElement(2, 5), None, "inv") == FieldElement(3, 5)
    with pytest.raises(ZeroDivisionError):
        field_arithmetic(FieldElement(0, 2), None, "inv")
    assert field_arithmetic(FieldElement(1, 7), None, "neg").value == 6


def test_field_errors():
    with pytest.raises(ValueError):
        FieldElement(1, 4)
    with pytest.raises(ValueError):
        FieldElement(1, 3) + FieldElement(1, 5)
    with pytest.raises(ValueError):
        field_arithmetic(FieldElement(1, 3), FieldElement(1, 3), "pow")


@given(st.sampled_from([2, 3, 5, 7, 11]), st.integers(), st.integers())
def test_field_matches_integer_arithmetic(p, a, b):
    x, y = FieldElement(a, p), FieldElement(b, p)
    assert (x + y).value == (a + b) % p
    assert (x * y).value == (a * b) % p
    if b % p:
        assert ((x / y) * y) == x


def test_primitive_roots():
    assert [primitive_root(p) for p in (2, 3, 5, 7, 11, 13)] == [1, 2, 2, 3, 2, 2]


# -- cyclotomic polynomials ----------------------------------------------------------

@pytest.mark.parametrize("m, coeffs", [(1, (-1, 1)), (2, (1, 1)), (3, (1, 1, 1)), (6, (1, -1, 1)),
                                       (4, (1, 0, 1)), (12, (1, 0, -1, 0, 1))])
def test_cyclotomic_polynomials(m, coeffs):
    assert cyclotomic_polynomial(m) == coeffs


@pytest.mark.parametrize("m", range(1, 25))
def test_cyclotomic_polynomial_roots(m):
    # independent check: the primitive m-th roots of unity are exactly the roots
    poly = cyclotomic_polynomial(m)
    assert len(poly) - 1 == sum(1 for k in range(1, m + 1) if math.gcd(k, m) == 1)
    for k in range(1, m + 1):
        if math.gcd(k, m) == 1:
            z = cmath.exp(2j * math.pi * k / m)
            assert abs(sum(c * z**i for i, c in enumerate(poly))) < 1e-9


# -- characters ------------------------------------------------------------------------

def test_additive_character_examples():
    assert additive_character(1, 2) == -1
    assert additive_character(FieldElement(1, 3)) == Cyclotomic.root_of_unity(3)
    assert sum((additive_character(t, 3) for t in range(3)), Cyclotomic.rational(0)) == 0


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_additive_character_sums(p):
    for c in range(p):
        total = sum((additive_character(c * t, p) for t in range(p)), Cyclotomic.rational(0))
        assert total == (p if c == 0 else 0)


@given(st.sampled_from([2, 3, 5, 7]), st.integers(), st.integers())
def test_additive_character_homomorphism(p, s, t):
    assert additive_character(s + t, p) == additive_character(s, p) * additive_character(t, p)


def test_multiplicative_character_examples():
    assert multiplicative_character(1, 2, 3) == -1
    assert multiplicative_character(0, 2, 3) == 1
    assert multiplicative_character(1, 4, 5) == -1
    with pytest.raises(ValueError):
        multiplicative_character(1, 0, 5)
    with pytest.raises(ValueError):
        multiplicative_character(4, 1, 5)


@given(st.sampled_from([3, 5, 7, 11]), st.data())
def test_multiplicative_character_homomorphism(p, data):
    k = data.draw(st.integers(0, p - 2))
    u = data.draw(st.integers(1, p - 1))
    v = data.draw(st.integers(1, p - 1))
    lhs = multiplicative_character(k, u * v, p)
    assert lhs == multiplicative_character(k, u, p) * multiplicative_character(k, v, p)
    # numeric cross-check against the discrete logarithm by brute force
    g = primitive_root(p)
    a = next(a for a in range(p - 1) if pow(g, a, p) == u)
    assert abs(to_complex(multiplicative_character(k, u, p)) - cmath.exp(2j * math.pi * k * a / (p - 1))) < 1e-9


# -- cyclotomic arithmetic --------------------------------------------------------------

CONDUCTORS = [1, 2, 3, 4, 6, 10, 12]


@st.composite
def cyclotomics(draw, m=None):
    m = m or draw(st.sampled_from(CONDUCTORS))
    deg = cyclotomic_ring(m).degree
    coeffs = draw(st.lists(st.integers(-6, 6), min_size=deg, max_size=deg))
    den = draw(st.integers(1, 5))
    return Cyclotomic(m, coeffs, den)


@given(cyclotomics(), cyclotomics(), cyclotomics())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(cyclotomics())
def test_canonical_zero(a):
    z = a - a
    assert z.is_zero() and z.den == 1 and not any(z.coeffs)


@given(cyclotomics(), cyclotomics())
def test_numeric_agreement(a, b):
    assert abs(to_complex(a * b) - to_complex(a) * to_complex(b)) < 1e-6
    assert abs(to_complex(a + b) - to_complex(a) - to_complex(b)) < 1e-6


@given(cyclotomics(m=12), cyclotomics(m=12))
def test_conjugate_is_involutive_automorphism(a, b):
    assert conjugate(conjugate(a)) == a
    assert conjugate(a * b) == conjugate(a) * conjugate(b)
    assert conjugate(a + b) == conjugate(a) + conjugate(b)
    assert abs(to_complex(conjugate(a)) - to_complex(a).conjugate()) < 1e-6


@given(cyclotomics())
def test_norm_form_trace_nonnegative(a):
    n = a * conjugate(a)
    m = n.m
    trace = sum((n.galois(k) for k in range(1, m + 1) if math.gcd(k, m) == 1), Cyclotomic.rational(0, m))
    assert trace.is_rational() and trace.to_fraction() >= 0


@given(cyclotomics())
def test_inverse(a):
    if not a.is_zero():
        assert a * a.inverse() == 1


def test_conjugate_examples():
    z3 = Cyclotomic.root_of_unity(3)
    assert conjugate(z3) == z3 * z3
    assert conjugate(Cyclotomic.rational(Fraction(7, 2))) == Fraction(7, 2)


def test_cross_conductor_equality():
    z3 = Cyclotomic.root_of_unity(3)
    assert z3 == Cyclotomic.root_of_unity(6, 2)
    assert z3.lift(6) == z3
    assert Cyclotomic.root_of_unity(4) ** 2 == -1


@given(cyclotomics())
def test_json_roundtrip(a):
    data = a.to_json()
    assert set(data) == {"m", "coeffs", "str"}
    assert Cyclotomic.from_json(data) == a


def test_session_conductor():
    assert session_conductor(2) == 2
    assert session_conductor(3) == 6
    assert session_conductor(5) == 20
