from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from superchar.combinatorics import RiggedPartition, SetPartition, enumerate_rigged_partitions, enumerate_set_partitions
from superchar.hopf import (NPS, NS, SuperclassAlgebra, algebra, coproduct, counit, dual_operations,
                            hopf_axiom_suite, monomial_expansion, monomial_product_oracle, nps_coproduct,
                            nps_product, ns_coproduct, ns_product, product, scb_iso_check, scu_iso_check)

S = SetPartition.parse


def as_str(terms):
    out = {}
    for k, v in terms.items():
        key = " ⊗ ".join(map(str, k)) if isinstance(k, tuple) else str(k)
        out[key] = v
    return out


# -- NS ---------------------------------------------------------------------------------

def test_ns_product_examples():
    assert as_str(ns_product({S("1"): 1}, {S("1"): 1})) == {"12": 1, "1|2": 1}
    assert as_str(ns_product({S("12"): 1}, {S("1"): 1})) == {"123": 1, "12|3": 1}
    unit = NS().unit_label()
    for P in enumerate_set_partitions(3):
        assert ns_product({unit: 1}, {P: 1}) == {P: 1} == ns_product({P: 1}, {unit: 1})


def test_ns_coproduct_examples():
    unit = NS().unit_label()
    assert ns_coproduct({unit: 1}) == {(unit, unit): 1}
    assert as_str(ns_coproduct({S("12"): 1})) == {"12 ⊗ {}": 1, "{} ⊗ 12": 1}
    assert as_str(ns_coproduct({S("14|2|3"): 1})) == {
        "14|2|3 ⊗ {}": 1, "13|2 ⊗ 1": 2, "12 ⊗ 1|2": 1, "1|2 ⊗ 12": 1, "1 ⊗ 13|2": 2, "{} ⊗ 14|2|3": 1}


def test_counit_law_on_m1():
    alg = NS()
    d = coproduct(alg, {S("1"): 1})
    left = {}
    for (a, b), c in d.items():
        if a == alg.unit_label():
            left[b] = left.get(b, 0) + c
    assert left == {S("1"): 1}
    assert counit(alg, {alg.unit_label(): 3, S("1"): 5}) == 3


def test_ns_coefficients():
    alg = NS()
    for k in range(3):
        for m in range(3):
            for P in alg.basis(k):
                for Q in alg.basis(m):
                    assert set(alg.mul_basis(P, Q).values()) <= {1}
    for n in range(5):
        for P in alg.basis(n):
            cs = alg.comul_basis(P).values()
            assert all(c > 0 and Fraction(c).denominator == 1 for c in cs)
            # ordered splits over 2^(blocks)
            assert sum(cs) == 2 ** len(P.blocks)


# -- NPS --------------------------------------------------------------------------------

def test_nps_examples():
    R = RiggedPartition.parse
    assert as_str(nps_product({R(";1:1"): 1}, {R(";1:1"): 1})) == {";1:1,2:1": 1}
    assert as_str(nps_product({R("1"): 1}, {R(";1:1"): 1})) == {"1;2:1": 1}
    d = nps_coproduct({R("13;2:1"): 1})
    assert len(d) == 4 and all(c == 1 for c in d.values())
    for a, b in d:
        assert a.n + b.n == 3


def test_nps_alphabet_error():
    with pytest.raises(ValueError):
        NPS(1).parse(";1:2")
    with pytest.raises(ValueError):
        nps_product({RiggedPartition.parse(";1:2"): 1}, {RiggedPartition.parse("1"): 1}, y=1)
    with pytest.raises(ValueError):
        NPS(-1)
    with pytest.raises(ValueError):
        algebra("xyz")


def test_nps_y0_is_ns():
    alg = NPS(0)
    for n in range(4):
        assert len(alg.basis(n)) == len(NS().basis(n))


# -- axioms -----------------------------------------------------------------------------------

def test_ns_axioms():
    rep = hopf_axiom_suite(NS(), 4)
    assert rep.passed, rep.failure


@pytest.mark.parametrize("y, n", [(1, 3), (2, 2)])
def test_nps_axioms(y, n):
    rep = hopf_axiom_suite(NPS(y), n)
    assert rep.passed, rep.failure


# -- monomial-expansion oracle --------------------------------------------------------------------

set_partitions = st.integers(0, 3).flatmap(lambda n: st.sampled_from(enumerate_set_partitions(n)))
rigged_partitions = st.integers(0, 2).flatmap(lambda n: st.sampled_from(enumerate_rigged_partitions(n, 1)))


@settings(max_examples=40)
@given(set_partitions, set_partitions)
def test_ns_product_matches_monomials(P, Q):
    assert ns_product({P: 1}, {Q: 1}) == monomial_product_oracle(P, Q)


@settings(max_examples=40)
@given(rigged_partitions, rigged_partitions)
def test_nps_product_matches_monomials(P, Q):
    assert nps_product({P: 1}, {Q: 1}, y=1) == monomial_product_oracle(P, Q)


def test_monomial_expansion_sizes():
    # m_P over L letters has L (L-1) ... (L-b+1) words
    assert len(monomial_expansion(S("12|3"), 3)) == 6
    assert len(monomial_expansion(S("1|2|3"), 2)) == 0


def test_truncated_alphabet_drops_wide_terms():
    full = ns_product({S("1|2"): 1}, {S("1"): 1})
    small = monomial_product_oracle(S("1|2"), S("1"), letters=2)
    assert small == {R: c for R, c in full.items() if len(R.blocks) <= 2}
    assert S("1|2|3") in full


# -- superclass algebras ------------------------------------------------------------------------------

def test_scu_small():
    scu = SuperclassAlgebra("SCU")
    consts = scu.product_constants(1, 1)
    assert {str(R): c for R, c in consts[(S("1"), S("1"))].items()} == {"12": 1, "1|2": 1}
    G2 = scu.grade(2)
    assert G2.z(G2.pos[S("1|2")]) == 2
    with pytest.raises(ValueError):
        SuperclassAlgebra("SCU", p=3)


def test_scb_grade2_labels():
    scb = SuperclassAlgebra("SCB", 3)
    G2 = scb.grade(2)
    assert sorted(map(str, G2.names)) == sorted(map(str, NPS(1).basis(2)))
    assert len(G2.names) == 5


def test_iso_checks():
    assert scu_iso_check(4).passed
    assert scb_iso_check(3, 3).passed
    assert scb_iso_check(2, 5).passed


def test_pairing_and_dual_product():
    scu = SuperclassAlgebra("SCU")
    for n in range(1, 4):
        assert scu.pairing_check(n).passed
    one = S("1")
    assert scu.dual_product(one, one) == scu.dual_product_formula(one, one)
    assert {str(k): v for k, v in scu.dual_product_formula(one, one).items()} == {"1|2": 2}


def test_dual_checks():
    assert dual_operations(3, 2).passed
    assert dual_operations(2, 3).passed
