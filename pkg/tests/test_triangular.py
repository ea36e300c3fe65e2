import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from superchar.combinatorics import crossings, dimension_weight
from superchar.exact import Cyclotomic
from superchar.groups import support_of
from superchar.theory import scalar_product, schur_check, verify_theory
from superchar.triangular import (BlockSubgroupTheory, CharTriple, closed_value, corank_mod_p, enumerate_triples,
                                  theta_value, tri_kirillov, tri_norm, tri_restrict_superinduce, tri_theory,
                                  value_inputs)
from superchar.unitriangular import ut_theory

GROUPS = [(2, 3), (3, 2), (3, 3)]


def triple(th, D, theta=None):
    theta = tuple(theta or [0] * th.n)
    return next(a for a in th.char_names if list(a.D) == sorted(D) and a.theta == theta)


# -- triples -----------------------------------------------------------------------------

def test_triple_counts():
    chars, classes = enumerate_triples(2, 3)
    assert len(chars) == len(classes) == 5
    assert sum(1 for a in chars if not a.D) == 4
    for p in (2, 3, 5):
        assert len(enumerate_triples(1, p)[0]) == p - 1
    assert len(enumerate_triples(3, 2)[0]) == 5


def test_triple_count_formula():
    # sum over basic D of (p-1)^(n - |supp D|) characters and (p-1)^(n - |supp D|) classes
    from superchar.combinatorics import enumerate_basic_subsets
    for n, p in ((3, 3), (4, 3), (3, 5)):
        want = sum((p - 1) ** (n - len(support_of(D))) for D in enumerate_basic_subsets(n))
        chars, classes = enumerate_triples(n, p)
        assert len(chars) == len(classes) == want


def test_superclass_sizes_t2f3():
    th = tri_theory(2, 3)
    assert sorted(th.classes.sizes) == [1, 2, 3, 3, 3]


# -- xi and induced characters --------------------------------------------------------------

def test_xi_multiplicative():
    th = tri_theory(2, 3)
    G = th.G
    for alpha in th.char_names:
        sub, _ = th.stabilizer_data(alpha)
        assert th.xi_character(alpha, G.identity) == 1
        for a, b in itertools.product(sub.tolist(), repeat=2):
            assert th.xi_character(alpha, G.mul(a, b)) == th.xi_character(alpha, a) * th.xi_character(alpha, b)
    with pytest.raises(ValueError):
        alpha = triple(th, [(1, 2)])
        sub, _ = th.stabilizer_data(alpha)
        outside = next(g for g in range(G.order) if g not in set(sub.tolist()))
        th.xi_character(alpha, outside)


def test_xi_on_torus_is_theta():
    th = tri_theory(2, 3)
    G = th.G
    for alpha in th.char_names:
        if alpha.D:
            continue
        for h in itertools.product((1, 2), repeat=2):
            g = int(G.index_of(np.diag(h)[None])[0])
            assert th.xi_character(alpha, g) == theta_value(alpha.theta, h, 3)


def test_degrees_t2f3():
    th = tri_theory(2, 3)
    alpha = triple(th, [(1, 2)])
    chi = th.characters[th.char_names.index(alpha)]
    sub, _ = th.stabilizer_data(alpha)
    assert chi.degree == 4 == th.G.order // len(sub)
    linear = [chi for a, chi in zip(th.char_names, th.characters) if not a.D]
    assert len(linear) == 4
    assert all(chi.degree == 1 for chi in linear)
    # linear characters factor through the diagonal
    G = th.G
    for chi in linear:
        for g in range(G.order):
            d = int(G.index_of(np.diag(G.diagonal(g))[None])[0])
            assert chi(g) == chi(d)


def test_t3f2_reproduces_ut3f2():
    t = tri_theory(3, 2)
    u = ut_theory(3, 2)
    tt = sorted(tuple(str(chi(r)) for r in t.classes.reps) for chi in t.characters)
    uu = sorted(tuple(str(chi(r)) for r in u.classes.reps) for chi in u.characters)
    assert tt == uu


@pytest.mark.parametrize("n, p", GROUPS)
def test_lambda_independence(n, p):
    th = tri_theory(n, p)
    for alpha in th.char_names:
        base = th.characters[th.char_names.index(alpha)].values
        for lam in th.omega_star(alpha.D):
            assert th.induced(alpha, lam).values == base


@pytest.mark.parametrize("n, p", GROUPS)
def test_theory_axioms(n, p):
    th = tri_theory(n, p)
    assert verify_theory(th.candidate()).passed
    assert schur_check(th.G, th.superclass_labels).passed


# -- the closed value formula ---------------------------------------------------------------

def test_closed_value_examples():
    assert closed_value((0, 0), [(1, 2)], (1, 1), [(1, 2)], 3) == -2
    for q in (2, 3, 5):
        assert closed_value((0, 0, 0), [(1, 3)], (1, 1, 1), [], q) == q * (q - 1) ** 2
    # h outside H(e_D)
    assert closed_value((0, 0), [(1, 2)], (2, 1), [], 3) == 0


@pytest.mark.parametrize("n, p", GROUPS)
def test_closed_value_equals_oracle(n, p):
    th = tri_theory(n, p)
    for alpha, chi in zip(th.char_names, th.characters):
        assert th.closed_character(alpha).values == chi.values
        sub, _ = th.stabilizer_data(alpha)
        assert closed_value(alpha.theta, alpha.D, (1,) * n, [], p) == th.G.order // len(sub)


@pytest.mark.parametrize("n, p", GROUPS)
def test_zero_off_H_of_e(n, p):
    th = tri_theory(n, p)
    for alpha, chi in zip(th.char_names, th.characters):
        for b, r in zip(th.class_names, th.classes.reps):
            if any(b.h[i - 1] != 1 for i in alpha.support):
                assert chi(r) == 0


def test_uncorrected_exponent_differs_on_chains():
    """The uncorrected exponent |D| + |D \\ D'| is off for D containing a chain (i, j), (j, k)."""
    th = tri_theory(3, 3)
    bad = []
    for alpha, chi in zip(th.char_names, th.characters):
        for b, r in zip(th.class_names, th.classes.reps):
            if closed_value(alpha.theta, alpha.D, b.h, b.D, 3, uncorrected=True) != chi(r):
                bad.append(alpha.D)
    assert len(bad) == 5
    assert all(D == ((1, 2), (2, 3)) for D in bad)
    # degree of the chain supercharacter: (q-1)^{|supp D|} q^{d(D)}, not (q-1)^{2|D|}
    alpha = triple(th, [(1, 2), (2, 3)])
    deg = th.characters[th.char_names.index(alpha)].degree
    assert deg == 2 ** 3 * 3 ** dimension_weight(alpha.D)
    assert closed_value(alpha.theta, alpha.D, (1, 1, 1), [], 3, uncorrected=True) == 2 ** 4


def test_uncorrected_and_corrected_agree_without_chains():
    from superchar.combinatorics import enumerate_basic_subsets
    for D in enumerate_basic_subsets(5):
        if len(support_of(D)) == 2 * len(D):
            for Dp in enumerate_basic_subsets(4):
                v = value_inputs(D, (1,) * 5, Dp, 3)
                assert v.s == v.s_star


@given(st.integers(1, 4), st.sampled_from([2, 3]), st.data())
def test_corank_brute(k, p, data):
    M = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=k * k, max_size=k * k))).reshape(k, k)
    kernel = sum(1 for v in itertools.product(range(p), repeat=k) if not (M @ np.array(v) % p).any())
    assert p ** corank_mod_p(M, p) == kernel


# -- Kirillov forms and norms ------------------------------------------------------------------

def test_tri_kirillov_examples():
    th = tri_theory(2, 3)
    alpha = triple(th, [(1, 2)])
    assert tri_kirillov(th, alpha, (1, 1), []) == (4, 4)
    zero = tri_kirillov(th, alpha, (2, 1), [])
    assert zero == (0, 0)
    t = tri_theory(3, 2)
    a = triple(t, [(1, 3)])
    want = closed_value(a.theta, a.D, (1, 1, 1), [(1, 3)], 2)
    assert tri_kirillov(t, a, (1, 1, 1), [(1, 3)]) == (want, want)
    with pytest.raises(ValueError):
        tri_kirillov(th, alpha, (2, 1), [(1, 2)])


@pytest.mark.parametrize("n, p", GROUPS)
def test_tri_kirillov_all(n, p):
    th = tri_theory(n, p)
    for alpha, chi in zip(th.char_names, th.characters):
        for b, r in zip(th.class_names, th.classes.reps):
            assert tri_kirillov(th, alpha, b.h, b.D) == (chi(r), chi(r))


def test_tri_norm_examples():
    th = tri_theory(2, 3)
    alpha = triple(th, [(1, 2)])
    assert tri_norm(th, alpha).passed
    chi = th.characters[th.char_names.index(alpha)]
    assert scalar_product(chi, chi) == 2
    for a, chi in zip(th.char_names, th.characters):
        if not a.D:
            assert scalar_product(chi, chi) == 1


@pytest.mark.parametrize("n, p", GROUPS)
def test_tri_norm_all(n, p):
    th = tri_theory(n, p)
    for alpha in th.char_names:
        assert tri_norm(th, alpha).passed
    if p == 2:
        for alpha, chi in zip(th.char_names, th.characters):
            assert scalar_product(chi, chi) == 2 ** crossings(alpha.D)


# -- restriction and superinduction -----------------------------------------------------------

@pytest.mark.parametrize("p", [2, 3])
def test_block_restriction(p):
    sub = BlockSubgroupTheory(tri_theory(2, p), 3)
    rows, rep = tri_restrict_superinduce(sub, tri_theory(3, p))
    assert rep.passed
    assert all(c >= 0 and c.denominator == 1 for row in rows for c in row)
    # restriction preserves degrees
    for chi, row in zip(tri_theory(3, p).characters, rows):
        assert sum(c * phi.degree for c, phi in zip(row, sub.characters)) == chi.degree


def test_restriction_to_whole_group_is_identity():
    th = tri_theory(2, 3)
    rows, rep = tri_restrict_superinduce(BlockSubgroupTheory(th, 2), th)
    assert rep.passed
    assert rows == [[int(i == j) for j in range(len(rows))] for i in range(len(rows))]


def test_t4f3_value_formula():
    th = tri_theory(4, 3)
    bad = {False: 0, True: 0}
    for alpha, chi in zip(th.char_names, th.characters):
        for b, r in zip(th.class_names, th.classes.reps):
            v = chi(r)
            for u in bad:
                bad[u] += closed_value(alpha.theta, alpha.D, b.h, b.D, 3, uncorrected=u) != v
    assert bad == {False: 0, True: 143}
