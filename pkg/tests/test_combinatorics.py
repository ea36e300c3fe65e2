import itertools
from collections import Counter
from math import comb

import pytest
from hypothesis import given, strategies as st

from superchar.combinatorics import (AdmissiblePair, RiggedPartition, SetPartition, basic_subset, basic_to_partition,
                                     bell, crossings, d_prime, dimension_weight, direct_consequences,
                                     enumerate_admissible_pairs, enumerate_basic_subsets, enumerate_rigged_partitions,
                                     enumerate_set_partitions, irreducible_degree_exponent, is_basic, is_irreducible,
                                     is_multiple_irreducible, maximal_crossings, merge_products, partition_to_basic,
                                     positive_roots, rigged_splits, singular_roots, split_subpartitions, standardize)

SEVEN_ROOT_D = [(1, 3), (3, 6), (2, 4), (4, 5), (5, 7)]


def brute_basic(n):
    roots = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    out = set()
    for r in range(len(roots) + 1):
        for sub in itertools.combinations(roots, r):
            rows = [i for i, _ in sub]
            cols = [j for _, j in sub]
            if len(set(rows)) == len(rows) and len(set(cols)) == len(cols):
                out.add(tuple(sorted(sub)))
    return out


def brute_set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in brute_set_partitions(rest):
        yield [[first]] + part
        for k in range(len(part)):
            yield part[:k] + [[first] + part[k]] + part[k + 1:]


def stirling_bell(n):
    # Bell numbers from Stirling numbers of the second kind
    S = [[0] * (n + 1) for _ in range(n + 1)]
    S[0][0] = 1
    for i in range(1, n + 1):
        for k in range(1, i + 1):
            S[i][k] = k * S[i - 1][k] + S[i - 1][k - 1]
    return sum(S[n])


def brute_crossings(D):
    return sum(1 for (i, j), (k, l) in itertools.permutations(D, 2) if i < k < j < l)


# -- basic subsets ------------------------------------------------------------------

@pytest.mark.parametrize("n", range(1, 7))
def test_basic_subsets_match_brute_force(n):
    got = enumerate_basic_subsets(n)
    assert set(map(tuple, got)) == brute_basic(n)
    assert len(got) == len(set(got))
    assert len(got) == stirling_bell(n) == bell(n)


def test_basic_subset_examples():
    assert len(enumerate_basic_subsets(2)) == 2
    assert len(enumerate_basic_subsets(3)) == 5
    assert len(enumerate_basic_subsets(4)) == 15
    assert enumerate_basic_subsets(3) == [(), ((1, 2),), ((2, 3),), ((1, 3),), ((1, 2), (2, 3))]
    assert not is_basic([(1, 2), (1, 3)])
    with pytest.raises(ValueError):
        basic_subset([(1, 3), (2, 3)])


def test_admissible_pairs_count():
    # sum over D of (p-1)^{|D|}
    for n, p in [(3, 2), (3, 3), (4, 3)]:
        expect = sum((p - 1) ** len(D) for D in brute_basic(n))
        assert len(enumerate_admissible_pairs(n, p)) == expect
    assert len(enumerate_admissible_pairs(3, 3)) == 11


# -- statistics -----------------------------------------------------------------------

def test_crossings_examples():
    assert crossings(SEVEN_ROOT_D) == 3
    assert crossings([(1, 3), (2, 4)]) == 1
    assert crossings([(1, 2), (2, 3)]) == 0


@pytest.mark.parametrize("n", [4, 5, 6])
def test_crossings_brute_force(n):
    for D in brute_basic(n):
        assert crossings(D) == brute_crossings(D)


def test_dimension_weight():
    assert dimension_weight([(1, 3)]) == 1
    assert dimension_weight(SEVEN_ROOT_D) == 5
    assert dimension_weight([]) == 0


def test_singular_roots():
    assert singular_roots((1, 2)) == set()
    assert singular_roots((1, 3)) == {(1, 2), (2, 3)}
    assert singular_roots((1, 4)) == {(1, 2), (2, 4), (1, 3), (3, 4)}


def test_d_prime():
    assert d_prime((1, 3), []) == (0, 1)
    assert d_prime((1, 2), [(1, 2)]) == (0, 0)
    assert d_prime((1, 4), [(2, 3)]) == (1, 1)


@given(st.integers(2, 7), st.data())
def test_d_prime_definition(n, data):
    D = data.draw(st.sampled_from(sorted(brute_basic(n))))
    i = data.draw(st.integers(1, n - 1))
    j = data.draw(st.integers(i + 1, n))
    count = sum(1 for a, b in D if a > i and b < j)
    assert d_prime((i, j), D) == (count, j - i - 1 - count)


# -- crossings structure ---------------------------------------------------------------

def test_maximal_crossing_examples():
    assert maximal_crossings([(1, 2), (2, 3)]) == [] and is_irreducible([(1, 2), (2, 3)])
    mc = maximal_crossings([(1, 3), (2, 4)])
    assert [len(c) - 3 for c in mc] == [1]
    assert not is_multiple_irreducible([(1, 3), (2, 4)])
    mc = maximal_crossings([(1, 3), (2, 4), (3, 5)])
    assert [len(c) - 3 for c in mc] == [2]
    assert is_multiple_irreducible([(1, 3), (2, 4), (3, 5)])
    assert irreducible_degree_exponent([(1, 3), (2, 4), (3, 5)]) == 2


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_irreducible_iff_no_crossings(n):
    for D in brute_basic(n):
        assert is_irreducible(D) == (crossings(D) == 0)
        assert (maximal_crossings(D) == []) == (crossings(D) == 0)


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_maximal_crossings_are_chains(n):
    for D in brute_basic(n):
        Dset = set(D)
        for chain in maximal_crossings(D):
            assert all((chain[s], chain[s + 2]) in Dset for s in range(len(chain) - 2))
            assert list(chain) == sorted(chain)
            # not extendable on either side
            assert not any((a, chain[1]) in Dset and a < chain[0] for a in range(1, n + 1))
            assert not any((chain[-2], b) in Dset and b > chain[-1] for b in range(1, n + 1))


# -- set partitions -----------------------------------------------------------------------

@pytest.mark.parametrize("n", range(0, 7))
def test_set_partitions_match_brute_force(n):
    got = {P.blocks for P in enumerate_set_partitions(n)}
    expect = {SetPartition(n, tuple(map(tuple, b))).blocks for b in brute_set_partitions(range(1, n + 1))}
    assert got == expect
    assert len(enumerate_set_partitions(n)) == stirling_bell(n)


def test_partition_to_basic_example():
    assert partition_to_basic(SetPartition.parse("135|24")) == ((1, 3), (2, 4), (3, 5))
    assert partition_to_basic(SetPartition.parse("1|2|3")) == ()


@pytest.mark.parametrize("n", range(1, 6))
def test_partition_basic_roundtrip(n):
    images = set()
    for P in enumerate_set_partitions(n):
        D = partition_to_basic(P)
        assert is_basic(D)
        assert basic_to_partition(D, n) == P
        images.add(tuple(D))
    assert images == brute_basic(n)


def test_basic_to_partition_rejects_non_basic():
    with pytest.raises(ValueError):
        basic_to_partition([(1, 2), (1, 3)], 3)


def test_standardize():
    assert standardize({2, 4}) == {2: 1, 4: 2}


def test_parse_and_str():
    P = SetPartition.parse("14|2|3")
    assert str(P) == "14|2|3" and P.n == 4
    assert str(SetPartition.parse("{}")) == "{}"
    assert SetPartition.parse("1,10|2,3,4,5,6,7,8,9").n == 10


def test_reference_coproduct_splits():
    counts = Counter((str(a), str(b)) for a, b in split_subpartitions(SetPartition.parse("14|2|3")))
    assert counts == {("14|2|3", "{}"): 1, ("13|2", "1"): 2, ("12", "1|2"): 1, ("1|2", "12"): 1,
                      ("1", "13|2"): 2, ("{}", "14|2|3"): 1}
    assert len(split_subpartitions(SetPartition.parse("14|2|3"))) == 8


@pytest.mark.parametrize("n", range(0, 6))
def test_splits_symmetric(n):
    for P in enumerate_set_partitions(n):
        c = Counter(split_subpartitions(P))
        assert c == Counter((b, a) for a, b in c.elements())
        assert sum(c.values()) == 2 ** len(P.blocks)


def _restrict(R, k):
    left = [tuple(x for x in b if x <= k) for b in R]
    right = [tuple(x - k for x in b if x > k) for b in R]
    return (SetPartition(k, tuple(b for b in left if b)).blocks,
            SetPartition(sum(len(b) for b in right), tuple(b for b in right if b)).blocks)


@pytest.mark.parametrize("k, m", [(1, 1), (2, 1), (1, 2), (2, 2), (3, 2)])
def test_merge_products_definition(k, m):
    for P in enumerate_set_partitions(k):
        for Q in enumerate_set_partitions(m):
            got = {SetPartition(k + m, R).blocks for R in merge_products(P.blocks, Q.blocks, k)}
            expect = {R.blocks for R in enumerate_set_partitions(k + m) if _restrict(R.blocks, k) == (P.blocks, Q.blocks)}
            assert got == expect


# -- rigged partitions ----------------------------------------------------------------------

def test_rigged_counts_examples():
    assert len(enumerate_rigged_partitions(1, 0)) == 1
    assert len(enumerate_rigged_partitions(1, 1)) == 2
    assert len(enumerate_rigged_partitions(2, 1)) == 5


@pytest.mark.parametrize("n, y", [(n, y) for n in range(0, 5) for y in range(0, 3)])
def test_rigged_counts_formula(n, y):
    expect = sum(comb(n, k) * stirling_bell(k) * y ** (n - k) for k in range(n + 1))
    got = enumerate_rigged_partitions(n, y)
    assert len(got) == expect == len(set(got))


def test_rigged_parse():
    R = RiggedPartition.parse("13|4;2:1")
    assert R.blocks == ((1, 3), (4,)) and R.phi == {2: 1} and str(R) == "13|4;2:1"
    assert RiggedPartition.parse(";1:2,2:1").n == 2
    with pytest.raises(ValueError):
        RiggedPartition(3, ((1, 3),), ())
    assert R.to_json() == {"n": 4, "blocks": [[1, 3], [4]], "rigging": {"2": 1}}


def test_direct_consequence_examples():
    a, b = RiggedPartition.parse(";1:1"), RiggedPartition.parse(";1:2")
    assert direct_consequences(a, b) == [RiggedPartition.parse(";1:1,2:2")]
    one = RiggedPartition.parse("1")
    assert sorted(map(str, direct_consequences(one, one))) == ["12", "1|2"]
    assert direct_consequences(a, one) == [RiggedPartition.parse("2;1:1")]


def test_rigged_split_example():
    R = RiggedPartition.parse("13;2:1")
    splits = rigged_splits(R)
    assert len(splits) == 4
    for left, right in splits:
        # the block {1, 3} survives whole in exactly one factor
        assert sum(len(b) == 2 for b in left.blocks + right.blocks) == 1
        assert left.n + right.n == 3


def _rigged_restrict(R, k):
    left = tuple(b for b in (tuple(x for x in b if x <= k) for b in R.blocks) if b)
    right = tuple(b for b in (tuple(x - k for x in b if x > k) for b in R.blocks) if b)
    rl = tuple((i, c) for i, c in R.rigging if i <= k)
    rr = tuple((i - k, c) for i, c in R.rigging if i > k)
    return RiggedPartition(k, left, rl), RiggedPartition(R.n - k, right, rr)


@pytest.mark.parametrize("k, m", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_direct_consequences_definition(k, m):
    y = 1
    for P in enumerate_rigged_partitions(k, y):
        for Q in enumerate_rigged_partitions(m, y):
            got = set(direct_consequences(P, Q))
            expect = {R for R in enumerate_rigged_partitions(k + m, y) if _rigged_restrict(R, k) == (P, Q)}
            assert got == expect


def test_admissible_pair_json():
    a = AdmissiblePair.from_mapping({(1, 2): 2})
    assert a.to_json() == {"D": [[1, 2]], "phi": [2]}
    assert sorted(positive_roots(3)) == [(1, 2), (1, 3), (2, 3)]
