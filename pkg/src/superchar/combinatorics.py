"""Roots, basic subsets, set partitions and rigged partitions.

Roots are plain tuples ``(i, j)`` with ``1 <= i < j <= n`` (1-based, matrix
positions).  A basic subset is a sorted tuple of roots with at most one root
in each row and each column.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

Root = tuple[int, int]
BasicSubset = tuple[Root, ...]

__all__ = [
    "Root",
    "BasicSubset",
    "positive_roots",
    "is_basic",
    "basic_subset",
    "basic_key",
    "pair_key",
    "enumerate_basic_subsets",
    "AdmissiblePair",
    "enumerate_admissible_pairs",
    "crossings",
    "dimension_weight",
    "singular_roots",
    "d_prime",
    "support",
    "maximal_crossings",
    "is_irreducible",
    "is_multiple_irreducible",
    "irreducible_degree_exponent",
    "bell",
    "SetPartition",
    "enumerate_set_partitions",
    "partition_to_basic",
    "basic_to_partition",
    "standardize",
    "split_subpartitions",
    "RiggedPartition",
    "enumerate_rigged_partitions",
    "rigged_splits",
    "direct_consequences",
    "merge_products",
]


# -- roots and basic subsets -------------------------------------------------

def positive_roots(n: int) -> list[Root]:
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def is_basic(roots: Iterable[Root]) -> bool:
    rows, cols = set(), set()
    for i, j in roots:
        if not i < j or i in rows or j in cols:
            return False
        rows.add(i)
        cols.add(j)
    return True


def basic_subset(roots: Iterable[Root]) -> BasicSubset:
    """Validate and canonicalise a collection of roots."""
    D = tuple(sorted(tuple(r) for r in roots))
    if len(set(D)) != len(D) or not is_basic(D):
        raise ValueError(f"{D} is not a basic subset")
    return D


def basic_key(D: Iterable[Root]):
    """Canonical ordering: by size, then by heights ``j - i`` and rows."""
    D = list(D)
    return (len(D), sorted((j - i, i) for i, j in D))


def enumerate_basic_subsets(n: int) -> list[BasicSubset]:
    """All rook placements on the positive roots of size n, in canonical order."""
    roots = positive_roots(n)
    out: list[BasicSubset] = []

    def extend(start: int, chosen: list[Root], rows: set, cols: set):
        out.append(tuple(chosen))
        for k in range(start, len(roots)):
            i, j = roots[k]
            if i in rows or j in cols:
                continue
            chosen.append((i, j))
            rows.add(i)
            cols.add(j)
            extend(k + 1, chosen, rows, cols)
            chosen.pop()
            rows.discard(i)
            cols.discard(j)

    extend(0, [], set(), set())
    return sorted(out, key=basic_key)


@dataclass(frozen=True, order=True)
class AdmissiblePair:
    """A basic subset ``D`` with nonzero labels ``phi(alpha)`` in F_p."""

    D: BasicSubset
    labels: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "D", tuple(tuple(r) for r in self.D))
        if not self.labels:
            object.__setattr__(self, "labels", (1,) * len(self.D))
        if tuple(sorted(self.D)) != self.D or not is_basic(self.D):
            raise ValueError(f"{self.D} is not a sorted basic subset")
        if len(self.labels) != len(self.D) or any(c == 0 for c in self.labels):
            raise ValueError("phi must assign a nonzero label to every root of D")

    @property
    def phi(self) -> dict[Root, int]:
        return dict(zip(self.D, self.labels))

    @classmethod
    def from_mapping(cls, phi: Mapping[Root, int]) -> "AdmissiblePair":
        D = basic_subset(phi)
        return cls(D, tuple(phi[r] for r in D))

    def __str__(self):
        if not self.D:
            return "{}"
        return "{" + ", ".join(f"({i},{j}):{c}" for (i, j), c in zip(self.D, self.labels)) + "}"

    def to_json(self):
        return {"D": [list(r) for r in self.D], "phi": list(self.labels)}


def pair_key(pair: AdmissiblePair):
    order = sorted(range(len(pair.D)), key=lambda k: (pair.D[k][1] - pair.D[k][0], pair.D[k][0]))
    return basic_key(pair.D), tuple(pair.labels[k] for k in order)


def enumerate_admissible_pairs(n: int, p: int) -> list[AdmissiblePair]:
    out = []
    for D in enumerate_basic_subsets(n):
        for labels in itertools.product(range(1, p), repeat=len(D)):
            out.append(AdmissiblePair(D, labels))
    return out


def crossings(D: Iterable[Root]) -> int:
    """Number of pairs (i,j), (k,l) in D with i < k < j < l."""
    D = list(D)
    return sum(
        1
        for (i, j), (k, l) in itertools.permutations(D, 2)
        if i < k < j < l
    )


def dimension_weight(D: Iterable[Root]) -> int:
    return sum(j - i - 1 for i, j in D)


def singular_roots(alpha: Root) -> set[Root]:
    i, j = alpha
    return {(i, l) for l in range(i + 1, j)} | {(l, j) for l in range(i + 1, j)}


def d_prime(alpha: Root, D_prime: Iterable[Root]) -> tuple[int, int]:
    """``(|D'(i,j)|, j - i - 1 - |D'(i,j)|)`` for roots strictly inside alpha."""
    i, j = alpha
    count = sum(1 for (r, c) in D_prime if r > i and c < j)
    return count, j - i - 1 - count


def support(D: Iterable[Root]) -> frozenset[int]:
    return frozenset(x for r in D for x in r)


def maximal_crossings(D: Iterable[Root]) -> list[tuple[int, ...]]:
    """Maximal chains ``i_0 < ... < i_{k+2}`` with every ``(i_s, i_{s+2})`` in D.

    Chains are returned as index tuples; the length of a chain with ``k + 3``
    indices is ``k`` (a single crossing has length 1).
    """
    D = list(D)
    partner = {i: j for i, j in D}
    back = {j: i for i, j in D}
    chains = []
    for i0, i1 in itertools.combinations(sorted(partner), 2):
        seq = [i0, i1]
        while True:
            nxt = partner.get(seq[-2])
            if nxt is None or nxt <= seq[-1]:
                break
            seq.append(nxt)
        if len(seq) < 4:
            continue
        # skip chains that extend to the left
        prev = back.get(seq[1])
        if prev is not None and prev < seq[0]:
            continue
        chains.append(tuple(seq))
    return sorted(chains)


def is_irreducible(D: Iterable[Root]) -> bool:
    return crossings(D) == 0


def is_multiple_irreducible(D: Iterable[Root]) -> bool:
    return all((len(ch) - 3) % 2 == 0 for ch in maximal_crossings(D))


def irreducible_degree_exponent(D: Iterable[Root]) -> int | None:
    """``e = d(D) - c(D)/2`` when every maximal crossing has even length."""
    D = list(D)
    if not is_multiple_irreducible(D):
        return None
    return dimension_weight(D) - crossings(D) // 2


# -- set partitions ----------------------------------------------------------

def bell(n: int) -> int:
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def _canon_blocks(blocks: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    bs = [tuple(sorted(b)) for b in blocks]
    if any(not b for b in bs):
        raise ValueError("blocks must be nonempty")
    return tuple(sorted(bs))


def _parse_blocks(text: str) -> tuple[tuple[int, ...], ...]:
    """``"13|2"`` or ``"1,10|2"`` to a tuple of blocks."""
    text = text.strip()
    if text in ("", "{}"):
        return ()
    sep = "," if "," in text else None
    blocks = []
    for part in text.split("|"):
        part = part.strip()
        if not part:
            continue
        if sep:
            blocks.append(tuple(int(x) for x in part.split(sep) if x.strip()))
        else:
            blocks.append(tuple(int(ch) for ch in part))
    return tuple(blocks)


@dataclass(frozen=True, order=True)
class SetPartition:
    """A set partition of ``[n]``; blocks sorted by their least element."""

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = _canon_blocks(self.blocks)
        flat = sorted(x for b in blocks for x in b)
        if flat != list(range(1, self.n + 1)):
            raise ValueError(f"{blocks} is not a set partition of [{self.n}]")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def parse(cls, text: str) -> "SetPartition":
        text = text.strip()
        if text in ("", "{}", "0", "empty"):
            return cls(0, ())
        blocks = _parse_blocks(text)
        n = max((x for b in blocks for x in b), default=0)
        return cls(n, blocks)

    def __str__(self):
        if self.n == 0:
            return "{}"
        joiner = "," if self.n > 9 else ""
        return "|".join(joiner.join(str(x) for x in b) for b in self.blocks)

    def __len__(self):
        return len(self.blocks)


def enumerate_set_partitions(n: int) -> list[SetPartition]:
    out: list[list[list[int]]] = [[]]
    for x in range(1, n + 1):
        nxt = []
        for blocks in out:
            for k in range(len(blocks)):
                nb = [list(b) for b in blocks]
                nb[k].append(x)
                nxt.append(nb)
            nxt.append([list(b) for b in blocks] + [[x]])
        out = nxt
    return sorted(SetPartition(n, tuple(tuple(b) for b in bl)) for bl in out)


def partition_to_basic(P: SetPartition) -> BasicSubset:
    """Roots joining consecutive elements of each block."""
    D = [(a, b) for blk in P.blocks for a, b in zip(blk, blk[1:])]
    return tuple(sorted(D))


def basic_to_partition(D: Iterable[Root], n: int) -> SetPartition:
    D = list(D)
    if not is_basic(D):
        raise ValueError(f"{D} is not a basic subset")
    if any(j > n for _, j in D):
        raise ValueError(f"{D} does not fit in [{n}]")
    partner = dict(D)
    heads = set(range(1, n + 1)) - {j for _, j in D}
    blocks = []
    for h in sorted(heads):
        blk = [h]
        while blk[-1] in partner:
            blk.append(partner[blk[-1]])
        blocks.append(tuple(blk))
    return SetPartition(n, tuple(blocks))


def standardize(A: Iterable[int]) -> dict[int, int]:
    """Order preserving relabelling of A onto ``1..|A|``."""
    return {a: k for k, a in enumerate(sorted(A), start=1)}


def _std_blocks(blocks: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    st = standardize(x for b in blocks for x in b)
    return tuple(tuple(st[x] for x in b) for b in blocks)


def split_subpartitions(P: SetPartition) -> list[tuple[SetPartition, SetPartition]]:
    """Every ordered decomposition ``P = P1 + P2``, standardised.

    Repeated standardised pairs are kept, so the list length is ``2**len(P)``.
    """
    out = []
    k = len(P.blocks)
    for mask in range(1 << k):
        left = [b for t, b in enumerate(P.blocks) if mask >> t & 1]
        right = [b for t, b in enumerate(P.blocks) if not mask >> t & 1]
        L = SetPartition(sum(map(len, left)), _std_blocks(left))
        R = SetPartition(sum(map(len, right)), _std_blocks(right))
        out.append((L, R))
    return out


def merge_products(blocks_p, blocks_q, k: int) -> list[tuple[tuple[int, ...], ...]]:
    """Block systems R with R meet ([k]|rest) = (P | Q shifted by k).

    Each block of P merges with at most one block of Q and vice versa.
    """
    Q = [tuple(x + k for x in b) for b in blocks_q]
    P = list(blocks_p)
    out = []

    def rec(i: int, used: frozenset, acc: list):
        if i == len(P):
            rest = [Q[j] for j in range(len(Q)) if j not in used]
            out.append(_canon_blocks(acc + rest))
            return
        rec(i + 1, used, acc + [P[i]])
        for j in range(len(Q)):
            if j not in used:
                rec(i + 1, used | {j}, acc + [P[i] + Q[j]])

    rec(0, frozenset(), [])
    return out


# -- rigged partitions -------------------------------------------------------

@dataclass(frozen=True, order=True)
class RiggedPartition:
    """Partition of a subset of ``[n]`` plus colour labels on the remaining points."""

    n: int
    blocks: tuple[tuple[int, ...], ...]
    rigging: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        blocks = _canon_blocks(self.blocks) if self.blocks else ()
        rig = tuple(sorted((int(i), int(c)) for i, c in dict(self.rigging).items()))
        supp = [x for b in blocks for x in b]
        if len(set(supp)) != len(supp):
            raise ValueError("blocks overlap")
        rest = sorted(set(range(1, self.n + 1)) - set(supp))
        if [i for i, _ in rig] != rest or any(x < 1 or x > self.n for x in supp):
            raise ValueError("rigging must label exactly the points outside the blocks")
        if any(c < 1 for _, c in rig):
            raise ValueError("rigging labels are 1-based")
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "rigging", rig)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(x for b in self.blocks for x in b)

    @property
    def phi(self) -> dict[int, int]:
        return dict(self.rigging)

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "RiggedPartition":
        """``"13|4;2:1"`` is P = 13|4 with point 2 coloured 1."""
        text = text.strip()
        part, _, rig = text.partition(";")
        blocks = _parse_blocks(part)
        rigging = {}
        for item in rig.split(","):
            item = item.strip()
            if item:
                i, c = item.split(":")
                rigging[int(i)] = int(c)
        top = max([x for b in blocks for x in b] + list(rigging), default=0)
        return cls(n if n is not None else top, blocks, tuple(rigging.items()))

    def __str__(self):
        joiner = "," if self.n > 9 else ""
        left = "|".join(joiner.join(str(x) for x in b) for b in self.blocks)
        if not self.rigging:
            return left or "{}"
        return f"{left};" + ",".join(f"{i}:{c}" for i, c in self.rigging)

    def to_json(self):
        return {"n": self.n, "blocks": [list(b) for b in self.blocks],
                "rigging": {str(i): c for i, c in self.rigging}}


def enumerate_rigged_partitions(n: int, y: int) -> list[RiggedPartition]:
    out = []
    points = range(1, n + 1)
    for r in range(n + 1):
        for supp in itertools.combinations(points, r):
            rest = [x for x in points if x not in supp]
            if rest and y == 0:
                continue
            st = {k: a for k, a in enumerate(supp, start=1)}
            for P in enumerate_set_partitions(r):
                blocks = tuple(tuple(st[x] for x in b) for b in P.blocks)
                for labels in itertools.product(range(1, y + 1), repeat=len(rest)):
                    out.append(RiggedPartition(n, blocks, tuple(zip(rest, labels))))
    return sorted(out)


def _std_rigged(blocks, rig: Sequence[tuple[int, int]]) -> RiggedPartition:
    pts = [x for b in blocks for x in b] + [i for i, _ in rig]
    st = standardize(pts)
    return RiggedPartition(
        len(pts),
        tuple(tuple(st[x] for x in b) for b in blocks),
        tuple((st[i], c) for i, c in rig),
    )


def rigged_splits(R: RiggedPartition) -> list[tuple[RiggedPartition, RiggedPartition]]:
    """Ordered decompositions ``R = R1 + R2``: blocks kept whole, coloured points free."""
    items = [("b", b) for b in R.blocks] + [("r", rc) for rc in R.rigging]
    out = []
    for mask in range(1 << len(items)):
        sides = ([], []), ([], [])
        for t, (kind, obj) in enumerate(items):
            side = sides[0] if mask >> t & 1 else sides[1]
            (side[0] if kind == "b" else side[1]).append(obj)
        out.append((_std_rigged(*sides[0]), _std_rigged(*sides[1])))
    return out


def direct_consequences(P: RiggedPartition, Q: RiggedPartition) -> list[RiggedPartition]:
    """All R with (P|Q) -> R: blocks merged across the cut, colours concatenated."""
    k = P.n
    rig = P.rigging + tuple((i + k, c) for i, c in Q.rigging)
    return sorted(
        RiggedPartition(P.n + Q.n, blocks, rig)
        for blocks in merge_products(P.blocks, Q.blocks, k)
    )
