"""Supercharacters of the triangular group T_n(F_q) = H + J.

Supercharacters are labelled by pairs (D, theta): a basic subset D (the regular
orbit of lambda_D in J_e*, e = e_D) and a linear character theta of
H(e) = {h : h_i = 1 on supp(D)}.  Superclasses are labelled by (h, D') with
h in H(e_{D'}).  theta is stored as an exponent vector against the fixed
primitive root, with zeros on supp(D).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from .combinatorics import BasicSubset, Root, basic_key, enumerate_basic_subsets
from .exact import Cyclotomic, cyclotomic_ring, discrete_log_table, session_conductor
from .groups import (DEFAULT_MAX_ORDER, ClassTriple, PatternGroup, pattern_group, superclasses_triangular,
                     support_of, triangular, triple_labels)
from .theory import (ClassFunction, Report, SuperTheoryCandidate, induced_character, scalar_product)

__all__ = [
    "CharTriple",
    "ClassTriple",
    "TriangularTheory",
    "tri_theory",
    "enumerate_triples",
    "value_inputs",
    "closed_value",
    "corank_mod_p",
    "tri_kirillov",
    "tri_norm",
    "BlockSubgroupTheory",
    "theta_value",
    "tri_restrict_superinduce",
]


@dataclass(frozen=True)
class CharTriple:
    """Supercharacter label (e, theta, omega*): D fixes e and omega*, theta lives on H(e)."""

    D: BasicSubset
    theta: tuple[int, ...]

    @property
    def support(self) -> frozenset[int]:
        return support_of(self.D)

    def to_json(self):
        return {"D": [list(r) for r in self.D], "theta": list(self.theta), "e": sorted(self.support)}

    def __str__(self):
        return f"(theta={self.theta}, D={list(self.D)})"


def enumerate_triples(n: int, p: int) -> tuple[list[CharTriple], list[ClassTriple]]:
    """All character triples and class triples of T_n(F_p), in canonical order."""
    chars = []
    for D in enumerate_basic_subsets(n):
        S = support_of(D)
        free = [i for i in range(1, n + 1) if i not in S]
        for ks in itertools.product(range(p - 1), repeat=len(free)):
            th = [0] * n
            for i, k in zip(free, ks):
                th[i - 1] = k
            chars.append(CharTriple(D, tuple(th)))
    chars.sort(key=lambda a: (basic_key(a.D), a.theta))
    classes = triple_labels(n, p)
    if len(chars) != len(classes):
        raise ArithmeticError("triple counts differ")
    return chars, classes


def theta_value(theta: Sequence[int], h: Sequence[int], p: int) -> Cyclotomic:
    """``theta(h) = prod_i z_{p-1}^{k_i log h_i}`` in the session ring."""
    m = session_conductor(p)
    log = discrete_log_table(p)
    e = sum(k * log[a % p] for k, a in zip(theta, h)) % (p - 1) if p > 2 else 0
    return cyclotomic_ring(m).zeta(e * (m // (p - 1)))


# -- the closed value formula --------------------------------------------------------

def corank_mod_p(M: np.ndarray, p: int) -> int:
    """Corank of a square matrix over F_p (zero-row count when it is monomial-like)."""
    M = np.asarray(M, dtype=np.int64) % p
    k = M.shape[0]
    if k == 0:
        return 0
    nz = M != 0
    if (nz.sum(axis=0) <= 1).all() and (nz.sum(axis=1) <= 1).all():
        return int((~nz.any(axis=1)).sum())
    A = M.copy()
    rank = 0
    for col in range(k):
        piv = next((r for r in range(rank, k) if A[r, col]), None)
        if piv is None:
            continue
        A[[rank, piv]] = A[[piv, rank]]
        A[rank] = A[rank] * pow(int(A[rank, col]), -1, p) % p
        for r in range(k):
            if r != rank and A[r, col]:
                A[r] = (A[r] - A[r, col] * A[rank]) % p
        rank += 1
    return k - rank


@dataclass(frozen=True)
class ValueInputs:
    delta1: int
    delta2: int
    delta0: int
    m: int
    s: int
    s_star: int
    sign: int


def value_inputs(D: Sequence[Root], h: Sequence[int], Dp: Sequence[Root], p: int) -> ValueInputs:
    n = len(h)
    Dset, Dpset = set(map(tuple, D)), set(map(tuple, Dp))
    d1 = d2 = 1
    for i, j in Dset:
        if any((i, k) in Dpset for k in range(i + 1, j)):
            d1 = 0
        if any((k, j) in Dpset for k in range(i + 1, j)):
            d2 = 0
    d0 = int(all(h[i - 1] % p == 1 for i in support_of(Dset)))
    M = np.diag([(a - 1) % p for a in h]).astype(np.int64)
    for i, j in Dpset:
        M[i - 1, j - 1] = 1
    m = sum(corank_mod_p(M[i:j - 1, i:j - 1], p) for i, j in Dset)
    s = len(Dset) + len(Dset - Dpset)
    # |supp D| replaces |D| once roots of D share an index (a chain i<j<k)
    s_star = len(support_of(Dset)) + len(Dset - Dpset) - len(Dset)
    return ValueInputs(d1, d2, d0, m, s, s_star, (-1) ** len(Dset & Dpset))


def closed_value(theta: Sequence[int], D: Sequence[Root], h: Sequence[int], Dp: Sequence[Root], p: int,
                 uncorrected: bool = False) -> Cyclotomic:
    """``delta (-1)^{|D cap D'|} q^m (q-1)^s theta(h)`` on the superclass of h + x_{D'}.

    With ``uncorrected=True`` the exponent is ``s = |D| + |D \\ D'|``.  That exponent
    overcounts when D contains roots (i, j), (j, k): the degree of such a
    supercharacter is ``(q-1)^{|supp D|} q^{d(D)}``, not ``(q-1)^{2|D|} q^{d(D)}``.
    The default uses ``s* = |supp D| + |D \\ D'| - |D|``, which agrees with
    ``s`` whenever the roots of D have disjoint supports.
    """
    v = value_inputs(D, h, Dp, p)
    m = session_conductor(p)
    if not (v.delta1 and v.delta2 and v.delta0):
        return Cyclotomic.rational(0, m)
    s = v.s if uncorrected else v.s_star
    return theta_value(theta, h, p) * (v.sign * p**v.m * (p - 1) ** s)


# -- theory ---------------------------------------------------------------------------

class TriangularTheory:
    """Superclasses and induced supercharacters of T_n(F_p)."""

    def __init__(self, n: int, p: int, max_order: int = DEFAULT_MAX_ORDER):
        self.n, self.p = n, p
        self.G = triangular(n, p, max_order)
        self.m = session_conductor(p)
        self.classes = superclasses_triangular(n, p, group=self.G)
        self.char_names, combinatorial = enumerate_triples(n, p)
        if list(self.classes.names) != combinatorial:
            raise ArithmeticError("superclass triples differ from the combinatorial list")

    @property
    def superclass_labels(self) -> np.ndarray:
        return self.classes.labels

    @property
    def class_names(self) -> list[ClassTriple]:
        return self.classes.names

    def lambda_D(self, D: Sequence[Root]) -> int:
        return self.G.J.from_roots({r: 1 for r in D})

    def stabilizer_data(self, alpha: CharTriple, lam: int | None = None):
        """G-indices of G_alpha = H(e) + J_{lambda,rt} and exponents of xi_{theta,lambda}."""
        G = self.G
        if lam is None:
            lam = self.lambda_D(alpha.D)
        Jr = G.right_stabilizer_J(lam)
        S = alpha.support
        free = [i for i in range(1, self.n + 1) if i not in S]
        log = discrete_log_table(self.p)
        units = list(range(1, self.p))
        idx, ex = [], []
        eps = self.m // self.p
        tau = self.m // (self.p - 1) if self.p > 2 else 0
        lam_vals = G.J.pair(lam, Jr)
        for vals in itertools.product(units, repeat=len(free)):
            h = [1] * self.n
            for i, a in zip(free, vals):
                h[i - 1] = a
            mats = G.J.elements[Jr] + np.diag(h)
            idx.append(G.index_of(mats))
            th = sum(alpha.theta[i - 1] * log[a] for i, a in zip(free, vals)) % (self.p - 1) if self.p > 2 else 0
            ex.append(th * tau + lam_vals * eps)
        return np.concatenate(idx), np.concatenate(ex)

    def xi_character(self, alpha: CharTriple, g: int, lam: int | None = None) -> Cyclotomic:
        """``xi_{theta,lambda}(h + x) = theta(h) eps^{lambda(x)}`` on G_alpha."""
        sub, ex = self.stabilizer_data(alpha, lam)
        where = np.flatnonzero(sub == g)
        if not len(where):
            raise ValueError("element outside G_alpha")
        return cyclotomic_ring(self.m).zeta(int(ex[where[0]]))

    def induced(self, alpha: CharTriple, lam: int | None = None) -> ClassFunction:
        sub, ex = self.stabilizer_data(alpha, lam)
        return induced_character(self.G, sub, ex, self.m)

    @cached_property
    def characters(self) -> list[ClassFunction]:
        return [self.induced(a) for a in self.char_names]

    def omega_star(self, D: Sequence[Root]) -> list[int]:
        """J-indices of the orbit of lambda_D in J_e* under H_e and N_e."""
        S = sorted(support_of(D))
        Ge = pattern_group(self.n, self.p, [(i, j) for i in S for j in S if i < j], S)
        lab = Ge.dual_rho_labels
        lam = Ge.J.from_roots({r: 1 for r in D})
        members = np.flatnonzero(lab == lab[lam])
        return [int(x) for x in self.G.J.index_of(Ge.J.elements[members])]

    def closed_character(self, alpha: CharTriple, uncorrected: bool = False) -> ClassFunction:
        vals = [closed_value(alpha.theta, alpha.D, b.h, b.D, self.p, uncorrected) for b in self.class_names]
        return ClassFunction.from_parts(self.G, self.superclass_labels, vals)

    def candidate(self) -> SuperTheoryCandidate:
        return SuperTheoryCandidate(self.G, self.superclass_labels, self.characters,
                                    part_names=list(self.class_names), char_names=list(self.char_names))

    def __repr__(self):
        return f"TriangularTheory(n={self.n}, p={self.p})"


@lru_cache(maxsize=None)
def tri_theory(n: int, p: int, max_order: int = DEFAULT_MAX_ORDER) -> TriangularTheory:
    return TriangularTheory(n, p, max_order)


# -- Kirillov forms and the norm ---------------------------------------------------------

def _corner_group(n: int, p: int, f: Sequence[int]) -> PatternGroup:
    f = sorted(f)
    return pattern_group(n, p, [(i, j) for i in f for j in f if i < j], f)


def _eps_sum(values: np.ndarray, p: int) -> Cyclotomic:
    m = session_conductor(p)
    counts = np.zeros(m, dtype=np.int64)
    np.add.at(counts, (np.asarray(values) % p) * (m // p), 1)
    return cyclotomic_ring(m).from_root_counts(counts.tolist())


def tri_kirillov(th: TriangularTheory, alpha: CharTriple, h: Sequence[int], Dp: Sequence[Root]) -> tuple[Cyclotomic, Cyclotomic]:
    """Both orbit-sum formulas at g = h + x_{D'} (requires h = 1 on supp(D'))."""
    n, p = th.n, th.p
    f = [i for i in range(1, n + 1) if h[i - 1] % p == 1]
    if not support_of(Dp) <= set(f):
        raise ValueError("need h x = x h = x")
    S = alpha.support
    zero = Cyclotomic.rational(0, th.m)
    if not S <= set(f):
        return zero, zero
    theta = theta_value(alpha.theta, h, p)
    He = (p - 1) ** len(S)
    Gf = _corner_group(n, p, f)
    lam = Gf.J.from_roots({r: 1 for r in alpha.D})
    x = Gf.J.from_roots({r: 1 for r in Dp})
    rho = Gf.dual_rho_labels
    Omega = np.flatnonzero(rho == rho[lam])
    n_Omega = len(np.unique(Gf.dual_right_labels[Omega]))
    first = _eps_sum(Gf.J.pair_many(Omega, x), p) * theta * Fraction(He, n_Omega)
    xorb = np.flatnonzero(Gf.J_rho_labels == Gf.J_rho_labels[x])
    right = int((Gf.dual_right_labels == Gf.dual_right_labels[lam]).sum())
    second = _eps_sum(Gf.J.pair(lam, xorb), p) * theta * Fraction(He * right, len(xorb))
    return first, second


def tri_norm(th: TriangularTheory, alpha: CharTriple) -> Report:
    """Compare the direct scalar product with |H_{N lambda N}| / |H(e)| * |J lambda cap lambda J|."""
    G, J, p = th.G, th.G.J, th.p
    lam = th.lambda_D(alpha.D)
    L = J.elements[lam]
    # J lambda = {x -> lambda(x a)} and lambda J = {x -> lambda(a x)} as coefficient vectors
    A = J.elements
    left = set(J.index_of(L @ np.transpose(A, (0, 2, 1))).tolist())
    right = set(J.index_of(np.transpose(A, (0, 2, 1)) @ L).tolist())
    inter = len(left & right)
    two = G.dual_two_sided_labels
    tor = G.elements[G.part_of_J == 0]
    stab = 0
    for t in tor:
        ti = G.invert(t)
        moved = int(J.index_of(ti @ L @ t))
        stab += int(two[moved] == two[lam])
    H_of_e = (p - 1) ** (th.n - len(alpha.support))
    formula = Fraction(stab, H_of_e) * inter
    k = th.char_names.index(alpha)
    direct = scalar_product(th.characters[k], th.characters[k])
    rep = Report()
    rep.add("scalar product formula", direct == formula, f"direct {direct}, formula {formula}")
    return rep


# -- triangular-type block subgroups ----------------------------------------------------

class BlockSubgroupTheory:
    """T_k (or UT_k) placed in the upper-left corner of n x n matrices.

    Superclasses and supercharacters are transported from the k x k theory.
    """

    def __init__(self, small, n: int):
        self.small = small
        k, p = small.G.n, small.G.p
        pattern = small.G.pattern
        self.G = pattern_group(n, p, pattern, small.G.torus)
        mats = self.G.elements[:, :k, :k]
        self.to_small = small.G.index_of(mats)
        self.superclass_labels = small.superclass_labels[self.to_small]
        self.characters = [ClassFunction(self.G, [chi.values[s] for s in self.to_small]) for chi in small.characters]
        self.char_names = list(small.char_names)


def tri_restrict_superinduce(sub, th: TriangularTheory) -> tuple[list[list[Fraction]], Report]:
    """Restriction multiplicities of every supercharacter of ``th`` to ``sub``, plus reciprocity.

    Rows are indexed by the characters of ``th``, columns by those of ``sub``.
    """
    from .unitriangular import frobenius_check, restrict_and_decompose

    rows = [restrict_and_decompose(chi, sub, th.G) for chi in th.characters]
    return rows, frobenius_check(sub, th)
