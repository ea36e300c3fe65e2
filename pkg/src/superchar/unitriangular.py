"""Supercharacters of algebra groups 1 + J, with the closed formulas for UT_n(F_q).

A supercharacter is attached to each two-sided orbit G lambda G in J*:
``chi_lambda = Ind(xi_lambda, G_{lambda,rt}, G)`` with ``xi_lambda(g) = eps^{lambda(g-1)}``.
For UT_n these are indexed by admissible pairs (D, phi) and have a product
formula over the roots of D.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from .combinatorics import (AdmissiblePair, Root, crossings, d_prime, dimension_weight, is_basic,
                            singular_roots)
from .exact import Cyclotomic, additive_character, cyclotomic_ring, session_conductor
from .groups import (DEFAULT_MAX_ORDER, OrbitDecomposition, PatternGroup, dual_two_sided_orbits,
                     pattern_group, superclasses_algebra_group, unitriangular)
from .theory import (ClassFunction, Report, SuperTheoryCandidate, decompose, induced_character,
                     induced_character_literal, restrict, scalar_product, superinduce)

__all__ = [
    "AlgebraGroupTheory",
    "ut_theory",
    "elementary_value",
    "supercharacter_value",
    "closed_table",
    "kirillov_forms",
    "norm_identity",
    "restrict_and_decompose",
    "superinduce_to",
    "superinduce_literal",
    "frobenius_check",
    "CrossingAlgebra",
    "crossing_roots",
    "crossing_algebras",
]


# -- closed formulas -----------------------------------------------------------------

def elementary_value(alpha: Root, c: int, pair: AdmissiblePair, p: int) -> Cyclotomic:
    """Value of the elementary character chi_{alpha,c} on the superclass of (D', phi')."""
    Dp = set(pair.D)
    if Dp & singular_roots(alpha):
        return Cyclotomic.rational(0, session_conductor(p))
    _, dd = d_prime(alpha, pair.D)
    val = Cyclotomic.rational(p**dd, session_conductor(p))
    if tuple(alpha) in Dp:
        val = val * additive_character(c * pair.phi[tuple(alpha)], p)
    return val


def supercharacter_value(pair: AdmissiblePair, pair_prime: AdmissiblePair, p: int) -> Cyclotomic:
    """Product of elementary values over the roots of D."""
    val = Cyclotomic.rational(1, session_conductor(p))
    for alpha, c in zip(pair.D, pair.labels):
        val = val * elementary_value(alpha, c, pair_prime, p)
        if val.is_zero():
            break
    return val


# -- generic algebra-group theory ------------------------------------------------------

class AlgebraGroupTheory:
    """Superclasses and supercharacters of a pattern algebra group ``G = 1 + J``."""

    def __init__(self, G: PatternGroup):
        if G.torus:
            raise ValueError("algebra groups have trivial torus")
        self.G = G
        self.p = G.p
        self.m = session_conductor(G.p)
        self.is_full = len(G.pattern) == G.n * (G.n - 1) // 2
        if self.is_full:
            self.J_classes, self.classes = superclasses_algebra_group(G.n, G.p, max_order=max(G.order, 1))
        else:
            self.J_classes = OrbitDecomposition.from_labels(G.J_two_sided_labels)
            unit = G.unit_index
            lab = np.empty(G.order, dtype=np.int64)
            lab[unit] = self.J_classes.labels
            self.classes = OrbitDecomposition(lab, [int(unit[r]) for r in self.J_classes.reps])
        self.dual = dual_two_sided_orbits(G.n, G.p, group=G)

    @property
    def superclass_labels(self) -> np.ndarray:
        return self.classes.labels

    @property
    def class_names(self):
        return self.classes.names

    @property
    def char_names(self):
        return self.dual.decomposition.names

    @property
    def lambdas(self) -> list[int]:
        return self.dual.decomposition.reps

    def xi_exponents(self, lam: int) -> tuple[np.ndarray, np.ndarray]:
        """Stabiliser G_{lambda,rt} (G-indices) and exponents of xi_lambda on it."""
        Jr = self.G.right_stabilizer_J(lam)
        vals = self.G.J.pair(lam, Jr)
        return self.G.unit_index[Jr], vals * (self.m // self.p)

    def induced(self, lam: int) -> ClassFunction:
        """The oracle: ordinary induction of xi_lambda from the right stabiliser."""
        sub, ex = self.xi_exponents(lam)
        return induced_character(self.G, sub, ex, self.m)

    def induced_literal(self, lam: int) -> ClassFunction:
        sub, ex = self.xi_exponents(lam)
        return induced_character_literal(self.G, sub, ex, self.m)

    @cached_property
    def characters(self) -> list[ClassFunction]:
        return [self.induced(lam) for lam in self.lambdas]

    @property
    def normalizers(self) -> list[int]:
        return list(self.dual.right_orbit_counts)

    def candidate(self) -> SuperTheoryCandidate:
        return SuperTheoryCandidate(self.G, self.superclass_labels, self.characters,
                                    part_names=list(self.class_names), char_names=list(self.char_names))

    def closed_character(self, pair: AdmissiblePair) -> ClassFunction:
        if not self.is_full:
            raise ValueError("closed formula needs the full unitriangular group")
        vals = [supercharacter_value(pair, q, self.p) for q in self.class_names]
        return ClassFunction.from_parts(self.G, self.superclass_labels, vals)

    def __repr__(self):
        return f"AlgebraGroupTheory({self.G.name})"


@lru_cache(maxsize=None)
def ut_theory(n: int, p: int, max_order: int = DEFAULT_MAX_ORDER) -> AlgebraGroupTheory:
    return AlgebraGroupTheory(unitriangular(n, p, max_order))


def closed_table(n: int, p: int) -> list[list[Cyclotomic]]:
    """Rows: admissible pairs; columns: superclasses, both in canonical order."""
    th = ut_theory(n, p)
    return [[supercharacter_value(a, b, p) for b in th.class_names] for a in th.char_names]


# -- Kirillov-type formulas ------------------------------------------------------------

def _eps_sum(values: np.ndarray, p: int, scale) -> Cyclotomic:
    m = session_conductor(p)
    counts = np.bincount(np.asarray(values) % p, minlength=p)
    root = np.zeros(m, dtype=np.int64)
    root[np.arange(p) * (m // p)] = counts
    return cyclotomic_ring(m).from_root_counts(root.tolist()) * scale


def kirillov_forms(th: AlgebraGroupTheory, lam: int, x: int) -> tuple[Cyclotomic, Cyclotomic]:
    """Both orbit-sum expressions for chi_lambda(1 + x), with lam and x as J-indices."""
    G, J = th.G, th.G.J
    dlab = G.dual_two_sided_labels
    orbit = np.flatnonzero(dlab == dlab[lam])
    n_lam = len(np.unique(G.dual_right_labels[orbit]))
    first = _eps_sum(J.pair_many(orbit, x), th.p, Fraction(1, n_lam))
    jlab = G.J_two_sided_labels
    xorbit = np.flatnonzero(jlab == jlab[x])
    right = int((G.dual_right_labels == G.dual_right_labels[lam]).sum())
    second = _eps_sum(J.pair(lam, xorbit), th.p, Fraction(right, len(xorbit)))
    return first, second


def norm_identity(th: AlgebraGroupTheory, k: int) -> Report:
    """Direct scalar product, |G lambda cap lambda G| and q^{c(D)} for the k-th character."""
    chi = th.characters[k]
    direct = scalar_product(chi, chi)
    inter = th.dual.intersection_sizes[k]
    rep = Report()
    rep.add("direct = |Gl cap lG|", direct == inter, f"{direct} vs {inter}")
    if th.is_full:
        c = crossings(th.char_names[k].D)
        rep.add("|Gl cap lG| = q^c", inter == th.p**c, f"{inter} vs {th.p}^{c}")
        d = dimension_weight(th.char_names[k].D)
        rep.add("degree = q^d", chi.degree == th.p**d, f"{chi.degree} vs {th.p}^{d}")
    return rep


# -- restriction and superinduction ------------------------------------------------------

def embedding(sub: PatternGroup, G: PatternGroup) -> np.ndarray:
    """G-indices of the elements of a subgroup with the same matrix size."""
    if sub.n != G.n:
        raise ValueError("subgroup must consist of matrices of the same size")
    if not G.contains(sub.elements).all():
        raise ValueError("not a subgroup")
    return G.index_of(sub.elements)


def restrict_and_decompose(chi: ClassFunction, sub: AlgebraGroupTheory, G: PatternGroup) -> list[Fraction]:
    """Coefficients of Res chi in the subgroup's supercharacters; must be nonnegative integers."""
    res = restrict(chi, sub.G, embedding(sub.G, G))
    coeffs = decompose(res, sub.characters)
    if coeffs is None:
        raise ArithmeticError("restriction is not a combination of subgroup supercharacters")
    out = []
    for c in coeffs:
        if not c.is_rational():
            raise ArithmeticError(f"irrational coefficient {c}")
        f = c.to_fraction()
        if f < 0 or f.denominator != 1:
            raise ArithmeticError(f"coefficient {f} is not a nonnegative integer")
        out.append(f)
    return out


def superinduce_to(phi: ClassFunction, th: AlgebraGroupTheory) -> ClassFunction:
    return superinduce(phi, th.G, embedding(phi.group, th.G), th.superclass_labels)


def superinduce_literal(phi: ClassFunction, G: PatternGroup) -> ClassFunction:
    """``SInd phi(1+x) = 1/(|G||G'|) sum_{a,b in G} phi_dot(1 + a x b)`` term by term."""
    sub = phi.group
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[embedding(sub, G)] = np.arange(sub.order)
    E = G.elements
    I = np.eye(G.n, dtype=np.int64)
    vals = []
    for g in range(G.order):
        x = E[g] - I
        acc = Cyclotomic.rational(0)
        ys = G.index_of(I + np.matmul(np.matmul(E[:, None], x), E[None, :]))
        counts: dict[int, int] = {}
        for y in ys.ravel():
            s = pos[y]
            if s >= 0:
                counts[s] = counts.get(s, 0) + 1
        for s, k in counts.items():
            acc = acc + phi.values[s] * k
        vals.append(acc / (G.order * sub.order))
    return ClassFunction(G, vals)


def frobenius_check(sub, th, restrict_coeffs: bool = True) -> Report:
    """Reciprocity for every (subgroup supercharacter, supercharacter) pair.

    ``sub`` and ``th`` expose ``G``, ``characters`` and ``superclass_labels``.
    Also checks that superinduction has nonnegative rational coefficients equal
    to ``m (phi, phi) / (chi, chi)`` with m the restriction multiplicity.
    """
    rep = Report()
    emb = embedding(sub.G, th.G)
    ok = True
    detail = ""
    for i, phi in enumerate(sub.characters):
        s = superinduce(phi, th.G, emb, th.superclass_labels)
        nphi = scalar_product(phi, phi)
        for j, chi in enumerate(th.characters):
            res = restrict(chi, sub.G, emb)
            lhs = scalar_product(s, chi)
            rhs = scalar_product(phi, res)
            if lhs != rhs:
                ok, detail = False, f"reciprocity fails at ({i}, {j})"
                break
            mult = rhs / nphi
            coef = lhs / scalar_product(chi, chi)
            if not coef.is_rational() or coef.to_fraction() < 0 or coef != mult * nphi / scalar_product(chi, chi):
                ok, detail = False, f"superinduction coefficient at ({i}, {j}) is {coef}"
                break
            if restrict_coeffs and (not mult.is_rational() or mult.to_fraction() < 0
                                    or mult.to_fraction().denominator != 1):
                ok, detail = False, f"restriction coefficient at ({i}, {j}) is {mult}"
                break
        if not ok:
            break
    rep.add("frobenius reciprocity", ok, detail)
    return rep


# -- crossing algebras ------------------------------------------------------------------

def crossing_roots(D: Sequence[Root]) -> list[Root]:
    """Roots (i, j) with (i, k), (j, l) in D and i < j < k < l."""
    part = dict(D)
    out = set()
    for i, k in part.items():
        for j, l in part.items():
            if i < j < k < l:
                out.add((i, j))
    return sorted(out)


@dataclass
class CrossingAlgebra:
    """Structure constants of Cx_D(q) and of its central extension by z_D."""

    D: tuple[Root, ...]
    p: int
    basis: list[Root]
    extended: bool
    consts: np.ndarray = field(repr=False)   # consts[a, b] = coefficient vector of e_a * e_b

    @property
    def dim(self) -> int:
        return len(self.basis) + (1 if self.extended else 0)

    def mul(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        return np.einsum("a,b,abc->c", u, v, self.consts) % self.p

    def is_associative(self) -> bool:
        c = self.consts
        left = np.einsum("abx,xcd->abcd", c, c) % self.p
        right = np.einsum("bcx,axd->abcd", c, c) % self.p
        return bool((left == right).all())

    def nilpotency_index(self) -> int | None:
        """Smallest k with A^k = 0, or None if A is not nilpotent."""
        if self.dim == 0:
            return 1
        basis = np.eye(self.dim, dtype=np.int64)
        power = basis   # spanning set of A^k, k = 1
        for k in range(1, self.dim + 2):
            power = power[power.any(axis=1)]
            if not len(power):
                return k
            power = np.einsum("ia,jb,abc->ijc", power, basis, self.consts).reshape(-1, self.dim) % self.p
            power = np.unique(power, axis=0)
        return None

    def group_elements(self) -> np.ndarray:
        return np.array(list(itertools.product(range(self.p), repeat=self.dim)), dtype=np.int64).reshape(-1, self.dim)

    def group_check(self) -> Report:
        """1 + A with (1+a)(1+b) = 1 + a + b + ab is a group of order q^dim."""
        rep = Report()
        els = self.group_elements()
        w = np.array([self.p ** (self.dim - 1 - k) for k in range(self.dim)], dtype=np.int64)
        prods = (els[:, None, :] + els[None, :, :] + np.einsum("ia,jb,abc->ijc", els, els, self.consts)) % self.p
        table = prods @ w
        n = len(els)
        rep.add("order", n == self.p**self.dim, str(n))
        rep.add("latin square", all(len(set(row)) == n for row in table.tolist()), "")
        rep.add("associative", self._assoc_table(table), "")
        return rep

    @staticmethod
    def _assoc_table(t: np.ndarray) -> bool:
        n = len(t)
        a = t[t[:, :, None], np.arange(n)[None, None, :]]   # (ab)c
        b = t[np.arange(n)[:, None, None], t[None, :, :]]   # a(bc)
        return bool((a == b).all())


def crossing_algebras(D: Sequence[Root], p: int) -> tuple[CrossingAlgebra, CrossingAlgebra]:
    D = tuple(sorted(map(tuple, D)))
    if not is_basic(D):
        raise ValueError(f"{D} is not basic")
    cr = crossing_roots(D)
    pos = {r: k for k, r in enumerate(cr)}
    k = len(cr)
    cx = np.zeros((k, k, k), dtype=np.int64)
    tcx = np.zeros((k + 1, k + 1, k + 1), dtype=np.int64)
    Dset = set(D)
    for (i, j), a in pos.items():
        for (jj, l), b in pos.items():
            if j != jj:
                continue
            if (i, l) in pos:
                cx[a, b, pos[(i, l)]] = 1
                tcx[a, b, pos[(i, l)]] = 1
            elif (i, l) in Dset:
                tcx[a, b, k] = 1
    return CrossingAlgebra(D, p, cr, False, cx), CrossingAlgebra(D, p, cr, True, tcx)
