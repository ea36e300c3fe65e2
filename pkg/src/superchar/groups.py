"""Matrix groups over F_p and their orbit decompositions.

The workhorse is :class:`PatternGroup`: upper triangular matrices whose
strictly-upper support lies in a closed *pattern* of roots and whose diagonal
is free on a chosen subset of coordinates (the *torus*) and 1 elsewhere.  This
covers ``UT_n`` (empty torus), ``T_n`` (full torus) and every algebra subgroup
or block subgroup used for restriction and superinduction.

Elements are numbered by row-major packing of the free entries, first entry
most significant, so enumeration order equals index order.  All actions are
vectorised over the stack of element matrices and orbits are read off as the
connected components of the generator graph.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Any, Callable, Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .combinatorics import AdmissiblePair, BasicSubset, Root, basic_key, enumerate_basic_subsets, pair_key
from .exact import is_prime, primitive_root

DEFAULT_MAX_ORDER = 10**6

__all__ = [
    "DEFAULT_MAX_ORDER",
    "GroupTooLarge",
    "CanonicalFormError",
    "FiniteGroup",
    "PatternSpace",
    "PatternGroup",
    "OrbitDecomposition",
    "orbit_labels",
    "unitriangular",
    "triangular",
    "enumerate_group",
    "superclasses_algebra_group",
    "dual_two_sided_orbits",
    "right_stabilizer",
    "rho_orbits_triangular",
    "superclasses_triangular",
    "Idempotent",
    "idempotent_machinery",
    "classify_regular",
    "support_of",
]


class GroupTooLarge(ValueError):
    """Requested enumeration exceeds the configured size cap."""


class CanonicalFormError(RuntimeError):
    """An orbit failed to contain exactly one canonical representative."""


# -- generic finite groups ---------------------------------------------------

class FiniteGroup:
    """A finite group given by its Cayley table on indices ``0..order-1``."""

    def __init__(self, table: np.ndarray, identity: int | None = None, labels: Sequence[Any] | None = None,
                 name: str = "G"):
        table = np.asarray(table, dtype=np.int64)
        self._table = table
        self.order = table.shape[0]
        if identity is None:
            identity = int(np.flatnonzero((table == np.arange(self.order)).all(axis=1))[0])
        self.identity = identity
        self.labels = list(labels) if labels is not None else list(range(self.order))
        self.name = name

    @classmethod
    def from_elements(cls, elements: Sequence[Any], mul: Callable[[Any, Any], Any], name: str = "G") -> "FiniteGroup":
        pos = {e: k for k, e in enumerate(elements)}
        table = np.array([[pos[mul(a, b)] for b in elements] for a in elements], dtype=np.int64)
        return cls(table, labels=elements, name=name)

    @property
    def table(self) -> np.ndarray:
        return self._table

    @cached_property
    def inverse(self) -> np.ndarray:
        t = self.table
        inv = np.argmax(t == self.identity, axis=1)
        assert (t[np.arange(self.order), inv] == self.identity).all()
        return inv

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    @cached_property
    def conjugacy_labels(self) -> np.ndarray:
        t = self.table
        inv = self.inverse
        maps = []
        for s in self.generators:
            # x -> s x s^-1
            maps.append(t[s, t[:, inv[s]]])
        return orbit_labels(self.order, maps)

    @cached_property
    def generators(self) -> list[int]:
        """A small generating set found greedily."""
        gens: list[int] = []
        reached = np.zeros(self.order, dtype=bool)
        reached[self.identity] = True
        for g in range(self.order):
            if reached[g]:
                continue
            gens.append(g)
            frontier = list(np.flatnonzero(reached))
            closure = set(frontier)
            while frontier:
                nxt = []
                for x in frontier:
                    for s in gens:
                        y = int(self.table[x, s])
                        if y not in closure:
                            closure.add(y)
                            nxt.append(y)
                frontier = nxt
            reached[list(closure)] = True
            if reached.all():
                break
        return gens

    def conjugacy_classes(self) -> list[np.ndarray]:
        lab = self.conjugacy_labels
        return [np.flatnonzero(lab == k) for k in range(lab.max() + 1)]

    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def __repr__(self):
        return f"{type(self).__name__}({self.name}, order={self.order})"


def orbit_labels(size: int, maps: Sequence[np.ndarray]) -> np.ndarray:
    """Orbit id of each point under the group generated by the given maps.

    Ids are numbered in order of the smallest member of each orbit.
    """
    if size == 0:
        return np.zeros(0, dtype=np.int64)
    if not maps:
        return np.arange(size)
    src = np.concatenate([np.arange(size)] * len(maps))
    dst = np.concatenate([np.asarray(m, dtype=np.int64) for m in maps])
    graph = coo_matrix((np.ones_like(src, dtype=np.int8), (src, dst)), shape=(size, size))
    _, raw = connected_components(graph, directed=True, connection="weak")
    first = np.full(raw.max() + 1, size, dtype=np.int64)
    np.minimum.at(first, raw, np.arange(size))
    order = np.argsort(first, kind="stable")
    relabel = np.empty_like(order)
    relabel[order] = np.arange(len(order))
    return relabel[raw]


@dataclass
class OrbitDecomposition:
    """Orbits of a finite ambient set, each with a representative and a label."""

    labels: np.ndarray
    reps: list[int]
    names: list[Any] = field(default_factory=list)

    @cached_property
    def members(self) -> list[np.ndarray]:
        order = np.argsort(self.labels, kind="stable")
        counts = np.bincount(self.labels, minlength=len(self.reps))
        return np.split(order, np.cumsum(counts)[:-1])

    @property
    def sizes(self) -> list[int]:
        return [int(x) for x in np.bincount(self.labels, minlength=len(self.reps))]

    def __len__(self):
        return len(self.reps)

    def index_of_name(self, name) -> int:
        return self.names.index(name)

    @classmethod
    def from_labels(cls, labels: np.ndarray, pick: Callable[[np.ndarray], int] | None = None) -> "OrbitDecomposition":
        k = int(labels.max()) + 1 if len(labels) else 0
        first = np.full(k, len(labels), dtype=np.int64)
        np.minimum.at(first, labels, np.arange(len(labels)))
        dec = cls(labels, [int(x) for x in first])
        if pick is not None:
            dec.reps = [int(pick(mem)) for mem in dec.members]
        return dec

    def reorder(self, key: Callable[[int], Any]) -> "OrbitDecomposition":
        """New decomposition with orbits sorted by ``key(orbit index)``."""
        order = sorted(range(len(self.reps)), key=key)
        inv = np.empty(len(order), dtype=np.int64)
        inv[order] = np.arange(len(order))
        names = [self.names[k] for k in order] if self.names else []
        return OrbitDecomposition(inv[self.labels], [self.reps[k] for k in order], names)


# -- pattern groups ------------------------------------------------------------

def _closed(pattern: set[Root]) -> bool:
    return all((i, l) in pattern for (i, j) in pattern for (k, l) in pattern if j == k)


class PatternSpace:
    """The algebra J spanned by the matrix units of a pattern (also used for J*)."""

    def __init__(self, n: int, p: int, pattern: Iterable[Root]):
        self.n, self.p = n, p
        self.pattern = tuple(sorted(pattern))
        self.coords = [(i - 1, j - 1) for i, j in self.pattern]
        self.dim = len(self.coords)
        self.size = p**self.dim
        self._rows = np.array([r for r, _ in self.coords], dtype=np.int64)
        self._cols = np.array([c for _, c in self.coords], dtype=np.int64)
        self.weights = np.array([p ** (self.dim - 1 - k) for k in range(self.dim)], dtype=np.int64)

    @cached_property
    def elements(self) -> np.ndarray:
        digits = np.array(list(itertools.product(range(self.p), repeat=self.dim)), dtype=np.int64)
        digits = digits.reshape(self.size, self.dim)
        mats = np.zeros((self.size, self.n, self.n), dtype=np.int64)
        mats[:, self._rows, self._cols] = digits
        return mats

    @cached_property
    def digits(self) -> np.ndarray:
        return self.elements[:, self._rows, self._cols]

    def index_of(self, mats: np.ndarray) -> np.ndarray:
        """Indices of matrices, reading only the pattern positions (a projection)."""
        mats = np.asarray(mats) % self.p
        return mats[..., self._rows, self._cols] @ self.weights

    def matrix(self, idx: int) -> np.ndarray:
        return self.elements[idx]

    def from_roots(self, entries: dict[Root, int]) -> int:
        m = np.zeros((self.n, self.n), dtype=np.int64)
        for (i, j), c in entries.items():
            m[i - 1, j - 1] = c
        return int(self.index_of(m))

    def pair(self, lam_idx: int, x_idx) -> np.ndarray:
        """``lambda(x) mod p`` for coefficient vector lam and element(s) x."""
        return (self.digits[x_idx] @ self.digits[lam_idx]) % self.p

    def pair_many(self, lams, x: int) -> np.ndarray:
        """``mu(x) mod p`` for every mu in lams."""
        return (self.digits[lams] @ self.digits[x]) % self.p

    def supports(self) -> list[frozenset[int]]:
        """1-based row/column support of every element."""
        nz = self.digits != 0
        out = []
        for row in nz:
            s = set()
            for k in np.flatnonzero(row):
                i, j = self.pattern[k]
                s.add(i)
                s.add(j)
            out.append(frozenset(s))
        return out

    def basic_forms(self, unit_labels: bool = False) -> np.ndarray:
        """Boolean mask of elements whose support is a basic subset."""
        nz = self.elements != 0
        ok = (nz.sum(axis=2) <= 1).all(axis=1) & (nz.sum(axis=1) <= 1).all(axis=1)
        if unit_labels:
            ok &= (self.elements <= 1).all(axis=(1, 2))
        return ok

    def roots_of(self, idx: int) -> dict[Root, int]:
        d = self.digits[idx]
        return {self.pattern[k]: int(d[k]) for k in np.flatnonzero(d)}


class PatternGroup(FiniteGroup):
    """Upper triangular group with strictly-upper support in ``pattern``.

    ``torus`` lists the 1-based diagonal positions that range over F_p^*; the
    other diagonal entries are 1.
    """

    def __init__(self, n: int, p: int, pattern: Iterable[Root] | None = None, torus: Iterable[int] = (),
                 max_order: int = DEFAULT_MAX_ORDER, name: str | None = None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if n < 0:
            raise ValueError("n must be nonnegative")
        pat = {(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)} if pattern is None else set(map(tuple, pattern))
        if any(not 1 <= i < j <= n for i, j in pat):
            raise ValueError("pattern roots must satisfy 1 <= i < j <= n")
        if not _closed(pat):
            raise ValueError("pattern is not closed under root addition")
        self.n, self.p = n, p
        self.pattern = tuple(sorted(pat))
        self.torus = tuple(sorted(set(torus)))
        if any(not 1 <= t <= n for t in self.torus):
            raise ValueError("torus coordinates out of range")
        self.torus_size = (p - 1) ** len(self.torus)
        self.order = self.torus_size * p ** len(self.pattern)
        if self.order > max_order:
            raise GroupTooLarge(f"|G| = {self.order} exceeds cap {max_order}")
        self.J = PatternSpace(n, p, self.pattern)
        self.name = name or f"G({n},{p})"
        # free coordinates in row-major order
        tor = set(self.torus)
        coords, bases = [], []
        for r in range(n):
            for c in range(r, n):
                if r == c and (r + 1) in tor:
                    coords.append((r, c))
                    bases.append(p - 1)
                elif r < c and (r + 1, c + 1) in pat:
                    coords.append((r, c))
                    bases.append(p)
        self.coords = coords
        self._rows = np.array([r for r, _ in coords], dtype=np.int64)
        self._cols = np.array([c for _, c in coords], dtype=np.int64)
        self._diag = np.array([r == c for r, c in coords], dtype=bool)
        w, acc = [], 1
        for b in reversed(bases):
            w.append(acc)
            acc *= b
        self.weights = np.array(list(reversed(w)), dtype=np.int64)
        self.bases = bases
        self.identity = int(self.index_of(np.eye(n, dtype=np.int64))) if n else 0
        self.labels = None

    # -- enumeration ------------------------------------------------------------
    @cached_property
    def elements(self) -> np.ndarray:
        ranges = [range(1, b + 1) if d else range(b) for b, d in zip(self.bases, self._diag)]
        vals = np.array(list(itertools.product(*ranges)), dtype=np.int64).reshape(self.order, len(self.coords))
        mats = np.zeros((self.order, self.n, self.n), dtype=np.int64)
        idx = np.arange(self.n)
        mats[:, idx, idx] = 1
        mats[:, self._rows, self._cols] = vals
        return mats

    def index_of(self, mats: np.ndarray) -> np.ndarray:
        mats = np.asarray(mats) % self.p
        digits = mats[..., self._rows, self._cols] - self._diag
        return digits @ self.weights

    def contains(self, mats: np.ndarray) -> np.ndarray:
        """Membership test for a stack of upper triangular invertible matrices."""
        mats = np.asarray(mats) % self.p
        n = self.n
        mask = np.zeros((n, n), dtype=bool)
        for r, c in self.coords:
            mask[r, c] = True
        idx = np.arange(n)
        fixed_diag = [i for i in range(n) if not mask[i, i]]
        off = ~mask
        off[idx, idx] = False
        ok = (mats[..., off] == 0).all(axis=-1)
        if fixed_diag:
            ok &= (mats[..., fixed_diag, fixed_diag] == 1).all(axis=-1)
        return ok

    def matrix(self, idx: int) -> np.ndarray:
        return self.elements[idx]

    def diagonal(self, idx) -> np.ndarray:
        e = self.elements[idx]
        return np.diagonal(e, axis1=-2, axis2=-1)

    @cached_property
    def unit_index(self) -> np.ndarray:
        """G-index of ``1 + x`` for every x in J."""
        return self.index_of(self.J.elements + np.eye(self.n, dtype=np.int64))

    @cached_property
    def part_of_J(self) -> np.ndarray:
        """J-index of the strictly upper part of every element."""
        return self.J.index_of(self.elements)

    # -- Cayley table ------------------------------------------------------------
    def multiply(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        return np.matmul(A, B) % self.p

    @cached_property
    def table(self) -> np.ndarray:
        E = self.elements
        N = self.order
        out = np.empty((N, N), dtype=np.int64)
        chunk = max(1, 2_000_000 // max(1, N * self.n * self.n))
        for s in range(0, N, chunk):
            prod = np.matmul(E[s:s + chunk, None], E[None, :]) % self.p
            out[s:s + chunk] = self.index_of(prod)
        return out

    @cached_property
    def inverse(self) -> np.ndarray:
        return self.index_of(self.invert(self.elements))

    def invert(self, mats: np.ndarray) -> np.ndarray:
        """Inverse of a stack of invertible upper triangular matrices mod p."""
        p, n = self.p, self.n
        mats = np.asarray(mats) % p
        inv_tab = np.array([0] + [pow(a, -1, p) for a in range(1, p)], dtype=np.int64)
        out = np.zeros_like(mats)
        dinv = inv_tab[np.diagonal(mats, axis1=-2, axis2=-1)]
        for i in range(n):
            out[..., i, i] = dinv[..., i]
        for j in range(n):
            for i in range(j - 1, -1, -1):
                s = np.zeros(mats.shape[:-2], dtype=np.int64)
                for k in range(i + 1, j + 1):
                    s = s + mats[..., i, k] * out[..., k, j]
                out[..., i, j] = (-dinv[..., i] * s) % p
        return out

    # -- generators ------------------------------------------------------------------
    @cached_property
    def unipotent_generators(self) -> list[np.ndarray]:
        gens = []
        for i, j in self.pattern:
            g = np.eye(self.n, dtype=np.int64)
            g[i - 1, j - 1] = 1
            gens.append(g)
        return gens

    @cached_property
    def torus_generators(self) -> list[np.ndarray]:
        if self.p == 2:
            return []
        g = primitive_root(self.p)
        gens = []
        for t in self.torus:
            d = np.eye(self.n, dtype=np.int64)
            d[t - 1, t - 1] = g
            gens.append(d)
        return gens

    @cached_property
    def generators(self) -> list[int]:
        mats = self.unipotent_generators + self.torus_generators
        return [int(self.index_of(m)) for m in mats]

    @cached_property
    def conjugacy_labels(self) -> np.ndarray:
        E = self.elements
        maps = []
        for s in self.unipotent_generators + self.torus_generators:
            s_inv = self.invert(s)
            maps.append(self.index_of(s @ E @ s_inv))
        return orbit_labels(self.order, maps)

    # -- actions on J and J* -------------------------------------------------------
    def _torus_scalings(self) -> list[tuple[np.ndarray, np.ndarray]]:
        return [(t, self.invert(t)) for t in self.torus_generators]

    def J_maps(self, left: bool = True, right: bool = True, torus: bool = False) -> list[np.ndarray]:
        X = self.J.elements
        maps = []
        for a in self.unipotent_generators:
            if left:
                maps.append(self.J.index_of(a @ X))
            if right:
                maps.append(self.J.index_of(X @ a))
        if torus:
            for t, ti in self._torus_scalings():
                maps.append(self.J.index_of(t @ X @ ti))
        return maps

    def dual_maps(self, left: bool = True, right: bool = True, torus: bool = False) -> list[np.ndarray]:
        """Generator maps on J* (coefficient matrices).

        Right action ``(lambda g)(x) = lambda(g x)`` has coefficients ``g^T L``;
        left action ``(g lambda)(x) = lambda(x g)`` has coefficients ``L g^T``.
        """
        L = self.J.elements
        maps = []
        for a in self.unipotent_generators:
            if right:
                maps.append(self.J.index_of(a.T @ L))
            if left:
                maps.append(self.J.index_of(L @ a.T))
        if torus:
            for t, ti in self._torus_scalings():
                maps.append(self.J.index_of(ti @ L @ t))
        return maps

    def G_superclass_maps(self) -> list[np.ndarray]:
        """Generators of ``g -> 1 + t a (g - 1) b^-1 t^-1`` on G."""
        E = self.elements
        I = np.eye(self.n, dtype=np.int64)
        maps = []
        for a in self.unipotent_generators:
            maps.append(self.index_of(I + a @ (E - I)))
            maps.append(self.index_of(I + (E - I) @ a))
        for t, ti in self._torus_scalings():
            maps.append(self.index_of(t @ E @ ti))
        return maps

    @cached_property
    def superclass_labels(self) -> np.ndarray:
        return orbit_labels(self.order, self.G_superclass_maps())

    @cached_property
    def J_two_sided_labels(self) -> np.ndarray:
        return orbit_labels(self.J.size, self.J_maps(torus=False))

    @cached_property
    def J_rho_labels(self) -> np.ndarray:
        return orbit_labels(self.J.size, self.J_maps(torus=True))

    @cached_property
    def dual_two_sided_labels(self) -> np.ndarray:
        return orbit_labels(self.J.size, self.dual_maps())

    @cached_property
    def dual_left_labels(self) -> np.ndarray:
        return orbit_labels(self.J.size, self.dual_maps(right=False))

    @cached_property
    def dual_right_labels(self) -> np.ndarray:
        return orbit_labels(self.J.size, self.dual_maps(left=False))

    @cached_property
    def dual_rho_labels(self) -> np.ndarray:
        return orbit_labels(self.J.size, self.dual_maps(torus=True))

    # -- stabilisers ---------------------------------------------------------------
    def right_stabilizer_J(self, lam: int) -> np.ndarray:
        """J-indices of ``{y in J : lambda(y x) = 0 for all x in J}``."""
        L = self.J.elements[lam]
        Y = self.J.elements
        # lambda(Y E_kl) = sum_i L[i,l] Y[i,k]
        M = np.einsum("il,nik->nlk", L, Y) % self.p
        cols = np.array([j - 1 for _, j in self.pattern], dtype=np.int64)
        rows = np.array([i - 1 for i, _ in self.pattern], dtype=np.int64)
        vals = M[:, cols, rows] if len(self.pattern) else np.zeros((len(Y), 0), dtype=np.int64)
        return np.flatnonzero((vals == 0).all(axis=1))

    def torus_elements(self) -> np.ndarray:
        """Diagonal matrices of the torus, in element order."""
        return self.elements[self.part_of_J == 0]

    def __repr__(self):
        return f"PatternGroup(n={self.n}, p={self.p}, |pattern|={len(self.pattern)}, torus={self.torus})"


@lru_cache(maxsize=None)
def _cached_group(n: int, p: int, pattern: tuple | None, torus: tuple, max_order: int) -> PatternGroup:
    return PatternGroup(n, p, pattern, torus, max_order=max_order)


def unitriangular(n: int, p: int, max_order: int = DEFAULT_MAX_ORDER) -> PatternGroup:
    g = _cached_group(n, p, None, (), max_order)
    g.name = f"UT_{n}(F_{p})"
    return g


def triangular(n: int, p: int, max_order: int = DEFAULT_MAX_ORDER) -> PatternGroup:
    g = _cached_group(n, p, None, tuple(range(1, n + 1)), max_order)
    g.name = f"T_{n}(F_{p})"
    return g


def pattern_group(n: int, p: int, pattern: Iterable[Root], torus: Iterable[int] = (),
                  max_order: int = DEFAULT_MAX_ORDER) -> PatternGroup:
    return _cached_group(n, p, tuple(sorted(map(tuple, pattern))), tuple(sorted(torus)), max_order)


def enumerate_group(kind: str, n: int, p: int, max_order: int = DEFAULT_MAX_ORDER) -> PatternGroup:
    """``kind`` is ``"UT"`` or ``"T"``."""
    kind = kind.upper()
    if kind == "UT":
        return unitriangular(n, p, max_order)
    if kind == "T":
        return triangular(n, p, max_order)
    raise ValueError(f"unknown group kind {kind!r}")


def support_of(roots: Iterable[Root]) -> frozenset[int]:
    return frozenset(x for r in roots for x in r)


# -- UT_n: two-sided orbits and canonical forms --------------------------------

def _canonical_pairs(G: PatternGroup, labels: np.ndarray) -> OrbitDecomposition:
    """Match every orbit of J (or J*) to its unique X_{D,phi} / lambda_{D,phi}."""
    basic = np.flatnonzero(G.J.basic_forms())
    dec = OrbitDecomposition.from_labels(labels)
    found: dict[int, int] = {}
    for x in basic:
        k = int(labels[x])
        if k in found:
            raise CanonicalFormError(f"orbit {k} contains two canonical forms")
        found[k] = int(x)
    if len(found) != len(dec.reps):
        raise CanonicalFormError("some orbit lacks a canonical form")
    dec.reps = [found[k] for k in range(len(dec.reps))]
    dec.names = [AdmissiblePair.from_mapping(G.J.roots_of(r)) for r in dec.reps]
    return dec.reorder(lambda k: pair_key(dec.names[k]))


def superclasses_algebra_group(n: int, p: int, max_order: int = DEFAULT_MAX_ORDER):
    """Two-sided orbits in ``ut_n`` and the superclasses ``1 + orbit`` of UT_n.

    Returns ``(orbits_in_J, superclasses_in_G)`` with matching order; names
    are the admissible pairs of the canonical representatives.
    """
    G = unitriangular(n, p, max_order)
    J_dec = _canonical_pairs(G, G.J_two_sided_labels)
    unit = G.unit_index
    g_labels = np.empty(G.order, dtype=np.int64)
    g_labels[unit] = J_dec.labels
    G_dec = OrbitDecomposition(g_labels, [int(unit[r]) for r in J_dec.reps], list(J_dec.names))
    # sanity: the group-level superclass action gives the same partition
    assert len(np.unique(G.superclass_labels)) == len(G_dec)
    return J_dec, G_dec


@dataclass
class DualOrbits:
    decomposition: OrbitDecomposition
    right_orbit_counts: list[int]      # n(lambda)
    right_orbit_sizes: list[int]       # |lambda G|
    left_orbit_sizes: list[int]        # |G lambda|
    intersection_sizes: list[int]      # |G lambda  cap  lambda G|


def dual_two_sided_orbits(n: int, p: int, max_order: int = DEFAULT_MAX_ORDER, group: PatternGroup | None = None) -> DualOrbits:
    G = group or unitriangular(n, p, max_order)
    if len(G.pattern) == n * (n - 1) // 2 and not G.torus:
        dec = _canonical_pairs(G, G.dual_two_sided_labels)
    else:
        dec = OrbitDecomposition.from_labels(G.dual_two_sided_labels)
    right, left = G.dual_right_labels, G.dual_left_labels
    counts, rsz, lsz, inter = [], [], [], []
    for lam, mem in zip(dec.reps, dec.members):
        counts.append(len(np.unique(right[mem])))
        rmask = right == right[lam]
        lmask = left == left[lam]
        rsz.append(int(rmask.sum()))
        lsz.append(int(lmask.sum()))
        inter.append(int((rmask & lmask).sum()))
    return DualOrbits(dec, counts, rsz, lsz, inter)


def right_stabilizer(lam: int, G: PatternGroup):
    """``(J_{lambda,rt}, G_{lambda,rt})`` as J-indices and G-indices."""
    Jr = G.right_stabilizer_J(lam)
    return Jr, G.unit_index[Jr]


# -- T_n: rho-orbits, superclass triples and idempotents -------------------------

@dataclass(frozen=True)
class Idempotent:
    """Diagonal 0/1 matrix ``e = sum_{i in S} E_ii`` (S is 1-based)."""

    n: int
    support: frozenset[int]

    def matrix(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=np.int64)
        for i in self.support:
            m[i - 1, i - 1] = 1
        return m

    def complement(self) -> "Idempotent":
        return Idempotent(self.n, frozenset(range(1, self.n + 1)) - self.support)

    def pattern(self) -> list[Root]:
        s = sorted(self.support)
        return [(i, j) for i in s for j in s if i < j]

    def __le__(self, other: "Idempotent") -> bool:
        return self.support <= other.support


@dataclass(frozen=True)
class IdempotentData:
    e: Idempotent
    H_e: tuple[int, ...]        # free torus coordinates of H_e = eHe
    H_of_e: tuple[int, ...]     # free torus coordinates of H(e) = {h : he = e}
    f_prime: Idempotent | None = None
    f: Idempotent | None = None


def idempotent_machinery(n: int, D: Iterable[Root] | None = None, h: Sequence[int] | None = None) -> IdempotentData:
    """Idempotent bookkeeping for a basic subset D and/or a torus element h."""
    full = frozenset(range(1, n + 1))
    S = support_of(D or ())
    e = Idempotent(n, S)
    fp = f = None
    if h is not None:
        nonunit = frozenset(i + 1 for i, a in enumerate(h) if a != 1)
        fp = Idempotent(n, nonunit)
        f = Idempotent(n, full - nonunit)
    return IdempotentData(e, tuple(sorted(S)), tuple(sorted(full - S)), fp, f)


def classify_regular(member_supports: Iterable[frozenset[int]], ambient: frozenset[int]) -> str:
    """``"regular"`` iff no member lies in a proper corner ``J_e`` of the ambient J_S."""
    for s in member_supports:
        if s < ambient:
            return "singular"
    return "regular"


def rho_orbits_triangular(n: int, p: int, ambient: str = "J", max_order: int = DEFAULT_MAX_ORDER,
                          group: PatternGroup | None = None) -> OrbitDecomposition:
    """Orbits of ``x -> t a x b^-1 t^-1`` on J (or the dual action on J*).

    For T_n each orbit holds exactly one ``x_D`` (unit labels); names are D.
    """
    G = group or triangular(n, p, max_order)
    labels = G.J_rho_labels if ambient == "J" else G.dual_rho_labels
    dec = OrbitDecomposition.from_labels(labels)
    if G.torus != tuple(range(1, G.n + 1)) or len(G.pattern) != G.n * (G.n - 1) // 2:
        return dec
    canon = np.flatnonzero(G.J.basic_forms(unit_labels=True))
    found: dict[int, int] = {}
    for x in canon:
        k = int(labels[x])
        if k in found:
            raise CanonicalFormError(f"rho-orbit {k} contains two forms x_D")
        found[k] = int(x)
    if len(found) != len(dec.reps):
        raise CanonicalFormError("some rho-orbit lacks a form x_D")
    dec.reps = [found[k] for k in range(len(dec.reps))]
    dec.names = [tuple(sorted(G.J.roots_of(r))) for r in dec.reps]
    return dec.reorder(lambda k: basic_key(dec.names[k]))


@dataclass(frozen=True, order=True)
class ClassTriple:
    """Superclass label (e, h, omega): torus element h in H(e), omega the orbit of x_D."""

    D: BasicSubset
    h: tuple[int, ...]

    @property
    def support(self) -> frozenset[int]:
        return support_of(self.D)

    def to_json(self):
        return {"D": [list(r) for r in self.D], "h": list(self.h), "e": sorted(self.support)}

    def __str__(self):
        return f"(h={self.h}, D={list(self.D)})"


def superclasses_triangular(n: int, p: int, max_order: int = DEFAULT_MAX_ORDER,
                            group: PatternGroup | None = None) -> OrbitDecomposition:
    """Superclasses of T_n(F_p), each matched to its unique triple (e, h, omega)."""
    G = group or triangular(n, p, max_order)
    labels = G.superclass_labels
    dec = OrbitDecomposition.from_labels(labels)
    E = G.elements
    diag = np.diagonal(E, axis1=1, axis2=2)
    xs = G.part_of_J
    unit_basic = G.J.basic_forms(unit_labels=True)
    ok = unit_basic[xs]
    # support of x inside f = {i : h_i = 1}
    X = G.J.elements[xs]
    nz = X != 0
    touched = nz.any(axis=2) | nz.any(axis=1)
    ok &= ~(touched & (diag != 1)).any(axis=1)
    found: dict[int, int] = {}
    for g in np.flatnonzero(ok):
        k = int(labels[g])
        if k in found:
            raise CanonicalFormError(f"superclass {k} matches two triples")
        found[k] = int(g)
    if len(found) != len(dec.reps):
        raise CanonicalFormError("a superclass matches no triple")
    dec.reps = [found[k] for k in range(len(dec.reps))]
    dec.names = [
        ClassTriple(tuple(sorted(G.J.roots_of(int(xs[r])))), tuple(int(a) for a in diag[r]))
        for r in dec.reps
    ]
    return dec.reorder(lambda k: (basic_key(dec.names[k].D), dec.names[k].h))


def triple_labels(n: int, p: int) -> list[ClassTriple]:
    """The set of superclass triples, enumerated combinatorially."""
    out = []
    for D in enumerate_basic_subsets(n):
        S = support_of(D)
        free = [i for i in range(1, n + 1) if i not in S]
        for vals in itertools.product(range(1, p), repeat=len(free)):
            h = [1] * n
            for i, v in zip(free, vals):
                h[i - 1] = v
            out.append(ClassTriple(D, tuple(h)))
    return sorted(out, key=lambda t: (basic_key(t.D), t.h))
