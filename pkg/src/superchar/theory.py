"""Generic supercharacter-theory checks for any finite group given by a Cayley table.

Nothing here computes irreducible characters.  A candidate theory is a
partition of the group together with class functions, and every check uses
only their values and the multiplication table.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

import numpy as np

from .exact import Cyclotomic, cyclotomic_ring
from .groups import FiniteGroup, orbit_labels

__all__ = [
    "ClassFunction",
    "SuperTheoryCandidate",
    "Report",
    "scalar_product",
    "verify_theory",
    "schur_check",
    "schur_structure_constants",
    "convolve",
    "idempotents_from_table",
    "verify_idempotents",
    "regular_decomposition",
    "integrality_check",
    "gamma_average",
    "parts_from_characters",
    "labels_from_parts",
    "cyclic_group",
    "abelian_characters",
    "symmetric_group_3",
    "builtin_theory",
    "BUILTINS",
]

ZERO = Cyclotomic.rational(0)
ONE = Cyclotomic.rational(1)


class GroupMismatch(ValueError):
    pass


class ClassFunction:
    """A function on the elements of a finite group with cyclotomic values."""

    __slots__ = ("group", "values", "_counter")

    def __init__(self, group: FiniteGroup, values: Sequence[Any]):
        if len(values) != group.order:
            raise ValueError("one value per group element required")
        self.group = group
        self.values = tuple(Cyclotomic.coerce(v) for v in values)
        self._counter = None

    @classmethod
    def from_parts(cls, group: FiniteGroup, labels: np.ndarray, part_values: Sequence[Any]) -> "ClassFunction":
        vals = [Cyclotomic.coerce(v) for v in part_values]
        return cls(group, [vals[k] for k in labels])

    @classmethod
    def constant(cls, group: FiniteGroup, c=1) -> "ClassFunction":
        return cls(group, [Cyclotomic.coerce(c)] * group.order)

    @classmethod
    def regular(cls, group: FiniteGroup) -> "ClassFunction":
        vals = [ZERO] * group.order
        vals[group.identity] = Cyclotomic.rational(group.order)
        return cls(group, vals)

    def __call__(self, g: int) -> Cyclotomic:
        return self.values[g]

    @property
    def degree(self) -> Cyclotomic:
        return self.values[self.group.identity]

    def counter(self) -> Counter:
        if self._counter is None:
            self._counter = Counter(self.values)
        return self._counter

    def _check(self, other: "ClassFunction"):
        if other.group is not self.group:
            raise GroupMismatch("class functions live on different groups")

    def __add__(self, other):
        self._check(other)
        return ClassFunction(self.group, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        self._check(other)
        return ClassFunction(self.group, [a - b for a, b in zip(self.values, other.values)])

    def __mul__(self, c):
        if isinstance(c, ClassFunction):
            self._check(c)
            return ClassFunction(self.group, [a * b for a, b in zip(self.values, c.values)])
        c = Cyclotomic.coerce(c)
        return ClassFunction(self.group, [a * c for a in self.values])

    __rmul__ = __mul__

    def __neg__(self):
        return ClassFunction(self.group, [-a for a in self.values])

    def __eq__(self, other):
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return other.group is self.group and self.values == other.values

    __hash__ = None

    def conjugate(self) -> "ClassFunction":
        return ClassFunction(self.group, [a.conjugate() for a in self.values])

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def is_constant_on(self, part: Iterable[int]) -> bool:
        part = list(part)
        v = self.values[part[0]]
        return all(self.values[g] == v for g in part)

    def part_values(self, labels: np.ndarray, reps: Sequence[int]) -> list[Cyclotomic]:
        return [self.values[r] for r in reps]

    def __repr__(self):
        return f"ClassFunction({self.group.name}, degree={self.degree})"


def scalar_product(f1: ClassFunction, f2: ClassFunction) -> Cyclotomic:
    """``(1/|G|) sum_g f1(g) conj(f2(g))``, exact."""
    f1._check(f2)
    pairs = Counter(zip(f1.values, f2.values))
    acc = ZERO
    conj_cache: dict[Cyclotomic, Cyclotomic] = {}
    for (a, b), k in pairs.items():
        if a.is_zero() or b.is_zero():
            continue
        cb = conj_cache.get(b)
        if cb is None:
            cb = conj_cache[b] = b.conjugate()
        acc = acc + a * cb * k
    return acc / f1.group.order


# -- reports ---------------------------------------------------------------------

@dataclass
class Report:
    """Outcome of a verification: ordered list of named checks."""

    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> bool:
        self.checks.append((name, bool(ok), "" if ok else detail))
        return bool(ok)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    @property
    def failure(self) -> tuple[str, str] | None:
        for name, ok, detail in self.checks:
            if not ok:
                return name, detail
        return None

    def __bool__(self):
        return self.passed

    def to_json(self):
        return {"passed": self.passed, "checks": [{"name": n, "ok": ok, "detail": d} for n, ok, d in self.checks]}

    def __str__(self):
        if self.passed:
            return "pass (" + ", ".join(n for n, _, _ in self.checks) + ")"
        name, detail = self.failure
        return f"fail at {name}: {detail}"


# -- partitions --------------------------------------------------------------------

def labels_from_parts(order: int, parts: Sequence[Iterable[int]]) -> np.ndarray:
    labels = np.full(order, -1, dtype=np.int64)
    for k, part in enumerate(parts):
        for g in part:
            if labels[g] != -1:
                raise ValueError(f"element {g} lies in two parts")
            labels[g] = k
    if (labels < 0).any():
        raise ValueError("parts do not cover the group")
    return labels


@dataclass
class SuperTheoryCandidate:
    """A partition of G (element -> part label) and candidate supercharacters."""

    group: FiniteGroup
    labels: np.ndarray
    characters: list[ClassFunction]
    part_names: list[Any] = field(default_factory=list)
    char_names: list[Any] = field(default_factory=list)

    @classmethod
    def from_parts(cls, group, parts, characters, **kw) -> "SuperTheoryCandidate":
        return cls(group, labels_from_parts(group.order, parts), list(characters), **kw)

    @property
    def n_parts(self) -> int:
        return int(self.labels.max()) + 1

    @property
    def parts(self) -> list[np.ndarray]:
        return [np.flatnonzero(self.labels == k) for k in range(self.n_parts)]

    @property
    def reps(self) -> list[int]:
        return [int(np.flatnonzero(self.labels == k)[0]) for k in range(self.n_parts)]

    def table(self) -> list[list[Cyclotomic]]:
        reps = self.reps
        return [[chi(r) for r in reps] for chi in self.characters]


def verify_theory(cand: SuperTheoryCandidate) -> Report:
    """Check constancy, orthogonality, the count equality and that {1} is a part."""
    rep = Report()
    G = cand.group
    parts = cand.parts
    bad = None
    for i, chi in enumerate(cand.characters):
        for j, part in enumerate(parts):
            if not chi.is_constant_on(part):
                bad = (i, j)
                break
        if bad:
            break
    rep.add("constancy", bad is None, "" if bad is None else f"character {bad[0]} not constant on part {bad[1]}")
    bad = None
    chars = cand.characters
    for i in range(len(chars)):
        if scalar_product(chars[i], chars[i]).is_zero():
            bad = (i, i)
            break
        for j in range(i + 1, len(chars)):
            if not scalar_product(chars[i], chars[j]).is_zero():
                bad = (i, j)
                break
        if bad:
            break
    rep.add("orthogonality", bad is None, "" if bad is None else f"pair {bad} fails")
    rep.add("count", len(chars) == len(parts), f"{len(chars)} characters, {len(parts)} parts")
    ident = G.identity
    rep.add("identity part", (cand.labels == cand.labels[ident]).sum() == 1, "identity shares its part")
    return rep


def schur_structure_constants(group: FiniteGroup, labels: np.ndarray) -> np.ndarray | None:
    """``c[a, b, c]`` with ``K_a^ K_b^ = sum_c c[a,b,c] K_c^``, or None if not closed."""
    k = int(labels.max()) + 1
    parts = [np.flatnonzero(labels == a) for a in range(k)]
    reps = [p[0] for p in parts]
    t = group.table
    out = np.zeros((k, k, k), dtype=np.int64)
    for a in range(k):
        for b in range(k):
            counts = np.bincount(t[np.ix_(parts[a], parts[b])].ravel(), minlength=group.order)
            per = counts[reps]
            if (counts != per[labels]).any():
                return None
            out[a, b] = per
    return out


def schur_check(group: FiniteGroup, labels: np.ndarray) -> Report:
    """Identity part, inversion closure, centrality and closure of the part sums."""
    rep = Report()
    labels = np.asarray(labels)
    if not rep.add("identity part", (labels == labels[group.identity]).sum() == 1, "identity shares its part"):
        return rep
    inv_lab = labels[group.inverse]
    # K^-1 must be a part: the inverse image of each part carries one label
    ok = True
    for a in range(int(labels.max()) + 1):
        if len(np.unique(inv_lab[labels == a])) != 1:
            ok = False
            break
    if not rep.add("inverse closed", ok, f"part {a} inverted is not a part"):
        return rep
    conj = group.conjugacy_labels
    central = True
    for c in range(int(conj.max()) + 1):
        if len(np.unique(labels[conj == c])) != 1:
            central = False
            break
    if not rep.add("central", central, f"conjugacy class {c} meets two parts"):
        return rep
    consts = schur_structure_constants(group, labels)
    rep.add("closure", consts is not None, "product of part sums not constant on parts")
    return rep


def convolve(group: FiniteGroup, a: Sequence[Any], b: Sequence[Any]) -> list[Cyclotomic]:
    """Product of two group-algebra elements given by coefficient vectors."""
    t = group.table
    out = [ZERO] * group.order
    nz_a = [(g, Cyclotomic.coerce(c)) for g, c in enumerate(a) if c]
    nz_b = [(h, Cyclotomic.coerce(c)) for h, c in enumerate(b) if c]
    for g, x in nz_a:
        for h, y in nz_b:
            k = t[g, h]
            out[k] = out[k] + x * y
    return out


def _normalizer(chi: ClassFunction) -> Cyclotomic:
    return chi.degree / scalar_product(chi, chi)


def idempotents_from_table(cand: SuperTheoryCandidate, normalizers: Sequence[Any] | None = None) -> list[list[Cyclotomic]]:
    """Central idempotents ``f_i = (1/|G|) sum_j conj(sigma_i(K_j)) K_j^``.

    ``sigma_i = n_i chi_i``; by default ``n_i = chi_i(1) / (chi_i, chi_i)``.
    Returned as coefficient vectors over the group elements.
    """
    G = cand.group
    out = []
    for i, chi in enumerate(cand.characters):
        n_i = Cyclotomic.coerce(normalizers[i]) if normalizers is not None else _normalizer(chi)
        coeff = [(n_i * v).conjugate() / G.order for v in chi.values]
        out.append(coeff)
    return out


def verify_idempotents(group: FiniteGroup, idems: Sequence[Sequence[Cyclotomic]]) -> Report:
    rep = Report()
    for i, f in enumerate(idems):
        for j, g in enumerate(idems):
            prod = convolve(group, f, g)
            want = list(f) if i == j else [ZERO] * group.order
            if not rep.add(f"f{i}*f{j}", all(x == y for x, y in zip(prod, want)), "idempotent relation fails"):
                return rep
    total = [sum((f[g] for f in idems), ZERO) for g in range(group.order)]
    unit = [ONE if g == group.identity else ZERO for g in range(group.order)]
    rep.add("sum is 1", total == unit, "idempotents do not sum to the identity")
    return rep


def regular_decomposition(characters: Sequence[ClassFunction], normalizers: Sequence[Any]) -> Report:
    """Check ``sum_i n_i chi_i`` is the regular character."""
    G = characters[0].group
    total = ClassFunction.constant(G, 0)
    for chi, n in zip(characters, normalizers):
        total = total + chi * n
    reg = ClassFunction.regular(G)
    rep = Report()
    bad = [g for g in range(G.order) if total(g) != reg(g)]
    rep.add("regular character", not bad, f"mismatch at elements {bad[:5]}")
    return rep


def integrality_check(value: Cyclotomic, class_size: int, degree: Cyclotomic) -> bool:
    """``chi(g) |K| / chi(1)`` has integer coordinates in the power basis."""
    if Cyclotomic.coerce(degree).is_zero():
        raise ZeroDivisionError("degree must be nonzero")
    return (Cyclotomic.coerce(value) * class_size / degree).is_integral()


def parts_from_characters(characters: Sequence[ClassFunction]) -> np.ndarray:
    """Partition of G into fibers of the value vector, numbered by first element."""
    G = characters[0].group
    seen: dict[tuple, int] = {}
    labels = np.empty(G.order, dtype=np.int64)
    for g in range(G.order):
        key = tuple(chi(g) for chi in characters)
        labels[g] = seen.setdefault(key, len(seen))
    return labels


def gamma_average(cand: SuperTheoryCandidate, action: Sequence[Sequence[int]]) -> SuperTheoryCandidate:
    """Average a theory over a group of automorphisms given by generating permutations.

    ``chi^a(g) = chi(a(g))``; each orbit of characters contributes the sum of its
    distinct members and each orbit of parts is united.
    """
    G = cand.group
    perms = [np.asarray(a, dtype=np.int64) for a in action]
    for a in perms:
        if sorted(a.tolist()) != list(range(G.order)):
            raise ValueError("action is not a permutation of the group")
        if not (G.table[a[:, None], a[None, :]] == a[G.table]).all():
            raise ValueError("action is not by automorphisms")
    # parts
    k = cand.n_parts
    part_maps = []
    for a in perms:
        img = np.full(k, -1, dtype=np.int64)
        for part in range(k):
            targets = np.unique(cand.labels[a[cand.labels == part]])
            if len(targets) != 1:
                raise ValueError("action does not preserve the partition")
            img[part] = targets[0]
        part_maps.append(img)
    part_orbit = orbit_labels(k, part_maps)
    labels = part_orbit[cand.labels]
    # characters
    index = {chi.values: i for i, chi in enumerate(cand.characters)}
    char_maps = []
    for a in perms:
        img = []
        for chi in cand.characters:
            moved = tuple(chi.values[x] for x in a)
            if moved not in index:
                raise ValueError("action does not permute the characters")
            img.append(index[moved])
        char_maps.append(np.array(img, dtype=np.int64))
    char_orbit = orbit_labels(len(cand.characters), char_maps)
    chars = []
    names = []
    for o in range(int(char_orbit.max()) + 1):
        members = np.flatnonzero(char_orbit == o)
        total = cand.characters[members[0]]
        for m in members[1:]:
            total = total + cand.characters[m]
        chars.append(total)
        if cand.char_names:
            names.append(tuple(cand.char_names[m] for m in members))
    return SuperTheoryCandidate(G, labels, chars, char_names=names)


# -- builtin groups --------------------------------------------------------------

def cyclic_group(n: int) -> FiniteGroup:
    t = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return FiniteGroup(t, identity=0, name=f"C{n}")


def abelian_characters(orders: Sequence[int]) -> tuple[FiniteGroup, list[ClassFunction]]:
    """The group Z/o1 x ... x Z/ok (mixed radix) and all its linear characters."""
    import itertools
    elems = list(itertools.product(*(range(o) for o in orders)))
    G = FiniteGroup.from_elements(elems, lambda a, b: tuple((x + y) % o for x, y, o in zip(a, b, orders)),
                                  name="x".join(f"C{o}" for o in orders) or "1")
    m = int(np.lcm.reduce(list(orders))) if orders else 1
    ring = cyclotomic_ring(m)
    chars = []
    for k in elems:
        vals = [ring.zeta(sum(ki * gi * (m // o) for ki, gi, o in zip(k, g, orders)) % m) for g in elems]
        chars.append(ClassFunction(G, vals))
    return G, chars


def symmetric_group_3() -> FiniteGroup:
    import itertools
    elems = list(itertools.permutations(range(3)))
    return FiniteGroup.from_elements(elems, lambda a, b: tuple(a[b[i]] for i in range(3)), name="S3")


def _c4_theory() -> SuperTheoryCandidate:
    G = cyclic_group(4)
    parts = [[0], [1, 3], [2]]
    vals = [(1, 1, 1), (2, 0, -2), (1, -1, 1)]
    labels = labels_from_parts(4, parts)
    chars = [ClassFunction.from_parts(G, labels, v) for v in vals]
    return SuperTheoryCandidate(G, labels, chars, part_names=["{1}", "{g,g^3}", "{g^2}"],
                                char_names=["chi0", "chi1+chi3", "chi2"])


def _s3_theory() -> SuperTheoryCandidate:
    G = symmetric_group_3()
    lab = G.conjugacy_labels
    reps = [int(np.flatnonzero(lab == k)[0]) for k in range(int(lab.max()) + 1)]

    def cycle_type(perm):
        fixed = sum(1 for i in range(3) if perm[i] == i)
        return {3: "1", 1: "transposition", 0: "3-cycle"}[fixed]

    table = {"1": (1, 1, 2), "transposition": (1, -1, 0), "3-cycle": (1, 1, -1)}
    chars = []
    for c in range(3):
        vals = [table[cycle_type(G.labels[r])][c] for r in reps]
        chars.append(ClassFunction.from_parts(G, lab, vals))
    return SuperTheoryCandidate(G, lab, chars, part_names=[cycle_type(G.labels[r]) for r in reps],
                                char_names=["trivial", "sign", "standard"])


def _cyclic_theory(n: int) -> SuperTheoryCandidate:
    G, chars = abelian_characters([n])
    return SuperTheoryCandidate(G, np.arange(n), chars)


BUILTINS = {
    "c4": _c4_theory,
    "s3": _s3_theory,
    "c2": lambda: _cyclic_theory(2),
    "c3": lambda: _cyclic_theory(3),
    "c5": lambda: _cyclic_theory(5),
}


def builtin_theory(name: str) -> SuperTheoryCandidate:
    try:
        return BUILTINS[name.lower()]()
    except KeyError:
        raise ValueError(f"unknown builtin {name!r}; choose from {sorted(BUILTINS)}") from None


# -- induction, restriction, superinduction ----------------------------------------

def induced_character(group: FiniteGroup, sub: np.ndarray, exponents: np.ndarray, m: int) -> ClassFunction:
    """Induce the linear character ``h -> zeta_m^exponents[k]`` of the subgroup ``sub``.

    Uses ``Ind xi(g) = |G| / (|H| |cl(g)|) * sum_{h in H cap cl(g)} xi(h)``.
    """
    sub = np.asarray(sub, dtype=np.int64)
    conj = group.conjugacy_labels
    ncls = int(conj.max()) + 1
    counts = np.zeros((ncls, m), dtype=np.int64)
    np.add.at(counts, (conj[sub], np.asarray(exponents, dtype=np.int64) % m), 1)
    cls_size = np.bincount(conj, minlength=ncls)
    ring = cyclotomic_ring(m)
    per_class = []
    for c in range(ncls):
        if not counts[c].any():
            per_class.append(ZERO)
            continue
        num = Fraction(group.order, len(sub) * int(cls_size[c]))
        per_class.append(ring.from_root_counts(counts[c].tolist()) * num)
    return ClassFunction.from_parts(group, conj, per_class)


def induced_character_literal(group: FiniteGroup, sub: np.ndarray, exponents: np.ndarray, m: int) -> ClassFunction:
    """``(1/|H|) sum_{x in G} xi_dot(x g x^-1)`` summed term by term."""
    t, inv = group.table, group.inverse
    where = np.full(group.order, -1, dtype=np.int64)
    where[np.asarray(sub)] = np.asarray(exponents) % m
    ring = cyclotomic_ring(m)
    vals = []
    for g in range(group.order):
        conj = t[t[:, g], inv]
        e = where[conj]
        counts = np.bincount(e[e >= 0], minlength=m)
        vals.append(ring.from_root_counts(counts.tolist()) / len(sub))
    return ClassFunction(group, vals)


def restrict(chi: ClassFunction, sub_group: FiniteGroup, embedding: np.ndarray) -> ClassFunction:
    """Values of chi on the image of ``sub_group`` under ``embedding`` (sub index -> G index)."""
    return ClassFunction(sub_group, [chi.values[int(g)] for g in embedding])


def superinduce(phi: ClassFunction, group: FiniteGroup, embedding: np.ndarray, superclass_labels: np.ndarray) -> ClassFunction:
    """Orbit form of superinduction: ``|G| / (|G'| |K(g)|) sum_{y in K(g) cap G'} phi(y)``."""
    k = int(superclass_labels.max()) + 1
    sums = [ZERO] * k
    for s, g in enumerate(embedding):
        v = phi.values[s]
        if not v.is_zero():
            c = superclass_labels[g]
            sums[c] = sums[c] + v
    sizes = np.bincount(superclass_labels, minlength=k)
    vals = [sums[c] * Fraction(group.order, phi.group.order * int(sizes[c])) for c in range(k)]
    return ClassFunction.from_parts(group, superclass_labels, vals)


def decompose(f: ClassFunction, basis: Sequence[ClassFunction]) -> list[Cyclotomic] | None:
    """Coefficients of f in an orthogonal basis; None if f is not in its span."""
    coeffs = [scalar_product(f, b) / scalar_product(b, b) for b in basis]
    total = ClassFunction.constant(f.group, 0)
    for c, b in zip(coeffs, basis):
        if not c.is_zero():
            total = total + b * c
    return coeffs if total == f else None
