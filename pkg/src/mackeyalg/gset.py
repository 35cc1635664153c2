"""Finite G-sets: transitive coset sets, equivariant maps, products,
pullbacks, orbit decomposition, induction and the table of marks.

Everything is computed on explicit point sets and then orbit-decomposed.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .grpcore import Group, Subgroup, double_cosets


class GSetError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Action:
    """A raw finite action: ``table[g][x]`` is ``g . x``."""
    group: Group
    table: tuple

    @property
    def size(self) -> int:
        return len(self.table[0]) if self.table else 0

    def check(self) -> None:
        G = self.group
        n = self.size
        if len(self.table) != G.order:
            raise GSetError("action table needs one row per group element")
        if any(len(r) != n for r in self.table):
            raise GSetError("ragged action table")
        if any(self.table[0][x] != x for x in range(n)):
            raise GSetError("identity does not act trivially")
        for g in G:
            for h in G:
                gh = G.mul[g][h]
                tg, th, tgh = self.table[g], self.table[h], self.table[gh]
                if any(tg[th[x]] != tgh[x] for x in range(n)):
                    raise GSetError(f"composition law fails for ({g}, {h})")

    def orbits(self) -> list[list[int]]:
        seen = set()
        out = []
        for x in range(self.size):
            if x in seen:
                continue
            orb = sorted({self.table[g][x] for g in self.group})
            seen.update(orb)
            out.append(orb)
        return out

    def stabilizer(self, x: int) -> Subgroup:
        return tuple(g for g in self.group if self.table[g][x] == x)

    def disjoint_union(self, other: "Action") -> "Action":
        n = self.size
        return Action(self.group, tuple(tuple(a) + tuple(n + y for y in b)
                                        for a, b in zip(self.table, other.table)))


class TransitiveGSet:
    """The coset set ``G/L`` for an explicit subgroup ``L``.

    Points are the least elements of the left cosets, in increasing order, so
    the base point ``1.L`` is point 0.
    """

    def __init__(self, group: Group, subgroup: Subgroup):
        self.group = group
        self.subgroup = tuple(sorted(subgroup))
        self.points = group.left_cosets(self.subgroup)

    @classmethod
    def of_class(cls, group: Group, index: int) -> "TransitiveGSet":
        return cls(group, group.subgroup_classes()[index].rep)

    @cached_property
    def _point_index(self) -> dict:
        return {c: i for i, c in enumerate(self.points)}

    def point_of(self, g: int) -> int:
        """Index of the coset ``gL``."""
        return self._point_index[self.group.coset_label(self.subgroup)[g]]

    @cached_property
    def action(self) -> Action:
        G = self.group
        return Action(G, tuple(tuple(self.point_of(G.mul[g][c]) for c in self.points)
                               for g in G))

    @property
    def stabilizer_class(self) -> int:
        return self.group.subgroup_classes().class_of(self.subgroup)

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return f"G/{list(self.subgroup)}"


@dataclass(frozen=True)
class GSetSum:
    """Formal N-linear combination of ``[G/H]`` over subgroup classes."""
    group: Group
    mult: tuple

    @classmethod
    def zero(cls, G: Group) -> "GSetSum":
        return cls(G, (0,) * len(G.subgroup_classes()))

    @classmethod
    def basis(cls, G: Group, i: int, k: int = 1) -> "GSetSum":
        m = [0] * len(G.subgroup_classes())
        m[i] = k
        return cls(G, tuple(m))

    def _check(self, other):
        if other.group is not self.group:
            raise GSetError("G-set sums over different groups")

    def __add__(self, other):
        self._check(other)
        return GSetSum(self.group, tuple(a + b for a, b in zip(self.mult, other.mult)))

    def __rmul__(self, k: int):
        return GSetSum(self.group, tuple(k * a for a in self.mult))

    def __mul__(self, other):
        return product(self, other)

    def __eq__(self, other):
        return isinstance(other, GSetSum) and other.group is self.group and other.mult == self.mult

    def __hash__(self):
        return hash(self.mult)

    @property
    def cardinality(self) -> int:
        G = self.group
        cls = G.subgroup_classes()
        return sum(m * (G.order // cls[i].order) for i, m in enumerate(self.mult))

    def __repr__(self):
        terms = [f"{m}[G/{self.group.subgroup_classes()[i].order}]"
                 for i, m in enumerate(self.mult) if m]
        return " + ".join(terms) or "0"


class GMap:
    """Equivariant map between transitive G-sets."""

    def __init__(self, source: TransitiveGSet, target: TransitiveGSet, images, check=True):
        self.source = source
        self.target = target
        self.images = tuple(images)
        if check:
            self.check()

    @classmethod
    def coset_map(cls, source: TransitiveGSet, target: TransitiveGSet, u: int) -> "GMap":
        """``xL -> x u K``; needs ``u^-1 L u`` inside ``K``."""
        G = source.group
        K = set(target.subgroup)
        if any(G.conj(G.inv[u], l) not in K for l in source.subgroup):
            raise GSetError("coset map is not well defined: u^-1 L u not inside K")
        return cls(source, target,
                   [target.point_of(G.mul[c][u]) for c in source.points], check=False)

    def check(self) -> None:
        a, b = self.source.action.table, self.target.action.table
        for g in self.source.group:
            for x, y in enumerate(self.images):
                if self.images[a[g][x]] != b[g][y]:
                    raise GSetError("map is not equivariant")

    def __call__(self, x: int) -> int:
        return self.images[x]


def orbit_decompose(X: Action, check: bool = True) -> GSetSum:
    if check:
        X.check()
    G = X.group
    table = G.subgroup_classes()
    mult = [0] * len(table)
    for orb in X.orbits():
        mult[table.class_of(X.stabilizer(orb[0]))] += 1
    return GSetSum(G, tuple(mult))


def product_action(X: TransitiveGSet, Y: TransitiveGSet) -> Action:
    a, b = X.action.table, Y.action.table
    ny = len(Y)
    return Action(X.group, tuple(tuple(a[g][i // ny] * ny + b[g][i % ny]
                                       for i in range(len(X) * ny))
                                 for g in X.group))


def basis_product(G: Group, i: int, j: int) -> GSetSum:
    """``[G/H_i] x [G/H_j]`` decomposed, via the concrete product action."""
    key = ("prod", i, j) if i <= j else ("prod", j, i)
    c = G._cache.get(key)
    if c is None:
        X, Y = TransitiveGSet.of_class(G, i), TransitiveGSet.of_class(G, j)
        c = orbit_decompose(product_action(X, Y), check=False)
        G._cache[key] = c
    return c


def product(X: GSetSum, Y: GSetSum) -> GSetSum:
    X._check(Y)
    G = X.group
    out = [0] * len(X.mult)
    for i, a in enumerate(X.mult):
        if not a:
            continue
        for j, b in enumerate(Y.mult):
            if not b:
                continue
            for k, c in enumerate(basis_product(G, i, j).mult):
                out[k] += a * b * c
    return GSetSum(G, tuple(out))


def double_coset_product(G: Group, i: int, j: int) -> GSetSum:
    """``G/H x G/K = sum over HgK of G/(H cap gKg^-1)``; cross-check oracle."""
    cls = G.subgroup_classes()
    H, K = cls[i].rep, cls[j].rep
    out = [0] * len(cls)
    for g in double_cosets(G, H, K):
        out[cls.class_of(G.intersect(H, G.conjugate_subgroup(g, K)))] += 1
    return GSetSum(G, tuple(out))


@dataclass(frozen=True)
class PullbackOrbit:
    """One orbit of a fibre product, ``G/L`` with base point ``(aL_X, bL_Y)``."""
    subgroup: Subgroup
    a: int
    b: int
    left: GMap
    right: GMap


def pullback(f: GMap, g: GMap) -> tuple[GSetSum, list[PullbackOrbit]]:
    """Fibre product ``{(x, y) : f(x) = g(y)}`` split into orbits."""
    if f.target.subgroup != g.target.subgroup or f.target.group is not g.target.group:
        raise GSetError("pullback needs maps with a common target")
    X, Y = f.source, g.source
    G = X.group
    ax, ay = X.action.table, Y.action.table
    pts = [(x, y) for x in range(len(X)) for y in range(len(Y)) if f(x) == g(y)]
    seen = set()
    orbits = []
    cls = G.subgroup_classes()
    mult = [0] * len(cls)
    for x, y in pts:
        if (x, y) in seen:
            continue
        seen.update((ax[h][x], ay[h][y]) for h in G)
        L = tuple(h for h in G if ax[h][x] == x and ay[h][y] == y)
        a, b = X.points[x], Y.points[y]
        P = TransitiveGSet(G, L)
        orbits.append(PullbackOrbit(L, a, b, GMap.coset_map(P, X, a), GMap.coset_map(P, Y, b)))
        mult[cls.class_of(L)] += 1
    return GSetSum(G, tuple(mult)), orbits


def induce(G: Group, H: Subgroup, X: GSetSum) -> GSetSum:
    """Induction from ``H`` to ``G``.  ``X`` lives over ``G.subgroup_as_group(H)``."""
    Hg = X.group
    if Hg.order != len(H):
        raise GSetError("H-set sum does not match the subgroup")
    hcls = Hg.subgroup_classes()
    gcls = G.subgroup_classes()
    out = [0] * len(gcls)
    for i, m in enumerate(X.mult):
        if m:
            L = tuple(sorted(H[e] for e in hcls[i].rep))
            out[gcls.class_of(L)] += m
    return GSetSum(G, tuple(out))


def fixed_points(G: Group, K: Subgroup, H: Subgroup) -> int:
    """``|(G/H)^K|``: cosets xH with ``x^-1 K x`` inside ``H``."""
    Hs = set(H)
    return sum(1 for c in G.left_cosets(H)
               if all(G.conj(G.inv[c], k) in Hs for k in K))


@dataclass(frozen=True)
class MarksMatrix:
    """Table of marks with rows/columns in decreasing subgroup order.

    ``order[r]`` is the class index of row/column ``r``; entry ``(r, c)`` is
    ``|(G/H_c)^{K_r}|``.
    """
    group: Group
    order: tuple
    matrix: np.ndarray

    def by_class(self) -> np.ndarray:
        """Same matrix re-indexed by class index: ``M[K, H]``."""
        n = len(self.order)
        M = np.zeros((n, n), dtype=np.int64)
        for r, K in enumerate(self.order):
            for c, H in enumerate(self.order):
                M[K, H] = self.matrix[r, c]
        return M

    def marks(self, X: GSetSum) -> np.ndarray:
        """Mark vector of ``X`` indexed by class index."""
        return self.by_class() @ np.array(X.mult, dtype=np.int64)

    def to_json(self) -> dict:
        cls = self.group.subgroup_classes()
        return {"classes": [list(cls[i].rep) for i in self.order],
                "orders": [cls[i].order for i in self.order],
                "matrix": self.matrix.tolist()}


def table_of_marks(G: Group) -> MarksMatrix:
    key = "marks"
    c = G._cache.get(key)
    if c is None:
        cls = G.subgroup_classes()
        order = tuple(range(len(cls) - 1, -1, -1))
        M = np.array([[fixed_points(G, cls[k].rep, cls[h].rep) for h in order] for k in order],
                     dtype=np.int64)
        c = MarksMatrix(G, order, M)
        G._cache[key] = c
    return c


def regular_action(G: Group) -> Action:
    return Action(G, G.mul)


def trivial_action(G: Group, n: int = 1) -> Action:
    return Action(G, tuple(tuple(range(n)) for _ in G))
