"""Finite groups as closed multiplication tables.

Elements are integers ``0..n-1`` and the identity is always ``0``.  Subgroups
are sorted tuples of element indices.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd

DEFAULT_ORDER_CAP = 24


class GroupInputError(ValueError):
    """Malformed group specification or table."""


class ResourceCapError(RuntimeError):
    """A configured size cap was exceeded."""


Subgroup = tuple  # sorted tuple of element indices


@dataclass(frozen=True, eq=False)
class Group:
    mul: tuple
    name: str = "G"
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    identity = 0

    @property
    def order(self) -> int:
        return len(self.mul)

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(range(self.order))

    def __repr__(self):
        return f"Group({self.name}, order={self.order})"

    @cached_property
    def inv(self) -> tuple:
        return tuple(row.index(0) for row in self.mul)

    def m(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def conj(self, x: int, a: int) -> int:
        """x a x^-1"""
        return self.mul[self.mul[x][a]][self.inv[x]]

    def element_order(self, a: int) -> int:
        k, y = 1, a
        while y != 0:
            y = self.mul[y][a]
            k += 1
        return k

    def is_abelian(self) -> bool:
        return all(self.mul[a][b] == self.mul[b][a] for a in self for b in self)

    def is_p_group(self, p: int) -> bool:
        n = self.order
        while n % p == 0:
            n //= p
        return n == 1 and self.order > 1

    # --- subgroups -------------------------------------------------------

    def closure(self, gens) -> Subgroup:
        elems = {0}
        frontier = [0]
        gens = list(gens)
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = self.mul[x][g]
                    if y not in elems:
                        elems.add(y)
                        new.append(y)
            frontier = new
        return tuple(sorted(elems))

    def conjugate_subgroup(self, x: int, H: Subgroup) -> Subgroup:
        return tuple(sorted(self.conj(x, h) for h in H))

    def normalizer(self, H: Subgroup) -> Subgroup:
        Hs = tuple(H)
        return tuple(x for x in self if self.conjugate_subgroup(x, Hs) == Hs)

    def is_subgroup(self, S) -> bool:
        S = set(S)
        return (0 in S and all(self.mul[a][b] in S for a in S for b in S))

    def intersect(self, H: Subgroup, K: Subgroup) -> Subgroup:
        return tuple(sorted(set(H) & set(K)))

    def coset_label(self, H: Subgroup) -> tuple:
        """``label[g]`` is the least element of the left coset ``gH``."""
        key = ("cosets", H)
        c = self._cache.get(key)
        if c is None:
            c = tuple(min(self.mul[g][h] for h in H) for g in self)
            self._cache[key] = c
        return c

    def left_cosets(self, H: Subgroup) -> tuple:
        """Sorted coset representatives (least elements) of ``G/H``."""
        return tuple(sorted(set(self.coset_label(H))))

    def all_subgroups(self) -> tuple:
        c = self._cache.get("subgroups")
        if c is None:
            c = _enumerate_subgroups(self)
            self._cache["subgroups"] = c
        return c

    def subgroup_classes(self) -> "SubgroupClassTable":
        c = self._cache.get("classes")
        if c is None:
            c = _build_class_table(self)
            self._cache["classes"] = c
        return c

    def subgroup_as_group(self, H: Subgroup, name: str | None = None) -> "Group":
        """``H`` relabelled as a standalone group (index i <-> H[i])."""
        pos = {h: i for i, h in enumerate(H)}
        table = tuple(tuple(pos[self.mul[a][b]] for b in H) for a in H)
        return Group(table, name or f"{self.name}>{len(H)}")


def _enumerate_subgroups(G: Group) -> tuple:
    # cyclic and 2-generated subgroups, then close under joins
    subs = set()
    for a in G:
        subs.add(G.closure([a]))
    for a, b in itertools.combinations(range(G.order), 2):
        subs.add(G.closure([a, b]))
    changed = True
    while changed:
        changed = False
        current = list(subs)
        for H, K in itertools.combinations(current, 2):
            J = G.closure(set(H) | set(K))
            if J not in subs:
                subs.add(J)
                changed = True
    return tuple(sorted(subs, key=lambda S: (len(S), S)))


@dataclass(frozen=True)
class SubgroupClass:
    index: int
    rep: Subgroup
    members: tuple
    normalizer: Subgroup

    @property
    def order(self) -> int:
        return len(self.rep)

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class SubgroupClassTable:
    group: Group
    classes: tuple

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def __getitem__(self, i) -> SubgroupClass:
        return self.classes[i]

    def class_of(self, H) -> int:
        """Index of the conjugacy class containing ``H``."""
        return self._lookup[tuple(sorted(H))]

    @cached_property
    def _lookup(self) -> dict:
        return {S: c.index for c in self.classes for S in c.members}

    @property
    def trivial(self) -> int:
        return 0

    @property
    def whole(self) -> int:
        return len(self.classes) - 1


def _build_class_table(G: Group) -> SubgroupClassTable:
    remaining = list(G.all_subgroups())
    seen = set()
    raw = []
    for H in remaining:
        if H in seen:
            continue
        members = sorted({G.conjugate_subgroup(x, H) for x in G})
        seen.update(members)
        rep = members[0]
        raw.append((len(rep), rep, tuple(members)))
    raw.sort()
    classes = tuple(SubgroupClass(i, rep, members, G.normalizer(rep))
                    for i, (_, rep, members) in enumerate(raw))
    return SubgroupClassTable(G, classes)


def subgroup_classes(G: Group) -> SubgroupClassTable:
    return G.subgroup_classes()


# --- construction ----------------------------------------------------------

def _check_table(table) -> None:
    n = len(table)
    if n == 0:
        raise GroupInputError("empty multiplication table")
    for row in table:
        if len(row) != n or any(not (0 <= x < n) for x in row):
            raise GroupInputError("table is not a square table of element indices")
    ids = [e for e in range(n)
           if all(table[e][a] == a and table[a][e] == a for a in range(n))]
    if not ids:
        raise GroupInputError("table has no two-sided identity")
    e = ids[0]
    for a in range(n):
        if not any(table[a][b] == e and table[b][a] == e for b in range(n)):
            raise GroupInputError(f"element {a} has no two-sided inverse")
    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            for c in range(n):
                if table[ab][c] != table[a][table[b][c]]:
                    raise GroupInputError(f"table not associative at ({a},{b},{c})")


def group_from_table(table, name: str = "G", cap: int = DEFAULT_ORDER_CAP) -> Group:
    table = [list(map(int, row)) for row in table]
    if len(table) > cap:
        raise ResourceCapError(f"group order {len(table)} exceeds cap {cap}")
    _check_table(table)
    n = len(table)
    e = next(e for e in range(n) if all(table[e][a] == a for a in range(n)))
    # relabel so that the identity is 0, other elements keep their order
    order = [e] + [a for a in range(n) if a != e]
    pos = {a: i for i, a in enumerate(order)}
    mul = tuple(tuple(pos[table[a][b]] for b in order) for a in order)
    return Group(mul, name)


def group_from_permutations(gens, name: str = "G", cap: int = DEFAULT_ORDER_CAP) -> Group:
    gens = [tuple(int(x) for x in g) for g in gens]
    if not gens:
        gens = [()]
    deg = max(len(g) for g in gens)
    for g in gens:
        if sorted(g) != list(range(len(g))):
            raise GroupInputError(f"not a permutation: {list(g)}")
    gens = [g + tuple(range(len(g), deg)) for g in gens]
    ident = tuple(range(deg))
    elems = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = tuple(x[i] for i in g)  # x after g
                if y not in index:
                    index[y] = len(elems)
                    elems.append(y)
                    new.append(y)
                    if len(elems) > cap:
                        raise ResourceCapError(f"generated group exceeds order cap {cap}")
        frontier = new
    # canonical labelling: identity first, then sorted permutations
    elems = [ident] + sorted(e for e in elems if e != ident)
    index = {e: i for i, e in enumerate(elems)}
    mul = tuple(tuple(index[tuple(a[i] for i in b)] for b in elems) for a in elems)
    return Group(mul, name)


def _cyclic_perm(n: int) -> tuple:
    return tuple((i + 1) % n for i in range(n))


def build_group(spec, cap: int = DEFAULT_ORDER_CAP) -> Group:
    """Build a group from a family name, permutation generators or a table.

    ``spec`` is either a string (``cyclic:n``, ``klein``, ``sym:n``,
    ``dihedral:n``, or JSON) or an already parsed mapping / tuple as produced
    by :func:`parse_group_spec`.
    """
    if isinstance(spec, str):
        spec = parse_group_spec(spec)
    kind = spec["kind"]
    if kind == "cyclic":
        n = spec["n"]
        if n > cap:
            raise ResourceCapError(f"group order {n} exceeds cap {cap}")
        mul = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
        return Group(mul, f"C{n}")
    if kind == "klein":
        mul = tuple(tuple(a ^ b for b in range(4)) for a in range(4))
        return Group(mul, "C2xC2")
    if kind == "sym":
        n = spec["n"]
        if n <= 1:
            return group_from_permutations([], "S1", cap)
        gens = [(1, 0) + tuple(range(2, n)), _cyclic_perm(n)]
        return group_from_permutations(gens, f"S{n}", cap)
    if kind == "dihedral":
        # symmetries of the regular n-gon, order 2n
        n = spec["n"]
        if n < 2:
            raise GroupInputError("dihedral:n needs n >= 2")
        if 2 * n > cap:
            raise ResourceCapError(f"group order {2 * n} exceeds cap {cap}")
        if n == 2:
            return build_group({"kind": "klein"}, cap)
        refl = tuple((-i) % n for i in range(n))
        return group_from_permutations([_cyclic_perm(n), refl], f"D{2 * n}", cap)
    if kind == "table":
        return group_from_table(spec["table"], spec.get("name", "G"), cap)
    if kind == "permutations":
        return group_from_permutations(spec["permutations"], spec.get("name", "G"), cap)
    raise GroupInputError(f"unknown group kind {kind!r}")


_FAMILIES = {"cyclic", "sym", "dihedral"}


def parse_group_spec(text: str) -> dict:
    """Parse the textual group grammar into a structured spec.

    >>> parse_group_spec("cyclic:4")
    {'kind': 'cyclic', 'n': 4}
    """
    if not isinstance(text, str):
        raise GroupInputError("group spec must be text")
    s = text.strip()
    if not s:
        raise GroupInputError("empty group spec (position 0)")
    if s.startswith("{"):
        try:
            doc = json.loads(s)
        except json.JSONDecodeError as e:
            raise GroupInputError(f"malformed JSON at position {e.pos}: {e.msg}") from None
        if not isinstance(doc, dict):
            raise GroupInputError("JSON group spec must be an object (position 0)")
        if "table" in doc:
            return {"kind": "table", "table": doc["table"], "name": doc.get("name", "G")}
        if "permutations" in doc:
            return {"kind": "permutations", "permutations": doc["permutations"],
                    "name": doc.get("name", "G")}
        raise GroupInputError("JSON group spec needs a 'table' or 'permutations' key")
    if s == "klein":
        return {"kind": "klein"}
    fam, sep, arg = s.partition(":")
    if fam not in _FAMILIES:
        raise GroupInputError(f"unknown group family {fam!r} (position 0)")
    if not sep:
        raise GroupInputError(f"family {fam!r} needs a size, e.g. {fam}:4 (position {len(s)})")
    try:
        n = int(arg)
    except ValueError:
        raise GroupInputError(f"bad size {arg!r} (position {len(fam) + 1})") from None
    if n < 1:
        raise GroupInputError(f"size must be positive, got {n} (position {len(fam) + 1})")
    return {"kind": fam, "n": n}


# --- arithmetic --------------------------------------------------------------

def prime_factors(n: int) -> dict:
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == {n: 1}


def is_square_free(n: int) -> bool:
    if n < 1:
        raise ValueError("n must be positive")
    return all(e == 1 for e in prime_factors(n).values())


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def unique_class_per_divisor(G: Group) -> bool:
    counts = {}
    for c in G.subgroup_classes():
        counts[c.order] = counts.get(c.order, 0) + 1
    return all(counts.get(d, 0) == 1 for d in divisors(G.order))


def double_cosets(G: Group, H: Subgroup, K: Subgroup) -> list[int]:
    """One representative (the least element) per double coset ``H g K``."""
    seen = set()
    reps = []
    for g in G:
        if g in seen:
            continue
        dc = {G.mul[G.mul[h][g]][k] for h in H for k in K}
        seen |= dc
        reps.append(min(dc))
    return sorted(reps)


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)
