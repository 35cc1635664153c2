"""The Burnside category of spans and the Mackey algebra.

A span ``G/H <- G/L -> G/K`` is stored as ``(L, u, v)`` with left leg
``xL -> xuH`` and right leg ``xL -> xvK``; ``u`` and ``v`` are coset labels
(least coset elements).  It is read as a morphism ``G/H -> G/K``.  Products
``f * g`` mean ``f o g``: apply ``g`` first.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering

import numpy as np

from . import linalg
from .algebra import ZZ, CoefficientRing, StructuredAlgebra
from .burnring import PreconditionError, _subgroup_label, order_p_sum
from .grpcore import DEFAULT_ORDER_CAP, Group, ResourceCapError, Subgroup
from .gset import GMap, TransitiveGSet, pullback


class SpanError(ValueError):
    pass


@total_ordering
@dataclass(frozen=True)
class Span:
    group: Group
    source: int
    target: int
    middle: Subgroup
    u: int
    v: int

    def key(self):
        return (self.source, self.target, self.middle, self.u, self.v)

    def __lt__(self, other):
        return self.key() < other.key()

    def __eq__(self, other):
        return isinstance(other, Span) and other.group is self.group and other.key() == self.key()

    def __hash__(self):
        return hash(self.key())

    @property
    def middle_class(self) -> int:
        return self.group.subgroup_classes().class_of(self.middle)

    def render(self, legs: bool = True) -> str:
        G = self.group
        cls = G.subgroup_classes()
        src = _subgroup_label(G, self.source)
        tgt = _subgroup_label(G, self.target)
        mid = _subgroup_label(G, self.middle_class)
        if not legs:
            s = f"[G/{src} <- G/{mid} -> G/{tgt}]"
        else:
            def leg(end):
                return "id" if len(self.middle) == cls[end].order else "proj"
            s = f"[G/{src} <-{leg(self.source)}- G/{mid} -{leg(self.target)}-> G/{tgt}]"
        if self.u or self.v:
            s += f"@({self.u},{self.v})"
        return s

    def __repr__(self):
        return self.render(legs=False)


def _rep(G: Group, i: int) -> Subgroup:
    return G.subgroup_classes()[i].rep


def _contained(G: Group, L, w: int, H) -> bool:
    """``w^-1 L w`` inside ``H``."""
    Hs = set(H)
    wi = G.inv[w]
    return all(G.conj(wi, l) in Hs for l in L)


def canonicalize_span(G: Group, L, u: int, v: int, source: int, target: int,
                      check: bool = True) -> Span:
    """Least representative of the isomorphism class of the span ``(L, u, v)``."""
    L = tuple(sorted(L))
    H, K = _rep(G, source), _rep(G, target)
    if check and not (_contained(G, L, u, H) and _contained(G, L, v, K)):
        raise SpanError("span legs are not well defined (containment fails)")
    cache = G._cache.setdefault("canon", {})
    key = (source, target, L, u, v)
    hit = cache.get(key)
    if hit is not None:
        return hit
    lh, lk = G.coset_label(H), G.coset_label(K)
    best = None
    for x in G:
        cand = (G.conjugate_subgroup(x, L), lh[G.mul[x][u]], lk[G.mul[x][v]])
        if best is None or cand < best:
            best = cand
    out = Span(G, source, target, *best)
    cache[key] = out
    return out


def identity_span(G: Group, i: int) -> Span:
    return canonicalize_span(G, _rep(G, i), 0, 0, i, i)


def hom_basis(G: Group, source: int, target: int) -> tuple:
    """Canonical spans ``G/H_source -> G/H_target`` in canonical order."""
    cache = G._cache.setdefault("hom", {})
    key = (source, target)
    if key in cache:
        return cache[key]
    H, K = _rep(G, source), _rep(G, target)
    Hs = set(H)
    out = set()
    # every class has a member whose left leg sends the base point to 1.H
    for L in G.all_subgroups():
        if not set(L) <= Hs:
            continue
        for v in G.left_cosets(K):
            if _contained(G, L, v, K):
                out.add(canonicalize_span(G, L, 0, v, source, target, check=False))
    res = tuple(sorted(out))
    cache[key] = res
    return res


def _coset_set(G: Group, L) -> TransitiveGSet:
    cache = G._cache.setdefault("tset", {})
    t = cache.get(L)
    if t is None:
        t = cache[L] = TransitiveGSet(G, L)
    return t


def left_leg(s: Span) -> GMap:
    G = s.group
    return GMap.coset_map(_coset_set(G, s.middle), _coset_set(G, _rep(G, s.source)), s.u)


def right_leg(s: Span) -> GMap:
    G = s.group
    return GMap.coset_map(_coset_set(G, s.middle), _coset_set(G, _rep(G, s.target)), s.v)


def compose(f: Span, g: Span, R: CoefficientRing = ZZ) -> dict:
    """``f o g`` as ``{Span: coefficient}`` (zero coefficients dropped)."""
    if g.target != f.source or f.group is not g.group:
        raise SpanError(f"spans not composable: {g!r} then {f!r}")
    G = f.group
    cache = G._cache.setdefault("compose", {})
    key = (f.key(), g.key())
    out = cache.get(key)
    if out is None:
        _, orbits = pullback(right_leg(g), left_leg(f))
        out = {}
        for o in orbits:
            # base point (a L_g, b L_f): left leg hits a u_g H, right leg b v_f K
            s = canonicalize_span(G, o.subgroup, G.mul[o.a][g.u], G.mul[o.b][f.v],
                                  g.source, f.target, check=False)
            out[s] = out.get(s, 0) + 1
        cache[key] = out
    if R.modulus:
        return {s: c % R.modulus for s, c in out.items() if c % R.modulus}
    return dict(out)


@dataclass(frozen=True, eq=False)
class MackeyAlgebra:
    """``mu_R(G)`` as a structured algebra over the concatenated hom bases."""
    group: Group
    spans: tuple
    algebra: StructuredAlgebra

    @property
    def ring(self) -> CoefficientRing:
        return self.algebra.ring

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def index(self, s: Span) -> int:
        return self.algebra.meta["index"][s]

    def vector(self, combo: dict) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        for s, c in combo.items():
            v[self.index(s)] += c
        return self.ring.reduce(v)

    def combo(self, v) -> dict:
        v = self.ring.reduce(np.asarray(v))
        return {self.spans[i]: int(c) for i, c in enumerate(v) if c}

    def idempotent(self, i: int) -> np.ndarray:
        return self.vector({identity_span(self.group, i): 1})

    def corner_embed(self, x) -> np.ndarray:
        """``RB(G) -> e_G mu e_G``: ``[G/H] -> [G/G <- G/H -> G/G]``."""
        G = self.group
        cls = G.subgroup_classes()
        w = cls.whole
        v = np.zeros(self.dim, dtype=np.int64)
        for i, c in enumerate(np.asarray(x)):
            if c:
                v[self.index(canonicalize_span(G, cls[i].rep, 0, 0, w, w))] += c
        return self.ring.reduce(v)

    def to_json(self) -> dict:
        d = self.algebra.to_json()
        d["basis"] = [s.render() for s in self.spans]
        return d


def mackey_basis(G: Group) -> tuple:
    n = len(G.subgroup_classes())
    return tuple(s for a in range(n) for b in range(n) for s in hom_basis(G, a, b))


def _integral_constants(G: Group):
    c = G._cache.get("mackey_Z")
    if c is not None:
        return c
    spans = mackey_basis(G)
    index = {s: i for i, s in enumerate(spans)}
    d = len(spans)
    C = np.zeros((d, d, d), dtype=np.int64)
    by_source = {}
    for j, s in enumerate(spans):
        by_source.setdefault(s.source, []).append(j)
    for j, g in enumerate(spans):
        for i in by_source.get(g.target, ()):
            for s, k in compose(spans[i], g).items():
                C[i, j, index[s]] += k
    unit = np.zeros(d, dtype=np.int64)
    for a in range(len(G.subgroup_classes())):
        unit[index[identity_span(G, a)]] = 1
    c = (spans, index, C, unit)
    G._cache["mackey_Z"] = c
    return c


def mackey_algebra(G: Group, R: CoefficientRing = ZZ, cap: int = DEFAULT_ORDER_CAP,
                   validate: bool = True) -> MackeyAlgebra:
    if G.order > cap:
        raise ResourceCapError(f"group order {G.order} exceeds cap {cap}")
    spans, index, C, unit = _integral_constants(G)
    labels = tuple(s.render(legs=False) for s in spans)
    idems = []
    for a in range(len(G.subgroup_classes())):
        e = np.zeros(len(spans), dtype=np.int64)
        e[index[identity_span(G, a)]] = 1
        idems.append(e)
    A = StructuredAlgebra(R, labels, R.reduce(C), R.reduce(unit),
                          {"group": G, "kind": "mackey", "index": index, "idempotents": idems})
    if validate and not G._cache.get("mackey_validated"):
        StructuredAlgebra(ZZ, labels, C, unit).validate()
        G._cache["mackey_validated"] = True
    return MackeyAlgebra(G, spans, A)


def mackey_dimension_oracle(G: Group) -> int:
    """Rank of ``mu(G)`` from double cosets: for each pair ``(H, K)`` and each
    ``HgK``, count ``(H cap gKg^-1)``-conjugacy classes of its subgroups."""
    cls = G.subgroup_classes()
    from .grpcore import double_cosets
    total = 0
    for a in cls:
        for b in cls:
            for g in double_cosets(G, a.rep, b.rep):
                M = G.intersect(a.rep, G.conjugate_subgroup(g, b.rep))
                Mg = G.subgroup_as_group(M)
                total += len(Mg.subgroup_classes())
    return total


@dataclass
class WitnessReport:
    group: str
    p: int
    witnesses: dict
    independent: bool
    corner_radical_kills: bool
    all_composites_vanish: bool
    composites_checked: int
    direct_radical_kills: bool | None = None

    @property
    def socle_not_simple(self) -> bool:
        ok = self.independent and self.corner_radical_kills and self.all_composites_vanish
        if self.direct_radical_kills is not None:
            ok = ok and self.direct_radical_kills
        return ok

    def to_json(self) -> dict:
        d = dict(self.__dict__)
        d["socle_not_simple"] = self.socle_not_simple
        return d


def socle_witness_check(G: Group, p: int, direct: bool = True) -> WitnessReport:
    """Check that ``g = [G/1]`` and ``s = sum_{|H|=p} [G/H]``, pushed into the
    corner ``e_G mu e_G``, are killed by the radical of ``F_p mu(G)``."""
    if not G.is_p_group(p) or G.order <= p:
        raise PreconditionError(f"needs a {p}-group of order > {p}")
    from .algebra import GF
    Rp = GF(p)
    mu = mackey_algebra(G, Rp)
    cls = G.subgroup_classes()
    g = np.zeros(len(cls), dtype=np.int64)
    g[cls.trivial] = 1
    s = order_p_sum(G, p) % p
    wit = {"g": mu.corner_embed(g), "s": mu.corner_embed(s)}
    independent = linalg.rank_mod(np.vstack([g, s]), p) == 2
    A = mu.algebra
    # (i) rad(F_p B(G)) x = 0 inside the corner
    corner_rad = [mu.corner_embed(np.eye(len(cls), dtype=np.int64)[i])
                  for i in range(len(cls)) if i != cls.whole]
    corner_ok = all(not A.mul(j, x).any() for j in corner_rad for x in wit.values())
    # (ii) f o x = 0 for every basis span f: G/G -> G/H with H proper
    checked = 0
    vanish = True
    for t in range(len(cls)):
        if t == cls.whole:
            continue
        for f in hom_basis(G, cls.whole, t):
            fv = mu.vector({f: 1})
            for x in wit.values():
                checked += 1
                if A.mul(fv, x).any():
                    vanish = False
    direct_ok = None
    if direct:
        from .fdalg import radical
        J = radical(A)
        direct_ok = all(not A.mul(j, x).any() for j in J for x in wit.values())
    rendered = {k: {sp.render(): c for sp, c in mu.combo(v).items()} for k, v in wit.items()}
    return WitnessReport(G.name, p, rendered,
                         bool(independent), corner_ok, vanish, checked, direct_ok)
