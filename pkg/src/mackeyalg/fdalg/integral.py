"""Free resolutions over Z-algebras and integral Ext groups.

Modules are either lattices (``modulus == 0``) or modules killed by a prime
``p`` given by integer action matrices read mod p.  Kernels are computed as
saturated lattices from Hermite normal forms, so every stage is exact over Z.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .. import linalg
from ..algebra import GF, StructuredAlgebra
from ..grpcore import ResourceCapError
from .blocks import Layout, algebra_blocks
from .modules import DEFAULT_RESOLUTION_CAP, LeftModule, ext_dim, module_orbit, regular_module

DEFAULT_INT_RANK_CAP = 4000
_RANK_PRIME = 32749


def _mod(v) -> np.ndarray:
    return (np.asarray(v, dtype=object) % _RANK_PRIME).astype(np.int64)


@dataclass(frozen=True, eq=False)
class IntModule:
    algebra: StructuredAlgebra        # over Z
    action: np.ndarray                # integer matrices, one per basis element
    modulus: int = 0
    name: str = "N"

    @property
    def dim(self) -> int:
        return self.action.shape[1]

    def rep(self, a) -> np.ndarray:
        M = np.tensordot(np.asarray(a, dtype=object), self.action.astype(object), 1)
        return M % self.modulus if self.modulus else M


def int_regular(S: StructuredAlgebra) -> IntModule:
    return IntModule(S, S.left_regular.astype(np.int64), 0, "S")


def from_modp(S: StructuredAlgebra, M: LeftModule, p: int) -> IntModule:
    """An ``S/pS``-module regarded as an ``S``-module killed by ``p``."""
    return IntModule(S, np.asarray(M.action, dtype=np.int64) % p, p, M.name)


def _int_module_orbit(action, v) -> np.ndarray:
    return np.matmul(np.asarray(action, dtype=object), np.asarray(v, dtype=object)).reshape(
        action.shape[0], -1)


@dataclass
class IntResolution:
    """Projective resolution over a Z-algebra by sums of lattices ``S e_h``,
    with every kernel computed exactly from Hermite normal forms."""
    module: IntModule
    cap: int = DEFAULT_RESOLUTION_CAP
    rank_cap: int = DEFAULT_INT_RANK_CAP
    order: object = None
    start: list | None = None
    gens: list = field(default_factory=list)
    heads: list = field(default_factory=list)
    kernels: list = field(default_factory=list)

    @property
    def algebra(self) -> StructuredAlgebra:
        return self.module.algebra

    @property
    def blocks(self):
        return algebra_blocks(self.algebra)

    def rank(self, k: int) -> int:
        return len(self.gens[k])

    def layout(self, k: int) -> Layout:
        cache = self.__dict__.setdefault("_layouts", {})
        if k not in cache:
            cache[k] = Layout(self.algebra, self.heads[k], dtype=object)
        return cache[k]

    def _orbit(self, k: int):
        if k == 0:
            act = self.module.action
            return lambda v: _int_module_orbit(act, v)
        return self.layout(k - 1).orbit

    def _map_matrix(self, k: int) -> np.ndarray:
        orbit = self._orbit(k)
        cols = [orbit(g)[self.blocks[h].cols].T for g, h in zip(self.gens[k], self.heads[k])]
        if not cols:
            n = self.module.dim if k == 0 else self.layout(k - 1).dim
            return np.zeros((n, 0), dtype=object)
        D = np.hstack(cols)
        if k == 0 and self.module.modulus:
            D = D % self.module.modulus
        return D

    def kernel(self, k: int) -> np.ndarray:
        """Basis of the kernel lattice of ``F_k -> F_{k-1}``, computed on demand."""
        self.extend(k)
        while len(self.kernels) <= k:
            j = len(self.kernels)
            D = self._map_matrix(j)
            m = self.module.modulus
            if j == 0 and m:
                # {x : D x = 0 mod m}
                Dp = np.asarray(D, dtype=np.int64) % m
                N = linalg.nullspace_mod(Dp, m).astype(object)
                gens = np.vstack([N, m * np.eye(D.shape[1], dtype=np.int64).astype(object)])
                K = linalg.lll_rows(linalg.hnf(gens))
            else:
                K = linalg.int_kernel(D)
            self.kernels.append(K)
        return self.kernels[k]

    def _select_modp(self, act, cand, m):
        """Generators of an S-module killed by the prime ``m``."""
        E = linalg.Echelon(act.shape[1], m)
        gens, heads = [], []
        for v in cand % m:
            if E.dim == act.shape[1]:
                break
            if E.contains(v):
                continue
            O = module_orbit(act, v) % m
            for h, b in enumerate(self.blocks):
                w = np.asarray(b.idempotent, dtype=np.int64) @ O % m
                if w.any() and not E.contains(w):
                    gens.append(w.astype(object))
                    heads.append(h)
                    E.add_many(module_orbit(act, w) % m)
        if E.dim != act.shape[1]:
            raise linalg.LinalgError("generators do not span the module")
        return gens, heads

    def _select_lattice(self, orbit, cand, rank):
        """Greedy generators of the lattice spanned by ``cand``: first reach
        full rank using a large-prime echelon, then close up exactly."""
        cand = np.asarray(cand, dtype=object)
        idems = [np.asarray(b.idempotent, dtype=object) for b in self.blocks]
        E = linalg.Echelon(cand.shape[1], _RANK_PRIME)
        gens, heads = [], []
        for v in cand:
            if E.dim == rank:
                break
            O = orbit(v)
            for h, e in enumerate(idems):
                w = e.dot(O)
                if any(w) and not E.contains(_mod(w)):
                    gens.append(w)
                    heads.append(h)
                    E.add_many(_mod(orbit(w)))
        # exact closure, in coordinates relative to the basis ``cand``
        coords = linalg.LatticeCoordinates(cand)
        O = np.vstack([orbit(g) for g in gens]) if gens else np.zeros((0, cand.shape[1]), object)
        Y = coords(O)
        sel = linalg.Echelon(rank, _RANK_PRIME)
        rows = [i for i, y in enumerate(Y) if sel.add(_mod(y))]
        d = abs(linalg.int_det(Y[rows]))
        # the generated lattice contains d * (whole lattice); it is everything
        # iff the coordinates have full rank modulo each prime divisor of d
        pieces = None
        for q in linalg.prime_divisors(d):
            E = linalg.Echelon(rank, q)
            E.add_many(np.asarray(Y % q, dtype=np.int64))
            if E.dim == rank:
                continue
            if pieces is None:
                pieces = [(h, np.asarray(e.dot(orbit(v)), dtype=object))
                          for v in cand for h, e in enumerate(idems)]
                pieces = [(h, w) for h, w in pieces if any(w)]
                piece_coords = coords(np.array([w for _, w in pieces], dtype=object))
            for (h, w), c in zip(pieces, piece_coords):
                if E.dim == rank:
                    break
                if not E.contains(np.asarray(c % q, dtype=np.int64)):
                    gens.append(w)
                    heads.append(h)
                    Yw = coords(orbit(w))
                    Y = np.vstack([Y, Yw])
                    E.add_many(np.asarray(Yw % q, dtype=np.int64))
            if E.dim != rank:
                raise linalg.LinalgError("generators do not span the lattice")
        return gens, heads

    def extend(self, k: int) -> None:
        while len(self.gens) <= k:
            j = len(self.gens)
            if j > self.cap:
                raise ResourceCapError(f"resolution length cap {self.cap} exceeded")
            M = self.module
            if j == 0:
                cand = np.eye(M.dim, dtype=np.int64)
                if self.start is not None:
                    cand = np.vstack([np.atleast_2d(self.start), cand])
                if M.modulus:
                    act = np.asarray(M.action, dtype=np.int64) % M.modulus
                    gens, heads = self._select_modp(act, cand, M.modulus)
                else:
                    gens, heads = self._select_lattice(self._orbit(0), cand, M.dim)
            else:
                K = self.kernel(j - 1)
                if self.order == "reverse":
                    K = K[::-1]
                gens, heads = (self._select_lattice(self._orbit(j), K, K.shape[0])
                               if K.shape[0] else ([], []))
            self.gens.append(gens)
            self.heads.append(heads)
            if self.layout(j).dim > self.rank_cap:
                raise ResourceCapError(f"projective lattice of rank {self.layout(j).dim} "
                                       f"exceeds cap {self.rank_cap}")

    def component(self, k: int, i: int, r: int) -> np.ndarray:
        return self.layout(k - 1).element(self.gens[k][i], r)

    def is_exact(self, upto: int) -> bool:
        self.extend(upto)
        for k in range(upto):
            D = self._map_matrix(k + 1)
            # image of d_{k+1} equals the kernel lattice of d_k
            if not np.array_equal(linalg.hnf(D.T), linalg.hnf(self.kernel(k))):
                return False
        return True


def _lattice_image(P) -> np.ndarray:
    """Basis rows of the lattice spanned by the columns of ``P``."""
    P = np.asarray(P, dtype=object)
    if P.shape[1] == 0 or not P.any():
        return np.zeros((0, P.shape[0]), dtype=object)
    return linalg.hnf(P.T)


def int_hom_differential(res: IntResolution, k: int, N: IntModule) -> np.ndarray:
    """``delta_k`` on ``Hom(F, N) = sum e_h N`` in lattice coordinates of each ``e_h N``."""
    res.extend(k)
    bases = [_lattice_image(N.rep(b.idempotent)) for b in res.blocks]
    prev, cur = res.heads[k - 1], res.heads[k]
    row_off = np.concatenate([[0], np.cumsum([bases[h].shape[0] for h in cur])]).astype(int)
    col_off = np.concatenate([[0], np.cumsum([bases[h].shape[0] for h in prev])]).astype(int)
    D = np.zeros((row_off[-1], col_off[-1]), dtype=object)
    for i, hi in enumerate(cur):
        Bi = bases[hi]
        for r, hr in enumerate(prev):
            Br = bases[hr]
            if Br.shape[0] == 0 or Bi.shape[0] == 0:
                continue
            a = res.component(k, i, r)
            if not any(a):
                continue
            img = N.rep(a).dot(Br.T)                      # columns lie in e_hi N
            D[row_off[i]:row_off[i + 1], col_off[r]:col_off[r + 1]] = \
                linalg.coordinates(Bi, img.T).T
    return D


def int_hom_rank(res: IntResolution, k: int, N: IntModule) -> int:
    res.extend(k)
    return sum(_lattice_image(N.rep(res.blocks[h].idempotent)).shape[0] for h in res.heads[k])


@dataclass(frozen=True)
class AbelianGroup:
    free_rank: int
    torsion: tuple

    def dim_over(self, p: int) -> int | None:
        """F_p-dimension if the group is elementary abelian of exponent p."""
        if self.free_rank or any(t != p for t in self.torsion):
            return None
        return len(self.torsion)

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        parts = ([f"Z^{self.free_rank}"] if self.free_rank else []) + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


def int_ext(S: StructuredAlgebra, N: IntModule, i: int, coeff: IntModule | None = None,
            cap: int = DEFAULT_RESOLUTION_CAP, res: IntResolution | None = None) -> AbelianGroup:
    """``Ext^i_S(N, coeff)`` (default ``coeff = S``) as a finitely generated abelian group."""
    if i < 0:
        raise ValueError("degree must be non-negative")
    if i + 1 > cap:
        raise ResourceCapError(f"degree {i} needs resolution length {i + 1} > cap {cap}")
    coeff = coeff if coeff is not None else int_regular(S)
    if coeff.modulus:
        raise ValueError("coefficient module must be a lattice")
    res = res if res is not None else IntResolution(N, cap=cap)
    res.extend(i + 1)
    d_out = int_hom_differential(res, i + 1, coeff)
    if i == 0:
        d_in = np.zeros((int_hom_rank(res, 0, coeff), 0), dtype=object)
    else:
        d_in = int_hom_differential(res, i, coeff)
    free, tors = linalg.abelian_homology(d_in, d_out)
    return AbelianGroup(free, tuple(tors))


@dataclass
class ReesCheck:
    i: int
    p: int
    lhs: AbelianGroup
    lhs_dim: int | None
    rhs_dim: int

    @property
    def equal(self) -> bool:
        return self.lhs_dim is not None and self.lhs_dim == self.rhs_dim

    def to_json(self) -> dict:
        return {"i": self.i, "p": self.p, "lhs_group": str(self.lhs), "lhs_dim": self.lhs_dim,
                "rhs_dim": self.rhs_dim, "equal": self.equal}


def rees_reduction_check(S: StructuredAlgebra, p: int, N: LeftModule, i: int,
                         cap: int = DEFAULT_RESOLUTION_CAP) -> ReesCheck:
    """Compare ``Ext^{i+1}_S(N, S)`` (integral engine) with
    ``Ext^i_{S/pS}(N, S/pS)`` (mod-p engine)."""
    if i < 1:
        raise ValueError("the reduction isomorphism is only claimed for i >= 1")
    if S.p:
        raise ValueError("S must be an algebra over Z")
    lhs = int_ext(S, from_modp(S, N, p), i + 1, cap=cap)
    Sp = S.base_change(GF(p))
    Np = LeftModule(Sp, np.asarray(N.action, dtype=np.int64) % p, N.name)
    rhs = ext_dim(Sp, Np, regular_module(Sp), i, cap=cap)
    return ReesCheck(i, p, lhs, lhs.dim_over(p), rhs)


def one_dimensional_module(A: StructuredAlgebra, values, name: str = "k") -> LeftModule:
    """Module F_p on which ``b_i`` acts by ``values[i]`` (a character)."""
    act = np.asarray(values, dtype=np.int64).reshape(-1, 1, 1) % A.p
    M = LeftModule(A, act, name)
    if M.defect():
        raise ValueError("values do not define a character of the algebra")
    return M
